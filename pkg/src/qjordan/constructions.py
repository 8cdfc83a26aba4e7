"""Example algebras and the bridge between linear and quadratic Jordan algebras."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qjordan import linalg
from qjordan.gf import FieldSpec
from qjordan.qjcore import MAX_ELEMENTS, ParseError, QuadraticAlgebra, check_bound, element_grid


def field_algebra(p: int, m: int) -> QuadraticAlgebra:
    """F_{p^m} as an m-dimensional algebra over F_p with b Q_a = a^2 b.

    The basis is the power basis 1, x, ..., x^(m-1); coordinates of an
    element are its polynomial coefficients.
    """
    F = FieldSpec(p)
    if m == 1:
        K = F
    else:
        K = FieldSpec(p, m)
    basis_codes = [K.code([1 if k == i else 0 for k in range(m)]) for i in range(m)]

    def op(a):
        a_code = K.code(a)
        sq = int(K.mul_table[a_code, a_code])
        return np.array([K.coeffs(K.mul_table[sq, e]) for e in basis_codes], dtype=np.int64)

    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    return QuadraticAlgebra.from_quadratic_map(F, unit, op)


def matrix_plus_algebra(p: int, r: int, bound: int = MAX_ELEMENTS) -> QuadraticAlgebra:
    """M_r(F_p)^+ with b Q_a = a b a, flattened row-major."""
    if r < 2:
        raise ValueError("r must be at least 2")
    F = FieldSpec(p)
    n = r * r
    check_bound(F, n, bound)
    units = np.eye(n, dtype=np.int64).reshape(n, r, r)

    def op(a):
        A = np.asarray(a).reshape(r, r)
        return np.array([(A @ E @ A % p).reshape(n) for E in units], dtype=np.int64)

    return QuadraticAlgebra.from_quadratic_map(F, np.eye(r, dtype=np.int64).reshape(n), op)


@dataclass(frozen=True, eq=False)
class LinearJordanAlgebra:
    """Commutative unital algebra given by its table e_i . e_j (odd p)."""

    field: FieldSpec
    unit: np.ndarray
    table: np.ndarray  # (n, n, n): table[i, j] = e_i . e_j

    def __post_init__(self):
        if self.field.p == 2:
            raise ValueError("linear Jordan algebras need odd characteristic")
        unit = np.array(self.unit, dtype=np.int64)
        table = np.array(self.table, dtype=np.int64)
        n = unit.shape[0]
        if table.shape != (n, n, n):
            raise ValueError("table must have shape (n, n, n)")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "table", table)

    @property
    def n(self) -> int:
        return self.unit.shape[0]

    def mul(self, a, b) -> np.ndarray:
        """a . b, broadcasting over leading axes."""
        F = self.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        # (a . b)_k = sum_ij a_i b_j table[i, j, k]
        left = F.vecmat(a, self.table.reshape(self.n, self.n * self.n))
        left = left.reshape(a.shape[:-1] + (self.n, self.n))  # [j, k] = sum_i a_i table[i,j,k]
        return F.vecmat(b, left)

    def __eq__(self, other):
        if not isinstance(other, LinearJordanAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and np.array_equal(self.unit, other.unit)
            and np.array_equal(self.table, other.table)
        )

    __hash__ = None


def _half(F: FieldSpec) -> int:
    if F.p == 2:
        raise ValueError("1/2 does not exist in characteristic 2")
    return (F.p + 1) // 2


def to_linear(J: QuadraticAlgebra) -> LinearJordanAlgebra:
    """a . b = 1/2 (1 Q_{a,b})."""
    F = J.field
    h = _half(F)
    n = J.n
    table = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = F.mul(F.vecmat(J.unit, J.polar[i, j]), h)
    return LinearJordanAlgebra(F, J.unit, table)


def from_linear(L: LinearJordanAlgebra) -> QuadraticAlgebra:
    """b Q_a = -a^2 . b + 2 a . (a . b)."""
    F = L.field
    basis = np.eye(L.n, dtype=np.int64)
    two = F.from_int(2)

    def op(a):
        a2 = L.mul(a, a)
        rows = [F.add(F.neg(L.mul(a2, b)), F.mul(L.mul(a, L.mul(a, b)), two)) for b in basis]
        return np.array(rows, dtype=np.int64)

    return QuadraticAlgebra.from_quadratic_map(F, L.unit, op)


def is_linear_jordan(L: LinearJordanAlgebra, bound: int = MAX_ELEMENTS) -> bool:
    """Commutativity, unit, and a^2 . (b . a) = (a^2 . b) . a, exhaustively."""
    F = L.field
    check_bound(F, L.n, bound)
    E = element_grid(F, L.n)
    if not np.array_equal(L.table, np.swapaxes(L.table, 0, 1)):
        return False
    if not np.array_equal(L.mul(L.unit[None, :], E), E):
        return False
    A2 = L.mul(E, E)
    for k in range(len(E)):
        a = E[k]
        ba = L.mul(E, a[None, :])
        lhs = L.mul(A2[k][None, :], ba)
        rhs = L.mul(L.mul(A2[k][None, :], E), a[None, :])
        if not np.array_equal(lhs, rhs):
            return False
    return True


def associator(L: LinearJordanAlgebra, a, x, b) -> np.ndarray:
    """{a, x, b} = (a . x) . b - a . (x . b)."""
    F = L.field
    return F.sub(L.mul(L.mul(a, x), b), L.mul(a, L.mul(x, b)))


def linear_inverse(L: LinearJordanAlgebra, a) -> np.ndarray | None:
    """Some y with a . y = 1 and a^2 . y = a (brute force), or None."""
    F = L.field
    a = np.asarray(a, dtype=np.int64)
    if not a.any():
        return None
    E = element_grid(F, L.n)
    ok = np.all(L.mul(a[None, :], E) == L.unit, axis=1) & np.all(L.mul(L.mul(a, a)[None, :], E) == a, axis=1)
    hits = np.flatnonzero(ok)
    return E[hits[0]] if hits.size else None


def dump_linear(L: LinearJordanAlgebra) -> str:
    """Plain-text form: header 'lja v1', p, dim, unit, then 'M i j' + product vector."""
    F = L.field
    lines = ["lja v1", f"p {F.p}", f"dim {L.n}", "unit " + " ".join(F.format_code(c) for c in L.unit)]
    for i in range(L.n):
        for j in range(i, L.n):
            lines.append(f"M {i + 1} {j + 1}")
            lines.append(" ".join(F.format_code(c) for c in L.table[i, j]))
    return "\n".join(lines) + "\n"


def load_linear(text: str) -> LinearJordanAlgebra:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        if lines[0] != "lja v1":
            raise ParseError("missing 'lja v1' header")
        key, p = lines[1].split()
        key2, n = lines[2].split()
        if key != "p" or key2 != "dim":
            raise ParseError("expected 'p' and 'dim' lines")
        F = FieldSpec(int(p))
        n = int(n)
        parts = lines[3].split()
        if parts[0] != "unit" or len(parts) != n + 1:
            raise ParseError("bad unit line")
        unit = [F.parse_code(x) for x in parts[1:]]
        table = np.zeros((n, n, n), dtype=np.int64)
        pos = 4
        while pos < len(lines):
            head = lines[pos].split()
            if head[0] != "M" or len(head) != 3:
                raise ParseError(f"unexpected line {lines[pos]!r}")
            i, j = int(head[1]) - 1, int(head[2]) - 1
            vec = [F.parse_code(x) for x in lines[pos + 1].split()]
            if len(vec) != n:
                raise ParseError("product vector needs dim entries")
            table[i, j] = table[j, i] = vec
            pos += 2
        return LinearJordanAlgebra(F, unit, table)
    except ParseError:
        raise
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc


def inner_derivation(m, p: int, sign: int = -1) -> np.ndarray:
    """Matrix of x -> x m + sign * m x on M_r(F_p), flattened row-major."""
    M = np.asarray(m, dtype=np.int64)
    r = M.shape[0]
    n = r * r
    rows = []
    for E in np.eye(n, dtype=np.int64).reshape(n, r, r):
        rows.append(((E @ M + sign * (M @ E)) % p).reshape(n))
    return linalg.as_matrix(rows)
