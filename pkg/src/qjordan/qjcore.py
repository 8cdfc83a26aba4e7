"""Quadratic algebras (J, Q, 1) stored as basis operator matrices.

An algebra of dimension n keeps the matrices Q_{e_i} and the polar
matrices Q_{e_i,e_j} (i < j). For a = sum t_i e_i the operator is

    Q_a = sum_i t_i^2 Q_{e_i} + sum_{i<j} t_i t_j Q_{e_i,e_j},

which is a quadratic map for any choice of the stored matrices. Elements
are coordinate vectors of field codes; operators act on row vectors from
the right, so ``b Q_a`` is ``F.vecmat(b, q_op(J, a))``.

Exhaustive checks run on an :class:`OperatorTable`, which holds Q_a for
every element a at once together with index tables for addition and for
the action ``(a, b) -> b Q_a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from qjordan import linalg
from qjordan.gf import FieldSpec

MAX_ELEMENTS = 729


class BoundExceeded(ValueError):
    """Raised when an exhaustive computation would exceed the element bound."""


class NotInvertible(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QuadraticAlgebra:
    """A quadratic algebra with distinguished unit.

    ``polar`` has shape (n, n, n, n); only entries ``polar[i, j]`` with
    i < j are read. The constructor fills in the symmetric part and sets
    ``polar[i, i] = 2 diag[i]`` so that Q_{a,b} = sum_{ij} a_i b_j polar[i, j].
    """

    field: FieldSpec
    unit: np.ndarray
    diag: np.ndarray
    polar: np.ndarray

    def __post_init__(self):
        F = self.field
        unit = np.array(self.unit, dtype=np.int64)
        diag = np.array(self.diag, dtype=np.int64)
        n = unit.shape[0]
        if diag.shape != (n, n, n):
            raise ValueError(f"diag must have shape {(n, n, n)}, got {diag.shape}")
        given = np.array(self.polar, dtype=np.int64)
        if given.shape != (n, n, n, n):
            raise ValueError(f"polar must have shape {(n, n, n, n)}, got {given.shape}")
        if not unit.any():
            raise ValueError("unit must be nonzero")
        for arr in (unit, diag, given):
            if arr.size and (arr.min() < 0 or arr.max() >= F.q):
                raise ValueError("entries must be field codes")
        polar = np.zeros_like(given)
        for i in range(n):
            polar[i, i] = F.add(diag[i], diag[i])
        for i, j in combinations(range(n), 2):
            polar[i, j] = polar[j, i] = given[i, j]
        for arr in (unit, diag, polar):
            arr.flags.writeable = False
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "polar", polar)

    @property
    def n(self) -> int:
        return self.unit.shape[0]

    @property
    def size(self) -> int:
        return self.field.q**self.n

    @classmethod
    def from_operators(cls, field: FieldSpec, unit, diag, polar_pairs=None):
        """Build from Q_{e_i} and a mapping {(i, j): Q_{e_i,e_j}} for i < j."""
        diag = np.asarray(diag, dtype=np.int64)
        n = diag.shape[0]
        polar = np.zeros((n, n, n, n), dtype=np.int64)
        for (i, j), M in (polar_pairs or {}).items():
            if not i < j:
                raise ValueError("polar pairs must have i < j")
            polar[i, j] = M
        return cls(field, unit, diag, polar)

    @classmethod
    def from_quadratic_map(cls, field: FieldSpec, unit, op):
        """Build from a callable ``op(a) -> matrix`` assumed quadratic in a."""
        unit = np.asarray(unit, dtype=np.int64)
        n = unit.shape[0]
        basis = np.eye(n, dtype=np.int64)
        diag = np.array([op(basis[i]) for i in range(n)], dtype=np.int64).reshape(n, n, n)
        polar = np.zeros((n, n, n, n), dtype=np.int64)
        for i, j in combinations(range(n), 2):
            both = op(field.add(basis[i], basis[j]))
            polar[i, j] = field.sub(field.sub(both, diag[i]), diag[j])
        return cls(field, unit, diag, polar)

    def __eq__(self, other):
        if not isinstance(other, QuadraticAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and np.array_equal(self.unit, other.unit)
            and np.array_equal(self.diag, other.diag)
            and np.array_equal(self.polar, other.polar)
        )

    __hash__ = None

    def __repr__(self):
        return f"QuadraticAlgebra(field={self.field!r}, n={self.n}, unit={self.unit.tolist()})"

    def element(self, coords) -> np.ndarray:
        v = np.asarray(coords, dtype=np.int64)
        if v.shape != (self.n,):
            raise ValueError(f"element needs {self.n} coordinates")
        return v

    def op(self, a) -> np.ndarray:
        """Q_a for one element or a batch of elements (..., n)."""
        F = self.field
        a = np.asarray(a, dtype=np.int64)
        # sum_{i<=j} c_ij t_i t_j M_ij with M_ii = diag, M_ij = polar (i<j)
        n = self.n
        result = np.zeros(a.shape[:-1] + (n, n), dtype=np.int64)
        for i in range(n):
            t = F.mul(a[..., i], a[..., i])[..., None, None]
            result = F.add(result, F.mul(t, self.diag[i]))
            for j in range(i + 1, n):
                t = F.mul(a[..., i], a[..., j])[..., None, None]
                result = F.add(result, F.mul(t, self.polar[i, j]))
        return result

    def polar_op(self, a, b) -> np.ndarray:
        """Q_{a,b} from the bilinear expansion sum_{ij} a_i b_j polar[i, j]."""
        F = self.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = self.n
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (n, n)
        result = np.zeros(shape, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                t = F.mul(a[..., i], b[..., j])[..., None, None]
                result = F.add(result, F.mul(t, self.polar[i, j]))
        return result

    def tables(self, bound: int = MAX_ELEMENTS) -> "OperatorTable":
        key = ("_tables", bound)
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            check_bound(self.field, self.n, bound)
            elems = element_grid(self.field, self.n)
            cache[key] = OperatorTable(self.field, self.unit, self.op(elems))
        return cache[key]


def check_bound(F: FieldSpec, n: int, bound: int = MAX_ELEMENTS) -> None:
    if F.q**n > bound:
        raise BoundExceeded(f"|J| = {F.q}^{n} = {F.q**n} exceeds the exhaustive bound {bound}")


def element_grid(F: FieldSpec, n: int) -> np.ndarray:
    """All q^n coordinate vectors in lexicographic order (first coordinate slowest)."""
    q = F.q
    idx = np.arange(q**n)
    weights = q ** np.arange(n - 1, -1, -1)
    return (idx[:, None] // weights[None, :]) % q


class OperatorTable:
    """Q_a for every element a of a finite quadratic algebra, plus index maps.

    ``ops[k]`` is the operator of the k-th element in canonical order. The
    table only assumes that ``ops`` is some map J -> End(J); polar operators
    are formed as Q_{a+b} - Q_a - Q_b, never from a bilinear expansion, so
    the same checks apply to operator families that are not known to be
    quadratic (for instance ones recovered from a Moufang set).
    """

    def __init__(self, field: FieldSpec, unit, ops):
        self.field = field
        self.unit = np.asarray(unit, dtype=np.int64)
        self.n = self.unit.shape[0]
        self.ops = np.asarray(ops, dtype=np.int64)
        self.N = field.q**self.n
        if self.ops.shape != (self.N, self.n, self.n):
            raise ValueError("need one operator per element")
        self.elems = element_grid(field, self.n)
        self.weights = field.q ** np.arange(self.n - 1, -1, -1)

    def index(self, vecs) -> np.ndarray:
        return np.asarray(vecs, dtype=np.int64) @ self.weights

    @cached_property
    def unit_idx(self) -> int:
        return int(self.index(self.unit))

    @cached_property
    def basis_idx(self) -> np.ndarray:
        return self.index(np.eye(self.n, dtype=np.int64))

    @cached_property
    def add_idx(self) -> np.ndarray:
        """add_idx[a, b] = index of a + b."""
        F, E = self.field, self.elems
        return self.index(F.add(E[:, None, :], E[None, :, :]))

    @cached_property
    def neg_idx(self) -> np.ndarray:
        return self.index(self.field.neg(self.elems))

    @cached_property
    def act_idx(self) -> np.ndarray:
        """act_idx[a, b] = index of b Q_a."""
        return self.index(self.field.vecmat(self.elems[None, :, :], self.ops[:, None, :, :]))

    def polar(self, a, b) -> np.ndarray:
        """Q_{a,b} = Q_{a+b} - Q_a - Q_b for index arrays a, b (broadcast)."""
        F = self.field
        a = np.asarray(a)
        b = np.asarray(b)
        return F.sub(F.sub(self.ops[self.add_idx[a, b]], self.ops[a]), self.ops[b])

    def v_op(self, a, b) -> np.ndarray:
        """V_{a,b}: the matrix whose k-th row is b Q_{a,e_k}."""
        F = self.field
        a = np.asarray(a)[..., None]
        b = np.asarray(b)
        pol = self.polar(a, self.basis_idx)  # (..., n_k, n, n)
        return F.vecmat(self.elems[b][..., None, :], pol)

    def apply(self, vec_idx, mats) -> np.ndarray:
        """Index of x M for element indices x and matrices M (broadcast)."""
        return self.index(self.field.vecmat(self.elems[np.asarray(vec_idx)], mats))

    @cached_property
    def _inverses(self):
        F = self.field
        inv_ops = np.zeros_like(self.ops)
        inv_idx = np.full(self.N, -1, dtype=np.int64)
        for k in range(self.N):
            Minv = linalg.mat_inverse(self.ops[k], F)
            if Minv is not None:
                inv_ops[k] = Minv
                inv_idx[k] = self.index(F.vecmat(self.elems[k], Minv))
        return inv_ops, inv_idx

    @property
    def inv_ops(self) -> np.ndarray:
        """Q_a^{-1} where invertible, zero matrices elsewhere."""
        return self._inverses[0]

    @property
    def inv_idx(self) -> np.ndarray:
        """Index of a^{-1} = a Q_a^{-1}, or -1 if a is not invertible."""
        return self._inverses[1]

    @property
    def invertible(self) -> np.ndarray:
        return self.inv_idx >= 0

    def format_element(self, k: int) -> str:
        return "(" + " ".join(self.field.format_code(c) for c in self.elems[int(k)]) + ")"


# -- operations ----------------------------------------------------------------


def enumerate_elements(J: QuadraticAlgebra, bound: int = MAX_ELEMENTS) -> np.ndarray:
    check_bound(J.field, J.n, bound)
    return element_grid(J.field, J.n)


def q_op(J: QuadraticAlgebra, a) -> np.ndarray:
    return J.op(J.element(a))


def q_polar(J: QuadraticAlgebra, a, b) -> np.ndarray:
    """Q_{a,b} = Q_{a+b} - Q_a - Q_b."""
    F = J.field
    a, b = J.element(a), J.element(b)
    return F.sub(F.sub(J.op(F.add(a, b)), J.op(a)), J.op(b))


def v_op(J: QuadraticAlgebra, a, b) -> np.ndarray:
    """V_{a,b}, whose i-th row is e_i V_{a,b} = b Q_{a,e_i}."""
    F = J.field
    b = J.element(b)
    basis = np.eye(J.n, dtype=np.int64)
    return np.array([F.vecmat(b, q_polar(J, a, e)) for e in basis], dtype=np.int64)


def inverse(J: QuadraticAlgebra, a) -> np.ndarray | None:
    """a^{-1} = a Q_a^{-1}, or None when Q_a is singular."""
    a = J.element(a)
    Minv = linalg.mat_inverse(J.op(a), J.field)
    if Minv is None:
        return None
    return J.field.vecmat(a, Minv)


def isotope(J: QuadraticAlgebra, a) -> QuadraticAlgebra:
    """The a-isotope: unit a, Q^a_y = Q_a^{-1} Q_y."""
    F = J.field
    a = J.element(a)
    Minv = linalg.mat_inverse(J.op(a), F)
    if Minv is None:
        raise NotInvertible(f"{a.tolist()} is not invertible")
    diag = F.matmul(Minv, J.diag)
    polar = F.matmul(Minv, J.polar)
    return QuadraticAlgebra(F, a, diag, polar)


def scalar_extension(J: QuadraticAlgebra, m: int) -> QuadraticAlgebra:
    """J_K for K = F_{p^m}: same matrices, entries read as constants of K."""
    if not J.field.is_prime_field:
        raise ValueError("scalar extension starts from an algebra over a prime field")
    if m < 2:
        raise ValueError("extension degree must be >= 2")
    K = FieldSpec(J.field.p, m)
    # prime-field residue c has code c in K as well
    return QuadraticAlgebra(K, J.unit, J.diag, J.polar)


def is_homomorphism(f, J: QuadraticAlgebra, J2: QuadraticAlgebra, bound: int = MAX_ELEMENTS) -> bool:
    """f(1) = 1' and f(a Q_b) = f(a) Q'_{f(b)} for all a, b (f acts on the right)."""
    F = J.field
    if J2.field != F:
        raise ValueError("algebras over different fields")
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (J.n, J2.n):
        raise ValueError(f"map must have shape {(J.n, J2.n)}")
    if not np.array_equal(F.vecmat(J.unit, f), J2.unit):
        return False
    T = J.tables(bound)
    E = T.elems
    fE = F.vecmat(E, f)  # f(b) for all b
    Qf = J2.op(fE)  # Q'_{f(b)}
    for b in range(T.N):
        lhs = F.vecmat(F.vecmat(E, T.ops[b]), f)  # f(a Q_b) for all a
        rhs = F.vecmat(fE, Qf[b])
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_subalgebra(J: QuadraticAlgebra, basis, bound: int = MAX_ELEMENTS) -> bool:
    """The span contains 1 and is closed under Q_a for every a in the span."""
    F = J.field
    B = linalg.echelon_basis(np.asarray(basis, dtype=np.int64).reshape(-1, J.n), F, width=J.n)
    k = len(B)
    if k == 0:
        return False

    def in_span(vecs):
        return all(linalg.rank(np.vstack([B, v[None, :]]), F) == k for v in np.atleast_2d(vecs))

    if not in_span(J.unit):
        return False
    check_bound(F, k, bound)
    span = F.matmul(element_grid(F, k), B)
    ops = J.op(span)
    images = F.vecmat(span[None, :, :], ops[:, None, :, :]).reshape(-1, J.n)
    return in_span(np.unique(images, axis=0))


# -- file format ------------------------------------------------------------------


def dump_algebra(J: QuadraticAlgebra) -> str:
    F = J.field
    lines = ["qja v1", f"p {F.p}", f"m {F.m}"]
    if F.m > 1:
        lines.append("modulus " + " ".join(str(c) for c in F.modulus))
    lines.append(f"dim {J.n}")
    lines.append("unit " + " ".join(F.format_code(c) for c in J.unit))
    for i in range(J.n):
        lines.append(f"Q {i + 1}")
        lines.append(linalg.format_matrix(J.diag[i], F))
    for i, j in combinations(range(J.n), 2):
        lines.append(f"P {i + 1} {j + 1}")
        lines.append(linalg.format_matrix(J.polar[i, j], F))
    return "\n".join(lines) + "\n"


def load_algebra(text: str) -> QuadraticAlgebra:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    try:
        return _parse(lines)
    except ParseError:
        raise
    except (ValueError, IndexError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def _parse(lines) -> QuadraticAlgebra:
    if not lines or lines[0] != "qja v1":
        raise ParseError("missing 'qja v1' header")
    pos = 1

    def take(key):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {key!r}")
        parts = lines[pos].split()
        if parts[0] != key:
            raise ParseError(f"expected {key!r}, got {lines[pos]!r}")
        pos += 1
        return parts[1:]

    (p,) = take("p")
    (m,) = take("m")
    p, m = int(p), int(m)
    modulus = None
    if m > 1:
        modulus = tuple(int(c) for c in take("modulus"))
    F = FieldSpec(p, m, modulus)
    (n,) = take("dim")
    n = int(n)
    if n < 1:
        raise ParseError("dimension must be positive")
    unit_parts = take("unit")
    if len(unit_parts) != n:
        raise ParseError("unit needs dim entries")
    unit = [F.parse_code(x) for x in unit_parts]
    diag = np.zeros((n, n, n), dtype=np.int64)
    seen_q = set()
    polar = {}
    while pos < len(lines):
        parts = lines[pos].split()
        pos += 1
        if parts[0] == "Q" and len(parts) == 2:
            i = int(parts[1]) - 1
            if not 0 <= i < n or i in seen_q:
                raise ParseError(f"bad or repeated block {parts}")
            seen_q.add(i)
            diag[i] = linalg.parse_matrix(lines[pos : pos + n], F, n)
        elif parts[0] == "P" and len(parts) == 3:
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            if not 0 <= i < j < n or (i, j) in polar:
                raise ParseError(f"bad or repeated block {parts}")
            polar[(i, j)] = linalg.parse_matrix(lines[pos : pos + n], F, n)
        else:
            raise ParseError(f"unexpected line {lines[pos - 1]!r}")
        pos += n
    if len(seen_q) != n:
        raise ParseError("every Q block must be present")
    return QuadraticAlgebra.from_operators(F, unit, diag, polar)


def read_algebra(path) -> QuadraticAlgebra:
    with open(path) as fh:
        return load_algebra(fh.read())


def write_algebra(J: QuadraticAlgebra, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_algebra(J))
