"""epsilon-derivations of finite quadratic algebras.

A linear map d (an n x n matrix acting on row vectors) is an
epsilon-derivation when d(a Q_b) = eps d(a) Q_b + a Q_{b, d(b)} for all
a, b; as operators, Q_b d = eps d Q_b + Q_{b, b d} for every b.

Solution spaces are kernels over the n^2 unknown entries of d, flattened
row-major (unknown r*n + c is d[r, c]). Bases are returned in reduced
echelon form, so two spaces are equal iff their bases are equal arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from qjordan import linalg
from qjordan.identities import as_table
from qjordan.qjcore import MAX_ELEMENTS, QuadraticAlgebra, isotope


class Epsilon(enum.Enum):
    PLUS = 1
    MINUS = -1

    def code(self, F) -> int:
        return F.from_int(self.value)

    def __mul__(self, other: "Epsilon") -> "Epsilon":
        return Epsilon(self.value * other.value)

    @classmethod
    def parse(cls, text: str) -> "Epsilon":
        return {"plus": cls.PLUS, "+": cls.PLUS, "minus": cls.MINUS, "-": cls.MINUS}[text]

    def __str__(self):
        return "+" if self is Epsilon.PLUS else "-"


@dataclass(eq=False)
class DerivationSpace:
    epsilon: Epsilon | None  # None for the generalized space D_+ + D_-
    n: int
    basis: np.ndarray  # (k, n*n) echelon rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def maps(self) -> np.ndarray:
        return self.basis.reshape(-1, self.n, self.n)

    def __eq__(self, other):
        if not isinstance(other, DerivationSpace):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.basis, other.basis)

    __hash__ = None


def is_derivation(J, d, eps: Epsilon, bound: int = MAX_ELEMENTS) -> bool:
    """Exhaustive check of Q_b d = eps d Q_b + Q_{b, b d} over all b."""
    T = as_table(J, bound)
    F = T.field
    d = np.asarray(d, dtype=np.int64)
    e = eps.code(F)
    B = np.arange(T.N)
    bd = T.apply(B, d)
    lhs = F.matmul(T.ops, d)
    rhs = F.add(F.mul(F.matmul(d, T.ops), e), T.polar(B, bd))
    return bool(np.array_equal(lhs, rhs))


def _unknown_maps(n: int) -> np.ndarray:
    return np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)


def _solve(F, n, conditions) -> np.ndarray:
    """Kernel of the linear map d -> conditions(d), evaluated on unit matrices."""
    cols = [np.asarray(conditions(E)).ravel() for E in _unknown_maps(n)]
    return linalg.kernel_basis(np.stack(cols, axis=1), F)


def derivation_space(J: QuadraticAlgebra, eps: Epsilon) -> DerivationSpace:
    """Solve for all eps-derivations from basis and polarized-pair conditions.

    The defect b -> Q_b d - eps d Q_b - Q_{b, b d} is quadratic in b, so it
    vanishes identically iff it vanishes at every e_j and its polarization
    vanishes at every pair (e_j, e_k), j < k.
    """
    F = J.field
    n = J.n
    e = eps.code(F)
    P = J.polar

    def pol_with(j, x):
        # Q_{e_j, x} = sum_k x_k P[j, k]
        return F.sum(F.mul(x[:, None, None], P[j]), axis=0)

    def conditions(d):
        out = []
        for j in range(n):
            out.append(
                F.sub(F.sub(F.matmul(J.diag[j], d), F.mul(F.matmul(d, J.diag[j]), e)), pol_with(j, d[j]))
            )
        for j in range(n):
            for k in range(j + 1, n):
                t = F.sub(F.matmul(P[j, k], d), F.mul(F.matmul(d, P[j, k]), e))
                t = F.sub(t, pol_with(j, d[k]))
                t = F.sub(t, pol_with(k, d[j]))
                out.append(t)
        return np.stack(out)

    return DerivationSpace(eps, n, _solve(F, n, conditions))


def generalized_derivation_space(J: QuadraticAlgebra) -> DerivationSpace:
    """D(J) = D_+ + D_-; equal summands in characteristic 2, direct otherwise."""
    F = J.field
    plus = derivation_space(J, Epsilon.PLUS)
    minus = derivation_space(J, Epsilon.MINUS)
    total = linalg.span_sum(plus.basis, minus.basis, F)
    if F.p == 2:
        assert plus == minus, "D_+ and D_- must agree in characteristic 2"
    else:
        assert len(total) == plus.dim + minus.dim, "D_+ and D_- must intersect trivially"
    return DerivationSpace(None, J.n, total)


def intersection(U: DerivationSpace, V: DerivationSpace, F) -> np.ndarray:
    return linalg.intersection_basis(U.basis, V.basis, F)


def bracket(d1, d2, F) -> np.ndarray:
    """The map a -> d1(d2(a)) - d2(d1(a)); with right action that is d2 d1 - d1 d2."""
    d1 = np.asarray(d1)
    d2 = np.asarray(d2)
    if d1.shape != d2.shape:
        raise ValueError("size mismatch")
    return F.sub(F.matmul(d2, d1), F.matmul(d1, d2))


def q1a_maps_are_antiderivations(J: QuadraticAlgebra, bound: int = MAX_ELEMENTS) -> bool:
    """Every Q_{1,e_i} is an anti-derivation (enough by linearity in a)."""
    T = as_table(J, bound)
    return all(
        is_derivation(T, T.polar(T.unit_idx, int(e)), Epsilon.MINUS) for e in T.basis_idx
    )


def isotope_antiderivation_check(J: QuadraticAlgebra, a, b, bound: int = MAX_ELEMENTS) -> bool:
    """In J^a: Q^a_{a,b} = V^a_{a,b} = V^a_{b,a}, and this map is an anti-derivation."""
    Ja = isotope(J, a)
    T = as_table(Ja, bound)
    ia, ib = int(T.index(a)), int(T.index(b))
    Q = T.polar(ia, ib)
    if not (np.array_equal(Q, T.v_op(ia, ib)) and np.array_equal(Q, T.v_op(ib, ia))):
        return False
    return is_derivation(T, Q, Epsilon.MINUS)


def inverse_compatible_space(J: QuadraticAlgebra, eps: Epsilon, bound: int = MAX_ELEMENTS) -> DerivationSpace:
    """All linear d with d(a^-1) = -eps d(a) Q_a^-1 for every invertible a."""
    T = as_table(J, bound)
    F = T.field
    if not T.invertible[1:].all():
        raise ValueError("inverse-compatible maps are defined here for division algebras")
    e = eps.code(F)
    units = np.flatnonzero(T.invertible)
    A = T.elems[units]
    Ainv = T.elems[T.inv_idx[units]]
    Qinv = T.inv_ops[units]

    def conditions(d):
        left = F.vecmat(Ainv, d)
        right = F.mul(F.vecmat(F.vecmat(A, d), Qinv), e)
        return F.add(left, right)

    return DerivationSpace(eps, T.n, _solve(F, T.n, conditions))


def derivations_transitive_on_units(J: QuadraticAlgebra, bound: int = MAX_ELEMENTS) -> bool:
    """For every invertible a, {a d : d in D(J)} is all of J."""
    T = as_table(J, bound)
    F = T.field
    D = generalized_derivation_space(J).maps
    if len(D) == 0:
        return False
    for a in np.flatnonzero(T.invertible):
        images = F.vecmat(T.elems[a], D)
        if linalg.rank(images, F) < T.n:
            return False
    return True


def all_linear_maps(F, n: int) -> np.ndarray:
    """Every n x n matrix over F, in odometer order (for brute-force cross-checks)."""
    from qjordan.qjcore import element_grid

    return element_grid(F, n * n).reshape(-1, n, n)


def brute_force_space(J: QuadraticAlgebra, eps: Epsilon, bound: int = MAX_ELEMENTS) -> DerivationSpace:
    """Filter every linear map through is_derivation; feasible for q^(n^2) small."""
    T = as_table(J, bound)
    F = T.field
    maps = all_linear_maps(F, T.n)
    e = eps.code(F)
    B = np.arange(T.N)
    hits = []
    for d in maps:
        lhs = F.matmul(T.ops, d)
        rhs = F.add(F.mul(F.matmul(d, T.ops), e), T.polar(B, T.apply(B, d)))
        if np.array_equal(lhs, rhs):
            hits.append(d.ravel())
    basis = linalg.echelon_basis(np.array(hits).reshape(-1, T.n * T.n), F, width=T.n * T.n)
    return DerivationSpace(eps, T.n, basis)
