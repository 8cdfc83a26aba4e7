"""Finite Moufang sets M(J) built from weak quadratic Jordan division algebras.

Points are the element indices 0..N-1 of J in canonical order, followed by
infinity at index N. Permutations are tuples of images and act on the
right: ``compose(g, h)`` applies g first, then h.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from qjordan import linalg
from qjordan.identities import as_table, is_division, is_weak_qja
from qjordan.qjcore import MAX_ELEMENTS, OperatorTable, QuadraticAlgebra, isotope

Perm = tuple[int, ...]

MAX_GROUP_ORDER = 10**6


class NotMoufang(ValueError):
    """A construction that needs Moufang-set structure found none."""


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(h[x] for x in g)


def invert(g: Perm) -> Perm:
    inv = [0] * len(g)
    for x, y in enumerate(g):
        inv[y] = x
    return tuple(inv)


def conjugate(g: Perm, h: Perm) -> Perm:
    """g^h = h^-1 g h."""
    return compose(compose(invert(h), g), h)


@dataclass
class MoufangSetData:
    algebra: QuadraticAlgebra
    table: OperatorTable
    root_groups: dict[int, list[Perm]]
    tau: Perm
    alpha: list[Perm] = field(repr=False)

    @property
    def infinity(self) -> int:
        return self.table.N

    @property
    def n_points(self) -> int:
        return self.table.N + 1

    def point(self, a) -> int:
        return int(self.table.index(a))


def build_moufang(J: QuadraticAlgebra, bound: int = MAX_ELEMENTS) -> MoufangSetData:
    """X = J + {inf}, U_inf = translations, tau: x -> -x^-1, U_0 = U_inf^tau, U_c = U_0^alpha_c."""
    if not (is_weak_qja(J, bound) and is_division(J, bound)):
        raise ValueError("M(J) needs a weak quadratic Jordan division algebra")
    T = as_table(J, bound)
    N = T.N
    inf = N
    alpha = [tuple(int(x) for x in T.add_idx[:, b]) + (inf,) for b in range(N)]
    tau = [0] * (N + 1)
    tau[0], tau[inf] = inf, 0
    for x in range(1, N):
        tau[x] = int(T.neg_idx[T.inv_idx[x]])
    tau = tuple(tau)
    U0 = [conjugate(g, tau) for g in alpha]
    groups = {inf: alpha, 0: U0}
    for c in range(1, N):
        groups[c] = [conjugate(g, alpha[c]) for g in U0]
    return MoufangSetData(J, T, groups, tau, alpha)


def verify_moufang_axioms(M: MoufangSetData) -> bool:
    """Each U_x is a group fixing x and regular on X - {x}; U_y^g = U_{yg} for g in U_x."""
    points = range(M.n_points)
    if M.n_points < 3:
        return False
    as_sets = {x: frozenset(U) for x, U in M.root_groups.items()}
    if set(as_sets) != set(points):
        return False
    for x, U in M.root_groups.items():
        if len(as_sets[x]) != len(U) or len(U) != M.n_points - 1:
            return False
        if any(g[x] != x for g in U):
            return False
        y0 = next(y for y in points if y != x)
        if {g[y0] for g in U} != set(points) - {x}:
            return False
        if any(compose(g, h) not in as_sets[x] for g in U for h in U):
            return False
    for x, U in M.root_groups.items():
        for g in U:
            for y in points:
                if frozenset(conjugate(h, g) for h in M.root_groups[y]) != as_sets[g[y]]:
                    return False
    return True


def _generators(M: MoufangSetData) -> list[Perm]:
    seen = {}
    for x in sorted(M.root_groups):
        for g in M.root_groups[x]:
            seen.setdefault(g, None)
    return list(seen)


def group_closure(gens, limit: int = MAX_GROUP_ORDER) -> set[Perm]:
    """All products of the generators (breadth-first, deduplicated by image tuple)."""
    gens = list(gens)
    if not gens:
        return set()
    identity = tuple(range(len(gens[0])))
    elements = {identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in elements:
                elements.add(h)
                if len(elements) > limit:
                    raise OverflowError(f"group order exceeds {limit}")
                queue.append(h)
    return elements


def little_projective_group(M: MoufangSetData, limit: int = MAX_GROUP_ORDER) -> set[Perm]:
    cache = M.__dict__.setdefault("_gdagger", {})
    if limit not in cache:
        cache[limit] = group_closure(_generators(M), limit)
    return cache[limit]


def little_projective_group_order(M: MoufangSetData, limit: int = MAX_GROUP_ORDER) -> int:
    return len(little_projective_group(M, limit))


def is_two_transitive(gens, n_points: int) -> bool:
    start = (0, 1)
    orbit = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for g in gens:
            pair = (g[x], g[y])
            if pair not in orbit:
                orbit.add(pair)
                queue.append(pair)
    return len(orbit) == n_points * (n_points - 1)


def is_proper(M: MoufangSetData, limit: int = MAX_GROUP_ORDER) -> bool:
    """G-dagger is 2-transitive; proper iff it is not sharply 2-transitive."""
    if not is_two_transitive(_generators(M), M.n_points):
        raise NotMoufang("little projective group is not 2-transitive")
    k = M.n_points
    return little_projective_group_order(M, limit) != k * (k - 1)


def mu_candidates(M: MoufangSetData, a: int) -> list[Perm]:
    """Distinct elements of U_0 alpha_a U_0 that swap 0 and infinity."""
    inf = M.infinity
    U0 = M.root_groups[0]
    alpha_a = M.alpha[a]
    found = {}
    for g in U0:
        ga = compose(g, alpha_a)
        for h in U0:
            m = compose(ga, h)
            if m[0] == inf and m[inf] == 0:
                found.setdefault(m, None)
    return list(found)


def mu_map(M: MoufangSetData, a) -> Perm:
    """The unique element of U_0 alpha_a U_0 interchanging 0 and infinity."""
    a = _as_index(M, a)
    if a == 0:
        raise ValueError("mu_a needs a nonzero a")
    cands = mu_candidates(M, a)
    if len(cands) != 1:
        raise NotMoufang(f"found {len(cands)} candidates for mu_a")
    return cands[0]


def _as_index(M: MoufangSetData, a) -> int:
    if isinstance(a, (int, np.integer)):
        return int(a)
    return M.point(a)


class NotLinear(ValueError):
    pass


def _perm_as_matrix(M: MoufangSetData, perm: Perm) -> np.ndarray:
    """Matrix of a permutation of J, after checking it is F_p-linear."""
    T = M.table
    F = T.field
    img = np.array(perm[: T.N])
    if img[0] != 0 or perm[M.infinity] != M.infinity:
        raise NotLinear("map does not fix 0 and infinity")
    mat = T.elems[img[T.basis_idx]]
    if not np.array_equal(T.elems[img], F.vecmat(T.elems, mat)):
        raise NotLinear("restriction to J is not linear")
    return mat


def h_map(M: MoufangSetData, e, a) -> np.ndarray:
    """h_a = mu_e mu_a restricted to J, as a matrix; h_0 = 0."""
    e, a = _as_index(M, e), _as_index(M, a)
    if e == 0:
        raise ValueError("e must be nonzero")
    n = M.table.n
    if a == 0:
        return np.zeros((n, n), dtype=np.int64)
    return _perm_as_matrix(M, compose(mu_map(M, e), mu_map(M, a)))


@dataclass
class RecoveryReport:
    checks: dict[str, bool]
    reconstruction: QuadraticAlgebra | None = None
    identical: bool | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.failures

    def render(self) -> list[str]:
        lines = [f"{k} {'PASS' if v else 'FAIL'}" for k, v in self.checks.items()]
        lines += [f"note {f}" for f in self.failures]
        if self.identical is not None:
            lines.append("reconstruction identical" if self.identical else "reconstruction differs")
        return lines


def hua_operators(M: MoufangSetData, e) -> np.ndarray:
    """h_a for every element a of J, in canonical order."""
    T = M.table
    return np.array([h_map(M, e, a) for a in range(T.N)], dtype=np.int64)


def recover_H(M: MoufangSetData, e, bound: int = MAX_ELEMENTS) -> RecoveryReport:
    """Rebuild (J, H, e) from the Moufang set and test the Jordan axioms on it.

    The reconstruction is compared with the isotope J^e, which is J itself
    for e = 1.
    """
    from qjordan.identities import IdentityId, check_identity

    T = M.table
    F = T.field
    e = _as_index(M, e)
    checks: dict[str, bool] = {}
    failures: list[str] = []
    try:
        H = hua_operators(M, e)
    except (NotLinear, NotMoufang) as exc:
        return RecoveryReport({"linear": False}, failures=[str(exc)])
    HT = OperatorTable(F, T.elems[e], H)
    checks["QJ1"] = check_identity(HT, IdentityId.QJ1, bound).holds
    checks["QJ3"] = check_identity(HT, IdentityId.QJ3, bound).holds
    # tau of the abstract Moufang set is mu_e; it equals x -> -x^-1 when e = 1
    tau = mu_map(M, e)
    tau_ok = True
    for a in range(1, T.N):
        inv = linalg.mat_inverse(H[a], F)
        if inv is None or not np.array_equal(H[tau[a]], inv):
            tau_ok = False
            break
    checks["h_tau_inverse"] = tau_ok
    checks["h_scalar_square"] = all(
        np.array_equal(H[T.index(F.mul(T.elems[a], s))], F.mul(H[a], F.mul(s, s)))
        for a in range(T.N)
        for s in range(F.p)
    )
    # (a, b) -> h_{a+b} - h_a - h_b additive in a (symmetric, so also in b)
    A = np.arange(T.N)
    pol = HT.polar(A[:, None], A[None, :])
    biadd = True
    for c in range(T.N):
        lhs = pol[T.add_idx[A[:, None], c], A[None, :]]
        rhs = F.add(pol, pol[c][None, :])
        if not np.array_equal(lhs, rhs):
            biadd = False
            break
    checks["biadditive"] = biadd
    checks["QJ2"] = check_identity(HT, IdentityId.QJ2, bound).holds
    report = RecoveryReport(checks, failures=failures)
    if all(checks.values()):
        recon = QuadraticAlgebra.from_quadratic_map(F, T.elems[e], lambda v: H[T.index(v)])
        report.reconstruction = recon
        if not np.array_equal(recon.tables(bound).ops, H):
            failures.append("H is not a quadratic map")
        if not is_weak_qja(recon, bound):
            failures.append("reconstruction is not a weak quadratic Jordan algebra")
        report.identical = recon == isotope(M.algebra, T.elems[e])
    return report
