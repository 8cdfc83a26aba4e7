"""Exhaustive checks of the quadratic Jordan axioms and derived identities.

Every check quantifies over all element tuples of a finite algebra. Operator
identities are compared as matrices (one row per basis vector, which is the
same as "for all c"); pointwise identities are compared on elements. The
first failing tuple in canonical order is reported as a witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from qjordan.qjcore import MAX_ELEMENTS, OperatorTable, QuadraticAlgebra, scalar_extension


class IdentityId(enum.Enum):
    QJ1 = "QJ1"
    QJ2 = "QJ2"
    QJ3 = "QJ3"
    QJ2S = "QJ2S"
    QJ3S = "QJ3S"
    QJ3SS = "QJ3SS"
    INV = "INV"
    L21 = "L21"
    L22 = "L22"
    L23 = "L23"
    L24 = "L24"
    L25 = "L25"
    L26 = "L26"
    HUA = "HUA"
    VSYM = "VSYM"

    @property
    def variables(self) -> tuple[str, ...]:
        return _VARIABLES[self]

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def statement(self) -> str:
        return _STATEMENTS[self]


_VARIABLES = {
    IdentityId.QJ1: (),
    IdentityId.QJ2: ("a", "b"),
    IdentityId.QJ3: ("a", "b"),
    IdentityId.QJ2S: ("a1", "a2", "b"),
    IdentityId.QJ3S: ("a1", "a2", "b"),
    IdentityId.QJ3SS: ("a1", "a2", "b"),
    IdentityId.INV: ("a",),
    IdentityId.L21: ("a", "x", "y"),
    IdentityId.L22: ("x",),
    IdentityId.L23: ("a", "x"),
    IdentityId.L24: ("x",),
    IdentityId.L25: ("x", "a"),
    IdentityId.L26: ("x", "y"),
    IdentityId.HUA: ("a", "b"),
    IdentityId.VSYM: ("a", "b", "c"),
}

_STATEMENTS = {
    IdentityId.QJ1: "Q_1 = id",
    IdentityId.QJ2: "Q_a V_{a,b} = V_{b,a} Q_a",
    IdentityId.QJ3: "Q_{bQ_a} = Q_a Q_b Q_a",
    IdentityId.QJ2S: "Q_{a1} V_{a2,b} + Q_{a1,a2} V_{a1,b} = V_{b,a1} Q_{a1,a2} + V_{b,a2} Q_{a1}",
    IdentityId.QJ3S: "Q_{bQ_{a1}, bQ_{a1,a2}} = Q_{a1,a2} Q_b Q_{a1} + Q_{a1} Q_b Q_{a1,a2}",
    IdentityId.QJ3SS: (
        "Q_{bQ_{a1,a2}} + Q_{bQ_{a2}, bQ_{a1}} = Q_{a1} Q_b Q_{a2} + Q_{a2} Q_b Q_{a1}"
        " + Q_{a1,a2} Q_b Q_{a1,a2}"
    ),
    IdentityId.INV: "Q_{a^-1} = Q_a^-1 (a invertible)",
    IdentityId.L21: "y Q_{aQ_x, x} = a Q_{yQ_x, x}",
    IdentityId.L22: "Q_{x,1} = V_{x,1} = V_{1,x}",
    IdentityId.L23: "V_{x,a^-1} = V_{a, xQ_a^-1} = Q_a^-1 Q_{x,a} (a invertible)",
    IdentityId.L24: "Q_{1,x} Q_x = Q_x Q_{1,x}",
    IdentityId.L25: "Q_x^-1 V_{a,x} = V_{x,a} Q_x^-1 = Q_{a,x^-1} (x invertible)",
    IdentityId.L26: "Q_x^-1 Q_{x+y} Q_y^-1 = Q_{x^-1 + y^-1} (x, y invertible)",
    IdentityId.HUA: "a Q_b = b - (b^-1 - (b - a^-1)^-1)^-1 (a, b invertible, a != b^-1)",
    IdentityId.VSYM: "c V_{a,b} = a V_{c,b}",
}


@dataclass
class Report:
    tag: str
    holds: bool
    witness: tuple[int, ...] | None = None
    variables: tuple[str, ...] = ()
    checked: int = 0
    skipped: int | None = None
    witness_text: str | None = field(default=None, repr=False)

    def render(self, machine: bool = False) -> str:
        status = "PASS" if self.holds else "FAIL"
        if machine:
            parts = [f"tag={self.tag}", f"status={status}", f"checked={self.checked}"]
            if self.witness is not None:
                parts.append(f"witness={self.witness_text or ''}")
            if self.skipped is not None:
                parts.append(f"skipped={self.skipped}")
            return " ".join(parts)
        line = f"{self.tag} {status}"
        if self.witness is not None:
            line += f" witness={self.witness_text or '()'}"
        if self.skipped is not None:
            line += f" skipped={self.skipped}"
        return line


def as_table(J, bound: int = MAX_ELEMENTS) -> OperatorTable:
    if isinstance(J, OperatorTable):
        return J
    return J.tables(bound)


def _eq(x, y, keep: int) -> np.ndarray:
    """Elementwise equality reduced over all axes after the first ``keep``."""
    d = np.asarray(x) != np.asarray(y)
    return ~d.reshape(d.shape[:keep] + (-1,)).any(axis=-1)


def _first(ok: np.ndarray, prefix=()):
    """Witness tuple for the first False in C order, or None."""
    bad = np.flatnonzero(~np.asarray(ok).ravel())
    if bad.size == 0:
        return None
    return tuple(prefix) + tuple(int(i) for i in np.unravel_index(bad[0], np.shape(ok)))


def _v_all(T: OperatorTable) -> np.ndarray:
    """V_{a,b} for all index pairs, shape (N, N, n, n); cached on the table."""
    cached = T.__dict__.get("_v_all")
    if cached is None:
        idx = np.arange(T.N)
        cached = np.stack([T.v_op(a, idx) for a in range(T.N)])
        T.__dict__["_v_all"] = cached
    return cached


# -- individual checks; each returns (witness, checked, skipped) ---------------


def _qj1(T):
    ok = np.array_equal(T.ops[T.unit_idx], np.eye(T.n, dtype=np.int64))
    return (None if ok else ()), 1, None


def _qj2(T):
    F, N = T.field, T.N
    V = _v_all(T)
    for a in range(N):
        Qa = T.ops[a]
        ok = _eq(F.matmul(Qa, V[a]), F.matmul(V[:, a], Qa), 1)
        w = _first(ok, (a,))
        if w:
            return w, N * N, None
    return None, N * N, None


def _qj3(T):
    F, N = T.field, T.N
    for a in range(N):
        Qa = T.ops[a]
        ok = _eq(T.ops[T.act_idx[a]], F.matmul(F.matmul(Qa, T.ops), Qa), 1)
        w = _first(ok, (a,))
        if w:
            return w, N * N, None
    return None, N * N, None


def _qj2s(T):
    F, N = T.field, T.N
    V = _v_all(T)
    Vt = np.swapaxes(V, 0, 1)  # Vt[a2, b] = V_{b, a2}
    idx = np.arange(N)
    for a1 in range(N):
        Q1 = T.ops[a1]
        P = T.polar(a1, idx)[:, None]  # Q_{a1,a2}, indexed by a2
        lhs = F.add(F.matmul(Q1, V), F.matmul(P, V[a1][None]))
        rhs = F.add(F.matmul(V[:, a1][None], P), F.matmul(Vt, Q1))
        w = _first(_eq(lhs, rhs, 2), (a1,))
        if w:
            return w, N**3, None
    return None, N**3, None


def _qj3s(T):
    F, N = T.field, T.N
    A2 = np.arange(N)[:, None]
    B = np.arange(N)[None, :]
    Qb = T.ops[None, :]
    for a1 in range(N):
        Q1 = T.ops[a1]
        P = T.polar(a1, np.arange(N))[:, None]
        x = np.broadcast_to(T.act_idx[a1][B], (N, N))
        y = T.apply(B, P)
        lhs = T.polar(x, y)
        rhs = F.add(F.matmul(F.matmul(P, Qb), Q1), F.matmul(F.matmul(Q1, Qb), P))
        w = _first(_eq(lhs, rhs, 2), (a1,))
        if w:
            return w, N**3, None
    return None, N**3, None


def _qj3ss(T):
    F, N = T.field, T.N
    A2 = np.arange(N)[:, None]
    B = np.arange(N)[None, :]
    Qb = T.ops[None, :]
    Q2 = T.ops[:, None]
    for a1 in range(N):
        Q1 = T.ops[a1]
        P = T.polar(a1, np.arange(N))[:, None]
        y = T.apply(B, P)
        lhs = F.add(T.ops[y], T.polar(T.act_idx[A2, B], T.act_idx[a1][B]))
        rhs = F.add(
            F.add(F.matmul(F.matmul(Q1, Qb), Q2), F.matmul(F.matmul(Q2, Qb), Q1)),
            F.matmul(F.matmul(P, Qb), P),
        )
        w = _first(_eq(lhs, rhs, 2), (a1,))
        if w:
            return w, N**3, None
    return None, N**3, None


def _inv(T):
    inv = np.flatnonzero(T.invertible)
    ok = _eq(T.ops[T.inv_idx[inv]], T.inv_ops[inv], 1)
    bad = np.flatnonzero(~ok)
    return ((int(inv[bad[0]]),) if bad.size else None), int(inv.size), None


def _l21(T):
    F, N = T.field, T.N
    X = np.arange(N)[:, None]
    Y = np.arange(N)[None, :]
    for a in range(N):
        u = T.act_idx[X, a]  # a Q_x
        lhs = F.vecmat(T.elems[Y], T.polar(u, X))
        w_ = T.act_idx[X, Y]  # y Q_x
        rhs = F.vecmat(T.elems[a], T.polar(w_, X))
        w = _first(_eq(lhs, rhs, 2), (a,))
        if w:
            return w, N**3, None
    return None, N**3, None


def _l22(T):
    X = np.arange(T.N)
    u = T.unit_idx
    q = T.polar(X, u)
    ok = _eq(q, T.v_op(X, u), 1) & _eq(q, T.v_op(u, X), 1)
    return _first(ok), T.N, None


def _l23(T):
    F, N = T.field, T.N
    X = np.arange(N)
    checked = 0
    for a in np.flatnonzero(T.invertible):
        checked += N
        Ainv = T.inv_ops[a]
        v1 = T.v_op(X, T.inv_idx[a])
        v2 = T.v_op(a, T.apply(X, Ainv))
        v3 = F.matmul(Ainv, T.polar(X, a))
        w = _first(_eq(v1, v2, 1) & _eq(v2, v3, 1), (int(a),))
        if w:
            return w, checked, None
    return None, checked, None


def _l24(T):
    F = T.field
    X = np.arange(T.N)
    P = T.polar(T.unit_idx, X)
    return _first(_eq(F.matmul(P, T.ops), F.matmul(T.ops, P), 1)), T.N, None


def _l25(T):
    F, N = T.field, T.N
    A = np.arange(N)
    checked = 0
    for x in np.flatnonzero(T.invertible):
        checked += N
        Xinv = T.inv_ops[x]
        v1 = F.matmul(Xinv, T.v_op(A, x))
        v2 = F.matmul(T.v_op(x, A), Xinv)
        v3 = T.polar(A, T.inv_idx[x])
        w = _first(_eq(v1, v2, 1) & _eq(v2, v3, 1), (int(x),))
        if w:
            return w, checked, None
    return None, checked, None


def _l26(T):
    F = T.field
    inv = np.flatnonzero(T.invertible)
    checked = 0
    for x in inv:
        checked += inv.size
        lhs = F.matmul(F.matmul(T.inv_ops[x], T.ops[T.add_idx[x, inv]]), T.inv_ops[inv])
        rhs = T.ops[T.add_idx[T.inv_idx[x], T.inv_idx[inv]]]
        bad = np.flatnonzero(~_eq(lhs, rhs, 1))
        if bad.size:
            return (int(x), int(inv[bad[0]])), checked, None
    return None, checked, None


def _hua(T):
    inv = np.flatnonzero(T.invertible)
    A = inv[:, None]
    B = inv[None, :]
    inv_of = T.inv_idx
    domain = np.ones((inv.size, inv.size), dtype=bool)
    domain &= A != inv_of[B]
    t1 = T.add_idx[B, T.neg_idx[inv_of[A]]]  # b - a^-1
    domain &= inv_of[t1] >= 0
    t2 = T.add_idx[inv_of[B], T.neg_idx[inv_of[np.where(domain, t1, 0)]]]  # b^-1 - (b - a^-1)^-1
    domain &= inv_of[t2] >= 0
    rhs = T.add_idx[B, T.neg_idx[inv_of[np.where(domain, t2, 0)]]]
    lhs = T.act_idx[B, A]  # a Q_b
    ok = (lhs == rhs) | ~domain
    skipped = int((~domain).sum())
    bad = np.flatnonzero(~ok.ravel())
    witness = None
    if bad.size:
        i, j = np.unravel_index(bad[0], ok.shape)
        witness = (int(inv[i]), int(inv[j]))
    return witness, int(domain.sum()), skipped


def _vsym(T):
    F, N = T.field, T.N
    V = _v_all(T)
    B = np.arange(N)[:, None]
    C = np.arange(N)[None, :]
    for a in range(N):
        lhs = F.vecmat(T.elems[C], V[a][B])
        rhs = F.vecmat(T.elems[a], V[C, B])
        w = _first(_eq(lhs, rhs, 2), (a,))
        if w:
            return w, N**3, None
    return None, N**3, None


_CHECKS = {
    IdentityId.QJ1: _qj1,
    IdentityId.QJ2: _qj2,
    IdentityId.QJ3: _qj3,
    IdentityId.QJ2S: _qj2s,
    IdentityId.QJ3S: _qj3s,
    IdentityId.QJ3SS: _qj3ss,
    IdentityId.INV: _inv,
    IdentityId.L21: _l21,
    IdentityId.L22: _l22,
    IdentityId.L23: _l23,
    IdentityId.L24: _l24,
    IdentityId.L25: _l25,
    IdentityId.L26: _l26,
    IdentityId.HUA: _hua,
    IdentityId.VSYM: _vsym,
}

WEAK = (IdentityId.QJ1, IdentityId.QJ2, IdentityId.QJ3)
LINEARIZED = (IdentityId.QJ2S, IdentityId.QJ3S, IdentityId.QJ3SS)
LEMMAS = (
    IdentityId.INV,
    IdentityId.L21,
    IdentityId.L22,
    IdentityId.L23,
    IdentityId.L24,
    IdentityId.L25,
    IdentityId.L26,
    IdentityId.VSYM,
)


def check_identity(J, ident: IdentityId | str, bound: int = MAX_ELEMENTS) -> Report:
    """Check one catalog identity over every admissible tuple of J."""
    ident = IdentityId(ident)
    T = as_table(J, bound)
    witness, checked, skipped = _CHECKS[ident](T)
    text = None
    if witness is not None:
        text = ";".join(f"{v}={T.format_element(k)}" for v, k in zip(ident.variables, witness))
    return Report(
        tag=ident.value,
        holds=witness is None,
        witness=witness,
        variables=ident.variables,
        checked=checked,
        skipped=skipped,
        witness_text=text,
    )


def division_report(J, bound: int = MAX_ELEMENTS) -> Report:
    T = as_table(J, bound)
    singular = np.flatnonzero(~T.invertible[1:]) + 1
    if singular.size:
        k = int(singular[0])
        return Report("DIVISION", False, (k,), ("a",), T.N - 1, None, f"a={T.format_element(k)}")
    return Report("DIVISION", True, None, ("a",), T.N - 1)


def is_weak_qja(J, bound: int = MAX_ELEMENTS) -> bool:
    return all(check_identity(J, i, bound).holds for i in WEAK)


def is_strict_qja(J, bound: int = MAX_ELEMENTS) -> bool:
    """Weak axioms plus the linearized QJ2* and QJ3*."""
    return is_weak_qja(J, bound) and all(
        check_identity(J, i, bound).holds for i in (IdentityId.QJ2S, IdentityId.QJ3S)
    )


def strict_reports(J, bound: int = MAX_ELEMENTS) -> list[Report]:
    """Reports for QJ1-QJ3, QJ2*, QJ3* and (informational) QJ3**."""
    return [check_identity(J, i, bound) for i in WEAK + LINEARIZED]


def is_strict_via_extension(J: QuadraticAlgebra, bound: int = MAX_ELEMENTS, extend=scalar_extension) -> bool:
    """Weak axioms of the scalar extension to F_{p^2}.

    Over a field with at least 4 elements the weak axioms imply their
    linearizations, which then restrict to the base field.
    """
    if J.field.p not in (2, 3) or not J.field.is_prime_field:
        raise ValueError("extension criterion is meant for algebras over F_2 or F_3")
    return is_weak_qja(extend(J, 2), bound)


def is_division(J, bound: int = MAX_ELEMENTS) -> bool:
    return division_report(J, bound).holds


def linearized_at(J, a1, a2, bound: int = MAX_ELEMENTS) -> bool:
    """QJ2* and QJ3* with a1, a2 fixed, for every b."""
    T = as_table(J, bound)
    F, N = T.field, T.N
    i1 = int(T.index(a1))
    i2 = int(T.index(a2))
    B = np.arange(N)
    Q1, Q2 = T.ops[i1], T.ops[i2]
    P = T.polar(i1, i2)
    V = T.v_op
    lhs = F.add(F.matmul(Q1, V(i2, B)), F.matmul(P, V(i1, B)))
    rhs = F.add(F.matmul(V(B, i1), P), F.matmul(V(B, i2), Q1))
    if not _eq(lhs, rhs, 0).all():
        return False
    x = T.act_idx[i1, B]
    y = T.apply(B, P)
    lhs = T.polar(x, y)
    rhs = F.add(F.matmul(F.matmul(P, T.ops), Q1), F.matmul(F.matmul(Q1, T.ops), P))
    return bool(_eq(lhs, rhs, 0).all())


SUITES = {
    "weak": WEAK,
    "strict": WEAK + LINEARIZED,
    "lemmas": LEMMAS + (IdentityId.HUA,),
    "division": (),
    "all": WEAK + LINEARIZED + LEMMAS + (IdentityId.HUA,),
}


def run_suite(J, suite: str, bound: int = MAX_ELEMENTS) -> list[Report]:
    """Reports for a named suite; HUA is only run on division algebras."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    reports = []
    division = None
    if suite in ("division", "all", "lemmas"):
        division = division_report(J, bound)
    for ident in SUITES[suite]:
        if ident is IdentityId.HUA and not division.holds:
            continue
        reports.append(check_identity(J, ident, bound))
    if suite in ("division", "all"):
        reports.append(division)
    return reports
