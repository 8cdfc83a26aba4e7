"""Exhaustive census of small normalized quadratic algebras over F_2 and F_3.

Candidates fix the unit to e_1 and Q_{e_1} = I; the remaining Q_{e_i}
(i >= 2) and all polar matrices Q_{e_i,e_j} (i < j) are free. A candidate
is numbered by reading its free matrix entries as base-p odometer digits,
first entry most significant.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from qjordan.gf import FieldSpec
from qjordan.identities import IdentityId, check_identity, is_division, is_strict_via_extension
from qjordan.qjcore import QuadraticAlgebra, dump_algebra, scalar_extension

FULL_SPACES = {(2, 1), (2, 2), (3, 1), (3, 2)}


class SpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpace:
    p: int
    n: int

    @property
    def n_digits(self) -> int:
        n = self.n
        return n * n * (n - 1) + n * n * (n * (n - 1) // 2)

    @property
    def size(self) -> int:
        return self.p**self.n_digits

    def digits(self, index: int) -> np.ndarray:
        out = np.zeros(self.n_digits, dtype=np.int64)
        for k in range(self.n_digits - 1, -1, -1):
            index, out[k] = divmod(index, self.p)
        return out

    def candidate(self, digits) -> QuadraticAlgebra:
        n, p = self.n, self.p
        digits = np.asarray(digits, dtype=np.int64)
        F = FieldSpec(p)
        diag = np.zeros((n, n, n), dtype=np.int64)
        diag[0] = np.eye(n, dtype=np.int64)
        pos = 0
        for i in range(1, n):
            diag[i] = digits[pos : pos + n * n].reshape(n, n)
            pos += n * n
        polar = np.zeros((n, n, n, n), dtype=np.int64)
        for i, j in combinations(range(n), 2):
            polar[i, j] = digits[pos : pos + n * n].reshape(n, n)
            pos += n * n
        unit = np.zeros(n, dtype=np.int64)
        unit[0] = 1
        return QuadraticAlgebra(F, unit, diag, polar)


def enumerate_candidates(p: int, n: int, sample: int | None = None, seed: int | None = None):
    """Yield (label, algebra) pairs in canonical order.

    Full enumeration is allowed for the small spaces only; larger spaces need
    ``sample`` and ``seed``, and then yield seeded random candidates labelled
    by their position in the sample.
    """
    space = SearchSpace(p, n)
    if sample is None:
        if (p, n) not in FULL_SPACES:
            raise SpaceTooLarge(f"space ({p}, {n}) has {space.size} candidates; use sampling")
        for k in range(space.size):
            yield k, space.candidate(space.digits(k))
        return
    if seed is None:
        raise ValueError("sampling needs an explicit seed")
    rng = np.random.default_rng(seed)
    for k in range(sample):
        yield k, space.candidate(rng.integers(0, p, size=space.n_digits))


@dataclass
class Census:
    p: int
    n: int
    total: int = 0
    weak: int = 0
    strict: int = 0
    weak_division: int = 0
    strict_division: int = 0
    weak_not_strict: list[tuple[int, str]] = field(default_factory=list)
    main_theorem_violations: list[int] = field(default_factory=list)
    extension_mismatches: list[int] = field(default_factory=list)

    def merge(self, other: "Census") -> None:
        self.total += other.total
        self.weak += other.weak
        self.strict += other.strict
        self.weak_division += other.weak_division
        self.strict_division += other.strict_division
        self.weak_not_strict += other.weak_not_strict
        self.main_theorem_violations += other.main_theorem_violations
        self.extension_mismatches += other.extension_mismatches

    def render(self, include_algebras: bool = True) -> str:
        lines = [
            f"p={self.p}",
            f"n={self.n}",
            f"total={self.total}",
            f"weak={self.weak}",
            f"strict={self.strict}",
            f"weak_division={self.weak_division}",
            f"strict_division={self.strict_division}",
            f"weak_not_strict_count={len(self.weak_not_strict)}",
            f"main_theorem_violations={len(self.main_theorem_violations)}",
        ]
        if include_algebras:
            for label, text in self.weak_not_strict:
                lines.append(f"# candidate {label}")
                lines.append(text.rstrip("\n"))
        return "\n".join(lines) + "\n"


def classify(J: QuadraticAlgebra) -> dict[str, bool]:
    weak = all(check_identity(J, i).holds for i in (IdentityId.QJ1, IdentityId.QJ2, IdentityId.QJ3))
    strict = weak and all(check_identity(J, i).holds for i in (IdentityId.QJ2S, IdentityId.QJ3S))
    return {"weak": weak, "strict": strict, "division": is_division(J)}


def _classify_chunk(args) -> Census:
    p, n, start, stop, sample, seed, check_extension = args
    census = Census(p, n)
    items = enumerate_candidates(p, n, sample, seed)
    for label, J in items:
        if label < start:
            continue
        if label >= stop:
            break
        c = classify(J)
        census.total += 1
        census.weak += c["weak"]
        census.strict += c["strict"]
        census.weak_division += c["weak"] and c["division"]
        census.strict_division += c["strict"] and c["division"]
        if c["weak"] and not c["strict"]:
            census.weak_not_strict.append((label, dump_algebra(J)))
        if c["weak"] and c["division"] and not c["strict"]:
            census.main_theorem_violations.append(label)
        if check_extension and c["weak"] and is_strict_via_extension(J) != c["strict"]:
            census.extension_mismatches.append(label)
    return census


def _ranges(total: int, parts: int):
    parts = max(1, min(parts, total)) if total else 1
    step = -(-total // parts) if total else 0
    return [(k * step, min(total, (k + 1) * step)) for k in range(parts)]


def classify_candidates(
    p: int,
    n: int,
    sample: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    check_extension: bool = False,
) -> Census:
    """Census of every candidate; chunks are merged in index order."""
    total = sample if sample is not None else SearchSpace(p, n).size
    if sample is None and (p, n) not in FULL_SPACES:
        raise SpaceTooLarge(f"space ({p}, {n}) needs sampling")
    jobs = [(p, n, a, b, sample, seed, check_extension) for a, b in _ranges(total, workers)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_classify_chunk, jobs))
    else:
        parts = [_classify_chunk(j) for j in jobs]
    census = Census(p, n)
    for part in parts:
        census.merge(part)
    return census


def strictness_agreement_sweep(p: int, n: int, extend=scalar_extension, sample=None, seed=None) -> bool:
    """is_strict_qja == is_strict_via_extension for every weak candidate."""
    for _, J in enumerate_candidates(p, n, sample, seed):
        c = classify(J)
        if c["weak"] and is_strict_via_extension(J, extend=extend) != c["strict"]:
            return False
    return True
