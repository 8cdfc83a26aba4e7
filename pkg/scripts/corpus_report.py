"""Identity, derivation and Moufang-set summary for the example corpus."""

import argparse
from dataclasses import dataclass, field

from qjordan import moufang as mf
from qjordan.constructions import field_algebra, matrix_plus_algebra
from qjordan.deriv import Epsilon, derivation_space
from qjordan.identities import is_division, run_suite


@dataclass
class CorpusConfig:
    fields: list[tuple[int, int]] = field(default_factory=lambda: [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
    matrices: list[tuple[int, int]] = field(default_factory=lambda: [(2, 2), (3, 2)])
    moufang_max_points: int = 10


def corpus(cfg: CorpusConfig):
    for p, m in cfg.fields:
        yield f"F_{p**m}", field_algebra(p, m)
    for p, r in cfg.matrices:
        yield f"M_{r}(F_{p})+", matrix_plus_algebra(p, r)


def run(cfg: CorpusConfig) -> None:
    print(f"{'algebra':<10} {'N':>5} {'suite':<6} {'div':<4} {'D+':>3} {'D-':>3} {'|G|':>5} proper")
    for name, J in corpus(cfg):
        reports = [r for r in run_suite(J, "all") if r.tag != "DIVISION"]
        suite = "ok" if all(r.holds for r in reports) else "FAIL"
        div = is_division(J)
        dims = [derivation_space(J, e).dim for e in (Epsilon.PLUS, Epsilon.MINUS)]
        order, proper = "-", "-"
        if div and J.size + 1 <= cfg.moufang_max_points:
            M = mf.build_moufang(J)
            order, proper = mf.little_projective_group_order(M), "yes" if mf.is_proper(M) else "no"
        print(f"{name:<10} {J.size:>5} {suite:<6} {'yes' if div else 'no':<4} {dims[0]:>3} {dims[1]:>3} {order:>5} {proper}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moufang-max-points", type=int, default=10)
    run(CorpusConfig(moufang_max_points=ap.parse_args().moufang_max_points))
