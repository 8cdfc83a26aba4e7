"""Census of normalized candidates over several (p, n) spaces.

    python3 scripts/run_census.py --out results/census
"""

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from qjordan.search import classify_candidates


@dataclass
class CensusConfig:
    spaces: list[tuple[int, int]] = field(default_factory=lambda: [(2, 1), (3, 1), (2, 2), (3, 2)])
    sampled: list[tuple[int, int]] = field(default_factory=lambda: [(2, 3)])
    sample: int = 500
    seed: int = 0
    workers: int = 1
    out: Path = Path("results/census")


def run(cfg: CensusConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    violations = 0
    jobs = [(p, n, None, None) for p, n in cfg.spaces] + [(p, n, cfg.sample, cfg.seed) for p, n in cfg.sampled]
    for p, n, sample, seed in jobs:
        t0 = time.perf_counter()
        census = classify_candidates(p, n, sample=sample, seed=seed, workers=cfg.workers, check_extension=True)
        dt = time.perf_counter() - t0
        text = census.render() + f"extension_mismatches={len(census.extension_mismatches)}\n"
        name = f"census_p{p}_n{n}" + (f"_sample{sample}_seed{seed}" if sample else "")
        (cfg.out / f"{name}.txt").write_text(text)
        violations += len(census.main_theorem_violations) + len(census.extension_mismatches)
        print(f"({p},{n}) total={census.total} weak={census.weak} strict={census.strict} "
              f"weak_division={census.weak_division} violations={len(census.main_theorem_violations)} "
              f"mismatches={len(census.extension_mismatches)} [{dt:.1f}s]")
    return 1 if violations else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sample", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/census"))
    args = ap.parse_args()
    raise SystemExit(run(CensusConfig(sample=args.sample, seed=args.seed, workers=args.workers, out=args.out)))


if __name__ == "__main__":
    main()
