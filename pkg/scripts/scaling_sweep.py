"""Time every randomized identity across coefficient degrees.

Prints one line per (identity, degree) with the verdict and seconds per
instance, which shows where the symbolic cost grows.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from algebroids.suite import EXTRA_IDENTITIES, IDENTITIES, run_identity


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 0
    degrees: tuple[int, ...] = (1, 2, 3)
    instances: int = 5


def sweep(cfg: SweepConfig):
    for name in list(IDENTITIES) + list(EXTRA_IDENTITIES):
        for d in cfg.degrees:
            start = time.perf_counter()
            result = run_identity(name, cfg.seed, d, cfg.instances)
            per = (time.perf_counter() - start) / cfg.instances
            yield name, d, result["verdict"], per


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--instances", type=int, default=5)
    a = p.parse_args(argv)
    cfg = SweepConfig(a.seed, tuple(a.degrees), a.instances)
    ok = True
    print(f"{'identity':<24} {'deg':>3} {'verdict':<7} {'s/instance':>10}")
    for name, d, verdict, per in sweep(cfg):
        ok &= verdict == "pass"
        print(f"{name:<24} {d:>3} {verdict:<7} {per:>10.4f}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
