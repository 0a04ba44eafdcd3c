"""The Jacobi-Koszul-Vinberg chain on small manifold fixtures.

For each fixture: the three conditions, the packed JKV check on
TM + R, KV-ization on the bar extension and the locally conformally
Hessian report (skipped when h is degenerate).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from algebroids import fixtures as fx
from algebroids.line import kv_ize
from algebroids.linalg import SingularMatrixError
from algebroids.manifold import jkv_defects, jkv_equivalence_report, lch_report, pack_H


@dataclass(frozen=True)
class ChainConfig:
    family_seed: int = 0
    family_size: int = 5


def row(name, P, pair):
    defects = jkv_defects(P, pair)
    packed = jkv_equivalence_report(P, pair)
    kv = kv_ize(P.bar_jlsa(), pack_H(pair))[1]
    try:
        lch = "pass" if lch_report(P, pair).ok else "fail"
    except SingularMatrixError:
        lch = "n/a"
    failing = ",".join(defects.failing()) or "-"
    return (
        f"{name:<14} failing={failing:<6} HH={'pass' if packed.passes('HH') else 'fail':<5}"
        f" slots={'ok' if packed.passes('slot_match') else 'BAD':<4}"
        f" kv-ization={'pass' if kv.ok else 'fail':<5} lch={lch}"
    )


def main(cfg: ChainConfig = ChainConfig()) -> int:
    cases = [
        ("jkv_1d", *fx.jkv_1d()),
        ("only_i", *fx.jkv_only_i()),
        ("only_ii", *fx.jkv_only_ii()),
        ("only_iii", *fx.jkv_only_iii()),
    ]
    rng = random.Random(cfg.family_seed)
    cases += [(f"family[{k}]", *fx.jkv_family_1d(rng)) for k in range(cfg.family_size)]
    for name, P, pair in cases:
        print(row(name, P, pair))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
