"""Run the fixture and identity suite and write the report document.

    python3 scripts/run_suite.py --seed 0 --max-degree 2 --out report.yaml
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import yaml

from algebroids.suite import SuiteConfig


@dataclass(frozen=True)
class RunConfig:
    suite: SuiteConfig
    out: Path | None = None


def parse_args(argv=None) -> RunConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--instances", type=int, default=None, help="override every per-identity count")
    p.add_argument("--out", type=Path, default=None)
    a = p.parse_args(argv)
    return RunConfig(SuiteConfig(a.seed, a.max_degree, a.instances), a.out)


def main(argv=None) -> int:
    cfg = parse_args(argv)
    start = time.perf_counter()
    doc = cfg.suite.run()
    elapsed = time.perf_counter() - start
    text = yaml.safe_dump(doc, sort_keys=False)
    if cfg.out:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    mismatches = [k for k, v in doc["fixtures"].items() if v["status"] != "ok"]
    failing = [k for k, v in doc["identities"].items() if v["verdict"] != "pass"]
    print(f"config {asdict(cfg.suite)}", file=sys.stderr)
    print(f"{len(doc['fixtures'])} fixtures, {len(mismatches)} mismatches", file=sys.stderr)
    print(f"{len(doc['identities'])} identities, {len(failing)} failing", file=sys.stderr)
    print(f"verdict {doc['verdict']} in {elapsed:.1f}s", file=sys.stderr)
    return 0 if doc["verdict"] == "pass" else 1


if __name__ == "__main__":
    raise SystemExit(main())
