"""Enumerate the small purely infinite simple graphs and tabulate det(I - A^t).

    python scripts/run_census.py --max-vertices 3 --out census.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from leavitt.enumeration import small_census
from leavitt.graph import vertex_matrix
from leavitt.ktheory import k0


@dataclass
class CensusConfig:
    max_vertices: int = 3
    out: Optional[str] = None
    verbose: bool = False


def parse_args() -> CensusConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, default=CensusConfig.max_vertices)
    p.add_argument("--out")
    p.add_argument("-v", "--verbose", action="store_true")
    return CensusConfig(**vars(p.parse_args()))


def main() -> None:
    cfg = parse_args()
    t0 = time.perf_counter()
    report = small_census(cfg.max_vertices)
    elapsed = time.perf_counter() - t0

    for n, c in sorted(report.by_vertices.items()):
        print(f"{n} vertices: {c}")
    print(f"total {len(report.graphs)}; all det < 0: {report.all_det_negative}; {elapsed:.2f}s")
    rows = []
    for g, d in zip(report.graphs, report.dets):
        a = k0(g)
        rows.append({"name": g.name, "matrix": vertex_matrix(g).to_rows(), "det": d,
                     "k0": [list(a.invariant_factors), a.free_rank]})
        if cfg.verbose or d >= 0:
            print(f"  {g.name:8s} A={rows[-1]['matrix']} det={d} K0={rows[-1]['k0']}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "report": report.to_json(), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
