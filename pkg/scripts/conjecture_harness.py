"""Run the verdict engine over all pairs of a corpus and tabulate the outcomes.

The corpus is the census, optionally extended by random small graphs. Any
pair with a Leavitt YES next to a C* NO, or an isomorphism YES without a
Morita YES, is reported.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from leavitt.enumeration import small_census, conjecture_harness
from leavitt.graph import graph_from_matrix


@dataclass
class HarnessConfig:
    random_graphs: int = 0
    max_vertices: int = 3
    max_multiplicity: int = 2
    seed: int = 0


def parse_args() -> HarnessConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--random-graphs", type=int, default=HarnessConfig.random_graphs)
    p.add_argument("--max-vertices", type=int, default=HarnessConfig.max_vertices)
    p.add_argument("--max-multiplicity", type=int, default=HarnessConfig.max_multiplicity)
    p.add_argument("--seed", type=int, default=HarnessConfig.seed)
    return HarnessConfig(**vars(p.parse_args()))


def random_corpus(cfg: HarnessConfig) -> list:
    rng = random.Random(cfg.seed)
    out = []
    for i in range(cfg.random_graphs):
        n = rng.randint(1, cfg.max_vertices)
        rows = [[rng.randint(0, cfg.max_multiplicity) for _ in range(n)] for _ in range(n)]
        out.append(graph_from_matrix(rows, name=f"X{i}"))
    return out


def main() -> None:
    cfg = parse_args()
    corpus = small_census().graphs + random_corpus(cfg)
    report = conjecture_harness(corpus)
    print(f"{len(corpus)} graphs, {report.pairs} unordered pairs")
    print(f"{'relation':12s} {'leavitt':8s} {'cstar':8s} count")
    for (rel, lv, cs), n in sorted(report.cells.items()):
        print(f"{rel:12s} {lv:8s} {cs:8s} {n}")
    print(f"guard violations: {len(report.guard_violations)}")
    print(f"monotonicity violations: {len(report.monotonicity_violations)}")
    for v in report.guard_violations + report.monotonicity_violations:
        print("  ", v)


if __name__ == "__main__":
    main()
