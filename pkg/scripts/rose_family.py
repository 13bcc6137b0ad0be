"""Tabulate det(I - A^t), K0 and the unit class for the amplified roses mat_k(R_n)."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from leavitt.graph import mat_n, rose
from leavitt.ktheory import det_sign, k0


@dataclass
class RoseConfig:
    max_petals: int = 6
    max_k: int = 5


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-petals", type=int, default=RoseConfig.max_petals)
    p.add_argument("--max-k", type=int, default=RoseConfig.max_k)
    cfg = RoseConfig(**vars(p.parse_args()))
    print(f"{'n':>3} {'k':>3} {'det':>5}  K0            unit")
    for n in range(2, cfg.max_petals + 1):
        for k in range(1, cfg.max_k + 1):
            g = mat_n(rose(n), k)
            a = k0(g)
            group = " + ".join(f"Z/{d}" for d in a.invariant_factors) or "0"
            print(f"{n:>3} {k:>3} {det_sign(g).det:>5}  {group:12s}  {a.unit_class}")


if __name__ == "__main__":
    main()
