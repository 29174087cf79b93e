"""Table of measured vs predicted separation exponents for the main family and its reciprocal.

    python scripts/reproduce_exponents.py --d-max 8 --a 10 100 1000
"""

import argparse
from dataclasses import dataclass, field

from polysep.family import build
from polysep.sep import analyze, analyze_reciprocal


@dataclass
class ExponentConfig:
    d_min: int = 3
    d_max: int = 8
    a_values: list[int] = field(default_factory=lambda: [10, 100, 1000])
    reciprocal: bool = True


def run(cfg: ExponentConfig) -> None:
    print(f"{'d':>3} {'a':>6} {'e(P)':>9} {'pred':>9} {'ratio':>10} {'e(Q)':>9} {'pred':>9}")
    for d in range(cfg.d_min, cfg.d_max + 1):
        for a in cfg.a_values:
            inst = build(d, a)
            rep = analyze(inst, certify=False)
            line = f"{d:>3} {a:>6} {rep.e:9.5f} {float(rep.e_pred):9.5f} {rep.ratio:10.7f}"
            if cfg.reciprocal:
                q = analyze_reciprocal(inst, certify=False)
                line += f" {q.e:9.5f} {float(q.e_pred):9.5f}"
            print(line, flush=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-min", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=8)
    ap.add_argument("--a", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--no-reciprocal", action="store_true")
    args = ap.parse_args()
    run(ExponentConfig(args.d_min, args.d_max, args.a, not args.no_reciprocal))


if __name__ == "__main__":
    main()
