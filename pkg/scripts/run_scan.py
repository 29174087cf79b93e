"""Sweep a geometrically, write one CSV per degree and print the log-log slope.

    python scripts/run_scan.py --degrees 3 4 5 --a-to 100000 --out-dir results/
"""

import argparse
import csv
from dataclasses import dataclass, field
from pathlib import Path

from polysep.errors import ParameterError
from polysep.sep import CSV_COLUMNS, geometric_sweep, scan, slope_fit


@dataclass
class ScanConfig:
    degrees: list[int] = field(default_factory=lambda: [3, 4, 5])
    a_from: int = 10
    a_to: int = 10**4
    factor: float = 10.0
    family: str = "main"
    jobs: int = 1
    out_dir: Path = Path("results")


def run(cfg: ScanConfig) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    a_values = geometric_sweep(cfg.a_from, cfg.a_to, cfg.factor)
    for d in cfg.degrees:
        rows = scan(d, a_values, family=cfg.family, jobs=cfg.jobs)
        path = cfg.out_dir / f"scan_{cfg.family}_d{d}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            w.writerows(r.csv_fields() for r in rows)
        try:
            slope = f"{slope_fit(rows):.4f}"
        except ParameterError:
            slope = "n/a"
        print(f"d={d}: {len(rows)} rows -> {path}, slope {slope}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--a-from", type=int, default=10)
    ap.add_argument("--a-to", type=int, default=10**4)
    ap.add_argument("--factor", type=float, default=10.0)
    ap.add_argument("--family", choices=["main", "mignotte", "reciprocal"], default="main")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    a = ap.parse_args()
    run(ScanConfig(a.degrees, a.a_from, a.a_to, a.factor, a.family, a.jobs, a.out_dir))


if __name__ == "__main__":
    main()
