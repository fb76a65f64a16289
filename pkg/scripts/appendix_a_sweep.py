"""Sweep all Karloff instances J(m, m/2, b), even m <= max_m, 0 < b < m/4.

Writes (m, b, r, alpha_gw, alpha_qaoa, alpha_qaoa_limit) rows for external
plotting and prints how close the instance ratios sit to 1/(2 - 4r).

    python3 scripts/appendix_a_sweep.py --max-m 300 --out results/appendix_a.csv
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from hardcut.qaoa import GridSpec
from hardcut.report import APPENDIX_COLUMNS, appendix_a, provenance, render


@dataclass
class Config:
    max_m: int = 60
    out: Path = Path("results/appendix_a.csv")
    grid: GridSpec = GridSpec()


def main(cfg: Config) -> None:
    rows = appendix_a(cfg.max_m, cfg.grid)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(render(rows, APPENDIX_COLUMNS, "csv", provenance(0, cfg.grid, f"max_m={cfg.max_m}")))
    print(f"{len(rows)} instances -> {cfg.out}")
    for lo in (6, 40, 100, 200):
        sub = [r for r in rows if r["m"] >= lo]
        if sub:
            dev = max(abs(r["alpha_qaoa"] - r["alpha_qaoa_limit"]) for r in sub)
            print(f"  m >= {lo:<3}: max |alpha_qaoa - 1/(2-4r)| = {dev:.4f}")
    top = max(rows, key=lambda r: r["r"])
    print(f"  largest r = {top['r']:.4f} (m={top['m']}, b={top['b']}): "
          f"gw={top['alpha_gw']:.4f} qaoa={top['alpha_qaoa']:.4f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--grid", type=GridSpec.parse, default=GridSpec())
    main(Config(**vars(ap.parse_args())))
