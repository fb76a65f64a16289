"""Command-line front end.

    hardcut gen karloff --m 8 --b 1 --out j8.el
    hardcut gen perturb --in j8.el --sigma 0.1 --seed 7 --out j8p.el
    hardcut analyze j8.el
    hardcut reproduce table1
    hardcut stats j8p.el
    hardcut spectra j8.el

Exit codes: 0 success, 2 parse/usage error, 3 budget exceeded, 4 certification failed.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from hardcut import __version__
from hardcut.families import DEFAULT_VERTEX_BUDGET, karloff_generate, karloff_vertex_count, perturb_weights
from hardcut.graph import GraphError
from hardcut.io import ParseError, read_instance, read_meta, save_edge_list, write_meta
from hardcut.maxcut import InconsistentBoundError, MaxCutError
from hardcut.params import DomainError, KarloffParams
from hardcut.qaoa import GridSpec
from hardcut.report import (
    ANALYSES,
    APPENDIX_COLUMNS,
    AnalyzeOptions,
    BudgetError,
    CertificationError,
    analyze,
    appendix_a,
    provenance,
    render,
    render_reports,
    stats_rows,
    table1,
    table2,
    table3,
)
from hardcut.spectral import DENSE_BUDGET, symmetric_eigen

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_CERT = 0, 2, 3, 4


def _grid(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like 1000x1000 ({exc})") from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _common(suppress: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the verb; the verb-level copy must not
    # overwrite a value given at the top level with its default
    def d(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--grid", type=_grid, default=d(GridSpec()), help="QAOA grid GxB (default 1000x1000)")
    common.add_argument("--jobs", type=int, default=d(1))
    common.add_argument("--out", default=d(None), help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "jsonl"), default=d("csv"))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    ap = argparse.ArgumentParser(prog="hardcut", description=__doc__.splitlines()[0], parents=[_common(False)])
    ap.add_argument("--version", action="version", version=f"hardcut {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate an instance file")
    gsub = gen.add_subparsers(dest="family", required=True)
    gk = gsub.add_parser("karloff", parents=[common])
    gk.add_argument("--m", type=int, required=True)
    gk.add_argument("--b", type=int, required=True)
    gk.add_argument("--force", action="store_true", help="generate even when b >= m/4")
    gk.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)
    gp = gsub.add_parser("perturb", parents=[common])
    gp.add_argument("--in", dest="inp", required=True)
    gp.add_argument("--sigma", type=float, required=True)

    an = sub.add_parser("analyze", parents=[common], help="analyze instance files")
    an.add_argument("paths", nargs="*")
    an.add_argument("--karloff", nargs=2, type=int, metavar=("M", "B"), help="generate J(M,M/2,B) in memory")
    an.add_argument("--analyses", default="", help="comma list from: " + ",".join(ANALYSES))
    an.add_argument("--restarts", type=int, default=100)
    an.add_argument("--strict", action="store_true", help="exit 4 unless Max-Cut and SDP are certified")

    rp = sub.add_parser("reproduce", parents=[common], help="reproduce a published table")
    rp.add_argument("target", choices=("table1", "table2", "table3", "appendix-a"))
    rp.add_argument("--max-m", type=int, default=60)

    st = sub.add_parser("stats", parents=[common], help="weight statistics of an instance")
    st.add_argument("path")

    sp = sub.add_parser("spectra", parents=[common], help="distinct adjacency eigenvalues")
    sp.add_argument("path")
    sp.add_argument("--tol", type=float, default=1e-6)
    return ap


def cmd_gen(args) -> int:
    if not args.out:
        raise SystemExit("gen needs --out PATH")
    if args.family == "karloff":
        p = KarloffParams(args.m, args.b)
        if not p.in_formula_range:
            if not args.force:
                raise DomainError(f"{p.label}: b >= m/4 is outside the Max-Cut formula range (use --force)")
            print(f"warning: {p.label} has b >= m/4; Max-Cut formula does not apply", file=sys.stderr)
        if karloff_vertex_count(p) > args.vertex_budget:
            raise BudgetError(f"{p.label} has {karloff_vertex_count(p)} vertices (budget {args.vertex_budget})")
        g = karloff_generate(p, args.vertex_budget)
        save_edge_list(g, args.out)
        write_meta(args.out, "karloff", {"m": p.m, "b": p.b})
    else:
        src = read_instance(args.inp)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g = perturb_weights(src, args.sigma, args.seed)
        save_edge_list(g, args.out)
        write_meta(args.out, "perturb", {"source": args.inp, "sigma": args.sigma}, args.seed)
    print(f"wrote {args.out}: n={g.n} m={g.m}", file=sys.stderr)
    return EXIT_OK


def _analyze_one(job):
    path, karloff, opts = job
    if karloff is not None:
        m, b = karloff
        p = KarloffParams(m, b)
        if karloff_vertex_count(p) > DEFAULT_VERTEX_BUDGET:
            raise BudgetError(f"{p.label} has {karloff_vertex_count(p)} vertices (budget {DEFAULT_VERTEX_BUDGET})")
        g = karloff_generate(p)
        return analyze(g, p.label, {"family": "karloff", "m": str(m), "b": str(b)}, opts)
    return analyze(read_instance(path), Path(path).name, read_meta(path), opts)


def cmd_analyze(args) -> int:
    opts = AnalyzeOptions(
        analyses=tuple(a for a in args.analyses.split(",") if a),
        grid=args.grid, seed=args.seed, restarts=args.restarts, strict=args.strict,
    )
    jobs = [(p, None, opts) for p in args.paths]
    if args.karloff:
        jobs.append((None, tuple(args.karloff), opts))
    if not jobs:
        raise SystemExit("analyze needs instance paths or --karloff M B")
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(_analyze_one, jobs))
    else:
        reports = [_analyze_one(j) for j in jobs]
    _emit(render_reports(reports, args.format, provenance(args.seed, args.grid)), args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    prov = provenance(args.seed, args.grid, f"target={args.target}")
    if args.target == "appendix-a":
        rows = appendix_a(args.max_m, args.grid)
        _emit(render(rows, APPENDIX_COLUMNS, args.format, prov), args.out)
        return EXIT_OK
    fn = {"table1": table1, "table2": table2, "table3": table3}[args.target]
    _emit(render_reports(fn(args.grid), args.format, prov), args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = read_instance(args.path)
    summary, hist = stats_rows(g)
    rows = [{"key": k, "value": v} for k, v in summary.items()]
    rows += [{"key": f"degree={d}", "value": c} for d, c in hist]
    _emit(render(rows, ["key", "value"], args.format, provenance(args.seed, args.grid)), args.out)
    return EXIT_OK


def cmd_spectra(args) -> int:
    g = read_instance(args.path)
    if g.n > DENSE_BUDGET:
        raise BudgetError(f"dense eigensolver budget is n <= {DENSE_BUDGET}")
    spec = symmetric_eigen(g.adjacency_matrix())
    tol = args.tol * max(float(np.abs(g.adjacency_matrix()).sum(axis=1).max()), 1.0)
    rows = [{"eigenvalue": lam, "multiplicity": k} for lam, k in spec.distinct(tol)]
    _emit(render(rows, ["eigenvalue", "multiplicity"], args.format, provenance(args.seed, args.grid)), args.out)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "reproduce": cmd_reproduce,
            "stats": cmd_stats, "spectra": cmd_spectra}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except (BudgetError, MaxCutError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, GraphError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CertificationError, InconsistentBoundError) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
