"""Report rows, table reproduction and the per-instance analysis pipeline."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from hardcut import __version__
from hardcut.families import (
    karloff_common_neighbors,
    karloff_degree,
    karloff_edge_count,
    karloff_generate,
    karloff_gw_ratio,
    karloff_maxcut,
    karloff_vertex_count,
    q3t_params,
    srg_eigenvalues,
)
from hardcut.graph import Graph, check_regular, check_srg, complement, edge_profile, is_connected
from hardcut.gw import BmOptions, bm_solve, hp_expectation, karloff_embedding, primal_value, srg_embedding
from hardcut.maxcut import BRUTE_FORCE_MAX_N, EXACT, brute_force, certify, local_search
from hardcut.params import KarloffParams
from hardcut.qaoa import (
    STATEVECTOR_MAX_QUBITS,
    GridSpec,
    QaoaAngles,
    grid_search,
    karloff_f1_ratio,
    limiting_ratio,
    statevector_expectation,
    triangle_free_factor,
)

# Max-Cut of the 13 SRG(40,12,2,4) instances whose optimum is below 2|E|/3.
# These are published values and cannot be regenerated from shipped data.
TABLE3_MAXCUT = {"srg40-rows-11-15": 156, "srg40-rows-16-23": 158}
TABLE3_SOURCE = "published"

TABLE1_INSTANCES = [(6, 1), (8, 1), (10, 1), (10, 2), (12, 1), (12, 2)]
TABLE2_T = [1, 3, 5, 9]

BRUTE_DEFAULT_MAX_N = 24


class BudgetError(RuntimeError):
    pass


class CertificationError(RuntimeError):
    pass


@dataclass
class ApproxReport:
    instance: str
    family: str = ""
    params: str = ""
    n: int = 0
    edges: int = 0
    degree: str = ""
    maxcut: Optional[float] = None
    maxcut_status: str = ""
    maxcut_source: str = ""
    gw_hp: Optional[float] = None
    gw_ratio: Optional[float] = None
    gw_ratio_kind: str = ""
    sdp_value: Optional[float] = None
    sdp_certificate: str = ""
    qaoa_f1: Optional[float] = None
    qaoa_gamma: Optional[float] = None
    qaoa_beta: Optional[float] = None
    qaoa_ratio: Optional[float] = None
    qaoa_limit: Optional[float] = None
    seconds: float = 0.0
    warnings: str = ""

    def set_ratios(self) -> None:
        if self.maxcut:
            if self.gw_hp is not None:
                self.gw_ratio = self.gw_hp / self.maxcut
                self.gw_ratio_kind = "instance"
            if self.qaoa_f1 is not None:
                self.qaoa_ratio = self.qaoa_f1 / self.maxcut
        elif self.gw_hp is not None and self.sdp_value:
            # without Max-Cut, HP / z_P is a lower bound on the instance ratio
            self.gw_ratio = self.gw_hp / self.sdp_value
            self.gw_ratio_kind = "lower-bound"


REPORT_COLUMNS = [f.name for f in fields(ApproxReport)]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def provenance(seed: int, grid: GridSpec, extra: str = "") -> str:
    tail = f" {extra}" if extra else ""
    return f"hardcut {__version__} seed={seed} grid={grid.gamma_points}x{grid.beta_points}{tail}"


def render(rows: Iterable[dict], columns: list[str], fmt: str, prov: str) -> str:
    rows = list(rows)
    if fmt == "jsonl":
        lines = [json.dumps({c: r.get(c) for c in columns}) for r in rows]
        lines.append(json.dumps({"provenance": prov}))
        return "\n".join(lines) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    buf.write(f"# {prov}\n")
    return buf.getvalue()


def render_reports(reports: Iterable[ApproxReport], fmt: str, prov: str) -> str:
    return render((asdict(r) for r in reports), REPORT_COLUMNS, fmt, prov)


# ---------------------------------------------------------------- tables

def karloff_row(p: KarloffParams, grid: GridSpec, vertex_budget: int = 10_000) -> ApproxReport:
    """Table 1 row.  The graph is generated when it fits the budget so that the
    counts and the edge-homogeneity of (d, lambda) are checked structurally."""
    t0 = time.perf_counter()
    d = karloff_degree(p)
    lam = karloff_common_neighbors(p)
    mc = karloff_maxcut(p)
    rep = ApproxReport(f"J({p.m},{p.half},{p.b})", "karloff", f"m={p.m};b={p.b}",
                       karloff_vertex_count(p), karloff_edge_count(p), str(d),
                       float(mc), EXACT, "formula")
    warn = []
    if karloff_vertex_count(p) <= vertex_budget:
        g = karloff_generate(p, vertex_budget)
        prof = edge_profile(g)
        if check_regular(g) != d or g.m != rep.edges or set(prof) != {(d - 1, d - 1, lam)}:
            raise AssertionError(f"{rep.instance}: generated graph disagrees with the parametric counts")
        emb = karloff_embedding(p)
        rep.gw_hp = hp_expectation(g, emb)
        rep.sdp_value = primal_value(g, emb)
    else:
        warn.append("not generated; parametric values only")
        rep.gw_hp = karloff_gw_ratio(p) * float(mc)
    if lam == 0:
        rep.qaoa_f1 = rep.edges / 2 * (1 + triangle_free_factor(d))
        rep.qaoa_gamma = rep.qaoa_beta = None
        warn.append("qaoa: triangle-free closed form")
    else:
        best = grid_search((rep.edges, d - 1, d - 1, lam), grid)
        rep.qaoa_f1, rep.qaoa_gamma, rep.qaoa_beta = best.value, best.gamma, best.beta
    rep.set_ratios()
    rep.qaoa_limit = limiting_ratio(p.b / p.m)
    rep.warnings = "; ".join(warn)
    rep.seconds = time.perf_counter() - t0
    return rep


def table1(grid: GridSpec) -> list[ApproxReport]:
    return [karloff_row(KarloffParams(m, b), grid) for m, b in TABLE1_INSTANCES]


def q3t_row(t: int, grid: GridSpec, maxcut: Optional[int] = None, source: str = "2|E|/3",
            graph: Optional[Graph] = None, label: Optional[str] = None) -> ApproxReport:
    """Table 2/3 row for q3t parameters.  The GW numerator uses the SRG eigenspace
    embedding of a shipped instance when one is given (every edge at -1/3)."""
    t0 = time.perf_counter()
    s = q3t_params(t)
    e = s.edge_count
    mc = maxcut if maxcut is not None else 2 * e // 3
    rep = ApproxReport(label or f"q3t(t={t})", "q3t", f"t={t};srg={s.n},{s.k},{s.lam},{s.mu}",
                       s.n, e, str(s.k), float(mc), "", source)
    if graph is not None:
        emb = srg_embedding(graph)
        rep.gw_hp = hp_expectation(graph, emb)
        rep.sdp_value = primal_value(graph, emb)
    else:
        rep.gw_hp = e * math.acos(-1 / 3) / math.pi
        rep.sdp_value = 2 * e / 3
    best = grid_search((e, s.k - 1, s.k - 1, s.lam), grid)
    rep.qaoa_f1, rep.qaoa_gamma, rep.qaoa_beta = best.value, best.gamma, best.beta
    rep.set_ratios()
    rep.seconds = time.perf_counter() - t0
    return rep


def table2(grid: GridSpec) -> list[ApproxReport]:
    from hardcut.data import load_srgs

    rows = []
    for t in TABLE2_T:
        g = load_srgs(t)[0]
        r = local_search(g, restarts=20)
        c = certify(g, r, Fraction(2 * g.m, 3))
        rep = q3t_row(t, grid, int(round(c.value)), "2|E|/3", g)
        rep.maxcut_status = c.status
        rows.append(rep)
    return rows


def table3(grid: GridSpec) -> list[ApproxReport]:
    rows = []
    for key, mc in TABLE3_MAXCUT.items():
        rep = q3t_row(3, grid, mc, TABLE3_SOURCE, label=key)
        rep.maxcut_status = "external"
        rows.append(rep)
    return rows


APPENDIX_COLUMNS = ["m", "b", "r", "alpha_gw", "alpha_qaoa", "alpha_qaoa_limit"]


def appendix_a(max_m: int = 60, grid: Optional[GridSpec] = None) -> list[dict]:
    """All Karloff instances with even m <= max_m and 0 < b < m/4."""
    grid = grid or GridSpec()
    rows = []
    for m in range(6, max_m + 1, 2):
        b = 1
        while 4 * b < m:
            p = KarloffParams(m, b)
            rows.append({
                "m": m, "b": b, "r": b / m,
                "alpha_gw": karloff_gw_ratio(p),
                "alpha_qaoa": karloff_f1_ratio(p, grid),
                "alpha_qaoa_limit": limiting_ratio(b / m),
            })
            b += 1
    return rows


# ---------------------------------------------------------------- analysis

ANALYSES = ("gw-analytic", "gw-bm", "qaoa-grid", "qaoa-statevector", "maxcut-brute", "maxcut-tabu", "certify")


@dataclass
class AnalyzeOptions:
    analyses: tuple[str, ...] = ()
    grid: GridSpec = field(default_factory=GridSpec)
    sv_grid: GridSpec = field(default_factory=lambda: GridSpec(24, 24))
    seed: int = 0
    restarts: int = 100
    strict: bool = False


def _default_analyses(g: Graph) -> tuple[str, ...]:
    out = ["gw-analytic", "gw-bm", "certify"]
    out.append("maxcut-brute" if g.n <= BRUTE_DEFAULT_MAX_N else "maxcut-tabu")
    if g.is_unit_weight:
        out.append("qaoa-grid")
    elif g.n <= 16:
        out.append("qaoa-statevector")
    return tuple(out)


def _karloff_from_meta(g: Graph, meta: dict) -> Optional[KarloffParams]:
    if meta.get("family") != "karloff":
        return None
    try:
        p = KarloffParams(int(meta["m"]), int(meta["b"]))
    except (KeyError, ValueError):
        return None
    return p if karloff_vertex_count(p) == g.n else None


def _statevector_grid(g: Graph, spec: GridSpec) -> QaoaAngles:
    """Coarse grid on the exact simulator, then a Nelder-Mead polish."""
    from scipy.optimize import minimize

    best = (-math.inf, 0.0, 0.0)
    for gm in spec.gammas:
        for bt in spec.betas:
            v = statevector_expectation(g, float(gm), float(bt))
            if v > best[0]:
                best = (v, float(gm), float(bt))
    res = minimize(lambda x: -statevector_expectation(g, x[0], x[1]), [best[1], best[2]],
                   method="Nelder-Mead", options={"xatol": 1e-8, "fatol": 1e-10})
    if -res.fun > best[0]:
        best = (float(-res.fun), float(res.x[0]), float(res.x[1]))
    return QaoaAngles(best[1], best[2], best[0])


def analyze(g: Graph, name: str, meta: Optional[dict] = None, opts: Optional[AnalyzeOptions] = None) -> ApproxReport:
    opts = opts or AnalyzeOptions()
    meta = meta or {}
    t0 = time.perf_counter()
    todo = set(opts.analyses or _default_analyses(g))
    unknown = todo - set(ANALYSES)
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    warn: list[str] = []
    deg = check_regular(g)
    rep = ApproxReport(name, meta.get("family", ""), "", g.n, g.m,
                       str(deg) if deg is not None else "irregular")
    kp = _karloff_from_meta(g, meta)
    if kp is not None:
        rep.params = f"m={kp.m};b={kp.b}"
    fam = meta.get("family")
    if fam == "perturb" and g.is_unit_weight:
        warn.append("sidecar says perturbed but all weights are 1")
    if fam == "karloff" and not g.is_unit_weight:
        warn.append("sidecar says karloff but weights are not all 1")
    srg = check_srg(g) if g.is_unit_weight and deg is not None else None

    # Max-Cut
    mc_result = None
    bound: Optional[Fraction] = None
    if "maxcut-brute" in todo:
        if g.n > BRUTE_FORCE_MAX_N:
            raise BudgetError(f"maxcut-brute needs n <= {BRUTE_FORCE_MAX_N}, got {g.n}")
        mc_result = brute_force(g)
        rep.maxcut_source = "brute-force"
    elif "maxcut-tabu" in todo:
        mc_result = local_search(g, restarts=opts.restarts, seed=opts.seed)
        rep.maxcut_source = "tabu"
    if kp is not None and kp.in_formula_range and g.is_unit_weight:
        bound = Fraction(karloff_maxcut(kp))

    # GW
    emb = None
    if "gw-analytic" in todo and g.is_unit_weight:
        if kp is not None:
            emb = karloff_embedding(kp)
        elif srg is not None and is_connected(g) and is_connected(complement(g)):
            emb = srg_embedding(g)
            xi2 = srg_eigenvalues(srg)[1]
            if isinstance(xi2, Fraction):
                bound = Fraction(g.m, 2) * (1 - xi2 / srg.k)
    if emb is not None:
        rep.gw_hp = hp_expectation(g, emb)
        rep.sdp_value = primal_value(g, emb)
        rep.sdp_certificate = "analytic"
    elif "gw-bm" in todo:
        bm_opts = BmOptions(seed=opts.seed)
        if g.n > bm_opts.n_budget:
            raise BudgetError(f"SDP budget is n <= {bm_opts.n_budget}, got {g.n}")
        emb, cert = bm_solve(g, bm_opts)
        rep.gw_hp = hp_expectation(g, emb)
        rep.sdp_value = cert.primal_value
        rep.sdp_certificate = (f"certified gap={cert.gap:.3g} slack={cert.min_eig_slack:.3g}" if cert.certified
                               else f"uncertified gap={cert.gap:.3g} slack={cert.min_eig_slack:.3g}")
        if not cert.certified:
            warn.append("SDP certificate failed")
            if opts.strict:
                raise CertificationError(f"{name}: SDP dual certificate failed")
        if g.is_unit_weight and bound is None:
            # Max-Cut is an integer: floor of any valid bound is still a bound
            bound = Fraction(math.floor(cert.upper_bound + 1e-7))

    if mc_result is not None:
        if "certify" in todo and bound is not None:
            mc_result = certify(g, mc_result, bound)
        rep.maxcut = mc_result.value
        rep.maxcut_status = mc_result.status
        if mc_result.gap is not None and mc_result.status not in ("exact", "certified"):
            warn.append(f"maxcut gap to bound {mc_result.gap:.6g}")
        if opts.strict and mc_result.status not in ("exact", "certified"):
            raise CertificationError(f"{name}: Max-Cut value {mc_result.value} not certified")
    elif bound is not None and kp is not None:
        rep.maxcut, rep.maxcut_status, rep.maxcut_source = float(bound), EXACT, "formula"

    # QAOA
    if "qaoa-grid" in todo:
        if not g.is_unit_weight:
            raise ValueError("qaoa-grid uses the unit-weight formula; use qaoa-statevector")
        best = grid_search(g, opts.grid)
        rep.qaoa_f1, rep.qaoa_gamma, rep.qaoa_beta = best.value, best.gamma, best.beta
        if len(edge_profile(g)) > 1:
            warn.append("edges are not homogeneous in (d_u, d_v, lambda); per-edge sum used")
    elif "qaoa-statevector" in todo:
        if g.n > STATEVECTOR_MAX_QUBITS:
            raise BudgetError(f"statevector needs n <= {STATEVECTOR_MAX_QUBITS}, got {g.n}")
        best = _statevector_grid(g, opts.sv_grid)
        rep.qaoa_f1, rep.qaoa_gamma, rep.qaoa_beta = best.value, best.gamma, best.beta
    if kp is not None and kp.in_formula_range and kp.b > 0:
        rep.qaoa_limit = limiting_ratio(kp.b / kp.m)

    rep.set_ratios()
    rep.warnings = "; ".join(warn)
    rep.seconds = time.perf_counter() - t0
    return rep


def stats_rows(g: Graph) -> tuple[dict, list[tuple[int, int]]]:
    from hardcut.graph import magnitude_range

    nz = g.weights[g.weights != 0]
    summary = {
        "n": g.n,
        "m": g.m,
        "total_weight": g.total_weight,
        "has_negative": bool(np.any(g.weights < 0)),
        "magnitude_range": magnitude_range(g) if nz.size else 0.0,
    }
    degs, counts = np.unique(g.degrees, return_counts=True)
    return summary, list(zip(degs.tolist(), counts.tolist()))
