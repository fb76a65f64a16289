import csv
import io
import json

import numpy as np
import pytest

from hardcut.cli import main
from hardcut.families import karloff_generate
from hardcut.graph import Graph
from hardcut.io import read_edge_list, read_meta, save_edge_list
from hardcut.params import KarloffParams
from hardcut.report import REPORT_COLUMNS, AnalyzeOptions, analyze


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    body = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_gen_karloff(tmp_path, capsys):
    path = tmp_path / "j8.el"
    code, _, _ = run(capsys, "gen", "karloff", "--m", "8", "--b", "1", "--out", str(path))
    assert code == 0
    g = read_edge_list(path)
    assert (g.n, g.m) == (70, 560)
    meta = read_meta(path)
    assert meta["family"] == "karloff" and meta["b"] == "1" and "tool_version" in meta


def test_gen_guard(tmp_path, capsys):
    path = tmp_path / "bad.el"
    code, _, err = run(capsys, "gen", "karloff", "--m", "6", "--b", "3", "--out", str(path))
    assert code == 2 and "--force" in err and not path.exists()
    code, _, err = run(capsys, "gen", "karloff", "--m", "6", "--b", "3", "--force", "--out", str(path))
    assert code == 0 and "warning" in err


def test_gen_budget(tmp_path, capsys):
    code, _, _ = run(capsys, "gen", "karloff", "--m", "16", "--b", "1", "--out", str(tmp_path / "x.el"))
    assert code == 3


def test_gen_perturb(tmp_path, capsys):
    src = tmp_path / "k.el"
    run(capsys, "gen", "karloff", "--m", "6", "--b", "1", "--out", str(src))
    dst = tmp_path / "kp.el"
    code, _, _ = run(capsys, "gen", "perturb", "--in", str(src), "--sigma", "0.1", "--seed", "7", "--out", str(dst))
    assert code == 0
    a, b = read_edge_list(src), read_edge_list(dst)
    assert np.array_equal(a.edges, b.edges)
    assert not b.is_unit_weight
    assert read_meta(dst)["seed"] == "7"


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("2 1\n1 1\n")
    code, _, err = run(capsys, "stats", str(bad))
    assert code == 2 and "line 2" in err


def test_analyze_j631(tmp_path, capsys):
    path = tmp_path / "j.el"
    run(capsys, "gen", "karloff", "--m", "6", "--b", "1", "--out", str(path))
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0
    (r,) = rows(out)
    assert list(r) == REPORT_COLUMNS
    assert float(r["maxcut"]) == 60 and r["maxcut_status"] == "exact"
    assert abs(float(r["gw_ratio"]) - 0.9123) < 5e-5
    assert abs(float(r["qaoa_ratio"]) - 0.8492) < 2e-3
    assert out.splitlines()[-1].startswith("# hardcut ")


def test_analyze_srg16(tmp_path, capsys):
    from hardcut.data import srg_path
    from hardcut.io import read_graph6_file

    g = read_graph6_file(srg_path(1))[0]
    path = tmp_path / "srg16.el"
    save_edge_list(g, path)
    code, out, _ = run(capsys, "analyze", str(path))
    (r,) = rows(out)
    assert code == 0
    assert r["maxcut_status"] == "exact"
    assert abs(float(r["gw_ratio"]) - 0.9123) < 1e-4
    assert abs(float(r["qaoa_ratio"]) - 0.8935) < 1e-3


def test_analyze_statevector_budget(capsys):
    code, _, err = run(capsys, "analyze", "--karloff", "8", "1", "--analyses", "qaoa-statevector")
    assert code == 3 and "statevector" in err


def test_analyze_sidecar_mismatch(tmp_path, capsys):
    path = tmp_path / "p.el"
    run(capsys, "gen", "karloff", "--m", "6", "--b", "1", "--out", str(path))
    meta = path.with_suffix(".meta")
    meta.write_text(meta.read_text().replace("family: karloff", "family: perturb"))
    _, out, _ = run(capsys, "analyze", str(path), "--analyses", "maxcut-brute")
    assert "all weights are 1" in rows(out)[0]["warnings"]


def test_written_then_parsed_matches_in_memory(tmp_path):
    g = karloff_generate(KarloffParams(6, 1))
    path = tmp_path / "j.el"
    save_edge_list(g, path)
    opts = AnalyzeOptions(analyses=("maxcut-brute", "qaoa-grid", "gw-bm"))
    a = analyze(g, "x", {}, opts)
    b = analyze(read_edge_list(path), "x", {}, opts)
    for col in ("maxcut", "gw_hp", "sdp_value", "qaoa_f1", "qaoa_gamma", "qaoa_beta"):
        assert getattr(a, col) == getattr(b, col)


def test_reproduce_table1_deterministic(capsys):
    _, first, _ = run(capsys, "reproduce", "table1", "--grid", "200x200")
    _, second, _ = run(capsys, "reproduce", "table1", "--grid", "200x200")
    strip = lambda t: [{k: v for k, v in r.items() if k != "seconds"} for r in rows(t)]
    assert strip(first) == strip(second)
    assert "grid=200x200" in first.splitlines()[-1]
    want = [0.9123, 0.8889, 0.8810, 0.9402, 0.8787, 0.9123]
    got = [float(r["gw_ratio"]) for r in rows(first)]
    assert np.allclose(got, want, atol=5e-5)


def test_reproduce_table2_and_3(capsys):
    _, out, _ = run(capsys, "reproduce", "table2")
    assert np.allclose([float(r["qaoa_ratio"]) for r in rows(out)], [0.8935, 0.8605, 0.8433, 0.8246], atol=1e-3)
    _, out, _ = run(capsys, "reproduce", "table3")
    r3 = rows(out)
    assert [r["maxcut_source"] for r in r3] == ["published", "published"]
    assert np.allclose([float(r["gw_ratio"]) for r in r3], [0.9357, 0.9238], atol=1e-3)


def test_reproduce_appendix_a(capsys):
    _, out, _ = run(capsys, "reproduce", "appendix-a", "--max-m", "20")
    r = [x for x in rows(out) if x["m"] == "20" and x["b"] == "4"][0]
    assert float(r["r"]) == 0.2
    assert float(r["alpha_qaoa_limit"]) == pytest.approx(1 / 1.2)


def test_stats(tmp_path, capsys):
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [100.0, -0.1, 3.0])
    path = tmp_path / "w.el"
    save_edge_list(g, path)
    _, out, _ = run(capsys, "stats", str(path))
    kv = {r["key"]: r["value"] for r in rows(out)}
    assert kv["has_negative"] == "True"
    assert float(kv["magnitude_range"]) == pytest.approx(3.0)
    assert kv["degree=1"] == "2" and kv["degree=2"] == "2"


def test_stats_unit_weights(tmp_path, capsys):
    path = tmp_path / "c.el"
    save_edge_list(Graph.from_edges(3, [(0, 1), (1, 2)]), path)
    _, out, _ = run(capsys, "--format", "jsonl", "stats", str(path))
    recs = [json.loads(l) for l in out.splitlines()]
    kv = {r["key"]: r["value"] for r in recs if "key" in r}
    assert kv["has_negative"] is False and kv["magnitude_range"] == 0.0
    assert "provenance" in recs[-1]


def test_spectra(tmp_path, capsys):
    path = tmp_path / "j.el"
    save_edge_list(karloff_generate(KarloffParams(6, 1)), path)
    _, out, _ = run(capsys, "spectra", str(path))
    got = [(round(float(r["eigenvalue"]), 6), int(r["multiplicity"])) for r in rows(out)]
    assert got == [(-3, 5), (-1, 9), (3, 5), (9, 1)]


def test_global_flags_before_verb(capsys):
    _, out, _ = run(capsys, "--seed", "5", "--grid", "10x10", "reproduce", "table3")
    assert "seed=5 grid=10x10" in out.splitlines()[-1]
