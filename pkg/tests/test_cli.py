from __future__ import annotations

import json
from pathlib import Path


from ncg.cli import main


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_gen_star_golden(capsys):
    code, out = run(capsys, "gen", "star", "--n", "4", "--alpha", "9/2")
    assert code == 0
    assert out == "ncg 1\nn=4 alpha=9/2\nbuy 0 1\nbuy 0 2\nbuy 0 3\n"


def test_gen_theta_matches_contraction(capsys, tmp_path):
    f = tmp_path / "theta.ncg"
    code, _ = run(capsys, "gen", "theta", "--legs", "2,2,3", "--alpha", "5", "--output", str(f))
    assert code == 0
    code, out = run(capsys, "analyze", "--input", str(f))
    rep = json.loads(out)
    h3 = rep["components"][0]["h3"]
    assert sorted(e[2] for e in h3["edges"]) == [1, 1, 2]
    assert rep["components"][0]["girth"] == "4/1"


def test_gen_random_deterministic(capsys):
    code, out1 = run(capsys, "gen", "random", "--n", "8", "--p", "1/3", "--alpha", "2", "--seed", "7")
    code, out2 = run(capsys, "gen", "random", "--n", "8", "--p", "1/3", "--alpha", "2", "--seed", "7")
    code, out3 = run(capsys, "gen", "random", "--n", "8", "--p", "1/3", "--alpha", "2", "--seed", "8")
    assert out1 == out2
    assert out1 != out3


def test_gen_usage_errors(capsys):
    assert main(["gen", "cycle", "--n", "2", "--alpha", "1"]) == 2
    assert main(["gen", "theta", "--legs", "1,1,2", "--alpha", "1"]) == 2
    assert main(["gen", "star", "--alpha", "1"]) == 2  # missing --n
    assert main(["gen", "random", "--n", "4", "--p", "3/2", "--alpha", "1"]) == 2


def test_check_exit_codes(capsys, tmp_path):
    star = tmp_path / "star.ncg"
    tri = tmp_path / "tri.ncg"
    run(capsys, "gen", "star", "--n", "3", "--alpha", "2", "--output", str(star))
    run(capsys, "gen", "cycle", "--n", "3", "--alpha", "2", "--output", str(tri))
    code, out = run(capsys, "check", "--input", str(star))
    assert code == 0 and "verdict: NE" in out
    code, out = run(capsys, "check", "--input", str(tri))
    assert code == 1 and "witness: delete" in out
    bad = tmp_path / "bad.ncg"
    bad.write_text("nonsense\n")
    assert main(["check", "--input", str(bad)]) == 2
    assert main(["check", "--input", str(tmp_path / "missing.ncg")]) == 2
    code, out = run(capsys, "check", "--input", str(tri), "--mode", "restricted", "--k", "2")
    assert code == 1 and "witness: delete" in out


def test_check_json(capsys, tmp_path):
    tri = tmp_path / "tri.ncg"
    run(capsys, "gen", "cycle", "--n", "3", "--alpha", "1/2", "--output", str(tri))
    code, out = run(capsys, "check", "--input", str(tri), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["is_ne"] and rep["schema"] == 1
    assert rep["social_cost"] == "15/2"


def test_analyze_roundtrip_canonical(capsys, tmp_path):
    f = tmp_path / "g.ncg"
    run(capsys, "gen", "random", "--n", "7", "--p", "1/2", "--alpha", "7/3", "--seed", "3", "--output", str(f))
    code, out = run(capsys, "analyze", "--input", str(f))
    rep = json.loads(out)
    assert rep["canonical"].encode("ascii") == f.read_bytes()


def test_asets_json(capsys, tmp_path):
    f = tmp_path / "theta.ncg"
    run(capsys, "gen", "theta", "--legs", "2,2,3", "--alpha", "5", "--output", str(f))
    code, out = run(capsys, "asets", "--input", str(f), "--root", "auto", "--covering", "lex2")
    rep = json.loads(out)
    assert code == 0
    assert rep["root"] == 0
    assert rep["covering"]["policy"] == "lex2"
    # hub 0 is the root, so only hub 1's entry is usable... domain excludes root
    assert all(int(v) != rep["root"] for v in rep["per_v"])
    code2, out2 = run(capsys, "asets", "--input", str(f), "--root", "1", "--covering", "all")
    rep2 = json.loads(out2)
    assert rep2["root"] == 1 and rep2["covering"]["policy"] == "all"
    assert rep2["per_v"]["0"]["a_set"] == [0]
    assert main(["asets", "--input", str(f), "--root", "99"]) == 2
    # explicit covering from a file
    cov = tmp_path / "cov.json"
    cov.write_text(json.dumps({"0": [[0, 2], [0, 3]]}))
    code3, out3 = run(capsys, "asets", "--input", str(f), "--root", "1", "--covering", f"@{cov}")
    rep3 = json.loads(out3)
    assert rep3["covering"] == {"policy": "explicit", "map": {"0": [[0, 2], [0, 3]]}}


def test_verify_exit_codes(capsys, tmp_path):
    tri = tmp_path / "tri.ncg"
    run(capsys, "gen", "cycle", "--n", "3", "--alpha", "1/2", "--output", str(tri))
    code, out = run(capsys, "verify", "--input", str(tri))
    assert code == 0 and "any violated: False" in out
    big = tmp_path / "big.ncg"
    run(capsys, "gen", "cycle", "--n", "80", "--alpha", "5", "--output", str(big))
    code, out = run(capsys, "verify", "--input", str(big))
    assert code == 0  # precondition-gated, not violated
    code, out = run(capsys, "verify", "--input", str(big), "--nonstandard", "--json")
    rep = json.loads(out)
    assert code == 1 and rep["any_violated"]
    ids = {c["id"]: c["verdict"] for c in rep["inputs"][0]["checks"]}
    assert ids["two_path_cap"] == "violated"
    assert all(c["nonstandard"] for c in rep["inputs"][0]["checks"])


def test_verify_suite_selection(capsys, tmp_path):
    tri = tmp_path / "tri.ncg"
    run(capsys, "gen", "cycle", "--n", "3", "--alpha", "1/2", "--output", str(tri))
    code, out = run(capsys, "verify", "--input", str(tri), "--suite", "girth_floor,poa_depth", "--json")
    rep = json.loads(out)
    ids = [c["id"] for c in rep["inputs"][0]["checks"]]
    assert ids == ["girth_floor", "poa_depth"]
    assert main(["verify", "--input", str(tri), "--suite", "bogus"]) == 2


def test_enumerate_poa_sweep(capsys, tmp_path):
    out_dir = tmp_path / "cat"
    code, out = run(capsys, "enumerate", "--n", "4", "--alpha", "3/2", "--output", str(out_dir))
    assert code == 0 and "38 NE" in out
    index = json.loads((out_dir / "index.json").read_text())
    assert index["counts"]["ne"] == 38
    assert len(list(out_dir.glob("*.ncg"))) == 38

    code, out = run(capsys, "verify", "--catalog", str(out_dir), "--json")
    rep = json.loads(out)
    assert code == 0 and not rep["any_violated"]
    assert len(rep["inputs"]) == 38

    code, out = run(capsys, "poa", "--n", "4", "--alpha", "3/2", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["poa"] == "15/14"

    code, out = run(capsys, "sweep", "--n-range", "2:4", "--alphas", "n+1/2,2n", "--json")
    rep = json.loads(out)
    assert code == 0 and not rep["falsification"]
    assert len(rep["points"]) == 6


def test_sweep_alpha_expressions(capsys):
    code, out = run(capsys, "sweep", "--n-range", "3:3", "--alphas", "7/2", "--json")
    rep = json.loads(out)
    assert rep["points"][0]["alpha"] == "7/2"
    assert main(["sweep", "--n-range", "3:3", "--alphas", "nn+1"]) == 2


def test_threads_env_default(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NCG_THREADS", "4")
    out_dir = tmp_path / "cat"
    code, _ = run(capsys, "enumerate", "--n", "4", "--alpha", "5", "--output", str(out_dir))
    assert code == 0


GOLDEN = Path(__file__).parent / "golden"


def test_json_outputs_match_golden_files(capsys, tmp_path):
    """JSON report schemas are byte-stable across runs."""
    tri = tmp_path / "tri.ncg"
    run(capsys, "gen", "cycle", "--n", "3", "--alpha", "1/2", "--output", str(tri))
    _, out = run(capsys, "check", "--input", str(tri), "--json")
    assert out == (GOLDEN / "check_triangle_half.json").read_text()
    _, out = run(capsys, "verify", "--input", str(tri), "--json")
    assert out == (GOLDEN / "verify_triangle_half.json").read_text()
    theta = tmp_path / "theta.ncg"
    run(capsys, "gen", "theta", "--legs", "2,2,3", "--alpha", "5", "--output", str(theta))
    _, out = run(capsys, "analyze", "--input", str(theta))
    assert out == (GOLDEN / "analyze_theta_2_2_3.json").read_text()
