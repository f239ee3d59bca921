import json

import pytest

from qmcpairs.cli import main


def run(tmp_path, *argv, name="out.txt"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def test_generate_halton_exact(tmp_path):
    code, text = run(tmp_path, "generate", "--halton", "2,3", "--n", "8")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1] == "n,x1,x2"
    assert len(lines) == 2 + 8
    assert lines[2 + 5] == "5,5/8,7/9"


def test_generate_float_output(tmp_path):
    code, text = run(tmp_path, "generate", "--halton", "2,3", "--n", "4", "--float")
    assert code == 0
    row = text.strip().splitlines()[3].split(",")
    assert row[0] == "1"
    assert float(row[1]) == 0.5
    assert abs(float(row[2]) - 1 / 3) < 1e-16


def test_generate_digital_and_vdc_agree(tmp_path):
    code_d, text_d = run(
        tmp_path, "generate", "--digital", "--q", "2", "--polys", "x", "--n", "8"
    )
    code_v, text_v = run(tmp_path, "generate", "--vdc", "--n", "8", name="v.txt")
    assert code_d == code_v == 0
    rows_d = [l.split(",")[1] for l in text_d.strip().splitlines()[2:]]
    rows_v = [l.split(",")[1] for l in text_v.strip().splitlines()[2:]]
    from fractions import Fraction

    assert [Fraction(r) for r in rows_d] == [Fraction(r) for r in rows_v]


def test_byte_identical_reruns(tmp_path):
    args = ("paircorr", "--halton", "2,3", "--n", "512", "--s", "0.5,1,2")
    _, first = run(tmp_path, *args, name="a.csv")
    _, second = run(tmp_path, *args, name="b.csv")
    assert first == second
    assert first.splitlines()[0].startswith("# config: ")


def test_paircorr_grid_row_count(tmp_path):
    code, text = run(tmp_path, "paircorr", "--vdc", "--n", "4096", "--s", "0.1:0.1:3.0")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[1] == "N,s,count,F,target"
    assert len(lines) == 2 + 30
    by_s = {row.split(",")[1]: row.split(",") for row in lines[2:]}
    # the first 4096 points are equispaced: F(1) = 2, F(0.5) = 0
    assert float(by_s["1"][3]) == 2.0
    assert float(by_s["0.5"][3]) == 0.0


def test_paircorr_naive_matches_grid(tmp_path):
    base = ("paircorr", "--random", "2", "--seed", "5", "--n", "300", "--s", "0.5,1")
    _, grid = run(tmp_path, *base, name="g.csv")
    _, naive = run(tmp_path, *base, "--naive", name="n.csv")
    counts = lambda text: [l.split(",")[2] for l in text.strip().splitlines()[2:]]
    assert counts(grid) == counts(naive)


def test_converge(tmp_path):
    code, text = run(
        tmp_path,
        "converge",
        "--random", "1", "--seed", "11",
        "--n-list", "256,1024",
        "--s", "1",
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[1] == "N,s,count,F,target,abs_error"
    assert len(lines) == 4


def test_check_tse(tmp_path):
    code, text = run(
        tmp_path, "check-tse", "--q", "2", "--polys", "x;x+1", "--m-max", "8"
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["ok"] is True and doc["certificate"] is None
    code, text = run(
        tmp_path,
        "check-tse", "--q", "2", "--polys", "x;x+1", "--m-max", "8", "--scramble",
        name="s.json",
    )
    assert code == 0 and json.loads(text)["ok"] is True


def test_matrices_schema(tmp_path):
    code, text = run(
        tmp_path,
        "matrices", "--q", "2", "--polys", "x;x+1", "--rows", "3", "--cols", "3",
        "--with-scrambler",
    )
    assert code == 0
    doc = json.loads(text)
    mats = doc["matrices"]
    assert len(mats) == 2
    assert mats[1] == {"q": 2, "rows": 3, "cols": 3, "entries": [1, 1, 1, 0, 1, 0, 0, 0, 1]}
    assert doc["scrambler"]["rows"] == 3
    assert doc["config"]["method"] == "niederreiter"


def test_witness_digital_verdict_true(tmp_path):
    code, text = run(
        tmp_path,
        "witness-digital", "--q", "2", "--polys", "x;x+1", "--u", "8", "--eps", "0.01",
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["verdict"] is True
    assert doc["N"] == 131072
    assert doc["measured_count"] >= 65536
    assert all(doc["structural_checks"].values())


def test_witness_digital_budget_exit_code(tmp_path):
    code = main(
        [
            "witness-digital", "--q", "2", "--polys", "x;x+1",
            "--u", "8", "--eps", "0.01", "--budget", "1024",
        ]
    )
    assert code == 3


def test_witness_digital_infeasible_is_usage_error(tmp_path):
    code = main(
        ["witness-digital", "--q", "2", "--polys", "x;x+1", "--u", "4", "--eps", "0.01"]
    )
    assert code == 2


def test_witness_halton_structural_but_gap_fails(tmp_path):
    code, text = run(
        tmp_path, "witness-halton", "--bases", "2,3", "--u", "2", "--k", "1,1"
    )
    assert code == 1  # verdict false is a verification failure
    doc = json.loads(text)
    assert doc["gap_ok"] is False
    assert all(doc["structural_checks"].values())
    assert doc["qualifying_n"] == 1152


def test_search_k(tmp_path):
    code, text = run(tmp_path, "search-k", "--bases", "2,3", "--u", "4", "--k1-max", "12")
    assert code == 0
    doc = json.loads(text)
    hits = {h["k1"]: h for h in doc["hits"]}
    assert hits[9]["k"] == [9, 17] and hits[9]["delta"] == [0]


def test_search_near_integer(tmp_path):
    import math

    alpha = math.log(4096) / math.log(81)
    code, text = run(
        tmp_path,
        "search-near-integer", "--alphas", f"{alpha!r}", "--eps", "0.05",
        "--n-max", "20",
    )
    assert code == 0
    doc = json.loads(text)
    assert 9 in [h["n"] for h in doc["hits"]]


def test_usage_errors():
    assert main(["generate", "--random", "2", "--n", "4"]) == 2  # seed missing
    assert main(["generate", "--halton", "2,3", "--vdc", "--n", "4"]) == 2
    assert main(["generate", "--digital", "--q", "2", "--polys", "x oops", "--n", "4"]) == 2
    assert main(["generate", "--n", "4"]) == 2  # no source
    with pytest.raises(SystemExit) as exc:
        main(["paircorr", "--vdc", "--n", "16"])  # --s is required
    assert exc.value.code == 2


def test_extension_field_via_modulus(tmp_path):
    code, text = run(
        tmp_path,
        "generate", "--digital", "--q", "4", "--modulus", "1+x+x^2",
        "--polys", "x", "--n", "4",
    )
    assert code == 0
    assert len(text.strip().splitlines()) == 2 + 4
    code = main(["generate", "--digital", "--q", "4", "--polys", "x", "--n", "2"])
    assert code == 2  # q = 4 needs --modulus


def test_default_polys_via_d(tmp_path):
    code, text = run(
        tmp_path, "generate", "--digital", "--q", "2", "--d", "2", "--n", "4"
    )
    assert code == 0  # uses x and x+1, the first two monic irreducibles
    assert "x2" in text.splitlines()[1]
