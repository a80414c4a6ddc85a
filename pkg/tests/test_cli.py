import json

import pytest

from riffle.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sample_reproducible_byte_identical(capsys):
    argv = ["sample", "--n", "5", "--p", "1/2,1/2", "--k", "1", "--seed", "7",
            "--samples", "3"]
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(out1.splitlines()) == 3
    for line in out1.splitlines():
        assert sorted(map(int, line.split())) == [1, 2, 3, 4, 5]


def test_sample_single_pile_streams_identity(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "3", "--p", "1", "--samples", "10",
                           "--seed", "1")
    assert code == 0
    assert out.splitlines() == ["1 2 3"] * 10


def test_sample_json_format(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "4", "--p", "1/2,1/2", "--seed", "3",
                           "--samples", "2", "--format", "json")
    assert code == 0
    for line in out.splitlines():
        assert sorted(json.loads(line)) == [1, 2, 3, 4]


def test_sample_requires_seed(capsys):
    code, _, err = run_cli(capsys, "sample", "--n", "3", "--p", "1/2,1/2")
    assert code == 2
    assert "seed" in err


def test_bad_bias_is_rejected(capsys):
    code, _, err = run_cli(capsys, "dist", "--n", "3", "--p", "0.5,0.6")
    assert code == 2
    assert "renormalization" in err


def test_dist_json(capsys):
    code, out, _ = run_cli(capsys, "dist", "--n", "3", "--p", "1/3,2/3")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 3
    assert {"perm": [1, 2, 3], "p": "5/9"} in obj["masses"]
    assert {"perm": [1, 3, 2], "p": "2/27"} in obj["masses"]


def test_dist_csv(capsys):
    code, out, _ = run_cli(capsys, "dist", "--n", "2", "--p", "1/3,2/3",
                           "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["perm,p", "1 2,7/9", "2 1,2/9"]


def test_tv_json(capsys):
    code, out, _ = run_cli(capsys, "tv", "--n", "3", "--p", "1/2,1/2")
    assert code == 0
    obj = json.loads(out)
    assert obj["exact_tv"] == "1/3"
    assert obj["tv_bound"] == "3/2"


def test_stats_moments(capsys):
    for stat, value in [("fixed-points", "7/4"), ("inversions", "3/4"),
                        ("descents", "3/2")]:
        code, out, _ = run_cli(capsys, "stats", "--n", "3", "--p", "1/2,1/2",
                               "--stat", stat)
        assert code == 0
        assert json.loads(out)["exact"] == value


def test_stats_pgfs(capsys):
    code, out, _ = run_cli(capsys, "stats", "--n", "3", "--p", "1/2,1/2",
                           "--stat", "inv-pgf")
    assert json.loads(out)["coeffs"] == ["1/2", "1/4", "1/4"]
    code, out, _ = run_cli(capsys, "stats", "--n", "3", "--p", "1/2,1/2",
                           "--stat", "cycle-pgf")
    terms = json.loads(out)["terms"]
    assert {"type": [[3, 1]], "p": "1/4"} in terms


def test_count_json_all_methods(capsys):
    want = {"J": [1, 3], "n": 3, "exact": 2, "ncycles": 1}
    for method in ("ie", "det", "brute"):
        code, out, _ = run_cli(capsys, "count", "--n", "3", "--j", "1,3",
                               "--method", method)
        assert code == 0
        assert json.loads(out) == want | {"method": method}


def test_bijection_word(capsys):
    code, out, _ = run_cli(capsys, "bijection", "--word",
                           "2,2,1,1,2,3,3,3,2,3,2,2")
    assert code == 0
    obj = json.loads(out)
    assert obj["standardized"] == [3, 4, 1, 2, 5, 9, 10, 11, 6, 12, 7, 8]
    assert {"necklace": [2, 3, 2, 3, 3], "letters": "bcbcc", "mult": 1} in obj["necklaces"]


def test_bijection_perm_requires_parts(capsys):
    code, _, err = run_cli(capsys, "bijection", "--perm", "2,3,1")
    assert code == 2 and "parts" in err


def test_report_csv_columns(capsys):
    code, out, _ = run_cli(capsys, "report", "--n", "4", "--p", "1/2,1/2",
                           "--k-max", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[4] == "k,tv_bound,exact_tv"
    assert lines[5].startswith("1,3/1,")
    bounds = [line.split(",")[1] for line in lines[5:]]
    assert bounds == ["3/1", "3/2", "3/4"]


def test_report_above_cap_omits_exact(capsys):
    code, out, err = run_cli(capsys, "report", "--n", "52", "--p", "0.4,0.6",
                             "--k-max", "2", "--format", "json")
    assert code == 0
    assert "omitted" in err
    obj = json.loads(out)
    assert all(row["exact_tv"] is None for row in obj["rows"])
    assert obj["lalley_lower_steps"] == pytest.approx(9.1509, abs=1e-3)


def test_verify_filtered_suites(capsys):
    code, out, err = run_cli(capsys, "verify", "--only", "lalley")
    assert code == 0
    results = [json.loads(line) for line in out.splitlines()]
    assert results and all(r["passed"] for r in results)
    assert "1/1 suites passed" in err


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "--only", "nonesuch")
    assert code == 2
    assert "no suite" in err
