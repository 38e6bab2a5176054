"""Exit codes, report schema, and input validation of the command line."""

import json

import pytest

from qhopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else None)


def assert_schema(report):
    assert set(report) >= {"command", "config", "checks", "status"}
    names = [e["name"] for e in report["checks"]]
    assert names == sorted(names)
    for e in report["checks"]:
        assert set(e) == {"name", "paper_ref", "status", "detail"}
        assert e["status"] in ("pass", "fail")


def test_verify_k_xi_passes(capsys):
    code, report = run(capsys, "verify", "--algebra", "k_xi_iso3",
                       "--order", "2", "--xi", "1")
    assert code == 0
    assert_schema(report)
    assert report["status"] == "pass"
    names = [e["name"] for e in report["checks"]]
    assert "confluence" in names
    assert "hopf.antipode" in names
    assert "rmatrix.yang_baxter" in names


def test_verify_strict_adds_hexagons(capsys):
    code, report = run(capsys, "verify", "--algebra", "uq_sl2",
                       "--order", "2", "--strict")
    assert code == 0
    assert any(e["name"] == "rmatrix.hexagons" for e in report["checks"])


def test_verify_order_zero_is_usage_error(capsys):
    code, _ = run(capsys, "verify", "--algebra", "k_xi_iso3", "--order", "0")
    assert code == 2


def test_verify_unknown_algebra_is_usage_error(capsys):
    code, _ = run(capsys, "verify", "--algebra", "nonsense")
    assert code == 2


def test_verify_malformed_rational_is_usage_error(capsys):
    for bad in ("1/0", "a/b", "1//2", ""):
        code, _ = run(capsys, "verify", "--algebra", "k_xi_iso3",
                      "--order", "2", "--xi", bad)
        assert code == 2, bad


def test_verify_degenerate_superalgebra_parameter(capsys):
    code, _ = run(capsys, "verify", "--algebra", "d21e",
                  "--order", "1", "--epsilon", "0")
    assert code == 2


def test_verify_corrupted_table_fails_confluence(capsys, tmp_path):
    import pathlib

    golden = pathlib.Path(__file__).parent / "golden" / "uq_sl2.alg"
    text = golden.read_text().replace("term E H : 1", "term E H : 2", 1)
    path = tmp_path / "corrupt.alg"
    path.write_text(text)
    code, report = run(capsys, "verify", "--table", str(path))
    assert code == 1
    assert_schema(report)
    conf = next(e for e in report["checks"] if e["name"] == "confluence")
    assert conf["status"] == "fail"
    assert "overlap" in conf["detail"]

    path.write_text(golden.read_text())
    code, report = run(capsys, "verify", "--table", str(path))
    assert code == 0


def test_verify_out_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _ = run(capsys, "verify", "--algebra", "uq_sl2", "--order", "2",
                  "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert_schema(report)


def test_verify_parallel_matches_serial(capsys, monkeypatch):
    code, serial = run(capsys, "verify", "--algebra", "k_xi_iso3",
                       "--order", "2")
    monkeypatch.setenv("HOPF_CONTRACT_THREADS", "4")
    code2, parallel = run(capsys, "verify", "--algebra", "k_xi_iso3",
                          "--order", "2")
    assert code == code2 == 0
    assert serial["checks"] == parallel["checks"]


def test_scatter_zero_spectator_is_identity(capsys):
    code, report = run(capsys, "scatter",
                       "--p", "[[1,0],[0.5,0],[0.25,0]]",
                       "--q", "[[0,0],[0,0],[0,0]]")
    assert code == 0
    assert_schema(report)
    assert report["output"]["p_prime"] == [[1.0, 0.0], [0.5, 0.0], [0.25, 0.0]]
    assert report["output"]["q_prime"] == [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]


def test_scatter_seeded_random_passes(capsys):
    code, report = run(capsys, "scatter", "--seed", "7", "--kappa", "2")
    assert code == 0
    residuals = [e for e in report["checks"]
                 if e["name"].startswith("conservation.")]
    assert len(residuals) == 6
    assert all(e["status"] == "pass" for e in residuals)


def test_scatter_imaginary_kappa(capsys):
    code, report = run(capsys, "scatter", "--seed", "3", "--kappa", "10i")
    assert code == 0
    assert report["status"] == "pass"


def test_scatter_singular_kinematics_exit_one(capsys):
    code, report = run(capsys, "scatter",
                       "--p", "[[1,0],[0.5,0],[0,0]]",
                       "--q", "[[1,0],[0,0],[0.5,0]]")
    assert code == 1
    assert "SingularKinematics" in report["checks"][0]["detail"]


def test_scatter_malformed_momentum_is_usage_error(capsys):
    code, _ = run(capsys, "scatter", "--p", "[[1,0]]",
                  "--q", "[[0,0],[0,0],[0,0]]")
    assert code == 2
    code, _ = run(capsys, "scatter", "--p", "not json",
                  "--q", "[[0,0],[0,0],[0,0]]")
    assert code == 2


def test_scatter_zero_kappa_is_usage_error(capsys):
    code, _ = run(capsys, "scatter", "--kappa", "0")
    assert code == 2


def test_contract_residual_default_passes(capsys):
    code, report = run(capsys, "contract-residual")
    assert code == 0
    assert_schema(report)
    assert all(e["status"] == "pass" for e in report["checks"])


def test_contract_residual_beta_plus_diverges(capsys):
    code, report = run(capsys, "contract-residual", "--beta-plus")
    assert code == 1
    ratios = [e for e in report["checks"] if e["name"].startswith("ratio")]
    assert all(e["status"] == "fail" for e in ratios)
    assert any("diverges" in e["detail"] for e in ratios)


def test_contract_residual_zero_epsilon_is_usage_error(capsys):
    code, _ = run(capsys, "contract-residual", "--epsilon", "0")
    assert code == 2


def test_classical_default_passes(capsys):
    code, report = run(capsys, "classical", "--xi", "3/5")
    assert code == 0
    assert_schema(report)
    names = [e["name"] for e in report["checks"]]
    assert "cybe.r" in names
    assert "completion.d3" in names
    assert sum(n.startswith("coboundary.") for n in names) == 6


def test_classical_higher_dimension_no_completion(capsys):
    code, report = run(capsys, "classical", "--dim", "4")
    assert code == 0
    comp = next(e for e in report["checks"] if e["name"] == "completion.d4")
    assert "no symmetric completion" in comp["detail"]


def test_classical_null_n_flat(capsys):
    code, report = run(capsys, "classical", "--dim", "3", "--null-n")
    assert code == 0
    assert any(e["name"] == "null_n.d3" for e in report["checks"])


def test_classical_invalid_dimension(capsys):
    for d in ("1", "7"):
        code, _ = run(capsys, "classical", "--dim", d)
        assert code == 2


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
