import json

import pytest

from ncgeo.cli import run


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _report(capsys, argv):
    code, out, err = _capture(capsys, argv)
    assert code == 0, err
    return json.loads(out)


REQUIRED_KEYS = {"schema", "command", "inputs", "results", "certifications", "versions"}


def test_report_envelope(capsys):
    report = _report(capsys, ["info"])
    assert set(report) == REQUIRED_KEYS
    assert report["schema"] == "ncgeo/1"
    assert report["command"] == "info"
    assert report["versions"]["engine"]
    assert len(report["versions"]["group_spec_hash"]) == 64


def test_output_is_byte_deterministic(capsys):
    _, first, _ = _capture(capsys, ["relations"])
    _, second, _ = _capture(capsys, ["relations"])
    assert first == second


def test_unknown_command_exits_64(capsys):
    code, out, err = _capture(capsys, ["frobnicate"])
    assert code == 64
    assert out == ""
    diag = json.loads(err)
    assert "unknown command" in diag["error"]


def test_bad_group_file_exits_65(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"names": ["e", "a"], "table": [[0, 1], [1, 1]]})
    )
    code, out, err = _capture(capsys, ["info", "--group", str(path)])
    assert code == 65
    diag = json.loads(err)
    assert "row" in diag


def test_nonassociative_loop_names_violated_triple(tmp_path, capsys):
    # an order-5 loop: Latin square with identity and two-sided inverses
    # but no associativity
    names = ["e", "a", "b", "c", "d"]
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"names": names, "table": table}))
    code, out, err = _capture(capsys, ["info", "--group", str(path)])
    assert code == 65
    diag = json.loads(err)
    assert diag["triple"] == ["a", "a", "b"]


def test_good_group_file_round_trip(tmp_path, capsys):
    klein = {
        "names": ["e", "a", "b", "c"],
        "table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
    }
    path = tmp_path / "klein.json"
    path.write_text(json.dumps(klein))
    code, out, err = _capture(
        capsys, ["info", "--group", str(path), "--class", "a"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["group_order"] == 4


def test_extdims_report(capsys):
    report = _report(capsys, ["extdims"])
    dims = report["results"]["dims"]
    assert [d["dim"] for d in dims] == [1, 4, 8, 11, 12, 12, 11]
    for d in dims:
        if d["degree"] <= 4:
            assert d["method"] == "exact"
        else:
            assert d["method"] == "modular-certified"
            assert len(d["primes"]) == 2
    assert report["certifications"]


def test_extdims_over_cap_exits_2(capsys):
    code, out, err = _capture(capsys, ["extdims", "--max-degree", "9"])
    assert code == 2
    assert out == ""
    diag = json.loads(err)
    assert diag["degree"] == 7
    assert diag["cap"] == 6


def test_float_mu_rejected(capsys):
    code, out, err = _capture(capsys, ["metric", "--mu", "0.25"])
    assert code == 2
    diag = json.loads(err)
    assert "rational" in diag["error"]


def test_metric_singular_parameter_reported(capsys):
    report = _report(capsys, ["metric", "--mu", "-1/4"])
    assert report["results"]["invertible"] is False
    assert report["results"]["eta_inverse"] is None
    assert report["results"]["invariant_space_dim"] == 2


def test_connections_solver_report(capsys):
    report = _report(capsys, ["connections", "--mu", "0"])
    res = report["results"]
    assert res["torsion_free"]["dimension"] == 36
    assert res["torsion_cotorsion_free"]["dimension"] == 9
    assert len(res["torsion_cotorsion_free"]["basis"]) == 9
    assert report["certifications"]
    assert all(c["status"] == "ok" for c in report["certifications"])


def test_levi_civita_report(capsys):
    report = _report(capsys, ["levi-civita", "--mu", "1/3"])
    coeffs = report["results"]["constant_coefficients"]
    assert coeffs["A_t"]["e_t"] == "3/4"
    assert coeffs["A_t"]["e_x"] == "-1/4"
    names = {c["check_name"] for c in report["certifications"]}
    assert {"torsion_vanishes", "cotorsion_vanishes", "regular"} <= names


def test_ricci_flat_report(capsys):
    report = _report(capsys, ["ricci-flat"])
    res = report["results"]
    assert res["unique"] is True
    assert res["matches_levi_civita"] is True
    assert res["solution_space"]["dimension"] == 0
    assert all(c["status"] == "ok" for c in report["certifications"])


def test_dirac_spectrum_report(capsys):
    report = _report(capsys, ["dirac", "--mu", "0", "--spectrum"])
    spec = report["results"]["spectrum"]
    assert report["results"]["spectrum_total"] == 36
    mults = sorted(e["multiplicity"] for e in spec)
    assert mults == [3, 3, 3, 3, 3, 3, 18]


def test_dirac_eigenbasis_needs_default_metric(capsys):
    code, out, err = _capture(
        capsys, ["dirac", "--mu", "1/4", "--eigenbasis"]
    )
    assert code == 2
    diag = json.loads(err)
    assert "mu = 0" in diag["error"]


def test_laplacian_report(capsys):
    report = _report(capsys, ["laplacian"])
    spec = report["results"]["spectrum"]
    mults = sorted(e["multiplicity"] for e in spec)
    assert mults == [1, 1, 1, 9]


def test_cohomology_report(capsys):
    report = _report(capsys, ["cohomology"])
    assert report["results"] == {
        "h1_dim": 1,
        "im_d0": 11,
        "ker_d1": 12,
        "representative": "theta",
    }


def test_flat_u1_check_families(capsys):
    report = _report(capsys, ["flat-u1", "--check-families"])
    assert len(report["results"]["families"]) == 5
    names = {c["check_name"]: c["status"] for c in report["certifications"]}
    assert names["families_flat_at_sample_parameters"] == "ok"
    assert names["gauge_covariance_samples"] == "ok"


def test_s4_check_report(capsys):
    report = _report(capsys, ["s4-check"])
    res = report["results"]
    assert res["cross_relations"]["all_in_kernel"] is True
    assert res["conjugate_calculus_a4"]["transpose_identity"] is True
    assert all(c["status"] == "ok" for c in report["certifications"])


def test_no_cyclic_class_exits_2(capsys):
    code, out, err = _capture(capsys, ["relations", "--group", "klein"])
    assert code == 2
    diag = json.loads(err)
    assert "cyclic" in diag["error"]


def test_unknown_class_label_exits_2(capsys):
    code, out, err = _capture(capsys, ["info", "--class", "nope"])
    assert code == 2


def test_s3_dims_via_cli(capsys):
    report = _report(capsys, ["extdims", "--group", "s3", "--max-degree", "5"])
    assert [d["dim"] for d in report["results"]["dims"]] == [1, 3, 4, 3, 1, 0]
