import json

import pytest

from cenalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


ZERO2_GF2 = "field Fp 2\n2 2\n0 0\n0 0\n"
SHIFT3_Q = "field Q\n3 3\n0 0 0\n1 0 0\n0 1 0\n"
IDENTITY2_GF3 = "field Fp 3\n2 2\n1 0\n0 1\n"
SHIFT2_GF5 = "field Fp 5\n2 2\n0 0\n1 0\n"


def test_jordan_zero_matrix(tmp_path, capsys):
    path = write(tmp_path, "a.mat", ZERO2_GF2)
    code, out, _ = run(capsys, "jordan", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["block_sizes"] == [1, 1]
    assert payload["verified"] is True


def test_jordan_shift_block(tmp_path, capsys):
    path = write(tmp_path, "a.mat", SHIFT3_Q)
    code, out, _ = run(capsys, "jordan", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["block_sizes"] == [3]
    assert payload["index"] == 3


def test_jordan_non_nilpotent_exits_one(tmp_path, capsys):
    path = write(tmp_path, "a.mat", IDENTITY2_GF3)
    code, out, err = run(capsys, "jordan", path)
    assert code == 1
    assert "not nilpotent" in err
    assert "rank stabilizes at 2" in err


def test_parse_error_exits_two(tmp_path, capsys):
    path = write(tmp_path, "bad.mat", "field Fp 5\n2 2\n1 2\n3 oops\n")
    code, _, err = run(capsys, "jordan", path)
    assert code == 2
    assert "line 4" in err


def test_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "jordan", "/nonexistent/file.mat")
    assert code == 2


def test_cen0_identity(tmp_path, capsys):
    path = write(tmp_path, "a.mat", IDENTITY2_GF3)
    code, out, _ = run(capsys, "cen0", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 0 and payload["formula_ok"] is True


def test_cen0_zero_matrix_with_basis(tmp_path, capsys):
    path = write(tmp_path, "a.mat", ZERO2_GF2)
    code, out, _ = run(capsys, "cen0", path, "--json", "--basis")
    payload = json.loads(out)
    assert code == 0
    assert payload["dim"] == 4 and len(payload["basis"]) == 4


def test_cen_and_lcen(tmp_path, capsys):
    path = write(tmp_path, "a.mat", SHIFT2_GF5)
    code, out, _ = run(capsys, "cen", path, "--json")
    assert code == 0 and json.loads(out)["dim"] == 2
    code, out, _ = run(capsys, "lcen", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 1 and payload["difference_ok"] is True


def test_contain_equal_matrices(tmp_path, capsys):
    path = write(tmp_path, "a.mat", SHIFT2_GF5)
    code, out, _ = run(capsys, "contain", path, path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["direct"] is True
    assert payload["cond1"] and payload["cond2"] and payload["cond3"]
    assert payload["equivalent"] is True


def test_contain_zero_vs_identity(tmp_path, capsys):
    a = write(tmp_path, "a.mat", "field Fp 3\n2 2\n0 0\n0 0\n")
    b = write(tmp_path, "b.mat", IDENTITY2_GF3)
    code, out, _ = run(capsys, "contain", a, b, "--json")
    assert code == 0
    payload = json.loads(out)
    assert (payload["cond1"], payload["cond2"], payload["cond3"]) == (False, False, False)
    assert payload["equivalent"] is True


def test_contain_shape_mismatch_exits_two(tmp_path, capsys):
    a = write(tmp_path, "a.mat", ZERO2_GF2)
    b = write(tmp_path, "b.mat", "field Fp 2\n3 3\n0 0 0\n0 0 0\n0 0 0\n")
    code, _, err = run(capsys, "contain", a, b)
    assert code == 2


def test_lambda_shift(tmp_path, capsys):
    path = write(tmp_path, "p.pmat", "field Fp 5\nprofile 2\n[0,1]\n")
    code, out, _ = run(capsys, "lambda", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["matrix"] == [[0, 0], [1, 0]]
    assert payload["commutes"] is True


def test_lambda_identity(tmp_path, capsys):
    path = write(tmp_path, "p.pmat", "field Fp 5\nprofile 2\n[1]\n")
    code, out, _ = run(capsys, "lambda", path, "--json")
    assert json.loads(out)["matrix"] == [[1, 0], [0, 1]]


def test_lambda_zero_level_annihilates(tmp_path, capsys):
    # a zero-level basis monomial must annihilate the canonical nilpotent
    path = write(
        tmp_path, "p.pmat", "field Fp 5\nprofile 2 1\n[0,1] []\n[] []\n"
    )
    code, out, _ = run(capsys, "lambda", path, "--json")
    assert code == 0
    payload = json.loads(out)
    from cenalg import ExactMatrix, PrimeField, BlockProfile

    F = PrimeField(5)
    M = ExactMatrix.from_rows(F, payload["matrix"])
    A = BlockProfile((2, 1), F).canonical_nilpotent()
    assert (M @ A).is_zero() and (A @ M).is_zero()


def test_lambda_membership_violation_exits_two(tmp_path, capsys):
    path = write(tmp_path, "p.pmat", "field Fp 5\nprofile 3 1\n[] []\n[0,1] []\n")
    code, _, err = run(capsys, "lambda", path)
    assert code == 2
    assert "(1, 0)" in err


def test_dims_command(capsys):
    code, out, _ = run(capsys, "dims", "2", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["cen_model_dim"] == 5
    assert payload["zero_level_dim"] == 4
    assert payload["quotient_dim"] == 1
    assert payload["zero_level_residue"]["dim"] == 2


def test_pi_check_profile(capsys):
    code, out, _ = run(capsys, "pi-check", "--profile", "2", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert {r["target"] for r in payload["reports"]} == {"cen0", "quotient"}


def test_pi_check_explicit_factors(capsys):
    code, out, _ = run(
        capsys, "pi-check", "--profile", "2", "1", "--target", "cen0",
        "--factors", "comm2", "comm2", "--json",
    )
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_pi_check_bad_factor_fails(capsys):
    # the commutator is not an identity of the (1,1) residue, so the check fails
    code, out, _ = run(
        capsys, "pi-check", "--profile", "1", "1", "--target", "cen0",
        "--factors", "comm", "--json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert payload["reports"][0]["failing_factor"] == 0


def test_pi_check_quotient_rejected_at_index_one(capsys):
    code, _, err = run(capsys, "pi-check", "--profile", "1", "1", "--target", "quotient")
    assert code == 2
    assert "ill-posed" in err


def test_pi_check_unknown_factor_name(capsys):
    code, _, err = run(
        capsys, "pi-check", "--profile", "2", "1", "--factors", "nope", "nope"
    )
    assert code == 2


def test_verify_command_small(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(
        capsys, "verify", "--suite", "dimformula", "--seed", "3",
        "--trials", "5", "--max-dim", "3", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["schema"] == 1
    assert payload["suites"][0]["suite"] == "dimformula"


def test_verify_unknown_suite_exits_two(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_verify_deterministic_output(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    outputs = []
    for _ in range(2):
        code, out, _ = run(
            capsys, "verify", "--seed", "7", "--trials", "4", "--max-dim", "3", "--json"
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_text_output_mode(tmp_path, capsys):
    path = write(tmp_path, "a.mat", SHIFT3_Q)
    code, out, _ = run(capsys, "jordan", path)
    assert code == 0
    assert "block sizes: [3]" in out
