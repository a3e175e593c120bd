"""End-to-end tests for the command-line driver."""

import json

import pytest

from diomorph import cli, encode, interchange, poly
from diomorph.cli import main


@pytest.fixture()
def toy_files(tmp_path):
    """Polynomial documents for the two-variable toy pair p=x2, q=x1."""
    p = poly.variable(2, 2)
    q = poly.variable(1, 2)
    p_path = tmp_path / "p.json"
    q_path = tmp_path / "q.json"
    p_path.write_text(interchange.dumps(interchange.polynomial_to_doc(p)))
    q_path.write_text(interchange.dumps(interchange.polynomial_to_doc(q)))
    return str(p_path), str(q_path)


@pytest.fixture()
def toy_encoder_file(tmp_path, toy_encoder):
    path = tmp_path / "enc.json"
    path.write_text(interchange.dumps(interchange.encoder_to_doc(toy_encoder)))
    return str(path)


@pytest.fixture()
def squares_files(tmp_path, squares_encoder):
    p_path = tmp_path / "sq_p.json"
    q_path = tmp_path / "sq_q.json"
    e_path = tmp_path / "sq_enc.json"
    p_path.write_text(interchange.dumps(interchange.polynomial_to_doc(squares_encoder.p)))
    q_path.write_text(interchange.dumps(interchange.polynomial_to_doc(squares_encoder.q)))
    e_path.write_text(interchange.dumps(interchange.encoder_to_doc(squares_encoder)))
    return str(p_path), str(q_path), str(e_path)


# ------------------------------------------------------------------ compile


def test_compile_round_trip(toy_files, tmp_path, toy_encoder):
    p_path, q_path = toy_files
    out = tmp_path / "enc.json"
    code = main(["compile", "--p", p_path, "--q", q_path, "-t", "2", "-o", str(out)])
    assert code == cli.EXIT_OK
    built = interchange.encoder_from_doc(json.loads(out.read_text()))
    assert built == toy_encoder


def test_compile_is_deterministic(toy_files, tmp_path):
    p_path, q_path = toy_files
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["compile", "--p", p_path, "--q", q_path, "-o", str(a)]) == 0
    assert main(["compile", "--p", p_path, "--q", q_path, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_compile_accepts_inline_json(tmp_path):
    p = interchange.dumps(interchange.polynomial_to_doc(poly.variable(2, 2)))
    q = interchange.dumps(interchange.polynomial_to_doc(poly.variable(1, 2)))
    out = tmp_path / "enc.json"
    assert main(["compile", "--p", p, "--q", q, "-o", str(out)]) == cli.EXIT_OK
    assert json.loads(out.read_text())["format"] == "diomorph-encoder"


def test_compile_arity_flag_mismatch_is_bad_input(toy_files, capsys):
    p_path, q_path = toy_files
    assert main(["compile", "--p", p_path, "--q", q_path, "-t", "3"]) == cli.EXIT_BAD_INPUT
    assert "arity" in capsys.readouterr().err


def test_compile_missing_file_is_bad_input(tmp_path, capsys):
    ghost = str(tmp_path / "nope.json")
    assert main(["compile", "--p", ghost, "--q", ghost]) == cli.EXIT_BAD_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_compile_malformed_json_is_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["compile", "--p", str(bad), "--q", str(bad)]) == cli.EXIT_BAD_INPUT
    assert "malformed" in capsys.readouterr().err


def test_compile_budget_exceeded_exit_code(toy_files, capsys):
    p_path, q_path = toy_files
    code = main(["compile", "--p", p_path, "--q", q_path, "--alphabet-budget", "3"])
    assert code == cli.EXIT_BUDGET
    assert "budget" in capsys.readouterr().err


def test_budget_env_variable_is_honoured(toy_files, monkeypatch, capsys):
    p_path, q_path = toy_files
    monkeypatch.setenv("DIOMORPH_ALPHABET_BUDGET", "3")
    assert main(["compile", "--p", p_path, "--q", q_path]) == cli.EXIT_BUDGET
    capsys.readouterr()
    # explicit flag wins over the environment
    monkeypatch.setenv("DIOMORPH_ALPHABET_BUDGET", "100000")
    code = main(["compile", "--p", p_path, "--q", q_path, "--alphabet-budget", "3"])
    assert code == cli.EXIT_BUDGET
    capsys.readouterr()


def test_bad_env_variable_is_bad_input(toy_files, monkeypatch, capsys):
    p_path, q_path = toy_files
    monkeypatch.setenv("DIOMORPH_ALPHABET_BUDGET", "many")
    assert main(["compile", "--p", p_path, "--q", q_path]) == cli.EXIT_BAD_INPUT
    assert "DIOMORPH_ALPHABET_BUDGET" in capsys.readouterr().err


# ----------------------------------------------------------------- matrices


def test_matrices_command(toy_encoder_file, tmp_path, toy_encoder, capsys):
    out = tmp_path / "mats.json"
    assert main(["matrices", "--encoder", toy_encoder_file, "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    m1, m2 = encode.matrices(toy_encoder)
    assert interchange.matrix_from_doc(doc["g1"]) == m1
    assert interchange.matrix_from_doc(doc["g2"]) == m2
    assert doc["dimension"] == toy_encoder.dimension


def test_matrices_rejects_non_encoder_document(toy_files, capsys):
    p_path, _ = toy_files
    assert main(["matrices", "--encoder", p_path]) == cli.EXIT_BAD_INPUT
    assert "encoder" in capsys.readouterr().err


# ------------------------------------------------------------------- oracle


def test_oracle_found_and_missing(squares_files, capsys):
    p_path, q_path, _ = squares_files
    base = ["oracle", "--p", p_path, "--q", q_path, "-n", "1", "-B", "5"]
    assert main(base + ["-s", "4", "--format", "machine"]) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"] == [2]
    assert main(base + ["-s", "3", "--format", "machine"]) == cli.EXIT_EXHAUSTED
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"] is None


def test_oracle_human_output(squares_files, capsys):
    p_path, q_path, _ = squares_files
    base = ["oracle", "--p", p_path, "--q", q_path, "-n", "1", "-B", "5"]
    assert main(base + ["-s", "4"]) == cli.EXIT_OK
    assert "solution" in capsys.readouterr().out


def test_oracle_arity_mismatch_is_bad_input(toy_files, squares_files, capsys):
    p_path, _ = toy_files
    _, q_path, _ = squares_files
    code = main(["oracle", "--p", p_path, "--q", q_path, "-n", "1", "-s", "1", "-B", "2"])
    assert code == cli.EXIT_BAD_INPUT
    capsys.readouterr()


# -------------------------------------------------------------------- solve


def test_solve_found_on_toy(toy_encoder_file, capsys):
    args = ["solve", "--encoder", toy_encoder_file, "-n", "2", "-s", "2",
            "--max-len", "3", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == "found" and doc["witness"] == []


def test_solve_exhausted_on_toy(toy_encoder_file, capsys):
    args = ["solve", "--encoder", toy_encoder_file, "-n", "2", "-s", "3",
            "--max-len", "3", "--format", "machine"]
    assert main(args) == cli.EXIT_EXHAUSTED
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == "exhausted" and doc["witness"] is None


def test_solve_both_levels(toy_encoder_file, capsys):
    args = ["solve", "--encoder", toy_encoder_file, "-n", "2", "-s", "2",
            "--max-len", "2", "--level", "both", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["matrix"]["outcome"] == "found"
    assert doc["morphism"]["outcome"] == "found"
    assert doc["matrix"]["witness"] == doc["morphism"]["witness"]


def test_solve_two_unknowns_flag(toy_encoder_file, capsys):
    args = ["solve", "--encoder", toy_encoder_file, "-n", "2", "-s", "2",
            "--max-len", "2", "--two", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["pair"] == [[], []]


def test_solve_on_squares_encoder_file(squares_files, capsys):
    _, _, enc_path = squares_files
    args = ["solve", "--encoder", enc_path, "-n", "1", "-s", "4",
            "--max-len", "6", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"] == [1, 1, 2]


# ------------------------------------------------------------------- verify


@pytest.mark.parametrize("suite", ["conditions", "staged", "collapse"])
def test_verify_suites_pass_on_toy(toy_encoder_file, suite, capsys):
    args = ["verify", "--encoder", toy_encoder_file, "--suite", suite,
            "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True and doc["suite"]


def test_verify_functoriality_on_toy(toy_encoder_file, capsys):
    args = ["verify", "--encoder", toy_encoder_file, "--suite", "functoriality",
            "--max-len", "5", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_verify_detects_corruption(toy_encoder_file, tmp_path, capsys):
    doc = json.loads(open(toy_encoder_file).read())
    doc["g2"]["images"]["c1"] = "c1"  # break the control chain
    broken = tmp_path / "broken.json"
    broken.write_text(interchange.dumps(doc))
    args = ["verify", "--encoder", str(broken), "--suite", "conditions",
            "--format", "machine"]
    assert main(args) == cli.EXIT_SUITE_FAILURE
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] is False


def test_verify_unknown_suite_is_usage_error(toy_encoder_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--encoder", toy_encoder_file, "--suite", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


# ------------------------------------------------------------------- report


def test_report_agreement_and_determinism(squares_files, capsys):
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "--point", "1,1", "--point", "1,4", "--oracle-bound", "5",
            "--solver-bound", "6", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    first = capsys.readouterr().out
    assert main(args) == cli.EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["all_agree"] is True
    assert [row["s"] for row in doc["rows"]] == [1, 4]


def test_report_range_selection(squares_files, capsys):
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "-n", "1", "--s-from", "1", "--s-to", "3", "--oracle-bound", "4",
            "--solver-bound", "5", "--format", "machine"]
    assert main(args) == cli.EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [row["s"] for row in doc["rows"]] == [1, 2, 3]


def test_report_disagreement_exit_code(squares_files, capsys):
    # solver bound 2 misses the length-3 witness at (1,4)
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "--point", "1,4", "--oracle-bound", "5", "--solver-bound", "2",
            "--format", "machine"]
    assert main(args) == cli.EXIT_SUITE_FAILURE
    doc = json.loads(capsys.readouterr().out)
    assert doc["all_agree"] is False
    assert doc["rows"][0]["caveats"]


def test_report_requires_points(squares_files, capsys):
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "--oracle-bound", "2", "--solver-bound", "2"]
    assert main(args) == cli.EXIT_BAD_INPUT
    assert "point" in capsys.readouterr().err


def test_report_rejects_malformed_point(squares_files, capsys):
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "--point", "1;4", "--oracle-bound", "2", "--solver-bound", "2"]
    assert main(args) == cli.EXIT_BAD_INPUT
    capsys.readouterr()


def test_report_human_format(squares_files, capsys):
    p_path, q_path, enc_path = squares_files
    args = ["report", "--p", p_path, "--q", q_path, "--encoder", enc_path,
            "--point", "1,4", "--oracle-bound", "5", "--solver-bound", "6"]
    assert main(args) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "overall" in out and "(1,4)" in out
