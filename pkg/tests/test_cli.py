import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circleprod.cli import EvalError, ParseError, evaluate, main, parse_expression, unparse
from circleprod.cli.evaluate import evaluate_text
from circleprod.cli.parser import BinOp, Call, Gen, Num

from conftest import IDENTITY2, RATIONAL23, ROOT, SPACES, elements, joints

GOLDEN = ROOT / "tests" / "golden" / "cli_eval.tsv"


def golden_rows():
    for line in GOLDEN.read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            space, mode, expr, expected = line.split("\t")
            yield space, None if mode == "-" else mode, expr, expected


def space_file(name):
    return str(SPACES / {"identity2": "identity2.space", "rational2x3": "rational2x3.space"}[name])


def test_parse_examples():
    assert parse_expression("e1 @ e2 + 1/2") == BinOp("+", BinOp("@", Gen("U", 1), Gen("U", 2)), Num(Fraction(1, 2)))
    assert parse_expression("symm(e1 * e2)") == Call("symm", (BinOp("*", Gen("U", 1), Gen("U", 2)),))
    with pytest.raises(ParseError):
        parse_expression("e1 @ @ e2")


def test_precedence_and_associativity():
    a, b, c = Gen("U", 1), Gen("U", 2), Gen("V", 1)
    assert parse_expression("e1 - e2 - f1") == BinOp("-", BinOp("-", a, b), c)
    assert parse_expression("e1 @ e2 * f1") == BinOp("@", a, BinOp("*", b, c))
    assert parse_expression("e1 o_s e2 @ f1") == BinOp("o_s", a, BinOp("@", b, c))
    assert parse_expression("e1 ; f1 + e2") == BinOp("+", BinOp(";", a, c), b)
    assert parse_expression("-e1 * e2") == BinOp("*", parse_expression("-e1"), b)
    assert parse_expression("1/2·e1") == parse_expression("1 / 2 * e1")


@pytest.mark.parametrize("text, line, column", [
    ("e1 +", 1, 5),
    ("e1\n  @ @ e2", 2, 5),
    ("foo(e1)", 1, 1),
    ("symm(e1, e2)", 1, 1),
    ("pow(e1, e2)", 1, 1),
    ("e0", 1, 1),
    ("e1 $ e2", 1, 4),
    ("(e1", 1, 4),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize("space, mode, expr, expected", list(golden_rows()))
def test_golden(space, mode, expr, expected, capsys):
    assert main(["eval", "--space", space_file(space)] + (["--mode", mode] if mode else []) + [expr]) == 0
    assert capsys.readouterr().out == expected + "\n"


def test_golden_file_covers_language():
    text = " ".join(expr for _, _, expr, _ in golden_rows())
    for fn in ("symm", "asymm", "S(", "eps", "delta", "lap(", "lap_slow", "dual", "pow", "phi_t", "phi_s", "phi_a"):
        assert fn in text, fn
    for op in (" + ", " - ", "*", "^", "@", " o_s ", " o_a ", " o ", ";", "-("):
        assert op in text, op
    assert len(list(golden_rows())) == 10


@pytest.mark.parametrize("args", [
    ["eval", "--space", "SPACE", "e1 @ @ e2"],
    ["eval", "--space", "SPACE", "e3"],
    ["eval", "--space", "SPACE", "e1 o_s e1*e2"],
    ["eval", "--space", "SPACE", "dual(f1, e1)"],
    ["eval", "--space", "SPACE", "delta(e1) + e1"],
    ["eval", "--space", "SPACE", "e1 o e1"],
    ["eval", "--space", "RATIONAL", "e1 o_s e1"],
    ["eval", "--space", "RATIONAL", "phi_t(e1)"],
    ["eval", "--space", "SPACE", "symm(e1*e2*e1*e2*e1*e2*e1*e2)"],
    ["eval", "--space", "/nonexistent/space", "e1"],
    ["phi-matrix", "--space", "RATIONAL", "--mode", "sym", "--max-grade", "2"],
    ["check", "--space", "SPACE", "--max-grade", "9"],
])
def test_error_exit_codes(args, capsys):
    args = [space_file("identity2") if a == "SPACE" else space_file("rational2x3") if a == "RATIONAL" else a
            for a in args]
    assert main(args) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and captured.err.startswith("error:")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == 2


def test_phi_matrix_command(capsys):
    assert main(["phi-matrix", "--space", space_file("identity2"), "--mode", "asym", "--max-grade", "2"]) == 0
    assert capsys.readouterr().out == (
        "mode: antisymmetric\nmax_grade: 2\nbasis: 1 e1 e2 e1^e2\n"
        "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\ntriangular: yes\n"
    )


def test_check_trials_zero(capsys):
    assert main(["check", "--space", space_file("identity2"), "--trials", "0"]) == 0
    out = capsys.readouterr().out
    assert "PASS" not in out and "FAIL" not in out


def test_check_is_deterministic_and_exit_code():
    cmd = [sys.executable, "-m", "circleprod", "check", "--space", space_file("identity2"),
           "--seed", "42", "--trials", "20", "--max-grade", "3"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode
    # the antisymmetric circle suites fail for every seed tried; exit 1 follows from that
    assert ("FAIL" in first.stdout) == (first.returncode == 1)


def test_check_passes_on_rational_space():
    cmd = [sys.executable, "-m", "circleprod", "check", "--space", space_file("rational2x3"),
           "--trials", "10", "--max-grade", "3"]
    run = subprocess.run(cmd, capture_output=True, text=True)
    assert run.returncode == 0, run.stdout
    assert "SKIP  circle.symm_from_square" in run.stdout


def test_eval_is_pure():
    texts = [evaluate_text("phi_s(symm(e1*e2*e2)) + e1 o_s e2", IDENTITY2) for _ in range(3)]
    assert len(set(texts)) == 1


def test_type_errors():
    for text in ("e1 ; e2", "f1 ^ e1", "symm(e1;f1)", "lap(delta(e1), 1)"):
        with pytest.raises(EvalError):
            evaluate(parse_expression(text), RATIONAL23)


@given(elements(2, 3, "U"))
def test_printed_elements_round_trip(a):
    text = str(a)
    ast = parse_expression(text)
    assert parse_expression(unparse(ast)) == ast
    assert evaluate(ast, IDENTITY2) == a


@given(joints(2, 3, max_grade=2))
def test_printed_joint_elements_round_trip(a):
    ast = parse_expression(str(a))
    assert parse_expression(unparse(ast)) == ast
    value = evaluate(ast, RATIONAL23)
    assert value == a


@given(st.recursive(
    st.one_of(st.builds(Num, st.fractions(min_value=0, max_denominator=9)),
              st.builds(Gen, st.sampled_from("UV"), st.integers(1, 9))),
    lambda kids: st.one_of(
        st.builds(BinOp, st.sampled_from(["+", "-", "*", "^", "@", "o", "o_s", "o_a", ";"]), kids, kids),
        st.builds(lambda x: Call("symm", (x,)), kids),
        st.builds(lambda x, y: Call("lap", (x, y)), kids, kids),
    ),
    max_leaves=8,
))
def test_unparse_round_trip(ast):
    assert parse_expression(unparse(ast)) == ast
