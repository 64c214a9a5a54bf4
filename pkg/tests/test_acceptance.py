"""Acceptance criteria 1-7, each at exact (zero-tolerance) equality.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for a
one-line verdict per criterion.
"""

import contextlib
import io
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from circleprod import e, identity_space, make_space  # noqa: E402
from circleprod.checks import default_spaces, four_vector_report, run_checks  # noqa: E402
from circleprod.cli import main  # noqa: E402
from circleprod.products import MODES, basis_element, phi, phi_inverse, phi_matrix  # noqa: E402

SEED, TRIALS, MAX_GRADE = 42, 100, 5
ROOT = Path(__file__).resolve().parents[1]

TITLES = {
    1: "Hopf axioms on T(U) and the joint algebra",
    2: "Symm/ASymm projections, polarization, duality compatibility",
    3: "Laplace pairing: recursive vs closed form and its identities",
    4: "square product: associativity, unit, weak commutativity, recovery",
    5: "circle products and the four-vector expansion",
    6: "phi homomorphisms, triangularity, inverse round trip",
    7: "CLI golden outputs, error exit codes, deterministic check report",
}


@lru_cache(maxsize=None)
def reports():
    return {name: run_checks(spec, SEED, MAX_GRADE, TRIALS) for name, spec in default_spaces().items()}


def suite_verdict(criterion):
    failed, info, ran = [], [], 0
    for space, report in reports().items():
        for r in report.results:
            if r.criterion != criterion:
                continue
            if r.status == "FAIL":
                failed.append(f"{r.name} [{space}]: {r.counterexample}")
            elif r.status == "INFO":
                info.append(f"{r.name} [{space}]: {r.note}")
            elif r.status == "PASS":
                ran += 1
    return failed, info, ran


def phi_structure_checks():
    """Triangularity for dims 1-3, max_grade <= 4, all modes, plus exact round trips."""
    problems = []
    spaces = [identity_space(d) for d in (1, 2, 3)]
    spaces.append(make_space(2, 2, [[2, 3], [5, 7]], True))
    spaces.append(make_space(3, 3, [[1, "1/2", 0], ["1/2", -1, 2], [0, 2, 3]], True))
    for spec in spaces:
        for mode in MODES:
            for g in range(5):
                pm = phi_matrix(spec, mode, g)
                if not (pm.triangular and pm.unit_diagonal):
                    problems.append(f"phi_matrix dim {spec.dim_u} mode {mode} grade {g} not unit triangular")
            # round trip every basis vector through phi and the inverted matrix
            pm = phi_matrix(spec, mode, 3)
            for idx in pm.basis:
                a = basis_element(mode, idx)
                back = phi_inverse(mode, phi(mode, a, spec), spec, 3)
                if back != a:
                    problems.append(f"round trip failed for {mode} basis {idx} in dim {spec.dim_u}")
    return problems


def cli_checks():
    problems = []
    space = {"identity2": ROOT / "spaces" / "identity2.space",
             "rational2x3": ROOT / "spaces" / "rational2x3.space"}
    rows = [line.split("\t") for line in (ROOT / "tests" / "golden" / "cli_eval.tsv")
            .read_text(encoding="utf-8").splitlines() if line and not line.startswith("#")]

    def run(args):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main([str(a) for a in args])
            except SystemExit as exc:
                code = exc.code
        return code, out.getvalue(), err.getvalue()

    for name, mode, expr, expected in rows:
        args = ["eval", "--space", space[name]] + (["--mode", mode] if mode != "-" else []) + [expr]
        code, out, _ = run(args)
        if code != 0 or out != expected + "\n":
            problems.append(f"golden {expr!r}: got {out.strip()!r} (exit {code})")
    for expr in ("e1 @ @ e2", "e1 +", "foo(e1)", "pow(e1, e2)"):
        if run(["eval", "--space", space["identity2"], expr])[0] != 2:
            problems.append(f"parse error {expr!r} did not exit 2")
    for expr in ("e1 ; e2", "e1 o_s e1*e2", "dual(f1, e1)", "e5"):
        if run(["eval", "--space", space["identity2"], expr])[0] != 2:
            problems.append(f"type error {expr!r} did not exit 2")
    first = run(["check", "--space", space["identity2"], "--seed", "42"])
    second = run(["check", "--space", space["identity2"], "--seed", "42"])
    if first != second:
        problems.append("check report for seed 42 is not deterministic")
    if first[0] != (1 if "FAIL " in first[1] else 0):
        problems.append("check exit status does not track failures")
    return problems


def verdict(criterion):
    """(ok, detail lines) for one criterion."""
    if criterion == 7:
        problems = cli_checks()
        return not problems, problems
    failed, info, ran = suite_verdict(criterion)
    details = failed + info
    if criterion == 5:
        # four independent directions need dim >= 4 for the top wedge to survive
        x, y, z, w = e(1), e(2), e(1) + e(3), e(2) + e(4)
        rep = four_vector_report(identity_space(4), x, y, z, w)
        details.append(f"four-vector expansion [self-dual dim 4, identity Gram]: x,y,z,w = {x}, {y}, {z}, {w}: "
                       f"ASymm(u[]v) = {rep['exact']}; printed all-positive form = {rep['printed']}; "
                       f"matches: {'yes' if rep['printed_matches'] else 'no'}; "
                       f"matching sign patterns: {len(rep['sign_patterns'])}")
    if criterion == 6:
        extra = phi_structure_checks()
        failed += extra
        details += extra
    if ran == 0 and not failed:
        return False, ["no suite ran"]
    return not failed, details


def report_line(criterion, ok, details):
    head = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {TITLES[criterion]}"
    return "\n".join([head] + [f"    {d}" for d in details])


@pytest.mark.parametrize("criterion", range(1, 8))
def test_criterion(criterion, capsys):
    ok, details = verdict(criterion)
    with capsys.disabled():
        print("\n" + report_line(criterion, ok, details))
    assert ok, "\n".join(details)


if __name__ == "__main__":
    results = [verdict(c) for c in range(1, 8)]
    for c, (ok, details) in enumerate(results, 1):
        print(report_line(c, ok, details))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
