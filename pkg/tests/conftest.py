"""Prints a one-line verdict per acceptance criterion after the run."""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = [
    ("test_worked_example_reproduction", "1 worked-example reproduction, exact, < 5 s"),
    ("test_axiom_suite", "2 axiom suite incl. Jacobi counterexample witness"),
    ("test_twisted_bracket_properties", "3 twisted bracket identities, 50 instances"),
    ("test_morphism_composition", "4 morphism composition semantics"),
    ("test_left_pseudo_inverse", "5 left pseudo-inverse property test"),
    ("test_transform_equivalence", "6 mirrored trajectory equivalence"),
    ("test_energy_conservation", "7 energy conservation and integrator order"),
    ("test_symbolic_engine", "8 symbolic engine randomized suite"),
]


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                outcomes[nodeid.rsplit("::", 1)[-1]] = status
    if not outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for test_name, label in _CRITERIA:
        status = outcomes.get(test_name)
        if status is None:
            verdict = "SKIP"
        elif status == "passed":
            verdict = "PASS"
        else:
            verdict = "FAIL"
        terminalreporter.write_line("  %s %s" % (verdict, label))
