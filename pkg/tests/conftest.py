"""Shared pytest plumbing.

After a run that touched the acceptance suite, print one status line per
numbered criterion so the outcome is visible at a glance.
"""

_CRITERIA = {
    1: "fundamental unit of Q(sqrt 13) and the norm of eps^12 - 1",
    2: "unit-bound B values for Q(sqrt 13) and Q(sqrt 5)",
    3: "closed-form resultants equal Sylvester determinants on 10^4 samples",
    4: "point counts vs enumeration oracle, Hasse bounds, base-change identity",
    5: "nonzero signature invariants for every squarefree D <= 500",
    6: "uniform torsion cutoff values",
    7: "reference per-prime values assemble to the baseline-only bad set",
    8: "family sweep determinism across worker counts and the ell=5 oracle",
    9: "externally supplied curve family reproduces its reference sweeps",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for status, label in (("passed", "PASS"), ("failed", "FAIL"),
                          ("error", "FAIL"), ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(status, ()):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            num = int(nodeid.split("test_criterion_")[1].split("_")[0])
            if results.get(num) != "FAIL":
                results[num] = label
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(
            f"criterion {num}: {results[num]} - {_CRITERIA[num]}"
        )
