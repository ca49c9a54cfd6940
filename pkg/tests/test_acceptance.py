"""Acceptance gate: every headline property at its stated tolerance.

Each criterion runs one verification suite at full sample counts and prints a
pass/fail line; the suite functions are the same ones the `sigma2 verify`
command exposes, so this module is the single source of truth for "done".
"""

import pytest

from sigma2 import verify as vf

CRITERIA = [
    # (criterion, suite, kwargs)
    ("1. heat operators annihilate sigma2 (<1e-5, 20 samples)",
     "heat", {"samples": 20}),
    ("2. Taylor leading part u3 - u1^3/3 (<1e-6 / 1e-4, 10 contexts)",
     "taylor", {"contexts": 10}),
    ("3. inversion round trip (<1e-8, 100 instances) and rational limit (<1e-10)",
     "inversion", {"instances": 100, "contexts": 3}),
    ("4. two-route log-derivative consistency (<1e-9) and coefficient "
     "reconstruction (<1e-6)", "two_route", {"samples": 8}),
    ("5. quasi-periodicity (<1e-8), three-periodicity (<1e-8), functional "
     "equation (<1e-9)", "periodicity", {"samples": 20}),
    ("6. degenerate Legendre identity (<1e-8) and increment xi-independence "
     "(<1e-9)", "legendre", {"contexts": 10}),
    ("7. eigen equation (<1e-6), KdV (<1e-5), reality (<1e-8), Bloch (<1e-6)",
     "spectral", {"samples": 20}),
    ("8. exact rational algebra (det V, tangency, resultant constant)",
     "algebra", {"samples": 100}),
    ("9. classification round trips (1000 per chart, <1e-9) and rank table",
     "classify", {"per_chart": 1000}),
    ("10. discriminant gradient closed form (<1e-6, vanishing at branch points)",
     "gradient", {"samples": 20}),
    ("11. hyperbolic limit of the elliptic sigma (<1e-4)",
     "trig_limit", {}),
]


@pytest.mark.parametrize("label,suite,kwargs", CRITERIA,
                         ids=[c[1] for c in CRITERIA])
def test_acceptance(label, suite, kwargs, capsys):
    result = vf.run_suite(suite, seed=7, **kwargs)
    with capsys.disabled():
        status = "PASS" if result.passed else "FAIL"
        print(f"\n[{status}] {label}")
        print(f"        {result.line()}")
    assert result.passed, result.details
