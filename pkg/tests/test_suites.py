"""Direct run_suite contract tests (the CLI tests cover the happy paths)."""

import pytest

from skewlab.config import ConfigError, load_session
from skewlab.suites import SUITE_NAMES, run_suite

WEYL = {
    "ring": {"poly1": {"variable": "Y"}},
    "sigma": {"kind": "identity"},
    "delta": {"kind": "formal_derivative"},
    "structure": "ore",
}


def test_unknown_suite():
    with pytest.raises(ConfigError):
        run_suite("not-a-suite", load_session(WEYL), 10, 0)


def test_missing_session():
    for name in SUITE_NAMES:
        if name == "counterexample":
            continue
        with pytest.raises(ConfigError):
            run_suite(name, None, 10, 0)
    assert run_suite("counterexample", None, 50, 0, m=1).passed


def test_structure_restrictions():
    session = load_session(WEYL)
    with pytest.raises(ConfigError):
        run_suite("series-precision", session, 10, 0)
    with pytest.raises(ConfigError):
        run_suite("division-roundtrip", session, 10, 0)  # Poly1 not a division ring
    laurent = load_session(
        {
            "ring": {"cayley_dickson": {"level": 1}},
            "sigma": {"kind": "sigma_q_complex", "q": "2"},
            "structure": "laurent",
        }
    )
    with pytest.raises(ConfigError):
        run_suite("series-precision", laurent, 10, 0)


def test_dichotomy_on_iterated_structure():
    session = load_session(
        {
            "ring": {"poly1": {"variable": "Y"}},
            "structure": "iterated_laurent",
            "sigmas": [
                {"kind": "quantum_torus_sigma", "q": "2"},
                {"kind": "identity"},
            ],
        }
    )
    report = run_suite("associativity-dichotomy", session, 60, 0)
    assert report.passed
    assert "predicted associative" in report.checks[0].message


def test_nucleus_on_series_structure():
    session = load_session(
        {
            "ring": "rationals",
            "sigma": {"kind": "identity"},
            "structure": "power_series",
            "precision": 8,
        }
    )
    report = run_suite("nucleus", session, 30, 0, n=3)
    assert report.passed
    with pytest.raises(ConfigError):
        run_suite("nucleus", session, 10, 0, n=-1)


def test_report_dict_shape():
    report = run_suite("ring-axioms", load_session(WEYL), 20, 5)
    payload = report.to_dict()
    assert payload["suite"] == "ring-axioms"
    assert payload["seed"] == 5
    assert payload["passed"] is True
    assert {c["name"] for c in payload["checks"]} >= {
        "add-commutative",
        "left-distributive",
        "unital",
    }
