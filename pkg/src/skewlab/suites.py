"""Named property suites driven by a session configuration.

Each suite aggregates sampled checks into a :class:`SuiteReport`; the CLI
turns a failed report into a nonzero exit status. Every suite is
deterministic given its seed.
"""

from __future__ import annotations

from random import Random

from .config import ConfigError, Session
from .maps import verify_claims, verify_multiplicative, verify_sigma_derivation
from .noetherian import (
    CounterexampleConfig,
    counterexample_witness,
    sigma_ideal_image_check,
)
from .reports import CheckReport, SuiteReport, no_violation_message
from .rings import is_associative_division_ring, one, random_element
from .series import TruncatedSeries, agree_below, random_series
from .skewpoly import (
    nucleus_check_power,
    poly_associator,
    random_laurent_poly,
    random_multi_poly,
    random_ore_poly,
    right_divide,
)

SUITE_NAMES = (
    "ring-axioms",
    "map-claims",
    "nucleus",
    "associativity-dichotomy",
    "division-roundtrip",
    "series-precision",
    "counterexample",
)


def run_suite(name: str, session: Session | None, trials: int, seed: int,
              **options) -> SuiteReport:
    try:
        runner = _RUNNERS[name]
    except KeyError:
        raise ConfigError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        ) from None
    if name != "counterexample" and session is None:
        raise ConfigError(f"suite {name!r} needs a --config session")
    return runner(session, trials, seed, options)


def _ring_axioms(session, trials, seed, options) -> SuiteReport:
    d = session.ring
    rng = Random(seed)
    axioms = {
        "add-commutative": lambda a, b, c: a + b == b + a,
        "add-associative": lambda a, b, c: (a + b) + c == a + (b + c),
        "left-distributive": lambda a, b, c: a * (b + c) == a * b + a * c,
        "right-distributive": lambda a, b, c: (a + b) * c == a * c + b * c,
        "unital": lambda a, b, c: one(d) * a == a and a * one(d) == a,
    }
    failures = {}
    for _ in range(trials):
        a, b, c = (random_element(d, rng) for _ in range(3))
        for name, pred in axioms.items():
            if name not in failures and not pred(a, b, c):
                failures[name] = f"a={a}, b={b}, c={c}"
    report = SuiteReport("ring-axioms", seed, trials)
    for name in axioms:
        if name in failures:
            report.checks.append(
                CheckReport(name, False, trials, seed, failures[name],
                            "axiom violated")
            )
        else:
            report.checks.append(
                CheckReport(name, True, trials, seed,
                            message=no_violation_message(trials))
            )
    return report


def _map_claims(session, trials, seed, options) -> SuiteReport:
    report = SuiteReport("map-claims", seed, trials)
    for label, m in session.maps():
        for check in verify_claims(m, trials, seed):
            report.checks.append(
                CheckReport(
                    f"{label}:{check.name}",
                    check.passed,
                    check.trials,
                    check.seed,
                    check.witness,
                    check.message,
                )
            )
    if not report.checks:
        raise ConfigError("the session declares no maps to verify")
    return report


def _nucleus(session, trials, seed, options) -> SuiteReport:
    n = options.get("n")
    if n is None:
        n = 2
    report = SuiteReport("nucleus", seed, trials)
    target = session.target
    if session.structure == "ore":
        report.checks.append(
            nucleus_check_power(target.ore_context, n, trials, seed)
        )
    elif session.structure == "laurent":
        report.checks.append(
            nucleus_check_power(target.laurent_context, n, trials, seed)
        )
    elif session.structure in ("power_series", "laurent_series"):
        report.checks.append(_series_nucleus(session, n, trials, seed))
    else:
        raise ConfigError(
            "the nucleus suite runs on ore, laurent, or series structures"
        )
    return report


def _series_nucleus(session, n, trials, seed) -> CheckReport:
    ctx = session.target.series_context
    precision = session.precision
    if n < 0 and session.structure == "power_series":
        raise ConfigError("power series have no negative powers of X")
    rng = Random(seed)
    xn = TruncatedSeries.from_terms(
        ctx, [(n, one(session.ring))], precision + n
    )
    for _ in range(trials):
        p = random_series(ctx, rng, precision)
        q = random_series(ctx, rng, precision)
        middle = (p * xn) * q - p * (xn * q)
        right = (p * q) * xn - p * (q * xn)
        if middle.order() is not None or right.order() is not None:
            slot = "middle" if middle.order() is not None else "right"
            return CheckReport(
                f"nucleus:X^{n}", False, trials, seed,
                witness=f"slot={slot}, p={p}, q={q}",
                message=f"X^{n} fell out of the {slot} nucleus",
            )
    return CheckReport(
        f"nucleus:X^{n}", True, trials, seed,
        message=no_violation_message(trials),
    )


def _dichotomy(session, trials, seed, options) -> SuiteReport:
    report = SuiteReport("associativity-dichotomy", seed, trials)
    structure = session.structure
    target = session.target
    reasons = []
    predicted = session.ring.is_associative
    if not predicted:
        reasons.append("coefficient ring is not associative")
    for label, m in session.maps():
        if m.kind == "zero":
            continue
        if label.startswith("sigma"):
            check = verify_multiplicative(m, trials, seed)
            if not check.passed:
                predicted = False
                reasons.append(f"{label} is not multiplicative ({check.witness})")
    if structure == "ore":
        leibniz = verify_sigma_derivation(session.sigma, session.delta, trials, seed)
        if not leibniz.passed:
            predicted = False
            reasons.append(f"delta breaks the twisted Leibniz rule ({leibniz.witness})")
        ctx, sample = target.ore_context, random_ore_poly
    elif structure == "laurent":
        ctx, sample = target.laurent_context, random_laurent_poly
    elif structure == "iterated_laurent":
        ctx, sample = target.iterated_context, random_multi_poly
    else:
        raise ConfigError(
            "the associativity-dichotomy suite runs on polynomial structures"
        )
    rng = Random(seed)
    witness = None
    for _ in range(trials):
        p, q, r = (sample(ctx, rng) for _ in range(3))
        a = poly_associator(p, q, r)
        if not a.is_zero():
            witness = f"({p}, {q}, {r}) -> {a}"
            break
    prediction_text = (
        "associative" if predicted else f"non-associative: {'; '.join(reasons)}"
    )
    observation = (
        "no nonzero associator found" if witness is None else "nonzero associator found"
    )
    consistent = predicted == (witness is None)
    report.checks.append(
        CheckReport(
            "dichotomy",
            consistent,
            trials,
            seed,
            witness,
            f"predicted {prediction_text}; observed {observation}",
        )
    )
    return report


def _division_roundtrip(session, trials, seed, options) -> SuiteReport:
    if session.structure != "ore":
        raise ConfigError("the division-roundtrip suite needs an ore structure")
    if not is_associative_division_ring(session.ring):
        raise ConfigError(
            "right division needs an associative division coefficient ring"
        )
    ctx = session.target.ore_context
    rng = Random(seed)
    report = SuiteReport("division-roundtrip", seed, trials)
    replayed = 0
    for _ in range(trials):
        gens = []
        while not gens:
            gens = [
                g
                for g in (
                    random_ore_poly(ctx, rng, max_degree=3)
                    for _ in range(rng.randint(1, 3))
                )
                if not g.is_zero()
            ]
        p = random_ore_poly(ctx, rng, max_degree=6, max_terms=4)
        trace = right_divide(p, gens)
        min_deg = min(g.degree() for g in gens)
        if not (trace.remainder.degree() < min_deg and trace.replay(gens) == p):
            report.checks.append(
                CheckReport(
                    "division-roundtrip", False, trials, seed,
                    witness=f"p={p}, gens={[str(g) for g in gens]}",
                    message="remainder bound or replay failed",
                )
            )
            return report
        replayed += 1
    report.checks.append(
        CheckReport(
            "division-roundtrip", True, trials, seed,
            message=f"{replayed} traces replayed exactly",
        )
    )
    return report


def _series_precision(session, trials, seed, options) -> SuiteReport:
    if session.structure not in ("power_series", "laurent_series"):
        raise ConfigError("the series-precision suite needs a series structure")
    ctx = session.target.series_context
    precision = session.precision
    from .skewpoly import LaurentContext, LaurentPoly, OrePoly

    poly_cls = LaurentPoly if isinstance(ctx, LaurentContext) else OrePoly
    min_exp = 0 if session.structure == "power_series" else -3
    rng = Random(seed)
    report = SuiteReport("series-precision", seed, trials)
    for _ in range(trials):
        terms_p = [
            (rng.randint(min_exp, 4), random_element(session.ring, rng))
            for _ in range(rng.randint(0, 3))
        ]
        terms_q = [
            (rng.randint(min_exp, 4), random_element(session.ring, rng))
            for _ in range(rng.randint(0, 3))
        ]
        p = poly_cls.from_terms(ctx, terms_p)
        q = poly_cls.from_terms(ctx, terms_q)
        sp = TruncatedSeries.from_poly(p, precision)
        sq = TruncatedSeries.from_poly(q, precision)
        sprod = sp * sq
        exact = TruncatedSeries.from_terms(ctx, (p * q).terms, sprod.precision)
        if not agree_below(sprod, exact, sprod.precision):
            report.checks.append(
                CheckReport(
                    "series-precision", False, trials, seed,
                    witness=f"p={p}, q={q}",
                    message="series product disagrees with the polynomial product",
                )
            )
            return report
    report.checks.append(
        CheckReport(
            "series-precision", True, trials, seed,
            message=f"window products exact below the declared precision "
                    f"({trials} pairs)",
        )
    )
    return report


def _counterexample(session, trials, seed, options) -> SuiteReport:
    m = options.get("m") or 2
    multiplier_bound = options.get("multiplier_bound") or 4
    coefficient_bound = options.get("coefficient_bound") or 4
    report = SuiteReport("counterexample", seed, trials)
    report.checks.append(
        sigma_ideal_image_check(samples=min(trials, 200), bound=12, seed=seed)
    )
    witness = counterexample_witness(
        CounterexampleConfig(m, trials, multiplier_bound, coefficient_bound, seed)
    )
    report.checks.append(
        CheckReport(
            "left-ideal-witness",
            witness.corroborated,
            trials,
            seed,
            witness=(
                None
                if not witness.violations
                else witness.violations[0].description
            ),
            message=witness.conclusion(),
        )
    )
    return report


_RUNNERS = {
    "ring-axioms": _ring_axioms,
    "map-claims": _map_claims,
    "nucleus": _nucleus,
    "associativity-dichotomy": _dichotomy,
    "division-roundtrip": _division_roundtrip,
    "series-precision": _series_precision,
    "counterexample": _counterexample,
}
