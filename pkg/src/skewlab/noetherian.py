"""Desk-scale experiments around leading-coefficient ideals and the failure
of left finite generation.

The harness corroborates, never proves: whether an ideal is finitely
generated is an infinitary question, so reports distinguish "corroborated at
these bounds" from any stronger claim. Runs are reproducible from the
recorded seed, and violations are sorted canonically before emission so
aggregation order never matters.

The fixed test bed is the twisted polynomial ring over two-variable
polynomials whose sigma is :class:`~skewlab.maps.CounterexampleSigma` and
whose delta is zero. There the set of polynomials with every coefficient a
multiple of Y is a left ideal, yet any left combination of members of degree
at most m only ever produces degree >= m+1 coefficients inside the ideal
generated by Y^2 -- and Y is not in that ideal, which is the whole point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .maps import CounterexampleSigma, ZeroMap
from .reports import CheckReport
from .rings import (
    Poly2,
    RingElement,
    element,
    monomial_element,
    monomial_ideal_member,
    random_element,
)
from .skewpoly import OreContext, OrePoly

POLY2 = Poly2()


def counterexample_context() -> OreContext:
    return OreContext(POLY2, CounterexampleSigma(POLY2), ZeroMap(POLY2))


def leading_coeff_ideal(generators) -> list[RingElement]:
    """Leading coefficients of the generators, deduplicated, zeros excluded.

    The finite-input shadow of the leading-coefficient ideal that drives
    right division: any polynomial whose leading coefficient is a right
    combination of these reduces by at least one step.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    out: list[RingElement] = []
    for g in generators:
        if g.is_zero():
            raise ValueError("generators must be nonzero")
        c = g.leading_coefficient()
        if c not in out:
            out.append(c)
    return out


@dataclass(frozen=True)
class CounterexampleConfig:
    max_generator_degree: int
    trials: int
    multiplier_degree_bound: int
    coefficient_degree_bound: int
    seed: int = 0

    def __post_init__(self):
        for name in (
            "max_generator_degree",
            "trials",
            "multiplier_degree_bound",
            "coefficient_degree_bound",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class Violation:
    description: str
    term_degree: int
    coefficient: str

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "term_degree": self.term_degree,
            "coefficient": self.coefficient,
        }


@dataclass
class WitnessReport:
    config: CounterexampleConfig
    trials_run: int
    violations: list[Violation] = field(default_factory=list)
    vacuous: bool = True
    y_outside_y_squared: bool = False

    @property
    def corroborated(self) -> bool:
        return not self.violations and self.y_outside_y_squared

    def conclusion(self) -> str:
        if not self.corroborated:
            return "violated"
        text = f"corroborated at these bounds ({self.trials_run} trials)"
        if self.vacuous:
            text += " [vacuous: no term ever reached the critical degree]"
        return text

    def to_dict(self) -> dict:
        return {
            "m": self.config.max_generator_degree,
            "trials": self.trials_run,
            "multiplier_degree_bound": self.config.multiplier_degree_bound,
            "coefficient_degree_bound": self.config.coefficient_degree_bound,
            "seed": self.config.seed,
            "violations": [v.to_dict() for v in self.violations],
            "vacuous": self.vacuous,
            "y_outside_y_squared": self.y_outside_y_squared,
            "corroborated": self.corroborated,
            "conclusion": self.conclusion(),
        }

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            "left finite-generation counterexample harness",
            f"  m={cfg.max_generator_degree} trials={self.trials_run} "
            f"multiplier_bound={cfg.multiplier_degree_bound} "
            f"coefficient_bound={cfg.coefficient_degree_bound} seed={cfg.seed}",
            f"  Y outside (Y^2): {'yes' if self.y_outside_y_squared else 'NO'}",
            f"  violations: {len(self.violations)}",
        ]
        for v in self.violations[:10]:
            lines.append(
                f"    degree {v.term_degree}: coefficient {v.coefficient} "
                f"from {v.description}"
            )
        lines.append(f"  conclusion: {self.conclusion()}")
        return "\n".join(lines)


def _y_monomial(a: int, b: int, c=1) -> RingElement:
    return monomial_element(POLY2, (a, b), c)


def _random_y_multiple(rng: Random, bound: int) -> RingElement:
    """A random element of the ideal generated by Y, within the degree bound."""
    terms = []
    for _ in range(rng.randint(1, 3)):
        terms.append(
            (
                (rng.randint(1, bound), rng.randint(0, bound)),
                Fraction(rng.randint(-9, 9)),
            )
        )
    return element(POLY2, terms)


def _random_coefficient(rng: Random, bound: int) -> RingElement:
    terms = []
    for _ in range(rng.randint(0, 3)):
        terms.append(
            (
                (rng.randint(0, bound), rng.randint(0, bound)),
                Fraction(rng.randint(-9, 9)),
            )
        )
    return element(POLY2, terms)


def _random_ideal_generator(ctx, rng: Random, cfg: CounterexampleConfig) -> OrePoly:
    """A nonzero member of the left ideal: every coefficient a multiple of Y,
    degree at most the configured maximum."""
    while True:
        terms = []
        for e in range(cfg.max_generator_degree + 1):
            if rng.random() < 0.6:
                terms.append((e, _random_y_multiple(rng, cfg.coefficient_degree_bound)))
        p = OrePoly.from_terms(ctx, terms)
        if not p.is_zero():
            return p


def _random_multiplier(ctx, rng: Random, cfg: CounterexampleConfig) -> OrePoly:
    terms = []
    for e in range(cfg.multiplier_degree_bound + 1):
        if rng.random() < 0.6:
            c = _random_coefficient(rng, cfg.coefficient_degree_bound)
            if not c.is_zero():
                terms.append((e, c))
    if not terms:
        terms = [(0, _y_monomial(0, 0))]
    return OrePoly.from_terms(ctx, terms)


def counterexample_witness(cfg: CounterexampleConfig) -> WitnessReport:
    """Sample left combinations of ideal members and check that every term of
    degree >= m+1 has its coefficient inside (Y^2); both association orders
    of nested products are exercised since the ring is non-associative."""
    ctx = counterexample_context()
    rng = Random(cfg.seed)
    y = _y_monomial(1, 0)
    y2 = _y_monomial(2, 0)
    report = WitnessReport(config=cfg, trials_run=cfg.trials)
    report.y_outside_y_squared = not monomial_ideal_member(y, [y2])
    critical = cfg.max_generator_degree + 1
    violations = []
    for _ in range(cfg.trials):
        p = _random_ideal_generator(ctx, rng, cfg)
        shape = rng.choice(("s*p", "t1*(t2*p)", "(t1*t2)*p"))
        if shape == "s*p":
            s = _random_multiplier(ctx, rng, cfg)
            product = s * p
            description = f"({s})*({p})"
        else:
            t1 = _random_multiplier(ctx, rng, cfg)
            t2 = _random_multiplier(ctx, rng, cfg)
            if shape == "t1*(t2*p)":
                product = t1 * (t2 * p)
                description = f"({t1})*(({t2})*({p}))"
            else:
                product = (t1 * t2) * p
                description = f"(({t1})*({t2}))*({p})"
        for e, c in product.terms:
            if e >= critical:
                report.vacuous = False
                if not monomial_ideal_member(c, [y2]):
                    violations.append(Violation(description, e, str(c)))
    report.violations = sorted(
        violations, key=lambda v: (v.term_degree, v.coefficient, v.description)
    )
    return report


def sigma_ideal_image_check(samples: int, bound: int, seed: int = 0) -> CheckReport:
    """Exhaustively check, for every monomial multiple of Y within the bound,
    that its sigma image lands in (Y^2); then spot-check random Y-multiples.

    Monomials outside the Y-ideal make no such claim and are excluded.
    """
    sigma = CounterexampleSigma(POLY2)
    y2 = _y_monomial(2, 0)
    checked = 0
    for a in range(1, bound + 1):
        for b in range(0, bound + 1):
            m = _y_monomial(a, b)
            checked += 1
            if not monomial_ideal_member(sigma.apply(m), [y2]):
                return CheckReport(
                    name="sigma-ideal-image",
                    passed=False,
                    trials=checked,
                    seed=seed,
                    witness=str(m),
                    message="sigma image escaped (Y^2)",
                )
    rng = Random(seed)
    y = _y_monomial(1, 0)
    for _ in range(samples):
        h = random_element(POLY2, rng)
        img = sigma.apply(y * h)
        if not monomial_ideal_member(img, [y2]):
            return CheckReport(
                name="sigma-ideal-image",
                passed=False,
                trials=checked + samples,
                seed=seed,
                witness=f"Y*({h})",
                message="sigma image escaped (Y^2)",
            )
    return CheckReport(
        name="sigma-ideal-image",
        passed=True,
        trials=checked + samples,
        seed=seed,
        message=(
            f"exhaustive over {checked} monomial multiples of Y (bound {bound}) "
            f"plus {samples} sampled multiples"
        ),
    )
