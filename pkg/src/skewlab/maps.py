"""Additive self-maps of coefficient rings: twist candidates and verifiers.

A :class:`TwistMap` bundles a domain descriptor, the structural properties it
claims (additivity, unit behavior, multiplicativity, injectivity,
surjectivity), and, when available, an exact inverse. Maps on polynomial
domains are stored as monomial-level rules and extended additively, which is
what makes the inverses exact.

The ``verify_*`` functions are sampling-based falsifiers: they either produce
a concrete counterexample or report that no violation was found in N trials.
They never prove anything.
"""

from __future__ import annotations

import math
from random import Random

from .reports import CheckReport, no_violation_message
from .rings import (
    COMPLEX_Q,
    CayleyDickson,
    DescriptorMismatch,
    Matrix,
    Poly1,
    Poly2,
    RingDescriptor,
    RingElement,
    as_rational,
    element,
    one,
    random_element,
    zero,
)

ADDITIVE = "additive"
RESPECTS_ONE = "respects_one"
ANNIHILATES_ONE = "annihilates_one"
MULTIPLICATIVE = "multiplicative"
INJECTIVE = "injective"
SURJECTIVE = "surjective"


class NoInverse(ValueError):
    """The map does not carry an exact inverse."""


class TwistMap:
    """Base class; instances are immutable and safe to share."""

    kind = "abstract"

    def __init__(self, domain: RingDescriptor, claims, has_inverse: bool):
        self.domain = domain
        self.claims = frozenset(claims)
        self.has_inverse = has_inverse

    def _check_domain(self, a: RingElement):
        if a.descriptor != self.domain:
            raise DescriptorMismatch(
                f"{self.kind} is defined on {self.domain}, got {a.descriptor}"
            )

    def apply(self, a: RingElement) -> RingElement:
        self._check_domain(a)
        return self._apply(a)

    def apply_inverse(self, a: RingElement) -> RingElement:
        if not self.has_inverse:
            raise NoInverse(f"{self.kind} carries no inverse")
        self._check_domain(a)
        return self._apply_inverse(a)

    def _apply(self, a: RingElement) -> RingElement:
        raise NotImplementedError

    def _apply_inverse(self, a: RingElement) -> RingElement:
        raise NoInverse(f"{self.kind} carries no inverse")

    def _key(self):
        return (self.kind, self.domain)

    def __eq__(self, other):
        return isinstance(other, TwistMap) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<TwistMap {self.kind} on {type(self.domain).__name__}>"


_BIJECTION_CLAIMS = frozenset(
    {ADDITIVE, RESPECTS_ONE, INJECTIVE, SURJECTIVE}
)


class IdentityMap(TwistMap):
    kind = "identity"

    def __init__(self, domain: RingDescriptor):
        super().__init__(domain, _BIJECTION_CLAIMS | {MULTIPLICATIVE}, True)

    def _apply(self, a):
        return a

    def _apply_inverse(self, a):
        return a


class ZeroMap(TwistMap):
    """Sends everything to zero; the default delta of an Ore context."""

    kind = "zero"

    def __init__(self, domain: RingDescriptor):
        super().__init__(domain, {ADDITIVE, ANNIHILATES_ONE}, False)

    def _apply(self, a):
        return zero(self.domain)


class SigmaQComplex(TwistMap):
    """On the complexes: fix the real part, scale the imaginary part by q.

    An additive bijection respecting 1; multiplicative exactly when q = +-1.
    """

    kind = "sigma_q_complex"

    def __init__(self, q):
        q = as_rational(q)
        if q == 0:
            raise ValueError("q must be a nonzero rational")
        self.q = q
        claims = set(_BIJECTION_CLAIMS)
        if q in (1, -1):
            claims.add(MULTIPLICATIVE)
        super().__init__(COMPLEX_Q, claims, True)

    def _key(self):
        return (self.kind, self.domain, self.q)

    def _apply(self, a):
        re, im = a.value
        return RingElement(self.domain, (re, im * self.q))

    def _apply_inverse(self, a):
        re, im = a.value
        return RingElement(self.domain, (re, im / self.q))


class ConjugationMap(TwistMap):
    """Cayley-Dickson conjugation; an involution, multiplicative up to level 1."""

    kind = "conjugation"

    def __init__(self, domain: CayleyDickson):
        if not isinstance(domain, CayleyDickson):
            raise DescriptorMismatch("conjugation lives on Cayley-Dickson rings")
        claims = set(_BIJECTION_CLAIMS)
        if domain.level <= 1:
            claims.add(MULTIPLICATIVE)
        super().__init__(domain, claims, True)

    def _apply(self, a):
        return a.conjugate()

    def _apply_inverse(self, a):
        return a.conjugate()


class QuantumTorusSigma(TwistMap):
    """Algebra automorphism of a one-variable polynomial ring scaling the
    variable by a unit q, so the degree-n coefficient picks up q**n."""

    kind = "quantum_torus_sigma"

    def __init__(self, q, domain: Poly1 = Poly1()):
        q = as_rational(q)
        if q == 0:
            raise ValueError("q must be a unit (nonzero rational)")
        if not isinstance(domain, Poly1):
            raise DescriptorMismatch("quantum torus sigma lives on Poly1")
        self.q = q
        super().__init__(domain, _BIJECTION_CLAIMS | {MULTIPLICATIVE}, True)

    def _key(self):
        return (self.kind, self.domain, self.q)

    def _scale_by_power(self, a, q):
        return RingElement(
            self.domain, tuple((e, c * q**e) for e, c in a.value)
        )

    def _apply(self, a):
        return self._scale_by_power(a, self.q)

    def _apply_inverse(self, a):
        return self._scale_by_power(a, 1 / self.q)


class FormalDerivative(TwistMap):
    kind = "formal_derivative"

    def __init__(self, domain: Poly1 = Poly1()):
        if not isinstance(domain, Poly1):
            raise DescriptorMismatch("the formal derivative lives on Poly1")
        super().__init__(domain, {ADDITIVE, ANNIHILATES_ONE}, False)

    def _apply(self, a):
        return element(self.domain, [(e - 1, c * e) for e, c in a.value if e > 0])


class CoefficientDoubler(TwistMap):
    """Doubles the degree-1 coefficient of a one-variable polynomial and
    leaves every other coefficient alone; a non-multiplicative bijection."""

    kind = "coefficient_doubler"

    def __init__(self, domain: Poly1 = Poly1()):
        if not isinstance(domain, Poly1):
            raise DescriptorMismatch("the coefficient doubler lives on Poly1")
        super().__init__(domain, _BIJECTION_CLAIMS, True)

    def _apply(self, a):
        return RingElement(
            self.domain,
            tuple((e, c * 2 if e == 1 else c) for e, c in a.value),
        )

    def _apply_inverse(self, a):
        return RingElement(
            self.domain,
            tuple((e, c / 2 if e == 1 else c) for e, c in a.value),
        )


def _cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def _cantor_unpair(t: int) -> tuple[int, int]:
    w = (math.isqrt(8 * t + 1) - 1) // 2
    b = t - w * (w + 1) // 2
    return (w - b, b)


class CounterexampleSigma(TwistMap):
    """Additive bijection of a two-variable polynomial ring that squares the
    first-variable exponent and shuffles the pure second-variable monomials.

    On a monomial ``Y^a Z^b`` (variables named per the domain):

    * ``a > 0``            -> ``Y^(2a) Z^b``
    * ``a = 0``, ``b`` odd -> ``Z^((b + 1) / 2)``
    * ``a = 0``, ``b`` even, ``b > 0`` -> ``Y^(2u + 1) Z^v`` where ``(u, v)``
      is the Cantor unpairing of ``b / 2 - 1``
    * the identity monomial is fixed

    The three image families (even positive Y-exponent, pure-Z, odd
    Y-exponent) partition the monomials, so the map is a bijection with a
    closed-form inverse. Every multiple of ``Y`` is sent into the ideal
    generated by ``Y^2``.
    """

    kind = "counterexample_sigma"

    def __init__(self, domain: Poly2 = Poly2()):
        if not isinstance(domain, Poly2):
            raise DescriptorMismatch("counterexample sigma lives on Poly2")
        super().__init__(domain, _BIJECTION_CLAIMS, True)

    @staticmethod
    def image_exponents(a: int, b: int) -> tuple[int, int]:
        if a > 0:
            return (2 * a, b)
        if b == 0:
            return (0, 0)
        if b % 2 == 1:
            return (0, (b + 1) // 2)
        u, v = _cantor_unpair(b // 2 - 1)
        return (2 * u + 1, v)

    @staticmethod
    def preimage_exponents(a: int, b: int) -> tuple[int, int]:
        if a == 0 and b == 0:
            return (0, 0)
        if a == 0:
            return (0, 2 * b - 1)
        if a % 2 == 0:
            return (a // 2, b)
        return (0, 2 * (_cantor_pair((a - 1) // 2, b) + 1))

    def _apply(self, a):
        return element(
            self.domain,
            [(self.image_exponents(*e), c) for e, c in a.value],
        )

    def _apply_inverse(self, a):
        return element(
            self.domain,
            [(self.preimage_exponents(*e), c) for e, c in a.value],
        )


class TransposeMap(TwistMap):
    kind = "transpose"

    def __init__(self, domain: Matrix):
        if not isinstance(domain, Matrix):
            raise DescriptorMismatch("transpose lives on matrix rings")
        claims = set(_BIJECTION_CLAIMS)
        if domain.n == 1:
            claims.add(MULTIPLICATIVE)
        super().__init__(domain, claims, True)

    def _apply(self, a):
        return RingElement(self.domain, self.domain.transpose_value(a.value))

    def _apply_inverse(self, a):
        return self._apply(a)


class PowerMap(TwistMap):
    """e-fold application of a base map; negative e uses the base inverse."""

    kind = "power"

    def __init__(self, base: TwistMap, exponent: int):
        if exponent < 0 and not base.has_inverse:
            raise NoInverse("negative powers require an invertible base map")
        self.base = base
        self.exponent = exponent
        if exponent == 0:
            claims = IdentityMap(base.domain).claims
        else:
            claims = base.claims
        super().__init__(base.domain, claims, base.has_inverse or exponent == 0)

    def _key(self):
        return (self.kind, self.base._key(), self.exponent)

    def _apply(self, a):
        return power_apply(self.base, self.exponent, a)

    def _apply_inverse(self, a):
        return power_apply(self.base, -self.exponent, a)


class CompositionMap(TwistMap):
    """Function composition: ``Composition([f, g])`` applies ``g`` first."""

    kind = "composition"

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("composition needs at least one map")
        domain = parts[0].domain
        for m in parts:
            if m.domain != domain:
                raise DescriptorMismatch("composed maps must share a domain")
        self.parts = parts
        claims = set()
        if all(ADDITIVE in m.claims for m in parts):
            claims.add(ADDITIVE)
            if ANNIHILATES_ONE in parts[-1].claims:
                claims.add(ANNIHILATES_ONE)
        if all(RESPECTS_ONE in m.claims for m in parts):
            claims.add(RESPECTS_ONE)
        for prop in (MULTIPLICATIVE, INJECTIVE, SURJECTIVE):
            if all(prop in m.claims for m in parts):
                claims.add(prop)
        super().__init__(domain, claims, all(m.has_inverse for m in parts))

    def _key(self):
        return (self.kind, tuple(m._key() for m in self.parts))

    def _apply(self, a):
        for m in reversed(self.parts):
            a = m.apply(a)
        return a

    def _apply_inverse(self, a):
        for m in self.parts:
            a = m.apply_inverse(a)
        return a


def power_apply(m: TwistMap, e: int, a: RingElement) -> RingElement:
    """Apply ``m`` (or its inverse, for negative ``e``) ``|e|`` times."""
    if e >= 0:
        for _ in range(e):
            a = m.apply(a)
    else:
        for _ in range(-e):
            a = m.apply_inverse(a)
    return a


def verify_additive(m: TwistMap, trials: int, seed: int = 0) -> CheckReport:
    rng = Random(seed)
    for _ in range(trials):
        a = random_element(m.domain, rng)
        b = random_element(m.domain, rng)
        if m.apply(a + b) != m.apply(a) + m.apply(b):
            return CheckReport(
                name=f"{m.kind}:additive",
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"a={a}, b={b}",
                message="additivity violated",
            )
    return CheckReport(
        name=f"{m.kind}:additive",
        passed=True,
        trials=trials,
        seed=seed,
        message=no_violation_message(trials),
    )


def verify_unit_behavior(m: TwistMap) -> CheckReport:
    if RESPECTS_ONE in m.claims:
        expected, label = one(m.domain), "1 -> 1"
    elif ANNIHILATES_ONE in m.claims:
        expected, label = zero(m.domain), "1 -> 0"
    else:
        raise ValueError(f"{m.kind} makes no claim about the unit")
    got = m.apply(one(m.domain))
    okay = got == expected
    return CheckReport(
        name=f"{m.kind}:unit",
        passed=okay,
        trials=1,
        witness=None if okay else f"got {got}",
        message=f"exact check {label}" + ("" if okay else " failed"),
    )


def verify_multiplicative(m: TwistMap, trials: int, seed: int = 0) -> CheckReport:
    rng = Random(seed)
    for _ in range(trials):
        a = random_element(m.domain, rng)
        b = random_element(m.domain, rng)
        if m.apply(a * b) != m.apply(a) * m.apply(b):
            return CheckReport(
                name=f"{m.kind}:multiplicative",
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"a={a}, b={b}",
                message="multiplicativity violated",
            )
    return CheckReport(
        name=f"{m.kind}:multiplicative",
        passed=True,
        trials=trials,
        seed=seed,
        message=no_violation_message(trials),
    )


def verify_injective(m: TwistMap, trials: int, seed: int = 0) -> CheckReport:
    rng = Random(seed)
    for _ in range(trials):
        a = random_element(m.domain, rng)
        b = random_element(m.domain, rng)
        if a != b and m.apply(a) == m.apply(b):
            return CheckReport(
                name=f"{m.kind}:injective",
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"a={a}, b={b}",
                message="distinct inputs with equal images",
            )
    return CheckReport(
        name=f"{m.kind}:injective",
        passed=True,
        trials=trials,
        seed=seed,
        message=no_violation_message(trials),
    )


def verify_surjective(m: TwistMap, trials: int, seed: int = 0) -> CheckReport:
    """Witness surjectivity through the bundled inverse: targets round-trip."""
    name = f"{m.kind}:surjective"
    if not m.has_inverse:
        return CheckReport(
            name=name,
            passed=True,
            trials=0,
            seed=seed,
            message="skipped: no preimage chooser bundled",
        )
    rng = Random(seed)
    for _ in range(trials):
        b = random_element(m.domain, rng)
        if m.apply(m.apply_inverse(b)) != b:
            return CheckReport(
                name=name,
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"b={b}",
                message="inverse fails to produce a preimage",
            )
    return CheckReport(
        name=name,
        passed=True,
        trials=trials,
        seed=seed,
        message=f"preimages found for {trials} sampled targets",
    )


def verify_inverse_roundtrip(m: TwistMap, trials: int, seed: int = 0) -> CheckReport:
    name = f"{m.kind}:inverse"
    if not m.has_inverse:
        return CheckReport(name=name, passed=True, trials=0, seed=seed,
                           message="skipped: no inverse")
    rng = Random(seed)
    for _ in range(trials):
        a = random_element(m.domain, rng)
        if m.apply_inverse(m.apply(a)) != a or m.apply(m.apply_inverse(a)) != a:
            return CheckReport(
                name=name,
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"a={a}",
                message="round trip through the inverse failed",
            )
    return CheckReport(
        name=name, passed=True, trials=trials, seed=seed,
        message=f"round trip exact on {trials} samples",
    )


def verify_sigma_derivation(
    sigma: TwistMap, delta: TwistMap, trials: int, seed: int = 0
) -> CheckReport:
    """Falsifier for the twisted Leibniz rule d(ab) = s(a) d(b) + d(a) b."""
    rng = Random(seed)
    for _ in range(trials):
        a = random_element(delta.domain, rng)
        b = random_element(delta.domain, rng)
        if delta.apply(a * b) != sigma.apply(a) * delta.apply(b) + delta.apply(a) * b:
            return CheckReport(
                name="sigma-derivation",
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"a={a}, b={b}",
                message="twisted Leibniz rule violated",
            )
    return CheckReport(
        name="sigma-derivation",
        passed=True,
        trials=trials,
        seed=seed,
        message=no_violation_message(trials),
    )


_CLAIM_VERIFIERS = {
    ADDITIVE: verify_additive,
    MULTIPLICATIVE: verify_multiplicative,
    INJECTIVE: verify_injective,
    SURJECTIVE: verify_surjective,
}


def verify_claims(m: TwistMap, trials: int = 200, seed: int = 0) -> list[CheckReport]:
    """Run the verifier for every claim the map declares."""
    out = []
    if RESPECTS_ONE in m.claims or ANNIHILATES_ONE in m.claims:
        out.append(verify_unit_behavior(m))
    for claim in (ADDITIVE, MULTIPLICATIVE, INJECTIVE, SURJECTIVE):
        if claim in m.claims:
            out.append(_CLAIM_VERIFIERS[claim](m, trials, seed))
    if m.has_inverse:
        out.append(verify_inverse_roundtrip(m, trials, seed))
    return out
