"""Twisted polynomial rings over the coefficient tower.

Two one-variable constructions share the carrier "sorted term list":

* the Ore-style ring, where multiplication is the biadditive extension of
  ``(r X^m)(s X^n) = sum_i (r * pi_i_m(s)) X^(i+n)`` and ``pi_i_m`` is the sum
  of all C(m, i) compositions of i copies of sigma and m - i copies of delta;
* the skew Laurent ring, where ``(r X^m)(s X^n) = (r * sigma^m(s)) X^(m+n)``
  and negative powers of sigma go through the bundled exact inverse.

Multiplication in either ring is generally non-associative; powers of X sit
in the middle and right nuclei, which :func:`nucleus_check_power` samples.
An iterated multi-variable Laurent ring over pairwise-commuting twists stores
flattened exponent vectors.

Polynomials are immutable; the degree of the zero polynomial is the
``NEG_INFINITY`` sentinel (and its order ``POS_INFINITY``), never an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .maps import (
    ADDITIVE,
    ANNIHILATES_ONE,
    RESPECTS_ONE,
    NoInverse,
    TwistMap,
    power_apply,
)
from .reports import CheckReport, no_violation_message
from .rings import (
    RingDescriptor,
    RingElement,
    UnsupportedDescriptor,
    is_associative_division_ring,
    one,
    random_element,
    zero,
)

NEG_INFINITY = float("-inf")
POS_INFINITY = float("inf")


class ContextMismatch(ValueError):
    """Polynomials from different contexts cannot be combined."""


def _require_claims(m: TwistMap, needed, role: str):
    missing = set(needed) - m.claims
    if missing:
        raise ValueError(f"{role} map must claim {sorted(missing)}")


@dataclass(frozen=True)
class OreContext:
    """Ring plus (sigma, delta); unit behavior is checked exactly on entry."""

    ring: RingDescriptor
    sigma: TwistMap
    delta: TwistMap

    def __post_init__(self):
        if self.sigma.domain != self.ring or self.delta.domain != self.ring:
            raise ContextMismatch("sigma and delta must act on the context ring")
        _require_claims(self.sigma, {ADDITIVE, RESPECTS_ONE}, "sigma")
        _require_claims(self.delta, {ADDITIVE, ANNIHILATES_ONE}, "delta")
        if self.sigma.apply(one(self.ring)) != one(self.ring):
            raise ValueError("sigma(1) != 1")
        if not self.delta.apply(one(self.ring)).is_zero():
            raise ValueError("delta(1) != 0")


@dataclass(frozen=True)
class LaurentContext:
    """Ring plus an invertible sigma; the inverse is spot-checked on entry."""

    ring: RingDescriptor
    sigma: TwistMap

    def __post_init__(self):
        if self.sigma.domain != self.ring:
            raise ContextMismatch("sigma must act on the context ring")
        _require_claims(self.sigma, {ADDITIVE, RESPECTS_ONE}, "sigma")
        if not self.sigma.has_inverse:
            raise NoInverse("a Laurent context needs an invertible sigma")
        if self.sigma.apply(one(self.ring)) != one(self.ring):
            raise ValueError("sigma(1) != 1")
        rng = Random(0)
        for _ in range(200):
            a = random_element(self.ring, rng)
            if self.sigma.apply_inverse(self.sigma.apply(a)) != a:
                raise ValueError(f"sigma inverse round trip failed at {a}")


@dataclass(frozen=True)
class IteratedLaurentContext:
    """Pairwise-commuting invertible twists, one per Laurent variable."""

    ring: RingDescriptor
    sigmas: tuple[TwistMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        if not self.sigmas:
            raise ValueError("need at least one sigma")
        for s in self.sigmas:
            if s.domain != self.ring:
                raise ContextMismatch("every sigma must act on the context ring")
            _require_claims(s, {ADDITIVE, RESPECTS_ONE}, "sigma")
            if not s.has_inverse:
                raise NoInverse("iterated contexts need invertible sigmas")
            if s.apply(one(self.ring)) != one(self.ring):
                raise ValueError("sigma(1) != 1")
        rng = Random(0)
        for i in range(len(self.sigmas)):
            for j in range(i + 1, len(self.sigmas)):
                si, sj = self.sigmas[i], self.sigmas[j]
                for _ in range(100):
                    a = random_element(self.ring, rng)
                    if si.apply(sj.apply(a)) != sj.apply(si.apply(a)):
                        raise ValueError(
                            f"sigmas {i} and {j} fail to commute at {a}"
                        )


def pi_row(ctx: OreContext, m: int, s: RingElement) -> list[RingElement]:
    """All values ``[pi_0^m(s), ..., pi_m^m(s)]`` by the two-term recursion.

    Peeling the first letter of each sigma/delta word gives
    ``pi_i^m = sigma . pi_(i-1)^(m-1) + delta . pi_i^(m-1)``, so one dynamic
    programming pass per element replaces the C(m, i) word sum.
    """
    if m < 0:
        raise ValueError("m must be a natural number")
    row = [s]
    for _ in range(m):
        prev = row
        row = []
        for i in range(len(prev) + 1):
            parts = []
            if i >= 1:
                parts.append(ctx.sigma.apply(prev[i - 1]))
            if i < len(prev):
                parts.append(ctx.delta.apply(prev[i]))
            acc = parts[0]
            for p in parts[1:]:
                acc = acc + p
            row.append(acc)
    return row


def pi(ctx: OreContext, m: int, i: int, s: RingElement) -> RingElement:
    """``pi_i^m(s)``; zero whenever ``i`` falls outside ``0..m``."""
    if i < 0 or i > m:
        return zero(ctx.ring)
    return pi_row(ctx, m, s)[i]


def _canon_terms(ring: RingDescriptor, pairs, allow_negative: bool):
    acc: dict[int, RingElement] = {}
    for e, c in pairs:
        if not isinstance(e, int):
            raise ValueError(f"exponent must be an integer, got {e!r}")
        if not allow_negative and e < 0:
            raise ValueError("negative exponents are not allowed here")
        if not isinstance(c, RingElement):
            raise TypeError("coefficients must be RingElements")
        if c.descriptor != ring:
            raise ContextMismatch("coefficient descriptor does not match the ring")
        acc[e] = acc[e] + c if e in acc else c
    return tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))


@dataclass(frozen=True)
class _TermPoly:
    """Shared carrier: ascending (exponent, coefficient) pairs, no zeros."""

    context: object
    terms: tuple[tuple[int, RingElement], ...]

    _allow_negative = False
    _indeterminate = "X"

    @classmethod
    def from_terms(cls, context, pairs):
        return cls(context, _canon_terms(context.ring, pairs, cls._allow_negative))

    @classmethod
    def zero(cls, context):
        return cls(context, ())

    @classmethod
    def constant(cls, context, coeff: RingElement):
        return cls.from_terms(context, [(0, coeff)])

    @classmethod
    def one(cls, context):
        return cls.constant(context, one(context.ring))

    @classmethod
    def monomial(cls, context, coeff: RingElement, exponent: int):
        return cls.from_terms(context, [(exponent, coeff)])

    @classmethod
    def x(cls, context, exponent: int = 1):
        return cls.monomial(context, one(context.ring), exponent)

    def _require_same_context(self, other):
        if self.__class__ is not other.__class__:
            raise ContextMismatch(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if self.context != other.context:
            raise ContextMismatch("polynomials come from different contexts")

    def __add__(self, other):
        self._require_same_context(other)
        return self.__class__(
            self.context,
            _canon_terms(
                self.context.ring,
                list(self.terms) + list(other.terms),
                self._allow_negative,
            ),
        )

    def __neg__(self):
        return self.__class__(
            self.context, tuple((e, -c) for e, c in self.terms)
        )

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Largest exponent, or the NEG_INFINITY sentinel for zero."""
        return self.terms[-1][0] if self.terms else NEG_INFINITY

    def order(self):
        """Smallest exponent, or the POS_INFINITY sentinel for zero."""
        return self.terms[0][0] if self.terms else POS_INFINITY

    def leading_coefficient(self) -> RingElement:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.terms[-1][1]

    def coefficient(self, e: int) -> RingElement:
        for exp, c in self.terms:
            if exp == e:
                return c
        return zero(self.context.ring)

    def __str__(self):
        return render_terms_text(
            self.context.ring, self.terms, lambda e: _x_text(self._indeterminate, e)
        )

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


def _x_text(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def render_terms_text(ring: RingDescriptor, terms, x_text) -> str:
    """Canonical text: ascending exponents, explicit ``*``, parentheses around
    compound coefficients; grammar-compatible so output re-parses exactly."""
    pieces: list[tuple[int, str]] = []
    for e, c in terms:
        xp = x_text(e)
        cterms = ring.render_terms(c.value)
        if not xp:
            pieces.extend(cterms)
            continue
        if len(cterms) == 1:
            sign, text = cterms[0]
            pieces.append((sign, xp if text == "1" else f"{text}*{xp}"))
        else:
            pieces.append((1, f"({ring.render_value(c.value)})*{xp}"))
    if not pieces:
        return "0"
    sign, text = pieces[0]
    out = ["-" + text if sign < 0 else text]
    for sign, text in pieces[1:]:
        out.append((" - " if sign < 0 else " + ") + text)
    return "".join(out)


class OrePoly(_TermPoly):
    """Element of the twisted polynomial ring; exponents in the naturals."""

    _allow_negative = False

    def __mul__(self, other):
        self._require_same_context(other)
        ctx = self.context
        acc: dict[int, RingElement] = {}
        for m, r in self.terms:
            for n, s in other.terms:
                row = pi_row(ctx, m, s)
                for i, val in enumerate(row):
                    c = r * val
                    if c.is_zero():
                        continue
                    e = i + n
                    acc[e] = acc[e] + c if e in acc else c
        return OrePoly(
            ctx, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        )


class LaurentPoly(_TermPoly):
    """Element of the skew Laurent ring; exponents range over the integers."""

    _allow_negative = True

    def __mul__(self, other):
        self._require_same_context(other)
        ctx = self.context
        acc: dict[int, RingElement] = {}
        for m, r in self.terms:
            for n, s in other.terms:
                c = r * power_apply(ctx.sigma, m, s)
                if c.is_zero():
                    continue
                e = m + n
                acc[e] = acc[e] + c if e in acc else c
        return LaurentPoly(
            ctx, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        )


@dataclass(frozen=True)
class MultiLaurentPoly:
    """Iterated Laurent element: finitely supported exponent-vector terms.

    The product twists the right coefficient by ``sigma_1^(u_1) o ... o
    sigma_n^(u_n)`` (innermost last variable first); pairwise commutation
    makes the nesting order immaterial.
    """

    context: IteratedLaurentContext
    terms: tuple[tuple[tuple[int, ...], RingElement], ...]

    @classmethod
    def from_terms(cls, context, pairs):
        width = len(context.sigmas)
        acc: dict[tuple[int, ...], RingElement] = {}
        for exps, c in pairs:
            exps = tuple(exps)
            if len(exps) != width or not all(isinstance(e, int) for e in exps):
                raise ValueError(f"exponent vector must have {width} integers")
            if c.descriptor != context.ring:
                raise ContextMismatch("coefficient descriptor mismatch")
            acc[exps] = acc[exps] + c if exps in acc else c
        return cls(
            context, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        )

    @classmethod
    def zero(cls, context):
        return cls(context, ())

    @classmethod
    def constant(cls, context, coeff: RingElement):
        width = len(context.sigmas)
        return cls.from_terms(context, [((0,) * width, coeff)])

    @classmethod
    def one(cls, context):
        return cls.constant(context, one(context.ring))

    @classmethod
    def variable(cls, context, index: int, exponent: int = 1):
        """The monomial ``X_(index+1) ^ exponent``."""
        width = len(context.sigmas)
        exps = [0] * width
        exps[index] = exponent
        return cls.from_terms(context, [(tuple(exps), one(context.ring))])

    def _require_same_context(self, other):
        if not isinstance(other, MultiLaurentPoly) or self.context != other.context:
            raise ContextMismatch("polynomials come from different contexts")

    def __add__(self, other):
        self._require_same_context(other)
        return MultiLaurentPoly.from_terms(
            self.context, list(self.terms) + list(other.terms)
        )

    def __neg__(self):
        return MultiLaurentPoly(
            self.context, tuple((e, -c) for e, c in self.terms)
        )

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other):
        self._require_same_context(other)
        ctx = self.context
        acc: dict[tuple[int, ...], RingElement] = {}
        for u, r in self.terms:
            for v, s in other.terms:
                t = s
                for sig, e in reversed(list(zip(ctx.sigmas, u))):
                    t = power_apply(sig, e, t)
                c = r * t
                if c.is_zero():
                    continue
                w = tuple(a + b for a, b in zip(u, v))
                acc[w] = acc[w] + c if w in acc else c
        return MultiLaurentPoly(
            ctx, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        )

    def __str__(self):
        def x_text(exps):
            pieces = [
                _x_text(f"X{i + 1}", e) for i, e in enumerate(exps) if e != 0
            ]
            return "*".join(pieces)

        return render_terms_text(self.context.ring, self.terms, x_text)

    def __repr__(self):
        return f"<MultiLaurentPoly {self}>"


def poly_associator(p, q, r):
    """``(pq)r - p(qr)`` in whichever twisted ring the operands share."""
    return (p * q) * r - p * (q * r)


def random_ore_poly(ctx, rng: Random, max_degree: int = 4, max_terms: int = 3):
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        terms.append((rng.randint(0, max_degree), random_element(ctx.ring, rng)))
    return OrePoly.from_terms(ctx, terms)


def random_laurent_poly(
    ctx, rng: Random, min_exp: int = -3, max_exp: int = 3, max_terms: int = 3
):
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        terms.append((rng.randint(min_exp, max_exp), random_element(ctx.ring, rng)))
    return LaurentPoly.from_terms(ctx, terms)


def random_multi_poly(ctx, rng: Random, max_abs_exp: int = 2, max_terms: int = 3):
    width = len(ctx.sigmas)
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-max_abs_exp, max_abs_exp) for _ in range(width))
        terms.append((exps, random_element(ctx.ring, rng)))
    return MultiLaurentPoly.from_terms(ctx, terms)


def nucleus_check_power(ctx, n: int, trials: int, seed: int = 0) -> CheckReport:
    """Sample ``(p, X^n, q)`` and ``(p, q, X^n)`` associators; both must vanish.

    Works for Ore contexts (n in the naturals) and Laurent contexts (any n).
    """
    if isinstance(ctx, OreContext):
        if n < 0:
            raise ValueError("Ore contexts have no negative powers of X")
        xp = OrePoly.x(ctx, n)
        sample = random_ore_poly
    elif isinstance(ctx, LaurentContext):
        xp = LaurentPoly.x(ctx, n)
        sample = random_laurent_poly
    else:
        raise TypeError("expected an Ore or Laurent context")
    rng = Random(seed)
    for _ in range(trials):
        p = sample(ctx, rng)
        q = sample(ctx, rng)
        middle = poly_associator(p, xp, q)
        right = poly_associator(p, q, xp)
        if not (middle.is_zero() and right.is_zero()):
            slot = "middle" if not middle.is_zero() else "right"
            return CheckReport(
                name=f"nucleus:X^{n}",
                passed=False,
                trials=trials,
                seed=seed,
                witness=f"slot={slot}, p={p}, q={q}",
                message=f"X^{n} fell out of the {slot} nucleus",
            )
    return CheckReport(
        name=f"nucleus:X^{n}",
        passed=True,
        trials=trials,
        seed=seed,
        message=no_violation_message(trials),
    )


def left_normal_form(p: OrePoly) -> tuple[tuple[int, RingElement], ...]:
    """Rewrite ``p = sum_e r_e X^e`` as ``sum_e X^e r'_e`` with exact
    right coefficients ``r'_e = sigma^(-e)``-preimages, peeled top down."""
    ctx = p.context
    if not ctx.sigma.has_inverse:
        raise NoInverse("left normal form needs a sigma preimage chooser")
    pairs = []
    work = p
    while work.terms:
        n = work.degree()
        r = work.leading_coefficient()
        rp = power_apply(ctx.sigma, -n, r)
        pairs.append((n, rp))
        work = work - OrePoly.x(ctx, n) * OrePoly.constant(ctx, rp)
        if work.terms and work.degree() >= n:
            raise AssertionError("left normal form failed to reduce the degree")
    return tuple(sorted(pairs))


def assemble_left_normal(ctx: OreContext, pairs) -> OrePoly:
    """Multiply a left normal form back out: ``sum_e X^e * r'_e``."""
    acc = OrePoly.zero(ctx)
    for e, rp in pairs:
        acc = acc + OrePoly.x(ctx, e) * OrePoly.constant(ctx, rp)
    return acc


def polynomial_part(p: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Factor ``p = (p X^(-m)) X^m`` with ``m = order(p)``; the first factor
    has order zero and multiplying back reproduces ``p`` exactly."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no polynomial part")
    m = p.order()
    q = p * LaurentPoly.x(p.context, -m)
    return q, m


@dataclass(frozen=True)
class ReductionStep:
    generator_index: int
    shift: int
    multipliers: tuple[RingElement, ...]


@dataclass(frozen=True)
class ReductionTrace:
    """Record of right-division steps: each one subtracted
    ``generator * (multiplier X^shift)`` (extra multipliers, if ever present,
    apply as nested right products). Replaying against the same generator
    list reconstructs the dividend exactly."""

    steps: tuple[ReductionStep, ...]
    remainder: OrePoly

    def replay(self, generators) -> OrePoly:
        ctx = self.remainder.context
        acc = OrePoly.zero(ctx)
        for step in self.steps:
            g = generators[step.generator_index]
            t = g * OrePoly.monomial(ctx, step.multipliers[0], step.shift)
            for extra in step.multipliers[1:]:
                t = t * OrePoly.constant(ctx, extra)
            acc = acc + t
        return acc + self.remainder


def right_divide(p: OrePoly, generators) -> ReductionTrace:
    """Greedy highest-degree cancellation of ``p`` by right multiples of the
    generators, over an associative division coefficient ring.

    While ``deg p >= d_min``, the first generator ``g`` with ``deg g = d <=
    n = deg p`` is used: with ``c = lc(g)`` and ``r = lc(p)``, the multiplier
    ``s = sigma^(-d)(c^(-1) r)`` makes ``g * (s X^(n-d))`` match the leading
    term, so each step strictly lowers the degree. Terminates with a
    remainder of degree below the least generator degree.
    """
    ctx = p.context
    if not is_associative_division_ring(ctx.ring):
        raise UnsupportedDescriptor(
            "right division needs an associative division coefficient ring"
        )
    if not ctx.sigma.has_inverse:
        raise NoInverse("right division needs an invertible sigma")
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    for g in generators:
        if g.is_zero():
            raise ValueError("generators must be nonzero")
        p._require_same_context(g)
    min_deg = min(g.degree() for g in generators)
    steps = []
    work = p
    while work.terms and work.degree() >= min_deg:
        n = work.degree()
        r = work.leading_coefficient()
        idx = next(i for i, g in enumerate(generators) if g.degree() <= n)
        g = generators[idx]
        d = g.degree()
        c = g.leading_coefficient()
        s = power_apply(ctx.sigma, -d, c.inverse() * r)
        work = work - g * OrePoly.monomial(ctx, s, n - d)
        steps.append(ReductionStep(idx, n - d, (s,)))
        if work.terms and work.degree() >= n:
            raise AssertionError("right division failed to reduce the degree")
    return ReductionTrace(tuple(steps), work)
