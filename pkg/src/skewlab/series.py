"""Truncated twisted power and Laurent series with explicit precision.

A :class:`TruncatedSeries` stores the coefficient window ``start ..
precision - 1``; everything at or above ``precision`` is unknown, not zero.
Every operation computes the largest output precision it can actually prove
rather than clipping to a global cutoff, so no stored coefficient is ever
silently wrong. In particular the product of windows known below ``P`` and
``Q`` is known below ``min(P + start_other, Q + start_self)``.

An all-zero window has an *unknown* order: truncation can never certify that
a series is zero. Order is therefore ``int | None``.

The context is either a :class:`~skewlab.skewpoly.LaurentContext` (negative
exponents allowed) or an :class:`~skewlab.skewpoly.OreContext` whose delta is
the zero map (power series over a not-necessarily-invertible sigma).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .maps import power_apply
from .rings import (
    RingElement,
    UnsupportedDescriptor,
    is_associative_division_ring,
    one,
    random_element,
    zero,
)
from .skewpoly import LaurentContext, OreContext, _x_text, render_terms_text


def _series_ring(ctx):
    return ctx.ring


def _series_sigma(ctx):
    return ctx.sigma


def _validate_series_context(ctx):
    if isinstance(ctx, LaurentContext):
        return
    if isinstance(ctx, OreContext):
        if ctx.delta.kind != "zero":
            raise ValueError(
                "series over an Ore context require the zero delta"
            )
        return
    raise TypeError("expected a Laurent context or an Ore context with delta = 0")


@dataclass(frozen=True)
class TruncatedSeries:
    """Window ``start <= e < precision`` of exactly known coefficients.

    Canonical form strips leading zeros (advancing ``start``); an exhausted
    window has ``start == precision``.
    """

    context: object
    start: int
    coefficients: tuple[RingElement, ...]
    precision: int

    @classmethod
    def make(cls, context, start: int, coefficients, precision: int):
        _validate_series_context(context)
        ring = _series_ring(context)
        coefficients = tuple(coefficients)
        if start + len(coefficients) != precision:
            raise ValueError("window length must equal precision - start")
        if start > precision:
            raise ValueError("start must not exceed precision")
        for c in coefficients:
            if not isinstance(c, RingElement) or c.descriptor != ring:
                raise ValueError("coefficients must be elements of the context ring")
        while coefficients and coefficients[0].is_zero():
            coefficients = coefficients[1:]
            start += 1
        if start < 0 and isinstance(context, OreContext):
            raise ValueError("power series windows start at exponent 0 or above")
        return cls(context, start, coefficients, precision)

    @classmethod
    def from_terms(cls, context, pairs, precision: int):
        """Exact finite terms viewed through a window of the given precision."""
        ring = _series_ring(context)
        acc = {}
        for e, c in pairs:
            if e < precision:
                acc[e] = acc[e] + c if e in acc else c
        start = min(acc, default=precision)
        coeffs = [
            acc.get(e, zero(ring)) for e in range(start, precision)
        ]
        return cls.make(context, start, coeffs, precision)

    @classmethod
    def from_poly(cls, p, precision: int):
        """Truncate a polynomial (Ore or Laurent) to a series window."""
        return cls.from_terms(p.context, p.terms, precision)

    @classmethod
    def zero_window(cls, context, precision: int):
        return cls.make(context, precision, (), precision)

    @classmethod
    def one(cls, context, precision: int):
        return cls.from_terms(context, [(0, one(_series_ring(context)))], precision)

    def coefficient(self, e: int) -> RingElement:
        if e >= self.precision:
            raise ValueError(f"coefficient of X^{e} is beyond this precision")
        if e < self.start:
            return zero(_series_ring(self.context))
        return self.coefficients[e - self.start]

    def order(self):
        """Least exponent with a nonzero stored coefficient; ``None`` when the
        window is exhausted (the series may still be nonzero above it)."""
        for idx, c in enumerate(self.coefficients):
            if not c.is_zero():
                return self.start + idx
        return None

    def leading_coefficient(self) -> RingElement:
        o = self.order()
        if o is None:
            raise ValueError("order unknown at this precision")
        return self.coefficient(o)

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        start = min(self.start, precision)
        return TruncatedSeries.make(
            self.context,
            start,
            self.coefficients[: max(0, precision - self.start)],
            precision,
        )

    def _require_same_context(self, other):
        if not isinstance(other, TruncatedSeries) or other.context != self.context:
            raise ValueError("series come from different contexts")

    def __add__(self, other):
        self._require_same_context(other)
        ring = _series_ring(self.context)
        precision = min(self.precision, other.precision)
        start = min(self.start, other.start, precision)
        coeffs = [
            self._padded(e) + other._padded(e) for e in range(start, precision)
        ]
        return TruncatedSeries.make(self.context, start, coeffs, precision)

    def _padded(self, e: int) -> RingElement:
        if self.start <= e < self.precision:
            return self.coefficients[e - self.start]
        return zero(_series_ring(self.context))

    def __neg__(self):
        return TruncatedSeries(
            self.context,
            self.start,
            tuple(-c for c in self.coefficients),
            self.precision,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return series_mul(self, other)

    def is_exhausted(self) -> bool:
        return self.order() is None

    def __str__(self):
        terms = [
            (self.start + i, c)
            for i, c in enumerate(self.coefficients)
            if not c.is_zero()
        ]
        body = render_terms_text(
            _series_ring(self.context), terms, lambda e: _x_text("X", e)
        )
        tail = f"O(X^{self.precision})"
        return tail if body == "0" else f"{body} + {tail}"

    def __repr__(self):
        return f"<TruncatedSeries {self}>"


def series_mul(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    """Product, exact below ``min(p.precision + q.start, q.precision + p.start)``."""
    p._require_same_context(q)
    ctx = p.context
    ring = _series_ring(ctx)
    sigma = _series_sigma(ctx)
    precision = min(p.precision + q.start, q.precision + p.start)
    start = min(p.start + q.start, precision)
    acc = {e: zero(ring) for e in range(start, precision)}
    for i, r in enumerate(p.coefficients):
        m = p.start + i
        if r.is_zero():
            continue
        for jdx, s in enumerate(q.coefficients):
            n = q.start + jdx
            e = m + n
            if e >= precision:
                break
            if s.is_zero():
                continue
            acc[e] = acc[e] + r * power_apply(sigma, m, s)
    coeffs = [acc[e] for e in range(start, precision)]
    return TruncatedSeries.make(ctx, start, coeffs, precision)


def shift_scale(g: TruncatedSeries, k: RingElement, e: int) -> TruncatedSeries:
    """``g * (k X^e)`` for an exact single-term right multiplier.

    Because the multiplier is exact, the product stays known below
    ``g.precision + e``: each term maps ``(g_m X^m)(k X^e) = (g_m sigma^m(k))
    X^(m+e)``.
    """
    ctx = g.context
    sigma = _series_sigma(ctx)
    coeffs = [
        g.coefficients[i] * power_apply(sigma, g.start + i, k)
        for i in range(len(g.coefficients))
    ]
    return TruncatedSeries.make(ctx, g.start + e, coeffs, g.precision + e)


def poly_times_series(p, s: TruncatedSeries) -> TruncatedSeries:
    """Exact polynomial (left) times series: known below ``s.precision +
    order(p)`` since every contributing left factor is exact."""
    ctx = s.context
    sigma = _series_sigma(ctx)
    if p.is_zero():
        return TruncatedSeries.zero_window(ctx, s.precision)
    acc = None
    for m, r in p.terms:
        coeffs = [r * power_apply(sigma, m, c) for c in s.coefficients]
        w = TruncatedSeries.make(ctx, s.start + m, coeffs, s.precision + m)
        acc = w if acc is None else acc + w
    return acc


def series_times_poly(s: TruncatedSeries, p) -> TruncatedSeries:
    """Series times exact polynomial (right): a sum of shift-scale products,
    known below ``s.precision + order(p)``."""
    if p.is_zero():
        return TruncatedSeries.zero_window(s.context, s.precision)
    acc = None
    for e, k in p.terms:
        w = shift_scale(s, k, e)
        acc = w if acc is None else acc + w
    return acc


def series_order(p: TruncatedSeries):
    return p.order()


def series_leading_coefficient(p: TruncatedSeries) -> RingElement:
    return p.leading_coefficient()


@dataclass(frozen=True)
class SeriesReduceStep:
    generator_index: int
    multiplier: RingElement
    shift: int


def series_reduce_step(
    q: TruncatedSeries, generators
) -> tuple[TruncatedSeries, SeriesReduceStep]:
    """One order-raising step: subtract ``g * (k X^shift)`` where the single
    term is solved so the leading coefficients cancel exactly.

    Requires an associative division coefficient ring; the first generator
    whose order does not exceed ``order(q)`` is used.
    """
    ctx = q.context
    ring = _series_ring(ctx)
    if not is_associative_division_ring(ring):
        raise UnsupportedDescriptor(
            "series reduction needs an associative division coefficient ring"
        )
    sigma = _series_sigma(ctx)
    if not sigma.has_inverse:
        raise ValueError("series reduction needs a sigma preimage chooser")
    oq = q.order()
    if oq is None:
        raise ValueError("order of the input is unknown at this precision")
    generators = list(generators)
    pick = None
    for idx, g in enumerate(generators):
        q._require_same_context(g)
        og = g.order()
        if og is not None and og <= oq:
            pick = idx
            break
    if pick is None:
        raise ValueError("no generator of order <= order of the input")
    g = generators[pick]
    d = g.order()
    c = g.leading_coefficient()
    r = q.leading_coefficient()
    k = power_apply(sigma, -d, c.inverse() * r)
    shift = oq - d
    q2 = q - shift_scale(g, k, shift)
    new_order = q2.order()
    if new_order is not None and new_order <= oq:
        raise AssertionError("reduction step failed to raise the order")
    return q2, SeriesReduceStep(pick, k, shift)


def series_reduce_chain(
    q: TruncatedSeries, generators
) -> tuple[list[SeriesReduceStep], TruncatedSeries]:
    """Iterate :func:`series_reduce_step` until the window is exhausted."""
    steps = []
    work = q
    while work.order() is not None:
        work, step = series_reduce_step(work, generators)
        steps.append(step)
    return steps, work


def replay_reduction(
    generators, steps, remainder: TruncatedSeries
) -> TruncatedSeries:
    """Rebuild ``sum_i g_(idx_i) * (k_i X^(shift_i)) + remainder``."""
    acc = remainder
    for step in steps:
        acc = acc + shift_scale(
            list(generators)[step.generator_index], step.multiplier, step.shift
        )
    return acc


def agree_below(a: TruncatedSeries, b: TruncatedSeries, bound: int) -> bool:
    """Exact coefficient agreement for every exponent below ``bound``."""
    if bound > min(a.precision, b.precision):
        raise ValueError("bound exceeds a known precision")
    low = min(a.start, b.start, bound)
    return all(a._padded(e) == b._padded(e) for e in range(low, bound))


def random_series(ctx, rng: Random, precision: int, min_exp: int = 0,
                  max_terms: int = 3) -> TruncatedSeries:
    ring = _series_ring(ctx)
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        terms.append(
            (rng.randint(min_exp, precision - 1), random_element(ring, rng))
        )
    return TruncatedSeries.from_terms(ctx, terms, precision)
