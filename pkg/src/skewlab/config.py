"""Session configuration: JSON records for rings, maps, and structures.

Rationals in config files are strings ("3/4" or "0.25") or integers, never
floats, so exactness survives the trip through JSON. A session names one
structure:

* ``ore``              -- needs ``sigma`` (``delta`` defaults to the zero map)
* ``laurent``          -- needs an invertible ``sigma``
* ``iterated_laurent`` -- needs ``sigmas``, a list of invertible maps
* ``power_series``     -- needs ``sigma`` and ``precision``
* ``laurent_series``   -- needs an invertible ``sigma`` and ``precision``

Ring records: ``"rationals"``, ``{"cayley_dickson": {"level": 2}}``,
``{"jordan_plus": {"base": ...}}``, ``{"poly1": {"variable": "Y"}}``,
``{"poly2": {"variables": ["Y", "Z"]}}``, ``{"matrix": {"n": 2, "base":
"rationals"}}``. Map records carry a ``kind`` plus parameters, e.g.
``{"kind": "sigma_q_complex", "q": "2"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .expr import EvalTarget, evaluate, parse
from .maps import (
    CoefficientDoubler,
    CompositionMap,
    ConjugationMap,
    CounterexampleSigma,
    FormalDerivative,
    IdentityMap,
    PowerMap,
    QuantumTorusSigma,
    SigmaQComplex,
    TransposeMap,
    TwistMap,
    ZeroMap,
)
from .rings import (
    CayleyDickson,
    JordanPlus,
    Matrix,
    Poly1,
    Poly2,
    Rationals,
    RingDescriptor,
    as_rational,
)
from .skewpoly import IteratedLaurentContext, LaurentContext, OreContext

STRUCTURES = ("ore", "laurent", "iterated_laurent", "power_series", "laurent_series")


class ConfigError(ValueError):
    """Malformed or inconsistent session configuration."""


def parse_descriptor(obj) -> RingDescriptor:
    if obj == "rationals":
        return Rationals()
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ConfigError(f"unrecognized ring record: {obj!r}")
    (kind, params), = obj.items()
    params = params or {}
    try:
        if kind == "rationals":
            return Rationals()
        if kind == "cayley_dickson":
            base = params.get("base", "rationals")
            return CayleyDickson(int(params["level"]), parse_descriptor(base))
        if kind == "jordan_plus":
            return JordanPlus(parse_descriptor(params["base"]))
        if kind == "poly1":
            return Poly1(params.get("variable", "Y"))
        if kind == "poly2":
            return Poly2(tuple(params.get("variables", ("Y", "Z"))))
        if kind == "matrix":
            base = params.get("base", "rationals")
            return Matrix(int(params["n"]), parse_descriptor(base))
    except KeyError as exc:
        raise ConfigError(f"ring record {kind!r} is missing {exc}") from None
    raise ConfigError(f"unknown ring kind {kind!r}")


def parse_map(obj, ring: RingDescriptor) -> TwistMap:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigError(f"map record needs a 'kind': {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "identity":
            m = IdentityMap(ring)
        elif kind == "zero":
            m = ZeroMap(ring)
        elif kind == "sigma_q_complex":
            m = SigmaQComplex(as_rational(obj["q"]))
        elif kind == "conjugation":
            m = ConjugationMap(ring)
        elif kind == "quantum_torus_sigma":
            m = QuantumTorusSigma(as_rational(obj["q"]), ring)
        elif kind == "formal_derivative":
            m = FormalDerivative(ring)
        elif kind == "coefficient_doubler":
            m = CoefficientDoubler(ring)
        elif kind == "counterexample_sigma":
            m = CounterexampleSigma(ring)
        elif kind == "transpose":
            m = TransposeMap(ring)
        elif kind == "power":
            m = PowerMap(parse_map(obj["base"], ring), int(obj["e"]))
        elif kind == "composition":
            m = CompositionMap([parse_map(rec, ring) for rec in obj["maps"]])
        else:
            raise ConfigError(f"unknown map kind {kind!r}")
    except KeyError as exc:
        raise ConfigError(f"map record {kind!r} is missing {exc}") from None
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"map record {kind!r}: {exc}") from None
    if m.domain != ring:
        raise ConfigError(
            f"map {kind!r} acts on {m.domain}, but the session ring is {ring}"
        )
    return m


@dataclass
class Session:
    """A fully validated configuration with its built contexts."""

    structure: str
    ring: RingDescriptor
    sigma: TwistMap | None
    delta: TwistMap | None
    sigmas: tuple[TwistMap, ...] | None
    precision: int | None
    target: EvalTarget

    def parse(self, text: str):
        return parse(text, self.target.profile())

    def evaluate(self, text: str):
        return evaluate(self.parse(text), self.target)

    def maps(self) -> list[tuple[str, TwistMap]]:
        out = []
        if self.sigma is not None:
            out.append(("sigma", self.sigma))
        if self.delta is not None:
            out.append(("delta", self.delta))
        if self.sigmas is not None:
            out.extend((f"sigma{i + 1}", s) for i, s in enumerate(self.sigmas))
        return out


def load_session(source) -> Session:
    """Build a session from a dict, a JSON string, or a file path."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            raw = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
    elif isinstance(source, dict):
        raw = source
    else:
        raise ConfigError(f"unsupported config source: {type(source).__name__}")

    structure = raw.get("structure")
    if structure not in STRUCTURES:
        raise ConfigError(
            f"structure must be one of {', '.join(STRUCTURES)}; got {structure!r}"
        )
    if "ring" not in raw:
        raise ConfigError("config needs a 'ring' record")
    ring = parse_descriptor(raw["ring"])

    sigma = delta = None
    sigmas = None
    precision = raw.get("precision")

    try:
        if structure == "iterated_laurent":
            recs = raw.get("sigmas")
            if not recs:
                raise ConfigError("iterated_laurent needs a 'sigmas' list")
            sigmas = tuple(parse_map(rec, ring) for rec in recs)
            target = EvalTarget(
                structure,
                ring,
                iterated_context=IteratedLaurentContext(ring, sigmas),
            )
        else:
            if "sigma" not in raw:
                raise ConfigError(f"{structure} needs a 'sigma' map")
            sigma = parse_map(raw["sigma"], ring)
            if structure == "ore":
                delta = (
                    parse_map(raw["delta"], ring)
                    if "delta" in raw
                    else ZeroMap(ring)
                )
                target = EvalTarget(
                    structure, ring, ore_context=OreContext(ring, sigma, delta)
                )
            elif structure == "laurent":
                if "delta" in raw:
                    raise ConfigError("laurent structures take no delta")
                target = EvalTarget(
                    structure, ring, laurent_context=LaurentContext(ring, sigma)
                )
            else:  # series
                if not isinstance(precision, int) or precision < 1:
                    raise ConfigError(
                        "series structures need an integer 'precision' >= 1"
                    )
                if structure == "laurent_series" or sigma.has_inverse:
                    ctx = LaurentContext(ring, sigma)
                else:
                    ctx = OreContext(ring, sigma, ZeroMap(ring))
                target = EvalTarget(
                    structure,
                    ring,
                    series_context=ctx,
                    precision=precision,
                )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from None

    return Session(
        structure=structure,
        ring=ring,
        sigma=sigma,
        delta=delta,
        sigmas=sigmas,
        precision=precision,
        target=target,
    )
