"""skewlab: exact computer algebra for twisted polynomial and series rings.

The tower of exact coefficient rings lives in :mod:`skewlab.rings`, additive
twist maps in :mod:`skewlab.maps`, the twisted polynomial rings (Ore
extensions and skew Laurent rings) in :mod:`skewlab.skewpoly`, truncated skew
series in :mod:`skewlab.series`, the finite-generation experiment harness in
:mod:`skewlab.noetherian`, and the expression grammar plus command line in
:mod:`skewlab.expr`, :mod:`skewlab.config`, :mod:`skewlab.suites`, and
:mod:`skewlab.cli`.
"""

from .rings import (
    COMPLEX_Q,
    OCTONIONS_Q,
    QUATERNIONS_Q,
    RATIONALS,
    SEDENIONS_Q,
    CayleyDickson,
    DescriptorMismatch,
    JordanPlus,
    Matrix,
    NotInvertible,
    Poly1,
    Poly2,
    Rationals,
    RingDescriptor,
    RingElement,
    UnsupportedDescriptor,
    associator,
    basis_element,
    element,
    monomial_element,
    monomial_ideal_member,
    one,
    random_element,
    scalar,
    zero,
)

__all__ = [
    "COMPLEX_Q",
    "OCTONIONS_Q",
    "QUATERNIONS_Q",
    "RATIONALS",
    "SEDENIONS_Q",
    "CayleyDickson",
    "DescriptorMismatch",
    "JordanPlus",
    "Matrix",
    "NotInvertible",
    "Poly1",
    "Poly2",
    "Rationals",
    "RingDescriptor",
    "RingElement",
    "UnsupportedDescriptor",
    "associator",
    "basis_element",
    "element",
    "monomial_element",
    "monomial_ideal_member",
    "one",
    "random_element",
    "scalar",
    "zero",
]
