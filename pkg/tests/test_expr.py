"""Grammar tests: parsing, canonical rendering, association preservation."""

from fractions import Fraction
from random import Random

import pytest

from skewlab.expr import (
    Bin,
    EvalError,
    EvalTarget,
    ExprError,
    ExprProfile,
    Lit,
    Mat,
    Name,
    Neg,
    OTail,
    constant_table,
    eval_element,
    evaluate,
    parse,
    render_ast,
)
from skewlab.maps import (
    ConjugationMap,
    FormalDerivative,
    IdentityMap,
    SigmaQComplex,
)
from skewlab.rings import (
    COMPLEX_Q,
    QUATERNIONS_Q,
    RATIONALS,
    JordanPlus,
    Matrix,
    Poly1,
    Poly2,
    element,
    monomial_element,
    one,
    scalar,
)
from skewlab.series import TruncatedSeries
from skewlab.skewpoly import (
    LaurentContext,
    LaurentPoly,
    OreContext,
    OrePoly,
    poly_associator,
)

P1 = Poly1()


def ore_target():
    ctx = OreContext(P1, IdentityMap(P1), FormalDerivative(P1))
    return EvalTarget("ore", P1, ore_context=ctx)


def laurent_target():
    ctx = LaurentContext(COMPLEX_Q, SigmaQComplex(2))
    return EvalTarget("laurent", COMPLEX_Q, laurent_context=ctx)


def series_target(precision=16):
    ctx = LaurentContext(RATIONALS, IdentityMap(RATIONALS))
    return EvalTarget(
        "power_series", RATIONALS, series_context=ctx, precision=precision
    )


def test_parse_coefficient_times_power():
    profile = ExprProfile("ore", P1)
    ast = parse("(2 - Y + 3*Y^2)*X^2", profile)
    assert isinstance(ast, Bin) and ast.op == "*"
    assert ast.right == Name("X", 2)
    value = evaluate(ast, ore_target())
    coeff = scalar(P1, 2) - monomial_element(P1, 1) + monomial_element(P1, 2, 3)
    assert value == OrePoly.monomial(ore_target().ore_context, coeff, 2)


def test_negative_exponent_rejected_in_ore():
    with pytest.raises(ExprError) as err:
        parse("X^-1", ExprProfile("ore", P1))
    assert err.value.position == 0
    parse("X^-1", ExprProfile("laurent", COMPLEX_Q))


def test_association_is_preserved():
    profile = ExprProfile("laurent", COMPLEX_Q)
    left = parse("(i*X)*i", profile)
    right = parse("i*(X*i)", profile)
    assert left != right
    assert left == Bin("*", Bin("*", Name("i"), Name("X")), Name("i"))
    assert right == Bin("*", Name("i"), Bin("*", Name("X"), Name("i")))


def test_eval_weyl_relation_and_canonical_text():
    target = ore_target()
    profile = ExprProfile("ore", P1)
    value = evaluate(parse("X*Y - Y*X", profile), target)
    assert str(value) == "1"


def test_eval_respects_association_contract():
    target = laurent_target()
    profile = ExprProfile("laurent", COMPLEX_Q)
    chain = evaluate(parse("i*X*i", profile), target)
    explicit = evaluate(parse("(i*X)*i", profile), target)
    other = evaluate(parse("i*(X*i)", profile), target)
    assert chain == explicit
    ctx = target.laurent_context
    ip = LaurentPoly.constant(ctx, element(COMPLEX_Q, (0, 1)))
    x = LaurentPoly.x(ctx)
    assert explicit - other == poly_associator(ip, x, ip)


def test_eval_identity_multiplication():
    target = ore_target()
    profile = ExprProfile("ore", P1)
    p = evaluate(parse("1*((2 - Y)*X)", profile), target)
    q = evaluate(parse("(2 - Y)*X", profile), target)
    assert p == q


def test_sigma2_witness_value():
    target = laurent_target()
    profile = ExprProfile("laurent", COMPLEX_Q)
    value = evaluate(parse("(X*i)*i - X*(i*i)", profile), target)
    assert str(value) == "-3*X"


def test_unknown_constant_and_positions():
    with pytest.raises(ExprError) as err:
        parse("2 + w", ExprProfile("ore", P1))
    assert err.value.position == 4
    with pytest.raises(ExprError):
        parse("", ExprProfile("ore", P1))
    with pytest.raises(ExprError) as err2:
        parse("2 +", ExprProfile("ore", P1))
    assert err2.value.position == 3


def test_exponent_restrictions():
    with pytest.raises(ExprError):
        parse("i^2", ExprProfile("laurent", COMPLEX_Q))
    with pytest.raises(ExprError):
        parse("Y^-1", ExprProfile("ore", P1))
    with pytest.raises(ExprError):
        parse("Y^1/2", ExprProfile("ore", P1))


def test_zero_denominator_literal():
    with pytest.raises(ExprError):
        parse("3/0", ExprProfile("ore", P1))


def test_o_tail_rules():
    profile = ExprProfile("power_series", RATIONALS)
    ast = parse("1 + X + O(X^8)", profile)
    value = evaluate(ast, series_target())
    assert value.precision == 8
    assert str(value) == "1 + X + O(X^8)"
    with pytest.raises(ExprError):
        parse("1 + O(X^8)", ExprProfile("ore", P1))
    alone = evaluate(parse("O(X^5)", profile), series_target())
    assert alone == TruncatedSeries.zero_window(series_target().series_context, 5)


def test_series_eval_keeps_polynomials_exact():
    target = series_target(precision=16)
    profile = ExprProfile("power_series", RATIONALS)
    geo = " + ".join(["1"] + [f"X^{k}" for k in range(1, 16)])
    value = evaluate(parse(f"(1 - X)*({geo})", profile), target)
    assert value == TruncatedSeries.one(target.series_context, 16)
    mixed = evaluate(parse("(1 - X)*(1 + X + X^2 + O(X^3))", profile), target)
    assert mixed.precision == 3
    assert str(mixed) == "1 + O(X^3)"


def test_matrix_literals():
    md = Matrix(2)
    profile = ExprProfile("element", md)
    m = eval_element(parse("[[1, 0], [0, -1]]", profile), md)
    assert m == element(md, [[1, 0], [0, -1]])
    with pytest.raises(EvalError):
        eval_element(parse("[[1, 0], [0, 1]]", ExprProfile("element", md)), RATIONALS)
    with pytest.raises(EvalError):
        eval_element(parse("[[1], [0]]", profile), md)


def test_constant_tables():
    assert set(constant_table(QUATERNIONS_Q)) == {"i", "j", "k", "e0", "e1", "e2", "e3"}
    assert set(constant_table(P1)) == {"Y"}
    assert set(constant_table(Poly2())) == {"Y", "Z"}
    jp = JordanPlus(QUATERNIONS_Q)
    table = constant_table(jp)
    kind, payload = table["i"]
    assert kind == "unit" and payload.descriptor == jp


# --- canonical round trips ---------------------------------------------------

def _random_ast(rng: Random, profile: ExprProfile, depth: int):
    if depth <= 0:
        choice = rng.random()
        if choice < 0.35:
            return Lit(Fraction(rng.randint(0, 9), rng.randint(1, 9)))
        names = list(constant_table(profile.ring).items())
        indets = profile.indeterminate_names()
        if choice < 0.75 and names:
            name, (kind, _payload) = rng.choice(names)
            if kind == "var":
                return Name(name, rng.randint(0, 3))
            return Name(name)
        if indets:
            low = -3 if profile.structure in ("laurent", "laurent_series") else 0
            return Name(rng.choice(indets), rng.randint(low, 3))
        return Lit(Fraction(rng.randint(0, 9)))
    pick = rng.random()
    if pick < 0.15:
        return Neg(_random_ast(rng, profile, depth - 1))
    if pick < 0.2 and profile.structure in ("power_series", "laurent_series"):
        return Bin(
            "+",
            _random_ast(rng, profile, depth - 1),
            OTail(rng.randint(2, 9)),
        )
    op = rng.choice(("+", "-", "*"))
    return Bin(
        op,
        _random_ast(rng, profile, depth - 1),
        _random_ast(rng, profile, rng.randint(0, depth - 1)),
    )


@pytest.mark.parametrize(
    "profile",
    [
        ExprProfile("ore", P1),
        ExprProfile("laurent", COMPLEX_Q),
        ExprProfile("laurent", QUATERNIONS_Q),
        ExprProfile("power_series", RATIONALS),
        ExprProfile("iterated_laurent", P1, num_indeterminates=2),
    ],
    ids=["ore", "laurent-c", "laurent-h", "series", "iterated"],
)
def test_parse_render_round_trip(profile):
    rng = Random(hash(profile.structure) & 0xFFFF)
    for _ in range(100):
        ast = _random_ast(rng, profile, rng.randint(1, 4))
        text = render_ast(ast)
        reparsed = parse(text, profile)
        assert reparsed == ast, text
        assert render_ast(reparsed) == text


def test_render_fixed_point_on_raw_text():
    profile = ExprProfile("laurent", COMPLEX_Q)
    for text in ("i * (X*i)", "(i*X)*i", "2*i + (3 - i)*X^-2", "-(i + X)"):
        once = render_ast(parse(text, profile))
        twice = render_ast(parse(once, profile))
        assert once == twice


def test_value_rendering_reparses_to_equal_value():
    target = laurent_target()
    profile = ExprProfile("laurent", COMPLEX_Q)
    rng = Random(99)
    from skewlab.skewpoly import random_laurent_poly

    for _ in range(100):
        p = random_laurent_poly(target.laurent_context, rng)
        q = random_laurent_poly(target.laurent_context, rng)
        value = p * q
        rendered = str(value)
        assert evaluate(parse(rendered, profile), target) == value

    starget = series_target(precision=9)
    sprofile = ExprProfile("power_series", RATIONALS)
    from skewlab.series import random_series

    for _ in range(60):
        s = random_series(starget.series_context, rng, 9)
        rendered = str(s)
        assert evaluate(parse(rendered, sprofile), starget) == s


def test_quaternion_value_rendering_round_trip():
    ctx = LaurentContext(QUATERNIONS_Q, ConjugationMap(QUATERNIONS_Q))
    target = EvalTarget("laurent", QUATERNIONS_Q, laurent_context=ctx)
    profile = ExprProfile("laurent", QUATERNIONS_Q)
    value = evaluate(parse("(1 + 2*i - k)*X^-1 + j", profile), target)
    assert evaluate(parse(str(value), profile), target) == value
