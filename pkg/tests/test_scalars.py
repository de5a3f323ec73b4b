"""Tests for the coefficient field and its scalar maps."""
from fractions import Fraction

import pytest

from skewpbw.exceptions import (
    MapNotInvertibleError,
    PresentationError,
    SingularSubstitutionError,
    ZeroDivisorError,
)
from skewpbw.scalars import MapKind, ScalarField, ScalarMap, map_apply, map_inverse


@pytest.fixture
def qat():
    return ScalarField(("q", "a", "t"))


@pytest.fixture
def sigma(qat):
    return ScalarMap.substitution(qat, {"t": qat.gen("q") * qat.gen("t")})


def test_rational_arithmetic():
    field = ScalarField()
    half, two_thirds = field.convert(Fraction(1, 2)), field.convert(Fraction(2, 3))
    assert half * two_thirds == field.convert(Fraction(1, 3))
    assert field.format(half) == "1/2"
    assert field.to_fraction(half + two_thirds) == Fraction(7, 6)


def test_rational_function_arithmetic(qat):
    q = qat.gen("q")
    one = qat.one
    assert q / (q - 1) + (-one) / (q - 1) == one
    assert qat.inverse(q - 1) * (q - 1) == one
    assert qat.power(q, -2) * q**2 == one


def test_inverse_of_zero(qat):
    with pytest.raises(ZeroDivisorError, match="zero divisor in field"):
        qat.inverse(qat.zero)
    with pytest.raises(ZeroDivisionError):
        qat.divide(qat.one, qat.zero)


def test_field_construction_errors():
    with pytest.raises(PresentationError):
        ScalarField(("q", "q"))
    with pytest.raises(PresentationError, match="unknown parameter"):
        ScalarField(("q",)).gen("t")


def test_format(qat):
    q, t = qat.gen("q"), qat.gen("t")
    assert qat.format(q * t) == "q*t"
    assert qat.format(q**2 - 1) == "q^2 - 1"
    assert qat.format(qat.one / (q - 1)) == "1/(q - 1)"
    assert qat.format(qat.convert(-3)) == "-3"


def test_depends_on(qat):
    q, t = qat.gen("q"), qat.gen("t")
    assert qat.depends_on(q / t, "t")
    assert not qat.depends_on(q / (q + 1), "t")
    assert qat.is_rational(qat.convert(Fraction(5, 7)))


def test_field_axioms_random(qat, rng):
    for _ in range(500):
        a, b, c = qat.random(rng), qat.random(rng), qat.random(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * qat.inverse(a) == qat.one


def test_substitution(qat, sigma):
    q, t = qat.gen("q"), qat.gen("t")
    assert sigma.kind is MapKind.SUBSTITUTION
    assert sigma(t) == q * t
    assert sigma(t**2) == q**2 * t**2
    assert sigma(q) == q
    assert map_apply(sigma, qat.one / t) == qat.one / (q * t)


def test_identity_substitution_collapses(qat):
    assert ScalarMap.substitution(qat, {"t": qat.gen("t")}).is_identity


def test_substitution_is_a_homomorphism(qat, sigma, rng):
    for _ in range(50):
        a, b = qat.random(rng), qat.random(rng)
        assert sigma(a + b) == sigma(a) + sigma(b)
        assert sigma(a * b) == sigma(a) * sigma(b)


def test_q_difference(qat, sigma, rng):
    q, t = qat.gen("q"), qat.gen("t")
    delta = ScalarMap.q_difference(sigma, t * (q - 1))
    assert delta(t) == qat.one
    assert delta(q) == qat.zero
    for _ in range(50):
        a, b = qat.random(rng), qat.random(rng)
        assert delta(a * b) == sigma(a) * delta(b) + delta(a) * b


def test_q_difference_needs_nonzero_divisor(qat, sigma):
    with pytest.raises(ZeroDivisorError):
        ScalarMap.q_difference(sigma, qat.zero)


def test_derived_inverse(qat, sigma, rng):
    q, t = qat.gen("q"), qat.gen("t")
    inverse = map_inverse(sigma)
    assert inverse(t) == t / q
    for _ in range(30):
        a = qat.random(rng)
        assert inverse(sigma(a)) == a
        assert sigma(inverse(a)) == a


def test_affine_shift_inverse():
    field = ScalarField(("t",))
    t = field.gen("t")
    shift = ScalarMap.substitution(field, {"t": 2 * t + 3})
    assert shift.invert()(t) == (t - 3) / 2


def test_declared_inverse(qat):
    q, t = qat.gen("q"), qat.gen("t")
    sigma = ScalarMap.substitution(qat, {"t": q * t}, inverse={"t": t / q})
    assert sigma.invert()(q * t) == t
    assert sigma.invert().invert()(t) == q * t


def test_wrong_declared_inverse_is_rejected(qat):
    q, t = qat.gen("q"), qat.gen("t")
    sigma = ScalarMap.substitution(qat, {"t": q * t}, inverse={"t": q * t})
    with pytest.raises(MapNotInvertibleError, match="sends t to"):
        sigma.invert()
    singular = ScalarMap.substitution(qat, {"t": q * t}, inverse={"t": qat.zero})
    with pytest.raises(MapNotInvertibleError):
        singular.invert()


def test_identity_inverts_to_itself(qat):
    identity = ScalarMap.identity(qat)
    assert identity.invert() is identity


def test_not_invertible(qat, sigma):
    t = qat.gen("t")
    with pytest.raises(MapNotInvertibleError):
        ScalarMap.substitution(qat, {"t": t**2}).invert()
    with pytest.raises(MapNotInvertibleError):
        ScalarMap.q_difference(sigma, t).invert()


def test_singular_substitution():
    field = ScalarField(("t",))
    t = field.gen("t")
    to_one = ScalarMap.substitution(field, {"t": 1})
    assert to_one(t**2 + 1) == field.convert(2)
    with pytest.raises(SingularSubstitutionError):
        to_one(field.one / (t - 1))


def test_unknown_parameter_in_substitution(qat):
    with pytest.raises(PresentationError):
        ScalarMap.substitution(qat, {"s": 1})
