"""Tests for one-sided ideals: reduction, completion and membership."""
import pytest

from skewpbw.const import Side
from skewpbw.exceptions import SkewPBWError
from skewpbw.gbasis import (
    IdealBasis,
    Member,
    NotMember,
    NotMemberUpTo,
    check_certificate,
    complete,
    member,
    recombine,
    reduce,
)


def _assert_member(f, ideal):
    verdict = member(f, ideal)
    assert isinstance(verdict, Member)
    assert len(verdict.certificate) == len(ideal.generators)
    assert check_certificate(f, ideal, verdict.certificate).is_zero
    assert recombine(ideal, verdict.certificate) == f


def test_reduce_against_completed_basis(dispin):
    x1, x2, x3 = dispin.gens()
    ideal = IdealBasis.left([x1, x3])
    # x2 only shows up after the S-pair of x1 and x3
    assert reduce(x2, ideal).normal_form == x2
    completed = complete(ideal)
    assert completed.exhaustive
    assert reduce(x2, completed).normal_form.is_zero


def test_reduce_by_unit(dispin, rng):
    ideal = IdealBasis.left([dispin.one()])
    for _ in range(10):
        assert reduce(dispin.random_poly(rng), ideal).normal_form.is_zero


def test_reduce_commutative(commutative):
    x1, x2, _ = commutative.gens()
    reduction = reduce(x1 * x2 + x1, IdealBasis.left([x2]))
    assert reduction.normal_form == x1
    assert reduction.quotients == (x1,)


def test_division_identity(dispin, rng):
    x1, x2, x3 = dispin.gens()
    for side in (Side.LEFT, Side.RIGHT):
        gens = [x1 * x2 + x3, x2 * x2 - x1]
        ideal = complete(
            IdealBasis.left(gens) if side is Side.LEFT else IdealBasis.right(gens), 4
        )
        for _ in range(10):
            f = dispin.random_poly(rng, max_degree=3)
            reduction = reduce(f, ideal)
            assert recombine(ideal, reduction.quotients) + reduction.normal_form == f
            assert reduce(reduction.normal_form, ideal).normal_form == reduction.normal_form


def test_complete_maximal_ideal(dispin):
    completed = complete(IdealBasis.left(dispin.gens()), 4)
    assert sorted(completed.leading_monomials) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_complete_finds_unit(commutative):
    x1, x2, _ = commutative.gens()
    completed = complete(IdealBasis.left([x1 * x1, x1 * x2 - 1]), 4)
    assert completed.generators == (commutative.one(),)
    assert completed.exhaustive


def test_truncated_completion_is_not_exhaustive(dispin):
    x1, x2, x3 = dispin.gens()
    ideal = IdealBasis.left([x1, x3])
    assert not complete(ideal, 1).exhaustive
    assert member(x2, ideal, 1) == NotMemberUpTo(1)


def test_left_membership_with_certificate(dispin):
    x1, x2, x3 = dispin.gens()
    _assert_member(x2, IdealBasis.left([x1, x3]))


def test_right_membership_with_certificate(dispin):
    x1, x2, x3 = dispin.gens()
    _assert_member(x2, IdealBasis.right([x1, x3]))
    _assert_member(x2, IdealBasis.right([x3, x2, x1]))


def test_augmentation_excludes_one(dispin):
    verdict = member(dispin.one(), IdealBasis.right(dispin.gens()))
    assert isinstance(verdict, NotMember)
    assert "epsilon" in verdict.reason


@pytest.mark.parametrize(
    "generators, element, expected",
    [
        (lambda x1, x2, x3: [x1 - x2, x2 - x3], lambda x1, x2, x3: x1 - x3, True),
        (lambda x1, x2, x3: [x1 - x2, x2 - x3], lambda x1, x2, x3: x1, False),
        (lambda x1, x2, x3: [x1 * x1, x1 * x2 - 1], lambda x1, x2, x3: x3 ** 0, True),
        (lambda x1, x2, x3: [x1 * x2 - x3, x2], lambda x1, x2, x3: x3, True),
        (lambda x1, x2, x3: [x1 * x1 + x2 * x2, x1 * x2], lambda x1, x2, x3: x1 ** 3, True),
        (lambda x1, x2, x3: [x1 * x1 + x2 * x2, x1 * x2], lambda x1, x2, x3: x1 * x1, False),
        (lambda x1, x2, x3: [x1 - 1], lambda x1, x2, x3: x1 * x1 - 1, True),
    ],
)
def test_commutative_memberships(commutative, generators, element, expected):
    gens = commutative.gens()
    ideal = IdealBasis.left(generators(*gens))
    f = element(*gens)
    if expected:
        _assert_member(f, ideal)
    else:
        assert isinstance(member(f, ideal), NotMember)


def test_twisted_memberships(ore):
    field = ore.field
    x, t = ore.var(0), ore.constant(field.gen("t"))
    _assert_member(x, IdealBasis.left([t * x]))
    _assert_member(x, IdealBasis.right([x * t]))
    assert isinstance(member(ore.one(), IdealBasis.left([t * x])), NotMember)


def test_zero_generator_rejected(dispin):
    with pytest.raises(SkewPBWError, match="zero generator"):
        IdealBasis.left([dispin.var(0), dispin.zero()])
