"""Tests for Euclidean division, Hermite reduction and freeness certificates."""
import pytest

from skewpbw.catalog import ex34_matrices
from skewpbw.exceptions import NotIdempotentError, PresentationError, ZeroDivisorError
from skewpbw.matring import Mat, block_diagonal, mat_mul
from skewpbw.orefree import (
    FreenessCertificate,
    hermite_rows,
    left_divide,
    qs_diagonalize,
    right_divide,
    verify_certificate,
)
from skewpbw.polyarith import Poly


@pytest.fixture
def example():
    return ex34_matrices()


def _is_echelon(H: Mat) -> bool:
    pivots = []
    for row in H.entries:
        nonzero = [j for j, entry in enumerate(row) if entry]
        if not nonzero:
            pivots.append(None)
            continue
        pivots.append(nonzero[0])
    seen_zero = False
    last = -1
    for pivot in pivots:
        if pivot is None:
            seen_zero = True
            continue
        if seen_zero or pivot <= last:
            return False
        last = pivot
    return True


def test_left_divide_twisted(ore):
    field = ore.field
    q, t = field.gen("q"), field.gen("t")
    x = ore.var(0)
    quot, rem = left_divide(x * x, ore.constant(t) * x)
    assert rem.is_zero
    assert quot == Poly(ore, {(1,): field.one / (q * t), (0,): -field.one / (q * t**2)})


def test_right_divide_twisted(ore):
    t = ore.constant(ore.field.gen("t"))
    x = ore.var(0)
    g = x * t
    quot, rem = right_divide(x * x, g)
    assert g * quot + rem == x * x
    assert rem.degree < g.degree


def test_trivial_divisions(ore, rng):
    for _ in range(5):
        f = ore.random_poly(rng, max_degree=3)
        assert left_divide(f, ore.one()) == (f, ore.zero())
        assert right_divide(f, ore.one()) == (f, ore.zero())
        assert left_divide(f, f) == (ore.one(), ore.zero())
        assert right_divide(f, f) == (ore.one(), ore.zero())


def test_euclidean_contract(ore, rng):
    for _ in range(40):
        f = ore.random_poly(rng, max_degree=4)
        g = ore.random_poly(rng, max_degree=2)
        quot, rem = left_divide(f, g)
        assert quot * g + rem == f
        assert rem.degree < g.degree
        quot, rem = right_divide(f, g)
        assert g * quot + rem == f
        assert rem.degree < g.degree


def test_division_errors(ore, dispin):
    with pytest.raises(ZeroDivisorError):
        left_divide(ore.var(0), ore.zero())
    with pytest.raises(PresentationError, match="univariate"):
        left_divide(dispin.var(0), dispin.var(1))


def test_hermite_two_by_one(ore):
    x = ore.var(0)
    M = Mat.from_rows(ore, [[x], [x + 1]])
    tracked = hermite_rows(M)
    assert tracked.H == Mat.from_rows(ore, [[1], [0]])
    assert mat_mul(tracked.V, M) == tracked.H
    assert mat_mul(tracked.V, tracked.V_inv) == Mat.identity(ore, 2)
    assert tracked.rank == 1


def test_hermite_keeps_echelon_input(ore):
    x = ore.var(0)
    M = Mat.from_rows(ore, [[1, x], [0, 1]])
    tracked = hermite_rows(M)
    assert tracked.H == M
    assert tracked.V == Mat.identity(ore, 2)


def test_hermite_zero(ore):
    tracked = hermite_rows(Mat.zeros(ore, 2, 3))
    assert tracked.H.is_zero
    assert tracked.V == Mat.identity(ore, 2)
    assert tracked.rank == 0


def test_hermite_random(ore, rng):
    for rows, cols in ((2, 2), (3, 2), (2, 3)):
        M = Mat.from_rows(
            ore,
            [[ore.random_poly(rng, max_degree=2, max_terms=2) for _ in range(cols)] for _ in range(rows)],
        )
        tracked = hermite_rows(M)
        assert tracked.check(M)
        assert _is_echelon(tracked.H)


def test_certificate_for_identity_and_zero(ore):
    identity = Mat.identity(ore, 3)
    certificate = qs_diagonalize(identity)
    assert certificate.r == 3
    assert certificate.U == identity
    certificate = qs_diagonalize(Mat.zeros(ore, 3, 3))
    assert certificate.r == 0
    assert certificate.U == identity
    assert certificate.basis == ()


def test_not_idempotent(ore):
    with pytest.raises(NotIdempotentError, match="not idempotent"):
        qs_diagonalize(Mat.diagonal(ore, [ore.var(0), 1]))


def test_displayed_certificate_verifies(example):
    certificate = FreenessCertificate(example.U, example.U_inv, example.rank, example.basis)
    report = verify_certificate(example.F, certificate)
    assert report.passed
    assert report.values["r"] == 2


def test_displayed_matrices_diagonalize(example):
    algebra = example.F.algebra
    conjugated = mat_mul(mat_mul(example.U, example.F), example.U_inv)
    assert conjugated == block_diagonal(algebra, 2, 2)
    for row in example.basis:
        v = Mat.from_rows(algebra, [row])
        assert mat_mul(v, example.F) == v


def test_perturbed_certificate_fails(example):
    U = example.U.replace(0, 0, example.U[0, 0] + 1)
    certificate = FreenessCertificate(U, example.U_inv, example.rank, example.basis)
    report = verify_certificate(example.F, certificate)
    assert not report.passed
    assert report.check("U*U_inv=I").evidence


def test_identity_certificate(ore):
    identity = Mat.identity(ore, 2)
    certificate = FreenessCertificate(identity, identity, 2, identity.entries)
    assert verify_certificate(identity, certificate).passed


def test_wrong_shapes_fail(example, ore):
    identity = Mat.identity(ore, 2)
    certificate = FreenessCertificate(identity, identity, 2, identity.entries)
    report = verify_certificate(example.F, certificate)
    assert report.check("shape").evidence == "matrix shapes do not match"


@pytest.mark.slow
def test_qs_diagonalize_example(example):
    F = example.F
    algebra = F.algebra
    certificate = qs_diagonalize(F)
    assert certificate.r == 2
    assert len(certificate.basis) == 2
    assert verify_certificate(F, certificate).passed
    assert certificate.r == hermite_rows(F).rank
    complement = Mat.identity(algebra, 4) - F
    assert 4 - certificate.r == hermite_rows(complement).rank
    conjugated = mat_mul(mat_mul(certificate.U, F), certificate.U_inv)
    assert mat_mul(mat_mul(certificate.U_inv, conjugated), certificate.U) == F
