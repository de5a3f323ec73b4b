"""Tests for matrices over A and chain complexes."""
import pytest

from skewpbw.catalog import (
    catalog_algebra,
    catalog_names,
    catalog_resolution,
    ex34_matrices,
    ex34_misprinted_matrix,
)
from skewpbw.const import Side
from skewpbw.dsl import parse_polynomial
from skewpbw.exceptions import DimensionError
from skewpbw.matring import Complex, Mat, block_diagonal, dualize, is_complex, is_idempotent, mat_mul

RESOLVED = [name for name in catalog_names() if catalog_resolution(name) is not None]


def _random_mat(algebra, rng, rows, cols):
    return Mat.from_rows(
        algebra,
        [[algebra.random_poly(rng, max_degree=1, max_terms=2) for _ in range(cols)] for _ in range(rows)],
    )


def test_identity_is_neutral(dispin, rng):
    M = _random_mat(dispin, rng, 2, 3)
    assert mat_mul(M, Mat.identity(dispin, 3)) == M
    assert Mat.identity(dispin, 2) @ M == M


def test_row_times_column(dispin):
    x1, x2, x3 = dispin.gens()
    row = Mat.from_rows(dispin, [[1 + x2, -x1, 0]])
    column = Mat.from_rows(dispin, [[x1], [x2], [x3]])
    assert mat_mul(row, column) == Mat.zeros(dispin, 1, 1)
    # entries of the left factor multiply on the left
    assert mat_mul(column, row)[0, 1] == -(x1 * x1)
    assert mat_mul(column, row)[1, 1] == -(x2 * x1)


def test_conjugating_matrices_are_inverse():
    example = ex34_matrices()
    algebra = example.F.algebra
    assert mat_mul(example.U, example.U_inv) == Mat.identity(algebra, 4)
    assert mat_mul(example.U_inv, example.U) == Mat.identity(algebra, 4)


def test_idempotents(dispin):
    assert is_idempotent(ex34_matrices().F)
    assert is_idempotent(Mat.identity(dispin, 3))
    assert is_idempotent(Mat.zeros(dispin, 2, 2))
    assert is_idempotent(Mat.diagonal(dispin, [1, 0]))
    assert is_idempotent(block_diagonal(dispin, 2, 1))
    assert not is_idempotent(Mat.diagonal(dispin, [dispin.var(0), 1]))
    with pytest.raises(DimensionError):
        is_idempotent(Mat.zeros(dispin, 1, 2))


def test_example_idempotent_from_conjugation():
    example = ex34_matrices()
    algebra = example.F.algebra
    projector = block_diagonal(algebra, 2, 2)
    assert mat_mul(mat_mul(example.U_inv, projector), example.U) == example.F


def test_misprinted_first_row_is_caught(ore):
    printed = ex34_misprinted_matrix()
    F = ex34_matrices().F
    assert not is_idempotent(printed)
    assert printed.entries[1:] == F.entries[1:]
    assert printed.row(0) == tuple(
        parse_polynomial(text, ore) for text in ("-q*t^2*x^2", "2 - 2*t*x", "-2 - t*x")
    ) + (F[0, 3],)
    assert F.row(0)[:3] == tuple(
        parse_polynomial(text, ore)
        for text in (
            "2 - 2*t*x - q*t^2*x^2",
            "-2 - t*x",
            "2 - 2*a + (t - a*t)*x - (q^2*t^2 + 3*q*t^2)*x^2 - q^3*t^3*x^3",
        )
    )


def test_shape_errors(dispin):
    with pytest.raises(DimensionError):
        mat_mul(Mat.zeros(dispin, 2, 3), Mat.zeros(dispin, 2, 3))
    with pytest.raises(DimensionError):
        Mat.from_rows(dispin, [[1, 2], [3]])
    with pytest.raises(DimensionError):
        Mat.zeros(dispin, 2, 2) + Mat.zeros(dispin, 2, 3)


@pytest.mark.parametrize("name", ["dispin", "usl2", "qweyl"])
def test_mat_mul_is_associative_and_distributive(name, rng):
    algebra = catalog_algebra(name)
    for _ in range(5):
        A = _random_mat(algebra, rng, 2, 2)
        B = _random_mat(algebra, rng, 2, 2)
        C = _random_mat(algebra, rng, 2, 2)
        assert (A @ B) @ C == A @ (B @ C)
        assert A @ (B + C) == A @ B + A @ C


@pytest.mark.parametrize("name", RESOLVED)
def test_catalog_resolutions_are_complexes(name):
    C = catalog_resolution(name)
    assert C.side is Side.LEFT
    assert is_complex(C).passed
    assert is_complex(dualize(C)).passed


def test_dualize(dispin):
    C = catalog_resolution("dispin")
    dual = dualize(C)
    assert dual.side is Side.RIGHT
    assert dual.maps == tuple(reversed(C.maps))
    assert dual.labels == ("phi0*", "phi1*", "phi2*")
    assert dualize(dual) == C


def test_module_ranks():
    C = catalog_resolution("dispin")
    assert [C.module_rank(k) for k in range(4)] == [1, 3, 3, 1]
    dual = dualize(C)
    assert [dual.module_rank(k) for k in range(4)] == [1, 3, 3, 1]
    assert C.incoming(0) is None
    assert C.outgoing(3) is None


def test_broken_complex_fails(dispin):
    C = catalog_resolution("dispin")
    x2 = dispin.var(1)
    broken = Complex(
        Side.LEFT,
        (C.maps[0], C.maps[1].replace(0, 0, x2), C.maps[2]),
        C.labels,
    )
    report = is_complex(broken)
    assert not report.passed
    assert report.check("composite[phi1,phi0]").evidence == "(0,0): -x1"


def test_zero_chain(dispin):
    zero = Mat.zeros(dispin, 1, 1)
    C = Complex(Side.LEFT, (zero, zero))
    assert is_complex(C).passed
    assert is_complex(dualize(C)).passed
    assert dualize(C).maps == (zero, zero)


def test_uncomposable_maps(dispin):
    with pytest.raises(DimensionError, match="not composable"):
        Complex(Side.LEFT, (Mat.zeros(dispin, 1, 3), Mat.zeros(dispin, 2, 1)))
    with pytest.raises(DimensionError):
        Complex(Side.RIGHT, (Mat.zeros(dispin, 1, 3), Mat.zeros(dispin, 1, 2)))
