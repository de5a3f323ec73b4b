"""Built-in presets, their declared resolutions of K and the Ore example matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import logging
from typing import Callable

from .const import Side
from .exceptions import PresentationError
from .matring import Complex, Mat
from .polyarith import Algebra, Poly
from .presentation import Presentation, build_presentation, require_valid
from .scalars import ScalarField

_LOGGER: logging.Logger = logging.getLogger(__package__)

X3 = ("x1", "x2", "x3")


def _commutative() -> Presentation:
    return build_presentation("commutative", X3, declared_gld=3)


def _quantum_affine() -> Presentation:
    field = ScalarField(("q12", "q13", "q23"))
    q12, q13, q23 = (field.gen(name) for name in field.parameters)
    return build_presentation(
        "quantum_affine",
        X3,
        {
            ("x2", "x1"): (q12, {}, 0),
            ("x3", "x1"): (q13, {}, 0),
            ("x3", "x2"): (q23, {}, 0),
        },
        field=field,
        declared_gld=3,
    )


def _weyl() -> Presentation:
    return build_presentation(
        "weyl", ("x", "y"), {("y", "x"): (1, {}, 1)}, declared_gld=2, gld_upper_bound=True
    )


def _qweyl() -> Presentation:
    field = ScalarField(("q",))
    return build_presentation(
        "qweyl",
        ("x", "y"),
        {("y", "x"): (field.gen("q"), {}, 1)},
        field=field,
        declared_gld=2,
        gld_upper_bound=True,
    )


def _dispin(name: str = "dispin") -> Presentation:
    return build_presentation(
        name,
        X3,
        {
            ("x2", "x1"): (1, {"x1": -1}, 0),
            ("x3", "x1"): (-1, {"x2": 1}, 0),
            ("x3", "x2"): (1, {"x3": -1}, 0),
        },
        declared_gld=3,
    )


def _usl2() -> Presentation:
    return build_presentation(
        "usl2",
        ("x", "y", "z"),
        {
            ("y", "x"): (1, {"z": -1}, 0),
            ("z", "x"): (1, {"x": 2}, 0),
            ("z", "y"): (1, {"y": -2}, 0),
        },
        declared_gld=3,
    )


def _so3_relations(x: str, y: str, z: str) -> dict:
    return {
        (y, x): (1, {z: -1}, 0),
        (z, x): (1, {y: 1}, 0),
        (z, y): (1, {x: -1}, 0),
    }


def _uso3() -> Presentation:
    return build_presentation(
        "uso3", ("x", "y", "z"), _so3_relations("x", "y", "z"), declared_gld=3
    )


def _uqso3() -> Presentation:
    # p stands for the square root of q
    field = ScalarField(("p",))
    p = field.gen("p")
    return build_presentation(
        "uqso3",
        X3,
        {
            ("x2", "x1"): (p**2, {"x3": -p}, 0),
            ("x3", "x1"): (1 / p**2, {"x2": 1 / p}, 0),
            ("x3", "x2"): (p**2, {"x1": -p}, 0),
        },
        field=field,
        declared_gld=3,
    )


def _woronowicz() -> Presentation:
    field = ScalarField(("nu",))
    nu = field.gen("nu")
    return build_presentation(
        "woronowicz",
        X3,
        {
            ("x2", "x1"): (1 / nu**2, {"x3": -1 / nu}, 0),
            ("x3", "x1"): (1 / nu**4, {"x1": -(1 + nu**2) / nu**4}, 0),
            ("x3", "x2"): (nu**4, {"x2": 1 + nu**2}, 0),
        },
        field=field,
        declared_gld=3,
    )


def _sp3(name: str, relations: Callable[[object], dict], beta: bool) -> Callable[[], Presentation]:
    def builder() -> Presentation:
        field = ScalarField(("beta",) if beta else ())
        return build_presentation(
            name,
            X3,
            relations(field.gen("beta") if beta else None),
            field=field,
            declared_gld=3,
        )

    return builder


_SP3_RELATIONS = {
    "sp3_type2": (lambda b: {("x3", "x1"): (b, {"x2": 1}, 0)}, True),
    "sp3_type3": (
        lambda b: {
            ("x3", "x2"): (1, {"x3": -1}, 0),
            ("x3", "x1"): (b, {}, 0),
            ("x2", "x1"): (1, {"x1": -1}, 0),
        },
        True,
    ),
    "sp3_type4": (
        lambda b: {("x3", "x2"): (1, {"x3": -1}, 0), ("x3", "x1"): (b, {}, 0)},
        True,
    ),
    "sp3_type5": (lambda b: _so3_relations("x1", "x2", "x3"), False),
    "sp3_type6": (lambda b: {("x2", "x1"): (1, {"x3": -1}, 0)}, False),
    "sp3_type7": (
        lambda b: {
            ("x3", "x2"): (1, {"x2": 1}, 0),
            ("x3", "x1"): (1, {"x1": 1, "x2": 1}, 0),
        },
        False,
    ),
    "sp3_type8": (
        lambda b: {
            ("x3", "x2"): (1, {"x3": -1}, 0),
            ("x3", "x1"): (1, {"x3": 1}, 0),
        },
        False,
    ),
}


def _ess_regular_u() -> Presentation:
    return build_presentation(
        "ess_regular_u", ("x", "y"), {("y", "x"): (1, {"y": -1}, 0)}, declared_gld=2
    )


def _ex34_ore() -> Presentation:
    field = ScalarField(("q", "a", "t"))
    q, t = field.gen("q"), field.gen("t")
    return build_presentation(
        "ex34_ore",
        ("x",),
        parameters=field.parameters,
        sigma={"x": {"t": q * t}},
        delta={"x": t * (q - 1)},
        field=field,
    )


_PRESETS: dict[str, Callable[[], Presentation]] = {
    "commutative": _commutative,
    "quantum_affine": _quantum_affine,
    "weyl": _weyl,
    "qweyl": _qweyl,
    "dispin": _dispin,
    "usl2": _usl2,
    "uso3": _uso3,
    "uqso3": _uqso3,
    "woronowicz": _woronowicz,
    "sp3_type1": lambda: _dispin("sp3_type1"),
    **{
        name: _sp3(name, relations, beta)
        for name, (relations, beta) in _SP3_RELATIONS.items()
    },
    "ess_regular_u": _ess_regular_u,
    "ex34_ore": _ex34_ore,
}


def catalog_names() -> list[str]:
    return list(_PRESETS)


@lru_cache(maxsize=None)
def catalog(name: str) -> Presentation:
    """Validated preset by name."""
    try:
        builder = _PRESETS[name]
    except KeyError as exception:
        raise PresentationError(
            f"unknown preset {name!r}; available: {', '.join(_PRESETS)}"
        ) from exception
    _LOGGER.debug("Building preset %s", name)
    return require_valid(builder())


@lru_cache(maxsize=None)
def catalog_algebra(name: str) -> Algebra:
    return Algebra(catalog(name))


def _resolution_rows(name: str, algebra: Algebra) -> list[list[list]] | None:
    """Matrices (top map first) of the displayed resolution of K."""
    gens = algebra.gens()
    if algebra.n != 3:
        if name == "ess_regular_u":
            x, y = gens
            return [[[y, 1 - x]], [[x], [y]]]
        return None
    x1, x2, x3 = gens
    column = [[x1], [x2], [x3]]
    p = algebra.field
    if name in ("dispin", "sp3_type1"):
        return [
            [[-x3, x2, x1]],
            [[1 + x2, -x1, 0], [x3, -1, x1], [0, x3, 1 - x2]],
            column,
        ]
    if name == "usl2":
        return [
            [[-x3, x2, -x1]],
            [[x2, -x1, 1], [x3 - 2, 0, -x1], [0, x3 + 2, -x2]],
            column,
        ]
    if name in ("uso3", "sp3_type5"):
        return [
            [[-x3, x2, -x1]],
            [[x2, -x1, 1], [x3, -1, -x1], [1, x3, -x2]],
            column,
        ]
    if name == "uqso3":
        s = p.gen("p")
        c = algebra.constant
        return [
            [[-x3, x2, -x1]],
            [
                [x2, c(-(s**2)) * x1, s],
                [c(s**2) * x3, -s, -x1],
                [s, x3, c(-(s**2)) * x2],
            ],
            column,
        ]
    if name == "woronowicz":
        nu = p.gen("nu")
        c = algebra.constant
        return [
            [[c(-(nu**4)) * x3, c(nu**6) * x2, -x1]],
            [
                [c(nu**2) * x2, -x1, nu],
                [c(nu**4) * x3 + (nu**2 + 1), 0, -x1],
                [0, x3 - (nu**2 + 1), c(-(nu**4)) * x2],
            ],
            column,
        ]
    if name in ("sp3_type2", "sp3_type3", "sp3_type4"):
        b = algebra.constant(p.gen("beta"))
        top = {
            "sp3_type2": [-x3, x2, -b * x1],
            "sp3_type3": [-x3, x2, -b * x1],
            "sp3_type4": [-x3, x2 - 1, -b * x1],
        }[name]
        middle = {
            "sp3_type2": [[x2, -x1, 0], [x3, -1, -b * x1], [0, x3, -x2]],
            "sp3_type3": [[x2 + 1, -x1, 0], [x3, 0, -b * x1], [0, x3, 1 - x2]],
            "sp3_type4": [[x2, -x1, 0], [x3, 0, -b * x1], [0, x3, 1 - x2]],
        }[name]
        return [[top], middle, column]
    if name == "sp3_type6":
        return [
            [[-x3, x2, -x1]],
            [[x2, -x1, 1], [x3, 0, -x1], [0, x3, -x2]],
            column,
        ]
    if name == "sp3_type7":
        return [
            [[2 - x3, x2, -x1]],
            [[x2, -x1, 0], [x3 - 1, -1, -x1], [0, x3 - 1, -x2]],
            column,
        ]
    if name == "sp3_type8":
        return [
            [[-x3, x2 - 1, -x1 - 1]],
            [[x2, -x1, 0], [x3, 0, -x1 - 1], [0, x3, 1 - x2]],
            column,
        ]
    if name == "commutative":
        # Koszul complex
        return [
            [[x3, -x2, x1]],
            [[-x2, x1, 0], [-x3, 0, x1], [0, -x3, x2]],
            column,
        ]
    return None


@lru_cache(maxsize=None)
def catalog_resolution(name: str) -> Complex | None:
    """Declared free resolution of K as a Left complex, maps top first."""
    algebra = catalog_algebra(name)
    rows = _resolution_rows(name, algebra)
    if rows is None:
        return None
    length = len(rows)
    return Complex(
        Side.LEFT,
        tuple(Mat.from_rows(algebra, matrix) for matrix in rows),
        tuple(f"phi{length - 1 - k}" for k in range(length)),
        augmentation="epsilon",
    )


@dataclass(frozen=True)
class OreExample:
    """Idempotent F over K[x; sigma, delta] with a conjugating U and its inverse."""

    F: Mat
    U: Mat
    U_inv: Mat
    basis: tuple[tuple[Poly, ...], ...]
    rank: int = 2


def _upoly(algebra: Algebra, *coefficients) -> Poly:
    """sum_k coefficients[k] * x^k."""
    return Poly(
        algebra,
        {(k,): algebra.field.convert(c) for k, c in enumerate(coefficients)},
    )


@lru_cache(maxsize=None)
def ex34_matrices() -> OreExample:
    algebra = catalog_algebra("ex34_ore")
    field = algebra.field
    q, a, t = (field.gen(name) for name in ("q", "a", "t"))

    def u(*coefficients):
        return _upoly(algebra, *coefficients)

    columns = [
        [u(2, -2 * t, -(t**2) * q), u(2 - 2 * a, 2 * t - t * a), u(2, t), u(-1)],
        [u(-2, -t), u(2 * a - 1, t * a - 4 * t, -(t**2) * q), u(-2, -t), u(2, t)],
        [
            u(2 - 2 * a, t - t * a, -(q**2) * t**2 - 3 * t**2 * q, -(t**3) * q**3),
            u(
                2 * a**2 - 3 * a + 1,
                a**2 * t - 8 * t * a + 8 * t,
                3 * t**2 * q - 2 * t**2 * q * a,
            ),
            u(2 - 2 * a, 4 * t - t * a, t**2 * q),
            u(2 * a - 2, t * a - 2 * t),
        ],
        [
            u(2, -5 * t, -(q**2) * t**2 - 5 * t**2 * q, -(t**3) * q**3),
            u(2 - 2 * a, t - t * a, -(q**2) * t**2 - 3 * t**2 * q, -(t**3) * q**3),
            u(2, t),
            u(-1, 2 * t, t**2 * q),
        ],
    ]
    F = Mat.from_rows(algebra, [[column[i] for column in columns] for i in range(4)])
    U = Mat.from_rows(
        algebra,
        [
            [u(1, t), 0, u(-1, 2 * t, t**2 * q), u(0, 3 * t, t**2 * q)],
            [1, u(-2, -t), u(2 - 2 * a, 2 * t - t * a), u(2, -2 * t, -(t**2) * q)],
            [u(-1, t), 1, u(a - 1, 0, t**2 * q), u(-1, 2 * t, t**2 * q)],
            [1, 0, u(0, t), u(1, t)],
        ],
    )
    U_inv = Mat.from_rows(
        algebra,
        [
            [u(0, t), -1, u(-2, -t), 0],
            [
                a - 1,
                u(a - 1, -t),
                u(2 * a - 1, t * a - 4 * t, -(t**2) * q),
                u(1, 3 * t - 3 * t * a, (q - a + 4) * t**2 * q, t**3 * q**3),
            ],
            [-1, -1, u(-2, -t), u(0, 3 * t, t**2 * q)],
            [0, 1, u(2, t), u(1, -2 * t, -(t**2) * q)],
        ],
    )
    return OreExample(F, U, U_inv, (U.row(2), U.row(3)))


@lru_cache(maxsize=None)
def ex34_misprinted_matrix() -> Mat:
    """ex34 F with the first row as it circulated in print.

    That row does not agree with U and U_inv, so the matrix is not idempotent.
    Rows below it equal those of ``ex34_matrices().F``.
    """
    example = ex34_matrices()
    algebra = example.F.algebra
    field = algebra.field
    q, t = field.gen("q"), field.gen("t")
    first = [
        _upoly(algebra, 0, 0, -(t**2) * q),
        _upoly(algebra, 2, -2 * t),
        _upoly(algebra, -2, -t),
        example.F[0, 3],
    ]
    return Mat.from_rows(algebra, [first, *example.F.entries[1:]])
