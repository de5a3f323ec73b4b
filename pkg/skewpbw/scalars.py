"""Coefficient field K = Q(params) and the scalar maps acting on it."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import logging
import random
from typing import Any, Mapping, Sequence

from sympy import QQ, Symbol

from .exceptions import (
    MapNotInvertibleError,
    PresentationError,
    SingularSubstitutionError,
    ZeroDivisorError,
)

_LOGGER: logging.Logger = logging.getLogger(__package__)

# A field element: a sympy QQ element, or a FracElement of QQ(params).
Scalar = Any


class ScalarField:
    """QQ or the rational function field QQ(p1, ..., pk)."""

    def __init__(self, parameters: Sequence[str] = ()):
        self.parameters: tuple[str, ...] = tuple(parameters)
        if len(set(self.parameters)) != len(self.parameters):
            raise PresentationError(f"duplicate parameter in {self.parameters}")
        if self.parameters:
            self.domain = QQ.frac_field(*[Symbol(name) for name in self.parameters])
            self._gens = dict(zip(self.parameters, self.domain.gens))
        else:
            self.domain = QQ
            self._gens = {}
        self.zero = self.domain.zero
        self.one = self.domain.one

    def __repr__(self) -> str:
        return f"ScalarField({', '.join(self.parameters) or 'QQ'})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and other.parameters == self.parameters

    def __hash__(self) -> int:
        return hash(("ScalarField", self.parameters))

    def gen(self, name: str) -> Scalar:
        try:
            return self._gens[name]
        except KeyError as exception:
            raise PresentationError(f"unknown parameter {name!r}") from exception

    def convert(self, value: Any) -> Scalar:
        if isinstance(value, Fraction):
            return self.domain.convert(value.numerator) / self.domain.convert(
                value.denominator
            )
        if isinstance(value, str):
            return self.gen(value)
        return self.domain.convert(value)

    def is_zero(self, value: Scalar) -> bool:
        return not value

    def inverse(self, value: Scalar) -> Scalar:
        if not value:
            raise ZeroDivisorError()
        return self.one / value

    def divide(self, numerator: Scalar, denominator: Scalar) -> Scalar:
        return numerator * self.inverse(denominator)

    def power(self, value: Scalar, exponent: int) -> Scalar:
        if exponent < 0:
            return self.inverse(value) ** (-exponent)
        return value**exponent

    def index(self, name: str) -> int:
        return self.parameters.index(name)

    def numerator_terms(self, value: Scalar) -> list[tuple[tuple[int, ...], Fraction]]:
        return _terms(value.numer) if self.parameters else _rational_terms(value, 0)

    def denominator_terms(
        self, value: Scalar
    ) -> list[tuple[tuple[int, ...], Fraction]]:
        return _terms(value.denom) if self.parameters else _rational_terms(value, 1)

    def is_rational(self, value: Scalar) -> bool:
        if not self.parameters:
            return True
        return value.numer.is_ground and value.denom.is_ground

    def depends_on(self, value: Scalar, name: str) -> bool:
        if not self.parameters:
            return False
        position = self.index(name)
        return value.numer.degree(position) > 0 or value.denom.degree(position) > 0

    def substitute(self, value: Scalar, images: Mapping[str, Scalar]) -> Scalar:
        """Simultaneously replace parameters by field elements."""
        if not self.parameters or not images:
            return value
        table = tuple(images.get(name, self._gens[name]) for name in self.parameters)
        return _substitute(self, table, value)

    def to_sympy(self, value: Scalar):
        return self.domain.to_sympy(value)

    def from_sympy(self, expression) -> Scalar:
        return self.domain.from_sympy(expression)

    def random(self, rng: random.Random, spread: int = 3) -> Scalar:
        """Random nonzero element: small linear numerator over a small denominator."""
        while True:
            value = self.convert(rng.randint(-spread, spread))
            for name in self.parameters:
                value = value + self.convert(rng.randint(-spread, spread)) * self.gen(
                    name
                )
            if value:
                break
        if rng.random() < 0.3:
            value = value / self.convert(rng.choice([2, 3, -5]))
        if self.parameters and rng.random() < 0.3:
            value = value / self.gen(rng.choice(self.parameters))
        return value

    def to_fraction(self, value: Scalar) -> Fraction:
        """Exact rational value of a parameter-free scalar."""
        if not self.is_rational(value):
            raise PresentationError(f"{self.format(value)} is not a rational constant")
        numerator = self.numerator_terms(value)
        if not numerator:
            return Fraction(0)
        return numerator[0][1] / self.denominator_terms(value)[0][1]

    def format(self, value: Scalar) -> str:
        """DSL text for a scalar: polynomial, or (num)/(den)."""
        if self.is_rational(value):
            return str(self.to_fraction(value))
        numerator = _format_terms(self.numerator_terms(value), self.parameters)
        denominator_terms = self.denominator_terms(value)
        if denominator_terms == [((0,) * len(self.parameters), Fraction(1))]:
            return numerator
        denominator = _format_terms(denominator_terms, self.parameters)
        if len(self.numerator_terms(value)) > 1:
            numerator = f"({numerator})"
        return f"{numerator}/({denominator})"


def _terms(poly) -> list[tuple[tuple[int, ...], Fraction]]:
    return [
        (tuple(monom), Fraction(int(coeff.numerator), int(coeff.denominator)))
        for monom, coeff in poly.terms()
    ]


def _rational_terms(value, part: int) -> list[tuple[tuple[int, ...], Fraction]]:
    if part:
        return [((), Fraction(int(value.denominator)))]
    if not value:
        return []
    return [((), Fraction(int(value.numerator)))]


def _format_terms(terms, parameters: Sequence[str]) -> str:
    if not terms:
        return "0"
    pieces: list[str] = []
    for monom, coeff in terms:
        factors = []
        for name, exponent in zip(parameters, monom):
            if exponent == 1:
                factors.append(name)
            elif exponent:
                factors.append(f"{name}^{exponent}")
        magnitude = abs(coeff)
        if not factors:
            text = str(magnitude)
        elif magnitude == 1:
            text = "*".join(factors)
        else:
            text = "*".join([str(magnitude)] + factors)
        if "/" in text and factors:
            text = f"({magnitude})*" + "*".join(factors)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, text))
    first_sign, first_text = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


@lru_cache(maxsize=65536)
def _substitute(field: ScalarField, table: tuple, value: Scalar) -> Scalar:
    numerator = _evaluate(field, value.numer, table)
    denominator = _evaluate(field, value.denom, table)
    if not denominator:
        raise SingularSubstitutionError(
            f"substitution sends the denominator of {field.format(value)} to zero"
        )
    return numerator / denominator


def _evaluate(field: ScalarField, poly, table: tuple) -> Scalar:
    total = field.zero
    for monom, coeff in _terms(poly):
        term = field.convert(coeff)
        for image, exponent in zip(table, monom):
            if exponent:
                term = term * image**exponent
        total = total + term
    return total


class MapKind(str, Enum):
    IDENTITY = "identity"
    ZERO = "zero"
    SUBSTITUTION = "substitution"
    Q_DIFFERENCE = "q_difference"


@dataclass(frozen=True)
class ScalarMap:
    """An endomorphism (sigma) or sigma-derivation (delta) of K.

    Substitutions are determined by the images of the parameters; the
    q-difference quotient is (base(f) - f) / divisor.
    """

    field: ScalarField
    kind: MapKind
    images: tuple[tuple[str, Scalar], ...] = ()
    inverse_images: tuple[tuple[str, Scalar], ...] | None = None
    base: "ScalarMap | None" = None
    divisor: Scalar | None = None

    @classmethod
    def identity(cls, field: ScalarField) -> "ScalarMap":
        return cls(field, MapKind.IDENTITY)

    @classmethod
    def zero(cls, field: ScalarField) -> "ScalarMap":
        return cls(field, MapKind.ZERO)

    @classmethod
    def substitution(
        cls,
        field: ScalarField,
        images: Mapping[str, Scalar],
        inverse: Mapping[str, Scalar] | None = None,
    ) -> "ScalarMap":
        converted = {name: field.convert(image) for name, image in images.items()}
        kept = tuple(
            (name, converted[name])
            for name in field.parameters
            if name in converted and converted[name] != field.gen(name)
        )
        unknown = set(images) - set(field.parameters)
        if unknown:
            raise PresentationError(f"unknown parameter(s) {sorted(unknown)}")
        if not kept:
            return cls.identity(field)
        inverse_images = None
        if inverse is not None:
            inverse_images = tuple(
                (name, field.convert(inverse[name]))
                for name in field.parameters
                if name in inverse
            )
        return cls(field, MapKind.SUBSTITUTION, kept, inverse_images)

    @classmethod
    def q_difference(cls, base: "ScalarMap", divisor: Scalar) -> "ScalarMap":
        if not divisor:
            raise ZeroDivisorError()
        return cls(base.field, MapKind.Q_DIFFERENCE, base=base, divisor=divisor)

    @property
    def is_identity(self) -> bool:
        return self.kind is MapKind.IDENTITY

    @property
    def is_zero(self) -> bool:
        return self.kind is MapKind.ZERO

    def __call__(self, value: Scalar) -> Scalar:
        return self.apply(value)

    def apply(self, value: Scalar) -> Scalar:
        if self.kind is MapKind.IDENTITY:
            return value
        if self.kind is MapKind.ZERO:
            return self.field.zero
        if self.kind is MapKind.SUBSTITUTION:
            return self.field.substitute(value, dict(self.images))
        return (self.base.apply(value) - value) / self.divisor

    def invert(self) -> "ScalarMap":
        """Inverse automorphism; declared, or derived from affine images."""
        if self.kind is MapKind.IDENTITY:
            return self
        if self.kind is not MapKind.SUBSTITUTION:
            raise MapNotInvertibleError(f"{self.kind.value} map is not an automorphism")
        if self.inverse_images is not None:
            declared = ScalarMap(
                self.field,
                MapKind.SUBSTITUTION,
                self.inverse_images,
                self.images,
            )
            self._check_inverse(declared)
            return declared
        field = self.field
        moved = [name for name, _ in self.images]
        inverse: dict[str, Scalar] = {}
        for name, image in self.images:
            intercept = field.substitute(image, {name: field.zero})
            slope = field.substitute(image, {name: field.one}) - intercept
            affine = slope * field.gen(name) + intercept
            if affine != image or not slope:
                raise MapNotInvertibleError(
                    f"cannot invert {name} -> {field.format(image)}: not affine in {name}"
                )
            if any(
                field.depends_on(part, other)
                for part in (slope, intercept)
                for other in moved
            ):
                raise MapNotInvertibleError(
                    f"cannot invert {name} -> {field.format(image)}: "
                    "coefficients are not fixed by the map"
                )
            inverse[name] = (field.gen(name) - intercept) / slope
        _LOGGER.debug("Derived inverse substitution %s", inverse)
        return ScalarMap(
            field,
            MapKind.SUBSTITUTION,
            tuple((name, inverse[name]) for name in moved),
            self.images,
        )

    def _check_inverse(self, candidate: "ScalarMap") -> None:
        """Both composites must fix every parameter."""
        field = self.field
        for name in field.parameters:
            p = field.gen(name)
            try:
                there, back = candidate(self(p)), self(candidate(p))
            except SingularSubstitutionError as exception:
                raise MapNotInvertibleError(
                    f"declared inverse of {self.describe()} is singular at {name}"
                ) from exception
            if there != p or back != p:
                raise MapNotInvertibleError(
                    f"declared inverse {candidate.describe()} of {self.describe()} "
                    f"sends {name} to {field.format(there)} and {field.format(back)}"
                )

    def describe(self) -> str:
        if self.kind is MapKind.IDENTITY:
            return "id"
        if self.kind is MapKind.ZERO:
            return "0"
        if self.kind is MapKind.SUBSTITUTION:
            return ", ".join(
                f"{name} -> {self.field.format(image)}" for name, image in self.images
            )
        return f"(sigma - id)/({self.field.format(self.divisor)})"


def map_apply(scalar_map: ScalarMap, value: Scalar) -> Scalar:
    return scalar_map.apply(value)


def map_inverse(scalar_map: ScalarMap) -> ScalarMap:
    return scalar_map.invert()
