"""Commutation data of a skew PBW extension, its validation and classification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import itertools
import logging
import random
from typing import Mapping, Sequence

from .const import DEFAULT_SEED, DEFAULT_VALIDATE_SAMPLES
from .exceptions import MapNotInvertibleError, PresentationError, SkewPBWError
from .report import Report, Status
from .scalars import MapKind, Scalar, ScalarField, ScalarMap

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class Commutation:
    """x_j x_i = c x_i x_j + sum_k a[k] x_k + d for a pair j > i."""

    c: Scalar
    a: tuple[Scalar, ...]
    d: Scalar

    @classmethod
    def commuting(cls, field: ScalarField, n: int) -> "Commutation":
        return cls(field.one, (field.zero,) * n, field.zero)

    @property
    def has_lower_terms(self) -> bool:
        return bool(self.d) or any(self.a)


@dataclass(frozen=True)
class Presentation:
    name: str
    field: ScalarField
    variables: tuple[str, ...]
    sigma: tuple[ScalarMap, ...]
    delta: tuple[ScalarMap, ...]
    commutation: Mapping[tuple[int, int], Commutation]
    declared_gld: int | None = None
    gld_upper_bound: bool = False

    def __hash__(self) -> int:
        return hash((self.name, self.variables, self.field))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.field.parameters

    def index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError as exception:
            raise PresentationError(
                f"unknown variable {variable!r} in ring {self.name}"
            ) from exception

    def relation(self, j: int, i: int) -> Commutation:
        return self.commutation[(j, i)]

    @property
    def coefficients_central(self) -> bool:
        return all(s.is_identity for s in self.sigma) and all(
            d.is_zero for d in self.delta
        )

    @property
    def quasi_commutative(self) -> bool:
        return all(d.is_zero for d in self.delta) and not any(
            rel.has_lower_terms for rel in self.commutation.values()
        )

    @property
    def bijective(self) -> bool:
        if any(not rel.c for rel in self.commutation.values()):
            return False
        try:
            for sigma in self.sigma:
                sigma.invert()
        except MapNotInvertibleError:
            return False
        return True

    @property
    def augmentation_defined(self) -> bool:
        """True when x_i -> 0 extends to an algebra map onto K."""
        return all(d.is_zero for d in self.delta) and not any(
            rel.d for rel in self.commutation.values()
        )


def build_presentation(
    name: str,
    variables: Sequence[str],
    relations: Mapping[tuple[str, str], tuple] | None = None,
    parameters: Sequence[str] = (),
    sigma: Mapping[str, Mapping[str, object]] | None = None,
    sigma_inverse: Mapping[str, Mapping[str, object]] | None = None,
    delta: Mapping[str, object] | None = None,
    declared_gld: int | None = None,
    gld_upper_bound: bool = False,
    field: ScalarField | None = None,
) -> Presentation:
    """Assemble a Presentation from name-keyed data.

    ``relations[(xj, xi)] = (c, {xk: a_k}, d)`` with xj after xi in the variable
    order; pairs left out commute. ``sigma[x]`` maps parameter names to images
    and ``delta[x]`` is the divisor e of delta = (sigma - id)/e.
    """
    field = field or ScalarField(parameters)
    variables = tuple(variables)
    if len(set(variables)) != len(variables) or not variables:
        raise PresentationError(f"variables must be distinct and nonempty: {variables}")
    n = len(variables)
    position = {name_: k for k, name_ in enumerate(variables)}

    table: dict[tuple[int, int], Commutation] = {}
    for (left, right), data in (relations or {}).items():
        try:
            j, i = position[left], position[right]
        except KeyError as exception:
            raise PresentationError(f"unknown variable in relation {left}*{right}") from exception
        if j <= i:
            raise PresentationError(
                f"relation left-hand side {left}*{right} must be x_j*x_i with j > i"
            )
        c, linear, d = data
        a = [field.zero] * n
        for variable, value in (linear or {}).items():
            a[position[variable]] = field.convert(value)
        table[(j, i)] = Commutation(field.convert(c), tuple(a), field.convert(d))
    for i, j in itertools.combinations(range(n), 2):
        table.setdefault((j, i), Commutation.commuting(field, n))

    sigmas = []
    deltas = []
    for variable in variables:
        images = (sigma or {}).get(variable)
        inverse = (sigma_inverse or {}).get(variable)
        s = (
            ScalarMap.substitution(field, images, inverse)
            if images
            else ScalarMap.identity(field)
        )
        sigmas.append(s)
        divisor = (delta or {}).get(variable)
        deltas.append(
            ScalarMap.q_difference(s, field.convert(divisor))
            if divisor is not None
            else ScalarMap.zero(field)
        )
    return Presentation(
        name,
        field,
        variables,
        tuple(sigmas),
        tuple(deltas),
        table,
        declared_gld,
        gld_upper_bound,
    )


@dataclass(frozen=True)
class Classification:
    quasi_commutative: bool
    bijective: bool


def classify(p: Presentation) -> Classification:
    return Classification(p.quasi_commutative, p.bijective)


class Augmentation(str, Enum):
    OK = "augmentation_ok"
    COLLAPSES = "collapses"


def augmentation_analysis(p: Presentation) -> Augmentation:
    if not p.coefficients_central:
        raise PresentationError("augmentation analysis requires central coefficient field")
    if any(rel.d for rel in p.commutation.values()):
        return Augmentation.COLLAPSES
    return Augmentation.OK


def _pair_label(p: Presentation, *indices: int) -> str:
    return ",".join(p.variables[k] for k in indices)


def _check_shape(p: Presentation, report: Report) -> bool:
    problems = []
    n = p.n
    if len(p.sigma) != n or len(p.delta) != n:
        problems.append("sigma/delta must have one entry per variable")
    for j, i in itertools.combinations(reversed(range(n)), 2):
        rel = p.commutation.get((j, i))
        if rel is None:
            problems.append(f"missing relation {_pair_label(p, j, i)}")
            continue
        if not rel.c:
            problems.append(f"c[{_pair_label(p, j, i)}] = 0")
        if len(rel.a) != n:
            problems.append(f"a[{_pair_label(p, j, i)}] has {len(rel.a)} entries")
    extra = set(p.commutation) - {
        (j, i) for j, i in itertools.combinations(reversed(range(n)), 2)
    }
    if extra:
        problems.append(f"relations out of order: {sorted(extra)}")
    for k, (s, d) in enumerate(zip(p.sigma, p.delta)):
        if s.kind not in (MapKind.IDENTITY, MapKind.SUBSTITUTION):
            problems.append(f"sigma[{p.variables[k]}] is not an endomorphism")
        if d.kind is MapKind.Q_DIFFERENCE and d.base != s:
            problems.append(f"delta[{p.variables[k]}] is not built on sigma[{p.variables[k]}]")
        elif d.kind not in (MapKind.ZERO, MapKind.Q_DIFFERENCE):
            problems.append(f"delta[{p.variables[k]}] is not a sigma-derivation")
    report.add("shape", not problems, "; ".join(problems))
    return not problems


def validate(
    p: Presentation,
    samples: int = DEFAULT_VALIDATE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> Report:
    """Shape, sigma-derivation law, associativity diamonds and coefficient moves."""
    from .polyarith import Algebra, rewrite_word

    report = Report("validate", p.name)
    if not _check_shape(p, report):
        return report
    rng = random.Random(seed)
    field = p.field
    algebra = Algebra(p)

    for k, (s, d) in enumerate(zip(p.sigma, p.delta)):
        if s.inverse_images is not None:
            try:
                s.invert()
                evidence = ""
            except MapNotInvertibleError as exception:
                evidence = str(exception)
            report.add(f"sigma_inverse[{p.variables[k]}]", not evidence, evidence)
        if s.is_identity and d.is_zero:
            continue
        failures = []
        try:
            for _ in range(samples):
                a, b = field.random(rng), field.random(rng)
                if s(a + b) != s(a) + s(b) or s(a * b) != s(a) * s(b):
                    failures.append(f"sigma not a homomorphism at {field.format(a)}")
                if d(a * b) != s(a) * d(b) + d(a) * b:
                    failures.append(f"derivation law fails at {field.format(a)}")
                if failures:
                    break
        except SkewPBWError as exception:
            failures.append(str(exception))
        report.add(f"sigma_derivation[{p.variables[k]}]", not failures, "; ".join(failures))

    for k, j, i in itertools.combinations(reversed(range(p.n)), 3):
        label = f"diamond[{_pair_label(p, k, j, i)}]"
        try:
            left_first = algebra.mul(algebra.swap_adjacent(k, j), algebra.var(i))
            right_first = algebra.mul(algebra.var(k), algebra.swap_adjacent(j, i))
            oracle = rewrite_word(algebra, field.one, (k, j, i))
        except SkewPBWError as exception:
            report.add(label, False, str(exception))
            continue
        agree = left_first == right_first == oracle
        report.add(
            label,
            agree,
            "" if agree else f"{left_first} != {right_first} (oracle {oracle})",
        )

    for k in range(p.n):
        failures = []
        for _ in range(samples):
            r = field.random(rng)
            moved = algebra.move_coefficient(k, r)
            engine = algebra.mul(algebra.var(k), algebra.constant(r))
            unit = tuple(int(m == k) for m in range(p.n))
            shape_ok = moved.degree <= 1 and set(moved.terms) <= {unit, (0,) * p.n}
            if not shape_ok or moved.coefficient(unit) != p.sigma[k](r) or moved != engine:
                failures.append(f"{p.variables[k]}*({field.format(r)}) -> {moved}")
                break
        report.add(f"coefficient_move[{p.variables[k]}]", not failures, "; ".join(failures))

    if not p.coefficients_central:
        for j, i in itertools.combinations(reversed(range(p.n)), 2):
            failures = []
            for _ in range(max(1, samples // 4)):
                r = algebra.constant(field.random(rng))
                swapped = algebra.mul(algebra.swap_adjacent(j, i), r)
                stepwise = algebra.mul(algebra.var(j), algebra.mul(algebra.var(i), r))
                if swapped != stepwise:
                    failures.append(f"{swapped} != {stepwise}")
                    break
            report.add(f"pair_coherence[{_pair_label(p, j, i)}]", not failures, "; ".join(failures))

    if report.status is Status.FAIL:
        _LOGGER.warning("Presentation %s rejected", p.name)
    return report


def require_valid(p: Presentation, **kwargs) -> Presentation:
    """Return p if it validates, otherwise raise PresentationError."""
    report = validate(p, **kwargs)
    if not report.passed:
        raise PresentationError(
            f"presentation {p.name} rejected: "
            + "; ".join(f"{check.name}: {check.evidence}" for check in report.failures)
        )
    return p

