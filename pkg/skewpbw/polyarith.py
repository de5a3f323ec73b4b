"""Normal-form arithmetic on the standard monomial basis of a skew PBW extension.

Elements are stored as sparse maps from exponent vectors to nonzero scalars,
coefficients on the left. Products are computed by multiplying on the right
by one variable at a time, rewriting with the commutation data; both the
(monomial, variable) and the (monomial, scalar) steps are memoized.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math
import random
import statistics
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence, Union

from sympy.polys.monomials import monomial_mul
from sympy.polys.orderings import grlex

from .const import GK_MIN_M
from .exceptions import DimensionError
from .scalars import Scalar, ScalarField

if TYPE_CHECKING:
    from .presentation import Commutation, Presentation

_LOGGER: logging.Logger = logging.getLogger(__package__)

Monomial = tuple[int, ...]
Terms = dict[Monomial, Scalar]
NEG_INF = float("-inf")


def term_order_key(alpha: Monomial):
    """deglex with x1 < x2 < ... < xn."""
    return grlex(alpha[::-1])


def _add_into(target: Terms, source: Mapping[Monomial, Scalar], factor=None) -> None:
    for mono, coeff in source.items():
        value = coeff if factor is None else factor * coeff
        current = target.get(mono)
        if current is not None:
            value = current + value
        if value:
            target[mono] = value
        else:
            target.pop(mono, None)


def _top_variable(alpha: Monomial) -> int:
    for k in range(len(alpha) - 1, -1, -1):
        if alpha[k]:
            return k
    return -1


def _shift(alpha: Monomial, k: int, step: int) -> Monomial:
    return alpha[:k] + (alpha[k] + step,) + alpha[k + 1 :]


class Poly:
    """Element of A in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "Algebra", terms: Mapping[Monomial, Scalar] | None = None):
        self.algebra = algebra
        self.terms: Terms = {mono: coeff for mono, coeff in (terms or {}).items() if coeff}

    @property
    def ring(self) -> "Presentation":
        return self.algebra.presentation

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int | float:
        if not self.terms:
            return NEG_INF
        return max(sum(mono) for mono in self.terms)

    def monomials(self) -> list[Monomial]:
        """Monomials in decreasing term order."""
        return sorted(self.terms, key=term_order_key, reverse=True)

    @property
    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=term_order_key)

    @property
    def leading_coefficient(self) -> Scalar:
        return self.terms[self.leading_monomial]

    def coefficient(self, alpha: Monomial) -> Scalar:
        return self.terms.get(tuple(alpha), self.algebra.field.zero)

    @property
    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.algebra.n)

    def semigraded_component(self, p: int) -> "Poly":
        return Poly(self.algebra, {m: c for m, c in self.terms.items() if sum(m) == p})

    def scalar_times(self, s: Scalar) -> "Poly":
        s = self.algebra.field.convert(s)
        return Poly(self.algebra, {m: s * c for m, c in self.terms.items()})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.algebra is not self.algebra and other.ring != self.ring:
                raise DimensionError("polynomials belong to different rings")
            return other
        return self.algebra.constant(other)

    def __add__(self, other) -> "Poly":
        terms = dict(self.terms)
        _add_into(terms, self._coerce(other).terms)
        return Poly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        return self.algebra.mul(self, self._coerce(other))

    def __rmul__(self, other) -> "Poly":
        # scalar on the left: no rewriting needed
        return self.scalar_times(other)

    def __pow__(self, exponent: int) -> "Poly":
        return self.algebra.power(self, exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return (
                other.algebra is self.algebra or other.ring == self.ring
            ) and other.terms == self.terms
        try:
            return self.terms == self.algebra.constant(other).terms
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return self.algebra.format(self)

    def __repr__(self) -> str:
        return f"Poly({self.algebra.presentation.name}: {self})"


class Algebra:
    """Multiplication engine bound to one presentation."""

    def __init__(self, presentation: "Presentation"):
        self.presentation = presentation
        self.field: ScalarField = presentation.field
        self.n = presentation.n
        self.central = presentation.coefficients_central
        self._var_cache: dict[tuple[Monomial, int], Terms] = {}
        self._scalar_cache: dict[tuple[Monomial, Scalar], Terms] = {}
        self._monomial_cache: dict[tuple[Monomial, Monomial], Terms] = {}
        self._sigma_inverse = {}

    def __repr__(self) -> str:
        return f"Algebra({self.presentation.name})"

    # construction

    def zero(self) -> Poly:
        return Poly(self)

    def one(self) -> Poly:
        return self.constant(self.field.one)

    def constant(self, value) -> Poly:
        return Poly(self, {(0,) * self.n: self.field.convert(value)})

    def monomial(self, alpha: Sequence[int], coeff=None) -> Poly:
        alpha = tuple(alpha)
        if len(alpha) != self.n or min(alpha, default=0) < 0:
            raise DimensionError(f"bad exponent vector {alpha} for n = {self.n}")
        coeff = self.field.one if coeff is None else self.field.convert(coeff)
        return Poly(self, {alpha: coeff})

    def unit(self, k: int) -> Monomial:
        return tuple(int(m == k) for m in range(self.n))

    def var(self, k: int) -> Poly:
        return self.monomial(self.unit(k))

    def variable(self, name: str) -> Poly:
        return self.var(self.presentation.index(name))

    def gens(self) -> list[Poly]:
        return [self.var(k) for k in range(self.n)]

    # commutation data

    def move_coefficient(self, i: int, r: Scalar) -> Poly:
        """x_i r = sigma_i(r) x_i + delta_i(r)."""
        r = self.field.convert(r)
        return Poly(
            self,
            {
                self.unit(i): self.presentation.sigma[i](r),
                (0,) * self.n: self.presentation.delta[i](r),
            },
        )

    def swap_adjacent(self, j: int, i: int) -> Poly:
        """Normal form of x_j x_i for j > i."""
        if j <= i:
            raise DimensionError(f"swap_adjacent needs j > i, got ({j}, {i})")
        rel = self.presentation.relation(j, i)
        terms: Terms = {monomial_mul(self.unit(i), self.unit(j)): rel.c}
        for k, coeff in enumerate(rel.a):
            if coeff:
                terms[self.unit(k)] = coeff
        if rel.d:
            terms[(0,) * self.n] = rel.d
        return Poly(self, terms)

    def sigma_inverse(self, k: int):
        if k not in self._sigma_inverse:
            self._sigma_inverse[k] = self.presentation.sigma[k].invert()
        return self._sigma_inverse[k]

    def sigma_power(self, alpha: Monomial, r: Scalar) -> Scalar:
        """Leading twist of moving r left through x^alpha."""
        if self.central:
            return r
        for k in range(self.n - 1, -1, -1):
            for _ in range(alpha[k]):
                r = self.presentation.sigma[k](r)
        return r

    def sigma_power_inverse(self, alpha: Monomial, r: Scalar) -> Scalar:
        if self.central:
            return r
        for k in range(self.n):
            inverse = self.sigma_inverse(k) if alpha[k] else None
            for _ in range(alpha[k]):
                r = inverse(r)
        return r

    # products

    def _mono_times_var(self, alpha: Monomial, k: int) -> Terms:
        key = (alpha, k)
        cached = self._var_cache.get(key)
        if cached is not None:
            return cached
        top = _top_variable(alpha)
        if top <= k:
            result = {_shift(alpha, k, 1): self.field.one}
        else:
            beta = _shift(alpha, top, -1)
            rel: Commutation = self.presentation.relation(top, k)
            result: Terms = {}
            head = self._terms_times_var(self._mono_times_scalar(beta, rel.c), k)
            _add_into(result, self._terms_times_var(head, top))
            for index, coeff in enumerate(rel.a):
                if coeff:
                    _add_into(
                        result,
                        self._terms_times_var(self._mono_times_scalar(beta, coeff), index),
                    )
            if rel.d:
                _add_into(result, self._mono_times_scalar(beta, rel.d))
        self._var_cache[key] = result
        if len(self._var_cache) % 5000 == 0:
            _LOGGER.debug(
                "%s: rewriting cache holds %d entries",
                self.presentation.name,
                len(self._var_cache),
            )
        return result

    def _mono_times_scalar(self, alpha: Monomial, r: Scalar) -> Terms:
        if not r:
            return {}
        top = _top_variable(alpha)
        if self.central or top < 0:
            return {alpha: r}
        key = (alpha, r)
        cached = self._scalar_cache.get(key)
        if cached is not None:
            return cached
        beta = _shift(alpha, top, -1)
        result: Terms = {}
        moved = self._mono_times_scalar(beta, self.presentation.sigma[top](r))
        _add_into(result, self._terms_times_var(moved, top))
        tail = self.presentation.delta[top](r)
        if tail:
            _add_into(result, self._mono_times_scalar(beta, tail))
        self._scalar_cache[key] = result
        return result

    def _terms_times_var(self, terms: Mapping[Monomial, Scalar], k: int) -> Terms:
        result: Terms = {}
        for mono, coeff in terms.items():
            _add_into(result, self._mono_times_var(mono, k), coeff)
        return result

    def _times_monomial(self, terms: Terms, beta: Monomial) -> Terms:
        for k in range(self.n):
            for _ in range(beta[k]):
                terms = self._terms_times_var(terms, k)
        return terms

    def _monomial_product(self, alpha: Monomial, beta: Monomial) -> Terms:
        key = (alpha, beta)
        cached = self._monomial_cache.get(key)
        if cached is None:
            cached = self._times_monomial({alpha: self.field.one}, beta)
            self._monomial_cache[key] = cached
        return cached

    def mul(self, f: Poly, g: Poly) -> Poly:
        result: Terms = {}
        for alpha, r in f.terms.items():
            for beta, s in g.terms.items():
                if self.central:
                    _add_into(result, self._monomial_product(alpha, beta), r * s)
                else:
                    product = self._times_monomial(self._mono_times_scalar(alpha, s), beta)
                    _add_into(result, product, r)
        return Poly(self, result)

    def power(self, f: Poly, exponent: int) -> Poly:
        if exponent < 0:
            raise ValueError("negative powers are not defined in A")
        result = self.one()
        for _ in range(exponent):
            result = self.mul(result, f)
        return result

    def product(self, factors: Iterable[Poly]) -> Poly:
        result = self.one()
        for factor in factors:
            result = self.mul(result, factor)
        return result

    def epsilon(self, f: Poly) -> Scalar:
        """Augmentation value: the constant term."""
        return f.constant_term

    # display and sampling

    def format_monomial(self, alpha: Monomial) -> str:
        factors = []
        for name, exponent in zip(self.presentation.variables, alpha):
            if exponent == 1:
                factors.append(name)
            elif exponent:
                factors.append(f"{name}^{exponent}")
        return "*".join(factors)

    def format(self, f: Poly) -> str:
        return format_combination(
            self.field,
            [(f.terms[alpha], self.format_monomial(alpha)) for alpha in f.monomials()],
        )

    def random_poly(
        self, rng: random.Random, max_degree: int = 2, max_terms: int = 3
    ) -> Poly:
        terms: Terms = {}
        for _ in range(rng.randint(1, max_terms)):
            degree = rng.randint(0, max_degree)
            alpha = [0] * self.n
            for _ in range(degree):
                alpha[rng.randrange(self.n)] += 1
            terms[tuple(alpha)] = self.field.random(rng)
        return Poly(self, terms)

    def cache_info(self) -> dict[str, int]:
        return {
            "variable": len(self._var_cache),
            "scalar": len(self._scalar_cache),
            "monomial": len(self._monomial_cache),
        }


def format_combination(field: ScalarField, pairs: Sequence[tuple[Scalar, str]]) -> str:
    """DSL text of sum coeff * word, scalars written left of their word."""
    pieces = []
    for value, mono in pairs:
        if not value:
            continue
        coeff = field.format(value)
        atomic = not any(token in coeff[1:] for token in (" ", "/"))
        if not mono:
            text = coeff if atomic else f"({coeff})"
        elif coeff == "1":
            text = mono
        elif coeff == "-1":
            text = f"-{mono}"
        elif atomic:
            text = f"{coeff}*{mono}"
        else:
            text = f"({coeff})*{mono}"
        pieces.append(text)
    if not pieces:
        return "0"
    out = pieces[0]
    for text in pieces[1:]:
        out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
    return out


Letter = Union[int, Scalar]


def rewrite_word(algebra: Algebra, coefficient, word: Sequence[Letter]) -> Poly:
    """Free-algebra rewriting oracle.

    ``word`` mixes variable indices (ints) with scalars. The leftmost redex is
    rewritten until the word is a sorted monomial: a scalar after a variable
    is moved with sigma/delta, adjacent scalars merge, and an out-of-order
    pair x_j x_i becomes the right-hand side of its relation.
    """
    field = algebra.field
    p = algebra.presentation
    letters = tuple(
        ("x", item) if isinstance(item, int) else ("s", field.convert(item)) for item in word
    )
    pending = [(field.convert(coefficient), letters)]
    result: Terms = {}
    while pending:
        coeff, letters = pending.pop()
        while letters and letters[0][0] == "s":
            coeff = coeff * letters[0][1]
            letters = letters[1:]
        if not coeff:
            continue
        position = _first_redex(letters)
        if position is None:
            alpha = [0] * algebra.n
            for _, index in letters:
                alpha[index] += 1
            _add_into(result, {tuple(alpha): coeff})
            continue
        before, after = letters[:position], letters[position + 2 :]
        (kind, first), (_, second) = letters[position], letters[position + 1]
        if kind == "s":
            pending.append((coeff, before + (("s", first * second),) + after))
        elif letters[position + 1][0] == "s":
            pending.append(
                (coeff, before + (("s", p.sigma[first](second)), ("x", first)) + after)
            )
            tail = p.delta[first](second)
            if tail:
                pending.append((coeff, before + (("s", tail),) + after))
        else:
            rel = p.relation(first, second)
            pending.append(
                (coeff, before + (("s", rel.c), ("x", second), ("x", first)) + after)
            )
            for index, value in enumerate(rel.a):
                if value:
                    pending.append((coeff, before + (("s", value), ("x", index)) + after))
            if rel.d:
                pending.append((coeff, before + (("s", rel.d),) + after))
    return Poly(algebra, result)


def _first_redex(letters) -> int | None:
    for position in range(len(letters) - 1):
        (kind, first), (next_kind, second) = letters[position], letters[position + 1]
        if next_kind == "s":
            return position
        if kind == "x" and first > second:
            return position
    return None


# module-level operations


def move_coefficient(algebra: Algebra, i: int, r: Scalar) -> Poly:
    return algebra.move_coefficient(i, r)


def swap_adjacent(algebra: Algebra, j: int, i: int) -> Poly:
    return algebra.swap_adjacent(j, i)


def mul(f: Poly, g: Poly) -> Poly:
    return f.algebra.mul(f, g)


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def sub(f: Poly, g: Poly) -> Poly:
    return f - g


def scalar_times(s: Scalar, f: Poly) -> Poly:
    return f.scalar_times(s)


def semigraded_component(f: Poly, p: int) -> Poly:
    return f.semigraded_component(p)


def component_dim(n: int, p: int) -> int:
    return math.comb(p + n - 1, n - 1) if p >= 0 else 0


def filtration_dim(p: "Presentation | int", m: int) -> int:
    n = p if isinstance(p, int) else p.n
    return math.comb(m + n, n) if m >= 0 else 0


def hilbert_series_truncated(p: "Presentation | int", N: int) -> list[int]:
    n = p if isinstance(p, int) else p.n
    return [component_dim(n, degree) for degree in range(N + 1)]


@dataclass(frozen=True)
class GKEstimate:
    """Growth of dim F_m on the standard frame.

    ``ratio`` is log dim F_M / log M, ``slope`` the least-squares slope of
    log dim F_m against log m over m = 2..M and ``tail_slope`` the same fit
    over m = M/2..M, which is the value reported as the estimate.
    """

    M: int
    ratio: float
    slope: float
    tail_slope: float

    @property
    def estimate(self) -> float:
        return self.tail_slope


def _log_slope(n: int, start: int, stop: int) -> float:
    xs = [math.log(m) for m in range(start, stop + 1)]
    ys = [math.log(filtration_dim(n, m)) for m in range(start, stop + 1)]
    return statistics.linear_regression(xs, ys).slope


def gk_estimate(p: "Presentation | int", M: int) -> GKEstimate:
    if M < GK_MIN_M:
        raise DimensionError(f"gk_estimate needs M >= {GK_MIN_M}")
    n = p if isinstance(p, int) else p.n
    return GKEstimate(
        M,
        math.log(filtration_dim(n, M)) / math.log(M),
        _log_slope(n, 2, M),
        _log_slope(n, max(2, M // 2), M),
    )
