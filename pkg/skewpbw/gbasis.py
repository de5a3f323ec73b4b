"""One-sided ideals of A: division, degree-bounded Buchberger completion, membership.

A left ideal is generated under f -> q*f, a right ideal under f -> f*q. Every
multiple used to cancel a leading term is recomputed with the ring product,
because sigma and the commutation constants twist leading coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import heapq
import logging
from typing import Sequence

from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm

from .const import Side, default_degree_bound
from .exceptions import SkewPBWError, VerificationError
from .polyarith import Algebra, Monomial, Poly, term_order_key

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "deglex"

    def key(self, alpha: Monomial):
        return term_order_key(alpha)


DEGLEX = MonomialOrder()


@dataclass(frozen=True, eq=False)
class IdealBasis:
    """Generators of a one-sided ideal.

    ``representations[b][k]`` expresses generator b through the original
    generators: sum_k rep[k] * orig[k] on the left, sum_k orig[k] * rep[k]
    on the right.
    """

    algebra: Algebra
    side: Side
    generators: tuple[Poly, ...]
    completed_to_degree: int | None = None
    exhaustive: bool = False
    originals: tuple[Poly, ...] = ()
    representations: tuple[tuple[Poly, ...], ...] = ()
    order: MonomialOrder = field(default=DEGLEX)

    def __post_init__(self):
        if not self.generators:
            raise SkewPBWError("ideal basis needs at least one generator")
        if any(g.is_zero for g in self.generators):
            raise SkewPBWError("zero generator in ideal basis")
        if not self.originals:
            object.__setattr__(self, "originals", self.generators)
            identity = tuple(
                tuple(
                    self.algebra.one() if b == k else self.algebra.zero()
                    for k in range(len(self.generators))
                )
                for b in range(len(self.generators))
            )
            object.__setattr__(self, "representations", identity)

    @classmethod
    def left(cls, generators: Sequence[Poly]) -> "IdealBasis":
        return cls(generators[0].algebra, Side.LEFT, tuple(generators))

    @classmethod
    def right(cls, generators: Sequence[Poly]) -> "IdealBasis":
        return cls(generators[0].algebra, Side.RIGHT, tuple(generators))

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial for g in self.generators]

    @property
    def max_degree(self) -> int:
        return max(int(g.degree) for g in self.generators)

    def __str__(self) -> str:
        return (
            f"{self.side.value}<"
            + ", ".join(str(g) for g in self.generators)
            + ">"
        )


@dataclass(frozen=True)
class Reduction:
    normal_form: Poly
    quotients: tuple[Poly, ...]


def _left_multiple(algebra: Algebra, g: Poly, mu: Monomial, r) -> tuple[Poly, Poly]:
    """(s x^mu, s x^mu * g) with coefficient r at mu + lm(g)."""
    alpha = tuple(a + b for a, b in zip(mu, g.leading_monomial))
    product = algebra.mul(algebra.monomial(mu), g)
    s = r / product.coefficient(alpha)
    return algebra.monomial(mu, s), product.scalar_times(s)


def _right_multiple(algebra: Algebra, g: Poly, mu: Monomial, r) -> tuple[Poly, Poly]:
    """(s x^mu, g * s x^mu) with coefficient r at lm(g) + mu."""
    beta = g.leading_monomial
    alpha = tuple(a + b for a, b in zip(mu, beta))
    twisted = algebra.mul(g, algebra.monomial(mu)).coefficient(alpha)
    s = algebra.sigma_power_inverse(beta, r / twisted)
    term = algebra.monomial(mu, s)
    product = algebra.mul(g, term)
    if product.coefficient(alpha) != r:
        _LOGGER.error("Right division step lost its leading coefficient at %s", alpha)
        raise VerificationError(
            f"right division step does not cancel the leading term of {g}",
            residual=product,
        )
    return term, product


def reduce(f: Poly, G: IdealBasis) -> Reduction:
    """Full reduction of f modulo the leading monomials of G."""
    return _reduce(G.algebra, G.side, G.generators, f)


def _reduce(
    algebra: Algebra, side: Side, generators: Sequence[Poly], f: Poly
) -> Reduction:
    leading = [g.leading_monomial for g in generators]
    quotients = [algebra.zero() for _ in generators]
    normal: dict[Monomial, object] = {}
    remainder = f
    while remainder:
        alpha = remainder.leading_monomial
        r = remainder.terms[alpha]
        for index, beta in enumerate(leading):
            if monomial_divides(beta, alpha):
                break
        else:
            normal[alpha] = r
            remainder = Poly(
                algebra, {m: c for m, c in remainder.terms.items() if m != alpha}
            )
            continue
        mu = monomial_div(alpha, beta)
        multiple = _left_multiple if side is Side.LEFT else _right_multiple
        term, product = multiple(algebra, generators[index], mu, r)
        remainder = remainder - product
        quotients[index] = quotients[index] + term
        if remainder.coefficient(alpha):
            _LOGGER.error("Division step left a term at %s", alpha)
            raise VerificationError(f"division step failed at {alpha}", residual=remainder)
    return Reduction(Poly(algebra, normal), tuple(quotients))


def recombine(G: IdealBasis, quotients: Sequence[Poly]) -> Poly:
    """sum q_i * g_i (left) or sum g_i * q_i (right)."""
    algebra = G.algebra
    total = algebra.zero()
    for q, g in zip(quotients, G.generators):
        if q:
            total = total + (algebra.mul(q, g) if G.side is Side.LEFT else algebra.mul(g, q))
    return total


def _combine(
    algebra: Algebra, side: Side, factor: Poly, rep: Sequence[Poly]
) -> list[Poly]:
    if side is Side.LEFT:
        return [algebra.mul(factor, entry) if entry else entry for entry in rep]
    return [algebra.mul(entry, factor) if entry else entry for entry in rep]


def _subtract(rep: Sequence[Poly], other: Sequence[Poly]) -> list[Poly]:
    return [a - b for a, b in zip(rep, other)]


def _reduce_with_rep(
    algebra: Algebra,
    side: Side,
    f: Poly,
    rep: Sequence[Poly],
    basis: list[Poly],
    reps: list[list[Poly]],
) -> tuple[Poly, list[Poly]]:
    reduction = _reduce(algebra, side, basis, f)
    rep = list(rep)
    for q, base_rep in zip(reduction.quotients, reps):
        if q:
            rep = _subtract(rep, _combine(algebra, side, q, base_rep))
    return reduction.normal_form, rep


def _normalize(
    algebra: Algebra, side: Side, g: Poly, rep: Sequence[Poly]
) -> tuple[Poly, list[Poly]]:
    """Make the leading coefficient 1 without leaving the ideal."""
    if side is Side.LEFT:
        s = algebra.field.inverse(g.leading_coefficient)
        return g.scalar_times(s), [entry.scalar_times(s) for entry in rep]
    term, product = _right_multiple(algebra, g, (0,) * algebra.n, algebra.field.one)
    return product, _combine(algebra, side, term, rep)


def _spoly(
    algebra: Algebra,
    side: Side,
    first: tuple[Poly, list[Poly]],
    second: tuple[Poly, list[Poly]],
    gamma: Monomial,
) -> tuple[Poly, list[Poly]]:
    multiple = _left_multiple if side is Side.LEFT else _right_multiple
    parts = []
    for g, rep in (first, second):
        mu = monomial_div(gamma, g.leading_monomial)
        term, product = multiple(algebra, g, mu, algebra.field.one)
        parts.append((product, _combine(algebra, side, term, rep)))
    (p1, r1), (p2, r2) = parts
    return p1 - p2, _subtract(r1, r2)


def complete(G: IdealBasis, D: int | None = None) -> IdealBasis:
    """Buchberger completion skipping S-pairs whose lcm has degree above D."""
    algebra = G.algebra
    side = G.side
    if D is None:
        D = default_degree_bound(G.max_degree)
    basis: list[Poly] = []
    reps: list[list[Poly]] = []
    for g, rep in zip(G.generators, G.representations):
        g, rep = _normalize(algebra, side, g, rep)
        basis.append(g)
        reps.append(list(rep))

    queue: list[tuple] = []

    def push_pairs(new: int) -> None:
        for old in range(new):
            gamma = monomial_lcm(basis[old].leading_monomial, basis[new].leading_monomial)
            heapq.heappush(queue, (sum(gamma), term_order_key(gamma), old, new, gamma))

    for index in range(len(basis)):
        push_pairs(index)

    unit = next((k for k, g in enumerate(basis) if g.degree == 0), None)
    skipped = 0
    while queue and unit is None:
        degree, _, i, j, gamma = heapq.heappop(queue)
        if degree > D:
            skipped += 1
            continue
        s, s_rep = _spoly(algebra, side, (basis[i], reps[i]), (basis[j], reps[j]), gamma)
        if not s:
            continue
        nf, nf_rep = _reduce_with_rep(algebra, side, s, s_rep, basis, reps)
        if not nf:
            continue
        nf, nf_rep = _normalize(algebra, side, nf, nf_rep)
        basis.append(nf)
        reps.append(nf_rep)
        _LOGGER.debug(
            "S-pair (%d, %d) at degree %d added %s to %s ideal",
            i,
            j,
            degree,
            nf,
            side.value,
        )
        if nf.degree == 0:
            unit = len(basis) - 1
            break
        push_pairs(len(basis) - 1)

    if unit is not None:
        keep = [unit]
    else:
        keep = _minimal(basis)
    if skipped:
        _LOGGER.warning(
            "Completion of %s ideal truncated at degree %d (%d S-pairs skipped)",
            side.value,
            D,
            skipped,
        )
    kept = [basis[k] for k in keep]
    kept_reps = [reps[k] for k in keep]
    for position in range(len(kept)):
        others = kept[:position] + kept[position + 1 :]
        if not others:
            continue
        other_reps = kept_reps[:position] + kept_reps[position + 1 :]
        kept[position], kept_reps[position] = _reduce_with_rep(
            algebra, side, kept[position], kept_reps[position], others, other_reps
        )
    return IdealBasis(
        algebra,
        side,
        tuple(kept),
        completed_to_degree=D,
        exhaustive=unit is not None or not skipped,
        originals=G.originals,
        representations=tuple(tuple(rep) for rep in kept_reps),
    )


def _minimal(basis: list[Poly]) -> list[int]:
    order = sorted(range(len(basis)), key=lambda k: term_order_key(basis[k].leading_monomial))
    keep: list[int] = []
    for k in order:
        lm = basis[k].leading_monomial
        if not any(monomial_divides(basis[other].leading_monomial, lm) for other in keep):
            keep.append(k)
    return sorted(keep)


@dataclass(frozen=True)
class Member:
    """f = sum certificate[k] * originals[k] (left) or the mirror (right)."""

    certificate: tuple[Poly, ...]

    @property
    def is_member(self) -> bool:
        return True


@dataclass(frozen=True)
class NotMember:
    reason: str

    @property
    def is_member(self) -> bool:
        return False


@dataclass(frozen=True)
class NotMemberUpTo:
    bound: int

    @property
    def is_member(self) -> bool:
        return False


Verdict = Member | NotMember | NotMemberUpTo


def certificate_of(G: IdealBasis, quotients: Sequence[Poly]) -> tuple[Poly, ...]:
    """Translate quotients against G into coefficients of G.originals."""
    algebra = G.algebra
    total = [algebra.zero() for _ in G.originals]
    for q, rep in zip(quotients, G.representations):
        if q:
            total = [a + b for a, b in zip(total, _combine(algebra, G.side, q, rep))]
    return tuple(total)


def check_certificate(f: Poly, G: IdealBasis, certificate: Sequence[Poly]) -> Poly:
    """Residual f - recombination; zero for a valid certificate."""
    original = IdealBasis(G.algebra, G.side, G.originals)
    return f - recombine(original, certificate)


def member(f: Poly, G: IdealBasis, D: int | None = None) -> Verdict:
    algebra = G.algebra
    if D is None:
        D = default_degree_bound(int(max(f.degree, 0)), G.max_degree)
    presentation = algebra.presentation
    if (
        presentation.augmentation_defined
        and all(not algebra.epsilon(g) for g in G.originals)
        and algebra.epsilon(f)
    ):
        return NotMember(
            f"epsilon({f}) = {algebra.field.format(algebra.epsilon(f))} "
            "but epsilon vanishes on the ideal"
        )
    completed = G
    if not G.exhaustive and (G.completed_to_degree is None or G.completed_to_degree < D):
        completed = complete(G, D)
    reduction = reduce(f, completed)
    if reduction.normal_form.is_zero:
        certificate = certificate_of(completed, reduction.quotients)
        residual = check_certificate(f, completed, certificate)
        if residual:
            _LOGGER.error("Membership certificate for %s does not recombine", f)
            raise VerificationError("membership certificate failed", residual=residual)
        return Member(certificate)
    if completed.exhaustive:
        return NotMember(
            f"normal form {reduction.normal_form} is nonzero modulo a complete basis"
        )
    _LOGGER.warning("Membership of %s undecided up to degree %d", f, D)
    return NotMemberUpTo(D)
