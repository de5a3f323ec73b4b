"""Resolutions of the trivial module, dual complexes, Ext-top and SAS verdicts."""

from __future__ import annotations

import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
import itertools
import logging
from typing import Sequence

from sympy.polys.matrices import DomainMatrix

from .const import CANCELLATIVE_HINT, DEFAULT_JOBS, DEFAULT_PROBE_BOUND, Side
from .exceptions import BoundTooSmallError, DimensionError, PresentationError
from .gbasis import IdealBasis, Member, NotMember, member
from .matring import Complex, Mat, dualize, is_complex
from .polyarith import Algebra, Monomial, Poly, filtration_dim, term_order_key
from .presentation import Augmentation, Presentation, augmentation_analysis
from .report import Report, Status

_LOGGER: logging.Logger = logging.getLogger(__package__)


class SliceBasis:
    """Standard monomials of degree <= D in deglex order, a K-basis of F_D."""

    def __init__(self, n: int, degree: int):
        self.n = n
        self.degree = degree
        monomials = []
        for total in range(degree + 1):
            for combo in itertools.combinations_with_replacement(range(n), total):
                alpha = [0] * n
                for k in combo:
                    alpha[k] += 1
                monomials.append(tuple(alpha))
        self.monomials: tuple[Monomial, ...] = tuple(sorted(monomials, key=term_order_key))
        self.index = {alpha: k for k, alpha in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def __repr__(self) -> str:
        return f"SliceBasis(n={self.n}, degree={self.degree}, size={len(self)})"


def _require_central(p: Presentation, what: str) -> None:
    if not p.coefficients_central:
        raise PresentationError(f"{what} requires central coefficients")


def _rank(rows: dict[int, dict[int, object]], shape: tuple[int, int], algebra: Algebra) -> int:
    rows = {i: row for i, row in rows.items() if row}
    if not rows or not shape[1]:
        return 0
    return DomainMatrix(rows, shape, algebra.field.domain).rank()


def _image_rows(
    algebra: Algebra, side: Side, M: Mat, source: SliceBasis, target: SliceBasis
) -> dict[int, dict[int, object]]:
    """Row per basis vector (component, x^alpha) of the source, in target coordinates."""
    if side is Side.LEFT:
        source_rank, target_rank = M.rows, M.cols
    else:
        source_rank, target_rank = M.cols, M.rows
    rows: dict[int, dict[int, object]] = {}
    for component in range(source_rank):
        for k, alpha in enumerate(source.monomials):
            mono = algebra.monomial(alpha)
            row: dict[int, object] = {}
            for other in range(target_rank):
                if side is Side.LEFT:
                    entry = M.entries[component][other]
                    value = algebra.mul(mono, entry) if entry else None
                else:
                    entry = M.entries[other][component]
                    value = algebra.mul(entry, mono) if entry else None
                if not value:
                    continue
                offset = other * len(target)
                for beta, coeff in value.terms.items():
                    row[offset + target.index[beta]] = coeff
            rows[component * len(source) + k] = row
    return rows


@dataclass(frozen=True)
class ProbeResult:
    position: int
    bound: int
    dim_ker: int
    dim_img: int

    @property
    def defect(self) -> int:
        return self.dim_ker - self.dim_img


def bounded_exactness_probe(
    p: Presentation, C: Complex, position: int, D: int = DEFAULT_PROBE_BOUND
) -> ProbeResult:
    """Compare ker(out) and im(in) inside F_D^m at one module of C."""
    algebra = C.algebra
    if algebra.presentation != p:
        raise PresentationError(f"complex is not over {p.name}")
    if C.side is Side.RIGHT:
        _require_central(p, "a right-side probe")
    if not 0 <= position <= len(C.maps):
        raise DimensionError(f"position {position} outside the complex")
    incoming, outgoing = C.incoming(position), C.outgoing(position)
    top = max((M.max_degree for M in (incoming, outgoing) if M is not None), default=0)
    if D < top:
        raise BoundTooSmallError(f"bound too small: D = {D} < entry degree {top}")
    m = C.module_rank(position)
    window = SliceBasis(p.n, D)

    if outgoing is None or outgoing.is_zero:
        dim_ker = m * len(window)
    else:
        target = SliceBasis(p.n, D + int(outgoing.max_degree))
        target_rank = outgoing.cols if C.side is Side.LEFT else outgoing.rows
        rows = _image_rows(algebra, C.side, outgoing, window, target)
        dim_ker = m * len(window) - _rank(rows, (m * len(window), target_rank * len(target)), algebra)

    dim_img = 0
    if incoming is not None and not incoming.is_zero:
        low = incoming.min_nonzero_degree
        source = SliceBasis(p.n, D - low)
        target = SliceBasis(p.n, D - low + int(incoming.max_degree))
        source_rank = incoming.rows if C.side is Side.LEFT else incoming.cols
        rows = _image_rows(algebra, C.side, incoming, source, target)
        shape = (source_rank * len(source), m * len(target))
        outside = {
            i: {j: v for j, v in row.items() if sum(target.monomials[j % len(target)]) > D}
            for i, row in rows.items()
        }
        dim_img = _rank(rows, shape, algebra) - _rank(outside, shape, algebra)
    _LOGGER.debug(
        "Probe %s position %d at D = %d: ker %d, im %d", p.name, position, D, dim_ker, dim_img
    )
    return ProbeResult(position, D, dim_ker, dim_img)


def run_probes(
    p: Presentation,
    C: Complex,
    positions: Sequence[int],
    D: int = DEFAULT_PROBE_BOUND,
    jobs: int = DEFAULT_JOBS,
) -> list[ProbeResult]:
    """Probes at several positions, on a thread pool when jobs > 1."""
    if jobs <= 1 or len(positions) <= 1:
        return [bounded_exactness_probe(p, C, k, D) for k in positions]
    return asyncio.run(_gather_probes(p, C, positions, D, jobs))


async def _gather_probes(p, C, positions, D, jobs) -> list[ProbeResult]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(
            await asyncio.gather(
                *[
                    loop.run_in_executor(pool, bounded_exactness_probe, p, C, k, D)
                    for k in positions
                ]
            )
        )


def _augmentation(p: Presentation) -> Augmentation:
    if p.coefficients_central:
        return augmentation_analysis(p)
    return Augmentation.OK if p.augmentation_defined else Augmentation.COLLAPSES


def resolution_check(p: Presentation, C: Complex, D: int | None = None) -> Report:
    """Complex, augmentation and injectivity checks for a resolution of K."""
    if C.side is not Side.LEFT:
        raise DimensionError("a resolution of the trivial left module uses the left side")
    algebra = C.algebra
    report = Report("resolution_check", p.name)
    report.extend(is_complex(C))

    last = C.maps[-1]
    if _augmentation(p) is Augmentation.OK:
        entries = [entry for entry in last.column(0) if entry] if last.cols == 1 else []
        if last.cols != 1 or not entries:
            report.add("augmentation", False, f"last map must be a nonzero column, got {last.shape}")
        else:
            stray = [str(entry) for entry in entries if algebra.epsilon(entry)]
            report.add(
                "augmentation",
                not stray,
                "epsilon nonzero on " + ", ".join(stray) if stray else "",
            )
            ideal = IdealBasis.left(entries)
            for k, name in enumerate(p.variables):
                verdict = member(algebra.var(k), ideal, D)
                if isinstance(verdict, Member):
                    report.add(f"generates[{name}]", True, _certificate_text(verdict))
                elif isinstance(verdict, NotMember):
                    report.add(f"generates[{name}]", False, verdict.reason)
                else:
                    report.add(
                        f"generates[{name}]",
                        Status.INCONCLUSIVE,
                        f"undecided up to degree {verdict.bound}",
                    )
    else:
        report.add("augmentation", True, "skipped: augmentation collapses")

    first = C.maps[0]
    if first.rows != 1:
        report.add("injective", Status.INCONCLUSIVE, f"first map has {first.rows} rows")
    else:
        report.add("injective", not first.is_zero, "" if not first.is_zero else "first map is zero")
    return report


def _certificate_text(verdict: Member) -> str:
    return "quotients [" + ", ".join(str(q) for q in verdict.certificate) + "]"


class ExtTop(str, Enum):
    TRIVIAL_K = "TrivialK"
    NOT_K = "NotK"
    QUOTIENT_ZERO = "QuotientZero"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ExtTopResult:
    kind: ExtTop
    evidence: str
    bound: int | None = None


def ext_top_type(p: Presentation, top_dual_map: Mat, D: int | None = None) -> ExtTopResult:
    """Classify B / (g_1 B + ... + g_m B) for the 1-row top dual map."""
    if top_dual_map.rows != 1:
        raise DimensionError(f"top dual map must have one row, got {top_dual_map.shape}")
    algebra = top_dual_map.algebra
    gens = [entry for entry in top_dual_map.row(0) if entry]
    if not gens:
        return ExtTopResult(ExtTop.NOT_K, "image is zero, so the quotient is B")
    ideal = IdealBasis.right(gens)
    unit = member(algebra.one(), ideal, D)
    if isinstance(unit, Member):
        return ExtTopResult(ExtTop.QUOTIENT_ZERO, "1 lies in the image: " + _certificate_text(unit))
    if _augmentation(p) is Augmentation.OK:
        for g in gens:
            value = algebra.epsilon(g)
            if value:
                return ExtTopResult(
                    ExtTop.NOT_K,
                    f"epsilon({g}) = {algebra.field.format(value)} != 0 while 1 * ({g}) = 0 in the quotient",
                )
    for k, name in enumerate(p.variables):
        verdict = member(algebra.var(k), ideal, D)
        if isinstance(verdict, Member):
            continue
        if isinstance(verdict, NotMember) and _augmentation(p) is Augmentation.OK:
            return ExtTopResult(
                ExtTop.NOT_K, f"1 and {name} stay independent in the quotient: {verdict.reason}"
            )
        return ExtTopResult(
            ExtTop.INCONCLUSIVE,
            f"{name} not shown to lie in the image",
            getattr(verdict, "bound", D),
        )
    return ExtTopResult(ExtTop.TRIVIAL_K, "image is generated by epsilon-kernel elements and contains every variable")


class SASKind(str, Enum):
    SAS_TRIVIAL = "SAS_Trivial"
    SAS_VERIFIED = "SAS_Verified"
    NOT_SAS = "NotSAS"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SASVerdict:
    kind: SASKind
    evidence: tuple[str, ...] = ()
    witness: str | None = None
    bound: int | None = None
    report: Report | None = None


def sas_check(
    p: Presentation,
    C: Complex | None,
    d: int | None = None,
    D: int = DEFAULT_PROBE_BOUND,
    jobs: int = DEFAULT_JOBS,
) -> SASVerdict:
    _require_central(p, "the SAS check")
    if d is None:
        d = p.declared_gld
    report = Report("sas_check", p.name)
    if augmentation_analysis(p) is Augmentation.COLLAPSES:
        constants = [
            f"d[{p.variables[j]},{p.variables[i]}] = {p.field.format(rel.d)}"
            for (j, i), rel in sorted(p.commutation.items())
            if rel.d
        ]
        evidence = "augmentation collapses: " + ", ".join(constants)
        report.add("augmentation", True, evidence)
        return SASVerdict(SASKind.SAS_TRIVIAL, (evidence,), report=report)
    if C is None:
        report.add("resolution", Status.INCONCLUSIVE, "no resolution supplied")
        return SASVerdict(SASKind.INCONCLUSIVE, bound=D, report=report)
    if d is not None and len(C.maps) != d:
        raise DimensionError(f"resolution has {len(C.maps)} maps but gld is {d}")

    report.extend(resolution_check(p, C), "resolution.")
    dual = dualize(C)
    report.extend(is_complex(dual), "dual.")
    structural = report.status is Status.PASS

    first = dual.maps[0]
    report.add("dual.injective", not first.is_zero, "" if not first.is_zero else "first dual map is zero")
    for probe in run_probes(p, dual, range(1, len(dual.maps)), D, jobs):
        report.add(
            f"dual.probe[{probe.position}]",
            Status.PASS if probe.defect == 0 else Status.INCONCLUSIVE,
            f"dim ker {probe.dim_ker}, dim im {probe.dim_img}, defect {probe.defect} "
            f"(exact only up to degree {probe.bound})",
        )
    ext = ext_top_type(p, dual.maps[-1])
    ext_status = {
        ExtTop.TRIVIAL_K: Status.PASS,
        ExtTop.NOT_K: Status.FAIL,
        ExtTop.QUOTIENT_ZERO: Status.FAIL,
        ExtTop.INCONCLUSIVE: Status.INCONCLUSIVE,
    }[ext.kind]
    report.add("ext_top", ext_status, f"{ext.kind.value}: {ext.evidence}")
    report.values["ext_top"] = ext.kind.value
    evidence = tuple(
        f"{check.name}: {check.evidence}" if check.evidence else check.name
        for check in report.checks
        if check.status is Status.PASS
    )
    if structural and ext.kind in (ExtTop.NOT_K, ExtTop.QUOTIENT_ZERO):
        kind = SASKind.NOT_SAS
    elif report.status is Status.PASS and ext.kind is ExtTop.TRIVIAL_K:
        kind = SASKind.SAS_VERIFIED
    else:
        kind = SASKind.INCONCLUSIVE
    report.values["verdict"] = kind.value
    _LOGGER.info("SAS verdict for %s: %s", p.name, kind.value)
    return SASVerdict(
        kind,
        evidence,
        witness=ext.evidence if kind is SASKind.NOT_SAS else None,
        bound=D,
        report=report,
    )


def center_up_to_degree(p: Presentation, D: int, algebra: Algebra | None = None) -> list[Poly]:
    """K-basis of the elements of F_D commuting with every variable."""
    _require_central(p, "the center computation")
    algebra = algebra or Algebra(p)
    unknowns = SliceBasis(p.n, D)
    target = SliceBasis(p.n, D + 1)
    rows: dict[int, dict[int, object]] = {}
    for column, alpha in enumerate(unknowns.monomials):
        mono = algebra.monomial(alpha)
        for i in range(p.n):
            x = algebra.var(i)
            commutator = algebra.mul(x, mono) - algebra.mul(mono, x)
            for beta, coeff in commutator.terms.items():
                rows.setdefault(i * len(target) + target.index[beta], {})[column] = coeff
    shape = (p.n * len(target), len(unknowns))
    system = DomainMatrix(rows, shape, p.field.domain)
    null = system.nullspace().to_Matrix()
    basis = []
    for r in range(null.rows):
        terms = {
            alpha: p.field.from_sympy(null[r, c])
            for c, alpha in enumerate(unknowns.monomials)
            if null[r, c] != 0
        }
        element = Poly(algebra, terms)
        basis.append(element.scalar_times(p.field.inverse(element.leading_coefficient)))
    basis.sort(key=lambda f: term_order_key(f.leading_monomial))
    _LOGGER.debug("Center of %s up to degree %d has dimension %d", p.name, D, len(basis))
    return basis


def cancellativity_hint(basis: Sequence[Poly]) -> str | None:
    if len(basis) == 1 and basis[0] == basis[0].algebra.one():
        return CANCELLATIVE_HINT
    return None


def center_report(p: Presentation, D: int) -> Report:
    basis = center_up_to_degree(p, D)
    report = Report("center", p.name)
    report.values["degree"] = D
    report.values["dim F_D"] = filtration_dim(p, D)
    report.values["basis"] = [str(f) for f in basis]
    hint = cancellativity_hint(basis)
    report.add("contains 1", any(f == f.algebra.one() for f in basis))
    if hint:
        report.values["hint"] = hint
        _LOGGER.info(hint)
    return report
