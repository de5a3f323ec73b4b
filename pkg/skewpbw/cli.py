"""Command line interface: ``skewpbw [source] <command> [options]``."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
import logging
from pathlib import Path
import sys
from typing import Callable, Sequence

import voluptuous as vol

from .catalog import catalog, catalog_names, catalog_resolution, ex34_matrices
from .const import (
    CONF_CENTER_DEGREE,
    CONF_DEGREE_BOUND,
    CONF_GK_M,
    CONF_HILBERT_N,
    CONF_JOBS,
    CONF_JSON,
    CONF_PROBE_BOUND,
    CONF_SAMPLES,
    CONF_SEED,
    DEFAULT_CENTER_DEGREE,
    DEFAULT_GK_M,
    DEFAULT_HILBERT_N,
    DEFAULT_JOBS,
    DEFAULT_PROBE_BOUND,
    DEFAULT_SEED,
    DEFAULT_VALIDATE_SAMPLES,
    EXIT_FAIL,
    EXIT_USAGE,
    FILE_EXTENSION,
    GK_MIN_M,
    STARTUP_MESSAGE,
    STDIN_NAME,
    Side,
)
from .dsl import Document, document_for, format_document, parse, parse_polynomial
from .exceptions import NotIdempotentError, SkewPBWError, VerificationError
from .gbasis import IdealBasis, Member, NotMember, complete, member
from .homology import center_report, sas_check, resolution_check
from .matring import Complex, Mat, is_idempotent
from .orefree import qs_diagonalize, verify_certificate
from .polyarith import Algebra, gk_estimate, hilbert_series_truncated
from .presentation import augmentation_analysis, classify, require_valid, validate
from .report import Report, Status

_LOGGER: logging.Logger = logging.getLogger(__package__)

_BOUND = vol.All(vol.Coerce(int), vol.Range(min=0))

OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_PROBE_BOUND, default=DEFAULT_PROBE_BOUND): _BOUND,
        vol.Optional(CONF_DEGREE_BOUND, default=None): vol.Any(None, _BOUND),
        vol.Optional(CONF_HILBERT_N, default=DEFAULT_HILBERT_N): _BOUND,
        vol.Optional(CONF_GK_M, default=DEFAULT_GK_M): vol.All(
            vol.Coerce(int), vol.Range(min=GK_MIN_M)
        ),
        vol.Optional(CONF_CENTER_DEGREE, default=DEFAULT_CENTER_DEGREE): _BOUND,
        vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): vol.All(vol.Coerce(int), vol.Range(min=1)),
        vol.Optional(CONF_JSON, default=False): vol.Boolean(),
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional(CONF_SAMPLES, default=DEFAULT_VALIDATE_SAMPLES): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
    }
)


class UsageError(SkewPBWError):
    """Bad command line."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class Context:
    """The document a command runs against and the ring it selected."""

    document: Document
    ring: str

    @property
    def presentation(self):
        return self.document.rings[self.ring]

    @property
    def algebra(self) -> Algebra:
        return self.document.algebra(self.ring)

    def poly(self, text: str):
        return parse_polynomial(text, self.algebra)

    def matrix(self, name: str | None) -> Mat:
        return self.document.matrices[self._pick(name, self.document.matrices, "matrix", "F")]

    def complex(self, name: str | None) -> Complex:
        return self.document.complexes[self._pick(name, self.document.complexes, "complex", "resolution")]

    def _pick(self, name, table, kind, preferred) -> str:
        names = [key for key in table if self.document.ring_of(key) == self.ring]
        if name is not None:
            if name not in names:
                raise UsageError(f"no {kind} named {name!r} over {self.ring}")
            return name
        if preferred in names:
            return preferred
        if len(names) == 1:
            return names[0]
        if not names:
            raise UsageError(f"no {kind} declared over {self.ring}")
        raise UsageError(f"several {kind} declarations; choose one of {', '.join(names)}")


def _catalog_document(name: str) -> Document:
    p = catalog(name)
    resolution = catalog_resolution(name)
    document = document_for(p, {"resolution": resolution} if resolution else None)
    if name == "ex34_ore":
        example = ex34_matrices()
        for label, M in (("F", example.F), ("U", example.U), ("U_inv", example.U_inv)):
            document.matrices[label] = M
            document.owners[label] = p.name
    return document


def load(preset: str | None, path: str | None, ring: str | None) -> Context:
    if preset and path:
        raise UsageError("give either --catalog or --file, not both")
    if preset:
        document = _catalog_document(preset)
    elif path:
        if path == STDIN_NAME:
            text = sys.stdin.read()
        else:
            source = Path(path)
            if source.suffix != FILE_EXTENSION:
                _LOGGER.warning("%s does not have the %s extension", path, FILE_EXTENSION)
            try:
                text = source.read_text(encoding="utf-8")
            except OSError as exception:
                raise UsageError(f"cannot read {path}: {exception.strerror}") from exception
        document = parse(text)
    else:
        raise UsageError("a ring source is required: --catalog NAME or --file PATH")
    if ring is None:
        if len(document.rings) != 1:
            raise UsageError(
                "choose a ring with --ring: " + (", ".join(document.rings) or "none declared")
            )
        ring = next(iter(document.rings))
    elif ring not in document.rings:
        raise UsageError(f"unknown ring {ring!r}")
    if not preset:
        require_valid(document.rings[ring])
    return Context(document, ring)


# commands


def _validate(context: Context, args, options) -> Report:
    p = context.presentation
    report = validate(p, samples=options[CONF_SAMPLES], seed=options[CONF_SEED])
    classification = classify(p)
    report.values["quasi_commutative"] = classification.quasi_commutative
    report.values["bijective"] = classification.bijective
    report.values["coefficients_central"] = p.coefficients_central
    if p.coefficients_central:
        report.values["augmentation"] = augmentation_analysis(p).value
    return report


def _normalize(context: Context, args, options) -> Report:
    f = context.poly(args.expression)
    report = Report("normalize", context.ring)
    report.values["normal_form"] = str(f)
    report.values["degree"] = f.degree if f else None
    return report


def _mul(context: Context, args, options) -> Report:
    factors = [context.poly(text) for text in args.expressions]
    report = Report("mul", context.ring)
    report.values["product"] = str(context.algebra.product(factors))
    return report


def _hilbert(context: Context, args, options) -> Report:
    report = Report("hilbert", context.ring)
    report.values["N"] = options[CONF_HILBERT_N]
    report.values["series"] = hilbert_series_truncated(context.presentation, options[CONF_HILBERT_N])
    return report


def _gk(context: Context, args, options) -> Report:
    estimate = gk_estimate(context.presentation, options[CONF_GK_M])
    report = Report("gk", context.ring)
    report.values.update(
        M=estimate.M,
        ratio=estimate.ratio,
        slope=estimate.slope,
        tail_slope=estimate.tail_slope,
        estimate=estimate.estimate,
    )
    return report


def _ideal(context: Context, args) -> IdealBasis:
    gens = [g for g in (context.poly(text) for text in args.ideal) if g]
    if not gens:
        raise UsageError("the ideal needs a nonzero generator")
    side = Side(args.side)
    return IdealBasis.left(gens) if side is Side.LEFT else IdealBasis.right(gens)


def _member(context: Context, args, options) -> Report:
    f = context.poly(args.expression)
    ideal = _ideal(context, args)
    verdict = member(f, ideal, options[CONF_DEGREE_BOUND])
    report = Report("member", context.ring)
    report.values["ideal"] = str(ideal)
    if isinstance(verdict, Member):
        report.add("member", True, "certificate verified")
        report.values["certificate"] = [str(q) for q in verdict.certificate]
    elif isinstance(verdict, NotMember):
        report.add("member", False, verdict.reason)
    else:
        report.add("member", Status.INCONCLUSIVE, f"undecided up to degree {verdict.bound}")
    return report


def _gb(context: Context, args, options) -> Report:
    completed = complete(_ideal(context, args), options[CONF_DEGREE_BOUND])
    report = Report("gb", context.ring)
    report.add(
        "complete",
        Status.PASS if completed.exhaustive else Status.INCONCLUSIVE,
        "" if completed.exhaustive else f"pairs above degree {completed.completed_to_degree} skipped",
    )
    report.values["basis"] = [str(g) for g in completed.generators]
    report.values["degree_bound"] = completed.completed_to_degree
    return report


def _idem_check(context: Context, args, options) -> Report:
    F = context.matrix(args.matrix)
    report = Report("idem-check", context.ring)
    report.add("F*F=F", is_idempotent(F))
    report.values["shape"] = list(F.shape)
    return report


def _qs_diagonalize(context: Context, args, options) -> Report:
    F = context.matrix(args.matrix)
    try:
        certificate = qs_diagonalize(F)
    except NotIdempotentError as exception:
        report = Report("qs-diagonalize", context.ring)
        report.add("F*F=F", False, str(exception))
        return report
    report = verify_certificate(F, certificate)
    report.command = "qs-diagonalize"
    report.values["U"] = [[str(entry) for entry in row] for row in certificate.U.entries]
    report.values["U_inv"] = [[str(entry) for entry in row] for row in certificate.U_inv.entries]
    report.values["basis"] = [[str(entry) for entry in row] for row in certificate.basis]
    return report


def _resolution_verify(context: Context, args, options) -> Report:
    return resolution_check(
        context.presentation, context.complex(args.complex), options[CONF_DEGREE_BOUND]
    )


def _sas_check(context: Context, args, options) -> Report:
    p = context.presentation
    try:
        C = context.complex(args.complex)
    except UsageError:
        if args.complex is not None:
            raise
        C = None
    verdict = sas_check(p, C, p.declared_gld, options[CONF_PROBE_BOUND], options[CONF_JOBS])
    report = verdict.report
    report.values["verdict"] = verdict.kind.value
    if verdict.witness:
        report.values["witness"] = verdict.witness
    if verdict.bound is not None:
        report.values["probe_bound"] = verdict.bound
    return report


def _center(context: Context, args, options) -> Report:
    return center_report(context.presentation, options[CONF_CENTER_DEGREE])


def _print(context: Context, args, options) -> Report:
    report = Report("print", context.ring)
    report.values["text"] = format_document(context.document)
    return report


COMMANDS: dict[str, Callable[[Context, argparse.Namespace, dict], Report]] = {
    "validate": _validate,
    "normalize": _normalize,
    "mul": _mul,
    "hilbert": _hilbert,
    "gk": _gk,
    "member": _member,
    "gb": _gb,
    "idem-check": _idem_check,
    "qs-diagonalize": _qs_diagonalize,
    "resolution-verify": _resolution_verify,
    "sas-check": _sas_check,
    "center": _center,
    "print": _print,
}


def _catalog_command(args) -> Report:
    report = Report("catalog")
    if args.action == "list":
        report.values["presets"] = catalog_names()
        return report
    if not args.name:
        raise UsageError("catalog show needs a preset name")
    report.ring = args.name
    report.values["text"] = format_document(_catalog_document(args.name))
    return report


def run(command: str, context: Context, args: argparse.Namespace, options: dict) -> Report:
    """Run one command against a loaded document."""
    _LOGGER.info("Running %s on %s", command, context.ring)
    report = COMMANDS[command](context, args, options)
    if not report.ring:
        report.ring = context.ring
    _LOGGER.info("%s finished with status %s", command, report.status.value)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="skewpbw", description="Exact arithmetic and verification for skew PBW extensions."
    )
    parser.add_argument("--catalog", dest="preset", metavar="NAME", help="use a built-in preset")
    parser.add_argument("--file", "-f", dest="path", help=f"{FILE_EXTENSION} document, '-' for stdin")
    parser.add_argument("--ring", help="ring to use when the document declares several")
    parser.add_argument("--json", action="store_true", default=None, help="emit the JSON report")
    parser.add_argument("--jobs", type=int, help="parallel exactness probes")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    validate_ = commands.add_parser("validate", help="check the commutation data")
    validate_.add_argument("--samples", type=int)
    validate_.add_argument("--seed", type=int)

    commands.add_parser("normalize", help="normal form of an expression").add_argument("expression")
    commands.add_parser("mul", help="product of expressions").add_argument("expressions", nargs="+")
    commands.add_parser("hilbert", help="truncated Hilbert series").add_argument("--N", dest="N", type=int)
    commands.add_parser("gk", help="Gelfand-Kirillov dimension estimate").add_argument("--M", dest="M", type=int)

    for name, help_ in (("member", "ideal membership"), ("gb", "degree-bounded Groebner basis")):
        sub = commands.add_parser(name, help=help_)
        if name == "member":
            sub.add_argument("expression")
        sub.add_argument("--ideal", nargs="+", required=True, metavar="GEN")
        sub.add_argument("--side", choices=[side.value for side in Side], default=Side.LEFT.value)
        sub.add_argument("--degree-bound", dest="degree_bound", type=int)

    for name, help_ in (
        ("idem-check", "check F*F = F"),
        ("qs-diagonalize", "freeness certificate for an idempotent matrix"),
    ):
        commands.add_parser(name, help=help_).add_argument("--matrix")

    resolution = commands.add_parser("resolution-verify", help="check a resolution of K")
    resolution.add_argument("--complex")
    resolution.add_argument("--degree-bound", dest="degree_bound", type=int)

    sas = commands.add_parser("sas-check", help="semi-graded Artin-Schelter verdict")
    sas.add_argument("--complex")
    sas.add_argument("--probe-bound", dest="probe_bound", type=int)

    commands.add_parser("center", help="center up to a degree").add_argument(
        "--degree", dest="degree", type=int
    )
    commands.add_parser("print", help="print the document")

    listing = commands.add_parser("catalog", help="built-in presets")
    listing.add_argument("action", choices=["list", "show"])
    listing.add_argument("name", nargs="?")
    return parser


_OPTION_KEYS = (
    CONF_PROBE_BOUND,
    CONF_DEGREE_BOUND,
    CONF_HILBERT_N,
    CONF_GK_M,
    CONF_CENTER_DEGREE,
    CONF_JOBS,
    CONF_JSON,
    CONF_SEED,
    CONF_SAMPLES,
)


def collect_options(args: argparse.Namespace, document: Document | None = None) -> dict:
    """Document ``option`` lines overridden by flags, validated."""
    given = {key: getattr(args, key, None) for key in _OPTION_KEYS}
    merged = dict(document.options) if document else {}
    merged.update({key: value for key, value in given.items() if value is not None})
    return OPTIONS_SCHEMA(merged)


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
    elif "text" in report.values:
        print(report.values["text"], end="")
    else:
        print(report.render())


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exception:
        print(f"skewpbw: {exception}", file=sys.stderr)
        return EXIT_USAGE
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    _LOGGER.info(STARTUP_MESSAGE)
    try:
        if args.command == "catalog":
            report = _catalog_command(args)
            options = collect_options(args)
        else:
            context = load(args.preset, args.path, args.ring)
            options = collect_options(args, context.document)
            report = run(args.command, context, args, options)
    except VerificationError as exception:
        _LOGGER.error("Internal verification failed: %s (residual %s)", exception, exception.residual)
        return EXIT_FAIL
    except (vol.Invalid, SkewPBWError) as exception:
        print(f"skewpbw: {exception}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, options[CONF_JSON])
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
