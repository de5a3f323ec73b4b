"""Freeness certificates for idempotent matrices over K[x; sigma, delta]."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence

from .exceptions import (
    NotIdempotentError,
    PresentationError,
    VerificationError,
    ZeroDivisorError,
)
from .matring import Mat, block_diagonal, is_idempotent, mat_mul
from .polyarith import Algebra, Poly
from .report import Report

_LOGGER: logging.Logger = logging.getLogger(__package__)


def _require_ore(algebra: Algebra) -> None:
    if algebra.n != 1:
        raise PresentationError(
            f"{algebra.presentation.name} has {algebra.n} variables; a univariate ring is required"
        )
    if not algebra.presentation.bijective:
        raise PresentationError(f"sigma of {algebra.presentation.name} is not invertible")


def _degree(f: Poly) -> int:
    return int(f.degree)


def left_divide(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """f = quot * g + rem with deg rem < deg g."""
    algebra = f.algebra
    _require_ore(algebra)
    if not g:
        raise ZeroDivisorError("division by the zero polynomial")
    quot, rem = algebra.zero(), f
    lead = g.leading_coefficient
    while rem and _degree(rem) >= _degree(g):
        d = _degree(rem) - _degree(g)
        term = algebra.monomial((d,), rem.leading_coefficient / algebra.sigma_power((d,), lead))
        rem = rem - algebra.mul(term, g)
        quot = quot + term
    if algebra.mul(quot, g) + rem != f:
        _LOGGER.error("Left division of %s by %s does not recombine", f, g)
        raise VerificationError("left division failed", residual=f - algebra.mul(quot, g) - rem)
    return quot, rem


def right_divide(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """f = g * quot + rem with deg rem < deg g."""
    algebra = f.algebra
    _require_ore(algebra)
    if not g:
        raise ZeroDivisorError("division by the zero polynomial")
    quot, rem = algebra.zero(), f
    m = (_degree(g),)
    lead = g.leading_coefficient
    while rem and _degree(rem) >= _degree(g):
        d = _degree(rem) - _degree(g)
        s = algebra.sigma_power_inverse(m, rem.leading_coefficient / lead)
        term = algebra.monomial((d,), s)
        rem = rem - algebra.mul(g, term)
        quot = quot + term
    if algebra.mul(g, quot) + rem != f:
        _LOGGER.error("Right division of %s by %s does not recombine", f, g)
        raise VerificationError("right division failed", residual=f - algebra.mul(g, quot) - rem)
    return quot, rem


@dataclass(frozen=True)
class TrackedReduction:
    """V * M = H and V * V_inv = I."""

    V: Mat
    V_inv: Mat
    H: Mat

    @property
    def nonzero_rows(self) -> list[tuple[Poly, ...]]:
        return [row for row in self.H.entries if any(row)]

    @property
    def rank(self) -> int:
        return len(self.nonzero_rows)

    def check(self, M: Mat) -> bool:
        size = self.V.rows
        return (
            mat_mul(self.V, M) == self.H
            and mat_mul(self.V, self.V_inv) == Mat.identity(M.algebra, size)
        )


class _RowState:
    """Mutable H, V, V_inv under elementary row operations."""

    def __init__(self, M: Mat):
        algebra = M.algebra
        self.algebra = algebra
        self.H = [list(row) for row in M.entries]
        identity = Mat.identity(algebra, M.rows)
        self.V = [list(row) for row in identity.entries]
        self.V_inv = [list(row) for row in identity.entries]

    def subtract(self, target: int, source: int, q: Poly) -> None:
        """row_target -= q * row_source."""
        mul = self.algebra.mul
        for grid in (self.H, self.V):
            grid[target] = [
                a - mul(q, b) if b else a for a, b in zip(grid[target], grid[source])
            ]
        for row in self.V_inv:
            if row[target]:
                row[source] = row[source] + mul(row[target], q)

    def swap(self, first: int, second: int) -> None:
        if first == second:
            return
        for grid in (self.H, self.V):
            grid[first], grid[second] = grid[second], grid[first]
        for row in self.V_inv:
            row[first], row[second] = row[second], row[first]

    def scale(self, target: int, s) -> None:
        """row_target = s * row_target for a nonzero scalar s."""
        inverse = self.algebra.constant(self.algebra.field.inverse(s))
        for grid in (self.H, self.V):
            grid[target] = [entry.scalar_times(s) for entry in grid[target]]
        for row in self.V_inv:
            row[target] = self.algebra.mul(row[target], inverse)

    def result(self) -> TrackedReduction:
        algebra = self.algebra
        return TrackedReduction(
            Mat.from_rows(algebra, self.V),
            Mat.from_rows(algebra, self.V_inv),
            Mat.from_rows(algebra, self.H),
        )


def hermite_rows(M: Mat, verify: bool = True) -> TrackedReduction:
    """Row echelon form by Euclidean row operations, with the transform tracked."""
    algebra = M.algebra
    _require_ore(algebra)
    state = _RowState(M)
    pivot = 0
    for col in range(M.cols):
        if pivot == M.rows:
            break
        while True:
            candidates = [r for r in range(pivot, M.rows) if state.H[r][col]]
            if not candidates:
                break
            best = min(candidates, key=lambda r: _degree(state.H[r][col]))
            state.swap(pivot, best)
            others = [r for r in range(pivot + 1, M.rows) if state.H[r][col]]
            if not others:
                break
            for r in others:
                q, _ = left_divide(state.H[r][col], state.H[pivot][col])
                state.subtract(r, pivot, q)
        if state.H[pivot][col]:
            state.scale(pivot, algebra.field.inverse(state.H[pivot][col].leading_coefficient))
            _LOGGER.debug("Pivot %d in column %d: %s", pivot, col, state.H[pivot][col])
            pivot += 1
    tracked = state.result()
    if verify and not tracked.check(M):
        _LOGGER.error("Tracked row reduction lost V * M = H")
        raise VerificationError("hermite transform check failed", residual=tracked.H)
    return tracked


def _pivot_columns(rows: Sequence[Sequence[Poly]]) -> list[int]:
    return [next(j for j, entry in enumerate(row) if entry) for row in rows]


def echelon_coordinates(rows: Sequence[Sequence[Poly]], target: Sequence[Poly]) -> list[Poly]:
    """y with sum_k y[k] * rows[k] = target, for echelon rows."""
    algebra = target[0].algebra
    residual = list(target)
    coordinates = []
    for row, col in zip(rows, _pivot_columns(rows)):
        y, rem = left_divide(residual[col], row[col])
        if rem:
            raise VerificationError("vector is not in the row span", residual=rem)
        coordinates.append(y)
        residual = [a - algebra.mul(y, b) if b else a for a, b in zip(residual, row)]
    if any(residual):
        raise VerificationError("vector is not in the row span", residual=residual)
    return coordinates


@dataclass(frozen=True)
class FreenessCertificate:
    """U F U_inv = diag(0, I_r); the last r rows of U are a basis of the row space of F."""

    U: Mat
    U_inv: Mat
    r: int
    basis: tuple[tuple[Poly, ...], ...]


def qs_diagonalize(F: Mat) -> FreenessCertificate:
    algebra = F.algebra
    _require_ore(algebra)
    if not is_idempotent(F):
        raise NotIdempotentError()
    size = F.rows
    complement = Mat.identity(algebra, size) - F
    kernel = hermite_rows(complement).nonzero_rows
    image = hermite_rows(F).nonzero_rows
    if len(kernel) + len(image) != size:
        _LOGGER.error("Kernel and image ranks %d + %d != %d", len(kernel), len(image), size)
        raise VerificationError("kernel and image ranks do not add up")
    U = Mat.from_rows(algebra, kernel + image)
    inverse_rows = []
    for i in range(size):
        head = echelon_coordinates(kernel, complement.row(i)) if kernel else []
        tail = echelon_coordinates(image, F.row(i)) if image else []
        inverse_rows.append(head + tail)
    U_inv = Mat.from_rows(algebra, inverse_rows)
    certificate = FreenessCertificate(U, U_inv, len(image), tuple(image))
    report = verify_certificate(F, certificate)
    if not report.passed:
        _LOGGER.error("Freeness certificate failed: %s", report.render())
        raise VerificationError("freeness certificate failed", residual=report.failures)
    _LOGGER.info("Row space of F is free of rank %d", certificate.r)
    return certificate


def _residual(product: Mat, expected: Mat) -> str:
    return "; ".join(
        f"({i},{j}): {entry}" for i, j, entry in (product - expected).nonzero_entries()
    )


def verify_certificate(F: Mat, cert: FreenessCertificate) -> Report:
    algebra = F.algebra
    report = Report("verify_certificate", algebra.presentation.name)
    size = F.rows
    shapes_ok = (
        F.is_square
        and cert.U.shape == (size, size)
        and cert.U_inv.shape == (size, size)
        and 0 <= cert.r <= size
        and len(cert.basis) == cert.r
    )
    report.add("shape", shapes_ok, "" if shapes_ok else "matrix shapes do not match")
    if not shapes_ok:
        return report
    identity = Mat.identity(algebra, size)
    for name, product in (
        ("U*U_inv=I", mat_mul(cert.U, cert.U_inv)),
        ("U_inv*U=I", mat_mul(cert.U_inv, cert.U)),
    ):
        residual = _residual(product, identity)
        report.add(name, not residual, residual)
    block = block_diagonal(algebra, size - cert.r, cert.r)
    residual = _residual(mat_mul(mat_mul(cert.U, F), cert.U_inv), block)
    report.add("U*F*U_inv=diag(0,I_r)", not residual, residual)
    final_rows = tuple(cert.U.entries[size - cert.r :])
    report.add("basis=final rows of U", tuple(map(tuple, cert.basis)) == final_rows)
    basis = Mat.from_rows(algebra, cert.basis) if cert.basis else None
    fixed = basis is None or mat_mul(basis, F) == basis
    report.add("basis fixed by F", fixed)
    coordinates = mat_mul(F, cert.U_inv)
    stray = [
        f"row {i}"
        for i in range(size)
        if any(coordinates.entries[i][: size - cert.r])
    ]
    report.add("rows of F in span of basis", not stray, ", ".join(stray))
    report.values["r"] = cert.r
    return report
