"""Matrices over A, module-side conventions and chain complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Sequence

from .const import Side
from .exceptions import DimensionError
from .polyarith import NEG_INF, Algebra, Poly
from .report import Report

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(frozen=True, eq=False)
class Mat:
    algebra: Algebra
    entries: tuple[tuple[Poly, ...], ...]
    rows: int
    cols: int

    @classmethod
    def from_rows(cls, algebra: Algebra, rows: Sequence[Sequence]) -> "Mat":
        grid = tuple(
            tuple(
                entry if isinstance(entry, Poly) else algebra.constant(entry)
                for entry in row
            )
            for row in rows
        )
        widths = {len(row) for row in grid}
        if len(widths) > 1:
            raise DimensionError(f"ragged matrix with row lengths {sorted(widths)}")
        return cls(algebra, grid, len(grid), widths.pop() if widths else 0)

    @classmethod
    def identity(cls, algebra: Algebra, size: int) -> "Mat":
        return cls.diagonal(algebra, [1] * size)

    @classmethod
    def zeros(cls, algebra: Algebra, rows: int, cols: int) -> "Mat":
        return cls.from_rows(algebra, [[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, algebra: Algebra, values: Sequence) -> "Mat":
        size = len(values)
        return cls.from_rows(
            algebra,
            [[values[i] if i == j else 0 for j in range(size)] for i in range(size)],
        )

    def __getitem__(self, position: tuple[int, int]) -> Poly:
        i, j = position
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Poly, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.entries for entry in row)

    @property
    def max_degree(self) -> int | float:
        return max((entry.degree for row in self.entries for entry in row), default=NEG_INF)

    @property
    def min_nonzero_degree(self) -> int | None:
        degrees = [entry.degree for row in self.entries for entry in row if entry]
        return min(degrees) if degrees else None

    def replace(self, i: int, j: int, value) -> "Mat":
        grid = [list(row) for row in self.entries]
        grid[i][j] = value
        return Mat.from_rows(self.algebra, grid)

    def stack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols and self.rows and other.rows:
            raise DimensionError(f"cannot stack {self.shape} over {other.shape}")
        return Mat.from_rows(self.algebra, list(self.entries) + list(other.entries))

    def _check_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        return Mat.from_rows(
            self.algebra,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        return Mat.from_rows(
            self.algebra,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "Mat":
        return Mat.from_rows(self.algebra, [[-a for a in row] for row in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return (
            "["
            + ", ".join("[" + ", ".join(str(entry) for entry in row) + "]" for row in self.entries)
            + "]"
        )

    def nonzero_entries(self) -> list[tuple[int, int, Poly]]:
        return [
            (i, j, entry)
            for i, row in enumerate(self.entries)
            for j, entry in enumerate(row)
            if entry
        ]


def mat_mul(M: Mat, N: Mat) -> Mat:
    """Ordinary product; entries of M multiply on the left."""
    if M.cols != N.rows:
        raise DimensionError(f"cannot multiply {M.shape} by {N.shape}")
    algebra = M.algebra
    grid = []
    for i in range(M.rows):
        out_row = []
        for k in range(N.cols):
            total = algebra.zero()
            for j in range(M.cols):
                if M.entries[i][j] and N.entries[j][k]:
                    total = total + algebra.mul(M.entries[i][j], N.entries[j][k])
            out_row.append(total)
        grid.append(out_row)
    return Mat.from_rows(algebra, grid)


def is_idempotent(F: Mat) -> bool:
    if not F.is_square:
        raise DimensionError(f"idempotency needs a square matrix, got {F.shape}")
    return mat_mul(F, F) == F


def block_diagonal(algebra: Algebra, zeros: int, ones: int) -> Mat:
    """diag(0_zeros, I_ones)."""
    return Mat.diagonal(algebra, [0] * zeros + [1] * ones)


def _toggle_dual(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


@dataclass(frozen=True, eq=False)
class Complex:
    """Chain of matrices in arrow order.

    Left: row vectors, an m x n matrix is B^m -> B^n and f-then-g is M_f M_g.
    Right: column vectors, an n x m matrix is B^m -> B^n and f-then-g is M_g M_f.
    """

    side: Side
    maps: tuple[Mat, ...]
    labels: tuple[str, ...] = field(default=())
    augmentation: str | None = None

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"f{k}" for k in range(len(self.maps)))
            )
        if len(self.labels) != len(self.maps):
            raise DimensionError("one label per map is required")
        for k, (first, second) in enumerate(zip(self.maps, self.maps[1:])):
            if not _composable(self.side, first, second):
                raise DimensionError(
                    f"{self.labels[k]} {first.shape} and {self.labels[k + 1]} "
                    f"{second.shape} are not composable on the {self.side.value}"
                )

    @property
    def algebra(self) -> Algebra:
        return self.maps[0].algebra

    def __len__(self) -> int:
        return len(self.maps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.side, self.maps, self.labels) == (other.side, other.maps, other.labels)

    def __hash__(self) -> int:
        return hash((self.side, self.labels))

    def composite(self, k: int) -> Mat:
        """Matrix of maps[k] followed by maps[k + 1]."""
        first, second = self.maps[k], self.maps[k + 1]
        if self.side is Side.LEFT:
            return mat_mul(first, second)
        return mat_mul(second, first)

    def module_rank(self, position: int) -> int:
        """Rank of the free module at ``position`` (0 is the source of maps[0])."""
        if position < len(self.maps):
            current = self.maps[position]
            return current.rows if self.side is Side.LEFT else current.cols
        last = self.maps[-1]
        return last.cols if self.side is Side.LEFT else last.rows

    def incoming(self, position: int) -> Mat | None:
        return self.maps[position - 1] if position > 0 else None

    def outgoing(self, position: int) -> Mat | None:
        return self.maps[position] if position < len(self.maps) else None


def _composable(side: Side, first: Mat, second: Mat) -> bool:
    if side is Side.LEFT:
        return first.cols == second.rows
    return second.cols == first.rows


def is_complex(C: Complex) -> Report:
    report = Report("is_complex", C.algebra.presentation.name)
    for k in range(len(C.maps) - 1):
        product = C.composite(k)
        residual = [
            f"({i},{j}): {entry}" for i, j, entry in product.nonzero_entries()
        ]
        report.add(
            f"composite[{C.labels[k]},{C.labels[k + 1]}]",
            not residual,
            "; ".join(residual),
        )
    if len(C.maps) < 2:
        report.add("composites", True, "fewer than two maps")
    return report


def dualize(C: Complex) -> Complex:
    """Same matrices under the opposite side convention, arrows reversed."""
    return Complex(
        C.side.flipped(),
        tuple(reversed(C.maps)),
        tuple(_toggle_dual(label) for label in reversed(C.labels)),
        C.augmentation,
    )
