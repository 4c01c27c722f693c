"""
Value types for affine registers.

States and operators are immutable; every operation returns a fresh value so
game-tree evaluation can share them between branches.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from affineam.errors import DimensionError, NormalizationError


@dataclass(frozen=True)
class AffineState:
    """
    Exact rational vector whose entries sum to 1.

    Attributes:
        entries: Register entries; negative values and values above 1 are legal
    """

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries:
            raise DimensionError("an affine state needs at least one entry")
        total = sum(self.entries, Fraction(0))
        if total != 1:
            raise NormalizationError(f"entries sum to {total}, not 1", total=total)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def l1_norm(self) -> Fraction:
        return sum((abs(x) for x in self.entries), Fraction(0))

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class AffineOperator:
    """
    Square rational matrix acting by v' = A v.

    Attributes:
        rows: Matrix rows; column j is (rows[0][j], ..., rows[m-1][j])
        name: Display name used by operator banks and serialized specs
        strict: When False the column-sum rule is not enforced, so a loaded
            spec can carry a defective matrix for validation to report
    """

    rows: tuple[tuple[Fraction, ...], ...]
    name: str = field(default="", compare=False)
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        size = len(self.rows)
        if size == 0:
            raise DimensionError("an affine operator needs at least one row")
        for row in self.rows:
            if len(row) != size:
                raise DimensionError("operator matrix must be square", expected=size, got=len(row))
        if self.strict:
            defects = self.column_defects()
            if defects:
                column, total = defects[0]
                raise NormalizationError(
                    f"column {column + 1} of {self.name or 'operator'} sums to {total}, not 1",
                    total=total,
                )

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def column_defects(self) -> list[tuple[int, Fraction]]:
        """Columns (0-based) whose sum differs from 1, with the actual sum."""
        defects = []
        for j in range(self.dimension):
            total = sum(self.column(j), Fraction(0))
            if total != 1:
                defects.append((j, total))
        return defects

    def renamed(self, name: str) -> "AffineOperator":
        return AffineOperator(self.rows, name=name, strict=self.strict)

    def __str__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"{self.name or 'A'} = [{body}]"


@dataclass(frozen=True)
class WeightDistribution:
    """
    Outcome distribution of weighting a register.

    Attributes:
        probabilities: probabilities[j] = |v_j| / ||v||_1 (0-based j, outcome j+1)
        l1_norm: ||v||_1 of the weighted state
    """

    probabilities: tuple[Fraction, ...]
    l1_norm: Fraction

    def outcome(self, tau: int) -> Fraction:
        """Probability of 1-based outcome tau."""
        return self.probabilities[tau - 1]

    def support(self) -> list[tuple[int, Fraction]]:
        """Outcomes (1-based) with nonzero probability."""
        return [(j + 1, p) for j, p in enumerate(self.probabilities) if p]
