"""
Exact operations on affine states and operators.

Nothing here uses floating point. Matrices are plain tuples of Fractions and
products are computed entry by entry; dimensions in this project stay small
while the integers inside them grow without bound.
"""

from fractions import Fraction
from typing import Optional, Sequence

from affineam.algebra.models import AffineOperator, AffineState, WeightDistribution
from affineam.algebra.rational import RationalInput, as_rational
from affineam.errors import DimensionError, SingularError

ZERO = Fraction(0)
ONE = Fraction(1)


def make_state(entries: Sequence[RationalInput]) -> AffineState:
    """
    Build an affine state, enforcing the sum-to-one rule.

    Args:
        entries: Register entries as ints, Fractions or "p/q" strings

    Returns:
        The validated state

    Raises:
        NormalizationError: If the entries do not sum to exactly 1
    """
    return AffineState(tuple(as_rational(x) for x in entries))


def basis_state(dimension: int, index: int = 1) -> AffineState:
    """Basis state e_index (1-based)."""
    if not 1 <= index <= dimension:
        raise DimensionError(f"basis index {index} outside 1..{dimension}")
    return AffineState(tuple(ONE if j == index - 1 else ZERO for j in range(dimension)))


def make_operator(
    rows: Sequence[Sequence[RationalInput]], name: str = "", strict: bool = True
) -> AffineOperator:
    """Build an operator from nested rows."""
    return AffineOperator(
        tuple(tuple(as_rational(x) for x in row) for row in rows), name=name, strict=strict
    )


def identity(dimension: int) -> AffineOperator:
    return AffineOperator(
        tuple(
            tuple(ONE if i == j else ZERO for j in range(dimension)) for i in range(dimension)
        ),
        name="I",
    )


def apply(op: AffineOperator, v: AffineState) -> AffineState:
    """
    Apply an operator: v' = A v.

    Raises:
        DimensionError: If the operator and state sizes differ
    """
    if op.dimension != v.dimension:
        raise DimensionError(
            f"cannot apply {op.dimension}x{op.dimension} operator to a {v.dimension}-state",
            expected=op.dimension,
            got=v.dimension,
        )
    entries = v.entries
    result = tuple(sum((a * x for a, x in zip(row, entries) if a), ZERO) for row in op.rows)
    # a non-strict operator can break normalization; AffineState reports it
    return AffineState(result)


def compose(g: AffineOperator, f: AffineOperator, name: Optional[str] = None) -> AffineOperator:
    """
    Matrix product g·f, i.e. apply f first, then g.

    Raises:
        DimensionError: If the sizes differ
    """
    if g.dimension != f.dimension:
        raise DimensionError(
            "cannot compose operators of different sizes", expected=g.dimension, got=f.dimension
        )
    size = g.dimension
    f_columns = [f.column(j) for j in range(size)]
    rows = tuple(
        tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in f_columns)
        for row in g.rows
    )
    label = name if name is not None else _compose_name(g, f)
    return AffineOperator(rows, name=label, strict=g.strict and f.strict)


def compose_all(ops: Sequence[AffineOperator], name: Optional[str] = None) -> AffineOperator:
    """Compose a sequence applied left to right: ops[0] first, ops[-1] last."""
    if not ops:
        raise DimensionError("nothing to compose")
    result = ops[0]
    for op in ops[1:]:
        result = compose(op, result)
    return result.renamed(name) if name is not None else result


def inverse(op: AffineOperator, name: Optional[str] = None) -> AffineOperator:
    """
    Exact inverse by Gauss-Jordan elimination over the rationals.

    Raises:
        SingularError: If the determinant is zero
    """
    size = op.dimension
    work = [list(row) + [ONE if i == j else ZERO for j in range(size)] for i, row in enumerate(op.rows)]

    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularError(f"{op.name or 'operator'} is singular")
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        if lead != 1:
            work[col] = [x / lead for x in work[col]]
        for r in range(size):
            factor = work[r][col]
            if r != col and factor != 0:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]

    rows = tuple(tuple(row[size:]) for row in work)
    label = name if name is not None else (f"{op.name}^-1" if op.name else "")
    return AffineOperator(rows, name=label, strict=op.strict)


def power(op: AffineOperator, exponent: int) -> AffineOperator:
    """Integer power; negative exponents use the inverse."""
    base = op if exponent >= 0 else inverse(op)
    result = identity(op.dimension)
    square = base
    n = abs(exponent)
    while n:
        if n & 1:
            result = compose(square, result)
        n >>= 1
        if n:
            square = compose(square, square)
    return result.renamed(f"{op.name or 'A'}^{exponent}")


def weight(v: AffineState) -> WeightDistribution:
    """
    Weighting distribution P(j) = |v_j| / ||v||_1.

    Collapse is left to the caller: exact evaluation keeps every branch.
    """
    norm = v.l1_norm
    return WeightDistribution(tuple(abs(x) / norm for x in v.entries), norm)


def linear_combination_gadget(
    n: int,
    coefficients: Sequence[RationalInput],
    constant: Optional[RationalInput] = None,
) -> AffineOperator:
    """
    Overwrite y with s = c_1 x_1 + ... + c_n x_n, keeping every x_i.

    Layout is (x_1, ..., x_n, y, bal) of dimension n+2. With ``constant`` set,
    a leading constant entry is added, giving (1, x_1, ..., x_n, y, bal) of
    dimension n+3 and s gains ``constant`` times that entry.

    The balancing row is (-c_1, ..., -c_n, 1, 1), so every column sums to 1.
    """
    if len(coefficients) != n:
        raise DimensionError("one coefficient per input entry", expected=n, got=len(coefficients))
    coeffs = [as_rational(c) for c in coefficients]
    if constant is not None:
        coeffs = [as_rational(constant)] + coeffs
    inputs = len(coeffs)
    size = inputs + 2
    rows: list[list[Fraction]] = []
    for i in range(inputs):
        rows.append([ONE if j == i else ZERO for j in range(size)])
    rows.append(coeffs + [ZERO, ZERO])
    rows.append([-c for c in coeffs] + [ONE, ONE])
    return make_operator(rows, name="LC[" + ",".join(str(c) for c in coeffs) + "]")


def _compose_name(g: AffineOperator, f: AffineOperator) -> str:
    if g.name and f.name:
        return f"{g.name}*{f.name}"
    return g.name or f.name
