"""Exact rational feasibility for ``A x = b, x >= 0``.

The solver is a revised Phase-I simplex kept entirely in exact arithmetic:
the basis inverse is a small matrix of :class:`~fractions.Fraction`, while
pricing runs as an integer matrix product over the (row-scaled) constraint
matrix, which is what keeps systems with tens of thousands of columns
tractable.

Entering columns follow the largest-violation rule, except that any pivot
following a degenerate one uses Bland's smallest-index rule.  Every cycle
consists of degenerate pivots only, so every pivot in a would-be cycle is a
Bland pivot and the method terminates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from irum.core import (
    ChoiceFunction,
    RandomChoiceModel,
    StochasticChoiceFunction,
    enumerate_menus,
    members,
    to_fraction,
)
from irum.errors import PreconditionError, SizeLimitError

#: Largest candidate list accepted by :func:`find_representation`.
MAX_CANDIDATES = 25_000

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class FeasibilitySystem:
    """Equalities ``rows @ x == rhs`` over ``n_vars`` nonnegative variables.

    ``rows`` may be a sequence of coefficient sequences or a 2-D numpy array
    (integer or object dtype).  Coefficients must be exact: ints or Fractions.
    """

    n_vars: int
    rows: Sequence
    rhs: Sequence

    def __post_init__(self):
        if isinstance(self.rows, np.ndarray):
            if self.rows.ndim != 2 or (self.rows.size and self.rows.shape[1] != self.n_vars):
                raise PreconditionError(
                    f"dimension mismatch: matrix shape {self.rows.shape} for {self.n_vars} variables"
                )
            n_rows = self.rows.shape[0]
        else:
            for i, row in enumerate(self.rows):
                if len(row) != self.n_vars:
                    raise PreconditionError(
                        f"dimension mismatch: row {i} has {len(row)} coefficients, expected {self.n_vars}"
                    )
            n_rows = len(self.rows)
        if len(self.rhs) != n_rows:
            raise PreconditionError(f"dimension mismatch: {n_rows} rows but {len(self.rhs)} right-hand sides")

    @property
    def n_rows(self) -> int:
        return len(self.rhs)

    def coefficient(self, i: int, j: int) -> Fraction:
        return Fraction(self.rows[i][j])


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None
    pivots: int = 0

    def __bool__(self):
        return self.feasible

    def support(self) -> dict[int, Fraction]:
        if self.witness is None:
            return {}
        return {j: v for j, v in enumerate(self.witness) if v != 0}


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def _integer_form(sys: FeasibilitySystem) -> tuple[np.ndarray, list[int]]:
    """Scale each row (with its rhs) to integers and make every rhs nonnegative."""
    rhs = [to_fraction(v) for v in sys.rhs]
    rows = sys.rows
    if isinstance(rows, np.ndarray) and rows.dtype.kind in "iu":
        scale = [v.denominator for v in rhs]
        mat = _compact(rows.astype(object)) if rows.dtype.kind == "u" else rows.astype(np.int64)
        if any(s != 1 for s in scale):
            peak = int(np.abs(mat).max(initial=0)) if mat.dtype != object else None
            if peak is not None and peak * max(scale) < 2**31:
                mat = mat * np.array(scale, dtype=np.int64)[:, None]
            else:
                mat = mat.astype(object) * np.array(scale, dtype=object)[:, None]
        b = [int(v * s) for v, s in zip(rhs, scale)]
    else:
        int_rows = []
        b = []
        for row, v in zip(rows, rhs):
            fr = [to_fraction(x) for x in row]
            s = _lcm([x.denominator for x in fr if x.denominator != 1] + [v.denominator])
            int_rows.append([int(x * s) for x in fr])
            b.append(int(v * s))
        mat = np.array(int_rows, dtype=object).reshape(len(int_rows), sys.n_vars)
    flip = [i for i, v in enumerate(b) if v < 0]
    if flip:
        mat = mat.copy()
        mat[flip] = -mat[flip]
    b = [abs(v) for v in b]
    return _compact(mat), b


def _compact(mat: np.ndarray) -> np.ndarray:
    """Use int64 when every entry is small enough for safe products, else Python ints."""
    if mat.size == 0:
        return mat.astype(np.int64)
    peak = max(abs(int(mat.max())), abs(int(mat.min())))
    if peak < 2**31:
        return mat.astype(np.int64)
    return mat.astype(object)


def _matmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Exact integer product, falling back to Python ints if int64 could overflow."""
    if left.dtype == object or right.dtype == object:
        return left.astype(object) @ right.astype(object)
    inner = left.shape[-1]
    if inner == 0:
        return left @ right
    bound = int(np.abs(left).max(initial=0)) * int(np.abs(right).max(initial=0)) * inner
    if bound < _INT64_SAFE:
        return left @ right
    return left.astype(object) @ right.astype(object)


def _independent_rows(gram: np.ndarray) -> list[int]:
    """Indices of a maximal independent set of rows of a square Gram matrix.

    Row dependencies of ``A`` and of ``A @ A.T`` coincide, so this selects
    independent rows of ``A`` without eliminating over its columns.
    Elimination is fraction-free; rows are divided by their gcd to stay small.
    """
    basis: list[tuple[int, list[int]]] = []
    keep = []
    for i in range(gram.shape[0]):
        row = [int(v) for v in gram[i]]
        for col, vec in basis:
            if row[col]:
                f, g = vec[col], row[col]
                row = [r * f - g * v for r, v in zip(row, vec)]
                d = math.gcd(*row)
                if d > 1:
                    row = [r // d for r in row]
        pivot = next((k for k, v in enumerate(row) if v), None)
        if pivot is not None:
            basis.append((pivot, row))
            keep.append(i)
    return keep


def solve_feasibility(sys: FeasibilitySystem) -> FeasibilityResult:
    """Decide exactly whether ``sys`` has a nonnegative solution.

    Returns a basic feasible witness when one exists; the witness is checked
    by substitution into every original equality before being returned.
    """
    n = sys.n_vars
    if sys.n_rows == 0:
        return FeasibilityResult(True, (Fraction(0),) * n)
    mat, b = _integer_form(sys)

    # Drop redundant rows; an inconsistent dependency means infeasible.
    b_col = np.array(b, dtype=object)[:, None]
    gram = _matmul(mat, mat.T)
    keep = _independent_rows(gram)
    aug = gram.astype(object) + b_col @ b_col.T
    if len(_independent_rows(aug)) > len(keep):
        return FeasibilityResult(False, None)
    mat = mat[keep]
    m = len(keep)
    if m == 0:
        # every row is zero and every rhs is zero
        return FeasibilityResult(True, (Fraction(0),) * n)

    # Phase I, artificials n..n+m-1 basic at the start.  The basis inverse is
    # held as adj / det: integer numerators `binv`, `xb` over denominator `det`.
    basis = list(range(n, n + m))
    binv = np.identity(m, dtype=np.int64).astype(object)
    xb = np.array([b[i] for i in keep], dtype=object)
    det = 1
    in_basis = np.zeros(n, dtype=bool)
    pivots = 0
    bland = False

    while True:
        artificial = np.array([var >= n for var in basis])
        if not any(xb[artificial]):
            break
        # Pricing: reduced cost of column j is -(c_B^T B^-1 A_j); det > 0.
        # Reduce the duals to lowest terms first; raw adjugate entries overflow int64.
        y = binv[artificial].sum(axis=0)
        y = _compact((y // math.gcd(det, *(int(v) for v in y)))[None, :])
        gain = _matmul(y, mat)[0]
        gain[in_basis] = 0
        positive = np.flatnonzero(gain > 0)
        if positive.size == 0:
            break
        if bland:
            enter = int(positive[0])
        else:
            enter = int(positive[np.argmax(gain[positive])])
        alpha = binv @ mat[:, enter].astype(object)
        # ratio test by cross-multiplication, ties to the smallest basic index
        r = None
        for i in range(m):
            if alpha[i] > 0:
                if r is None:
                    r = i
                    continue
                lhs, rhs = xb[i] * alpha[r], xb[r] * alpha[i]
                if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                    r = i
        if r is None:
            # Phase I is bounded below by zero, so an unbounded ray cannot occur.
            raise AssertionError("unbounded Phase-I direction")
        bland = xb[r] == 0
        pivot = alpha[r]
        row_r, x_r = binv[r].copy(), xb[r]
        binv = (binv * pivot - np.outer(alpha, row_r)) // det
        xb = (xb * pivot - alpha * x_r) // det
        binv[r] = row_r
        xb[r] = x_r
        det = pivot
        leaving = basis[r]
        if leaving < n:
            in_basis[leaving] = False
        basis[r] = enter
        in_basis[enter] = True
        pivots += 1

    if any(xb[np.array([var >= n for var in basis])]):
        return FeasibilityResult(False, None, pivots)
    witness = [Fraction(0)] * n
    for var, x in zip(basis, xb):
        if var < n and x:
            witness[var] = Fraction(int(x), int(det))
    _verify(sys, witness)
    return FeasibilityResult(True, tuple(witness), pivots)


def _verify(sys: FeasibilitySystem, witness: list[Fraction]) -> None:
    assert all(v >= 0 for v in witness), "negative witness component"
    cols = [j for j, v in enumerate(witness) if v]
    denom = _lcm(witness[j].denominator for j in cols)
    nums = np.array([int(witness[j] * denom) for j in cols], dtype=object)
    if isinstance(sys.rows, np.ndarray) and sys.rows.dtype.kind in "iu":
        totals = [Fraction(int(t)) for t in sys.rows[:, cols].astype(object) @ nums] if cols else [Fraction(0)] * sys.n_rows
    else:
        totals = [sum((to_fraction(sys.rows[i][j]) * w for j, w in zip(cols, nums)), Fraction(0)) for i in range(sys.n_rows)]
    for i, total in enumerate(totals):
        assert total == to_fraction(sys.rhs[i]) * denom, f"witness violates equality {i}"


def _menu_tables(rho: StochasticChoiceFunction) -> tuple[np.ndarray, np.ndarray, list[Fraction]]:
    """Row index and probability of every ``(menu position, alternative)`` cell."""
    menus, k = enumerate_menus(rho.alt_set)
    n = rho.n
    row_of = np.full((k, n), -1, dtype=np.int64)
    positive = np.zeros((k, n), dtype=bool)
    rhs = []
    for pos, m in enumerate(menus):
        for x in members(m):
            row_of[pos, x] = len(rhs)
            p = rho(x, m)
            positive[pos, x] = p > 0
            rhs.append(p)
    return row_of, positive, rhs


def choice_array(candidates: Sequence[ChoiceFunction]) -> np.ndarray:
    """``(len(candidates), K)`` array of chosen alternatives."""
    return np.array([c.choices for c in candidates], dtype=np.int64).reshape(len(candidates), -1)


def representation_system(
    rho: StochasticChoiceFunction, candidates: Sequence[ChoiceFunction] | np.ndarray
) -> FeasibilitySystem:
    """One column per candidate, one row per ``(menu, member)`` of ``rho``."""
    choices = candidates if isinstance(candidates, np.ndarray) else choice_array(candidates)
    row_of, _, rhs = _menu_tables(rho)
    rows = row_of[np.arange(row_of.shape[0]), choices]  # (N, K)
    mat = np.zeros((len(rhs), choices.shape[0]), dtype=np.int64)
    mat[rows, np.arange(choices.shape[0])[:, None]] = 1
    return FeasibilitySystem(choices.shape[0], mat, rhs)


def prune_candidates(rho: StochasticChoiceFunction, candidates: Sequence[ChoiceFunction]) -> list[ChoiceFunction]:
    """Drop candidates that choose a zero-probability member somewhere.

    Any representation gives such a candidate weight at most that zero
    probability, so dropping them never changes feasibility.
    """
    return [candidates[j] for j in np.flatnonzero(_live_mask(rho, choice_array(candidates)))]


def _live_mask(rho: StochasticChoiceFunction, choices: np.ndarray) -> np.ndarray:
    _, positive, _ = _menu_tables(rho)
    return positive[np.arange(positive.shape[0]), choices].all(axis=1)


def find_representation(
    rho: StochasticChoiceFunction, candidates: Sequence[ChoiceFunction]
) -> RandomChoiceModel | None:
    """An exact distribution over ``candidates`` whose aggregate is ``rho``, if any."""
    if not candidates:
        raise PreconditionError("candidate list is empty")
    if len(candidates) > MAX_CANDIDATES:
        raise SizeLimitError(
            f"{len(candidates)} candidates exceed the solver limit of {MAX_CANDIDATES}; "
            "restrict to n <= 4 enumeration paths"
        )
    if any(c.alt_set != rho.alt_set for c in candidates):
        raise PreconditionError("candidates and choice data use different alternative sets")
    choices = choice_array(candidates)
    live = np.flatnonzero(_live_mask(rho, choices))
    if live.size == 0:
        return None
    result = solve_feasibility(representation_system(rho, choices[live]))
    if not result:
        return None
    return RandomChoiceModel(tuple((candidates[int(live[j])], w) for j, w in result.support().items()))
