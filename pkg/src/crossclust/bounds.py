"""Certification machinery for the worst-case cost-ratio guarantees.

This module provides the checkable pieces behind the two certified ratios
(1 + sqrt(2) for 0/1 matrices under L1, 2 for real matrices under L2):

* a per-block inequality relating pooled dissimilarity to the sum of the
  block's row-side and column-side spreads;
* a lower bound tying the optimal biclustering cost to the exact one-way
  optima;
* the exact decomposition of squared-norm pooled spread into row spread
  plus column spread minus an additive-fit residual;
* majority-block analysis of 0/1 blocks, with the spread-reducing swap
  procedure that drives a block into one of three extremal structures;
* the constrained maximization whose supremum is the binary/L1 ratio
  constant, checked by lattice search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .cost import (
    Norm,
    _values_of,
    columnwise_cost,
    pooled_cost,
    rowwise_cost,
)
from .errors import BoundViolationError, DescentViolationError, ValidationError
from .model import DataMatrix
from .oneway import SolverMode, exact_kcluster, kcluster_cols
from .search import DEFAULT_ORACLE_CAP, exact_biclustering

PASS_TOL = 1e-9
#: Below this the ratio objective's denominator is treated as zero; the
#: x = y = 0 corner is a removable 0/0 degeneracy, not an error.
DENOM_GUARD = 1e-12
CONSTRAINT_TOL = 1e-9


# ---------------------------------------------------------------------------
# Per-block inequality and the lower bound.


@dataclass(frozen=True)
class MarginReport:
    """Slack of one block in the inequality
    pooled <= (alpha/2) * (columnwise + rowwise)."""

    pooled: float
    columnwise: float
    rowwise: float
    alpha: float
    slack: float
    passed: bool


def per_bicluster_bound(y, norm: Norm, alpha: float) -> MarginReport:
    """Evaluate the per-block inequality at the given ratio constant.

    For the constant to be a certificate under L1 the block must be 0/1
    valued; under L2 with alpha = 2 the inequality holds for any reals.
    """
    v = pooled_cost(y, norm)
    vr = columnwise_cost(y, norm)
    vc = rowwise_cost(y, norm)
    slack = 0.5 * alpha * (vr + vc) - v
    return MarginReport(v, vr, vc, alpha, slack, slack >= -PASS_TOL)


@dataclass(frozen=True)
class LowerBoundReport:
    """Optimal biclustering cost against the exact one-way optima."""

    l_star: float
    l_r: float
    l_c: float
    passed: bool


def lower_bound_check(
    x: DataMatrix,
    k_r: int,
    k_c: int,
    norm: Norm,
    row_cap: int = DEFAULT_ORACLE_CAP,
    col_cap: int = DEFAULT_ORACLE_CAP,
) -> LowerBoundReport:
    """Verify l_star >= max(l_r, l_c) >= (l_r + l_c)/2 with l_r and l_c the
    exact one-way optima at the same cluster budgets."""
    l_star = exact_biclustering(x, k_r, k_c, norm, row_cap=row_cap, col_cap=col_cap).cost
    l_r = exact_kcluster(x, k_r, norm).cost
    l_c = kcluster_cols(x, k_c, norm, SolverMode.exact()).cost
    top = max(l_r, l_c)
    passed = l_star >= top - PASS_TOL and top >= 0.5 * (l_r + l_c) - PASS_TOL
    return LowerBoundReport(l_star, l_r, l_c, passed)


# ---------------------------------------------------------------------------
# Squared-norm decomposition.


@dataclass(frozen=True)
class L2Decomposition:
    """pooled = columnwise + rowwise - residual, residual >= 0.

    The residual is the squared error of the additive fit
    row mean + column mean - grand mean.
    """

    pooled: float
    columnwise: float
    rowwise: float
    residual: float


def l2_decomposition(y) -> L2Decomposition:
    arr = _values_of(y)
    row_means = arr.mean(axis=1)
    col_means = arr.mean(axis=0)
    fitted = row_means[:, None] + col_means[None, :] - arr.mean()
    residual = float(((arr - fitted) ** 2).sum())
    return L2Decomposition(
        pooled=pooled_cost(arr, Norm.L2),
        columnwise=columnwise_cost(arr, Norm.L2),
        rowwise=rowwise_cost(arr, Norm.L2),
        residual=residual,
    )


# ---------------------------------------------------------------------------
# Majority blocks and spread-reducing swaps (0/1 blocks only).


def _require_binary(arr: np.ndarray) -> None:
    if not np.all((arr == 0.0) | (arr == 1.0)):
        raise ValidationError("operation requires a 0/1 valued block")


def _majority_masks(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rows/columns with strictly more ones than zeros.  Exact ties go to
    the non-majority side."""
    n, m = arr.shape
    row_mask = arr.sum(axis=1) * 2 > m
    col_mask = arr.sum(axis=0) * 2 > n
    return row_mask, col_mask


@dataclass(frozen=True)
class BlockDecomposition:
    """Quadrant structure of a 0/1 block under majority splitting.

    Quadrant A is majority rows x majority columns, B majority rows x the
    rest, C the rest x majority columns, D the rest x the rest.  If the
    block had more ones than zeros it is complemented first so that the
    pooled L1 cost equals the total number of ones.
    """

    o_r: tuple[int, ...]
    o_c: tuple[int, ...]
    ones_a: int
    ones_b: int
    ones_c: int
    ones_d: int
    x_frac: float
    y_frac: float
    a_frac: float
    b_frac: float
    c_frac: float
    d_frac: float
    complemented: bool


def block_decomposition(y) -> BlockDecomposition:
    arr = _values_of(y)
    _require_binary(arr)
    n, m = arr.shape
    total_ones = int(round(arr.sum()))
    complemented = total_ones > n * m - total_ones
    work = 1.0 - arr if complemented else arr
    row_mask, col_mask = _majority_masks(work)
    blocks = {
        "a": work[row_mask][:, col_mask],
        "b": work[row_mask][:, ~col_mask],
        "c": work[~row_mask][:, col_mask],
        "d": work[~row_mask][:, ~col_mask],
    }
    ones = {k: int(round(v.sum())) for k, v in blocks.items()}
    size = n * m
    return BlockDecomposition(
        o_r=tuple(int(i) for i in np.flatnonzero(row_mask)),
        o_c=tuple(int(j) for j in np.flatnonzero(col_mask)),
        ones_a=ones["a"],
        ones_b=ones["b"],
        ones_c=ones["c"],
        ones_d=ones["d"],
        x_frac=float(row_mask.sum()) / n,
        y_frac=float(col_mask.sum()) / m,
        a_frac=ones["a"] / size,
        b_frac=ones["b"] / size,
        c_frac=ones["c"] / size,
        d_frac=ones["d"] / size,
        complemented=complemented,
    )


@dataclass(frozen=True)
class SwapStep:
    """One applied swap: a one moved from ``one_pos`` to ``zero_pos``."""

    kind: str
    one_pos: tuple[int, int]
    zero_pos: tuple[int, int]
    spread_before: float
    spread_after: float


#: Swap scan order: a one in the source quadrant exchanged with a zero in
#: the destination quadrant.  Any of these strictly lowers the combined
#: row/column spread while the pooled cost (the number of ones, median 0)
#: stays fixed.
_SWAP_ORDER = (("D", "A"), ("D", "B"), ("D", "C"), ("B", "A"), ("C", "A"))


def _quadrant_mask(name: str, row_mask: np.ndarray, col_mask: np.ndarray) -> np.ndarray:
    rows = row_mask if name in ("A", "B") else ~row_mask
    cols = col_mask if name in ("A", "C") else ~col_mask
    return np.outer(rows, cols)


def _first_position(mask: np.ndarray) -> tuple[int, int]:
    hits = np.argwhere(mask)
    i, j = hits[0]
    return int(i), int(j)


def _find_swap(arr: np.ndarray) -> tuple[str, tuple[int, int], tuple[int, int]] | None:
    row_mask, col_mask = _majority_masks(arr)
    for src, dst in _SWAP_ORDER:
        ones_here = _quadrant_mask(src, row_mask, col_mask) & (arr == 1.0)
        zeros_there = _quadrant_mask(dst, row_mask, col_mask) & (arr == 0.0)
        if ones_here.any() and zeros_there.any():
            return (
                f"{src}->{dst}",
                _first_position(ones_here),
                _first_position(zeros_there),
            )
    return None


def _spread(arr: np.ndarray) -> float:
    return columnwise_cost(arr, Norm.L1) + rowwise_cost(arr, Norm.L1)


def swap_normalize(y) -> tuple[np.ndarray, tuple[SwapStep, ...]]:
    """Apply spread-reducing swaps until none applies.

    Requires a 0/1 block with at most as many ones as zeros.  Majority
    rows/columns are recomputed after every swap (a swap can flip a line's
    majority status), and every applied swap is checked to lower the
    combined spread by at least one; a violation raises
    :class:`DescentViolationError` instead of being accepted silently.
    The terminal block always matches one of the three extremal structures
    (see :func:`terminal_structure`).
    """
    arr = np.array(_values_of(y), dtype=float)
    _require_binary(arr)
    ones = int(round(arr.sum()))
    if 2 * ones > arr.size:
        raise ValidationError("swap normalization requires ones <= zeros")
    spread = _spread(arr)
    trace: list[SwapStep] = []
    while True:
        found = _find_swap(arr)
        if found is None:
            break
        kind, one_pos, zero_pos = found
        arr[one_pos] = 0.0
        arr[zero_pos] = 1.0
        new_spread = _spread(arr)
        if new_spread > spread - 1.0 + PASS_TOL:
            raise DescentViolationError(
                f"swap {kind} at {one_pos}/{zero_pos} changed spread "
                f"{spread} -> {new_spread}; expected a drop of at least 1"
            )
        trace.append(SwapStep(kind, one_pos, zero_pos, spread, new_spread))
        spread = new_spread
    if terminal_structure(arr) is None:
        raise BoundViolationError(
            "swap-normalized block matches none of the expected structures"
        )
    arr.setflags(write=False)
    return arr, tuple(trace)


def terminal_structure(y) -> str | None:
    """Classify a 0/1 block into one of the swap-terminal structures.

    Returns "i" when quadrants A, B, C are all ones, "ii" when A is all
    ones and D all zeros, "iii" when B, C, D are all zeros (empty
    quadrants count as satisfying either), or None when none applies.
    """
    arr = _values_of(y)
    _require_binary(arr)
    row_mask, col_mask = _majority_masks(arr)
    a = arr[row_mask][:, col_mask]
    b = arr[row_mask][:, ~col_mask]
    c = arr[~row_mask][:, col_mask]
    d = arr[~row_mask][:, ~col_mask]
    if np.all(a == 1.0) and np.all(b == 1.0) and np.all(c == 1.0):
        return "i"
    if np.all(a == 1.0) and np.all(d == 0.0):
        return "ii"
    if np.all(b == 0.0) and np.all(c == 0.0) and np.all(d == 0.0):
        return "iii"
    return None


# ---------------------------------------------------------------------------
# The ratio-constant maximization.
#
# Normalized block variables: x and y are the fractions of majority rows
# and columns, a/b/c/d the per-quadrant one-counts divided by the block
# size.  The objective 2(a+b+c+d)/(x+y-2a+2d) is maximized subject to at
# most half the entries being ones and one of three structural constraint
# sets mirroring the swap-terminal structures.


@dataclass(frozen=True)
class AlphaPoint:
    x: float
    y: float
    a: float
    b: float
    c: float
    d: float
    case_tag: str
    objective: float | None = None


def alpha_objective(point: AlphaPoint) -> float | None:
    """Evaluate 2(a+b+c+d)/(x+y-2a+2d) after validating the point's
    constraints.  Returns None (not an error) when the denominator is
    below the guard, which only happens at the degenerate all-zero corner.
    """
    _check_constraints(point)
    den = point.x + point.y - 2.0 * point.a + 2.0 * point.d
    if den <= DENOM_GUARD:
        return None
    return 2.0 * (point.a + point.b + point.c + point.d) / den


def make_alpha_point(
    x: float, y: float, a: float, b: float, c: float, d: float, case_tag: str
) -> AlphaPoint:
    point = AlphaPoint(x, y, a, b, c, d, case_tag)
    return replace(point, objective=alpha_objective(point))


def _check_constraints(p: AlphaPoint) -> None:
    tol = CONSTRAINT_TOL

    def fail(what: str) -> None:
        raise ValidationError(f"case {p.case_tag}: constraint {what} violated")

    if p.case_tag not in ("i", "ii", "iii"):
        raise ValidationError(f"unknown case tag {p.case_tag!r}")
    if not (-tol <= p.x <= 1.0 + tol):
        fail("x in [0, 1]")
    if not (-tol <= p.y <= 1.0 + tol):
        fail("y in [0, 1]")
    for name in ("a", "b", "c", "d"):
        if getattr(p, name) < -tol:
            fail(f"{name} >= 0")
    if p.a + p.b + p.c + p.d > 0.5 + tol:
        fail("a+b+c+d <= 1/2")
    if p.case_tag == "i":
        if abs(p.a - p.x * p.y) > tol:
            fail("a = x*y")
        if abs(p.b - p.x * (1.0 - p.y)) > tol:
            fail("b = x*(1-y)")
        if abs(p.c - (1.0 - p.x) * p.y) > tol:
            fail("c = (1-x)*y")
        if p.d > (1.0 - p.x) * (1.0 - p.y) + tol:
            fail("d <= (1-x)*(1-y)")
    elif p.case_tag == "ii":
        if abs(p.a - p.x * p.y) > tol:
            fail("a = x*y")
        if p.b > p.x * (1.0 - p.y) + tol:
            fail("b <= x*(1-y)")
        if p.c > (1.0 - p.x) * p.y + tol:
            fail("c <= (1-x)*y")
        if abs(p.d) > tol:
            fail("d = 0")
    else:
        if p.a > p.x * p.y + tol:
            fail("a <= x*y")
        for name in ("b", "c", "d"):
            if abs(getattr(p, name)) > tol:
                fail(f"{name} = 0")


def analytic_optima() -> tuple[AlphaPoint, AlphaPoint]:
    """The two closed-form maximizers; both evaluate to 1 + sqrt(2)."""
    x1 = 1.0 - math.sqrt(0.5)
    p1 = make_alpha_point(
        x1, x1, x1 * x1, x1 * (1.0 - x1), (1.0 - x1) * x1, 0.0, "i"
    )
    x2 = math.sqrt(0.5)
    p2 = make_alpha_point(x2, x2, x2 * x2, 0.0, 0.0, 0.0, "ii")
    return p1, p2


@dataclass(frozen=True)
class GridSearchResult:
    """Maximizer found by the lattice search.

    ``best`` includes the two analytic optima as lattice-external
    candidates; ``lattice_best`` is the best point of the lattice itself.
    """

    best: AlphaPoint
    lattice_best: AlphaPoint
    resolution: int

    @property
    def best_value(self) -> float:
        assert self.best.objective is not None
        return self.best.objective

    @property
    def lattice_value(self) -> float:
        assert self.lattice_best.objective is not None
        return self.lattice_best.objective


def grid_search_alpha(resolution: int) -> GridSearchResult:
    """Maximize the ratio objective over the step-1/resolution lattice.

    Within each constraint case the objective is monotone along the free
    one-count variables (their lattice ranges are intervals and the
    denominator involves none of b, c and only d with monotone effect), so
    for every lattice (x, y) the case maximum over the remaining free
    variables sits at an interval endpoint.  Only those endpoints are
    evaluated; every skipped lattice point is dominated by an evaluated
    one, so the returned lattice maximum is the exact lattice maximum.
    """
    if resolution < 2:
        raise ValidationError("resolution must be >= 2")
    res = resolution
    g = np.arange(res + 1) / res
    X, Y = np.meshgrid(g, g, indexing="ij")
    eps = 1e-9
    best_lattice: AlphaPoint | None = None

    def consider(obj: np.ndarray, builder) -> None:
        nonlocal best_lattice
        idx = np.unravel_index(int(np.argmax(obj)), obj.shape)
        val = float(obj[idx])
        if not np.isfinite(val):
            return
        if best_lattice is None or val > best_lattice.objective:
            best_lattice = builder(idx)

    a_full = X * Y
    b_full = X * (1.0 - Y)
    c_full = (1.0 - X) * Y

    # Case i: a, b, c pinned to their quadrant capacities, d free.  The
    # objective is monotone in d, so check both endpoints of the d range.
    s0 = a_full + b_full + c_full
    d_room = np.minimum((1.0 - X) * (1.0 - Y), 0.5 - s0)
    feasible = d_room >= -1e-15
    d_top = np.floor(np.maximum(d_room, 0.0) * res + eps) / res
    den0 = X + Y - 2.0 * a_full
    for d_grid in (np.zeros_like(d_top), d_top):
        den = den0 + 2.0 * d_grid
        ok = feasible & (den > DENOM_GUARD)
        obj = np.where(ok, 2.0 * (s0 + d_grid) / np.where(ok, den, 1.0), -np.inf)

        def build_i(idx, d_grid=d_grid):
            return make_alpha_point(
                float(X[idx]), float(Y[idx]), float(a_full[idx]),
                float(b_full[idx]), float(c_full[idx]), float(d_grid[idx]), "i",
            )

        consider(obj, build_i)

    # Case ii: a pinned to x*y, d = 0, b and c free on the lattice.  The
    # denominator involves neither, so the maximum is at the largest
    # feasible lattice value of b + c.
    nb = np.floor(b_full * res + eps)
    nc = np.floor(c_full * res + eps)
    cap = np.floor((0.5 - a_full) * res + eps)
    s_units = np.minimum(nb + nc, cap)
    den = X + Y - 2.0 * a_full
    ok = (cap >= 0) & (den > DENOM_GUARD)
    obj = np.where(ok, 2.0 * (a_full + s_units / res) / np.where(ok, den, 1.0), -np.inf)

    def build_ii(idx):
        b_units = min(float(nb[idx]), float(s_units[idx]))
        c_units = float(s_units[idx]) - b_units
        return make_alpha_point(
            float(X[idx]), float(Y[idx]), float(a_full[idx]),
            b_units / res, c_units / res, 0.0, "ii",
        )

    consider(obj, build_ii)

    # Case iii: b = c = d = 0, a free; monotone in a, so only the top
    # lattice value below min(x*y, 1/2) matters.
    a_top = np.floor(np.minimum(a_full, 0.5) * res + eps) / res
    den = X + Y - 2.0 * a_top
    ok = den > DENOM_GUARD
    obj = np.where(ok, 2.0 * a_top / np.where(ok, den, 1.0), -np.inf)

    def build_iii(idx):
        return make_alpha_point(
            float(X[idx]), float(Y[idx]), float(a_top[idx]), 0.0, 0.0, 0.0, "iii"
        )

    consider(obj, build_iii)

    assert best_lattice is not None and best_lattice.objective is not None
    best = best_lattice
    for candidate in analytic_optima():
        assert candidate.objective is not None
        if candidate.objective > best.objective:
            best = candidate
    return GridSearchResult(best=best, lattice_best=best_lattice, resolution=res)
