"""Cost functionals for clusterings and biclusterings.

Two deviation measures are supported: under ``Norm.L1`` the dissimilarity
of a multiset is the sum of absolute deviations from its lower median,
under ``Norm.L2`` it is the sum of squared deviations from its mean.
For an even-sized multiset every point of the closed median interval
gives the same absolute-deviation sum; fixing the lower median just makes
outputs deterministic.

On top of the multiset measure three aggregate costs are defined for a
matrix with a row partition and/or a column partition:

* row-clustering objective: sum over row clusters and over columns of
  the within-column dissimilarity of each cluster-column slice;
* column-clustering objective: the transposed analogue;
* biclustering cost: sum over all induced blocks of the dissimilarity of
  the block's pooled entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError
from .model import Bicluster, DataMatrix, Partition

#: Certified worst-case ratio of the independent-clustering scheme cost to
#: the optimal biclustering cost, per input class.
BINARY_L1_RATIO_BOUND = 1.0 + math.sqrt(2.0)
REAL_L2_RATIO_BOUND = 2.0


class Norm(Enum):
    """Choice of deviation measure: absolute (median) or squared (mean)."""

    L1 = "l1"
    L2 = "l2"

    @classmethod
    def parse(cls, text: str) -> "Norm":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValidationError(f"unknown norm {text!r}; expected 'l1' or 'l2'")


def certificate_bound(norm: Norm, is_binary: bool) -> float | None:
    """Ratio bound certified for the given norm/input class, if any.

    The L2 bound holds for all real matrices and hence also for binary
    ones; the L1 bound is certified only for binary input.
    """
    if norm is Norm.L2:
        return REAL_L2_RATIO_BOUND
    if is_binary:
        return BINARY_L1_RATIO_BOUND
    return None


@dataclass(frozen=True)
class CostBreakdown:
    """Row-clustering, column-clustering and biclustering costs of one
    (row partition, column partition) pair under one norm."""

    l_r: float
    l_c: float
    l: float
    norm: Norm

    def __post_init__(self):
        for name in ("l_r", "l_c", "l"):
            val = getattr(self, name)
            if not math.isfinite(val) or val < 0.0:
                raise ValidationError(f"{name} must be finite and >= 0, got {val}")


def _values_of(y) -> np.ndarray:
    """Accept a Bicluster, DataMatrix or array-like and return a 2-D array."""
    if isinstance(y, Bicluster):
        return y.values
    if isinstance(y, DataMatrix):
        return y.values
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValidationError("expected a nonempty 2-D block of values")
    return arr


def dissimilarity(values, norm: Norm) -> float:
    """Dissimilarity of a multiset of reals under the given norm.

    Zero iff all values are equal; raises on an empty multiset.
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValidationError("dissimilarity of an empty multiset is undefined")
    if norm is Norm.L1:
        med = np.sort(v)[(v.size - 1) // 2]
        return float(np.abs(v - med).sum())
    # a constant multiset must cost exactly 0; the computed mean of n
    # equal values can round off the value itself (e.g. three 0.1s)
    if v.min() == v.max():
        return 0.0
    return float(((v - v.mean()) ** 2).sum())


def pooled_cost(y, norm: Norm) -> float:
    """Dissimilarity of all entries of a block pooled into one multiset."""
    return dissimilarity(_values_of(y).ravel(), norm)


def _columns_spread(arr: np.ndarray, norm: Norm) -> float:
    """Sum over columns of the within-column dissimilarity."""
    if norm is Norm.L1:
        med = np.sort(arr, axis=0)[(arr.shape[0] - 1) // 2, :]
        return float(np.abs(arr - med).sum())
    dev = (arr - arr.mean(axis=0)) ** 2
    constant = arr.min(axis=0) == arr.max(axis=0)
    if constant.any():
        dev[:, constant] = 0.0  # same rounding concern as in dissimilarity
    return float(dev.sum())


def columnwise_cost(y, norm: Norm) -> float:
    """Sum of per-column dissimilarities of a block.

    This is the contribution the block's rows would make to the
    row-clustering objective if they formed a single cluster.
    """
    return _columns_spread(_values_of(y), norm)


def rowwise_cost(y, norm: Norm) -> float:
    """Sum of per-row dissimilarities of a block (transposed analogue)."""
    return _columns_spread(_values_of(y).T, norm)


def oneway_row_cost(x: DataMatrix, rows: Partition, norm: Norm) -> float:
    """Row-clustering objective: for every row cluster and every column,
    the dissimilarity of that cluster's slice of the column, summed."""
    if rows.n_items != x.n_rows:
        raise ValidationError(
            f"row partition covers {rows.n_items} items, matrix has {x.n_rows} rows"
        )
    vals = x.values
    total = 0.0
    for members in rows.clusters:
        total += _columns_spread(vals[np.asarray(members), :], norm)
    return total


def oneway_col_cost(x: DataMatrix, cols: Partition, norm: Norm) -> float:
    """Column-clustering objective; symmetric to :func:`oneway_row_cost`."""
    if cols.n_items != x.n_cols:
        raise ValidationError(
            f"column partition covers {cols.n_items} items, matrix has {x.n_cols} columns"
        )
    vals = x.values
    total = 0.0
    for members in cols.clusters:
        total += _columns_spread(vals[:, np.asarray(members)].T, norm)
    return total


def biclustering_cost(
    x: DataMatrix, rows: Partition, cols: Partition, norm: Norm
) -> tuple[CostBreakdown, np.ndarray]:
    """Evaluate a (row partition, column partition) pair.

    Returns the cost breakdown and the grid of per-block pooled costs,
    indexed by (row cluster label, column cluster label).
    """
    if rows.n_items != x.n_rows or cols.n_items != x.n_cols:
        raise ValidationError("partition lengths do not match matrix dimensions")
    vals = x.values
    row_groups = [np.asarray(g) for g in rows.clusters]
    col_groups = [np.asarray(g) for g in cols.clusters]
    grid = np.zeros((len(row_groups), len(col_groups)))
    for r, ridx in enumerate(row_groups):
        sub = vals[ridx, :]
        for c, cidx in enumerate(col_groups):
            grid[r, c] = dissimilarity(sub[:, cidx].ravel(), norm)
    breakdown = CostBreakdown(
        l_r=oneway_row_cost(x, rows, norm),
        l_c=oneway_col_cost(x, cols, norm),
        l=float(grid.sum()),
        norm=norm,
    )
    return breakdown, grid
