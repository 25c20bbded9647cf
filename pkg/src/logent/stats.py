"""Metrical logical entropy: variance and covariance as two-draw averages.

Replacing the 0/1 distinction indicator of logical entropy by a squared
value difference turns the pair sum into twice the variance; the bivariate
version gives twice the covariance.  Rao's quadratic entropy covers both
with a general distance matrix.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ._numeric import EXACT, FLOAT, as_exact, as_float
from .entropy import Dist, JointDist
from .errors import DimensionMismatch, LengthMismatch, SchemaError


def _conv(mode):
    return as_exact if mode == EXACT else as_float


@dataclass(frozen=True)
class MetricRV:
    """Real values ``x_i`` with point probabilities; duplicate values are allowed."""

    values: tuple
    probs: Dist

    def __post_init__(self):
        if len(self.values) != len(self.probs):
            raise LengthMismatch(f"{len(self.values)} values for {len(self.probs)} probabilities")
        object.__setattr__(self, "values", tuple(_conv(self.probs.mode)(v) for v in self.values))

    def mean(self):
        return sum(p * x for p, x in zip(self.probs.probs, self.values))

    def variance(self):
        """``E(X**2) - E(X)**2``."""
        ex2 = sum(p * x * x for p, x in zip(self.probs.probs, self.values))
        return ex2 - self.mean() ** 2


@dataclass(frozen=True)
class MetricJointRV:
    x_values: tuple
    y_values: tuple
    joint: JointDist

    def __post_init__(self):
        if self.joint.ndim != 2 or self.joint.shape != (len(self.x_values), len(self.y_values)):
            raise DimensionMismatch(
                f"joint of shape {self.joint.shape} for {len(self.x_values)}x{len(self.y_values)} values"
            )
        conv = _conv(self.joint.mode)
        object.__setattr__(self, "x_values", tuple(conv(v) for v in self.x_values))
        object.__setattr__(self, "y_values", tuple(conv(v) for v in self.y_values))

    def covariance(self):
        """``E(XY) - E(X)E(Y)``."""
        t = self.joint.table
        xs, ys = self.x_values, self.y_values
        zero = self.joint.zero()
        exy = ex = ey = zero
        for i, j in itertools.product(range(len(xs)), range(len(ys))):
            p = t[i, j]
            exy += p * xs[i] * ys[j]
            ex += p * xs[i]
            ey += p * ys[j]
        return exy - ex * ey


class DistanceMatrix:
    """Symmetric non-negative matrix with a zero diagonal."""

    def __init__(self, d, mode=None):
        rows = [list(r) for r in d]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SchemaError("distance matrix must be square")
        flat = [v for r in rows for v in r]
        if mode is None:
            mode = FLOAT if any(isinstance(v, float) for v in flat) else EXACT
        conv = _conv(mode)
        arr = np.empty((n, n), dtype=object if mode == EXACT else np.float64)
        for i in range(n):
            for j in range(n):
                arr[i, j] = conv(rows[i][j])
        for i in range(n):
            if arr[i, i] != 0:
                raise SchemaError(f"diagonal entry ({i},{i}) is not zero")
            for j in range(n):
                if arr[i, j] < 0:
                    raise SchemaError(f"negative distance at ({i},{j})")
                if arr[i, j] != arr[j, i]:
                    raise SchemaError(f"distance matrix not symmetric at ({i},{j})")
        self.d = arr
        self.mode = mode

    @property
    def n(self):
        return self.d.shape[0]

    @classmethod
    def logical(cls, n, mode=EXACT):
        """``d_ij = 1 - delta_ij``."""
        return cls([[0 if i == j else 1 for j in range(n)] for i in range(n)], mode)

    @classmethod
    def squared_difference(cls, values, mode=None):
        if mode is None:
            mode = FLOAT if any(isinstance(v, float) for v in values) else EXACT
        xs = [_conv(mode)(v) for v in values]
        return cls([[(a - b) ** 2 for b in xs] for a in xs], mode)

    @classmethod
    def zeros(cls, n, mode=EXACT):
        return cls([[0] * n for _ in range(n)], mode)


def metrical_h(rv, ordered=True):
    """``sum_{i != j} p_i p_j (x_i - x_j)**2``; halved when ``ordered`` is False."""
    p, x = rv.probs.probs, rv.values
    total = p[0] * 0
    for i, j in itertools.permutations(range(len(p)), 2):
        total += p[i] * p[j] * (x[i] - x[j]) ** 2
    return total if ordered else total / 2


def metrical_cov(rv, ordered=True):
    """``sum p_ij p_i'j' (x_i - x_i')(y_j - y_j')`` over ordered pairs of distinct cells.

    With ``ordered=False`` only lexicographically increasing pairs are kept,
    which halves the sum.
    """
    t = rv.joint.table
    xs, ys = rv.x_values, rv.y_values
    cells = list(itertools.product(range(len(xs)), range(len(ys))))
    total = rv.joint.zero()
    for a, b in itertools.permutations(range(len(cells)), 2):
        if not ordered and a > b:
            continue
        (i, j), (k, l) = cells[a], cells[b]
        total += t[i, j] * t[k, l] * (xs[i] - xs[k]) * (ys[j] - ys[l])
    return total


def quadratic_entropy(d, p):
    """Rao's ``sum_ij d_ij p_i p_j``."""
    if d.n != len(p):
        raise DimensionMismatch(f"{d.n}x{d.n} distances for {len(p)} probabilities")
    q = p.probs
    total = q[0] * 0
    for i in range(d.n):
        for j in range(d.n):
            total += d.d[i, j] * q[i] * q[j]
    return total
