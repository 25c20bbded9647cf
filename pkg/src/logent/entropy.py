"""Classical logical and Shannon entropies.

Logical quantities are polynomial in the probabilities, so for exact-mode
inputs they come back as :class:`fractions.Fraction`.  Anything involving a
logarithm is a float.  The compound logical entropies are computed the way
they are defined, as product-measure sums over pairs of independent draws;
the Venn identities between them are then checked rather than assumed.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from ._numeric import EXACT, FLOAT, as_exact, as_float, coerce, log, render
from .errors import AxisCount, DomainError, LengthMismatch, SchemaError
from .partitions import Partition

SUM_TOL = 1e-12


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dist:
    """Finite probability distribution.

    ``mode`` is ``"exact"`` (Fractions) or ``"float"``; when omitted it is
    inferred, exact unless some entry is a float.
    """

    probs: tuple
    mode: str = None

    def __post_init__(self):
        probs, mode = coerce(self.probs, self.mode)
        if not probs:
            raise SchemaError("a distribution needs at least one entry")
        if any(p < 0 for p in probs):
            raise SchemaError(f"negative probability in {probs}")
        total = sum(probs)
        if mode == EXACT and total != 1:
            raise SchemaError(f"probabilities sum to {total}, not 1")
        if mode == FLOAT and abs(total - 1.0) > SUM_TOL:
            raise SchemaError(f"probabilities sum to {total!r}, not 1 within {SUM_TOL}")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def uniform(cls, n, mode=EXACT):
        if mode == EXACT:
            return cls(tuple(Fraction(1, n) for _ in range(n)), EXACT)
        return cls(tuple(1.0 / n for _ in range(n)), FLOAT)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(tuple(obj), None if not any(isinstance(v, (list, str)) for v in obj) else EXACT)
        if not isinstance(obj, dict) or "probs" not in obj:
            raise SchemaError("distribution JSON needs 'probs'")
        mode = obj.get("mode")
        probs = obj["probs"]
        if mode is None and any(isinstance(v, (list, str)) for v in probs):
            mode = EXACT
        return cls(tuple(probs), mode)

    def to_json(self):
        return {"probs": [render(p) for p in self.probs], "mode": self.mode}

    def __len__(self):
        return len(self.probs)

    def array(self):
        if self.mode == EXACT:
            return np.array(self.probs, dtype=object)
        return np.array(self.probs, dtype=np.float64)

    def to_float(self):
        return Dist(tuple(float(p) for p in self.probs), FLOAT)


@dataclass(frozen=True)
class ProbPartition:
    """A partition together with point probabilities on its universe."""

    partition: Partition
    point_probs: Dist

    def __post_init__(self):
        if len(self.point_probs) != self.partition.n:
            raise LengthMismatch(
                f"{len(self.point_probs)} point probabilities for a universe of {self.partition.n}"
            )

    @property
    def mode(self):
        return self.point_probs.mode

    def block_probs(self):
        p = self.point_probs.probs
        zero = Fraction(0) if self.mode == EXACT else 0.0
        return tuple(sum((p[j] for j in b), zero) for b in self.partition.blocks)

    def with_partition(self, partition):
        return ProbPartition(partition, self.point_probs)


class JointDist:
    """Probability table over a product of 2 or 3 finite value sets.

    ``table`` is an ndarray with one axis per variable (object dtype holding
    Fractions in exact mode).  ``axes`` are the value labels per variable.
    """

    def __init__(self, table, axes=None, mode=None):
        raw = np.asarray(table, dtype=object)
        if raw.ndim not in (2, 3):
            raise AxisCount(f"joint distributions take 2 or 3 axes, got {raw.ndim}")
        flat, mode = coerce(raw.ravel().tolist(), mode)
        if mode == EXACT:
            arr = np.empty(len(flat), dtype=object)
            arr[:] = flat
            arr = arr.reshape(raw.shape)
        else:
            arr = np.array(flat, dtype=np.float64).reshape(raw.shape)
        if axes is None:
            axes = tuple(tuple(str(v) for v in range(s)) for s in raw.shape)
        axes = tuple(tuple(str(v) for v in a) for a in axes)
        if tuple(len(a) for a in axes) != raw.shape:
            raise SchemaError(f"axis labels {axes} do not match table shape {raw.shape}")
        for a in axes:
            if len(a) < 2:
                raise SchemaError("each axis needs at least two values")
            if len(set(a)) != len(a):
                raise SchemaError(f"duplicate values on axis {a}")
        if any(v < 0 for v in flat):
            raise SchemaError("negative probability in joint table")
        total = sum(flat)
        if mode == EXACT and total != 1:
            raise SchemaError(f"joint table sums to {total}, not 1")
        if mode == FLOAT and abs(total - 1.0) > SUM_TOL:
            raise SchemaError(f"joint table sums to {total!r}, not 1 within {SUM_TOL}")
        self.table = arr
        self.axes = axes
        self.mode = mode

    @property
    def ndim(self):
        return self.table.ndim

    @property
    def shape(self):
        return self.table.shape

    def __repr__(self):
        return f"JointDist(shape={self.shape}, mode={self.mode!r})"

    def marginal(self, keep):
        """Marginal table over the axes in ``keep`` (kept in increasing order)."""
        keep = tuple(sorted(keep))
        drop = tuple(a for a in range(self.ndim) if a not in keep)
        if not drop:
            return self.table
        return self.table.sum(axis=drop)

    def marginal_dist(self, keep):
        m = self.marginal(keep)
        return Dist(tuple(m.ravel().tolist()), self.mode)

    def cells(self):
        """Flat probabilities plus one label array per axis (C order)."""
        p = self.table.ravel()
        idx = np.indices(self.shape).reshape(self.ndim, -1)
        return p, [idx[a] for a in range(self.ndim)]

    def zero(self):
        return Fraction(0) if self.mode == EXACT else 0.0

    # -- JSON -------------------------------------------------------------

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "axes" not in obj or "table" not in obj:
            raise SchemaError("joint JSON needs 'axes' and 'table'")
        axes = obj["axes"]
        if not isinstance(axes, list) or not all(isinstance(a, list) for a in axes):
            raise SchemaError("'axes' must be a list of value lists")
        axes = [[str(v) for v in a] for a in axes]
        if len(axes) not in (2, 3):
            raise AxisCount(f"joint distributions take 2 or 3 axes, got {len(axes)}")
        mode = obj.get("mode")
        shape = tuple(len(a) for a in axes)
        lookup = [{v: i for i, v in enumerate(a)} for a in axes]
        table = np.empty(shape, dtype=object)
        table[...] = 0
        entries = obj["table"]
        if isinstance(entries, dict):
            items = entries.items()
        elif isinstance(entries, list):
            items = [(tuple(e["key"]), e["p"]) for e in entries]
        else:
            raise SchemaError("'table' must be an object keyed by '(x,y)'")
        for key, value in items:
            parts = _parse_key(key)
            if len(parts) != len(axes):
                raise SchemaError(f"key {key!r} does not name one value per axis")
            try:
                idx = tuple(lookup[a][v] for a, v in enumerate(parts))
            except KeyError as exc:
                raise SchemaError(f"key {key!r} uses an unknown axis value") from exc
            table[idx] = as_exact(value) if mode != FLOAT else as_float(value)
        if mode is None:
            mode = EXACT if not any(isinstance(v, float) for v in entries.values()) else FLOAT
        return cls(table, axes, mode)

    def to_json(self):
        table = {}
        for idx in itertools.product(*(range(s) for s in self.shape)):
            key = "(" + ",".join(self.axes[a][i] for a, i in enumerate(idx)) + ")"
            table[key] = render(self.table[idx])
        return {"axes": [list(a) for a in self.axes], "table": table, "mode": self.mode}


def _parse_key(key):
    if isinstance(key, (list, tuple)):
        return [str(v) for v in key]
    s = str(key).strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return [part.strip() for part in s.split(",")]


def even_odd_dice(mode=EXACT):
    """Two fair parity dice X, Y (uniform on 2x2)."""
    q = Fraction(1, 4) if mode == EXACT else 0.25
    return JointDist([[q, q], [q, q]], (("0", "1"), ("0", "1")), mode)


def parity_dice(mode=EXACT):
    """X, Y fair parity dice and Z = X + Y mod 2 as a 3-axis table."""
    q = Fraction(1, 4) if mode == EXACT else 0.25
    t = np.empty((2, 2, 2), dtype=object)
    for x, y, z in itertools.product(range(2), repeat=3):
        t[x, y, z] = q if z == (x + y) % 2 else q * 0
    return JointDist(t, (("0", "1"),) * 3, mode)


# ---------------------------------------------------------------------------
# simple entropies
# ---------------------------------------------------------------------------

def h(d):
    """Logical entropy ``1 - sum p_j**2``."""
    return 1 - sum(p * p for p in d.probs)


def h_pairs(d):
    """``sum_{j != k} p_j p_k``; equal to :func:`h` term by term."""
    p = d.probs
    total = d.probs[0] * 0
    for j, k in itertools.permutations(range(len(p)), 2):
        total += p[j] * p[k]
    return total


def h_partition(pp):
    """Logical entropy of a partition under point probabilities."""
    return 1 - sum(b * b for b in pp.block_probs())


def h_partition_pairs(pp):
    """Product measure of the ditset, summed pair by pair."""
    lab = pp.partition.labels()
    p = pp.point_probs.probs
    n = len(p)
    total = p[0] * 0
    for j in range(n):
        for k in range(n):
            if lab[j] != lab[k]:
                total += p[j] * p[k]
    return total


def H(d, base=2):
    """Shannon entropy, with ``0 log(1/0) = 0``."""
    return sum(float(p) * log(1.0 / float(p), base) for p in d.probs if p > 0)


def _H_array(a, base=2):
    return sum(float(p) * log(1.0 / float(p), base) for p in np.ravel(a) if p > 0)


def _h_array(a):
    return 1 - sum(p * p for p in np.ravel(a))


# ---------------------------------------------------------------------------
# compound entropies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompoundLogical:
    h_x: object
    h_y: object
    h_joint: object
    h_x_given_y: object
    h_y_given_x: object
    m_xy: object

    def as_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class CompoundShannon:
    H_x: float
    H_y: float
    H_joint: float
    H_x_given_y: float
    H_y_given_x: float
    I_xy: float

    def as_dict(self):
        return dict(self.__dict__)


def _exact_pair_sums(p, f, g):
    w = np.outer(p, p)
    df = f[:, None] != f[None, :]
    dg = g[:, None] != g[None, :]
    masks = (df, dg, df | dg, df & ~dg, dg & ~df, df & dg)
    return [sum(w[m].tolist(), Fraction(0)) for m in masks]


def pair_measures(probs, f, g, exact):
    """Six product-measure sums for labellings ``f`` and ``g`` (see ``_kernels.PAIR_FIELDS``)."""
    f = np.asarray(f)
    g = np.asarray(g)
    if exact:
        return _exact_pair_sums(np.asarray(probs, dtype=object), f, g)
    return [float(v) for v in _kernels.label_pair_sums(np.asarray(probs, dtype=np.float64), f, g)]


def _require_axes(j, k):
    if j.ndim != k:
        raise AxisCount(f"expected a {k}-axis joint distribution, got {j.ndim} axes")


def compound_logical(j):
    """Compound logical entropies of a 2-axis joint, by two-draw pair sums.

    A draw is a cell ``(x, y)``; ``h_x`` counts pairs with ``x != x'``,
    ``h_joint`` pairs differing anywhere, ``h_x_given_y`` pairs with
    ``x != x'`` and ``y == y'``, ``m_xy`` pairs differing in both.
    """
    _require_axes(j, 2)
    p, (fx, fy) = j.cells()
    hx, hy, hxy, hx_y, hy_x, m = pair_measures(p, fx, fy, j.mode == EXACT)
    return CompoundLogical(hx, hy, hxy, hx_y, hy_x, m)


def _conditional_H(table, cond_axis, base):
    # average over the conditioning value of the entropy of the conditional;
    # zero-probability conditioning values contribute nothing
    total = 0.0
    moved = np.moveaxis(table, cond_axis, 0)
    for slab in moved:
        py = float(sum(np.ravel(slab)))
        if py <= 0:
            continue
        total += py * _H_array([float(v) / py for v in np.ravel(slab)], base)
    return total


def compound_shannon(j, base=2):
    _require_axes(j, 2)
    Hx = _H_array(j.marginal((0,)), base)
    Hy = _H_array(j.marginal((1,)), base)
    Hxy = _H_array(j.table, base)
    Hx_y = _conditional_H(j.table, 1, base)
    Hy_x = _conditional_H(j.table, 0, base)
    return CompoundShannon(Hx, Hy, Hxy, Hx_y, Hy_x, Hx + Hy - Hxy)


def logical_of_axes(j, keep):
    """``h`` of the marginal on ``keep`` via ``1 - sum p**2``."""
    return _h_array(j.marginal(keep))


def shannon_of_axes(j, keep, base=2):
    return _H_array(j.marginal(keep), base)


def mutual3_logical(j):
    """Three-way mutual logical information by inclusion-exclusion."""
    _require_axes(j, 3)
    hx, hy, hz = (logical_of_axes(j, (a,)) for a in range(3))
    hxy, hxz, hyz = (logical_of_axes(j, pair) for pair in ((0, 1), (0, 2), (1, 2)))
    hxyz = _h_array(j.table)
    mxy = hx + hy - hxy
    mxz = hx + hz - hxz
    myz = hy + hz - hyz
    return hxyz - hx - hy - hz + mxy + mxz + myz


def mutual3_logical_pairs(j):
    """Direct pair sum over draws differing on all three coordinates."""
    _require_axes(j, 3)
    p, (fx, fy, fz) = j.cells()
    w = np.outer(p, p)
    mask = (fx[:, None] != fx[None, :]) & (fy[:, None] != fy[None, :]) & (fz[:, None] != fz[None, :])
    return sum(w[mask].tolist(), j.zero())


def mutual3_shannon(j, base=2):
    """Three-way Shannon mutual information by inclusion-exclusion; may be negative."""
    _require_axes(j, 3)
    Hx, Hy, Hz = (shannon_of_axes(j, (a,), base) for a in range(3))
    Hxy, Hxz, Hyz = (shannon_of_axes(j, pair, base) for pair in ((0, 1), (0, 2), (1, 2)))
    Hxyz = _H_array(j.table, base)
    Ixy = Hx + Hy - Hxy
    Ixz = Hx + Hz - Hxz
    Iyz = Hy + Hz - Hyz
    return Hxyz - Hx - Hy - Hz + Ixy + Ixz + Iyz


def pairwise_mutual_shannon(j, a, b, base=2):
    Ha = shannon_of_axes(j, (a,), base)
    Hb = shannon_of_axes(j, (b,), base)
    return Ha + Hb - shannon_of_axes(j, (a, b), base)


# ---------------------------------------------------------------------------
# divergences
# ---------------------------------------------------------------------------

def _check_pair(p, q):
    if len(p) != len(q):
        raise LengthMismatch(f"distributions of length {len(p)} and {len(q)}")
    if any(v == 0 for v in q.probs):
        raise DomainError("reference distribution has a zero entry")


def kl_divergence(p, q, base=2):
    """``sum p_i log(p_i / q_i)``; terms with ``p_i = 0`` vanish."""
    _check_pair(p, q)
    return sum(
        float(a) * log(float(a) / float(b), base) for a, b in zip(p.probs, q.probs) if a > 0
    )


def logical_divergence(p, q):
    """Directed logical divergence ``sum (q_i - p_i)**2 / q_i``."""
    _check_pair(p, q)
    return sum((b - a) ** 2 / b for a, b in zip(p.probs, q.probs))


# ---------------------------------------------------------------------------
# box diagrams
# ---------------------------------------------------------------------------

BOX_QUANTITIES = {
    "hx": lambda dx, dy: dx,
    "hy": lambda dx, dy: dy,
    "hjoint": lambda dx, dy: dx | dy,
    "hx_given_y": lambda dx, dy: dx & ~dy,
    "hy_given_x": lambda dx, dy: dy & ~dx,
    "mxy": lambda dx, dy: dx & dy,
}


@dataclass(frozen=True)
class BoxDiagram:
    """Pairs-of-draws grid; row = first draw, column = second draw."""

    quantity: str
    cells: tuple  # of tuples (x, y) labels in C order
    weights: np.ndarray
    shaded: np.ndarray

    @property
    def total(self):
        return sum(self.weights[self.shaded].tolist(), self.weights.flat[0] * 0)

    @property
    def shaded_count(self):
        return int(self.shaded.sum())

    def shaded_weight_cells(self):
        """Number of shaded cells carrying non-zero weight."""
        nz = np.array([w != 0 for w in self.weights.ravel()]).reshape(self.weights.shape)
        return int((self.shaded & nz).sum())

    def to_json(self):
        size = len(self.cells)
        rows = []
        for r in range(size):
            for c in range(size):
                rows.append({
                    "pair": [list(self.cells[r]), list(self.cells[c])],
                    "weight": render(self.weights[r, c]),
                    "shaded": bool(self.shaded[r, c]),
                })
        return {"quantity": self.quantity, "size": size, "cells": rows, "total": render(self.total)}


def box_diagram(j, quantity):
    _require_axes(j, 2)
    if quantity not in BOX_QUANTITIES:
        raise SchemaError(f"unknown quantity {quantity!r}; choose from {sorted(BOX_QUANTITIES)}")
    p, (fx, fy) = j.cells()
    w = np.outer(p, p)
    dx = fx[:, None] != fx[None, :]
    dy = fy[:, None] != fy[None, :]
    shaded = BOX_QUANTITIES[quantity](dx, dy)
    # zero-weight cells are never shaded: they are not part of the measure
    nz = np.array([v != 0 for v in w.ravel()]).reshape(w.shape)
    shaded = shaded & nz
    labels = tuple((j.axes[0][x], j.axes[1][y]) for x, y in zip(fx, fy))
    return BoxDiagram(quantity, labels, w, shaded)
