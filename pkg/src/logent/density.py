"""Real density matrices of partitions.

``rho(pi)`` has ``sqrt(p_j p_k)`` where ``j`` and ``k`` share a block and
zero elsewhere, so its non-zero pattern is the inditset.  With rational point
probabilities the entries are held as :class:`~logent.surd.Surd` values and
every trace identity comes out as an exact Fraction.  Float inputs give a
plain float64 matrix.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numeric import EXACT, FLOAT
from .entropy import ProbPartition, pair_measures
from .errors import DimensionMismatch, NotCoarsening, SchemaError, UniverseMismatch
from .partitions import Partition, join
from .surd import Surd

TRACE_TOL = 1e-12


def _as_number(x):
    """Collapse a rational Surd to a Fraction; leave floats alone."""
    if isinstance(x, Surd):
        return x.to_fraction() if x.is_rational() else x
    return x


class DensityMatrixR:
    """Symmetric trace-one real matrix; ``partition`` records provenance when known."""

    def __init__(self, entries, mode=None, partition=None):
        arr = np.asarray(entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise SchemaError(f"density matrix must be square, got shape {arr.shape}")
        if mode is None:
            mode = EXACT if arr.dtype == object else FLOAT
        if mode == EXACT:
            out = np.empty(arr.shape, dtype=object)
            for idx, v in np.ndenumerate(arr):
                out[idx] = v if isinstance(v, Surd) else Surd(Fraction(v))
            arr = out
        else:
            arr = np.array([[float(v) for v in row] for row in arr], dtype=np.float64)
        self.entries = arr
        self.mode = mode
        self.partition = partition
        self._validate()

    def _validate(self):
        e = self.entries
        n = self.n
        tr = self.trace()
        if self.mode == EXACT:
            if tr != 1:
                raise SchemaError(f"trace is {tr}, not 1")
            for j in range(n):
                for k in range(j + 1, n):
                    if e[j, k] != e[k, j]:
                        raise SchemaError(f"matrix not symmetric at ({j},{k})")
        else:
            if abs(tr - 1.0) > TRACE_TOL:
                raise SchemaError(f"trace is {tr!r}, not 1 within {TRACE_TOL}")
            if not np.allclose(e, e.T, atol=1e-12):
                raise SchemaError("matrix not symmetric")

    @property
    def n(self):
        return self.entries.shape[0]

    def trace(self):
        d = [self.entries[j, j] for j in range(self.n)]
        if self.mode == EXACT:
            return _as_number(sum(d, Surd(0)))
        return float(sum(d))

    def __eq__(self, other):
        if not isinstance(other, DensityMatrixR) or other.n != self.n:
            return NotImplemented
        if self.mode == EXACT and other.mode == EXACT:
            return all(a == b for a, b in zip(self.entries.ravel(), other.entries.ravel()))
        return np.allclose(self.as_float(), other.as_float(), atol=1e-12)

    __hash__ = None

    def as_float(self):
        if self.mode == FLOAT:
            return self.entries
        return np.array([[float(v) for v in row] for row in self.entries])

    def is_zero_at(self, j, k):
        return self.entries[j, k] == 0

    def to_json(self):
        if self.mode == EXACT:
            rows = [[v.to_json() for v in row] for row in self.entries]
        else:
            rows = self.entries.tolist()
        return {"n": self.n, "mode": self.mode, "entries": rows}

    @classmethod
    def from_json(cls, obj):
        mode = obj.get("mode", FLOAT)
        if mode == EXACT:
            rows = [[Surd.from_json(v) for v in row] for row in obj["entries"]]
            arr = np.empty((len(rows), len(rows)), dtype=object)
            for j, row in enumerate(rows):
                for k, v in enumerate(row):
                    arr[j, k] = v
            return cls(arr, EXACT)
        return cls(np.array(obj["entries"], dtype=np.float64), FLOAT)

    def __str__(self):
        return pretty(self)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectionR:
    """Diagonal 0/1 projection onto the coordinates in ``subset``."""

    n: int
    subset: frozenset

    def __post_init__(self):
        subset = frozenset(int(j) for j in self.subset)
        if any(not 0 <= j < self.n for j in subset):
            raise SchemaError(f"subset {sorted(subset)} outside 0..{self.n - 1}")
        object.__setattr__(self, "subset", subset)

    def matrix(self, mode=EXACT):
        if mode == EXACT:
            m = np.empty((self.n, self.n), dtype=object)
            for j in range(self.n):
                for k in range(self.n):
                    m[j, k] = Surd(1 if j == k and j in self.subset else 0)
            return m
        m = np.zeros((self.n, self.n))
        for j in self.subset:
            m[j, j] = 1.0
        return m


def block_projections(partition):
    return [ProjectionR(partition.n, frozenset(b)) for b in partition.blocks]


def _zero_matrix(n, exact):
    if exact:
        m = np.empty((n, n), dtype=object)
        for idx in np.ndindex(n, n):
            m[idx] = Surd(0)
        return m
    return np.zeros((n, n))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_rho(partition, probs, sqrt):
    """``sum_B Pr(B) |B><B|`` with ``|B>_j = sqrt(p_j / Pr(B))`` on ``B``.

    ``probs`` and ``sqrt`` may be of any numeric kind that supports the
    field operations (Surds, floats, or symbolic values).  Blocks of zero
    probability contribute nothing.  Returns a nested list.
    """
    n = partition.n
    out = [[0 * probs[0] for _ in range(n)] for _ in range(n)]
    for block in partition.blocks:
        pb = sum((probs[j] for j in block), 0 * probs[0])
        if pb == 0:
            continue
        vec = {j: sqrt(probs[j] / pb) for j in block}
        for j in block:
            for k in block:
                out[j][k] = out[j][k] + pb * vec[j] * vec[k]
    return out


def rho_of_partition(pp):
    """Density matrix of a partition under point probabilities."""
    if not isinstance(pp, ProbPartition):
        raise SchemaError("expected a ProbPartition")
    exact = pp.mode == EXACT
    if exact:
        rows = build_rho(pp.partition, [Surd(p) for p in pp.point_probs.probs], _surd_sqrt)
        arr = np.empty((pp.partition.n,) * 2, dtype=object)
        for j, row in enumerate(rows):
            for k, v in enumerate(row):
                arr[j, k] = v
    else:
        arr = np.array(build_rho(pp.partition, list(pp.point_probs.probs), np.sqrt), dtype=np.float64)
    return DensityMatrixR(arr, EXACT if exact else FLOAT, pp.partition)


def _surd_sqrt(s):
    return Surd.sqrt(s.to_fraction())


def incidence_matrix(partition):
    """0/1 matrix of the inditset."""
    lab = partition.labels()
    n = partition.n
    return np.array([[1 if lab[j] == lab[k] else 0 for k in range(n)] for j in range(n)], dtype=np.int64)


# ---------------------------------------------------------------------------
# traces and distances
# ---------------------------------------------------------------------------

def _check_dims(r1, r2):
    if r1.n != r2.n:
        raise DimensionMismatch(f"matrices of size {r1.n} and {r2.n}")


def _trace_product(a, b):
    """``tr(a b) = sum_jk a_jk b_kj`` without forming the product."""
    n = a.shape[0]
    exact = a.dtype == object
    total = Surd(0) if exact else 0.0
    for j in range(n):
        for k in range(n):
            total = total + a[j, k] * b[k, j]
    return _as_number(total) if exact else float(total)


def _common_mode(r1, r2):
    if r1.mode == r2.mode:
        return r1.entries, r2.entries
    return r1.as_float(), r2.as_float()


def purity(r):
    return _trace_product(r.entries, r.entries)


def logical_entropy_of_rho(r):
    """``1 - tr(rho**2)``."""
    return 1 - purity(r)


def cross_entropy_trace(r1, r2):
    """``1 - tr(rho1 rho2)``; for partitions on one base this is ``h`` of the join."""
    _check_dims(r1, r2)
    a, b = _common_mode(r1, r2)
    return 1 - _trace_product(a, b)


def hamming_distance(r1, r2):
    """Hilbert-Schmidt ``tr((rho1 - rho2)**2)``."""
    _check_dims(r1, r2)
    a, b = _common_mode(r1, r2)
    d = a - b
    return _trace_product(d, d)


def hamming_distance_sets(pp, sigma):
    """Product measure of the symmetric difference of the two ditsets."""
    if pp.partition.n != sigma.n:
        raise UniverseMismatch("partitions on different universes")
    v = pair_measures(pp.point_probs.probs, pp.partition.labels(), sigma.labels(), pp.mode == EXACT)
    return v[3] + v[4]


def luders_join(r, sigma):
    """``sum_C P_C rho P_C`` over the blocks ``C`` of ``sigma``."""
    if not isinstance(sigma, Partition):
        raise SchemaError("expected a Partition")
    if sigma.n != r.n:
        raise UniverseMismatch(f"partition on {sigma.n} points for a {r.n}x{r.n} matrix")
    # each P_C is a diagonal 0/1 projector, so P_C rho P_C keeps exactly the
    # (j, k) entries with j and k in C; summing over C is a mask on sigma's labels
    lab = np.array(sigma.labels())
    keep = lab[:, None] == lab[None, :]
    acc = _zero_matrix(r.n, r.mode == EXACT)
    acc[keep] = r.entries[keep]
    prov = join(r.partition, sigma) if r.partition is not None else None
    return DensityMatrixR(acc, r.mode, prov)


def entropy_created(r_before, r_after):
    """Sum of squares of the entries a measurement zeroes out."""
    _check_dims(r_before, r_after)
    a, b = _common_mode(r_before, r_after)
    exact = a.dtype == object
    total = Surd(0) if exact else 0.0
    n = a.shape[0]
    for j in range(n):
        for k in range(n):
            if a[j, k] == 0 and b[j, k] != 0:
                raise NotCoarsening(f"entry ({j},{k}) is zero before and non-zero after")
            if a[j, k] != 0 and b[j, k] == 0:
                total = total + a[j, k] * a[j, k]
    return _as_number(total) if exact else float(total)


# ---------------------------------------------------------------------------
# tensor form
# ---------------------------------------------------------------------------

def dit_projector(partition, exact=True):
    """Diagonal ``n**2 x n**2`` projector onto ``u_j (x) u_k`` for dits ``(j, k)``."""
    lab = partition.labels()
    n = partition.n
    m = _zero_matrix(n * n, exact)
    for j in range(n):
        for k in range(n):
            if lab[j] != lab[k]:
                m[j * n + k, j * n + k] = Surd(1) if exact else 1.0
    return m


def tensor_square(r):
    return np.kron(r.entries, r.entries)


def tensor_logical_entropy(pp):
    """``tr[P_dit (rho (x) rho)]`` with both operators materialised."""
    r = rho_of_partition(pp)
    exact = r.mode == EXACT
    return _trace_product(dit_projector(pp.partition, exact), tensor_square(r))


# ---------------------------------------------------------------------------
# display
# ---------------------------------------------------------------------------

def pretty(r):
    """Aligned rows; exact entries print as fractions or ``sqrt(q)``."""
    cells = [[str(v) if r.mode == EXACT else f"{v:.6g}" for v in row] for row in r.entries]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def symbolic_layout(partition, names=None):
    """Entry pattern with symbolic probabilities: ``p1``, ``sqrt(p1 p3)`` or ``0``."""
    n = partition.n
    names = names or [f"p{j + 1}" for j in range(n)]
    lab = partition.labels()
    out = []
    for j in range(n):
        row = []
        for k in range(n):
            if j == k:
                row.append(names[j])
            elif lab[j] == lab[k]:
                row.append(f"sqrt({names[j]} {names[k]})")
            else:
                row.append("0")
        out.append(row)
    return out
