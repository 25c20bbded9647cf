"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba implementations are used when numba imports cleanly and the
environment variable ``LOGENT_DISABLE_NUMBA`` is unset (or ``0``).  Both
paths are always importable under explicit names so tests and the benchmark
can compare them directly::

    label_pair_sums_numpy / label_pair_sums_numba
    feasible_occupancies_numpy / feasible_occupancies_numba

The dispatching names ``label_pair_sums`` and ``feasible_occupancies`` point
at whichever backend is active; ``BACKEND`` records which.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("LOGENT_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")
NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not _DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"

JIT_OPTIONS = {"nogil": True, "cache": True}

# Order of the six pair-set measures returned by ``label_pair_sums``.
PAIR_FIELDS = ("h_f", "h_g", "h_union", "h_f_minus_g", "h_g_minus_f", "m")


# ---------------------------------------------------------------------------
# pair sums over U x U
# ---------------------------------------------------------------------------

def label_pair_sums_numpy(p, f, g):
    """Product-measure of the six dit-set regions of two labellings.

    ``p`` holds point probabilities, ``f`` and ``g`` integer block labels.
    A pair ``(j, k)`` is a dit of ``f`` when ``f[j] != f[k]``.
    """
    p = np.asarray(p, dtype=np.float64)
    f = np.asarray(f)
    g = np.asarray(g)
    w = np.outer(p, p)
    df = f[:, None] != f[None, :]
    dg = g[:, None] != g[None, :]
    return np.array([
        w[df].sum(),
        w[dg].sum(),
        w[df | dg].sum(),
        w[df & ~dg].sum(),
        w[dg & ~df].sum(),
        w[df & dg].sum(),
    ])


def _label_pair_sums_py(p, f, g):
    n = p.shape[0]
    out = np.zeros(6)
    for j in range(n):
        pj = p[j]
        fj = f[j]
        gj = g[j]
        for k in range(n):
            a = fj != f[k]
            b = gj != g[k]
            if not (a or b):
                continue
            w = pj * p[k]
            out[2] += w
            if a:
                out[0] += w
                if b:
                    out[1] += w
                    out[5] += w
                else:
                    out[3] += w
            else:
                out[1] += w
                out[4] += w
    return out


# ---------------------------------------------------------------------------
# Boltzmann occupancy enumeration
# ---------------------------------------------------------------------------

def _prefixes(k, budget):
    """All non-negative integer rows of length ``k`` with sum <= budget, lex order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if k == 1:
        return np.arange(budget + 1, dtype=np.int64)[:, None]
    parts = []
    for first in range(budget + 1):
        sub = _prefixes(k - 1, budget - first)
        head = np.full((sub.shape[0], 1), first, dtype=np.int64)
        parts.append(np.hstack([head, sub]))
    return np.vstack(parts)


def feasible_occupancies_numpy(n, levels, energy, tol):
    """Occupancy vectors with ``sum == n`` and ``levels @ occ == energy`` (within tol)."""
    levels = np.asarray(levels, dtype=np.float64)
    m = levels.shape[0]
    found = []
    if m == 1:
        occ = np.array([[n]], dtype=np.int64)
        keep = np.abs(occ @ levels - energy) <= tol
        return occ[keep]
    for first in range(n + 1):
        sub = _prefixes(m - 2, n - first)
        last = (n - first) - sub.sum(axis=1)
        occ = np.column_stack([np.full(sub.shape[0], first, dtype=np.int64), sub, last])
        keep = np.abs(occ @ levels - energy) <= tol
        if keep.any():
            found.append(occ[keep])
    if not found:
        return np.zeros((0, m), dtype=np.int64)
    return np.vstack(found)


def _feasible_occupancies_py(n, levels, energy, tol):
    m = levels.shape[0]
    # two passes over the compositions of n into m parts: count, then fill
    count = 0
    for sweep in range(2):
        if sweep == 1:
            out = np.zeros((count, m), dtype=np.int64)
            count = 0
        occ = np.zeros(m, dtype=np.int64)
        occ[m - 1] = n
        while True:
            e = 0.0
            for i in range(m):
                e += levels[i] * occ[i]
            if abs(e - energy) <= tol:
                if sweep == 1:
                    for i in range(m):
                        out[count, i] = occ[i]
                count += 1
            # lexicographic successor: r is the rightmost non-zero slot;
            # move one unit to r-1 and park the rest of slot r in the last slot
            r = m - 1
            while r >= 0 and occ[r] == 0:
                r -= 1
            if r <= 0:
                break
            tail = occ[r]
            occ[r - 1] += 1
            occ[r] = 0
            occ[m - 1] = tail - 1
    return out


if NUMBA_AVAILABLE:
    label_pair_sums_numba = numba.njit(**JIT_OPTIONS)(_label_pair_sums_py)
    _feasible_nb = numba.njit(**JIT_OPTIONS)(_feasible_occupancies_py)

    def feasible_occupancies_numba(n, levels, energy, tol):
        return _feasible_nb(int(n), np.asarray(levels, dtype=np.float64), float(energy), float(tol))
else:  # pragma: no cover
    label_pair_sums_numba = None
    feasible_occupancies_numba = None


def _pair_dispatch_numba(p, f, g):
    return label_pair_sums_numba(
        np.ascontiguousarray(p, dtype=np.float64),
        np.ascontiguousarray(f, dtype=np.int64),
        np.ascontiguousarray(g, dtype=np.int64),
    )


if USE_NUMBA:
    label_pair_sums = _pair_dispatch_numba
    feasible_occupancies = feasible_occupancies_numba
else:
    label_pair_sums = label_pair_sums_numpy
    feasible_occupancies = feasible_occupancies_numpy
