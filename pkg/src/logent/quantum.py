"""Quantum logical entropy for pure states and projective measurements.

An observable is given by an orthonormal eigenbasis (the columns of ``basis``)
and an eigenvalue map from column index to eigenvalue index; the eigenspaces
are the column groups sharing an index.  Eigenvalues are compared through
that map only, never as floats.

A qudit of ``F`` is a pair of eigenbasis vectors ``(u_j, u_k)`` lying in
different eigenspaces.  With ``p_j = |<u_j|psi>|**2`` the quantum logical
entropy is the product measure of the qudit pairs, which equals
``1 - sum_i Pr(phi_i)**2`` and the logical entropy of the Lueders-measured
density matrix.

All arithmetic here is complex float.
"""

from dataclasses import dataclass

import numpy as np

from .entropy import Dist, pair_measures
from .errors import (
    BasisMismatch,
    DimensionMismatch,
    NotNormalized,
    SchemaError,
)
from .partitions import Partition

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
ZERO_TOL = 1e-14


def _complex_vec(values):
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise SchemaError(f"complex numbers are [re, im], got {v!r}")
            out.append(complex(float(v[0]), float(v[1])))
        else:
            out.append(complex(v))
    return np.array(out, dtype=np.complex128)


def complex_to_json(z):
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# states and observables
# ---------------------------------------------------------------------------

class PureState:
    """Unit vector; ``amplitudes`` are coordinates in ``basis`` (standard if None)."""

    def __init__(self, amplitudes, basis=None):
        alpha = _complex_vec(amplitudes)
        norm = float(np.vdot(alpha, alpha).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm is {norm!r}, not 1 within {NORM_TOL}")
        if basis is not None:
            basis = np.asarray(basis, dtype=np.complex128)
            _check_unitary(basis)
            if basis.shape[0] != alpha.shape[0]:
                raise DimensionMismatch(f"basis of size {basis.shape[0]} for {alpha.shape[0]} amplitudes")
        self.amplitudes = alpha
        self.basis = basis

    @property
    def n(self):
        return self.amplitudes.shape[0]

    def vector(self):
        """Coordinates in the standard basis."""
        return self.amplitudes if self.basis is None else self.basis @ self.amplitudes

    def coords(self, basis):
        """Coordinates ``B^H v`` in another orthonormal basis."""
        return basis.conj().T @ self.vector()

    def with_phase(self, theta):
        return PureState(self.amplitudes * np.exp(1j * theta), self.basis)

    def to_json(self):
        return {"amplitudes": [complex_to_json(z) for z in self.amplitudes]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict):
            return cls(obj["amplitudes"], obj.get("basis"))
        return cls(obj)

    @classmethod
    def basis_state(cls, n, j):
        a = np.zeros(n, dtype=np.complex128)
        a[j] = 1.0
        return cls(a)

    @classmethod
    def uniform(cls, n):
        return cls(np.full(n, 1 / np.sqrt(n), dtype=np.complex128))


def _check_unitary(b):
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise SchemaError(f"basis must be square, got shape {b.shape}")
    err = np.abs(b.conj().T @ b - np.eye(b.shape[0])).max()
    if err > UNITARY_TOL:
        raise SchemaError(f"basis columns are not orthonormal (error {err:.2e})")


class Observable:
    """Self-adjoint operator given by its eigen-decomposition."""

    def __init__(self, basis, eigenvalues, eigenvalue_of):
        b = np.asarray(basis, dtype=np.complex128)
        _check_unitary(b)
        eig = tuple(float(v) for v in eigenvalues)
        if len(set(eig)) != len(eig):
            raise SchemaError("eigenvalues must be distinct; express degeneracy through the map")
        f = tuple(int(i) for i in eigenvalue_of)
        if len(f) != b.shape[1]:
            raise DimensionMismatch(f"map has {len(f)} entries for {b.shape[1]} basis vectors")
        if any(not 0 <= i < len(eig) for i in f):
            raise SchemaError("eigenvalue map refers to a missing eigenvalue")
        if set(f) != set(range(len(eig))):
            raise SchemaError("every eigenvalue needs at least one eigenvector")
        self.basis = b
        self.eigenvalues = eig
        self.eigenvalue_of = f

    @property
    def n(self):
        return self.basis.shape[0]

    @classmethod
    def diagonal(cls, eigenvalue_of, eigenvalues=None):
        """Observable diagonal in the standard basis."""
        f = tuple(eigenvalue_of)
        k = max(f) + 1
        eig = eigenvalues if eigenvalues is not None else tuple(float(i) for i in range(k))
        return cls(np.eye(len(f)), eig, f)

    @classmethod
    def scalar(cls, n, value=1.0):
        return cls(np.eye(n), (value,), (0,) * n)

    def multiplicities(self):
        return tuple(self.eigenvalue_of.count(i) for i in range(len(self.eigenvalues)))

    def is_scalar(self):
        return len(self.eigenvalues) == 1

    def partition(self):
        """Partition of the basis indices into eigenspaces."""
        return Partition.from_labels(self.eigenvalue_of)

    def projector(self, i):
        cols = self.basis[:, [j for j, v in enumerate(self.eigenvalue_of) if v == i]]
        return cols @ cols.conj().T

    def projectors(self):
        return [self.projector(i) for i in range(len(self.eigenvalues))]

    def matrix(self):
        """``sum_i phi_i P_i``."""
        d = np.diag([self.eigenvalues[i] for i in self.eigenvalue_of]).astype(np.complex128)
        return self.basis @ d @ self.basis.conj().T

    def to_json(self):
        return {
            "eigenvalues": list(self.eigenvalues),
            "basis": [[complex_to_json(z) for z in self.basis[:, j]] for j in range(self.n)],
            "map": list(self.eigenvalue_of),
        }

    @classmethod
    def from_json(cls, obj):
        try:
            cols = [_complex_vec(c) for c in obj["basis"]]
            return cls(np.column_stack(cols), obj["eigenvalues"], obj["map"])
        except KeyError as exc:
            raise SchemaError(f"observable JSON is missing {exc}") from exc


class DensityMatrixC:
    """Hermitian trace-one complex matrix."""

    def __init__(self, entries):
        e = np.asarray(entries, dtype=np.complex128)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise SchemaError(f"density matrix must be square, got {e.shape}")
        if np.abs(e - e.conj().T).max() > NORM_TOL:
            raise SchemaError("matrix is not Hermitian")
        tr = np.trace(e)
        if abs(tr - 1.0) > NORM_TOL:
            raise SchemaError(f"trace is {tr!r}, not 1")
        self.entries = e

    @property
    def n(self):
        return self.entries.shape[0]

    def purity(self):
        return float(np.trace(self.entries @ self.entries).real)

    def logical_entropy(self):
        """``1 - tr(rho**2)``."""
        return 1.0 - self.purity()

    def in_basis(self, basis):
        return basis.conj().T @ self.entries @ basis

    def to_json(self):
        return {"entries": [[complex_to_json(z) for z in row] for row in self.entries]}


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _check_dim(F, n):
    if F.n != n:
        raise DimensionMismatch(f"observable on dimension {F.n}, state on {n}")


def rho_of_state(s):
    """``|psi><psi|`` in standard coordinates."""
    v = s.vector()
    return DensityMatrixC(np.outer(v, v.conj()))


def point_probs(F, s):
    """``p_j = |<u_j|psi>|**2`` over the eigenbasis of ``F``."""
    _check_dim(F, s.n)
    c = s.coords(F.basis)
    return np.abs(c) ** 2


def measurement_probs(F, s):
    p = point_probs(F, s)
    out = np.zeros(len(F.eigenvalues))
    for j, i in enumerate(F.eigenvalue_of):
        out[i] += p[j]
    out = out / out.sum()
    return Dist(tuple(float(v) for v in out), "float")


def quantum_logical_entropy(F, s):
    """Product measure of the qudit pairs of ``F`` under the state."""
    p = point_probs(F, s)
    f = np.array(F.eigenvalue_of)
    return float(pair_measures(p, f, f, exact=False)[0])


def luders_measure(F, r):
    """``sum_i P_i rho P_i`` over the eigenspace projectors."""
    if isinstance(r, PureState):
        r = rho_of_state(r)
    _check_dim(F, r.n)
    out = np.zeros_like(r.entries)
    for P in F.projectors():
        out = out + P @ r.entries @ P
    # restore exact Hermitian symmetry lost to rounding
    return DensityMatrixC(0.5 * (out + out.conj().T))


@dataclass(frozen=True)
class TheoremCheck:
    h_direct: float
    h_post_rho: float
    zeroed_abs_sq_sum: float

    def max_gap(self):
        v = (self.h_direct, self.h_post_rho, self.zeroed_abs_sq_sum)
        return max(v) - min(v)

    def to_json(self):
        return dict(self.__dict__, max_gap=self.max_gap())


def measurement_entropy_theorem_check(F, s):
    """The three routes to ``h(F:psi)``.

    * the qudit pair sum,
    * ``1 - tr(rho_hat**2)`` after the Lueders measurement,
    * the sum of ``|rho_jk|**2`` over the eigenbasis entries the measurement zeroes.
    """
    rho = rho_of_state(s)
    post = luders_measure(F, rho)
    before = rho.in_basis(F.basis)
    after = post.in_basis(F.basis)
    f = np.array(F.eigenvalue_of)
    zeroed = (np.abs(after) <= ZERO_TOL * max(1.0, np.abs(before).max())) & (np.abs(before) > 0)
    zeroed |= f[:, None] != f[None, :]
    return TheoremCheck(
        quantum_logical_entropy(F, s),
        post.logical_entropy(),
        float((np.abs(before[zeroed]) ** 2).sum()),
    )


def _check_shared_basis(F, G):
    if F.n != G.n:
        raise DimensionMismatch(f"observables on dimensions {F.n} and {G.n}")
    if np.abs(F.basis - G.basis).max() > UNITARY_TOL:
        raise BasisMismatch("observables do not share the declared eigenbasis")


def qudit_pairs(F):
    f = F.eigenvalue_of
    n = F.n
    return {(j, k) for j in range(n) for k in range(n) if f[j] != f[k]}


@dataclass(frozen=True)
class QuditDims:
    dim_union: int
    dim_intersection: int
    dim_difference_fg: int
    dim_difference_gf: int


def qudit_mutual_subspace_dims(F, G):
    """Dimensions of the subspaces spanned by ``u_j (x) u_k`` over qudit-pair set operations."""
    _check_shared_basis(F, G)
    qf, qg = qudit_pairs(F), qudit_pairs(G)
    return QuditDims(len(qf | qg), len(qf & qg), len(qf - qg), len(qg - qf))


@dataclass(frozen=True)
class CompoundQuantum:
    h_f: float
    h_g: float
    h_joint: float
    h_f_given_g: float
    h_g_given_f: float
    m_fg: float


def compound_quantum_entropies(F, G, s):
    _check_shared_basis(F, G)
    p = point_probs(F, s)
    v = pair_measures(p, np.array(F.eigenvalue_of), np.array(G.eigenvalue_of), exact=False)
    return CompoundQuantum(*(float(x) for x in v))


# ---------------------------------------------------------------------------
# tensor form
# ---------------------------------------------------------------------------

def qudit_projector(F):
    """``P_[qudit(F)]`` on ``V (x) V`` in standard coordinates (``n**2 x n**2``)."""
    f = np.array(F.eigenvalue_of)
    mask = (f[:, None] != f[None, :]).ravel().astype(np.complex128)
    bb = np.kron(F.basis, F.basis)
    return (bb * mask) @ bb.conj().T


def tensor_quantum_logical_entropy(F, s):
    """``tr[P_[qudit(F)] rho (x) rho]`` with both operators materialised."""
    rho = rho_of_state(s).entries
    return float(np.trace(qudit_projector(F) @ np.kron(rho, rho)).real)


# ---------------------------------------------------------------------------
# examples
# ---------------------------------------------------------------------------

def spin_observable():
    """Spin along z: eigenvalues +1 (up) and -1 (down) on the standard basis."""
    return Observable(np.eye(2), (1.0, -1.0), (0, 1))


def random_state(rng, n):
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PureState(z / np.linalg.norm(z))


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
