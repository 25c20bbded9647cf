"""Maximum-entropy distributions under a single mean constraint.

Two objectives are supported over ``{p >= 0, sum p = 1, sum p x = m}``:

* Shannon: the Gibbs family ``p_i ~ w**x_i``; ``w`` is the unique root of
  the increasing mean equation ``g(w) = m``.
* logical: ``1 - sum p**2``, i.e. the Euclidean projection of the uniform
  distribution onto the constraint set.  The interior closed form is tried
  first and an exact active-set iteration handles the boundary.

The Boltzmann helpers enumerate integer occupancy vectors exactly.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from ._numeric import EXACT, FLOAT, as_exact, as_float, infer_mode, render
from .entropy import Dist, H, h, kl_divergence
from .errors import Infeasible, InfeasibleMean, LengthMismatch, NoConvergence, SchemaError

MEAN_TOL = 1e-13
MAX_ITER = 10_000
MAX_CANDIDATES = 10**7


@dataclass(frozen=True)
class MeanConstraintProblem:
    values: tuple
    target_mean: object
    mode: str = None

    def __post_init__(self):
        vals = tuple(self.values)
        mode = self.mode or infer_mode(list(vals) + [self.target_mean])
        conv = as_exact if mode == EXACT else as_float
        vals = tuple(conv(v) for v in vals)
        m = conv(self.target_mean)
        if len(vals) < 2:
            raise SchemaError("need at least two values")
        if len(set(vals)) != len(vals):
            raise SchemaError(f"values must be distinct: {vals}")
        if not min(vals) <= m <= max(vals):
            raise InfeasibleMean(f"mean {m} outside [{min(vals)}, {max(vals)}]")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "target_mean", m)
        object.__setattr__(self, "mode", mode)

    @property
    def n(self):
        return len(self.values)

    def mu(self):
        return sum(self.values) / self.n

    def var(self):
        """Population variance of the values under the uniform distribution."""
        mu = self.mu()
        return sum((x - mu) ** 2 for x in self.values) / self.n

    def is_interior(self):
        return min(self.values) < self.target_mean < max(self.values)

    def as_float(self):
        return MeanConstraintProblem(tuple(float(x) for x in self.values), float(self.target_mean), FLOAT)


@dataclass(frozen=True)
class Multipliers:
    lam: object
    tau: object


@dataclass(frozen=True)
class MaxentSolution:
    probs: Dist
    objective: object
    objective_name: str
    multipliers: Multipliers = None
    active_zero_set: frozenset = field(default_factory=frozenset)
    iterations: int = 0

    @property
    def w(self):
        """``exp(-tau)``, the Gibbs base of the Shannon solution."""
        if self.multipliers is None:
            return None
        return math.exp(-float(self.multipliers.tau))

    def to_json(self):
        out = {
            "objective": self.objective_name,
            "probs": [render(p) for p in self.probs.probs],
            "value": render(self.objective),
            "active_zero_set": sorted(self.active_zero_set),
            "mode": self.probs.mode,
        }
        if self.multipliers is not None:
            out["lambda"] = render(self.multipliers.lam)
            out["tau"] = render(self.multipliers.tau)
            if self.objective_name == "shannon":
                out["w"] = self.w
        return out


def _require_interior(prob):
    if not prob.is_interior():
        raise InfeasibleMean(
            f"mean {prob.target_mean} must lie strictly inside ({min(prob.values)}, {max(prob.values)})"
        )


# ---------------------------------------------------------------------------
# Shannon
# ---------------------------------------------------------------------------

def _gibbs(x, u):
    """Probabilities proportional to ``exp(u * x)`` and their mean and variance."""
    a = u * x
    a = a - a.max()
    e = np.exp(a)
    p = e / e.sum()
    mean = float(p @ x)
    var = float(p @ (x - mean) ** 2)
    return p, mean, var


def mean_equation(values, w):
    """``g(w) = sum x w**x / sum w**x`` for ``w > 0``."""
    if w <= 0:
        raise SchemaError("w must be positive")
    return _gibbs(np.asarray(values, dtype=np.float64), math.log(w))[1]


def solve_max_shannon(prob, base=2):
    """Jaynes solution ``p_i = w**x_i / sum_j w**x_j``.

    The root of ``g(w) = m`` is bracketed by growing geometrically away from
    ``w = 1`` and then refined by safeguarded Newton steps, working in
    ``u = ln w`` so large exponents do not overflow.
    """
    _require_interior(prob)
    x = np.array([float(v) for v in prob.values])
    m = float(prob.target_mean)
    tol = MEAN_TOL * max(1.0, float(np.abs(x).max()))

    p, g0, _ = _gibbs(x, 0.0)
    it = 0
    u = 0.0
    if abs(g0 - m) > tol:
        # bracket [lo, hi] in u with g(lo) < m < g(hi)
        step = 1.0
        if g0 < m:
            lo, hi = 0.0, step
            while _gibbs(x, hi)[1] < m:
                lo, hi = hi, hi + step
                step *= 2.0
                it += 1
                if it > MAX_ITER:
                    raise NoConvergence("could not bracket the mean equation")
        else:
            lo, hi = -step, 0.0
            while _gibbs(x, lo)[1] > m:
                lo, hi = lo - step, lo
                step *= 2.0
                it += 1
                if it > MAX_ITER:
                    raise NoConvergence("could not bracket the mean equation")
        u = 0.5 * (lo + hi)
        while True:
            it += 1
            if it > MAX_ITER:
                raise NoConvergence(f"mean equation unsolved after {MAX_ITER} iterations")
            p, g, var = _gibbs(x, u)
            if abs(g - m) <= tol:
                break
            if g < m:
                lo = u
            else:
                hi = u
            nxt = u - (g - m) / var if var > 0 else None
            if nxt is None or not lo < nxt < hi:
                nxt = 0.5 * (lo + hi)
            if nxt == u or hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(u)):
                # bracket exhausted at float precision
                p, g, _ = _gibbs(x, nxt)
                if abs(g - m) > 1e3 * tol:
                    raise NoConvergence(f"stalled with residual {g - m:.3e}")
                u = nxt
                break
            u = nxt
        p, _, _ = _gibbs(x, u)
    tau = -u
    lam = math.log(float(np.exp(-tau * x - (-tau * x).max()).sum())) + float((-tau * x).max()) - 1.0
    d = Dist(tuple(float(v) for v in p / p.sum()), FLOAT)
    return MaxentSolution(d, H(d, base), "shannon", Multipliers(lam, tau), frozenset(), it)


# ---------------------------------------------------------------------------
# logical
# ---------------------------------------------------------------------------

def _closed_form(xs, m, exact):
    """Interior maximiser on the given values: ``(probs, alpha, beta)`` with ``p = alpha + beta x``."""
    k = len(xs)
    one = Fraction(1) if exact else 1.0
    mu = sum(xs) / k
    var = sum((x - mu) ** 2 for x in xs) / k
    if var == 0:
        return None
    # p_i = 1/k + (mu - m)(mu - x_i)/(k var)
    c = (mu - m) / (k * var)
    alpha = one / k + c * mu
    beta = -c
    return [alpha + beta * x for x in xs], alpha, beta


def interior_bounds(prob):
    """Interval of means for which the closed form is already non-negative.

    From ``(mu - m)(mu - x_i) >= -Var`` for every ``i``; clipped to the value range.
    """
    mu = prob.mu()
    var = prob.var()
    lo_x, hi_x = min(prob.values), max(prob.values)
    m_hi = mu + var / (mu - lo_x)
    m_lo = mu - var / (hi_x - mu)
    return max(m_lo, lo_x), min(m_hi, hi_x)


def _kkt_violation(alpha, beta, x):
    # a pinned coordinate is dual feasible iff alpha + beta x <= 0
    return alpha + beta * x


def solve_max_logical(prob):
    """Maximise ``1 - sum p**2`` subject to the constraints and ``p >= 0``.

    Exact in rational mode.  Coordinates driven negative are pinned to zero
    and the closed form is re-solved on the remaining support; a pinned
    coordinate whose multiplier has the wrong sign is released again.  The
    returned point satisfies the KKT conditions, which are checked.
    """
    _require_interior(prob)
    exact = prob.mode == EXACT
    xs = list(prob.values)
    m = prob.target_mean
    n = len(xs)
    neg_tol = 0 if exact else 1e-15

    pinned = set()
    seen = set()
    result = None
    it = 0
    while it <= 2 * n:
        it += 1
        key = frozenset(pinned)
        if key in seen:
            break
        seen.add(key)
        support = [i for i in range(n) if i not in pinned]
        cf = _closed_form([xs[i] for i in support], m, exact)
        if cf is None:
            break
        ps, alpha, beta = cf
        negative = [support[t] for t, v in enumerate(ps) if v < -neg_tol]
        if negative:
            pinned |= set(negative)
            continue
        viol = [(_kkt_violation(alpha, beta, xs[i]), i) for i in pinned]
        viol = [(v, i) for v, i in viol if v > neg_tol]
        if viol:
            pinned.discard(max(viol)[1])
            continue
        result = (support, ps, alpha, beta)
        break
    if result is None:
        result = _enumerate_supports(xs, m, exact, neg_tol)
        if result is None:  # pragma: no cover - the feasible set is non-empty
            raise NoConvergence("active-set iteration failed to find a KKT point")
    support, ps, alpha, beta = result
    zero = Fraction(0) if exact else 0.0
    probs = [zero] * n
    for i, v in zip(support, ps):
        probs[i] = v if v > 0 or exact else max(v, 0.0)
    if not exact:
        s = sum(probs)
        probs = [v / s for v in probs]
    d = Dist(tuple(probs), EXACT if exact else FLOAT)
    pinned = frozenset(i for i in range(n) if i not in support)
    _assert_kkt(d, xs, m, alpha, beta, pinned, exact)
    zeros = frozenset(i for i in range(n) if d.probs[i] == 0)
    return MaxentSolution(d, h(d), "logical", Multipliers(2 * alpha, -2 * beta), zeros, it)


def _enumerate_supports(xs, m, exact, neg_tol):
    # the optimal support is {i : alpha + beta x_i > 0}, a tail of the sorted values
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    n = len(xs)
    tails = [order[a:] for a in range(n - 1)] + [order[:b] for b in range(n, 1, -1)]
    for support in tails:
        support = sorted(support)
        cf = _closed_form([xs[i] for i in support], m, exact)
        if cf is None:
            continue
        ps, alpha, beta = cf
        if any(v < -neg_tol for v in ps):
            continue
        pinned = [i for i in range(n) if i not in support]
        if all(_kkt_violation(alpha, beta, xs[i]) <= neg_tol for i in pinned):
            return support, ps, alpha, beta
    return None


def _assert_kkt(d, xs, m, alpha, beta, pinned, exact):
    tol = 0 if exact else 1e-10
    p = d.probs
    assert abs(sum(p) - 1) <= tol, "sum constraint violated"
    assert abs(sum(a * b for a, b in zip(p, xs)) - m) <= tol * max(1.0, max(abs(float(x)) for x in xs))
    for i in pinned:
        assert _kkt_violation(alpha, beta, xs[i]) <= tol, f"dual infeasible at {i}"


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    var_a: object
    var_b: object
    dist_uniform_a: object
    dist_uniform_b: object
    kl_from_uniform_a: float
    kl_from_uniform_b: float


def prob_variance(d):
    """Variance of the probability values about ``1/n``: ``((1 - 1/n) - h(p)) / n``."""
    n = len(d)
    return ((1 - Fraction(1, n)) - h(d)) / n if d.mode == EXACT else ((1 - 1 / n) - h(d)) / n


def dist_to_uniform(d):
    """Squared Euclidean distance to the uniform distribution."""
    n = len(d)
    u = Fraction(1, n) if d.mode == EXACT else 1.0 / n
    return sum((p - u) ** 2 for p in d.probs)


def compare_solutions(a, b):
    pa = a.probs if isinstance(a, MaxentSolution) else a
    pb = b.probs if isinstance(b, MaxentSolution) else b
    if len(pa) != len(pb):
        raise LengthMismatch(f"solutions of length {len(pa)} and {len(pb)}")
    n = len(pa)
    uni = Dist.uniform(n, FLOAT)
    return Comparison(
        prob_variance(pa),
        prob_variance(pb),
        dist_to_uniform(pa),
        dist_to_uniform(pb),
        kl_from_uniform(pa, uni),
        kl_from_uniform(pb, uni),
    )


def kl_from_uniform(d, uni=None):
    uni = uni or Dist.uniform(len(d), FLOAT)
    return kl_divergence(d, uni)


# ---------------------------------------------------------------------------
# Boltzmann
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoltzmannProblem:
    n_particles: int
    energy_levels: tuple
    total_energy: float

    def __post_init__(self):
        if not isinstance(self.n_particles, int) or isinstance(self.n_particles, bool) or self.n_particles < 1:
            raise SchemaError(f"particle count must be a positive integer, got {self.n_particles!r}")
        levels = tuple(float(e) for e in self.energy_levels)
        if not levels:
            raise SchemaError("need at least one energy level")
        object.__setattr__(self, "energy_levels", levels)
        object.__setattr__(self, "total_energy", float(self.total_energy))


@dataclass(frozen=True)
class BoltzmannExact:
    occupancies: tuple
    multinomial: int
    normalized_log: float
    feasible: tuple  # of (occupancies, multinomial) in lexicographic order

    def to_json(self):
        return {
            "occupancies": list(self.occupancies),
            "multinomial": self.multinomial,
            "S": self.normalized_log,
            "feasible": [{"occupancies": list(o), "multinomial": w} for o, w in self.feasible],
        }


@dataclass(frozen=True)
class BoltzmannApprox:
    occupancies_real: tuple
    H_e: float
    probs: Dist

    def to_json(self):
        return {"occupancies": list(self.occupancies_real), "H_e": self.H_e}


def multinomial(occ):
    n = sum(occ)
    out = math.factorial(n)
    for k in occ:
        out //= math.factorial(k)
    return out


def boltzmann_exact(prob):
    """Occupancy vector maximising ``n! / prod n_i!`` under both constraints.

    Ties go to the lexicographically smallest vector.
    """
    n = prob.n_particles
    levels = np.array(prob.energy_levels)
    m = len(levels)
    candidates = math.comb(n + m - 1, m - 1)
    if candidates > MAX_CANDIDATES:
        raise Infeasible(f"{candidates} candidate occupancy vectors exceeds the limit of {MAX_CANDIDATES}")
    tol = 1e-9 * max(1.0, abs(prob.total_energy))
    occs = _kernels.feasible_occupancies(n, levels, prob.total_energy, tol)
    if len(occs) == 0:
        raise Infeasible(
            f"no occupancy of {n} particles on levels {prob.energy_levels} has energy {prob.total_energy}"
        )
    rows = sorted(tuple(int(v) for v in r) for r in occs)
    feasible = tuple((r, multinomial(r)) for r in rows)
    best = max(feasible, key=lambda t: t[1])  # first maximum in lex order
    return BoltzmannExact(best[0], best[1], math.log(best[1]) / n, feasible)


def boltzmann_shannon_approx(prob):
    """Continuous relaxation: maximise natural-log Shannon entropy at mean ``E/n``."""
    mean = prob.total_energy / prob.n_particles
    levels = prob.energy_levels
    if len(set(levels)) != len(levels):
        raise SchemaError("energy levels must be distinct for the relaxation")
    sol = solve_max_shannon(MeanConstraintProblem(levels, mean, FLOAT), base="e")
    occ = tuple(prob.n_particles * p for p in sol.probs.probs)
    return BoltzmannApprox(occ, sol.objective, sol.probs)


def stirling_pair(occ):
    """``((1/n) ln(n! / prod n_i!), H_e(n_i / n))`` for integer occupancies."""
    n = sum(occ)
    lhs = (math.lgamma(n + 1) - sum(math.lgamma(k + 1) for k in occ)) / n
    rhs = sum((k / n) * math.log(n / k) for k in occ if k > 0)
    return lhs, rhs
