"""A small term language for compound entropies and the dit-bit transform.

An :class:`EntropyExpr` is an average, under a marginal ``p(.)`` of a joint
distribution, of a signed sum of atoms.  Logical atoms are ``1 - q(.)`` and
Shannon atoms are ``log(1/q(.))``, where ``q`` is itself a marginal.  The
transform rewrites every ``1 - q`` atom into ``log(1/q)`` and leaves the
weights and signs alone.

Marginals are named by the tuple of axis indices they keep, so over a 2-axis
joint ``(0,)`` is ``p(x)``, ``(1,)`` is ``p(y)`` and ``(0, 1)`` is ``p(x,y)``.
A plain :class:`~logent.entropy.Dist` is treated as a one-axis joint.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numeric import EXACT, log
from .entropy import Dist, JointDist
from .errors import AxisCount, MalformedExpr


@dataclass(frozen=True)
class OneMinus:
    """Logical atom ``1 - q(axes)``."""

    axes: tuple

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(sorted(self.axes)))

    def value(self, q, base=2):
        return 1 - q


@dataclass(frozen=True)
class LogInv:
    """Shannon atom ``log(1/q(axes))``."""

    axes: tuple

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(sorted(self.axes)))

    def value(self, q, base=2):
        return log(1.0 / float(q), base)


@dataclass(frozen=True)
class EntropyExpr:
    """``sum_o p_weight(o) * sum_t sign_t * atom_t(o)``."""

    weight: tuple
    terms: tuple  # of (sign, atom)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(sorted(self.weight)))
        terms = tuple((int(s), a) for s, a in self.terms)
        for sign, atom in terms:
            if sign not in (1, -1):
                raise MalformedExpr(f"term signs must be +1 or -1, got {sign}")
            axes = getattr(atom, "axes", None)
            if axes is None or not set(axes) <= set(self.weight):
                raise MalformedExpr(
                    f"atom {atom!r} must be a marginal over a subset of the weight axes {self.weight}"
                )
        object.__setattr__(self, "terms", terms)

    def is_logical(self):
        return all(type(a) is OneMinus for _, a in self.terms)

    def is_shannon(self):
        return all(type(a) is LogInv for _, a in self.terms)

    def __str__(self):
        def show(axes):
            return "p(" + ",".join("xyz"[a] for a in axes) + ")"

        parts = []
        for sign, atom in self.terms:
            op = "+" if sign > 0 else "-"
            if type(atom) is OneMinus:
                body = f"(1 - {show(atom.axes)})"
            elif type(atom) is LogInv:
                body = f"log(1/{show(atom.axes)})"
            else:
                body = repr(atom)
            parts.append(f"{op} {body}")
        inner = " ".join(parts).lstrip("+ ")
        return f"sum {show(self.weight)} [{inner}]"


def dit_bit_transform(expr):
    """Replace each ``1 - q`` atom by ``log(1/q)``."""
    if not isinstance(expr, EntropyExpr):
        raise MalformedExpr(f"expected an EntropyExpr, got {type(expr).__name__}")
    out = []
    for sign, atom in expr.terms:
        if type(atom) is not OneMinus:
            raise MalformedExpr(f"term {atom!r} is not of the form 1 - q")
        out.append((sign, LogInv(atom.axes)))
    return EntropyExpr(expr.weight, tuple(out), expr.name)


def _as_joint_table(d):
    if isinstance(d, JointDist):
        return d.table, d.mode
    if isinstance(d, Dist):
        return d.array(), d.mode
    raise TypeError(f"cannot evaluate over {type(d).__name__}")


def evaluate(expr, d, base=2):
    """Evaluate over a :class:`JointDist` (or :class:`Dist` for one-axis forms).

    Logical expressions over exact-mode inputs evaluate exactly; outcomes of
    zero weight are skipped, which is what makes ``0 log(1/0) = 0`` hold.
    """
    table, mode = _as_joint_table(d)
    ndim = table.ndim
    used = set(expr.weight)
    for _, atom in expr.terms:
        used |= set(atom.axes)
    if any(a >= ndim or a < 0 for a in used):
        raise AxisCount(f"expression uses axes {sorted(used)} but the distribution has {ndim}")

    def marg(axes):
        drop = tuple(a for a in range(ndim) if a not in axes)
        return table.sum(axis=drop) if drop else table

    weight = marg(expr.weight)
    atoms = [(s, a, marg(a.axes)) for s, a in expr.terms]
    exact = mode == EXACT and expr.is_logical()
    total = weight.flat[0] * 0 if exact else 0.0
    for idx in itertools.product(*(range(table.shape[a]) for a in expr.weight)):
        w = weight[idx]
        if w == 0:
            continue
        at = dict(zip(expr.weight, idx))
        acc = 0
        for sign, atom, m in atoms:
            q = m[tuple(at[a] for a in atom.axes)]
            acc = acc + sign * atom.value(q, base)
        total = total + (w * acc if exact else float(w) * acc)
    return total


# ---------------------------------------------------------------------------
# the standard logical forms
# ---------------------------------------------------------------------------

X, Y, Z = 0, 1, 2


def _om(*axes):
    return OneMinus(tuple(axes))


def h_form():
    """``h(p) = sum p(x) (1 - p(x))`` for a single distribution."""
    return EntropyExpr((X,), ((1, _om(X)),), "h")


def joint_forms():
    """Logical forms for the compound entropies of a 2-axis joint."""
    xy = (X, Y)
    return {
        "h_x": EntropyExpr(xy, ((1, _om(X)),), "h_x"),
        "h_y": EntropyExpr(xy, ((1, _om(Y)),), "h_y"),
        "h_joint": EntropyExpr(xy, ((1, _om(X, Y)),), "h_joint"),
        # conditional: (1 - p(x,y)) - (1 - p(y))
        "h_x_given_y": EntropyExpr(xy, ((1, _om(X, Y)), (-1, _om(Y))), "h_x_given_y"),
        "h_y_given_x": EntropyExpr(xy, ((1, _om(X, Y)), (-1, _om(X))), "h_y_given_x"),
        "m_xy": EntropyExpr(xy, ((1, _om(X)), (1, _om(Y)), (-1, _om(X, Y))), "m_xy"),
    }


def mutual3_form():
    """Three-way mutual logical information as a signed sum of atoms."""
    xyz = (X, Y, Z)
    terms = (
        (1, _om(X)), (1, _om(Y)), (1, _om(Z)),
        (-1, _om(X, Y)), (-1, _om(X, Z)), (-1, _om(Y, Z)),
        (1, _om(X, Y, Z)),
    )
    return EntropyExpr(xyz, terms, "m_xyz")


def transform_table(j, base=2):
    """Pairs ``(logical, shannon)`` for each standard form on a 2-axis joint."""
    if j.ndim != 2:
        raise AxisCount("the compound forms need a 2-axis joint")
    out = {}
    for name, expr in joint_forms().items():
        out[name] = (evaluate(expr, j), evaluate(dit_bit_transform(expr), j, base))
    return out


def random_joint(rng, shape, denominator=None):
    """Random joint table; exact with the given common denominator if one is passed."""
    size = int(np.prod(shape))
    if denominator is None:
        t = rng.random(size)
        t = t / t.sum()
        return JointDist(t.reshape(shape), mode="float")
    counts = rng.multinomial(denominator, np.full(size, 1.0 / size))
    cells = np.empty(size, dtype=object)
    cells[:] = [Fraction(int(c), denominator) for c in counts]
    return JointDist(cells.reshape(shape), mode=EXACT)
