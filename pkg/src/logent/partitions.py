"""Finite set partitions, their distinction relations, refinement and join.

Points of a universe are the dense indices ``0..n-1``; labels are display
only.  A :class:`Partition` is held in canonical form (indices ascend inside
a block, blocks ordered by their smallest element), so two partitions are
equal exactly when their block tuples are equal.

Ditsets and inditsets are computed on demand and never cached on the
partition; :func:`dit_count` works from block sizes alone.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import NotEquivalence, RelationTooLarge, SchemaError, UniverseMismatch

#: relations are refused above this universe size (n**2 ordered pairs)
MAX_RELATION_N = 4096


@dataclass(frozen=True)
class Universe:
    n: int
    labels: tuple = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise SchemaError(f"universe size must be a positive integer, got {self.n!r}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise SchemaError(f"expected {self.n} labels, got {len(labels)}")
            if len(set(labels)) != self.n:
                raise SchemaError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    def label(self, j):
        return self.labels[j] if self.labels is not None else str(j)

    def _check_relation_size(self):
        if self.n > MAX_RELATION_N:
            raise RelationTooLarge(
                f"refusing to materialise a relation on n={self.n} > {MAX_RELATION_N} points"
            )


@dataclass(frozen=True)
class PairRelation:
    """A set of ordered index pairs on a universe."""

    universe: Universe
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((int(j), int(k)) for j, k in self.pairs)
        n = self.universe.n
        for j, k in pairs:
            if not (0 <= j < n and 0 <= k < n):
                raise SchemaError(f"pair {(j, k)} outside universe of size {n}")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __or__(self, other):
        _same(self.universe, other.universe)
        return PairRelation(self.universe, self.pairs | other.pairs)

    def __and__(self, other):
        _same(self.universe, other.universe)
        return PairRelation(self.universe, self.pairs & other.pairs)

    def __sub__(self, other):
        _same(self.universe, other.universe)
        return PairRelation(self.universe, self.pairs - other.pairs)

    def is_symmetric(self):
        return all((k, j) in self.pairs for j, k in self.pairs)

    def complement(self):
        self.universe._check_relation_size()
        n = self.universe.n
        full = {(j, k) for j in range(n) for k in range(n)}
        return PairRelation(self.universe, frozenset(full - self.pairs))


def _same(u, v):
    if u.n != v.n:
        raise UniverseMismatch(f"universes differ: n={u.n} vs n={v.n}")


def _canonical(blocks):
    out = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
    return out


@dataclass(frozen=True)
class Partition:
    universe: Universe
    blocks: tuple = field(default=())

    def __post_init__(self):
        n = self.universe.n
        blocks = [list(b) for b in self.blocks]
        seen = set()
        for b in blocks:
            if not b:
                raise SchemaError("partition blocks must be non-empty")
            for j in b:
                if not isinstance(j, int) or isinstance(j, bool):
                    raise SchemaError(f"block entries must be integers, got {j!r}")
                if not 0 <= j < n:
                    raise SchemaError(f"index {j} outside universe of size {n}")
                if j in seen:
                    raise SchemaError(f"index {j} appears in more than one block")
                seen.add(j)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise SchemaError(f"blocks do not cover the universe; missing {missing}")
        object.__setattr__(self, "blocks", _canonical(blocks))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_blocks(cls, blocks, n=None, labels=None):
        blocks = [list(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(Universe(n, labels), tuple(tuple(b) for b in blocks))

    @classmethod
    def discrete(cls, n):
        return cls(Universe(n), tuple((j,) for j in range(n)))

    @classmethod
    def blob(cls, n):
        return cls(Universe(n), (tuple(range(n)),))

    @classmethod
    def from_labels(cls, labels):
        """Partition induced by a labelling: ``j ~ k`` iff ``labels[j] == labels[k]``."""
        groups = {}
        for j, v in enumerate(labels):
            groups.setdefault(v, []).append(j)
        return cls(Universe(len(labels)), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise SchemaError("partition JSON must be an object")
        if "n" not in obj or "blocks" not in obj:
            raise SchemaError("partition JSON needs 'n' and 'blocks'")
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise SchemaError("'n' must be an integer")
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            raise SchemaError("'blocks' must be a list of integer lists")
        return cls(Universe(n, obj.get("labels")), tuple(tuple(b) for b in blocks))

    def to_json(self):
        out = {"n": self.n, "blocks": [list(b) for b in self.blocks]}
        if self.universe.labels is not None:
            out["labels"] = list(self.universe.labels)
        return out

    # -- basic views ------------------------------------------------------

    @property
    def n(self):
        return self.universe.n

    def __len__(self):
        return len(self.blocks)

    def labels(self):
        """Block index of every point (an eigenvalue-style labelling)."""
        lab = [0] * self.n
        for i, b in enumerate(self.blocks):
            for j in b:
                lab[j] = i
        return lab

    def is_blob(self):
        return len(self.blocks) == 1

    def is_discrete(self):
        return len(self.blocks) == self.n

    def __str__(self):
        u = self.universe
        return "{" + ", ".join("{" + ",".join(u.label(j) for j in b) + "}" for b in self.blocks) + "}"


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def ditset(p):
    """Ordered pairs lying in different blocks."""
    p.universe._check_relation_size()
    lab = p.labels()
    n = p.n
    pairs = frozenset((j, k) for j in range(n) for k in range(n) if lab[j] != lab[k])
    return PairRelation(p.universe, pairs)


def inditset(p):
    """Union of ``B x B`` over the blocks; the equivalence relation of ``p``."""
    p.universe._check_relation_size()
    pairs = frozenset((j, k) for b in p.blocks for j in b for k in b)
    return PairRelation(p.universe, pairs)


def dit_count(p):
    """``n**2 - sum |B|**2``, without building the relation."""
    return p.n * p.n - sum(len(b) ** 2 for b in p.blocks)


def from_equivalence(r):
    """Partition whose inditset is ``r``.

    Raises :class:`NotEquivalence` naming the first witness found for a
    failure of reflexivity, symmetry or transitivity, checked in that order.
    """
    n = r.universe.n
    pairs = r.pairs
    for j in range(n):
        if (j, j) not in pairs:
            raise NotEquivalence("reflexivity", j)
    for j, k in sorted(pairs):
        if (k, j) not in pairs:
            raise NotEquivalence("symmetry", (j, k))
    classes = {}
    for j in range(n):
        classes[j] = frozenset(k for k in range(n) if (j, k) in pairs)
    for j, k in sorted(pairs):
        if classes[j] != classes[k]:
            # some l related to one but not the other
            l = min(classes[j] ^ classes[k])
            a, b = (j, k) if l in classes[k] else (k, j)
            raise NotEquivalence("transitivity", ((a, b), (b, l)))
    blocks = {c for c in classes.values()}
    return Partition(r.universe, tuple(tuple(b) for b in blocks))


# ---------------------------------------------------------------------------
# lattice operations
# ---------------------------------------------------------------------------

def join(p, q):
    """Blocks are the non-empty intersections of a block of ``p`` with one of ``q``."""
    _same(p.universe, q.universe)
    lp, lq = p.labels(), q.labels()
    groups = {}
    for j in range(p.n):
        groups.setdefault((lp[j], lq[j]), []).append(j)
    return Partition(p.universe, tuple(tuple(g) for g in groups.values()))


def join_all(partitions):
    it = iter(partitions)
    acc = next(it)
    for q in it:
        acc = join(acc, q)
    return acc


def refines(finer, coarser):
    """True iff every block of ``finer`` lies inside some block of ``coarser``.

    Equivalently ``ditset(coarser) <= ditset(finer)``.  The argument names
    fix the direction that infix notation leaves ambiguous.
    """
    _same(finer.universe, coarser.universe)
    lc = coarser.labels()
    return all(len({lc[j] for j in b}) == 1 for b in finer.blocks)


def common_dits_exist(p, q):
    """Whether the two ditsets share an ordered pair.

    Two points ``j, k`` form a common dit iff they are split by both
    partitions; a label comparison avoids building either relation.
    """
    _same(p.universe, q.universe)
    lp, lq = p.labels(), q.labels()
    n = p.n
    for j in range(n):
        for k in range(j + 1, n):
            if lp[j] != lp[k] and lq[j] != lq[k]:
                return True
    return False


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def all_partitions(n):
    """Every partition of ``0..n-1`` (restricted growth strings), Bell(n) of them."""
    if n < 1:
        raise SchemaError("n must be positive")
    u = Universe(n)

    def rgs(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for v in range(top + 2):
            yield from rgs(prefix + [v], max(top, v))

    for s in rgs([0], 0):
        groups = {}
        for j, v in enumerate(s):
            groups.setdefault(v, []).append(j)
        yield Partition(u, tuple(tuple(g) for g in groups.values()))


def full_relation(universe):
    universe._check_relation_size()
    n = universe.n
    return PairRelation(universe, frozenset(product(range(n), repeat=2)))
