"""Combinatorics of the simplex category.

A morphism ``[m] -> [n]`` of the simplex category is stored as the tuple of
its values ``(f(0), ..., f(m))``.  Opposite categories are never encoded by
flipping maps: ``slice_category`` builds the opposite of the slice by reversing
arrow direction at the :class:`~enrichcat.fincat.FiniteCategory` layer.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from math import comb

from .errors import RankMismatch, check_budget
from .fincat import FiniteCategory


@dataclass(frozen=True, order=True)
class SimplexMap:
    """A weakly increasing map ``[source_rank] -> [target_rank]``."""

    values: tuple
    target_rank: int

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("a simplex map needs at least one value")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"values {vals} are not weakly increasing")
        if vals[0] < 0 or vals[-1] > self.target_rank:
            raise ValueError(f"values {vals} out of range for [{self.target_rank}]")
        # slice categories hash these constantly
        object.__setattr__(self, "_hash", hash((vals, self.target_rank)))

    def __hash__(self):
        return self._hash

    @property
    def source_rank(self):
        return len(self.values) - 1

    def __call__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"SimplexMap({self.values}, [{self.source_rank}]->[{self.target_rank}])"

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def inert(cls, start, length, n):
        """Inclusion of the sub-interval ``{start, ..., start+length}`` into ``[n]``."""
        return cls(tuple(range(start, start + length + 1)), n)

    def then(self, other):
        return compose(self, other)


class MapClass(Enum):
    INERT = "inert"
    ACTIVE = "active"
    IDENTITY = "identity"   # both inert and active
    GENERIC = "generic"


def compose(f, g):
    """Diagrammatic composite: first ``f``, then ``g`` (i.e. ``g o f``)."""
    if f.target_rank != g.source_rank:
        raise RankMismatch(
            f"cannot compose [{f.source_rank}]->[{f.target_rank}] "
            f"with [{g.source_rank}]->[{g.target_rank}]")
    return SimplexMap(tuple(g.values[v] for v in f.values), g.target_rank)


def is_inert(f):
    return all(v == f.values[0] + i for i, v in enumerate(f.values))


def is_active(f):
    return f.values[0] == 0 and f.values[-1] == f.target_rank


def classify(f):
    inert, active = is_inert(f), is_active(f)
    if inert and active:
        return MapClass.IDENTITY
    if inert:
        return MapClass.INERT
    if active:
        return MapClass.ACTIVE
    return MapClass.GENERIC


def factor_active_inert(f):
    """Split ``f`` as ``active`` followed by the inclusion of its image interval.

    Returns ``(active, inert)`` with ``compose(active, inert) == f``.
    """
    lo, hi = f.values[0], f.values[-1]
    active = SimplexMap(tuple(v - lo for v in f.values), hi - lo)
    inert = SimplexMap.inert(lo, hi - lo, f.target_rank)
    return active, inert


def rho(i, n):
    """The inert map ``[1] -> [n]`` picking out the edge ``{i-1, i}``."""
    if not 1 <= i <= n:
        raise ValueError(f"rho needs 1 <= i <= n, got i={i}, n={n}")
    return SimplexMap((i - 1, i), n)


def is_cellular(f):
    return all(b - a <= 1 for a, b in zip(f.values, f.values[1:]))


def is_phi_cellular(alpha, phi):
    """Cellularity of ``alpha: [k] -> [n]`` relative to ``phi: [m] -> [n]``.

    Below ``phi(0)`` and from ``phi(m)`` on, consecutive values step by at most
    one; inside a block ``phi(j) <= alpha(i) < phi(j+1)`` the next value may
    jump, but not past ``phi(j+1)``.
    """
    if alpha.target_rank != phi.target_rank:
        raise RankMismatch("alpha and phi must share a target")
    p = phi.values
    for a, b in zip(alpha.values, alpha.values[1:]):
        if a < p[0] or a >= p[-1]:
            if b > a + 1:
                return False
            continue
        for j in range(len(p) - 1):
            if p[j] <= a < p[j + 1]:
                if b > p[j + 1]:
                    return False
                break
    return True


def count_maps(m, n):
    """Number of monotone maps ``[m] -> [n]``: multisets of size m+1 from n+1."""
    return comb(n + m + 1, m + 1)


def enumerate_maps(m, n, bound=None):
    """All maps ``[m] -> [n]`` in lexicographic order of their value tuples."""
    check_budget(count_maps(m, n), bound, f"Hom([{m}],[{n}])")
    return [SimplexMap(c, n) for c in combinations_with_replacement(range(n + 1), m + 1)]


def maps_up_to(max_rank, n, cellular_only=False, bound=None):
    out = []
    for m in range(max_rank + 1):
        out.extend(enumerate_maps(m, n, bound))
    if cellular_only:
        out = [f for f in out if is_cellular(f)]
    return out


def face(i, n):
    """Coface ``d^i: [n-1] -> [n]`` skipping ``i``."""
    return SimplexMap(tuple(j for j in range(n + 1) if j != i), n)


def degeneracy(i, n):
    """Codegeneracy ``s^i: [n+1] -> [n]`` hitting ``i`` twice."""
    return SimplexMap(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)


def slice_category(n, cellular_only=False, max_rank=3):
    """The opposite of the slice of the simplex category over ``[n]``, truncated.

    Objects are maps ``phi: [m] -> [n]`` with ``m <= max_rank``.  An arrow
    ``phi -> psi`` is labelled by ``delta: [k] -> [m]`` with
    ``compose(delta, phi) == psi`` (so arrows point against ``delta``).
    """
    objects = maps_up_to(max_rank, n, cellular_only)
    present = set(objects)
    arrows = []
    for phi in objects:
        for k in range(max_rank + 1):
            for delta in enumerate_maps(k, phi.source_rank):
                psi = compose(delta, phi)
                if psi in present:
                    arrows.append((phi, psi, delta))

    def comp(a, b):
        # a: phi -> psi over delta, b: psi -> chi over eps; in the simplex
        # category this is eps followed by delta
        return compose(b[2], a[2])

    return FiniteCategory(
        objects, arrows, comp, lambda phi: SimplexMap.identity(phi.source_rank),
        name=f"slice_op[{n}]" + ("_cell" if cellular_only else ""))
