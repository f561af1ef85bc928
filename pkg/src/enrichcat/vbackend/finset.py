"""Finite sets under cartesian product."""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from ..errors import check_budget
from .base import Coequalizer, Coproduct, MonoidalBackend

UNIT_LABEL = "*"


@dataclass(frozen=True)
class FinSetObj:
    """A finite set of labels; the tuple order is the canonical order."""

    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in {self.labels}")

    @cached_property
    def index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FinSet{list(self.labels)}"


@dataclass(frozen=True)
class FinSetMor:
    """A total function, stored as the positions of the images."""

    source: FinSetObj
    target: FinSetObj
    table: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != len(self.source):
            raise ValueError("function table must be total")
        if any(not 0 <= t < len(self.target) for t in self.table):
            raise ValueError("function table points outside the target")

    def __call__(self, label):
        return self.target.labels[self.table[self.source.index[label]]]

    def __repr__(self):
        pairs = ", ".join(f"{s!r}->{self.target.labels[t]!r}"
                          for s, t in zip(self.source.labels, self.table))
        return f"FinSetMor({pairs})"


def json_label(lab):
    if isinstance(lab, tuple):
        return [json_label(x) for x in lab]
    return lab


def label_from_json(lab):
    if isinstance(lab, list):
        return tuple(label_from_json(x) for x in lab)
    return lab


class _UnionFind:
    """Union-find whose class representative is the least element."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo


class FinSetBackend(MonoidalBackend):
    kind = "finset"

    def obj(self, labels):
        return FinSetObj(tuple(labels))

    def mor(self, source, target, mapping):
        """Build a morphism from a dict (or callable) label -> label."""
        get = mapping if callable(mapping) else mapping.__getitem__
        return FinSetMor(source, target, tuple(target.index[get(s)] for s in source.labels))

    def is_object(self, a):
        return isinstance(a, FinSetObj)

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return FinSetMor(a, a, tuple(range(len(a))))

    def _compose2(self, g, f):
        gt = g.table
        return FinSetMor(f.source, g.target, tuple(gt[i] for i in f.table))

    def unit(self):
        return FinSetObj((UNIT_LABEL,))

    def tensor(self, a, b):
        return FinSetObj(tuple((x, y) for x in a.labels for y in b.labels))

    def tensor_mor(self, f, g):
        nb = len(g.target)
        table = tuple(i * nb + j for i in f.table for j in g.table)
        return FinSetMor(self.tensor(f.source, g.source), self.tensor(f.target, g.target), table)

    def associator(self, a, b, c):
        # lexicographic layout makes the index map the identity
        src = self.tensor(self.tensor(a, b), c)
        tgt = self.tensor(a, self.tensor(b, c))
        return FinSetMor(src, tgt, tuple(range(len(src))))

    def left_unitor(self, a):
        return FinSetMor(self.tensor(self.unit(), a), a, tuple(range(len(a))))

    def right_unitor(self, a):
        return FinSetMor(self.tensor(a, self.unit()), a, tuple(range(len(a))))

    def inverse(self, f):
        if not self.is_invertible(f):
            raise ValueError("not a bijection")
        inv = [0] * len(f.table)
        for i, t in enumerate(f.table):
            inv[t] = i
        return FinSetMor(f.target, f.source, tuple(inv))

    def initial(self):
        return FinSetObj(())

    def is_initial(self, a):
        return len(a) == 0

    def _initial_map(self, a, b):
        return FinSetMor(a, b, ())

    def coproduct(self, objs):
        objs = tuple(objs)
        labels, injections, offset = [], [], 0
        for i, o in enumerate(objs):
            labels.extend((i, lab) for lab in o.labels)
        total = FinSetObj(tuple(labels))
        for o in objs:
            injections.append(FinSetMor(o, total, tuple(range(offset, offset + len(o)))))
            offset += len(o)
        return Coproduct(total, objs, tuple(injections))

    def copair(self, cp, maps, target):
        table = []
        for m in maps:
            if m.target != target:
                raise ValueError("copair components must share the target")
            table.extend(m.table)
        return FinSetMor(cp.obj, target, tuple(table))

    def distribute_left(self, a, cp):
        cp2 = self.coproduct([self.tensor(a, b) for b in cp.summands])
        src = self.tensor(a, cp.obj)
        offsets2, where, off = [], [], 0
        for i, b in enumerate(cp.summands):
            offsets2.append(off)
            off += len(a) * len(b)
            where.extend((i, j) for j in range(len(b)))
        table = [offsets2[i] + x * len(cp.summands[i]) + j
                 for x in range(len(a)) for i, j in where]
        return FinSetMor(src, cp2.obj, tuple(table)), cp2

    def distribute_right(self, cp, a):
        cp2 = self.coproduct([self.tensor(b, a) for b in cp.summands])
        # (i, b), x  ->  (i, (b, x)) keeps lexicographic positions
        return FinSetMor(self.tensor(cp.obj, a), cp2.obj, tuple(range(len(cp2.obj)))), cp2

    def _coequalizer(self, f, g):
        uf = _UnionFind(len(f.target))
        for a, b in zip(f.table, g.table):
            uf.union(a, b)
        reps = sorted({uf.find(i) for i in range(len(f.target))})
        pos = {r: k for k, r in enumerate(reps)}
        q = FinSetObj(tuple(f.target.labels[r] for r in reps))
        proj = FinSetMor(f.target, q, tuple(pos[uf.find(i)] for i in range(len(f.target))))
        section = FinSetMor(q, f.target, tuple(reps))
        return Coequalizer(f, g, q, proj, section)

    def is_invertible(self, f):
        return len(f.source) == len(f.target) and len(set(f.table)) == len(f.table)

    def global_elements(self, a, bound=None):
        check_budget(len(a), bound, "global elements")
        u = self.unit()
        return [FinSetMor(u, a, (i,)) for i in range(len(a))]

    def hom_count(self, a, b):
        return len(b) ** len(a)

    def hom_enumerate(self, a, b, bound=None):
        check_budget(self.hom_count(a, b), bound, "FinSet hom enumeration")
        return [FinSetMor(a, b, t) for t in product(range(len(b)), repeat=len(a))]

    def element(self, f):
        """The label picked out by a global element."""
        return f.target.labels[f.table[0]]

    def obj_to_json(self, a):
        return [json_label(x) for x in a.labels]

    def obj_from_json(self, data):
        if not isinstance(data, list):
            raise ValueError(f"FinSet object must be a label array, got {data!r}")
        return FinSetObj(tuple(label_from_json(x) for x in data))

    def mor_to_json(self, f):
        return [[json_label(s), json_label(f.target.labels[t])]
                for s, t in zip(f.source.labels, f.table)]

    def mor_from_json(self, data, source, target):
        if isinstance(data, dict):
            pairs = list(data.items())
        else:
            pairs = [tuple(p) for p in data]
        mapping = {label_from_json(s): label_from_json(t) for s, t in pairs}
        missing = [s for s in source.labels if s not in mapping]
        if missing:
            raise ValueError(f"function table missing labels {missing}")
        for t in mapping.values():
            if t not in target.index:
                raise ValueError(f"label {t!r} not in target {target}")
        return self.mor(source, target, mapping)

    def describe(self, a):
        return f"{len(a)}"

    def size(self, a):
        return len(a)
