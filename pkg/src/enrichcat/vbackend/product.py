"""The product V x W of two backends; every operation is computed componentwise."""

from dataclasses import dataclass

from .base import Coequalizer, Coproduct, MonoidalBackend


@dataclass(frozen=True)
class PairObj:
    left: object
    right: object

    def __repr__(self):
        return f"<{self.left!r}|{self.right!r}>"


@dataclass(frozen=True)
class PairMor:
    left: object
    right: object


class ProductBackend(MonoidalBackend):
    kind = "product"

    def __init__(self, left, right):
        self.left, self.right = left, right

    def descriptor(self):
        return {"kind": self.kind, "left": self.left.descriptor(), "right": self.right.descriptor()}

    def pair(self, a, b):
        return PairObj(a, b)

    def pair_mor(self, f, g):
        return PairMor(f, g)

    def is_object(self, a):
        return isinstance(a, PairObj)

    def source(self, f):
        return PairObj(self.left.source(f.left), self.right.source(f.right))

    def target(self, f):
        return PairObj(self.left.target(f.left), self.right.target(f.right))

    def identity(self, a):
        return PairMor(self.left.identity(a.left), self.right.identity(a.right))

    def _compose2(self, g, f):
        return PairMor(self.left.compose(g.left, f.left), self.right.compose(g.right, f.right))

    def unit(self):
        return PairObj(self.left.unit(), self.right.unit())

    def tensor(self, a, b):
        return PairObj(self.left.tensor(a.left, b.left), self.right.tensor(a.right, b.right))

    def tensor_mor(self, f, g):
        return PairMor(self.left.tensor_mor(f.left, g.left), self.right.tensor_mor(f.right, g.right))

    def associator(self, a, b, c):
        return PairMor(self.left.associator(a.left, b.left, c.left),
                       self.right.associator(a.right, b.right, c.right))

    def left_unitor(self, a):
        return PairMor(self.left.left_unitor(a.left), self.right.left_unitor(a.right))

    def right_unitor(self, a):
        return PairMor(self.left.right_unitor(a.left), self.right.right_unitor(a.right))

    def inverse(self, f):
        return PairMor(self.left.inverse(f.left), self.right.inverse(f.right))

    def initial(self):
        return PairObj(self.left.initial(), self.right.initial())

    def is_initial(self, a):
        return self.left.is_initial(a.left) and self.right.is_initial(a.right)

    def _initial_map(self, a, b):
        return PairMor(self.left.initial_map(a.left, b.left), self.right.initial_map(a.right, b.right))

    def _split(self, cp):
        lcp = Coproduct(cp.obj.left, tuple(s.left for s in cp.summands),
                        tuple(i.left for i in cp.injections))
        rcp = Coproduct(cp.obj.right, tuple(s.right for s in cp.summands),
                        tuple(i.right for i in cp.injections))
        return lcp, rcp

    def _join(self, lcp, rcp):
        return Coproduct(PairObj(lcp.obj, rcp.obj),
                         tuple(PairObj(a, b) for a, b in zip(lcp.summands, rcp.summands)),
                         tuple(PairMor(a, b) for a, b in zip(lcp.injections, rcp.injections)))

    def coproduct(self, objs):
        objs = tuple(objs)
        return self._join(self.left.coproduct([o.left for o in objs]),
                          self.right.coproduct([o.right for o in objs]))

    def copair(self, cp, maps, target):
        lcp, rcp = self._split(cp)
        return PairMor(self.left.copair(lcp, [m.left for m in maps], target.left),
                       self.right.copair(rcp, [m.right for m in maps], target.right))

    def distribute_left(self, a, cp):
        lcp, rcp = self._split(cp)
        li, lcp2 = self.left.distribute_left(a.left, lcp)
        ri, rcp2 = self.right.distribute_left(a.right, rcp)
        return PairMor(li, ri), self._join(lcp2, rcp2)

    def distribute_right(self, cp, a):
        lcp, rcp = self._split(cp)
        li, lcp2 = self.left.distribute_right(lcp, a.left)
        ri, rcp2 = self.right.distribute_right(rcp, a.right)
        return PairMor(li, ri), self._join(lcp2, rcp2)

    def _coequalizer(self, f, g):
        lc = self.left.coequalizer(f.left, g.left)
        rc = self.right.coequalizer(f.right, g.right)
        return Coequalizer(f, g, PairObj(lc.obj, rc.obj), PairMor(lc.projection, rc.projection),
                           PairMor(lc.section, rc.section))

    def is_invertible(self, f):
        return self.left.is_invertible(f.left) and self.right.is_invertible(f.right)

    def global_elements(self, a, bound=None):
        return [PairMor(x, y) for x in self.left.global_elements(a.left, bound)
                for y in self.right.global_elements(a.right, bound)]

    def hom_count(self, a, b):
        return self.left.hom_count(a.left, b.left) * self.right.hom_count(a.right, b.right)

    def hom_enumerate(self, a, b, bound=None):
        return [PairMor(x, y) for x in self.left.hom_enumerate(a.left, b.left, bound)
                for y in self.right.hom_enumerate(a.right, b.right, bound)]

    def obj_to_json(self, a):
        return [self.left.obj_to_json(a.left), self.right.obj_to_json(a.right)]

    def obj_from_json(self, data):
        return PairObj(self.left.obj_from_json(data[0]), self.right.obj_from_json(data[1]))

    def mor_to_json(self, f):
        return [self.left.mor_to_json(f.left), self.right.mor_to_json(f.right)]

    def mor_from_json(self, data, source, target):
        return PairMor(self.left.mor_from_json(data[0], source.left, target.left),
                       self.right.mor_from_json(data[1], source.right, target.right))

    def describe(self, a):
        return f"({self.left.describe(a.left)}, {self.right.describe(a.right)})"

    def size(self, a):
        return (self.left.size(a.left), self.right.size(a.right))
