"""The two-element quantale ({False <= True}, and, or); a posetal monoidal category."""

from dataclasses import dataclass

from ..errors import BackendMismatch
from .base import Coequalizer, Coproduct, MonoidalBackend


@dataclass(frozen=True)
class BoolMor:
    source: bool
    target: bool

    def __post_init__(self):
        if self.source and not self.target:
            raise ValueError("no morphism True -> False")


class BoolBackend(MonoidalBackend):
    kind = "bool"

    def is_object(self, a):
        return isinstance(a, bool)

    def mor(self, a, b):
        return BoolMor(bool(a), bool(b))

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return BoolMor(a, a)

    def _compose2(self, g, f):
        return BoolMor(f.source, g.target)

    def unit(self):
        return True

    def tensor(self, a, b):
        return a and b

    def tensor_mor(self, f, g):
        return BoolMor(f.source and g.source, f.target and g.target)

    def associator(self, a, b, c):
        v = a and b and c
        return BoolMor(v, v)

    def left_unitor(self, a):
        return BoolMor(a, a)

    def right_unitor(self, a):
        return BoolMor(a, a)

    def inverse(self, f):
        if f.source != f.target:
            raise ValueError("not invertible")
        return f

    def initial(self):
        return False

    def is_initial(self, a):
        return not a

    def _initial_map(self, a, b):
        return BoolMor(False, b)

    def coproduct(self, objs):
        objs = tuple(objs)
        total = any(objs)
        return Coproduct(total, objs, tuple(BoolMor(o, total) for o in objs))

    def copair(self, cp, maps, target):
        for m in maps:
            if m.target != target:
                raise BackendMismatch("copair components must share the target")
        return BoolMor(cp.obj, target)

    def distribute_left(self, a, cp):
        cp2 = self.coproduct([a and b for b in cp.summands])
        return BoolMor(a and cp.obj, cp2.obj), cp2

    def distribute_right(self, cp, a):
        cp2 = self.coproduct([b and a for b in cp.summands])
        return BoolMor(cp.obj and a, cp2.obj), cp2

    def _coequalizer(self, f, g):
        t = f.target
        return Coequalizer(f, g, t, BoolMor(t, t), BoolMor(t, t))

    def is_invertible(self, f):
        return f.source == f.target

    def global_elements(self, a, bound=None):
        return [BoolMor(True, True)] if a else []

    def hom_count(self, a, b):
        return 0 if (a and not b) else 1

    def hom_enumerate(self, a, b, bound=None):
        return [BoolMor(a, b)] if self.hom_count(a, b) else []

    def obj_to_json(self, a):
        return a

    def obj_from_json(self, data):
        if isinstance(data, str) and data in ("true", "false"):
            return data == "true"
        if not isinstance(data, bool):
            raise ValueError(f"Bool object must be true/false, got {data!r}")
        return data

    def mor_to_json(self, f):
        return True

    def mor_from_json(self, data, source, target):
        return BoolMor(source, target)

    def describe(self, a):
        return "T" if a else "F"

    def size(self, a):
        return int(a)
