"""Abstract monoidal category with chosen coproducts and coequalizers."""

from abc import ABC, abstractmethod
from dataclasses import dataclass

from ..errors import BackendMismatch, FactorizationError, NotParallel


@dataclass(frozen=True)
class Coproduct:
    obj: object
    summands: tuple
    injections: tuple


@dataclass(frozen=True)
class Coequalizer:
    """A coequalizer of ``f, g`` with a chosen section of its projection."""

    f: object
    g: object
    obj: object
    projection: object
    section: object


class MonoidalBackend(ABC):
    """A monoidal category compatible with finite colimits.

    Morphism composition is written in mathematical order:
    ``compose(g, f)`` is ``g o f``.  Structure maps are

    * ``associator(a, b, c): (a*b)*c -> a*(b*c)``
    * ``left_unitor(a): I*a -> a`` and ``right_unitor(a): a*I -> a``
    """

    kind = "abstract"

    def descriptor(self):
        return {"kind": self.kind}

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(str(self.descriptor()))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"

    # -- objects and morphisms
    @abstractmethod
    def is_object(self, a): ...

    @abstractmethod
    def source(self, f): ...

    @abstractmethod
    def target(self, f): ...

    @abstractmethod
    def identity(self, a): ...

    @abstractmethod
    def _compose2(self, g, f): ...

    def compose(self, *fs):
        """``compose(h, g, f) == h o g o f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            if self.target(out) != self.source(g):
                raise ValueError(f"cannot compose: target {self.target(out)} != source {self.source(g)}")
            out = self._compose2(g, out)
        return out

    # -- monoidal structure
    @abstractmethod
    def unit(self): ...

    @abstractmethod
    def tensor(self, a, b): ...

    @abstractmethod
    def tensor_mor(self, f, g): ...

    @abstractmethod
    def associator(self, a, b, c): ...

    @abstractmethod
    def left_unitor(self, a): ...

    @abstractmethod
    def right_unitor(self, a): ...

    @abstractmethod
    def inverse(self, f): ...

    # -- colimits
    @abstractmethod
    def initial(self): ...

    @abstractmethod
    def is_initial(self, a): ...

    def initial_map(self, a, b):
        """The unique map out of an object isomorphic to the initial one."""
        if not self.is_initial(a):
            raise ValueError(f"{a} is not initial")
        return self._initial_map(a, b)

    @abstractmethod
    def _initial_map(self, a, b): ...

    @abstractmethod
    def coproduct(self, objs): ...

    @abstractmethod
    def copair(self, cp, maps, target): ...

    @abstractmethod
    def distribute_left(self, a, cp):
        """Return ``(iso, cp2)``: ``iso: a * (sum b_i) -> sum (a * b_i)``, ``cp2`` the target."""

    @abstractmethod
    def distribute_right(self, cp, a):
        """Return ``(iso, cp2)``: ``iso: (sum b_i) * a -> sum (b_i * a)``."""

    @abstractmethod
    def _coequalizer(self, f, g): ...

    def coequalizer(self, f, g):
        if self.source(f) != self.source(g) or self.target(f) != self.target(g):
            raise NotParallel("coequalizer needs a parallel pair")
        return self._coequalizer(f, g)

    def factor_through_coequalizer(self, h, coeq):
        """The unique ``u`` with ``u o projection == h``."""
        if self.compose(h, coeq.f) != self.compose(h, coeq.g):
            raise FactorizationError("morphism does not coequalize the pair")
        return self.factor_split(h, coeq.projection, coeq.section)

    def factor_split(self, h, p, s):
        """Factor ``h`` through the split epimorphism ``p`` with section ``s``."""
        if self.source(h) != self.source(p):
            raise FactorizationError("h and p have different sources")
        u = self.compose(h, s)
        if self.compose(u, p) != h:
            raise FactorizationError("morphism does not factor through the projection")
        return u

    # -- elements and enumeration
    @abstractmethod
    def is_invertible(self, f): ...

    @abstractmethod
    def global_elements(self, a, bound=None): ...

    @abstractmethod
    def hom_enumerate(self, a, b, bound=None):
        """All morphisms ``a -> b`` in a deterministic order."""

    @abstractmethod
    def hom_count(self, a, b): ...

    # -- serialization
    @abstractmethod
    def obj_to_json(self, a): ...

    @abstractmethod
    def obj_from_json(self, data): ...

    @abstractmethod
    def mor_to_json(self, f): ...

    @abstractmethod
    def mor_from_json(self, data, source, target): ...

    def describe(self, a):
        """Short human-readable summary of an object (used in reports)."""
        return str(a)

    def size(self, a):
        """A natural-number size of an object, used for reporting."""
        return 0

    def check_same(self, other):
        if self != other:
            raise BackendMismatch(f"backend {self} does not match {other}")
