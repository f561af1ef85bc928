"""Finite-dimensional vector spaces over F_p under the Kronecker tensor product."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import check_budget
from . import gfp
from .base import Coequalizer, Coproduct, MonoidalBackend


@dataclass(frozen=True)
class VectObj:
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")

    def __repr__(self):
        return f"F^{self.dim}"


class VectMor:
    """A matrix of residues mod p, shape ``(target.dim, source.dim)``."""

    __slots__ = ("source", "target", "matrix", "p", "_key")

    def __init__(self, source, target, matrix, p):
        m = np.asarray(matrix, dtype=np.int64).reshape(target.dim, source.dim) % p
        m.setflags(write=False)
        self.source, self.target, self.matrix, self.p = source, target, m, p
        self._key = (source.dim, target.dim, p, m.tobytes())

    def __eq__(self, other):
        return isinstance(other, VectMor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"VectMor({self.matrix.tolist()} mod {self.p})"


class FinVectBackend(MonoidalBackend):
    kind = "finvect"

    def __init__(self, p=2):
        if not gfp.is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p

    def descriptor(self):
        return {"kind": self.kind, "p": self.p}

    def obj(self, dim):
        return VectObj(int(dim))

    def mor(self, source, target, matrix):
        return VectMor(source, target, matrix, self.p)

    def is_object(self, a):
        return isinstance(a, VectObj)

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return self.mor(a, a, np.eye(a.dim, dtype=np.int64))

    def _compose2(self, g, f):
        return self.mor(f.source, g.target, g.matrix @ f.matrix)

    def unit(self):
        return VectObj(1)

    def tensor(self, a, b):
        return VectObj(a.dim * b.dim)

    def tensor_mor(self, f, g):
        m = np.kron(f.matrix, g.matrix) if f.matrix.size and g.matrix.size else np.zeros(
            (f.target.dim * g.target.dim, f.source.dim * g.source.dim), dtype=np.int64)
        return self.mor(self.tensor(f.source, g.source), self.tensor(f.target, g.target), m)

    def associator(self, a, b, c):
        return self.identity(VectObj(a.dim * b.dim * c.dim))

    def left_unitor(self, a):
        return self.identity(a)

    def right_unitor(self, a):
        return self.identity(a)

    def inverse(self, f):
        return self.mor(f.target, f.source, gfp.inverse(f.matrix, self.p))

    def initial(self):
        return VectObj(0)

    def is_initial(self, a):
        return a.dim == 0

    def _initial_map(self, a, b):
        return self.mor(a, b, np.zeros((b.dim, 0), dtype=np.int64))

    def coproduct(self, objs):
        objs = tuple(objs)
        total = VectObj(sum(o.dim for o in objs))
        injections, off = [], 0
        for o in objs:
            m = np.zeros((total.dim, o.dim), dtype=np.int64)
            m[off:off + o.dim, :] = np.eye(o.dim, dtype=np.int64)
            injections.append(self.mor(o, total, m))
            off += o.dim
        return Coproduct(total, objs, tuple(injections))

    def copair(self, cp, maps, target):
        cols = [m.matrix for m in maps]
        m = np.concatenate(cols, axis=1) if cols else np.zeros((target.dim, 0), dtype=np.int64)
        return self.mor(cp.obj, target, m)

    def _permutation(self, source, target, perm):
        m = np.zeros((target.dim, source.dim), dtype=np.int64)
        for i, j in enumerate(perm):
            m[j, i] = 1
        return self.mor(source, target, m)

    def distribute_left(self, a, cp):
        cp2 = self.coproduct([self.tensor(a, b) for b in cp.summands])
        offs, off = [], 0
        for b in cp.summands:
            offs.append(off)
            off += a.dim * b.dim
        perm = [offs[i] + x * b.dim + j
                for x in range(a.dim)
                for i, b in enumerate(cp.summands) for j in range(b.dim)]
        return self._permutation(self.tensor(a, cp.obj), cp2.obj, perm), cp2

    def distribute_right(self, cp, a):
        cp2 = self.coproduct([self.tensor(b, a) for b in cp.summands])
        return self.identity(cp2.obj), cp2

    def _coequalizer(self, f, g):
        proj, sec = gfp.cokernel((f.matrix - g.matrix) % self.p, self.p)
        q = VectObj(proj.shape[0])
        return Coequalizer(f, g, q, self.mor(f.target, q, proj), self.mor(q, f.target, sec))

    def is_invertible(self, f):
        return f.source.dim == f.target.dim and gfp.rank(f.matrix, self.p) == f.source.dim

    def global_elements(self, a, bound=None):
        check_budget(self.p ** a.dim, bound, "FinVect global elements")
        u = self.unit()
        return [self.mor(u, a, np.array(v, dtype=np.int64).reshape(a.dim, 1))
                for v in product(range(self.p), repeat=a.dim)]

    def hom_count(self, a, b):
        return self.p ** (a.dim * b.dim)

    def hom_enumerate(self, a, b, bound=None):
        check_budget(self.hom_count(a, b), bound, "FinVect hom enumeration")
        return [self.mor(a, b, np.array(v, dtype=np.int64).reshape(b.dim, a.dim))
                for v in product(range(self.p), repeat=a.dim * b.dim)]

    def obj_to_json(self, a):
        return a.dim

    def obj_from_json(self, data):
        if not isinstance(data, int) or isinstance(data, bool):
            raise ValueError(f"FinVect object must be a dimension, got {data!r}")
        return VectObj(data)

    def mor_to_json(self, f):
        return f.matrix.tolist()

    def mor_from_json(self, data, source, target):
        m = np.array(data, dtype=np.int64).reshape(target.dim, source.dim)
        return self.mor(source, target, m)

    def describe(self, a):
        return f"dim {a.dim}"

    def size(self, a):
        return a.dim
