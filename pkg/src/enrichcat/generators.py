"""Instance generators: random concrete FinSet categories and bimodules, Bool preorders
and relations (random and exhaustive), and deliberately broken fixtures.

Random FinSet categories are concrete: every object carries a small set, arrows are
functions between carriers, and composition is function composition. That makes
associativity and unit laws hold by construction without a closure search over
abstract multiplication tables. Bimodules are sets of functions from a left carrier
to a right carrier closed under pre- and post-composition.
"""

import random
from dataclasses import dataclass
from itertools import product

from .bimodule import VBimodule
from .doublecat import chain_of
from .enriched import VCategory, VFunctor, finset_category, preorder_category
from .vbackend import FINSET, BoolMor


def _label(fn):
    return "".join(map(str, fn)) or "e"


def _then(f, g):
    """``f`` followed by ``g`` for functions stored as image tuples."""
    return tuple(g[i] for i in f)


def _functions(a, b):
    return list(product(range(b), repeat=a))


@dataclass(eq=False)
class Concrete:
    category: VCategory
    carrier: dict           # object -> carrier size
    arrows: dict            # (x, y) -> list of image tuples


@dataclass(eq=False)
class ConcreteBimodule:
    bimodule: VBimodule
    elements: dict          # (x, y) -> list of image tuples


def _close(arrows, objects, cap):
    """Close hom sets under composition; None if some hom grows past ``cap``."""
    if any(len(fs) > cap for fs in arrows.values()):
        return None
    changed = True
    while changed:
        changed = False
        for x, y, z in product(objects, repeat=3):
            for f in list(arrows[(x, y)]):
                for g in list(arrows[(y, z)]):
                    h = _then(f, g)
                    if h not in arrows[(x, z)]:
                        arrows[(x, z)].append(h)
                        changed = True
                        if len(arrows[(x, z)]) > cap:
                            return None
    return arrows


def _concrete_category(objects, carrier, arrows, name):
    objects = tuple(objects)
    for k in arrows:
        arrows[k].sort()
    homs = {k: [_label(f) for f in fs] for k, fs in arrows.items()}
    units = {x: _label(tuple(range(carrier[x]))) for x in objects}
    fn = {(x, y, _label(f)): f for (x, y), fs in arrows.items() for f in fs}

    def compose(x, y, z, f, g):
        return _label(_then(fn[(x, y, f)], fn[(y, z, g)]))

    C = finset_category(objects, homs, units, compose, name=name)
    return Concrete(C, dict(carrier), arrows)


def random_concrete_category(rng, n_objects, max_hom=3, max_carrier=2, density=0.5,
                             backward=False, prefix="c", name="C", attempts=200):
    """A random concrete FinSet category with hom sets of size at most ``max_hom``.

    Objects are ``prefix0, prefix1, ...``. Unless ``backward`` is set, arrows only
    run from lower to higher index, so hom sets are often empty.
    """
    objects = [f"{prefix}{i}" for i in range(n_objects)]
    for _ in range(attempts):
        carrier = {x: rng.randint(1, max_carrier) for x in objects}
        arrows = {}
        for i, x in enumerate(objects):
            for j, y in enumerate(objects):
                fs = []
                if i == j:
                    fs.append(tuple(range(carrier[x])))
                if i < j or backward or i == j:
                    for f in _functions(carrier[x], carrier[y]):
                        if f not in fs and rng.random() < density / (1 + (i == j)):
                            fs.append(f)
                arrows[(x, y)] = fs
        if _close(arrows, objects, max_hom) is not None:
            return _concrete_category(objects, carrier, arrows, name)
    carrier = {x: 1 for x in objects}
    arrows = {(x, y): [(0,)] if x == y else [] for x in objects for y in objects}
    return _concrete_category(objects, carrier, arrows, name)


def random_finset_category(rng, n_objects, **kw):
    return random_concrete_category(rng, n_objects, **kw).category


def random_concrete_bimodule(rng, left, right, max_size=3, density=0.4, name="M", attempts=200):
    """A random bimodule of functions ``carrier(x) -> carrier(y)``, sizes at most ``max_size``."""
    X, Y = left.category.objects, right.category.objects
    for _ in range(attempts):
        el = {(x, y): [f for f in _functions(left.carrier[x], right.carrier[y])
                       if rng.random() < density] for x, y in product(X, Y)}
        if _close_bimodule(el, left, right, max_size):
            return _bimodule_from_elements(left, right, el, name)
    return _bimodule_from_elements(left, right, {(x, y): [] for x, y in product(X, Y)}, name)


def _close_bimodule(el, left, right, cap):
    X, Y = left.category.objects, right.category.objects
    changed = True
    while changed:
        changed = False
        for x2, x, y in product(X, X, Y):
            for f in left.arrows[(x2, x)]:
                for m in list(el[(x, y)]):
                    h = _then(f, m)
                    if h not in el[(x2, y)]:
                        el[(x2, y)].append(h)
                        changed = True
        for x, y, y2 in product(X, Y, Y):
            for m in list(el[(x, y)]):
                for g in right.arrows[(y, y2)]:
                    h = _then(m, g)
                    if h not in el[(x, y2)]:
                        el[(x, y2)].append(h)
                        changed = True
        if any(len(v) > cap for v in el.values()):
            return False
    return True


def _bimodule_from_elements(left, right, el, name):
    V = FINSET
    C, D = left.category, right.category
    X, Y = C.objects, D.objects
    for k in el:
        el[k].sort()
    mod = {k: V.obj([_label(m) for m in ms]) for k, ms in el.items()}
    fnC = {(x, y, _label(f)): f for (x, y), fs in left.arrows.items() for f in fs}
    fnD = {(x, y, _label(f)): f for (x, y), fs in right.arrows.items() for f in fs}
    fnM = {(x, y, _label(m)): m for (x, y), ms in el.items() for m in ms}
    la = {(x2, x, y): V.mor(V.tensor(C(x2, x), mod[(x, y)]), mod[(x2, y)],
                            lambda fm, x2=x2, x=x, y=y: _label(_then(fnC[(x2, x, fm[0])],
                                                                     fnM[(x, y, fm[1])])))
          for x2, x, y in product(X, X, Y)}
    ra = {(x, y, y2): V.mor(V.tensor(mod[(x, y)], D(y, y2)), mod[(x, y2)],
                            lambda mg, x=x, y=y, y2=y2: _label(_then(fnM[(x, y, mg[0])],
                                                                     fnD[(y, y2, mg[1])])))
          for x, y, y2 in product(X, Y, Y)}
    return ConcreteBimodule(VBimodule(C, D, mod, la, ra, name=name), el)


def random_finset_chain(rng, n, max_objects=2, max_hom=2, max_size=2, **kw):
    """``n`` composable random FinSet bimodules between random concrete categories."""
    cats = [random_concrete_category(rng, rng.randint(1, max_objects), max_hom=max_hom,
                                     prefix=chr(ord("a") + i), name=chr(ord("A") + i), **kw)
            for i in range(n + 1)]
    mods = [random_concrete_bimodule(rng, cats[i], cats[i + 1], max_size=max_size,
                                     name=f"M{i + 1}").bimodule for i in range(n)]
    return chain_of(*mods)


def random_finset_pair(rng, max_objects=3, max_hom=3, max_size=3):
    """A composable pair ``(M, N)`` with object sets and hom sizes within the given caps."""
    ch = random_finset_chain(rng, 2, max_objects=max_objects, max_hom=max_hom, max_size=max_size)
    return ch.mods[0], ch.mods[1]


# -- Bool

def _closure(rel, n):
    r = [[rel[i][j] or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                r[i][j] = r[i][j] or (r[i][k] and r[k][j])
    return r


def all_preorders(n):
    """Every preorder on ``range(n)`` as a boolean matrix, each listed once."""
    seen = []
    for bits in product((False, True), repeat=n * n):
        rel = [list(bits[i * n:(i + 1) * n]) for i in range(n)]
        if _closure(rel, n) == [[rel[i][j] or i == j for j in range(n)] for i in range(n)]:
            r = _closure(rel, n)
            if r not in seen:
                seen.append(r)
    return seen


def preorder_from_matrix(matrix, prefix="p", name="P"):
    objs = [f"{prefix}{i}" for i in range(len(matrix))]
    return preorder_category(objs, lambda a, b: matrix[objs.index(a)][objs.index(b)], name=name)


def random_preorder(rng, n, prefix="p", name="P", density=0.3):
    rel = [[rng.random() < density for _ in range(n)] for _ in range(n)]
    return preorder_from_matrix(_closure(rel, n), prefix, name)


def relation_bimodule(C, D, rel, name="R"):
    """Bool bimodule from a set of related pairs; raises unless it is compatible."""
    mod = {(x, y): (x, y) in rel for x, y in product(C.objects, D.objects)}
    la = {(x2, x, y): BoolMor(C(x2, x) and mod[(x, y)], mod[(x2, y)])
          for x2, x, y in product(C.objects, C.objects, D.objects)}
    ra = {(x, y, y2): BoolMor(mod[(x, y)] and D(y, y2), mod[(x, y2)])
          for x, y, y2 in product(C.objects, D.objects, D.objects)}
    return VBimodule(C, D, mod, la, ra, name=name)


def _compatible(C, D, rel):
    for x2, x, y in product(C.objects, C.objects, D.objects):
        if C(x2, x) and (x, y) in rel and (x2, y) not in rel:
            return False
    for x, y, y2 in product(C.objects, D.objects, D.objects):
        if (x, y) in rel and D(y, y2) and (x, y2) not in rel:
            return False
    return True


def compatible_relations(C, D):
    pairs = list(product(C.objects, D.objects))
    out = []
    for bits in product((False, True), repeat=len(pairs)):
        rel = frozenset(p for p, b in zip(pairs, bits) if b)
        if _compatible(C, D, rel):
            out.append(rel)
    return out


def random_bool_bimodule(rng, C, D, name="R", density=0.4):
    rel = {p for p in product(C.objects, D.objects) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for x2, x, y in product(C.objects, C.objects, D.objects):
            if C(x2, x) and (x, y) in rel and (x2, y) not in rel:
                rel.add((x2, y))
                changed = True
        for x, y, y2 in product(C.objects, D.objects, D.objects):
            if (x, y) in rel and D(y, y2) and (x, y2) not in rel:
                rel.add((x, y2))
                changed = True
    return relation_bimodule(C, D, rel, name)


def bool_preorders_up_to(max_size, prefix="p", name="P"):
    return [preorder_from_matrix(m, prefix, name)
            for n in range(1, max_size + 1) for m in all_preorders(n)]


def exhaustive_bool_pairs(max_size=2):
    """Every composable Bool pair ``(M, N)`` with all three object sets of size 1..max_size."""
    Xs = bool_preorders_up_to(max_size, "x", "X")
    Ys = bool_preorders_up_to(max_size, "y", "Y")
    Zs = bool_preorders_up_to(max_size, "z", "Z")
    for X, Y, Z in product(Xs, Ys, Zs):
        for r in compatible_relations(X, Y):
            M = relation_bimodule(X, Y, r, "M")
            for s in compatible_relations(Y, Z):
                yield M, relation_bimodule(Y, Z, s, "N")


def random_bool_chain(rng, n, max_objects=2):
    cats = [random_preorder(rng, rng.randint(1, max_objects), chr(ord("a") + i), chr(ord("A") + i))
            for i in range(n + 1)]
    return chain_of(*[random_bool_bimodule(rng, cats[i], cats[i + 1], f"M{i + 1}")
                      for i in range(n)])


# -- designed faults

def broken_associativity_category():
    """Chain 0<1<2<3 with two arrows 0->3; composing through 2 picks the wrong one.

    Associativity fails only at the path 0, 1, 2, 3.
    """
    objs = ("0", "1", "2", "3")
    homs = {(i, j): [f"{i}{j}"] for i in objs for j in objs if i < j}
    homs[("0", "3")] = ["u", "v"]
    for i in objs:
        homs[(i, i)] = [f"id{i}"]

    def compose(x, y, z, f, g):
        if x == y:
            return g
        if y == z:
            return f
        if (x, z) == ("0", "3"):
            return "v" if y == "2" else "u"
        return f"{x}{z}"

    return finset_category(objs, homs, {i: f"id{i}" for i in objs}, compose, name="broken_assoc")


def chain_with_parallel_pair():
    objs = ("0", "1", "2")
    homs = {("0", "1"): ["a"], ("1", "2"): ["b"], ("0", "2"): ["u", "v"],
            ("0", "0"): ["id0"], ("1", "1"): ["id1"], ("2", "2"): ["id2"]}

    def compose(x, y, z, f, g):
        if x == y:
            return g
        if y == z:
            return f
        return "u"

    return finset_category(objs, homs, {i: f"id{i}" for i in objs}, compose, name="parallel")


def broken_functor():
    """Endofunctor of ``chain_with_parallel_pair`` swapping the two arrows 0->2.

    It breaks composition at 0, 1, 2; units are preserved.
    """
    C = chain_with_parallel_pair()
    V = FINSET
    hom_map = {}
    for x, y in product(C.objects, repeat=2):
        swap = {"u": "v", "v": "u"} if (x, y) == ("0", "2") else {}
        hom_map[(x, y)] = V.mor(C(x, y), C(x, y), lambda s, swap=swap: swap.get(s, s))
    return VFunctor(C, C, {x: x for x in C.objects}, hom_map, name="swap02")


def broken_bimodule():
    """Right action of the chain b0<b1<b2 on ``M(a0, -)`` that is not associative.

    Acting by ``b0 -> b2`` directly lands on ``q`` while acting in two steps lands on ``p``.
    """
    V = FINSET
    A = finset_category(("a0",), {("a0", "a0"): ["ida"]}, {"a0": "ida"},
                        lambda *a: "ida", name="A")
    bs = ("b0", "b1", "b2")
    homs = {(x, y): [f"{x}{y}"] for x in bs for y in bs if x <= y}

    def compose(x, y, z, f, g):
        return f"{x}{z}"

    B = finset_category(bs, homs, {b: f"{b}{b}" for b in bs}, compose, name="B")
    el = {"b0": ["p0"], "b1": ["p1"], "b2": ["p", "q"]}
    mod = {("a0", b): V.obj(el[b]) for b in bs}
    la = {("a0", "a0", b): V.mor(V.tensor(A("a0", "a0"), mod[("a0", b)]), mod[("a0", b)],
                                 lambda fm: fm[1]) for b in bs}
    ra = {}
    for y, y2 in product(bs, repeat=2):
        src = V.tensor(mod[("a0", y)], B(y, y2))
        if y == y2:
            ra[("a0", y, y2)] = V.mor(src, mod[("a0", y2)], lambda mg: mg[0])
        elif y < y2:
            tgt = {"b1": "p1", "b2": "p"}[y2]
            if (y, y2) == ("b0", "b2"):
                tgt = "q"
            ra[("a0", y, y2)] = V.mor(src, mod[("a0", y2)], lambda mg, t=tgt: t)
        else:
            ra[("a0", y, y2)] = V.mor(src, mod[("a0", y2)], {})
    return VBimodule(A, B, mod, la, ra, name="broken_right_action")


def rng_from(seed):
    return random.Random(seed)


__all__ = [
    "Concrete", "ConcreteBimodule", "all_preorders", "bool_preorders_up_to",
    "broken_associativity_category", "broken_bimodule", "broken_functor",
    "chain_with_parallel_pair", "compatible_relations", "exhaustive_bool_pairs",
    "preorder_from_matrix", "random_bool_bimodule", "random_bool_chain",
    "random_concrete_bimodule", "random_concrete_category", "random_finset_category",
    "random_finset_chain", "random_finset_pair", "random_preorder", "relation_bimodule",
    "rng_from",
]
