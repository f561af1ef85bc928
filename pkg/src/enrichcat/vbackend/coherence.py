"""Bracketed tensor expressions and the canonical isomorphisms between them.

An expression is a backend object (a leaf), :data:`UNIT`, or ``T(left, right)``.
``normalize`` maps any bracketing to the left-nested tensor of its non-unit
leaves using only associators and unitors; by coherence the result does not
depend on the order in which they are applied.
"""

from dataclasses import dataclass


class _Unit:
    def __repr__(self):
        return "I"


UNIT = _Unit()


@dataclass(frozen=True)
class T:
    left: object
    right: object


def lnest(factors):
    factors = list(factors)
    if not factors:
        return UNIT
    out = factors[0]
    for f in factors[1:]:
        out = T(out, f)
    return out


def leaves(e):
    if e is UNIT:
        return []
    if isinstance(e, T):
        return leaves(e.left) + leaves(e.right)
    return [e]


def evaluate(V, e):
    if e is UNIT:
        return V.unit()
    if isinstance(e, T):
        return V.tensor(evaluate(V, e.left), evaluate(V, e.right))
    return e


def lnest_obj(V, factors):
    return evaluate(V, lnest(factors))


def lnest_mor(V, mors):
    """Left-nested tensor of morphisms; the empty list gives ``id_I``."""
    mors = list(mors)
    if not mors:
        return V.identity(V.unit())
    out = mors[0]
    for m in mors[1:]:
        out = V.tensor_mor(out, m)
    return out


def _merge(V, left, right):
    """Canonical map ``lnest(left) * lnest(right) -> lnest(left + right)``."""
    if not right:
        return V.right_unitor(lnest_obj(V, left))
    if not left:
        return V.left_unitor(lnest_obj(V, right))
    if len(right) == 1:
        return V.identity(lnest_obj(V, left + right))
    a, b, c = lnest_obj(V, left), lnest_obj(V, right[:-1]), right[-1]
    step = V.inverse(V.associator(a, b, c))
    rest = V.tensor_mor(_merge(V, left, right[:-1]), V.identity(c))
    return V.compose(rest, step)


def normalize(V, e):
    """Canonical isomorphism ``evaluate(e) -> lnest_obj(leaves(e))``."""
    if e is UNIT:
        return V.identity(V.unit())
    if not isinstance(e, T):
        return V.identity(e)
    step = V.tensor_mor(normalize(V, e.left), normalize(V, e.right))
    return V.compose(_merge(V, leaves(e.left), leaves(e.right)), step)


def reassoc(V, src, tgt):
    """Canonical isomorphism between two bracketings of the same leaves."""
    ls, lt = leaves(src), leaves(tgt)
    if ls != lt:
        raise ValueError("expressions have different leaves")
    return V.compose(V.inverse(normalize(V, tgt)), normalize(V, src))
