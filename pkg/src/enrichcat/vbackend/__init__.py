"""Monoidal backends: FinSet, Bool, FinVect_p and binary products of these."""

from .base import Coequalizer, Coproduct, MonoidalBackend
from .boolean import BoolBackend, BoolMor
from .coherence import UNIT, T, evaluate, leaves, lnest, lnest_mor, lnest_obj, normalize, reassoc
from .finset import FinSetBackend, FinSetMor, FinSetObj
from .finvect import FinVectBackend, VectMor, VectObj
from .product import PairMor, PairObj, ProductBackend

FINSET = FinSetBackend()
BOOL = BoolBackend()


def make_backend(descriptor):
    """Build a backend from ``{"kind": ...}`` (``p`` for finvect, ``left``/``right`` for product)."""
    if isinstance(descriptor, str):
        descriptor = {"kind": descriptor}
    kind = descriptor.get("kind")
    if kind == "finset":
        return FinSetBackend()
    if kind == "bool":
        return BoolBackend()
    if kind == "finvect":
        return FinVectBackend(int(descriptor.get("p", 2)))
    if kind == "product":
        return ProductBackend(make_backend(descriptor["left"]), make_backend(descriptor["right"]))
    raise ValueError(f"unknown backend kind {kind!r}")


__all__ = [
    "BOOL", "FINSET", "UNIT", "BoolBackend", "BoolMor", "Coequalizer", "Coproduct",
    "FinSetBackend", "FinSetMor", "FinSetObj", "FinVectBackend", "MonoidalBackend",
    "PairMor", "PairObj", "ProductBackend", "T", "VectMor", "VectObj", "evaluate",
    "leaves", "lnest", "lnest_mor", "lnest_obj", "make_backend", "normalize", "reassoc",
]
