"""Write the canonical workspace files used by the CLI tests and demos.

Usage: python demos/make_workspaces.py OUTDIR
"""

import sys
from pathlib import Path

from enrichcat.enriched import finset_category
from enrichcat.generators import (broken_associativity_category, broken_bimodule, broken_functor,
                                  random_finset_chain, rng_from)
from enrichcat.vbackend import FINSET
from enrichcat.workspace import serialize, workspace_from


def interval(n, both_ways=False, name="I"):
    objs = [str(i) for i in range(n + 1)]
    homs = {(a, b): ["*"] for a in objs for b in objs if both_ways or int(a) <= int(b)}
    return finset_category(objs, homs, {a: "*" for a in objs}, lambda *a: "*", name=name)


def main(outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    ch2 = random_finset_chain(rng_from(7), 2)
    ch3 = random_finset_chain(rng_from(11), 3)
    for C in ch3.cats:
        C.name = C.name.lower() + "3"
    for M in ch3.mods:
        M.name = M.name.lower() + "_3"
    files = {
        "finset_chain.json": workspace_from(FINSET, ch2.cats + ch3.cats, ch2.mods + ch3.mods,
                                            chains={"K": ch2, "K3": ch3}),
        "fun_small.json": workspace_from(FINSET, [interval(1, name="I1"), interval(2, name="I2"),
                                                  interval(1, True, name="E1")]),
    }
    bad_cat = broken_associativity_category()
    F = broken_functor()
    M = broken_bimodule()
    files["broken.json"] = workspace_from(FINSET, [bad_cat, F.source, M.left, M.right], [M], [F])
    for name, ws in files.items():
        (out / name).write_text(serialize(ws))
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
