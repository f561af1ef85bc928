"""A short walk through the library on small instances.

Usage: python demos/tour.py
"""

from enrichcat.barcomp import coend_oracle, compose_bimodules, oracle_agreement
from enrichcat.doublecat import build_composite_algebra, inject_fault, segal_check
from enrichcat.enriched import e_category, interval_category
from enrichcat.funcat import completeness_check_fun, fun_level, segal_check_fun
from enrichcat.generators import random_bool_chain, random_finset_pair, rng_from


def main():
    rng = rng_from(3)

    M, N = random_finset_pair(rng, max_objects=2, max_hom=2, max_size=2)
    W = compose_bimodules(M, N)
    print("FinSet composite sizes:",
          {k: len(v) for k, v in sorted(W.bimodule.mod.items())})
    print("coend oracle sizes:    ",
          {k: len(v) for k, v in sorted(coend_oracle(M, N).mod.items())})
    print(oracle_agreement(M, N, W))

    ch = random_bool_chain(rng, 2)
    A = build_composite_algebra(ch)
    print("\nBool chain, long entry:", A.lattice[(0, 2)].mod)
    print(segal_check(A))
    print(segal_check(inject_fault(A)) if not all(A.lattice[(0, 2)].mod.values())
          else "(long entry already full; no fault to inject)")

    I1, I2 = interval_category(1), interval_category(2)
    print("\nfunctors [1] x [n] -> [2]:", [len(fun_level(I1, I2, n)) for n in range(4)])
    print(segal_check_fun(I1, I2, 3))
    print(completeness_check_fun(e_category(0), e_category(1)))


if __name__ == "__main__":
    main()
