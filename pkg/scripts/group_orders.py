#!/usr/bin/env python3
"""Closure orders of the braid-group images for all shipped 1-qudit models.

Prints projective and determinant-normalized orders, center sizes, and
element-order histograms.
"""

import time

from metaplectic.categories import builtin_category
from metaplectic.braidrep import pair_tree_generators
from metaplectic.gates import mult_gate, x_gate
from metaplectic.synthesis import group_closure

MODELS = [
    ("su2_4 qutrit (eps^4 -> y)", "su2_4", "1", "2", 100000),
    ("su2_4 qubit  (1^4 -> 0)", "su2_4", "1", "0", 100000),
    ("so5_2 qupit  (eps^4 -> y1)", "so5_2", "eps", "y1", 20000),
]


def main():
    for name, cat_name, leaf, total, cap in MODELS:
        rep = pair_tree_generators(builtin_category(cat_name), leaf, total)
        for projective in (True, False):
            start = time.monotonic()
            result = group_closure(rep.generators, projective=projective, cap=cap)
            elapsed = time.monotonic() - start
            mode = "projective" if projective else "det-lifted"
            if result.cap_exceeded:
                print(f"{name:30s} {mode:11s} cap {cap} exceeded ({elapsed:.2f}s)")
                continue
            print(f"{name:30s} {mode:11s} order={result.order:<6} "
                  f"center={result.center_size:<3} ({elapsed:.2f}s)")
            print(f"{'':30s} {'':11s} element orders: {result.histogram_text()}")

    classical = group_closure(
        [x_gate(5), mult_gate(5, 2), mult_gate(5, 3), mult_gate(5, 4)],
        projective=False, det_lift=False, cap=1000)
    print(f"{'so5_2 classical <X, M[k]>':30s} {'literal':11s} order={classical.order}")


if __name__ == "__main__":
    main()
