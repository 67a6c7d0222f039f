"""Worked D6 example: B^{2,2} (x) B^{3,1} (x) B^{1,3}, weight (2,1,1).

Prints the flip images, their common highest element, the coenergies and the
Littlewood-Richardson bookkeeping, then the full one-dimensional sum.
"""

import time

from krcrystals.combinat import Diamond, lr_coefficient, tiled_partitions
from krcrystals.energy import intrinsic_D, to_type_a, typeA_coenergy
from krcrystals.kr import AlgebraSpec
from krcrystals.xk import one_dim_sum, rank_bound, tensor, verify_properties

SHAPES = [(2, 2), (3, 1), (1, 3)]
ELEMENTS = [
    [[[1, 2]], [[1, 3, -3]], [[1], [3], [-1]]],
    [[[1, 2]], [[3, 4, -4]], [[1], [3], [-3]]],
    [[[1, 2], [1, 2]], [[-2]], [[1], [3], [-1]]],
]


def main():
    t0 = time.perf_counter()
    T = tensor(AlgebraSpec("D", 6), SHAPES)
    for payload in ELEMENTS:
        b = T.element(payload)
        s = T.sigma(b)
        h = T.to_highest(s)[0]
        print(f"b        = {T.render(b)}")
        print(f"sigma(b) = {T.render(s)}")
        print(f"High     = {T.render(h)}  weight {T.weight(h)}")
        print(f"D(b) = {intrinsic_D(T, b)}, D(High) = {intrinsic_D(T, h)}\n")
    TA, ha = to_type_a(T, h)
    print(f"type A coenergy of High: {typeA_coenergy(TA, ha)}")
    nu = (3, 3, 2, 1, 1)
    for mu in sorted(tiled_partitions(6, Diamond.VERTICAL), reverse=True):
        c = lr_coefficient((2, 1, 1), mu, nu)
        if c:
            print(f"c^{nu}_(2,1,1),{tuple(mu)} = {c}")
    print(f"X = {one_dim_sum((2, 1, 1), T)}")
    res = verify_properties(T, (2, 1, 1))
    print("properties:", {k: res[k]["ok"] for k in ("i", "ii", "iii", "iv")},
          f"(rank bound {rank_bound((2, 1, 1), SHAPES)}, n = 6)")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
