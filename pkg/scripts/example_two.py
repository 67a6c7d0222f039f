"""Worked D6 example: R-matrix and coenergy on B^{4,3} (x) B^{3,3}.

The first run builds B^{4,3} (about 4.8 million elements) and caches it.
"""

import json
import time

from krcrystals.energy import combinatorial_R, intrinsic_D, local_H, single_D
from krcrystals.kr import AlgebraSpec, TensorProduct

LEFT = [[1, 2, 3, 4], [1, 2]]
RIGHT = [[3, -3, -2], [4], [-4]]


def main():
    t0 = time.perf_counter()
    T = TensorProduct.of(AlgebraSpec("D", 6), [(4, 3), (3, 3)])
    print(f"built factors in {time.perf_counter() - t0:.1f}s")
    b = T.element([LEFT, RIGHT])
    res = combinatorial_R(T, b)
    for k, x in enumerate(res.iterates):
        print(f"Phi^{k} = {T.render(x)}  D = {intrinsic_D(T, x)}")
    print(f"R at max: {res.target.render(res.max_image)}")
    print(f"R(b)    = {res.target.render(res.image)}")
    k1, k2 = T.factors
    print(f"D(b) = {intrinsic_D(T, b)}, D(b1) = {single_D(k1, b[0])}, "
          f"D(b2') = {single_D(k2, res.image[0])}, H = {local_H(T, b)}")
    print(json.dumps(res.certificate(T)["phi_paths"]))
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
