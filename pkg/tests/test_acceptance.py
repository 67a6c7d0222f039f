"""Acceptance criteria 1-7; each test prints one PASS/FAIL line."""

import time

import numpy as np
import pytest

from conftest import (
    EX1_ELEMENTS, EX1_HIGH, EX1_SHAPES, EX1_SIGMA, EX2_LEFT, EX2_PHI, EX2_R, EX2_RIGHT,
)
from krcrystals.classical import weyl_dimension
from krcrystals.cli import main
from krcrystals.combinat import Diamond, lr_coefficient, tiled_partitions
from krcrystals.energy import (
    combinatorial_R, contraction_sequence, intrinsic_D, local_H, pair_oracle, single_D, to_type_a,
    typeA_coenergy,
)
from krcrystals.kr import AlgebraSpec, KRSpec, TensorProduct, build_kr, check_flip
from krcrystals.kr.sigma import _connected
from krcrystals.xk import rank_bound, tensor, verify_properties, verify_strange, verify_xk


@pytest.fixture
def report(request, capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_example_one(report, example1):
    t0 = time.perf_counter()
    T = example1
    checks = []
    for payload, image in zip(EX1_ELEMENTS, EX1_SIGMA):
        b = T.element(payload)
        s = T.sigma(b)
        h = T.to_highest(s)[0]
        checks += [T.columns(s) == image, T.columns(h) == EX1_HIGH, intrinsic_D(T, b) == 7]
    h = T.element(EX1_HIGH)
    checks.append(T.weight(h) == (3, 3, 2, 1, 1, 0))
    checks.append(intrinsic_D(T, h) == 4)
    TA, ha = to_type_a(T, h)
    checks.append(typeA_coenergy(TA, ha) == 4)
    per_mu = {mu: lr_coefficient((2, 1, 1), mu, (3, 3, 2, 1, 1)) for mu in tiled_partitions(6, Diamond.VERTICAL)}
    checks.append(sum(per_mu.values()) == 3)
    checks.append(sorted(v for v in per_mu.values() if v) == [1, 2])
    checks.append(per_mu[(3, 3)] == 1 and per_mu[(2, 2, 1, 1)] == 2)
    elapsed = time.perf_counter() - t0
    report(1, all(checks) and elapsed <= 60, f"Example 1 sigma images, High, D=7, D(High)=4, LR sum 3 ({elapsed:.1f}s)")


def test_criterion_2_example_two(report, example2):
    t0 = time.perf_counter()
    T = example2
    b = T.element([EX2_LEFT, EX2_RIGHT])
    res = combinatorial_R(T, b)
    iterates, _ = contraction_sequence(T, b)
    k1, k2 = T.factors
    checks = [
        [T.columns(x) for x in iterates[1:3]] == EX2_PHI,
        res.target.columns(res.image) == EX2_R,
        intrinsic_D(T, b) == 12,
        intrinsic_D(T, iterates[2]) == 3,
        single_D(k1, b[0]) == 3,
        single_D(k2, res.image[0]) == 1,
        local_H(T, b) == 8,
    ]
    elapsed = time.perf_counter() - t0
    report(2, all(checks) and elapsed <= 600, f"Example 2 Phi, Phi^2, R image, D=12, D(Phi^2)=3, H=8 ({elapsed:.1f}s)")


def test_criterion_3_oracle_equivalence(report):
    t0 = time.perf_counter()
    total = agree = 0
    for alg in (AlgebraSpec("D", 4), AlgebraSpec("C", 2), AlgebraSpec("C", 3)):
        for shapes in ([(1, 1), (1, 1)], [(1, 1), (1, 2)], [(2, 1), (1, 1)]):
            T = TensorProduct.of(alg, shapes)
            oracle = pair_oracle(*T.factors)
            for b in T.all_elements():
                total += 1
                agree += combinatorial_R(T, b).image == oracle.r_of(b) and local_H(T, b) == oracle.h_of(b)
    elapsed = time.perf_counter() - t0
    report(3, agree == total and elapsed <= 300, f"R and H agree with the oracles on {agree}/{total} elements ({elapsed:.1f}s)")


STRANGE_SUITE = [
    (AlgebraSpec("D", 4), [(1, 1), (2, 1)]),
    (AlgebraSpec("D", 4), [(1, 1), (1, 2), (1, 1)]),
    (AlgebraSpec("D", 5), [(2, 1), (1, 2)]),
    (AlgebraSpec("D", 5), [(1, 1), (1, 1), (3, 1)]),
    (AlgebraSpec("C", 2), [(1, 1), (2, 1), (1, 1)]),
    (AlgebraSpec("C", 2), [(2, 2), (1, 2)]),
    (AlgebraSpec("C", 3), [(1, 1), (1, 2)]),
    (AlgebraSpec("C", 3), [(3, 1), (1, 1), (2, 1)]),
]


def test_criterion_4_strange_relation(report):
    checked = violations = 0
    below = 0
    for alg, shapes in STRANGE_SUITE:
        rep = verify_strange(tensor(alg, shapes))
        checked += len(rep.rows)
        violations += len(rep.violations)
        below += any(alg.n <= rank_bound(r["weight"][: alg.n], shapes) for r in rep.rows)
    ok = violations == 0 and checked > 0 and below > 0 and len(STRANGE_SUITE) >= 6
    report(4, ok, f"{len(STRANGE_SUITE)} tensors, {checked} highest elements, {violations} violations, "
                  f"{below} tensors include weights below the rank bound")


XK_CONFIGS = [
    ("D", 4, [(1, 1), (1, 1)], ()),
    ("D", 6, [(1, 1), (1, 1)], (1, 1)),
    ("D", 5, [(1, 1), (1, 1)], (2,)),
    ("D", 6, [(1, 2), (1, 1)], (1,)),
    ("C", 4, [(1, 1), (1, 1)], ()),
    ("C", 6, [(1, 1), (1, 1)], (1, 1)),
    ("C", 6, [(1, 2), (1, 1)], (1,)),
]


def test_criterion_5_xk(report, example1):
    passed = 0
    for family, n, shapes, lam in XK_CONFIGS:
        rep = verify_xk(lam, shapes, AlgebraSpec(family, n))
        passed += rep.verdict and rep.above_bound
    props = verify_properties(example1, (2, 1, 1))["ok"]
    bound = rank_bound((2, 1, 1), EX1_SHAPES)
    ok = passed == len(XK_CONFIGS) >= 4 and props and bound == 13
    report(5, ok, f"X=K above the bound in {passed}/{len(XK_CONFIGS)} configurations; "
                  f"properties (i)-(iv) at n=6 for Example 1 (bound {bound}): {'PASS' if props else 'FAIL'}")


BUILT = [
    ("D", 4, 1, 1), ("D", 4, 1, 2), ("D", 4, 2, 1), ("D", 5, 1, 2), ("D", 5, 2, 1), ("D", 5, 3, 1),
    ("C", 2, 1, 1), ("C", 2, 1, 2), ("C", 2, 2, 1), ("C", 2, 2, 2), ("C", 3, 1, 2), ("C", 3, 2, 1), ("C", 3, 3, 1),
    ("D", 6, 2, 2), ("D", 6, 3, 1), ("D", 6, 1, 3), ("D", 6, 3, 3), ("D", 6, 4, 3),
]


def _yang_baxter(alg):
    T = TensorProduct.of(alg, [(1, 1), (1, 1), (1, 1)])
    k = T.factors[0]
    R = pair_oracle(k, k).r_of

    def at(b, pos):
        return b[:pos] + R(b[pos:pos + 2]) + b[pos + 2:]

    return all(at(at(at(b, 0), 1), 0) == at(at(at(b, 1), 0), 1) for b in T.all_elements())


def test_criterion_6_structure(report):
    failures = []
    for family, n, r, s in BUILT:
        spec = KRSpec(AlgebraSpec(family, n), r, s)
        k = build_kr(spec)
        g = k.graph
        sizes = [int(np.sum(g.comp == c)) for c in range(len(g.shapes))]
        dims = [weyl_dimension(lam, spec.algebra.classical) for lam in g.shapes]
        if not check_flip(g, k.sigma.astype(np.int64)):
            failures.append(f"{spec} flip")
        if sizes != dims:
            failures.append(f"{spec} sizes")
        if not _connected(g.comp, [g.e[0].astype(np.int64)]):
            failures.append(f"{spec} connectivity")
    for alg in (AlgebraSpec("D", 4), AlgebraSpec("C", 2)):
        if not _yang_baxter(alg):
            failures.append(f"Yang-Baxter {alg}")
    report(6, not failures, f"{len(BUILT)} KR crystals and Yang-Baxter checks; failures: {failures or 'none'}")


def test_criterion_7_guard(report, capsys):
    codes = [
        main(["xsum", "--alg", "D1", "--n", "6", "--shapes", *(["1,1"] * 12), "--weight", "0"]),
        main(["verify", "strange", "--alg", "D1", "--n", "6", "--shapes", "4,3", "3,3"]),
        main(["energy", "--alg", "D1", "--n", "6", "--shapes", "4,3", "3,3", "--method", "oracle",
              "--element", str(EX2_LEFT), str(EX2_RIGHT)]),
    ]
    capsys.readouterr()
    report(7, codes == [3, 3, 3], f"oversized requests refused with exit codes {codes}")
