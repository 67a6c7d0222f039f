"""Combinatorial R-matrix, local and intrinsic coenergy.

Two independent routes are provided:

* the contraction route: Phi = High . flip pushes an element toward the
  maximal components, where R and the coenergy reduce to type A data;
* brute-force oracles that build the whole two-factor affine graph, find the
  R-matrix as the unique colored-graph isomorphism and propagate the local
  coenergy along 0-arrows.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .combinat import exact_div
from .errors import ENUMERATION_LIMIT, GuardError
from .kr import AlgebraSpec, KRCrystal, KRSpec, TensorProduct, build_kr
from .kr.tensor import Element
from .typea import promotion as typeA_promotion  # noqa: F401  (public re-export)

# ---------------------------------------------------------------- contraction map


def phi_map(T: TensorProduct, b: Element) -> tuple[Element, list[int]]:
    """Phi(b) = High(flip(b)) for an I0-highest b; also returns the raising path used."""
    if not T.is_highest(b):
        raise ValueError("the contraction map is defined on I0-highest elements only")
    return T.to_highest(T.sigma(b))


def _diamond_cells(T: TensorProduct) -> int:
    return T.algebra.diamond.cell_count


def contraction_sequence(T: TensorProduct, b: Element):
    """Iterate Phi from an I0-highest element until it lies in max(B).

    Returns (iterates, paths): iterates[0] = b, iterates[k] = Phi^k(b).
    """
    iterates, paths = [b], []
    cap = T.size
    while not T.is_max(iterates[-1]):
        if len(paths) >= cap:
            raise RuntimeError(f"contraction did not reach max(B) within {cap} steps")
        x, a = phi_map(T, iterates[-1])
        iterates.append(x)
        paths.append(a)
    return iterates, paths


# ---------------------------------------------------------------- R at the maximal part


def max_partner(T2: TensorProduct, weight: Sequence[int]) -> Element:
    """The unique I0-highest element of weight ``weight`` in max(T2) for a two-factor T2.

    Its first factor must be the highest element of the top component, which
    pins down the second factor by weight and the highest-weight condition.
    """
    k1, k2 = T2.factors
    u1 = k1.u
    need = np.array(weight) - k1.graph.weights[u1]
    g = k2.graph
    mask = np.all(g.weights == need, axis=1)
    for i in T2.classical_colors:
        mask &= g.eps[i] <= k1.graph.phi[i][u1]
    hits = [int(x) for x in np.nonzero(mask)[0] if g.shapes[int(g.comp[x])].size == k2.r * k2.s]
    if len(hits) != 1:
        raise RuntimeError(f"expected one highest element of weight {tuple(weight)} in max, found {len(hits)}")
    return (u1, hits[0])


def classical_R(T: TensorProduct, b: Element) -> Element:
    """R on a two-factor tensor by classical component matching.

    Valid whenever High(b) lies in max(B) (in particular for every element of
    a type-A product of rectangles, which is classically multiplicity free).
    """
    T2 = T.reversed_pair()
    h, path = T.to_highest(b)
    if T.highest_weight_size(h) != T.size:
        raise ValueError("component matching needs an element of max(B)")
    return T2.from_highest(max_partner(T2, T.weight(h)), path)


@dataclass
class RResult:
    image: Element
    high_path: list[int]
    phi_paths: list[list[int]]
    iterates: list[Element]
    max_image: Element
    target: TensorProduct = field(repr=False)

    def certificate(self, source: TensorProduct) -> dict:
        return {
            "high_path": self.high_path,
            "phi_paths": [format_path(p) for p in self.phi_paths],
            "iterates": [source.columns(x) for x in self.iterates],
            "max_pair": source.columns(self.iterates[-1]),
            "max_image": self.target.columns(self.max_image),
        }


def format_path(path: Sequence[int]) -> str:
    if all(i <= 9 for i in path):
        return "".join(str(i) for i in path)
    return ",".join(str(i) for i in path)


def combinatorial_R(T: TensorProduct, b: Element) -> RResult:
    """R(b1 (x) b2) = b2' (x) b1' via contraction to max(B) and replay."""
    if len(T) != 2:
        raise ValueError("combinatorial_R acts on two-factor tensors")
    T2 = T.reversed_pair()
    h, high_path = T.to_highest(b)
    iterates, paths = contraction_sequence(T, h)
    top = iterates[-1]
    if any(x < 0 for c in T.columns(top) for col in c for x in col):
        raise RuntimeError("highest element of max(B) carries barred letters")
    y = max_partner(T2, T.weight(top))
    max_image = y
    for a in reversed(paths):
        y = T2.sigma(T2.from_highest(y, a))
    image = T2.from_highest(y, high_path)
    return RResult(image, high_path, paths, iterates, max_image, T2)


def replay_certificate(T: TensorProduct, result: RResult) -> Element:
    """Recompute the image from the recorded paths (audit helper)."""
    T2 = T.reversed_pair()
    y = result.max_image
    for a in reversed(result.phi_paths):
        y = T2.sigma(T2.from_highest(y, a))
    return T2.from_highest(y, result.high_path)


# ---------------------------------------------------------------- brute-force oracles


def _pair_op(op, c, k1: KRCrystal, k2: KRCrystal, x1, x2):
    """Vectorized e_c/f_c on pairs; returns (y1, y2, defined, acted_on_left)."""
    g1, g2 = k1.graph, k2.graph
    p1, e2 = g1.phi[c][x1], g2.eps[c][x2]
    left = p1 >= e2 if op == "e" else p1 > e2
    t1 = (g1.e if op == "e" else g1.f)[c][x1]
    t2 = (g2.e if op == "e" else g2.f)[c][x2]
    y1 = np.where(left, t1, x1)
    y2 = np.where(left, x2, t2)
    ok = np.where(left, t1 >= 0, t2 >= 0)
    return y1, y2, ok, left


class PairOracle:
    """Full affine graph of K1 (x) K2: R-matrix table and local coenergy table."""

    def __init__(self, k1: KRCrystal, k2: KRCrystal, limit: int = ENUMERATION_LIMIT):
        self.k1, self.k2 = k1, k2
        self.n1, self.n2 = len(k1), len(k2)
        total = self.n1 * self.n2
        if total > limit:
            raise GuardError(f"the pair graph has {total} elements, above the limit of {limit}")
        self.colors = k1.algebra.colors
        self._R: np.ndarray | None = None
        self._H: np.ndarray | None = None

    def index(self, b: Element) -> int:
        return b[0] * self.n2 + b[1]

    def split(self, idx):
        return idx // self.n2, idx % self.n2

    @property
    def R(self) -> np.ndarray:
        """R[i1*n2 + i2] = j2*n1 + j1 (index in K2 (x) K1)."""
        if self._R is None:
            self._R = self._build_R()
        return self._R

    def _build_R(self) -> np.ndarray:
        k1, k2, n1, n2 = self.k1, self.k2, self.n1, self.n2
        total = n1 * n2
        image = np.full(total, -1, dtype=np.int64)
        start = k1.u * n2 + k2.u
        image[start] = k2.u * n1 + k1.u
        frontier = np.array([start], dtype=np.int64)
        while frontier.size:
            a1, a2 = frontier // n2, frontier % n2
            t = image[frontier]
            c2, c1 = t // n1, t % n1
            new_src, new_tgt = [], []
            for c in self.colors:
                for op in ("e", "f"):
                    y1, y2, ok, _ = _pair_op(op, c, k1, k2, a1, a2)
                    z2, z1, ok2, _ = _pair_op(op, c, k2, k1, c2, c1)
                    if np.any(ok != ok2):
                        raise RuntimeError(f"{op}_{c} is not preserved by the candidate R-matrix")
                    new_src.append((y1 * n2 + y2)[ok])
                    new_tgt.append((z2 * n1 + z1)[ok])
            src = np.concatenate(new_src)
            tgt = np.concatenate(new_tgt)
            known = image[src] >= 0
            if np.any(image[src[known]] != tgt[known]):
                raise RuntimeError("inconsistent R-matrix propagation")
            src, tgt = src[~known], tgt[~known]
            order = np.argsort(src, kind="stable")
            src, tgt = src[order], tgt[order]
            first = np.concatenate([[True], src[1:] != src[:-1]]) if src.size else np.zeros(0, bool)
            lead = np.nonzero(first)[0][np.cumsum(first) - 1]
            if np.any(tgt != tgt[lead]):
                raise RuntimeError("inconsistent R-matrix propagation")
            image[src[first]] = tgt[first]
            frontier = src[first]
        if np.any(image < 0):
            raise RuntimeError("pair graph is not connected")
        self._check_isomorphism(image)
        return image

    def _check_isomorphism(self, image):
        k1, k2, n1, n2 = self.k1, self.k2, self.n1, self.n2
        idx = np.arange(n1 * n2)
        a1, a2 = idx // n2, idx % n2
        c2, c1 = image // n1, image % n1
        if len(np.unique(image)) != len(image):
            raise RuntimeError("R-matrix candidate is not bijective")
        for c in self.colors:
            y1, y2, ok, _ = _pair_op("f", c, k1, k2, a1, a2)
            z2, z1, ok2, _ = _pair_op("f", c, k2, k1, c2, c1)
            if np.any(ok != ok2) or np.any(image[(y1 * n2 + y2)[ok]] != (z2 * n1 + z1)[ok]):
                raise RuntimeError(f"R-matrix candidate does not commute with f_{c}")

    @property
    def H(self) -> np.ndarray:
        if self._H is None:
            self._H = self._build_H()
        return self._H

    def _build_H(self) -> np.ndarray:
        """Local coenergy: constant on classical components, -1 across e_0 in case LL, +1 in case RR."""
        k1, k2, n1, n2 = self.k1, self.k2, self.n1, self.n2
        total = n1 * n2
        idx = np.arange(total)
        a1, a2 = idx // n2, idx % n2
        # classical components by pointer jumping toward highest elements
        parent = idx.copy()
        done = np.zeros(total, dtype=bool)
        for c in self.colors[1:]:
            y1, y2, ok, _ = _pair_op("e", c, k1, k2, a1, a2)
            sel = ok & ~done
            parent[sel] = (y1 * n2 + y2)[sel]
            done |= sel
        while True:
            nxt = parent[parent]
            if np.array_equal(nxt, parent):
                break
            parent = nxt
        roots, comp = np.unique(parent, return_inverse=True)
        # e_0 arrows with their LL / RR classification
        y1, y2, ok, left = _pair_op("e", 0, k1, k2, a1, a2)
        src = idx[ok]
        dst = (y1 * n2 + y2)[ok]
        img = self.R[src]
        _, _, ok2, left2 = _pair_op("e", 0, k2, k1, img // n1, img % n1)
        if not np.all(ok2):
            raise RuntimeError("e_0 not preserved by R")
        ll = left[ok] & left2
        rr = ~left[ok] & ~left2
        delta = np.where(ll, -1, np.where(rr, 1, 0))
        csrc, cdst = comp[src], comp[dst]
        adj: dict[int, list[tuple[int, int]]] = {}
        for a, b_, d in set(zip(csrc.tolist(), cdst.tolist(), delta.tolist())):
            adj.setdefault(a, []).append((b_, d))
            adj.setdefault(b_, []).append((a, -d))
        value = {int(comp[k1.u * n2 + k2.u]): 0}
        stack = list(value)
        while stack:
            a = stack.pop()
            for b_, d in adj.get(a, []):
                v = value[a] + d
                if b_ in value:
                    if value[b_] != v:
                        raise RuntimeError("local coenergy is inconsistent along 0-arrows")
                else:
                    value[b_] = v
                    stack.append(b_)
        if len(value) != len(roots):
            raise RuntimeError("pair graph is not connected")
        comp_value = np.array([value[c] for c in range(len(roots))], dtype=np.int64)
        return comp_value[comp]

    def r_of(self, b: Element) -> Element:
        t = int(self.R[self.index(b)])
        return (t // self.n1, t % self.n1)

    def h_of(self, b: Element) -> int:
        return int(self.H[self.index(b)])


_oracles: dict[tuple[KRSpec, KRSpec], PairOracle] = {}
_oracle_lock = threading.Lock()


def pair_oracle(k1: KRCrystal, k2: KRCrystal) -> PairOracle:
    key = (k1.spec, k2.spec)
    with _oracle_lock:
        if key not in _oracles:
            _oracles[key] = PairOracle(k1, k2)
        return _oracles[key]


def bfs_R(k1: KRCrystal, k2: KRCrystal) -> Callable[[Element], Element]:
    """The R-matrix K1 (x) K2 -> K2 (x) K1 as a lookup function (brute force)."""
    return pair_oracle(k1, k2).r_of


def single_D(k: KRCrystal, x: int) -> int:
    """Intrinsic coenergy of one factor: (rs - |shape of its component|)/|diamond|."""
    cells = k.algebra.diamond.cell_count
    if cells == 0:
        return 0
    return exact_div(k.r * k.s - k.shape_of(x).size, cells)


# ---------------------------------------------------------------- coenergy


def local_H(T: TensorProduct, b: Element, method: str = "contraction") -> int:
    """Local coenergy of a two-factor element.

    ``contraction``: D(b1 (x) b2) - D(b1) - D(b2') with D from the contraction route.
    ``bfs``: propagation along 0-arrows of the full pair graph.
    """
    if len(T) != 2:
        raise ValueError("local_H acts on two-factor tensors")
    if method == "bfs":
        return pair_oracle(*T.factors).h_of(b)
    if T.algebra.family == "A":
        return pair_oracle(*T.factors).h_of(b)
    image = combinatorial_R(T, b).image
    k1, k2 = T.factors
    return intrinsic_D(T, b, "contraction") - single_D(k1, b[0]) - single_D(k2, image[0])


def type_a_letters(T: TensorProduct) -> int:
    """Number of letters of the type-A algebra used for elements of max(B)."""
    return max(T.algebra.classical.max_letter, max(r for r, _ in T.shapes) + 1)


def to_type_a(T: TensorProduct, b: Element, letters: int | None = None) -> tuple[TensorProduct, Element]:
    """View an element without barred letters as an element of a type-A tensor product."""
    letters = type_a_letters(T) if letters is None else letters
    alg = AlgebraSpec("A", letters - 1)
    TA = TensorProduct([build_kr(KRSpec(alg, r, s)) for r, s in T.shapes])
    cols = T.columns(b)
    if any(x < 0 for c in cols for col in c for x in col):
        raise ValueError("element has barred letters")
    return TA, TA.element(cols)


def typeA_coenergy(TA: TensorProduct, b: Element) -> int:
    """Type-A intrinsic coenergy (single factors contribute 0; local terms from the pair oracle)."""
    if TA.algebra.family != "A":
        raise ValueError("typeA_coenergy expects a type-A tensor product")
    return pairwise_D(TA, b, provider="bfs")


def pairwise_D(T: TensorProduct, b: Element, provider: str = "bfs") -> int:
    """D(b) = sum_j D_j(b_j moved to the front) + sum_{i<j} H(b_i (x) b_j moved next to it).

    ``provider`` chooses how two-factor R and H are evaluated: ``bfs`` uses the
    pair oracles, ``contraction`` uses combinatorial_R and local_H.
    """
    factors = list(T.factors)
    elems = list(b)

    def swap(pos, facs, els):
        pair = TensorProduct([facs[pos], facs[pos + 1]])
        x = (els[pos], els[pos + 1])
        if provider == "bfs":
            y = pair_oracle(facs[pos], facs[pos + 1]).r_of(x)
        else:
            y = combinatorial_R(pair, x).image
        facs[pos], facs[pos + 1] = facs[pos + 1], facs[pos]
        els[pos], els[pos + 1] = y

    def local(pos, facs, els):
        pair = TensorProduct([facs[pos], facs[pos + 1]])
        x = (els[pos], els[pos + 1])
        if provider == "bfs":
            return pair_oracle(facs[pos], facs[pos + 1]).h_of(x)
        return local_H(pair, x, "contraction")

    total = 0
    for j in range(len(factors)):
        facs, els = list(factors), list(elems)
        # move factor j leftward one step at a time, collecting local terms
        for i in range(j - 1, -1, -1):
            total += local(i, facs, els)
            swap(i, facs, els)
        total += single_D(facs[0], els[0])
    return total


def intrinsic_D(T: TensorProduct, b: Element, method: str = "contraction") -> int:
    """Intrinsic coenergy D(b).

    ``contraction``: reduce to High(b), iterate Phi until max(B) adding
    (|B| - |lambda|)/|diamond| per step, finish with the type-A coenergy.
    ``pairwise`` / ``oracle``: sum of local and single-factor terms, with
    two-factor data from the contraction route or from the pair oracles.
    """
    if T.algebra.family == "A":
        return pairwise_D(T, b, provider="bfs")
    if len(T) == 1:
        return single_D(T.factors[0], b[0])
    if method == "oracle":
        return pairwise_D(T, b, provider="bfs")
    if method == "pairwise":
        return pairwise_D(T, b, provider="contraction")
    if method != "contraction":
        raise ValueError(f"unknown method {method!r}")
    h, _ = T.to_highest(b)
    iterates, _ = contraction_sequence(T, h)
    cells = _diamond_cells(T)
    steps = sum(exact_div(T.size - sum(T.weight(x)), cells) for x in iterates[:-1])
    TA, top = to_type_a(T, iterates[-1])
    return steps + exact_div(2 * typeA_coenergy(TA, top), cells)


def guard_pair_oracles(algebra: AlgebraSpec, shapes: Sequence[tuple[int, int]], limit: int = ENUMERATION_LIMIT) -> None:
    """Refuse up front when some two-factor graph needed by the oracles is too large."""
    from .kr import projected_size

    sizes = [projected_size(KRSpec(algebra, r, s)) for r, s in shapes]
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            if sizes[i] * sizes[j] > limit:
                raise GuardError(
                    f"pair graph B^{{{shapes[i][0]},{shapes[i][1]}}} (x) B^{{{shapes[j][0]},{shapes[j][1]}}} "
                    f"would have {sizes[i] * sizes[j]} elements, above the limit of {limit}"
                )
