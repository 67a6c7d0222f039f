"""Constraint solver for the Dynkin-flip automorphism of a KR crystal.

Restricting to colors 1..n-1 splits the crystal into gl_n components.  The flip
must send each such component onto one whose highest weight is the flipped
highest weight, intertwining f_i with f_{n-i}.  Inside a matched pair that
twisted isomorphism is unique, so the flip is determined by an involutive
matching of components.  The matching is searched for under the requirement
that the induced e_0 = flip . e_n . flip commutes with e_n (0 and n are not
adjacent in the Dynkin diagram) and that the affine graph is connected.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..classical import CrystalGraph
from ..combinat import flip_weight
from ..errors import AmbiguousSigma, NoSigma


@dataclass
class GLStructure:
    """gl_n components of a crystal with canonical element orders.

    ``order_std`` lists elements component by component, each in breadth-first
    order using colors 1..n-1; ``order_tw`` does the same with colors n-1..1.
    Position k of a component in the standard order corresponds to position k
    of its twisted partner in the twisted order.
    """

    comp: np.ndarray
    roots: np.ndarray
    start: np.ndarray
    order_std: np.ndarray
    order_tw: np.ndarray
    pos_std: np.ndarray

    @property
    def count(self) -> int:
        return len(self.roots)

    def size(self, c: int) -> int:
        return int(self.start[c + 1] - self.start[c])


def _roots(g: CrystalGraph, colors) -> np.ndarray:
    n_el = len(g)
    parent = np.arange(n_el)
    done = np.zeros(n_el, dtype=bool)
    for i in colors:
        up = g.e[i]
        sel = ~done & (up >= 0)
        parent[sel] = up[sel]
        done |= sel
    while True:
        nxt = parent[parent]
        if np.array_equal(nxt, parent):
            return parent
        parent = nxt


def _ranks(g: CrystalGraph, comp, depth, colors, color_rank) -> np.ndarray:
    n_el = len(g)
    n_colors = len(colors) + 1
    rank = np.full(n_el, -1, dtype=np.int64)
    by_depth = np.argsort(depth, kind="stable")
    bounds = np.searchsorted(depth[by_depth], np.arange(depth.max() + 2))
    counter = 0
    for d in range(len(bounds) - 1):
        level = by_depth[bounds[d]:bounds[d + 1]]
        if d == 0:
            key = np.zeros(len(level), dtype=np.int64)
        else:
            key = np.full(len(level), np.iinfo(np.int64).max)
            for c in colors:
                p = g.e[c][level]
                ok = p >= 0
                k = rank[np.where(ok, p, 0)] * n_colors + color_rank[c]
                key = np.where(ok, np.minimum(key, k), key)
        o = np.lexsort((key, comp[level]))
        rank[level[o]] = counter + np.arange(len(level))
        counter += len(level)
    return rank


def gl_structure(g: CrystalGraph) -> GLStructure:
    n = g.ctype.n
    colors = list(range(1, n))
    root = _roots(g, colors)
    roots, comp = np.unique(root, return_inverse=True)
    comp = comp.astype(np.int64)
    diff = g.weights[roots][comp].astype(np.int64) - g.weights
    depth = np.cumsum(diff, axis=1)[:, : n - 1].sum(axis=1)
    std = _ranks(g, comp, depth, colors, {c: c - 1 for c in colors})
    tw = _ranks(g, comp, depth, colors, {c: n - 1 - c for c in colors})
    order_std = np.lexsort((std, comp))
    order_tw = np.lexsort((tw, comp))
    sizes = np.bincount(comp, minlength=len(roots))
    start = np.concatenate([[0], np.cumsum(sizes)])
    pos_std = np.empty(len(g), dtype=np.int64)
    pos_std[order_std] = np.arange(len(g)) - start[comp[order_std]]
    return GLStructure(comp, roots, start, order_std, order_tw, pos_std)


def sigma_from_matching(gl: GLStructure, match: np.ndarray) -> np.ndarray:
    """Element map induced by an involutive matching of gl components."""
    return gl.order_tw[gl.start[match[gl.comp]] + gl.pos_std]


def _compose(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """second after first, with -1 meaning undefined."""
    out = np.full(len(first), -1, dtype=np.int64)
    ok = first >= 0
    out[ok] = second[first[ok]]
    return out


def affine_e0(sigma: np.ndarray, e_n: np.ndarray) -> np.ndarray:
    """e_0 = sigma . e_n . sigma as an index array."""
    return _compose(_compose(sigma, e_n), sigma)


def _connected(labels: np.ndarray, arrows: list[np.ndarray]) -> bool:
    """Are the label classes connected by the given arrows?"""
    k = int(labels.max()) + 1
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arr in arrows:
        src = np.nonzero(arr >= 0)[0]
        pairs = np.unique(np.stack([labels[src], labels[arr[src]]], axis=1), axis=0)
        for a, b in pairs:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[ra] = rb
    return len({find(x) for x in range(k)}) == 1


def check_flip(g: CrystalGraph, sigma: np.ndarray) -> bool:
    """Full test of a candidate flip: involution, intertwining, (0,n) commutation, connectivity."""
    n = g.ctype.n
    if not np.array_equal(sigma[sigma], np.arange(len(g))):
        return False
    for i in range(1, n):
        lhs = _compose(g.f[i], sigma)
        rhs = _compose(sigma, g.f[n - i])
        if not np.array_equal(lhs, rhs):
            return False
    e_n = g.e[n].astype(np.int64)
    e_0 = affine_e0(sigma, e_n)
    a = _compose(e_n, e_0)
    b = _compose(e_0, e_n)
    both = (e_n >= 0) & (e_0 >= 0)
    if np.any(a[both] != b[both]) or np.any(a[both] < 0):
        return False
    # strings of color 0 must not change length along color n, and vice versa
    eps0 = g.eps[n][sigma]
    phi0 = g.phi[n][sigma]
    src = np.nonzero(e_n >= 0)[0]
    if np.any(eps0[src] != eps0[e_n[src]]) or np.any(phi0[src] != phi0[e_n[src]]):
        return False
    return _connected(g.comp, [e_0])


def compute_sigma(g: CrystalGraph, max_solutions: int = 8) -> np.ndarray:
    """Find the unique flip automorphism of a KR crystal given by its classical graph."""
    n = g.ctype.n
    gl = gl_structure(g)
    count = gl.count
    hw = [tuple(int(x) for x in g.weights[r]) for r in gl.roots]
    by_weight: dict[tuple, list[int]] = {}
    for c, w in enumerate(hw):
        by_weight.setdefault(w, []).append(c)
    domains = [
        [d for d in by_weight.get(flip_weight(hw[c]), []) if gl.size(d) == gl.size(c)] for c in range(count)
    ]

    # color-n arrows grouped by (source component, target component)
    profile = g.eps[n].astype(np.int64) * 4096 + g.phi[n]
    src = np.nonzero(g.e[n] >= 0)[0]
    dst = g.e[n][src].astype(np.int64)
    cs, cd = gl.comp[src], gl.comp[dst]
    o = np.lexsort((gl.pos_std[src], cd, cs))
    src, dst, cs, cd = src[o], dst[o], cs[o], cd[o]
    cut = np.nonzero((np.diff(cs) != 0) | (np.diff(cd) != 0))[0] + 1
    bounds = np.concatenate([[0], cut, [len(src)]])

    def digest(comp_id, positions):
        vals = profile[gl.order_tw[gl.start[comp_id] + positions]]
        return hashlib.blake2b(vals.tobytes(), digest_size=16).digest()

    groups = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if a == b:
            continue
        c, d = int(cs[a]), int(cd[a])
        ks, ls = gl.pos_std[src[a:b]], gl.pos_std[dst[a:b]]
        hs = {x: digest(x, ks) for x in domains[c]}
        hd = {y: digest(y, ls) for y in domains[d]}
        groups.append((c, d, hs, hd))

    def propagate(dom) -> bool:
        changed = True
        while changed:
            changed = False
            for c, d, hs, hd in groups:
                dc, dd = dom[c], dom[d]
                codes_d = {hd[y] for y in dd}
                new_c = [x for x in dc if hs[x] in codes_d]
                codes_c = {hs[x] for x in new_c}
                new_d = [y for y in dd if hd[y] in codes_c]
                if len(new_c) < len(dc) or len(new_d) < len(dd):
                    dom[c], dom[d] = new_c, new_d
                    changed = True
                    if not new_c or not new_d:
                        return False
            for c in range(count):
                keep = [x for x in dom[c] if c in dom[x]]
                if len(keep) < len(dom[c]):
                    dom[c] = keep
                    changed = True
                    if not keep:
                        return False
        return True

    solutions: list[np.ndarray] = []

    def search(dom):
        if len(solutions) >= max_solutions or not propagate(dom):
            return
        open_ = [c for c in range(count) if len(dom[c]) > 1]
        if not open_:
            match = np.array([dom[c][0] for c in range(count)], dtype=np.int64)
            sigma = sigma_from_matching(gl, match)
            if check_flip(g, sigma):
                solutions.append(sigma)
            return
        c = min(open_, key=lambda x: len(dom[x]))
        for x in dom[c]:
            trial = [list(v) for v in dom]
            trial[c], trial[x] = [x], [c]
            search(trial)

    search([list(v) for v in domains])
    if not solutions:
        raise NoSigma(f"no flip automorphism found ({count} gl components)")
    if len(solutions) > 1:
        raise AmbiguousSigma(f"{len(solutions)} flip automorphisms survive", solutions)
    return solutions[0].astype(np.int32)
