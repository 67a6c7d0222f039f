"""Tensor products of KR crystals; elements are tuples of factor indices."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from ..classical import parse_tableau, render_tableau, KNTableau
from ..combinat import Partition
from ..errors import ENUMERATION_LIMIT, GuardError, OutOfScope
from .crystal import KRCrystal, build_kr
from .spec import AlgebraSpec, KRSpec

Element = tuple[int, ...]


class TensorProduct:
    """B_1 (x) ... (x) B_L with the signature rule on (eps_i, phi_i) of the factors."""

    def __init__(self, factors: Sequence[KRCrystal]):
        if not factors:
            raise ValueError("a tensor product needs at least one factor")
        alg = factors[0].algebra
        if any(k.algebra != alg for k in factors):
            raise OutOfScope("all factors must belong to the same algebra")
        self.factors = tuple(factors)
        self.algebra: AlgebraSpec = alg
        self.n = alg.n

    @classmethod
    def of(cls, algebra: AlgebraSpec, shapes: Sequence[tuple[int, int]], **kw) -> "TensorProduct":
        return cls([build_kr(KRSpec(algebra, r, s), **kw) for r, s in shapes])

    # ---------------------------------------------------------------- basics
    @property
    def shapes(self) -> list[tuple[int, int]]:
        return [(k.r, k.s) for k in self.factors]

    @property
    def size(self) -> int:
        """|B| = sum of r*s."""
        return sum(k.r * k.s for k in self.factors)

    @property
    def classical_colors(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1))

    @property
    def u(self) -> Element:
        return tuple(k.u for k in self.factors)

    def cardinality(self) -> int:
        out = 1
        for k in self.factors:
            out *= len(k)
        return out

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " (x) ".join(f"B^{{{r},{s}}}" for r, s in self.shapes) + f" over {self.algebra}"

    def reversed_pair(self) -> "TensorProduct":
        return TensorProduct(self.factors[::-1])

    # ---------------------------------------------------------------- operators
    def eps(self, i: int, b: Element) -> int:
        eps = 0
        open_ = 0
        for k, x in zip(self.factors, b):
            m = int(k.graph.eps[i][x])
            eps += max(0, m - open_)
            open_ = max(0, open_ - m) + int(k.graph.phi[i][x])
        return eps

    def phi(self, i: int, b: Element) -> int:
        open_ = 0
        for k, x in zip(self.factors, b):
            m = int(k.graph.eps[i][x])
            open_ = max(0, open_ - m) + int(k.graph.phi[i][x])
        return open_

    def acting_factor(self, op: str, i: int, b: Element) -> int:
        """Index of the factor that e_i / f_i acts on, or -1."""
        if op == "e":
            open_, where = 0, -1
            for p, (k, x) in enumerate(zip(self.factors, b)):
                m = int(k.graph.eps[i][x])
                if m > open_:
                    where = p
                open_ = max(0, open_ - m) + int(k.graph.phi[i][x])
            return where
        pend, where = 0, -1
        for p in range(len(b) - 1, -1, -1):
            k, x = self.factors[p], b[p]
            pl = int(k.graph.phi[i][x])
            if pl > pend:
                where = p
            pend = max(0, pend - pl) + int(k.graph.eps[i][x])
        return where

    def apply(self, op: str, i: int, b: Element) -> Element | None:
        p = self.acting_factor(op, i, b)
        if p < 0:
            return None
        k = self.factors[p]
        y = int((k.graph.e if op == "e" else k.graph.f)[i][b[p]])
        if y < 0:
            return None
        return b[:p] + (y,) + b[p + 1:]

    def e(self, i: int, b: Element) -> Element | None:
        return self.apply("e", i, b)

    def f(self, i: int, b: Element) -> Element | None:
        return self.apply("f", i, b)

    def apply_path(self, op: str, path: Sequence[int], b: Element) -> Element:
        """Apply op_i for i in path, in the given order."""
        for i in path:
            nxt = self.apply(op, i, b)
            if nxt is None:
                raise ValueError(f"{op}_{i} undefined along path")
            b = nxt
        return b

    def sigma(self, b: Element) -> Element:
        return tuple(int(k.sigma[x]) for k, x in zip(self.factors, b))

    def weight(self, b: Element) -> tuple[int, ...]:
        w = np.zeros(self.algebra.classical.weight_length, dtype=np.int64)
        for k, x in zip(self.factors, b):
            w += k.graph.weights[x]
        return tuple(int(v) for v in w)

    def is_highest(self, b: Element, colors: Sequence[int] | None = None) -> bool:
        colors = self.classical_colors if colors is None else colors
        return all(self.eps(i, b) == 0 for i in colors)

    def to_highest(self, b: Element, colors: Sequence[int] | None = None) -> tuple[Element, list[int]]:
        """Raise by the smallest applicable e_i; returns (highest, colors applied in order)."""
        colors = sorted(self.classical_colors if colors is None else colors)
        path: list[int] = []
        while True:
            for i in colors:
                nxt = self.e(i, b)
                if nxt is not None:
                    b = nxt
                    path.append(i)
                    break
            else:
                return b, path

    def from_highest(self, h: Element, path: Sequence[int]) -> Element:
        """Undo a raising path recorded by to_highest."""
        return self.apply_path("f", list(reversed(path)), h)

    def highest_weight_size(self, b: Element) -> int:
        """|lambda(High(b))|; equals sum(weight) since classical colors keep it fixed."""
        return sum(self.weight(self.to_highest(b)[0]))

    def is_max(self, b: Element) -> bool:
        return self.highest_weight_size(b) == self.size

    # ---------------------------------------------------------------- enumeration
    def highest_elements(
        self,
        weight: Sequence[int] | None = None,
        colors: Sequence[int] | None = None,
        limit: int = ENUMERATION_LIMIT,
    ) -> list[Element]:
        """All elements killed by e_i for i in colors, optionally of a given weight.

        Prefixes of highest elements are highest, so candidates grow factor by
        factor; the next factor must satisfy eps_i <= phi_i(prefix).
        """
        colors = list(self.classical_colors if colors is None else colors)
        target = None
        if weight is not None:
            target = tuple(weight) + (0,) * (self.algebra.classical.weight_length - len(weight))
        count = 0
        prefixes: list[tuple[Element, dict[int, int]]] = [((), {i: 0 for i in colors})]
        for k in self.factors:
            g = k.graph
            nxt = []
            for pre, phis in prefixes:
                mask = np.ones(len(g), dtype=bool)
                for i in colors:
                    mask &= g.eps[i] <= phis[i]
                cand = np.nonzero(mask)[0]
                count += len(cand)
                if count > limit:
                    raise GuardError(
                        f"enumerating highest elements of {self} exceeds the limit of {limit} elements"
                    )
                for x in cand:
                    x = int(x)
                    new_phi = {i: phis[i] - int(g.eps[i][x]) + int(g.phi[i][x]) for i in colors}
                    nxt.append((pre + (x,), new_phi))
            prefixes = nxt
        out = [b for b, _ in prefixes]
        if target is not None:
            out = [b for b in out if self.weight(b) == target]
        return out

    def guard_full(self, limit: int = ENUMERATION_LIMIT) -> None:
        total = self.cardinality()
        if total > limit:
            raise GuardError(f"{self} has {total} elements, above the limit of {limit}")

    def all_elements(self, limit: int = ENUMERATION_LIMIT) -> Iterator[Element]:
        self.guard_full(limit)
        idx = np.indices([len(k) for k in self.factors]).reshape(len(self.factors), -1).T
        for row in idx:
            yield tuple(int(x) for x in row)

    # ---------------------------------------------------------------- I/O
    def element(self, tableaux: Sequence) -> Element:
        """Element from per-factor tableau payloads (text or nested lists)."""
        if len(tableaux) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} factors, got {len(tableaux)}")
        out = []
        for k, t in zip(self.factors, tableaux):
            tab = t if isinstance(t, KNTableau) else parse_tableau(t, k.algebra.classical)
            out.append(k.find(tab.columns))
        return tuple(out)

    def tableaux(self, b: Element) -> list[KNTableau]:
        return [KNTableau(k.columns(x)) for k, x in zip(self.factors, b)]

    def columns(self, b: Element) -> list[list[list[int]]]:
        return [[list(c) for c in t.columns] for t in self.tableaux(b)]

    def render(self, b: Element) -> str:
        return " (x) ".join(render_tableau(t) for t in self.tableaux(b))

    def shape_sizes(self, b: Element) -> list[Partition]:
        return [k.shape_of(x) for k, x in zip(self.factors, b)]
