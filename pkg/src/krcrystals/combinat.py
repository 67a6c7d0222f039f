"""Partitions, domino tilings, Littlewood-Richardson coefficients and exact q-polynomials."""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros are dropped)."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> list[tuple[int, int]]:
        """Cells (row, column), 0-based, rows listed from the longest one."""
        return [(i, j) for i, p in enumerate(self) for j in range(p)]

    def contains(self, other: Sequence[int]) -> bool:
        return len(other) <= len(self) and all(o <= p for o, p in zip(other, self))

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{tuple(self)} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def rectangle(r: int, s: int) -> Partition:
    return Partition([s] * r)


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rest, bound):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, bound), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)


def partitions_in_box(rows: int, cols: int) -> Iterator[Partition]:
    """All partitions fitting inside a rows x cols rectangle."""

    def rec(i, bound):
        if i == rows:
            yield ()
            return
        for p in range(bound, -1, -1):
            for tail in rec(i + 1, p):
                yield (p,) + tail

    for parts in rec(0, cols):
        yield Partition(parts)


class Diamond(enum.Enum):
    """Tile used to decompose partitions; the value is the number of cells."""

    EMPTY = "empty"
    VERTICAL = "vertical-domino"
    HORIZONTAL = "horizontal-domino"
    BOX = "box"

    @property
    def cell_count(self) -> int:
        return {"empty": 0, "vertical-domino": 2, "horizontal-domino": 2, "box": 1}[self.value]

    def cells(self) -> tuple[tuple[int, int], ...]:
        """Cell offsets of the tile relative to its first cell in row-major order."""
        if self is Diamond.VERTICAL:
            return ((0, 0), (1, 0))
        if self is Diamond.HORIZONTAL:
            return ((0, 0), (0, 1))
        if self is Diamond.BOX:
            return ((0, 0),)
        raise ValueError("the empty diamond has no cells")


def is_tileable(shape: Sequence[int], diamond: Diamond, inner: Sequence[int] = ()) -> bool:
    """Exhaustive search for a tiling of the skew diagram shape/inner by copies of diamond."""
    offsets = diamond.cells()
    inner = tuple(inner) + (0,) * (len(shape) - len(inner))
    free = {(i, j) for i, p in enumerate(shape) for j in range(inner[i], p)}

    def search(free):
        if not free:
            return True
        # the row-major first free cell must be covered by a tile anchored there
        cell = min(free)
        placed = [(cell[0] + di, cell[1] + dj) for di, dj in offsets]
        if all(c in free for c in placed):
            return search(free.difference(placed))
        return False

    return search(frozenset(free))


def tiled_partitions(n: int, diamond: Diamond) -> set[Partition]:
    """Partitions of n that can be tiled by the given diamond."""
    if diamond is Diamond.EMPTY:
        raise ValueError("tiling by the empty diamond is undefined")
    return {lam for lam in partitions(n) if is_tileable(lam, diamond)}


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient by counting LR skew tableaux of shape nu/lam and content mu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    return _lr(lam, mu, nu)


@lru_cache(maxsize=None)
def _lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    if lam.size + mu.size != nu.size or not nu.contains(lam):
        return 0
    if not mu:
        return 1
    inner = lam.padded(len(nu))
    # cells in the order of the reverse reading word: rows top to bottom, each right to left
    cells = [(i, j) for i in range(len(nu)) for j in range(nu[i] - 1, inner[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)

    def fits(i, j, v):
        right = filling.get((i, j + 1))
        if right is not None and v > right:
            return False
        above = filling.get((i - 1, j))
        if above is not None and v <= above:
            return False
        if counts[v] >= mu[v - 1]:
            return False
        return v == 1 or counts[v - 1] > counts[v]

    def rec(k):
        if k == len(cells):
            return 1
        i, j = cells[k]
        total = 0
        for v in range(1, len(mu) + 1):
            if fits(i, j, v):
                filling[(i, j)] = v
                counts[v] += 1
                total += rec(k + 1)
                counts[v] -= 1
                del filling[(i, j)]
        return total

    return rec(0)


def lambda_of(weight: Sequence[int]) -> tuple[tuple[int, ...], bool]:
    """Return the weight coordinates and whether they form a partition."""
    w = tuple(int(x) for x in weight)
    ok = all(x >= 0 for x in w) and all(w[i] >= w[i + 1] for i in range(len(w) - 1))
    return w, ok


def flip_weight(weight: Sequence[int]) -> tuple[int, ...]:
    """(w_1, ..., w_n) -> (-w_n, ..., -w_1)."""
    return tuple(-int(x) for x in reversed(tuple(weight)))


def exact_div(a: int, b: int) -> int:
    """Integer division that refuses to round."""
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


class QPolynomial:
    """Polynomial in q with integer coefficients and nonnegative integer exponents."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            e, v = int(e), int(v)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if v:
                c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "QPolynomial":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(sorted(self._c.items()))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return QPolynomial(c)

    def __mul__(self, other) -> "QPolynomial":
        if isinstance(other, int):
            return QPolynomial({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return QPolynomial(c)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q**k."""
        return QPolynomial({e + k: v for e, v in self._c.items()})

    def substitute_power(self, k: int) -> "QPolynomial":
        """Substitute q -> q**k."""
        return QPolynomial({e * k: v for e, v in self._c.items()})

    def __call__(self, q):
        return sum(v * q**e for e, v in self._c.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def to_json(self) -> dict:
        return {"coeffs": {str(e): v for e, v in sorted(self._c.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "QPolynomial":
        return cls({int(e): v for e, v in data["coeffs"].items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                terms.append(str(v))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                terms.append(mono if v == 1 else f"{v}*{mono}")
        return " + ".join(terms)
