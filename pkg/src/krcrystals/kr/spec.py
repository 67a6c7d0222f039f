"""Algebra and KR-crystal specifications and their classical decompositions."""

from __future__ import annotations

from dataclasses import dataclass

from ..classical import ClassicalType, weyl_dimension
from ..combinat import Diamond, Partition, is_tileable, partitions_in_box, rectangle
from ..errors import OutOfScope

_DIAMOND = {"A": Diamond.EMPTY, "D": Diamond.VERTICAL, "C": Diamond.HORIZONTAL}
_MIN_RANK = {"A": 1, "D": 4, "C": 2}


@dataclass(frozen=True)
class AlgebraSpec:
    """Untwisted affine algebra of family A, C or D and rank n."""

    family: str
    n: int

    def __post_init__(self):
        fam = self.family.upper().rstrip("1")
        object.__setattr__(self, "family", fam)
        if fam not in _DIAMOND:
            raise OutOfScope(f"family {self.family!r} is not supported (use A1, C1 or D1)")
        if self.n < _MIN_RANK[fam]:
            raise OutOfScope(f"{fam}{self.n}: rank must be at least {_MIN_RANK[fam]}")

    @property
    def diamond(self) -> Diamond:
        return _DIAMOND[self.family]

    @property
    def classical(self) -> ClassicalType:
        return ClassicalType(self.family, self.n)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1))

    @property
    def theta(self) -> tuple[int, ...]:
        """Weight change of f_0 on classical weights."""
        v = [0] * self.classical.weight_length
        if self.family == "D":
            v[0] = v[1] = 1
        elif self.family == "C":
            v[0] = 2
        else:
            v[0], v[-1] = 1, -1
        return tuple(v)

    def __str__(self):
        return f"{self.family}{self.n}"


@dataclass(frozen=True)
class KRSpec:
    algebra: AlgebraSpec
    r: int
    s: int

    def __post_init__(self):
        top = self.algebra.n - 2 if self.algebra.family == "D" else self.algebra.n
        if not 1 <= self.r <= top:
            raise OutOfScope(f"node r={self.r} is out of range 1..{top} for {self.algebra}")
        if self.s < 1:
            raise OutOfScope(f"width s={self.s} must be positive")

    @property
    def size(self) -> int:
        """Number of cells r*s."""
        return self.r * self.s

    def __str__(self):
        return f"B^{{{self.r},{self.s}}}({self.algebra})"


def kr_components(spec: KRSpec) -> tuple[Partition, ...]:
    """Highest weights of the classical components, largest first."""
    rect = rectangle(spec.r, spec.s)
    fam = spec.algebra.family
    if fam == "A" or (fam == "C" and spec.r == spec.algebra.n):
        return (rect,)
    tile = spec.algebra.diamond
    found = [lam for lam in partitions_in_box(spec.r, spec.s) if is_tileable(rect, tile, inner=lam)]
    return tuple(sorted(found, key=lambda p: (-p.size, tuple(-x for x in p))))


def projected_size(spec: KRSpec) -> int:
    """Number of elements of B^{r,s}, from Weyl's dimension formula (nothing is built)."""
    ct = spec.algebra.classical
    return sum(weyl_dimension(lam, ct) for lam in kr_components(spec))
