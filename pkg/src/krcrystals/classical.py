"""Classical crystals of types A, C and D built from letters, plus tableau I/O.

Letters are signed integers: ``k`` is the unbarred letter k and ``-k`` is its bar.
Tensor products follow the rule

    e_i(b1 (x) b2) = e_i b1 (x) b2  if phi_i(b1) >= eps_i(b2)  else  b1 (x) e_i b2
    f_i(b1 (x) b2) = f_i b1 (x) b2  if phi_i(b1) >  eps_i(b2)  else  b1 (x) f_i b2

so a word x1 x2 ... xm is the element x1 (x) x2 (x) ... (x) xm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .combinat import Partition

# Reading words: columns from right to left, each column from its base upward
# (entries increasing).  Tableau payloads list each column in that same order.
COLUMNS_RIGHT_TO_LEFT = True
COLUMN_BASE_FIRST = True


class InadmissibleColumn(ValueError):
    pass


class TableauSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class ClassicalType:
    """Classical Cartan type.  For family 'A', ``n`` is the rank and letters run over 1..n+1."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in ("A", "C", "D"):
            raise ValueError(f"unsupported family {self.family!r}")
        low = {"A": 1, "C": 2, "D": 4}[self.family]
        if self.n < low:
            raise ValueError(f"{self.family}_{self.n}: rank must be at least {low}")

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def weight_length(self) -> int:
        return self.n + 1 if self.family == "A" else self.n

    @property
    def max_letter(self) -> int:
        return self.weight_length

    @cached_property
    def letters(self) -> tuple[int, ...]:
        m = self.max_letter
        if self.family == "A":
            return tuple(range(1, m + 1))
        return tuple(range(1, m + 1)) + tuple(-k for k in range(m, 0, -1))

    def simple_root(self, i: int) -> tuple[int, ...]:
        v = [0] * self.weight_length
        if self.family == "C" and i == self.n:
            v[-1] = 2
        elif self.family == "D" and i == self.n:
            v[-2] = v[-1] = 1
        else:
            v[i - 1], v[i] = 1, -1
        return tuple(v)

    def coroot_pairing(self, weight: Sequence[int], i: int) -> int:
        """<weight, alpha_i^vee>."""
        if self.family == "C" and i == self.n:
            return weight[-1]
        if self.family == "D" and i == self.n:
            return weight[-2] + weight[-1]
        return weight[i - 1] - weight[i]

    def __str__(self):
        return f"{self.family}{self.n}"

    @cached_property
    def _tables(self):
        """Per color: dict of letter -> f(letter) and its inverse."""
        f_tab = {}
        for i in self.colors:
            n = self.n
            if self.family == "A":
                m = {i: i + 1}
            elif i < n:
                m = {i: i + 1, -(i + 1): -i}
            elif self.family == "C":
                m = {n: -n}
            else:
                m = {n - 1: -n, n: -(n - 1)}
            f_tab[i] = m
        e_tab = {i: {v: k for k, v in m.items()} for i, m in f_tab.items()}
        return f_tab, e_tab

    @cached_property
    def _np_tables(self):
        """Lookup arrays indexed by letter + max_letter; 0 marks 'undefined'."""
        f_tab, e_tab = self._tables
        size = 2 * self.max_letter + 1
        out = {}
        for i in self.colors:
            fa = np.zeros(size, dtype=np.int8)
            ea = np.zeros(size, dtype=np.int8)
            for k, v in f_tab[i].items():
                fa[k + self.max_letter] = v
            for k, v in e_tab[i].items():
                ea[k + self.max_letter] = v
            out[i] = (fa, ea)
        return out

    def order_rank(self, x: int) -> int:
        """Position of a letter in the type order; D's n and n-bar share a rank."""
        n = self.max_letter
        if x > 0:
            return x
        if self.family == "D" and x == -n:
            return n
        return 2 * n + 1 + x


def letter_apply(op: str, i: int, x: int, ctype: ClassicalType) -> int | None:
    if i not in ctype.colors:
        raise ValueError(f"color {i} invalid for {ctype}")
    if x not in ctype.letters:
        raise ValueError(f"letter {x} invalid for {ctype}")
    f_tab, e_tab = ctype._tables
    return (f_tab if op == "f" else e_tab)[i].get(x)


def signature(word: Sequence[int], i: int, ctype: ClassicalType) -> tuple[int, int, int, int]:
    """Return (eps, phi, position for e, position for f); positions are -1 when undefined."""
    f_tab, e_tab = ctype._tables
    fm, em = f_tab[i], e_tab[i]
    open_plus: list[int] = []
    eps = 0
    e_pos = -1
    for p, x in enumerate(word):
        if x in em:
            if open_plus:
                open_plus.pop()
            else:
                eps += 1
                e_pos = p
        if x in fm:
            open_plus.append(p)
    f_pos = open_plus[0] if open_plus else -1
    return eps, len(open_plus), e_pos, f_pos


def tensor_apply(op: str, i: int, word: Sequence[int], ctype: ClassicalType) -> tuple[int, ...] | None:
    """Apply e_i or f_i to a word by the signature rule."""
    _, _, e_pos, f_pos = signature(word, i, ctype)
    pos = e_pos if op == "e" else f_pos
    if pos < 0:
        return None
    f_tab, e_tab = ctype._tables
    w = list(word)
    w[pos] = (e_tab if op == "e" else f_tab)[i][w[pos]]
    return tuple(w)


def word_weight(word: Iterable[int], ctype: ClassicalType) -> tuple[int, ...]:
    w = [0] * ctype.weight_length
    for x in word:
        if x > 0:
            w[x - 1] += 1
        else:
            w[-x - 1] -= 1
    return tuple(w)


def to_highest(word: Sequence[int], ctype: ClassicalType, colors: Iterable[int] | None = None):
    """Raise with the smallest applicable e_i until stuck.  Returns (highest, path)."""
    colors = sorted(ctype.colors if colors is None else colors)
    cur = tuple(word)
    path: list[int] = []
    while True:
        for i in colors:
            nxt = tensor_apply("e", i, cur, ctype)
            if nxt is not None:
                cur = nxt
                path.append(i)
                break
        else:
            return cur, path


# ---------------------------------------------------------------- vectorized ops


def batch_signature(words: np.ndarray, i: int, ctype: ClassicalType):
    """Vectorized signature over rows of an int8 word array (0 = padding)."""
    fa, ea = ctype._np_tables[i]
    idx = words.astype(np.int16) + ctype.max_letter
    plus = fa[idx] != 0
    minus = ea[idx] != 0
    rows, length = words.shape
    open_ = np.zeros(rows, dtype=np.int16)
    eps = np.zeros(rows, dtype=np.int16)
    e_pos = np.full(rows, -1, dtype=np.int16)
    for p in range(length):
        m = minus[:, p]
        cancel = m & (open_ > 0)
        new = m & ~cancel
        open_ -= cancel
        eps += new
        e_pos[new] = p
        open_ += plus[:, p]
    phi = open_
    # right to left: leftmost unmatched plus
    pend = np.zeros(rows, dtype=np.int16)
    f_pos = np.full(rows, -1, dtype=np.int16)
    for p in range(length - 1, -1, -1):
        pl = plus[:, p]
        cancel = pl & (pend > 0)
        new = pl & ~cancel
        pend -= cancel
        f_pos[new] = p
        pend += minus[:, p]
    return eps, phi, e_pos, f_pos


def batch_apply(op: str, i: int, words: np.ndarray, ctype: ClassicalType, sig=None):
    """Apply e_i/f_i to every row.  Returns (new_words, defined_mask)."""
    eps, phi, e_pos, f_pos = sig if sig is not None else batch_signature(words, i, ctype)
    pos = e_pos if op == "e" else f_pos
    ok = pos >= 0
    out = words.copy()
    r = np.nonzero(ok)[0]
    c = pos[r].astype(np.intp)
    fa, ea = ctype._np_tables[i]
    table = ea if op == "e" else fa
    out[r, c] = table[out[r, c].astype(np.int16) + ctype.max_letter]
    return out, ok


def batch_weights(words: np.ndarray, ctype: ClassicalType) -> np.ndarray:
    rows = words.shape[0]
    w = np.zeros((rows, ctype.weight_length + 1), dtype=np.int16)
    for p in range(words.shape[1]):
        x = words[:, p].astype(np.int16)
        # column 0 collects padding and is dropped
        np.add.at(w, (np.arange(rows), np.abs(x)), np.sign(x))
    return w[:, 1:]


class WordIndex:
    """Exact lookup of padded words, using packed integer keys when they fit in 63 bits."""

    def __init__(self, words: np.ndarray, ctype: ClassicalType):
        self.ctype = ctype
        self.length = words.shape[1]
        self.bits = (2 * ctype.max_letter).bit_length()
        self.packed = self.length * self.bits <= 63
        keys = self.keys(words)
        if self.packed:
            self.order = np.argsort(keys, kind="stable")
            self.sorted_keys = keys[self.order]
            if len(keys) > 1 and np.any(self.sorted_keys[1:] == self.sorted_keys[:-1]):
                raise ValueError("duplicate words")
        else:
            self.table = {k: j for j, k in enumerate(keys)}
            if len(self.table) != len(keys):
                raise ValueError("duplicate words")

    def keys(self, words: np.ndarray):
        if words.shape[1] != self.length:
            raise ValueError("word length mismatch")
        if self.packed:
            codes = words.astype(np.int64) + self.ctype.max_letter
            k = np.zeros(words.shape[0], dtype=np.int64)
            for p in range(self.length):
                k = (k << self.bits) | codes[:, p]
            return k
        return [bytes(row) for row in np.ascontiguousarray(words, dtype=np.int8)]

    def lookup(self, words: np.ndarray) -> np.ndarray:
        """Indices of the given words; -1 where absent."""
        if words.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        keys = self.keys(words)
        if self.packed:
            pos = np.searchsorted(self.sorted_keys, keys)
            pos = np.minimum(pos, len(self.sorted_keys) - 1)
            hit = self.sorted_keys[pos] == keys
            return np.where(hit, self.order[pos], -1)
        return np.array([self.table.get(k, -1) for k in keys], dtype=np.int64)


def unique_rows(words: np.ndarray, ctype: ClassicalType) -> np.ndarray:
    if words.shape[0] == 0:
        return words
    idx = WordIndex.__new__(WordIndex)
    idx.ctype, idx.length = ctype, words.shape[1]
    idx.bits = (2 * ctype.max_letter).bit_length()
    idx.packed = idx.length * idx.bits <= 63
    if idx.packed:
        _, first = np.unique(idx.keys(words), return_index=True)
        return words[np.sort(first)]
    return np.unique(words, axis=0)


def column_heights(shape: Sequence[int]) -> list[int]:
    return list(Partition(shape).conjugate())


def highest_word(shape: Sequence[int]) -> tuple[int, ...]:
    """Reading word of the highest element of B(shape)."""
    word: list[int] = []
    for h in reversed(column_heights(shape)):
        word.extend(range(1, h + 1))
    return tuple(word)


def columns_to_word(columns: Sequence[Sequence[int]]) -> tuple[int, ...]:
    cols = list(columns)
    if COLUMNS_RIGHT_TO_LEFT:
        cols = cols[::-1]
    word: list[int] = []
    for c in cols:
        word.extend(c if COLUMN_BASE_FIRST else reversed(c))
    return tuple(word)


def word_to_columns(word: Sequence[int], shape: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    heights = column_heights(shape)
    order = list(reversed(heights)) if COLUMNS_RIGHT_TO_LEFT else heights
    cols, p = [], 0
    for h in order:
        c = tuple(word[p:p + h])
        cols.append(c if COLUMN_BASE_FIRST else c[::-1])
        p += h
    if p != len(word):
        raise ValueError("word length does not match shape")
    return tuple(cols[::-1] if COLUMNS_RIGHT_TO_LEFT else cols)


# ---------------------------------------------------------------- tableaux


@dataclass(frozen=True)
class KNTableau:
    """Tableau given by its columns, each listed from the base upward."""

    columns: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        heights = [len(c) for c in self.columns]
        return Partition(heights).conjugate() if heights else Partition()

    @property
    def word(self) -> tuple[int, ...]:
        return columns_to_word(self.columns)

    def has_bars(self) -> bool:
        return any(x < 0 for c in self.columns for x in c)

    def __str__(self) -> str:
        return render_tableau(self)


def validate_column(col: Sequence[int], ctype: ClassicalType) -> None:
    """Strict increase in the type order plus the x / x-bar coexistence inequality."""
    for x in col:
        if x not in ctype.letters:
            raise InadmissibleColumn(f"letter {x} is not valid for {ctype}")
    n = ctype.max_letter
    for a, b in zip(col, col[1:]):
        d_pair = ctype.family == "D" and {a, b} == {n, -n}
        if not d_pair and ctype.order_rank(a) >= ctype.order_rank(b):
            raise InadmissibleColumn(f"column {list(col)} is not strictly increasing at {a},{b}")
    if ctype.family == "A":
        return
    height = len(col)
    for p, x in enumerate(col, start=1):
        if x <= 0 or (ctype.family == "D" and x == n):
            continue
        for q, y in enumerate(col, start=1):
            if y == -x and not x >= p + (height + 1 - q):
                raise InadmissibleColumn(
                    f"column {list(col)}: letter {x} at position {p} and its bar at {q} "
                    f"need {x} >= {p} + ({height} + 1 - {q}) = {p + height + 1 - q}"
                )


def validate_tableau(t: KNTableau, ctype: ClassicalType) -> None:
    heights = [len(c) for c in t.columns]
    if any(h == 0 for h in heights) or heights != sorted(heights, reverse=True):
        raise TableauSyntaxError(f"column heights {heights} must be positive and weakly decreasing")
    for c in t.columns:
        validate_column(c, ctype)
    n = ctype.max_letter
    for left, right in zip(t.columns, t.columns[1:]):
        for a, b in zip(left, right):
            bad_pair = ctype.family == "D" and {a, b} == {n, -n}
            if bad_pair or ctype.order_rank(a) > ctype.order_rank(b):
                raise InadmissibleColumn(f"row entries {a},{b} are not weakly increasing")


def parse_tableau(text, ctype: ClassicalType | None = None) -> KNTableau:
    """Parse ``[[1,3,-3],[2]]`` (columns, each from its base upward)."""
    data = json.loads(text) if isinstance(text, str) else text
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise TableauSyntaxError(f"expected a list of columns, got {text!r}")
    cols = []
    for c in data:
        if not all(isinstance(x, int) and not isinstance(x, bool) and x != 0 for x in c):
            raise TableauSyntaxError(f"column entries must be nonzero integers: {c!r}")
        cols.append(tuple(c))
    t = KNTableau(tuple(cols))
    if ctype is not None:
        validate_tableau(t, ctype)
    return t


def render_tableau(t: KNTableau) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in c) + "]" for c in t.columns) + "]"


# ---------------------------------------------------------------- graphs


@dataclass
class CrystalGraph:
    """A finite classical crystal stored as index arrays.

    ``f[i][k]`` is the index of f_i applied to element k (or -1); likewise ``e``.
    """

    ctype: ClassicalType
    words: np.ndarray
    shapes: list[Partition]
    comp: np.ndarray
    f: dict[int, np.ndarray] = field(default_factory=dict)
    e: dict[int, np.ndarray] = field(default_factory=dict)
    eps: dict[int, np.ndarray] = field(default_factory=dict)
    phi: dict[int, np.ndarray] = field(default_factory=dict)
    weights: np.ndarray | None = None

    def __len__(self) -> int:
        return self.words.shape[0]

    @cached_property
    def index(self) -> WordIndex:
        return WordIndex(self.words, self.ctype)

    def word(self, k: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.words[k] if x != 0)

    def shape_of(self, k: int) -> Partition:
        return self.shapes[int(self.comp[k])]

    def columns(self, k: int) -> tuple[tuple[int, ...], ...]:
        return word_to_columns(self.word(k), self.shape_of(k))

    def tableau(self, k: int) -> KNTableau:
        return KNTableau(self.columns(k))

    def find_word(self, word: Sequence[int]) -> int:
        row = np.zeros((1, self.words.shape[1]), dtype=np.int8)
        if len(word) > row.shape[1]:
            return -1
        row[0, :len(word)] = word
        return int(self.index.lookup(row)[0])

    def find(self, columns: Sequence[Sequence[int]]) -> int:
        return self.find_word(columns_to_word(columns))

    def highest(self) -> np.ndarray:
        mask = np.ones(len(self), dtype=bool)
        for i in self.ctype.colors:
            mask &= self.e[i] < 0
        return np.nonzero(mask)[0]


def _closure(start: tuple[int, ...], ctype: ClassicalType, width: int) -> np.ndarray:
    level = np.zeros((1, width), dtype=np.int8)
    level[0, :len(start)] = start
    levels = [level]
    while level.shape[0]:
        children = []
        for i in ctype.colors:
            w, ok = batch_apply("f", i, level, ctype)
            children.append(w[ok])
        level = unique_rows(np.concatenate(children), ctype)
        if level.shape[0]:
            levels.append(level)
    return np.concatenate(levels)


def build_graph(ctype: ClassicalType, shapes: Sequence[Sequence[int]]) -> CrystalGraph:
    """Disjoint union of the components B(shape), realized as f-closures of highest words."""
    shapes = [Partition(s) for s in shapes]
    bound = ctype.n + 1 if ctype.family == "A" else ctype.n
    for s in shapes:
        if s.length > bound:
            raise ValueError(f"shape {list(s)} has too many rows for {ctype}")
    width = max([s.size for s in shapes] + [1])
    blocks, comp = [], []
    for c, s in enumerate(shapes):
        block = _closure(highest_word(s), ctype, width)
        blocks.append(block)
        comp.append(np.full(block.shape[0], c, dtype=np.int32))
    g = CrystalGraph(ctype, np.concatenate(blocks), shapes, np.concatenate(comp))
    fill_arrows(g)
    return g


def fill_arrows(g: CrystalGraph) -> None:
    for i in g.ctype.colors:
        sig = batch_signature(g.words, i, g.ctype)
        g.eps[i], g.phi[i] = sig[0].astype(np.int16), sig[1].astype(np.int16)
        for op, store in (("f", g.f), ("e", g.e)):
            w, ok = batch_apply(op, i, g.words, g.ctype, sig)
            tgt = np.full(len(g), -1, dtype=np.int32)
            r = np.nonzero(ok)[0]
            found = g.index.lookup(w[r])
            if np.any(found < 0):
                raise RuntimeError(f"color {i} leaves the vertex set")
            tgt[r] = found
            store[i] = tgt
    g.weights = batch_weights(g.words, g.ctype)


def generate_component(shape: Sequence[int], ctype: ClassicalType) -> CrystalGraph:
    return build_graph(ctype, [shape])


def weyl_dimension(shape: Sequence[int], ctype: ClassicalType) -> int:
    """Dimension of the irreducible module of highest weight ``shape`` (Weyl's formula)."""
    m = ctype.weight_length
    lam = Partition(shape).padded(m)
    if ctype.family == "A":
        rho = [m - k for k in range(m)]
    elif ctype.family == "C":
        rho = [m - k for k in range(m)]
    else:
        rho = [m - 1 - k for k in range(m)]
    lr = [a + b for a, b in zip(lam, rho)]
    num = den = Fraction(1)
    for i in range(m):
        for j in range(i + 1, m):
            num *= lr[i] - lr[j]
            den *= rho[i] - rho[j]
            if ctype.family != "A":
                num *= lr[i] + lr[j]
                den *= rho[i] + rho[j]
        if ctype.family == "C":
            num *= lr[i]
            den *= rho[i]
    return int(num / den)
