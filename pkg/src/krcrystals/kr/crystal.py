"""KR crystals B^{r,s} with their 0-arrows, built once and cached on disk."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ..classical import CrystalGraph, batch_weights, build_graph, highest_word
from ..combinat import Partition
from ..typea import promotion
from .sigma import affine_e0, compute_sigma
from .spec import AlgebraSpec, KRSpec, kr_components

log = logging.getLogger(__name__)

CACHE_ENV = "KRC_CACHE_DIR"
FORMAT_VERSION = 2


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "krcrystals"


@dataclass
class KRCrystal:
    """B^{r,s}: classical graph plus the affine color 0.

    Elements are integer indices.  ``graph.e[i]``/``graph.f[i]`` hold the
    operators for every color 0..n, with -1 for "undefined".
    """

    spec: KRSpec
    graph: CrystalGraph
    # flip automorphism (types C, D) or promotion (type A), as a permutation
    twist: np.ndarray

    def __post_init__(self):
        self.u = self.graph.find_word(highest_word(self.graph.shapes[0]))
        self._install_zero()

    @property
    def algebra(self) -> AlgebraSpec:
        return self.spec.algebra

    @property
    def r(self) -> int:
        return self.spec.r

    @property
    def s(self) -> int:
        return self.spec.s

    @property
    def sigma(self) -> np.ndarray:
        if self.algebra.family == "A":
            raise AttributeError("type A crystals carry promotion, not a flip")
        return self.twist

    def __len__(self):
        return len(self.graph)

    def _install_zero(self):
        g, n = self.graph, self.algebra.n
        if self.algebra.family == "A":
            pr = self.twist.astype(np.int64)
            pr_inv = np.empty_like(pr)
            pr_inv[pr] = np.arange(len(pr))
            e0 = _through(pr, g.e[1], pr_inv)
            f0 = _through(pr, g.f[1], pr_inv)
            g.eps[0], g.phi[0] = g.eps[1][pr], g.phi[1][pr]
        else:
            sig = self.twist.astype(np.int64)
            e0 = affine_e0(sig, g.e[n].astype(np.int64))
            f0 = affine_e0(sig, g.f[n].astype(np.int64))
            g.eps[0], g.phi[0] = g.eps[n][sig], g.phi[n][sig]
        g.e[0], g.f[0] = e0.astype(np.int32), f0.astype(np.int32)

    # element helpers
    def find(self, columns: Sequence[Sequence[int]]) -> int:
        k = self.graph.find(columns)
        if k < 0:
            raise KeyError(f"{[list(c) for c in columns]} is not an element of {self.spec}")
        return k

    def columns(self, k: int):
        return self.graph.columns(k)

    def shape_of(self, k: int) -> Partition:
        return self.graph.shape_of(k)

    def weight(self, k: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.graph.weights[k])


def _through(pre: np.ndarray, op: np.ndarray, post: np.ndarray) -> np.ndarray:
    """post . op . pre on index arrays with -1 for undefined."""
    mid = op[pre]
    out = np.full(len(pre), -1, dtype=np.int64)
    ok = mid >= 0
    out[ok] = post[mid[ok]]
    return out


def _promotion_perm(g: CrystalGraph) -> np.ndarray:
    n_letters = g.ctype.max_letter
    perm = np.empty(len(g), dtype=np.int32)
    for k in range(len(g)):
        perm[k] = g.find(promotion(g.columns(k), n_letters))
    if np.any(perm < 0) or len(np.unique(perm)) != len(g):
        raise RuntimeError("promotion is not a permutation of the crystal")
    return perm


def _checksum(arrays: dict[str, np.ndarray]) -> str:
    h = hashlib.sha256()
    for name in sorted(arrays):
        h.update(name.encode())
        h.update(np.ascontiguousarray(arrays[name]).tobytes())
    return h.hexdigest()


def cache_file(spec: KRSpec, directory: Path) -> Path:
    a = spec.algebra
    return directory / f"{a.family}{a.n}_r{spec.r}_s{spec.s}.npz"


def _load(spec: KRSpec, path: Path):
    try:
        with np.load(path, allow_pickle=False) as data:
            meta = json.loads(str(data["meta"]))
            arrays = {k: data[k] for k in data.files if k != "meta"}
    except Exception as exc:  # unreadable or truncated file
        log.warning("ignoring unreadable cache file %s (%s)", path, exc)
        return None
    a = spec.algebra
    expected = {"version": FORMAT_VERSION, "family": a.family, "n": a.n, "r": spec.r, "s": spec.s}
    if any(meta.get(k) != v for k, v in expected.items()):
        log.warning("cache file %s has stale metadata; rebuilding", path)
        return None
    if meta.get("checksum") != _checksum(arrays):
        log.warning("checksum mismatch in %s; rebuilding", path)
        return None
    return arrays, [Partition(s) for s in meta["shapes"]]


def _save(spec: KRSpec, path: Path, arrays: dict[str, np.ndarray], shapes) -> None:
    a = spec.algebra
    meta = {
        "version": FORMAT_VERSION,
        "family": a.family,
        "n": a.n,
        "r": spec.r,
        "s": spec.s,
        "shapes": [list(s) for s in shapes],
        "checksum": _checksum(arrays),
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            np.savez(fh, meta=np.array(json.dumps(meta)), **arrays)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _graph_arrays(g: CrystalGraph, twist: np.ndarray) -> dict[str, np.ndarray]:
    arrays = {"words": g.words, "comp": g.comp, "twist": twist}
    for i in g.ctype.colors:
        arrays[f"f{i}"] = g.f[i]
        arrays[f"eps{i}"] = g.eps[i].astype(np.int8)
        arrays[f"phi{i}"] = g.phi[i].astype(np.int8)
    return arrays


def _graph_from_arrays(ct, shapes, arrays) -> CrystalGraph:
    g = CrystalGraph(ct, arrays["words"], shapes, arrays["comp"])
    for i in ct.colors:
        f = arrays[f"f{i}"].astype(np.int32)
        e = np.full(len(f), -1, dtype=np.int32)
        src = np.nonzero(f >= 0)[0]
        e[f[src]] = src
        g.f[i], g.e[i] = f, e
        g.eps[i] = arrays[f"eps{i}"].astype(np.int16)
        g.phi[i] = arrays[f"phi{i}"].astype(np.int16)
    g.weights = batch_weights(g.words, ct)
    return g


_memo: dict[KRSpec, KRCrystal] = {}
_memo_lock = threading.Lock()


def build_kr(spec: KRSpec, use_cache: bool = True, directory: str | os.PathLike | None = None) -> KRCrystal:
    """Build (or load) B^{r,s} together with its flip or promotion."""
    with _memo_lock:
        if spec in _memo:
            return _memo[spec]
    ct = spec.algebra.classical
    path = cache_file(spec, cache_dir(directory))
    loaded = _load(spec, path) if use_cache and path.exists() else None
    if loaded is not None:
        arrays, shapes = loaded
        g = _graph_from_arrays(ct, shapes, arrays)
        twist = arrays["twist"]
    else:
        shapes = list(kr_components(spec))
        g = build_graph(ct, shapes)
        twist = _promotion_perm(g) if spec.algebra.family == "A" else compute_sigma(g)
        if use_cache:
            try:
                _save(spec, path, _graph_arrays(g, twist), shapes)
            except OSError as exc:
                log.warning("could not write cache file %s (%s)", path, exc)
    k = KRCrystal(spec, g, twist)
    with _memo_lock:
        _memo.setdefault(spec, k)
        return _memo[spec]


def clear_memory_cache() -> None:
    with _memo_lock:
        _memo.clear()


def list_cache(directory=None) -> list[dict]:
    out = []
    d = cache_dir(directory)
    for p in sorted(d.glob("*.npz")) if d.exists() else []:
        entry = {"file": p.name, "bytes": p.stat().st_size}
        try:
            with np.load(p, allow_pickle=False) as data:
                meta = json.loads(str(data["meta"]))
            entry.update({k: meta.get(k) for k in ("version", "family", "n", "r", "s")})
        except Exception:
            entry["corrupt"] = True
        out.append(entry)
    return out


def clear_cache(directory=None) -> int:
    d = cache_dir(directory)
    removed = 0
    for p in d.glob("*.npz") if d.exists() else []:
        p.unlink()
        removed += 1
    clear_memory_cache()
    return removed


def kr_crystal(family: str, n: int, r: int, s: int, **kw) -> KRCrystal:
    return build_kr(KRSpec(AlgebraSpec(family, n), r, s), **kw)
