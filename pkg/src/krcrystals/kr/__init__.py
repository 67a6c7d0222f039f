"""KR crystals, the flip automorphism and tensor products."""

from .crystal import (
    CACHE_ENV,
    KRCrystal,
    build_kr,
    cache_dir,
    clear_cache,
    clear_memory_cache,
    kr_crystal,
    list_cache,
)
from .sigma import check_flip, compute_sigma, gl_structure
from .spec import AlgebraSpec, KRSpec, kr_components, projected_size
from .tensor import Element, TensorProduct


def apply_affine(op, i, b, tensor):
    """e_i / f_i for any color 0..n on a tensor element (None when undefined)."""
    return tensor.apply(op, i, b)


def is_max(b, tensor):
    return tensor.is_max(b)


__all__ = [
    "AlgebraSpec", "KRSpec", "KRCrystal", "TensorProduct", "Element", "CACHE_ENV",
    "kr_components", "projected_size", "build_kr", "kr_crystal", "compute_sigma", "check_flip", "gl_structure",
    "apply_affine", "is_max", "cache_dir", "list_cache", "clear_cache", "clear_memory_cache",
]
