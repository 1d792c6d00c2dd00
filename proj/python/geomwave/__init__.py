"""Hermite multiwavelet transforms for vector and manifold-valued data."""

from ._geomwave import (
    DensityError,
    GeomwaveError,
    InvalidArgument,
    Manifold,
    MismatchError,
    SchemaError,
    UndefinedRatioError,
    decay,
    decompose,
    decompose_manifold,
    manifold,
    mask,
    reconstruct,
    reconstruct_manifold,
    sample,
    subdivide,
    symbol_residuals,
    verify,
)

__all__ = [
    "DensityError",
    "GeomwaveError",
    "InvalidArgument",
    "Manifold",
    "MismatchError",
    "SchemaError",
    "UndefinedRatioError",
    "decay",
    "decompose",
    "decompose_manifold",
    "manifold",
    "mask",
    "reconstruct",
    "reconstruct_manifold",
    "sample",
    "subdivide",
    "symbol_residuals",
    "verify",
]
