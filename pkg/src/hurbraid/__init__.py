"""Braid orbits on Nielsen classes of affine primitive permutation groups."""
from .perm import Permutation, parse_cycles, format_cycles, parse_images, format_images
from .group import PermGroup

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "PermGroup",
    "parse_cycles",
    "format_cycles",
    "parse_images",
    "format_images",
]
