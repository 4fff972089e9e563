"""Exact verification kernel for finite DG-categories and their functor towers."""

from .fields import QQ, PrimeField, RationalField, field_from_spec, field_to_spec
from .linalg import KERNEL_NAME, AffineBuilder, AffineSystem, Matrix, solve_affine

__version__ = "0.1.0"
