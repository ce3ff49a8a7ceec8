"""Exact Hahn polynomials with negative integer parameters on lattice domains."""
from .exact import Undefined, is_undefined, pochhammer
from .hahn1d import Params1D, hahn_sQ, norm_B
from .hahnmd import Normalization, hahn_md, norm_B_nu, sQ_nu_poly
from .lattice import LatticeParams
from .poly import Poly

__all__ = [
    "LatticeParams", "Normalization", "Params1D", "Poly", "Undefined",
    "hahn_md", "hahn_sQ", "is_undefined", "norm_B", "norm_B_nu", "pochhammer", "sQ_nu_poly",
]
