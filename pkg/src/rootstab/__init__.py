"""Exact-rational calculus of tilt stability conditions on surface root stacks."""

from fractions import Fraction

from .errors import RootStabError
from .numlat import DivisorClass, RootStackConfig, build_config, pair, signature
from .chern import (
    CRClass,
    NumClass,
    ParabolicData,
    discriminant,
    bogomolov_ok,
    gerbe_sheaf_class,
    orbifold_ch,
    sector_pushforward,
    tensor_exp,
    twist_b,
)
from .stab import Charge, ChargeParams, HNData, charge, charge_deformed, sigma_slope
from .walls import WallLocus, wall_locus, on_wall, destabilizer_candidates
from .support import explicit_constants, kernel_form_check, norm_b_transform

__all__ = [
    "Fraction",
    "RootStabError",
    "DivisorClass",
    "RootStackConfig",
    "build_config",
    "pair",
    "signature",
    "NumClass",
    "CRClass",
    "ParabolicData",
    "twist_b",
    "tensor_exp",
    "discriminant",
    "bogomolov_ok",
    "gerbe_sheaf_class",
    "sector_pushforward",
    "orbifold_ch",
    "Charge",
    "ChargeParams",
    "HNData",
    "charge",
    "charge_deformed",
    "sigma_slope",
    "WallLocus",
    "wall_locus",
    "on_wall",
    "destabilizer_candidates",
    "explicit_constants",
    "kernel_form_check",
    "norm_b_transform",
]
