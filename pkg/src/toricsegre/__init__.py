"""Characteristic classes of subschemes of smooth complete toric varieties."""

from .charclass import (
    DegreeTable,
    Subscheme,
    chern_fulton,
    csm,
    csm_complete_intersection,
    csm_hypersurface,
    csm_smooth_times_singular,
    euler,
    prepare_generators,
    projective_degrees,
    segre_class,
    singularity_subscheme,
)
from .chow import ChowClass, ChowRing, build_chow_ring, chern_tangent, invert_unit, point_class
from .fan import Fan, cox_ring, load_fan, product_of_projective_spaces, projective_space

__all__ = [
    "ChowClass",
    "ChowRing",
    "DegreeTable",
    "Fan",
    "Subscheme",
    "build_chow_ring",
    "chern_fulton",
    "chern_tangent",
    "cox_ring",
    "csm",
    "csm_complete_intersection",
    "csm_hypersurface",
    "csm_smooth_times_singular",
    "euler",
    "invert_unit",
    "load_fan",
    "point_class",
    "prepare_generators",
    "product_of_projective_spaces",
    "projective_degrees",
    "projective_space",
    "segre_class",
    "singularity_subscheme",
]
