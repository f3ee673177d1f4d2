"""certoset: certified computation on exact reals and totally bounded sets.

Lazy three-valued semi-decisions, dyadic-interval exact reals with limit
operators, max-norm Euclidean space, totally bounded coverings with a set
calculus (union, affine maps, images, Hausdorff limits), compactness and
overtness testers, and fractal attractors drawable at any resolution.
"""

from ._kernels import BACKEND as kernel_backend
from .dyadic import Dyadic, Interval, pow2
from .effort import EffortCeilingExceeded, effort_ceiling
from .kleenean import (
    Kleenean,
    Side,
    Sierpinski,
    countable_or,
    countable_select,
    indicator_sequence,
    kleene_and,
    kleene_not,
    kleene_or,
    select_binary,
    sierpinski_and,
    sierpinski_countable_or,
)
from .real import (
    CReal,
    abs_,
    add,
    approx_dyadic,
    arith,
    creal_from_dyadic,
    creal_from_fraction,
    creal_from_function,
    creal_from_int,
    extended_limit,
    limit,
    lt_semidec,
    max_,
    min_,
    mul,
    neg,
    scale_by_dyadic,
    soft_compare,
    sub,
    translate_by_dyadic,
)
from .space import (
    MetricSpace,
    Point,
    approx_point,
    dense_index,
    dense_index_near,
    dense_point,
    euclidean_space,
    max_norm_dist,
    point_from_dyadics,
    point_limit,
)
from .covers import (
    TBSet,
    centered_covering,
    choose_point,
    empty_set,
    finite_point_set,
    hausdorff_distance,
    hausdorff_finite,
    limit_diagnostics,
    map_image,
    scale_translate,
    set_distance,
    set_limit,
    set_union,
    singleton,
)
from .opensets import (
    Ball,
    ClosedSet,
    OpenSet,
    SpyPoint,
    choose_from_open,
    continuity_modulus,
    intersection_member,
    meets_test,
    subset_test,
)
from .fractals import (
    IFS,
    attractor_via_limit,
    cube,
    ifs_attractor,
    load_ifs,
    make_ifs,
    sierpinski_triangle,
    sqrt3,
    triangle,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "ClosedSet",
    "CReal",
    "Dyadic",
    "EffortCeilingExceeded",
    "IFS",
    "Interval",
    "Kleenean",
    "MetricSpace",
    "OpenSet",
    "Point",
    "Side",
    "Sierpinski",
    "SpyPoint",
    "TBSet",
    "abs_",
    "add",
    "approx_dyadic",
    "approx_point",
    "arith",
    "centered_covering",
    "attractor_via_limit",
    "choose_from_open",
    "choose_point",
    "continuity_modulus",
    "countable_or",
    "countable_select",
    "creal_from_dyadic",
    "creal_from_fraction",
    "creal_from_function",
    "creal_from_int",
    "cube",
    "dense_index",
    "dense_index_near",
    "dense_point",
    "effort_ceiling",
    "empty_set",
    "euclidean_space",
    "extended_limit",
    "finite_point_set",
    "hausdorff_distance",
    "hausdorff_finite",
    "ifs_attractor",
    "indicator_sequence",
    "intersection_member",
    "kernel_backend",
    "kleene_and",
    "kleene_not",
    "kleene_or",
    "limit",
    "limit_diagnostics",
    "load_ifs",
    "lt_semidec",
    "make_ifs",
    "map_image",
    "max_",
    "max_norm_dist",
    "meets_test",
    "min_",
    "mul",
    "neg",
    "point_from_dyadics",
    "point_limit",
    "pow2",
    "scale_by_dyadic",
    "scale_translate",
    "select_binary",
    "set_distance",
    "set_limit",
    "set_union",
    "sierpinski_and",
    "sierpinski_countable_or",
    "sierpinski_triangle",
    "singleton",
    "soft_compare",
    "sqrt3",
    "sub",
    "subset_test",
    "translate_by_dyadic",
    "triangle",
]
