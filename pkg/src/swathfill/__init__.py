"""Toolkit for simulating, detecting, and filling swath gaps in RGB rasters."""

from .detect import GapStats, detect, stats_from_mask
from .errors import (
    CorruptFile,
    DegenerateMask,
    DimensionMismatch,
    GapTooLarge,
    InvalidPolygon,
    NoValidSource,
    SwathFillError,
    UnsupportedFormat,
)
from .fill import (
    FillPolicy,
    FillReport,
    NeighborConfig,
    fill,
    fill_neighbor_rgb,
    fill_pixel_rgb,
    fill_random_rgb,
)
from .gapsim import (
    AREA_FRACTION_CAP,
    DEFAULT_AREA_FRACTION,
    GapPosition,
    GapSpec,
    GapVariant,
    VARIANT_ORDER,
    contains_sentinel,
    inject_gap,
    inject_polygon_gap,
    make_variants,
    square_side,
)
from .metrics import (
    DetectabilityReport,
    boundary_band,
    compare_policies,
    evaluate,
    jensen_shannon,
)
from .raster import (
    BLACK,
    GapMask,
    Raster,
    SentinelColor,
    load_mask,
    load_raster,
    load_radius_map,
    mask_from_sentinel,
    save_mask,
    save_raster,
    save_radius_map,
    to_grayscale,
)
from .synthetic import CLASS_NAMES, make_corpus, make_image

__version__ = "0.1.0"

__all__ = [
    "AREA_FRACTION_CAP",
    "BLACK",
    "CLASS_NAMES",
    "CorruptFile",
    "DEFAULT_AREA_FRACTION",
    "DegenerateMask",
    "DetectabilityReport",
    "DimensionMismatch",
    "FillPolicy",
    "FillReport",
    "GapMask",
    "GapPosition",
    "GapSpec",
    "GapStats",
    "GapTooLarge",
    "GapVariant",
    "InvalidPolygon",
    "NeighborConfig",
    "NoValidSource",
    "Raster",
    "SentinelColor",
    "SwathFillError",
    "UnsupportedFormat",
    "VARIANT_ORDER",
    "boundary_band",
    "compare_policies",
    "contains_sentinel",
    "detect",
    "evaluate",
    "fill",
    "fill_neighbor_rgb",
    "fill_pixel_rgb",
    "fill_random_rgb",
    "inject_gap",
    "inject_polygon_gap",
    "jensen_shannon",
    "load_mask",
    "load_raster",
    "load_radius_map",
    "make_corpus",
    "make_image",
    "make_variants",
    "mask_from_sentinel",
    "save_mask",
    "save_raster",
    "save_radius_map",
    "square_side",
    "stats_from_mask",
    "to_grayscale",
]
