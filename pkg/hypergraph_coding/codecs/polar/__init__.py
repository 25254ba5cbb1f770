"""Randomized quantization with polar coding for a binary W."""

from hypergraph_coding.codecs.polar.codec import (
    PolarRunReport,
    load_transmitted,
    polar_decode,
    polar_decode_blocks,
    polar_encode,
    polar_encode_blocks,
    run_polar_blocks,
    save_transmitted,
)
from hypergraph_coding.codecs.polar.design import (
    PolarDesign,
    PolarizationEstimate,
    bhattacharyya,
    design_from_instance,
    estimate_polarization,
    load_design,
    save_design,
    select_sets,
)
from hypergraph_coding.codecs.polar.transform import block_exponent, polar_transform

__all__ = [
    "PolarDesign",
    "PolarRunReport",
    "PolarizationEstimate",
    "bhattacharyya",
    "block_exponent",
    "design_from_instance",
    "estimate_polarization",
    "load_design",
    "load_transmitted",
    "polar_decode",
    "polar_decode_blocks",
    "polar_encode",
    "polar_encode_blocks",
    "polar_transform",
    "run_polar_blocks",
    "save_design",
    "save_transmitted",
    "select_sets",
]
