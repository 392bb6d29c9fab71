"""Baseline grayscale JPEG coefficient codec and sidecar exchange."""

from .decoder import parse_jpeg
from .encoder import serialize_jpeg
from .image import HuffmanSpec, JpegImage, count_nonzero_ac
from .qtables import infer_quality, standard_table
from .sidecar import dump_sidecar, load_sidecar

__all__ = [
    "HuffmanSpec",
    "JpegImage",
    "count_nonzero_ac",
    "dump_sidecar",
    "infer_quality",
    "load_sidecar",
    "parse_jpeg",
    "serialize_jpeg",
    "standard_table",
]
