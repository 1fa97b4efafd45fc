"""Lowering backends: DOT text, AWG samples and DDS segments."""

from .dds import DdsMuncher, DdsSegment, munch_dds, segments_to_json, synthesize
from .dot import to_dot
from .samples import emit_samples, to_csv

__all__ = [
    "DdsMuncher",
    "DdsSegment",
    "emit_samples",
    "munch_dds",
    "segments_to_json",
    "synthesize",
    "to_csv",
    "to_dot",
]
