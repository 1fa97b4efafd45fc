"""Sample emission for arbitrary waveform generators."""

from __future__ import annotations

import io

from ..evaluate import SampleBlock, render


def emit_samples(w, sample_rate: float, t0: float = 0.0) -> SampleBlock:
    return render(w, sample_rate, t0)


def to_csv(block: SampleBlock) -> str:
    """CSV with header ``index,time_s,value``."""
    buf = io.StringIO()
    buf.write("index,time_s,value\n")
    for k, (t, v) in enumerate(zip(block.times, block.values)):
        buf.write(f"{k},{t:.12g},{v:.9g}\n")
    return buf.getvalue()
