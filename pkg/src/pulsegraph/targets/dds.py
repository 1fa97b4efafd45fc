"""Lowering to direct digital synthesis segments by maximal munch.

A DDS plays a list of (duration, frequency, amplitude, phase) segments. The
muncher flattens the top-level sequence and matches each item against a
fixed list of patterns, most specific first:

1. Sine with constant amplitude, frequency and phase
2. SineFM / SinePM with constant modulation (expanded, then pattern 1)
3. Zero, or Const with value 0 (silent segment)
4. Product of a pattern 1/2 sine and a Const (scaled amplitude)

Anything else raises :class:`UnsupportedWaveform`; the DDS cannot play it.
Segments carry SI floats. Register word encoding is hardware specific and
left to drivers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import NegativeDuration, UnboundedDuration, UnsupportedWaveform
from ..evaluate import TWO_PI, Evaluator, SampleBlock, expand_sine_fm, expand_sine_pm, sample_count, sample_times
from ..nodes import Const, Node, PhaseMode, Sequence, Sine, SineFM, SinePM, Waveform, WaveformProduct, WaveformSum, Zero


@dataclass(frozen=True)
class DdsSegment:
    duration: float
    frequency: float
    amplitude: float
    phase: float
    phase_mode: PhaseMode = PhaseMode.ABSOLUTE
    ref_phase_at_start: float | None = None
    ref_clock: Node | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        out = {
            "duration_s": self.duration,
            "frequency_hz": self.frequency,
            "amplitude": self.amplitude,
            "phase_rad": self.phase,
            "phase_mode": self.phase_mode.value,
        }
        if self.ref_phase_at_start is not None:
            out["ref_phase_rad"] = self.ref_phase_at_start
        return out


class DdsMuncher:
    """Greedy left-to-right pattern matcher over a flattened sequence."""

    def __init__(self, evaluator: Evaluator | None = None):
        self._ev = evaluator or Evaluator()

    def munch(self, w: Waveform, t0: float = 0.0) -> list[DdsSegment]:
        total = self._ev.duration(w)
        if math.isinf(total):
            raise UnboundedDuration(f"cannot munch unbounded {w.kind}", path=())
        segments = []
        start = float(t0)
        for path, item in self._flatten(w, ()):
            d = self._ev.duration(item)
            if d < 0:
                raise NegativeDuration(f"{item.kind} has negative duration {d!r}", path=path)
            if d > 0:
                segments.append(self._match(item, path, start, d))
            start = start + d
        return segments

    def _flatten(self, w, path):
        if isinstance(w, Sequence):
            for i, item in enumerate(w.items):
                yield from self._flatten(item, path + (str(i),))
        else:
            yield path, w

    def _constant(self, w) -> float | None:
        if isinstance(w, Const):
            return self._ev.scalar(w.value)
        if isinstance(w, WaveformSum):
            vals = [self._constant(i) for i in w.items]
            if any(v is None for v in vals):
                return None
            total = vals[0]
            for v in vals[1:]:
                total = total + v
            return total
        return None

    def _sine(self, w, path, start, d) -> DdsSegment | None:
        if isinstance(w, SineFM):
            if not isinstance(w.modulation, Const):
                raise UnsupportedWaveform(w.kind, path=path + ("modulation",), reason="modulation is not constant")
            w = expand_sine_fm(w)
        elif isinstance(w, SinePM):
            if not isinstance(w.modulation, Const):
                raise UnsupportedWaveform(w.kind, path=path + ("modulation",), reason="modulation is not constant")
            w = expand_sine_pm(w)
        if not isinstance(w, Sine):
            return None
        values = {}
        for label in ("amplitude", "frequency", "phase"):
            v = self._constant(getattr(w, label))
            if v is None:
                raise UnsupportedWaveform(w.kind, path=path + (label,), reason=f"{label} is not constant")
            values[label] = v
        ref_phase = None
        if w.phase_mode is PhaseMode.CONTINUOUS:
            ref_phase = float(self._ev.clock_phase(w.ref_clock, start))
        return DdsSegment(
            d, values["frequency"], values["amplitude"], values["phase"],
            w.phase_mode, ref_phase, w.ref_clock,
        )

    def _match(self, item, path, start, d) -> DdsSegment:
        seg = self._sine(item, path, start, d)
        if seg is not None:
            return seg
        if isinstance(item, Zero) or (isinstance(item, Const) and self._ev.scalar(item.value) == 0):
            return DdsSegment(d, 0.0, 0.0, 0.0)
        if isinstance(item, WaveformProduct) and len(item.items) == 2:
            a, b = item.items
            for sine, scale, i in ((a, b, 0), (b, a, 1)):
                if isinstance(scale, Const) and sine.kind in ("Sine", "SineFM", "SinePM"):
                    seg = self._sine(sine, path + (str(i),), start, d)
                    k = self._ev.scalar(scale.value)
                    return DdsSegment(
                        d, seg.frequency, seg.amplitude * k, seg.phase,
                        seg.phase_mode, seg.ref_phase_at_start, seg.ref_clock,
                    )
        raise UnsupportedWaveform(item.kind, path=path)


def munch_dds(w: Waveform, t0: float = 0.0) -> list[DdsSegment]:
    return DdsMuncher().munch(w, t0)


def synthesize(segments, sample_rate: float, t0: float = 0.0, n: int | None = None) -> SampleBlock:
    """Samples a DDS would produce when playing ``segments`` from ``t0``."""
    total = 0.0
    for seg in segments:
        total = total + seg.duration
    if n is None:
        n = sample_count(total, sample_rate)
    t = sample_times(t0, sample_rate, n)
    out = np.zeros(n)
    start = float(t0)
    for seg in segments:
        mask = (t >= start) & (t < start + seg.duration)
        if mask.any():
            tau = t[mask] - start
            if seg.phase_mode is PhaseMode.CONTINUOUS:
                arg = (seg.ref_phase_at_start + TWO_PI * seg.frequency * tau) + seg.phase
            else:
                arg = TWO_PI * seg.frequency * tau + seg.phase
            out[mask] = seg.amplitude * np.sin(arg)
        start = start + seg.duration
    return SampleBlock(float(sample_rate), float(t0), out)


def segments_to_json(segments) -> list[dict]:
    return [s.to_json() for s in segments]
