"""Symbolic duration algebra.

The effective duration of a waveform is a scalar expression (or UNBOUNDED):

* leaf kinds: min of the configured duration and their waveform parameters
* Product/Div: min over items; Sum/Sub: max over items; Neg: its item
* Sequence and ClockSeq: sum over items

Clock slots (``carrier``, ``ref_clock``) are not waveform parameters here;
clocks run on global time and do not restrict the host's domain.
UNBOUNDED is dropped from a min and absorbs a max or sum.
"""

from __future__ import annotations

from .nodes import (
    UNBOUNDED,
    Clock,
    ClockSeq,
    Num,
    ScalarMax,
    ScalarMin,
    ScalarSum,
    Sequence,
    Waveform,
    WaveformDiv,
    WaveformNeg,
    WaveformOperator,
    WaveformProduct,
)


def _unique(exprs):
    out, seen = [], set()
    for e in exprs:
        if id(e) not in seen:
            seen.add(id(e))
            out.append(e)
    return out


def min_duration(exprs):
    bounded = _unique(e for e in exprs if e is not UNBOUNDED)
    if not bounded:
        return UNBOUNDED
    if len(bounded) == 1:
        return bounded[0]
    return ScalarMin(*bounded)


def max_duration(exprs):
    exprs = list(exprs)
    if any(e is UNBOUNDED for e in exprs):
        return UNBOUNDED
    exprs = _unique(exprs)
    if len(exprs) == 1:
        return exprs[0]
    return ScalarMax(*exprs)


def sum_duration(exprs):
    exprs = list(exprs)
    if any(e is UNBOUNDED for e in exprs):
        return UNBOUNDED
    if not exprs:
        return Num(0.0)
    if len(exprs) == 1:
        return exprs[0]
    return ScalarSum(*exprs)


def _build(w: Waveform):
    if isinstance(w, (Sequence, ClockSeq)):
        return sum_duration(duration_expr(i) for i in w.items)
    if isinstance(w, WaveformOperator):
        if isinstance(w, WaveformNeg):
            return duration_expr(w.items[0])
        if isinstance(w, (WaveformProduct, WaveformDiv)):
            return min_duration(duration_expr(i) for i in w.items)
        return max_duration(duration_expr(i) for i in w.items)
    if isinstance(w, Clock):
        return w.duration
    params = [child for (label, role), child in zip(w.roles, w._params) if role == "waveform"]
    if not params:
        return w.duration
    return min_duration([w.duration] + [duration_expr(p) for p in params])


def duration_expr(w: Waveform):
    """Effective duration of ``w`` as a scalar expression or UNBOUNDED.

    The result is cached on the node, so repeated calls return the same
    expression instance.
    """
    if not isinstance(w, Waveform):
        raise TypeError(f"duration_expr needs a waveform, got {type(w).__name__}")
    cached = w._duration_cache
    if cached is None:
        cached = _build(w)
        object.__setattr__(w, "_duration_cache", cached)
    return cached
