"""Numeric evaluation of bound graphs: scalars, clock phases, waveform values.

Waveforms are evaluated over numpy arrays of absolute times. A waveform
started at ``t_start`` is zero outside ``[t_start, t_start + d)``. Its
waveform parameters are evaluated at the same absolute times with the same
``t_start``; only Sequence items see a shifted start.
"""

from __future__ import annotations

import functools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .duration import duration_expr
from .errors import (
    DivisionByZero,
    InvalidNode,
    NegativeDuration,
    SingularPower,
    UnboundedDuration,
    UnboundVariable,
)
from .nodes import (
    UNBOUNDED,
    Clock,
    ClockSeq,
    Const,
    Node,
    PhaseMode,
    Scalar,
    Sine,
    SineFM,
    SinePM,
    Waveform,
    WaveformSum,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SampleBlock:
    sample_rate: float
    t0: float
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        return sample_times(self.t0, self.sample_rate, len(self.values))


def sample_times(t0: float, sample_rate: float, n: int) -> np.ndarray:
    return t0 + np.arange(n) / sample_rate


def sample_count(duration: float, sample_rate: float) -> int:
    """ceil(duration * rate), snapping products within 1e-9 of an integer."""
    x = duration * sample_rate
    nearest = round(x)
    if abs(x - nearest) <= 1e-9 * max(1.0, abs(x)):
        return max(int(nearest), 0)
    return max(math.ceil(x), 0)


class Evaluator:
    """Memoizing evaluator. One instance may be reused for many calls."""

    def __init__(self):
        self._scalars: dict[int, tuple[Node, float]] = {}
        self._durations: dict[int, tuple[Node, float]] = {}
        self._clocks: dict[int, tuple[Node, tuple]] = {}

    # ------------------------------------------------------------ scalars

    def scalar(self, s: Scalar) -> float:
        """Value of ``s``, computed exactly and rounded once to a float."""
        return float(self._exact(s))

    def _exact(self, s: Scalar):
        hit = self._scalars.get(id(s))
        if hit is not None:
            return hit[1]
        value = self._compute_scalar(s)
        self._scalars[id(s)] = (s, value)
        return value

    def _compute_scalar(self, s: Scalar):
        # Fractions keep sums like d + (T - d) exactly equal to T; non-finite
        # numbers stay floats and arithmetic degrades to float gracefully.
        kind = s.kind
        if kind == "Num":
            v = s.value
            return Fraction(v) if math.isfinite(v) else float(v)
        if kind == "Var":
            raise UnboundVariable(s.key)
        if not isinstance(s, Scalar):
            raise TypeError(f"expected a scalar, got {s.kind}")
        vals = [self._exact(i) for i in s.items]
        if kind == "ScalarSum":
            return functools.reduce(operator.add, vals)
        if kind == "ScalarProduct":
            return functools.reduce(operator.mul, vals)
        if kind == "ScalarSub":
            return vals[0] - vals[1]
        if kind == "ScalarDiv":
            if vals[1] == 0:
                raise DivisionByZero("scalar division by zero")
            return vals[0] / vals[1]
        if kind == "ScalarNeg":
            return -vals[0]
        if kind == "ScalarMin":
            return min(vals)
        if kind == "ScalarMax":
            return max(vals)
        raise TypeError(f"unknown scalar kind {kind}")  # pragma: no cover

    def duration(self, w: Waveform) -> float:
        """Resolved effective duration; ``math.inf`` when unbounded."""
        hit = self._durations.get(id(w))
        if hit is not None:
            return hit[1]
        expr = duration_expr(w)
        value = math.inf if expr is UNBOUNDED else self.scalar(expr)
        self._durations[id(w)] = (w, value)
        return value

    # ------------------------------------------------------------- clocks

    def clock_segments(self, c: Waveform) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(segment start times, frequencies, phases at segment start)."""
        hit = self._clocks.get(id(c))
        if hit is not None:
            return hit[1]
        if isinstance(c, Clock):
            clocks = [c]
        elif isinstance(c, ClockSeq):
            clocks = list(c.items)
        else:
            raise TypeError(f"expected a Clock or ClockSeq, got {c.kind}")
        starts, freqs, phases = [], [], []
        t = 0.0
        phase = self.scalar(clocks[0].phase)
        for clock in clocks:
            f = self.scalar(clock.frequency)
            starts.append(t)
            freqs.append(f)
            phases.append(phase)
            d = self.duration(clock)
            if math.isinf(d):
                break
            phase = phase + TWO_PI * f * d
            t = t + d
        segs = (np.array(starts), np.array(freqs), np.array(phases))
        self._clocks[id(c)] = (c, segs)
        return segs

    def clock_phase(self, c: Waveform, tau):
        """Phase of clock ``c`` at absolute time ``tau`` (scalar or array)."""
        arr = np.asarray(tau, dtype=float)
        if np.any(arr < 0):
            raise ValueError("clock phase is undefined before t = 0")
        starts, freqs, phases = self.clock_segments(c)
        k = np.searchsorted(starts, arr, side="right") - 1
        out = phases[k] + TWO_PI * freqs[k] * (arr - starts[k])
        return float(out) if out.ndim == 0 else out

    # ---------------------------------------------------------- waveforms

    def values(self, w: Waveform, t: np.ndarray, t_start: float) -> np.ndarray:
        d = self.duration(w)
        if d < 0:
            raise NegativeDuration(f"{w.kind} has negative duration {d!r}")
        inside = (t >= t_start) & (t < t_start + d)
        out = np.zeros(t.shape, dtype=float)
        if inside.any():
            out[inside] = self._inside(w, t[inside], t_start, d)
        return out

    def _inside(self, w: Waveform, t: np.ndarray, t_start: float, d: float) -> np.ndarray:
        method = getattr(self, f"_eval_{w.kind}", None)
        if method is None:
            raise TypeError(f"cannot evaluate {w.kind}")
        return method(w, t, t_start, d)

    def _eval_Const(self, w, t, t_start, d):
        return np.full(t.shape, self.scalar(w.value))

    def _eval_Zero(self, w, t, t_start, d):
        return np.zeros(t.shape)

    def _eval_Ramp(self, w, t, t_start, d):
        a = self.scalar(w.start_value)
        b = self.scalar(w.stop_value)
        return a + (b - a) * ((t - t_start) / d)

    def _eval_Triangle(self, w, t, t_start, d):
        a = self.scalar(w.amplitude)
        return a * (1.0 - np.abs(2.0 * (t - t_start) / d - 1.0))

    def _eval_Gaussian(self, w, t, t_start, d):
        a = self.scalar(w.amplitude)
        sigma = self.scalar(w.sigma)
        if sigma == 0:
            raise DivisionByZero("Gaussian sigma is zero")
        x = (t - t_start) - d / 2.0
        return a * np.exp(-(x * x) / (2.0 * sigma * sigma))

    def _eval_Polynomial(self, w, t, t_start, d):
        tau = t - t_start
        out = np.zeros(t.shape)
        for c in reversed(w.coefficients):
            out = out * tau + self.scalar(c)
        return out

    def _eval_Power(self, w, t, t_start, d):
        scale = self.scalar(w.scale)
        exponent = self.scalar(w.exponent)
        tau = t - t_start
        if exponent < 0 and np.any(tau == 0):
            raise SingularPower(f"negative exponent {exponent!r} at tau = 0")
        return scale * np.power(tau, exponent)

    def _eval_Clock(self, w, t, t_start, d):
        return np.sin(self.clock_phase(w, t))

    _eval_ClockSeq = _eval_Clock

    def _eval_Sine(self, w, t, t_start, d):
        a = self.values(w.amplitude, t, t_start)
        f = self.values(w.frequency, t, t_start)
        p = self.values(w.phase, t, t_start)
        tau = t - t_start
        if w.phase_mode is PhaseMode.CONTINUOUS:
            phi0 = self.clock_phase(w.ref_clock, t_start)
            arg = (phi0 + TWO_PI * f * tau) + p
        else:
            arg = TWO_PI * f * tau + p
        return a * np.sin(arg)

    def _eval_SineFM(self, w, t, t_start, d):
        a = self.values(w.amplitude, t, t_start)
        fc = self.scalar(w.carrier.frequency)
        m = self.values(w.modulation, t, t_start)
        p = self.values(w.phase, t, t_start)
        phi0 = self.clock_phase(w.carrier, t_start)
        arg = (phi0 + TWO_PI * (fc + m) * (t - t_start)) + p
        return a * np.sin(arg)

    def _eval_SinePM(self, w, t, t_start, d):
        a = self.values(w.amplitude, t, t_start)
        fc = np.full(t.shape, self.scalar(w.carrier.frequency))
        m = self.values(w.modulation, t, t_start)
        p = self.values(w.phase, t, t_start)
        phi0 = self.clock_phase(w.carrier, t_start)
        arg = (phi0 + TWO_PI * fc * (t - t_start)) + (m + p)
        return a * np.sin(arg)

    def _items(self, w, t, t_start):
        return [self.values(i, t, t_start) for i in w.items]

    def _eval_WaveformSum(self, w, t, t_start, d):
        return functools.reduce(operator.add, self._items(w, t, t_start))

    def _eval_WaveformSub(self, w, t, t_start, d):
        a, b = self._items(w, t, t_start)
        return a - b

    def _eval_WaveformProduct(self, w, t, t_start, d):
        return functools.reduce(operator.mul, self._items(w, t, t_start))

    def _eval_WaveformDiv(self, w, t, t_start, d):
        a, b = self._items(w, t, t_start)
        if np.any(b == 0):
            raise DivisionByZero("waveform divisor is zero inside the domain")
        return a / b

    def _eval_WaveformNeg(self, w, t, t_start, d):
        return -self.values(w.items[0], t, t_start)

    def _eval_Sequence(self, w, t, t_start, d):
        out = np.zeros(t.shape)
        start = t_start
        for item in w.items:
            di = self.duration(item)
            if di < 0:
                raise NegativeDuration(f"{item.kind} has negative duration {di!r}")
            mask = (t >= start) & (t < start + di)
            if mask.any():
                out[mask] = self.values(item, t[mask], start)
            start = start + di
        return out

    # ------------------------------------------------------------- render

    def render(self, w: Waveform, sample_rate: float, t0: float = 0.0) -> SampleBlock:
        if not sample_rate > 0:
            raise ValueError("sample_rate must be positive")
        d = self.duration(w)
        if math.isinf(d):
            raise UnboundedDuration(f"cannot render unbounded {w.kind}")
        if d < 0:
            raise NegativeDuration(f"{w.kind} has negative duration {d!r}")
        n = sample_count(d, sample_rate)
        t = sample_times(t0, sample_rate, n)
        return SampleBlock(float(sample_rate), float(t0), self.values(w, t, t0))


def resolve_scalar(s: Scalar) -> float:
    return Evaluator().scalar(s)


def resolve_duration(w: Waveform) -> float:
    """Effective duration in seconds; ``math.inf`` for unbounded waveforms."""
    return Evaluator().duration(w)


def clock_phase(c: Waveform, tau):
    return Evaluator().clock_phase(c, tau)


def value_at(w: Waveform, t: float, t_start: float = 0.0) -> float:
    return float(Evaluator().values(w, np.array([float(t)]), float(t_start))[0])


def render(w: Waveform, sample_rate: float, t0: float = 0.0) -> SampleBlock:
    return Evaluator().render(w, sample_rate, t0)


def expand_sine_fm(w: SineFM) -> Sine:
    """Rewrite a SineFM as a continuous Sine on its carrier."""
    if not isinstance(w, SineFM):
        raise InvalidNode(f"expected SineFM, got {w.kind}")
    d = duration_expr(w)
    frequency = WaveformSum(Const(w.carrier.frequency, d), w.modulation)
    return Sine(w.amplitude, frequency, w.phase, d, PhaseMode.CONTINUOUS, ref_clock=w.carrier)


def expand_sine_pm(w: SinePM) -> Sine:
    """Rewrite a SinePM as a continuous Sine on its carrier."""
    if not isinstance(w, SinePM):
        raise InvalidNode(f"expected SinePM, got {w.kind}")
    d = duration_expr(w)
    phase = WaveformSum(w.modulation, w.phase)
    return Sine(
        w.amplitude, Const(w.carrier.frequency, d), phase, d, PhaseMode.CONTINUOUS, ref_clock=w.carrier
    )


def expand_modulated(w: Waveform) -> Waveform:
    if isinstance(w, SineFM):
        return expand_sine_fm(w)
    if isinstance(w, SinePM):
        return expand_sine_pm(w)
    return w
