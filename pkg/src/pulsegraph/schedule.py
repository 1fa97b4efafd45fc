"""Channels and schedules built from nested sequential/parallel contexts.

A schedule never resolves a duration while it is being built. Padding is
expressed with scalar operators on the symbolic durations, so schedules can
be constructed before any variable is bound::

    sched = Schedule()
    with sched.parallel():
        sched.add(ch1, pulse_a)
        sched.add(ch2, pulse_b)
    with sched.sequential(target_duration=Var("gap")):
        sched.add(ch1, pulse_c)
    waveforms = sched.finalize()
"""

from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass, field

from .duration import duration_expr, max_duration, sum_duration
from .errors import ScheduleError
from .nodes import ScalarSub, Sequence, Waveform, Zero, as_scalar

_channel_ids = itertools.count()


class Channel:
    """Opaque identifier of one analog output. Equality is identity."""

    __slots__ = ("id", "label")

    def __init__(self, label: str = "", id=None):
        self.label = label
        self.id = next(_channel_ids) if id is None else id

    def __repr__(self) -> str:
        return f"Channel({self.label!r}, id={self.id!r})"


SEQUENTIAL = "sequential"
PARALLEL = "parallel"


def _join(waveforms: list[Waveform]) -> Waveform:
    return waveforms[0] if len(waveforms) == 1 else Sequence(waveforms)


def _pad(w: Waveform, total) -> Waveform:
    return Sequence(w, Zero(ScalarSub(total, duration_expr(w))))


@dataclass
class _Context:
    kind: str
    target_duration: object = None
    # sequential: list of slots; parallel: list of blocks. Each is {channel: waveform}.
    entries: list[dict] = field(default_factory=list)
    channels: list[Channel] = field(default_factory=list)

    def _touch(self, ch: Channel) -> None:
        if ch not in self.channels:
            self.channels.append(ch)

    def add_block(self, block: dict) -> None:
        for ch in block:
            self._touch(ch)
        self.entries.append(block)

    def collapse(self) -> dict:
        if self.kind == SEQUENTIAL:
            result = self._collapse_sequential()
            total = None
            if self.target_duration is not None:
                total = self.target_duration
        else:
            result = self._collapse_parallel()
            if self.target_duration is not None:
                total = self.target_duration
            elif len(result) > 1:
                total = max_duration(duration_expr(w) for w in result.values())
            else:
                total = None
        if total is not None:
            result = {ch: _pad(w, total) for ch, w in result.items()}
        return result

    def _collapse_sequential(self) -> dict:
        lanes: dict[Channel, list[Waveform]] = {ch: [] for ch in self.channels}
        for slot in self.entries:
            d_slot = max_duration(duration_expr(w) for w in slot.values())
            for ch in self.channels:
                lanes[ch].append(slot[ch] if ch in slot else Zero(d_slot))
        return {ch: _join(ws) for ch, ws in lanes.items() if ws}

    def _collapse_parallel(self) -> dict:
        lanes: dict[Channel, list[Waveform]] = {ch: [] for ch in self.channels}
        for block in self.entries:
            if len(block) > 1 and any(lanes[ch] for ch in block):
                # keep a multi-channel block aligned: start it when its busiest channel is free
                ends = {ch: sum_duration(duration_expr(w) for w in lanes[ch]) for ch in block}
                start = max_duration(ends.values())
                for ch in block:
                    if ends[ch] is not start:
                        lanes[ch].append(Zero(ScalarSub(start, ends[ch])))
            for ch, w in block.items():
                lanes[ch].append(w)
        return {ch: _join(ws) for ch, ws in lanes.items() if ws}


class Schedule:
    """Map from channels to equal-duration waveforms.

    The schedule starts with one open sequential context. ``finalize`` (or
    leaving a ``with schedule:`` block) closes it and stores the result.
    """

    def __init__(self):
        self._stack: list[_Context] = [_Context(SEQUENTIAL)]
        self._result: dict[Channel, Waveform] | None = None

    @property
    def finalized(self) -> bool:
        return self._result is not None

    @property
    def channels(self) -> list[Channel]:
        if self._result is not None:
            return list(self._result)
        return list(self._stack[0].channels)

    @property
    def waveforms(self) -> dict[Channel, Waveform]:
        if self._result is None:
            raise ScheduleError("schedule is not finalized")
        return dict(self._result)

    def _require_open(self, what: str) -> None:
        if self._result is not None:
            raise ScheduleError(f"cannot {what} a finalized schedule")

    def open_context(self, kind: str, target_duration=None) -> None:
        self._require_open("open a context in")
        if kind not in (SEQUENTIAL, PARALLEL):
            raise ValueError(f"unknown context kind {kind!r}")
        if target_duration is not None:
            target_duration = as_scalar(target_duration)
        self._stack.append(_Context(kind, target_duration))

    def close_context(self) -> None:
        self._require_open("close a context in")
        if len(self._stack) < 2:
            raise ScheduleError("no open context to close")
        ctx = self._stack.pop()
        block = ctx.collapse()
        if block:
            self._stack[-1].add_block(block)

    @contextlib.contextmanager
    def sequential(self, target_duration=None):
        self.open_context(SEQUENTIAL, target_duration)
        yield self
        self.close_context()

    @contextlib.contextmanager
    def parallel(self, target_duration=None):
        self.open_context(PARALLEL, target_duration)
        yield self
        self.close_context()

    def add(self, channel: Channel, waveform: Waveform) -> None:
        self._require_open("add to")
        if not isinstance(channel, Channel):
            raise TypeError(f"expected a Channel, got {type(channel).__name__}")
        if not isinstance(waveform, Waveform):
            raise TypeError(f"expected a waveform, got {type(waveform).__name__}")
        self._stack[-1].add_block({channel: waveform})

    def finalize(self) -> dict[Channel, Waveform]:
        if self._result is not None:
            return dict(self._result)
        if len(self._stack) != 1:
            raise ScheduleError(f"{len(self._stack) - 1} context(s) still open")
        self._result = self._stack[0].collapse()
        self._stack = []
        return dict(self._result)

    def __enter__(self):
        self._require_open("enter")
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.finalize()
        return False


@dataclass(frozen=True)
class Violation:
    """A waveform whose resolved duration is negative."""

    channel: Channel | None
    path: tuple
    node: Waveform
    duration: float


def validate(target, evaluator=None) -> list[Violation]:
    """Report every waveform node with a negative resolved duration.

    ``target`` is a finalized :class:`Schedule`, a channel map, or a single
    waveform. All variables must be bound.
    """
    from .evaluate import Evaluator
    from .nodes import iter_unique

    ev = evaluator or Evaluator()
    if isinstance(target, Schedule):
        target = target.waveforms
    items = target.items() if isinstance(target, dict) else [(None, target)]
    out = []
    for ch, root in items:
        for path, node in iter_unique(root):
            if isinstance(node, Waveform):
                d = ev.duration(node)
                if d < 0:
                    out.append(Violation(ch, path, node, d))
    return out
