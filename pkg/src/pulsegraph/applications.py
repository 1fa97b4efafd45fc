"""Trapped-ion pulse schemes that need explicit phase tracking.

Both builders return a finalized :class:`~pulsegraph.schedule.Schedule`
whose durations are variables, plus default bindings. All frequencies are
toy numbers chosen to make the plots readable, not lab values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .nodes import Clock, ClockSeq, PhaseMode, Sine, Var
from .schedule import Channel, Schedule


@dataclass
class Application:
    schedule: Schedule
    channels: dict[str, Channel]
    bindings: dict[str, float]
    clocks: dict = field(default_factory=dict)


def ms_gate(
    f_1q: float = 10.02e6,
    f_ms: float = 10.05e6,
    f_idle: float = 10.01e6,
    f_motion: float = 1.5e6,
    t_1q: float = 0.4e-6,
    t_ms: float = 1.2e-6,
    t_1q_b: float = 0.3e-6,
) -> Application:
    """Single-qubit gate, MS gate, single-qubit gate on one ion.

    The spin channel references a clock sequence whose frequency follows the
    AC-Stark shift of the pulse being played: ``f_1q`` during the first
    gate, ``f_ms`` during the MS gate, then ``f_idle`` from there on. The
    motion channel only plays during the MS gate and references no clock.
    """
    d1, d2, d3 = Var("t_1q"), Var("t_ms"), Var("t_1q_b")
    c1 = Clock(f_1q, 0.0, d1)
    c2 = Clock(f_ms, 0.0, d2)
    c3 = Clock(f_idle, 0.0)
    clock = ClockSeq(c1, c2, c3)

    spin, motion = Channel("spin"), Channel("motion")
    sched = Schedule()
    sched.add(spin, Sine(0.8, c1.frequency, math.pi / 2, d1, PhaseMode.CONTINUOUS, clock))
    with sched.parallel():
        sched.add(spin, Sine(1.0, c2.frequency, 0.0, d2, PhaseMode.CONTINUOUS, clock))
        sched.add(motion, Sine(0.5, f_motion, 0.0, d2, PhaseMode.ABSOLUTE))
    sched.add(spin, Sine(0.8, c3.frequency, math.pi / 2, d3, PhaseMode.CONTINUOUS, clock))
    sched.finalize()
    return Application(
        sched,
        {"spin": spin, "motion": motion},
        {"t_1q": t_1q, "t_ms": t_ms, "t_1q_b": t_1q_b},
        {"spin": clock},
    )


def shelving(
    f_qubit: float = 12.6e6,
    f_shelve0: float = 21.3e6,
    f_shelve1: float = 23.9e6,
    f_dqubit: float = 8.2e6,
    t_half: float = 0.25e-6,
    t_transfer: float = 0.5e-6,
    t_pi: float = 0.5e-6,
) -> Application:
    """Shelve a hyperfine superposition into metastable states and back.

    Sequence: sqrt(Y) on the qubit, transfer |0>->|0'> and |1>->|1'> in
    parallel, Y in the metastable pair, transfer back, final sqrt(Y).
    Every channel runs phase-continuous on its own constant clock; all clocks
    share phase 0 at t = 0.
    """
    clocks = {
        "qubit": Clock(f_qubit, 0.0),
        "shelve0": Clock(f_shelve0, 0.0),
        "shelve1": Clock(f_shelve1, 0.0),
        "dqubit": Clock(f_dqubit, 0.0),
    }
    ch = {name: Channel(name) for name in clocks}

    def pulse(name, duration_key, phase=math.pi / 2):
        clk = clocks[name]
        return Sine(1.0, clk.frequency, phase, Var(duration_key), PhaseMode.CONTINUOUS, clk)

    sched = Schedule()
    sched.add(ch["qubit"], pulse("qubit", "t_half"))
    with sched.parallel():
        sched.add(ch["shelve0"], pulse("shelve0", "t_transfer", 0.0))
        sched.add(ch["shelve1"], pulse("shelve1", "t_transfer", 0.0))
    sched.add(ch["dqubit"], pulse("dqubit", "t_pi"))
    with sched.parallel():
        sched.add(ch["shelve0"], pulse("shelve0", "t_transfer", 0.0))
        sched.add(ch["shelve1"], pulse("shelve1", "t_transfer", 0.0))
    sched.add(ch["qubit"], pulse("qubit", "t_half"))
    sched.finalize()
    return Application(
        sched,
        ch,
        {"t_half": t_half, "t_transfer": t_transfer, "t_pi": t_pi},
        clocks,
    )
