import numpy as np
import pytest

import pulsegraph as pg
from pulsegraph import nodes as n
from pulsegraph.errors import ScheduleError

ns = 1e-9


def durations(waves, bindings=None):
    return {ch.label: pg.resolve_duration(pg.substitute(w, bindings or {})) for ch, w in waves.items()}


def test_parallel_pads_shorter_channel():
    ch1, ch2 = pg.Channel("ch1"), pg.Channel("ch2")
    sched = pg.Schedule()
    with sched.parallel():
        sched.add(ch1, n.Const(1, 100 * ns))
        sched.add(ch2, n.Const(1, 60 * ns))
    waves = sched.finalize()
    assert durations(waves) == {"ch1": 100 * ns, "ch2": 100 * ns}
    pad = waves[ch2].items[1]
    assert pad.kind == "Zero"
    assert pg.resolve_duration(pad) == pytest.approx(40 * ns, abs=1e-20)
    assert pad.duration.kind == "ScalarSub"


def test_sequential_slots_fill_absent_channels():
    ch1, ch2 = pg.Channel("ch1"), pg.Channel("ch2")
    w1, w2 = n.Const(1, 100 * ns), n.Const(2, 200 * ns)
    sched = pg.Schedule()
    sched.add(ch1, w1)
    sched.add(ch2, w2)
    waves = sched.finalize()
    a, b = waves[ch1], waves[ch2]
    assert a.items[0] is w1 and a.items[1].kind == "Zero"
    assert pg.resolve_duration(a.items[1]) == 200 * ns
    assert b.items[0].kind == "Zero" and b.items[1] is w2
    assert pg.resolve_duration(b.items[0]) == 100 * ns


def test_same_channel_in_parallel_is_sequenced():
    ch = pg.Channel("x")
    sched = pg.Schedule()
    with sched.parallel():
        sched.add(ch, n.Const(1, 1.0))
        sched.add(ch, n.Const(2, 2.0))
    waves = sched.finalize()
    assert durations(waves) == {"x": 3.0}
    assert pg.value_at(waves[ch], 1.5) == 2.0


def test_symbolic_durations_stay_unresolved():
    ch1, ch2 = pg.Channel(), pg.Channel()
    sched = pg.Schedule()
    with sched.parallel():
        sched.add(ch1, n.Const(1, n.Var("a")))
        sched.add(ch2, n.Const(1, n.Var("b")))
    waves = sched.finalize()
    for w in waves.values():
        with pytest.raises(pg.UnboundVariable):
            pg.resolve_duration(w)
    assert set(durations(waves, {"a": 1.0, "b": 3.0}).values()) == {3.0}


def test_target_duration_pads_and_overflow_detected():
    ch = pg.Channel("c")
    sched = pg.Schedule()
    with sched.parallel(target_duration=100 * ns):
        sched.add(ch, n.Const(1, n.Var("d")))
    waves = sched.finalize()
    ok = {c: pg.substitute(w, {"d": 50e-9}) for c, w in waves.items()}
    assert pg.validate(ok) == []
    bad = {c: pg.substitute(w, {"d": 130e-9}) for c, w in waves.items()}
    (v,) = pg.validate(bad)
    assert v.node.kind == "Zero" and v.duration < 0 and v.channel is ch


def test_nested_contexts_and_retroactive_padding():
    a, b, c = pg.Channel("a"), pg.Channel("b"), pg.Channel("c")
    sched = pg.Schedule()
    sched.add(a, n.Const(1, 1.0))
    with sched.parallel():
        sched.add(b, n.Const(1, 2.0))
        with sched.sequential():
            sched.add(c, n.Const(1, 0.5))
            sched.add(a, n.Const(1, 0.5))
    sched.add(c, n.Const(1, 4.0))
    waves = sched.finalize()
    assert set(durations(waves).values()) == {7.0}
    # channel c was idle in the first slot and is padded there
    assert pg.value_at(waves[c], 0.5) == 0.0
    assert pg.value_at(waves[c], 1.25) == 1.0
    assert pg.value_at(waves[c], 5.0) == 1.0


def test_padding_never_changes_real_waveforms():
    a, b = pg.Channel("a"), pg.Channel("b")
    # 300 * ns is a hair above 3e-7 and would admit one more grid point
    wa = n.Sine(1, 5e6, 0, 0.3e-6)
    sched = pg.Schedule()
    with sched.parallel():
        sched.add(a, wa)
        sched.add(b, n.Const(1, 500 * ns))
    waves = sched.finalize()
    r = pg.render(waves[a], 1e9).values
    assert np.array_equal(r[:300], pg.render(wa, 1e9).values)
    assert not r[300:].any()


def test_nested_sequential_is_associative():
    a, b = pg.Channel("a"), pg.Channel("b")
    # dyadic durations and rate keep segment offsets exact under any grouping
    unit = 2.0**-30
    pulses = [n.Sine(1, 3e6, 0.1 * i, (40 + 10 * i) * unit) for i in range(4)]

    def build(nested):
        sched = pg.Schedule()
        sched.add(a, pulses[0])
        if nested:
            with sched.sequential():
                sched.add(b, pulses[1])
                with sched.sequential():
                    sched.add(a, pulses[2])
        else:
            sched.add(b, pulses[1])
            sched.add(a, pulses[2])
        sched.add(b, pulses[3])
        return sched.finalize()

    flat, nested = build(False), build(True)
    for ch in (a, b):
        x, y = pg.render(flat[ch], 2.0**30).values, pg.render(nested[ch], 2.0**30).values
        assert len(x) == len(y) and np.max(np.abs(x - y)) <= 1e-12


def test_stack_discipline():
    sched = pg.Schedule()
    with pytest.raises(ScheduleError):
        sched.close_context()
    sched.open_context("parallel")
    with pytest.raises(ScheduleError):
        sched.finalize()
    sched.close_context()
    assert sched.finalize() == {}
    with pytest.raises(ScheduleError):
        sched.add(pg.Channel(), n.Zero(1))
    with pytest.raises(ScheduleError):
        sched.open_context("sequential")
    with pytest.raises(ValueError):
        pg.Schedule().open_context("diagonal")
    with pytest.raises(TypeError):
        pg.Schedule().add(pg.Channel(), n.Num(1))


def test_context_manager_finalizes():
    ch = pg.Channel("z")
    with pg.Schedule() as sched:
        sched.add(ch, n.Zero(1.0))
    assert sched.finalized and list(sched.waveforms) == [ch]
    with pytest.raises(ScheduleError):
        pg.Schedule().waveforms


def test_channel_identity():
    a, b = pg.Channel("same"), pg.Channel("same")
    assert a != b and a == a
    assert pg.Channel("x", id="custom").id == "custom"


def test_validate_requires_bindings():
    with pytest.raises(pg.UnboundVariable):
        pg.validate(n.Zero(n.Var("d")))
    assert pg.validate(n.Zero(1.0)) == []
