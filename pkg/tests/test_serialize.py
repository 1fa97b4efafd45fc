import json

import pytest

import pulsegraph as pg
from pulsegraph import nodes as n
from pulsegraph.errors import SchemaError

from conftest import CORPUS
from graphgen import GraphGen


@pytest.mark.parametrize("seed", range(30))
def test_round_trip_random_graphs(seed):
    g = GraphGen(seed).waveform(0)
    text = json.dumps(pg.node_to_json(g))
    assert n.structural_equal(pg.node_from_json(json.loads(text)), g)


def test_round_trip_special_nodes():
    clk = n.ClockSeq(n.Clock(1e6, 0, 1e-6), n.Clock(2e6))
    for g in (
        n.Polynomial([1, n.Var("a"), 3], 1e-6),
        n.Sine(1, 2, 3, 4, ref_clock=clk),
        n.SinePM(n.Clock(5e6), n.Const(0.1, 1e-7), 1, 0, 1e-7),
        n.Clock(1e6),
        n.Sequence(),
    ):
        assert n.structural_equal(pg.node_from_json(pg.node_to_json(g)), g)


def test_numbers_promote_in_waveform_slots():
    g = pg.node_from_json({"kind": "Sine", "params": {"amplitude": 1, "frequency": 2e6, "phase": 0, "duration": 1e-6}})
    assert g.amplitude.kind == "Const" and g.amplitude.duration is g.duration


def test_operator_aliases():
    g = pg.node_from_json({"kind": "Sum", "items": [1, {"kind": "Var", "key": "x"}]})
    assert g.kind == "ScalarSum"
    w = pg.node_from_json({"kind": "Product", "items": [{"kind": "Zero", "params": {"duration": 1}}, 2]})
    assert w.kind == "WaveformProduct"


def test_definitions_are_shared():
    doc = {
        "definitions": {"d": {"kind": "Var", "key": "t"}},
        "graph": {"kind": "Sequence", "items": [
            {"kind": "Zero", "params": {"duration": {"ref": "d"}}},
            {"kind": "Const", "params": {"value": 1, "duration": {"ref": "d"}}},
        ]},
    }
    g = pg.load_document(json.dumps(doc))
    assert g.items[0].duration is g.items[1].duration


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"kind": "Nope"}, "$.kind"),
        ({"params": {}}, "$"),
        ({"kind": "ScalarSub", "items": [1]}, "$"),
        ({"kind": "Zero", "params": {}}, "$.params"),
        ({"kind": "Zero", "params": {"duration": 1, "bogus": 2}}, "$.params.bogus"),
        ({"kind": "Var"}, "$.key"),
        ({"kind": "Num", "value": "3"}, "$.value"),
        ({"kind": "Sequence", "items": [True]}, "$.items[0]"),
        ({"kind": "Sequence", "items": {"a": 1}}, "$.items"),
        ({"ref": "missing"}, "$"),
    ],
)
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as err:
        pg.node_from_json(doc)
    assert err.value.field == field


def test_cyclic_reference_rejected():
    doc = {"definitions": {"a": {"kind": "Neg", "items": [{"ref": "b"}]}, "b": {"kind": "Neg", "items": [{"ref": "a"}]}},
           "graph": {"ref": "a"}}
    with pytest.raises(SchemaError, match="cyclic"):
        pg.load_document(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(SchemaError) as err:
        pg.load_document('{\n  "kind": "Zero",\n  "params": {"duration": }\n}')
    assert err.value.field.startswith("line 3 column")


def test_schedule_document():
    sched = pg.load_document((CORPUS / "two_channel_schedule.json").read_text())
    assert isinstance(sched, pg.Schedule) and sched.finalized
    labels = sorted(ch.label for ch in sched.waveforms)
    assert labels == ["motion", "spin"]
    waves = {ch.label: pg.substitute(w, {"t_gate": 0.3e-6}) for ch, w in sched.waveforms.items()}
    assert pg.resolve_duration(waves["spin"]) == pg.resolve_duration(waves["motion"]) == pytest.approx(0.6e-6)


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"channels": {}, "body": {}}, "$.channels"),
        ({"channels": [{"id": 0}, {"id": 0}], "body": {"context": "sequential", "items": []}}, "$.channels[1].id"),
        ({"channels": [{"id": 0}], "body": {"context": "diagonal", "items": []}}, "$.body.context"),
        ({"channels": [{"id": 0}], "body": {"context": "sequential", "items": [{"channel": 9, "waveform": 1}]}},
         "$.body.items[0].channel"),
    ],
)
def test_schedule_schema_errors(doc, field):
    with pytest.raises(SchemaError) as err:
        pg.load_document(json.dumps(doc))
    assert err.value.field == field


@pytest.mark.parametrize("name", sorted(p.name for p in CORPUS.glob("*.json")))
def test_corpus_loads(name):
    assert pg.load_document((CORPUS / name).read_text()) is not None
