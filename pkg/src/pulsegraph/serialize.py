"""JSON documents for graphs and schedules.

Node objects look like ``{"kind": "Sine", "params": {...}, "items": [...]}``.
Bare numbers are promoted to ``Num``; ``{"kind": "Var", "key": "foo"}`` is a
variable. Operators named ``Sum``, ``Product``, ``Sub``, ``Div``, ``Neg``
become waveform operators when any item is a waveform and scalar operators
otherwise; the explicit names (``ScalarSum``, ``WaveformSum``, ...) are
accepted too. ``"duration": "unbounded"`` is allowed for clocks.

A document may declare shared nodes under ``"definitions"`` and refer to
them with ``{"ref": "<name>"}``; every reference yields the same instance.

Schedule documents have ``"channels"`` and a ``"body"`` of nested context
objects ``{"context": "sequential" | "parallel", "target_duration": ...,
"items": [...]}`` whose items are ``{"channel": id, "waveform": node}`` or
further contexts.
"""

from __future__ import annotations

import inspect
import json
import numbers

from .errors import PulseGraphError, SchemaError
from .nodes import (
    KINDS,
    UNBOUNDED,
    Node,
    Num,
    Polynomial,
    Var,
    operator,
)
from .schedule import PARALLEL, SEQUENTIAL, Channel, Schedule

SCHEMA_VERSION = "1.0"

_OPERATOR_ALIASES = {"Sum", "Product", "Sub", "Div", "Neg", "Min", "Max"}


def _params_of(cls) -> dict[str, inspect.Parameter]:
    sig = inspect.signature(cls.__init__)
    return {n: p for n, p in list(sig.parameters.items())[1:]}


class _Parser:
    def __init__(self, definitions=None):
        self.defs: dict[str, Node] = {}
        self._raw = dict(definitions or {})
        self._busy: set[str] = set()

    def ref(self, name, field):
        if name in self.defs:
            return self.defs[name]
        if name not in self._raw:
            raise SchemaError(field, f"unknown reference {name!r}")
        if name in self._busy:
            raise SchemaError(field, f"cyclic reference {name!r}")
        self._busy.add(name)
        node = self.node(self._raw[name], f"$.definitions.{name}")
        self._busy.discard(name)
        self.defs[name] = node
        return node

    def value(self, obj, field):
        """A parameter value: node, number, or pass-through string."""
        if isinstance(obj, str):
            return obj
        return self.node(obj, field)

    def node(self, obj, field="$"):
        if isinstance(obj, bool):
            raise SchemaError(field, "booleans are not numbers")
        if isinstance(obj, numbers.Real):
            return Num(obj)
        if not isinstance(obj, dict):
            raise SchemaError(field, f"expected a node object or number, got {type(obj).__name__}")
        if "ref" in obj:
            return self.ref(obj["ref"], field)
        kind = obj.get("kind")
        if not isinstance(kind, str):
            raise SchemaError(field, "missing 'kind'")
        try:
            return self._build(kind, obj, field)
        except SchemaError:
            raise
        except (PulseGraphError, TypeError, ValueError) as exc:
            raise SchemaError(field, f"{kind}: {exc}") from exc

    def _items(self, obj, field):
        items = obj.get("items", [])
        if not isinstance(items, list):
            raise SchemaError(f"{field}.items", "expected a list")
        return [self.node(x, f"{field}.items[{i}]") for i, x in enumerate(items)]

    def _build(self, kind, obj, field):
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise SchemaError(f"{field}.params", "expected an object")
        if kind == "Num":
            value = obj.get("value", params.get("value"))
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise SchemaError(f"{field}.value", "Num needs a number")
            return Num(value)
        if kind == "Var":
            key = obj.get("key", params.get("key"))
            if not isinstance(key, str) or not key:
                raise SchemaError(f"{field}.key", "Var needs a non-empty string key")
            return Var(key)
        if kind in _OPERATOR_ALIASES:
            return operator(kind, *self._items(obj, field))
        if kind not in KINDS:
            raise SchemaError(f"{field}.kind", f"unknown kind {kind!r}")
        cls = KINDS[kind]
        if cls.item_role is not None and cls is not Polynomial:
            return cls(*self._items(obj, field))
        if cls is Polynomial:
            coeffs = params.get("coefficients")
            if coeffs is None:
                coeffs = obj.get("items")
            if not isinstance(coeffs, list):
                raise SchemaError(f"{field}.params.coefficients", "expected a list")
            coeffs = [self.node(c, f"{field}.params.coefficients[{i}]") for i, c in enumerate(coeffs)]
            duration = self.value(params.get("duration"), f"{field}.params.duration")
            return Polynomial(coeffs, duration)
        allowed = _params_of(cls)
        kwargs = {}
        for name, raw in params.items():
            if name not in allowed:
                raise SchemaError(f"{field}.params.{name}", f"{kind} has no parameter {name!r}")
            kwargs[name] = self.value(raw, f"{field}.params.{name}") if raw is not None else None
        for name, p in allowed.items():
            if p.default is inspect.Parameter.empty and name not in kwargs:
                raise SchemaError(f"{field}.params", f"{kind} requires parameter {name!r}")
        return cls(**kwargs)


def node_from_json(obj, definitions=None) -> Node:
    return _Parser(definitions).node(obj)


def node_to_json(node: Node):
    """Tree-shaped JSON for ``node`` (shared subgraphs are repeated)."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return {"kind": "Var", "key": node.key}
    out: dict = {"kind": node.kind}
    params = {}
    for (label, _), value in zip(node.roles, node._params):
        if value is not None:
            params[label] = "unbounded" if value is UNBOUNDED else node_to_json(value)
    if node.kind == "Sine":
        params["phase_mode"] = node.phase_mode.value
    if isinstance(node, Polynomial):
        params["coefficients"] = [node_to_json(i) for i in node.items]
    elif node.item_role is not None:
        out["items"] = [node_to_json(i) for i in node.items]
    if params:
        out["params"] = params
    return out


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc


def schedule_from_json(doc: dict) -> Schedule:
    """Build and finalize a schedule from a schedule document."""
    parser = _Parser(doc.get("definitions"))
    channels: dict = {}
    raw_channels = doc.get("channels")
    if not isinstance(raw_channels, list):
        raise SchemaError("$.channels", "expected a list")
    for i, ch in enumerate(raw_channels):
        if not isinstance(ch, dict) or "id" not in ch:
            raise SchemaError(f"$.channels[{i}]", "expected an object with an 'id'")
        if ch["id"] in channels:
            raise SchemaError(f"$.channels[{i}].id", f"duplicate channel id {ch['id']!r}")
        channels[ch["id"]] = Channel(str(ch.get("label", ch["id"])), id=ch["id"])
    sched = Schedule()
    body = doc.get("body")
    if not isinstance(body, dict):
        raise SchemaError("$.body", "expected a context object")

    def context(obj, field, root=False):
        kind = obj.get("context", SEQUENTIAL)
        if kind not in (SEQUENTIAL, PARALLEL):
            raise SchemaError(f"{field}.context", f"unknown context {kind!r}")
        target = obj.get("target_duration")
        if target is not None:
            target = parser.node(target, f"{field}.target_duration")
        nested = not (root and kind == SEQUENTIAL and target is None)
        if nested:
            sched.open_context(kind, target)
        items = obj.get("items", [])
        if not isinstance(items, list):
            raise SchemaError(f"{field}.items", "expected a list")
        for i, item in enumerate(items):
            f = f"{field}.items[{i}]"
            if not isinstance(item, dict):
                raise SchemaError(f, "expected an object")
            if "context" in item:
                context(item, f)
                continue
            if item.get("channel") not in channels:
                raise SchemaError(f"{f}.channel", f"unknown channel {item.get('channel')!r}")
            w = parser.node(item.get("waveform"), f"{f}.waveform")
            try:
                sched.add(channels[item["channel"]], w)
            except (PulseGraphError, TypeError) as exc:
                raise SchemaError(f, str(exc)) from exc
        if nested:
            sched.close_context()

    context(body, "$.body", root=True)
    sched.finalize()
    return sched


def load_document(text: str):
    """Parse a JSON document into a graph node or a finalized schedule."""
    doc = _load_json(text)
    if isinstance(doc, dict) and "channels" in doc:
        return schedule_from_json(doc)
    if isinstance(doc, dict) and "graph" in doc:
        return _Parser(doc.get("definitions")).node(doc["graph"], "$.graph")
    return node_from_json(doc)
