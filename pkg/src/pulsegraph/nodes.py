"""Immutable node kinds for scalar and waveform graphs.

Nodes are vertices of a DAG. Children hang off labeled edges: parameters use
their name as label, operator items use their index. A node never changes
after construction; rewriting always builds new nodes and shares the
untouched subgraphs.

Dispatch order for visitors is given by each kind's ``lineage``, a fixed
tuple of kind names ordered most-specific first.
"""

from __future__ import annotations

import enum
import numbers
from typing import ClassVar, Iterable, Mapping

from .errors import (
    ArityError,
    CategoryViolation,
    ClockReplacement,
    InvalidNode,
    PhaseModeError,
)


class PhaseMode(str, enum.Enum):
    ABSOLUTE = "absolute"
    CONTINUOUS = "continuous"


class _Unbounded:
    """Duration of a waveform that never ends."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __reduce__(self):
        return (_Unbounded, ())

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


UNBOUNDED = _Unbounded()


def _is_real(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def as_scalar(x) -> "Scalar":
    """Promote an int/float to :class:`Num`; pass scalars through."""
    if isinstance(x, Scalar):
        return x
    if _is_real(x):
        return Num(x)
    if isinstance(x, Node):
        raise CategoryViolation(f"expected a scalar, got {x.kind}")
    raise CategoryViolation(f"expected a scalar, got {type(x).__name__}")


def as_duration(x, allow_unbounded: bool = False):
    if x is UNBOUNDED or (isinstance(x, str) and x.lower() == "unbounded"):
        if not allow_unbounded:
            raise InvalidNode("an explicit duration is required")
        return UNBOUNDED
    if x is None:
        raise InvalidNode("an explicit duration is required")
    return as_scalar(x)


def as_waveform(x, duration) -> "Waveform":
    """Promote numbers and scalars to a :class:`Const` lasting ``duration``."""
    if isinstance(x, Waveform):
        return x
    return Const(as_scalar(x), duration)


def _check_role(owner: "Node", label: str, role: str | None, value) -> None:
    if role == "scalar":
        ok = isinstance(value, Scalar)
    elif role == "waveform":
        ok = isinstance(value, Waveform)
    elif role == "clock":
        if isinstance(value, Clock):
            return
        if isinstance(value, Waveform):
            raise ClockReplacement(f"{owner.kind}.{label} must be a Clock, got {value.kind}")
        ok = False
    elif role == "reference":
        if value is None or isinstance(value, (Clock, ClockSeq)):
            return
        if isinstance(value, Waveform):
            raise ClockReplacement(
                f"{owner.kind}.{label} must be a Clock or ClockSeq, got {value.kind}"
            )
        ok = False
    elif role == "duration":
        if value is UNBOUNDED:
            if owner.unbounded_ok:
                return
            raise InvalidNode(f"{owner.kind} requires an explicit duration")
        ok = isinstance(value, Scalar)
        role = "scalar"
    else:  # pragma: no cover
        raise AssertionError(role)
    if not ok:
        got = value.kind if isinstance(value, Node) else type(value).__name__
        raise CategoryViolation(f"{owner.kind}.{label} must be a {role}, got {got}")


def _param(index: int, doc: str = ""):
    return property(lambda self: self._params[index], doc=doc)


class Node:
    """Base of all graph vertices."""

    __slots__ = ("_params", "_items", "_duration_cache", "__weakref__")

    kind: ClassVar[str] = "Node"
    lineage: ClassVar[tuple[str, ...]] = ("Node",)
    category: ClassVar[str] = ""
    # (label, role) for every named child slot, in edge order
    roles: ClassVar[tuple[tuple[str, str], ...]] = ()
    item_role: ClassVar[str | None] = None
    arity: ClassVar[tuple[int, int | None]] = (0, 0)
    unbounded_ok: ClassVar[bool] = False
    # non-node state compared by structural equality
    payload_fields: ClassVar[tuple[str, ...]] = ()
    # non-node state carried over on reconstruction
    state_fields: ClassVar[tuple[str, ...]] = ()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} nodes are immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} nodes are immutable")

    def _freeze(self, params: Mapping[str, object], items: Iterable = ()) -> None:
        items = tuple(items)
        lo, hi = self.arity
        if len(items) < lo or (hi is not None and len(items) > hi):
            want = f"exactly {lo}" if lo == hi else (f"at least {lo}" if hi is None else f"{lo}..{hi}")
            raise ArityError(f"{self.kind} takes {want} item(s), got {len(items)}")
        for i, item in enumerate(items):
            _check_role(self, str(i), self.item_role, item)
        values = []
        for label, role in self.roles:
            value = params.get(label)
            _check_role(self, label, role, value)
            values.append(value)
        object.__setattr__(self, "_params", tuple(values))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_duration_cache", None)
        self._check()

    def _check(self) -> None:
        pass

    @property
    def items(self) -> tuple["Node", ...]:
        return self._items

    def param(self, label: str):
        for (name, _), value in zip(self.roles, self._params):
            if name == label:
                return value
        raise KeyError(label)

    def children(self) -> list[tuple[str, "Node"]]:
        """Labeled child edges: named parameters, then items, then duration."""
        out = []
        duration = None
        for (label, _), value in zip(self.roles, self._params):
            if not isinstance(value, Node):
                continue
            if label == "duration":
                duration = value
            else:
                out.append((label, value))
        out.extend((str(i), item) for i, item in enumerate(self._items))
        if duration is not None:
            out.append(("duration", duration))
        return out

    def payload(self) -> tuple:
        return tuple(getattr(self, f) for f in self.payload_fields)

    def with_children(self, replacements: Mapping[str, "Node"]) -> "Node":
        """Return a copy with the children at the given labels replaced."""
        if not replacements:
            return self
        known = {label for label, _ in self.children()}
        unknown = set(replacements) - known
        if unknown:
            raise KeyError(f"{self.kind} has no child edge(s) {sorted(unknown)}")
        params = {
            label: replacements.get(label, value)
            for (label, _), value in zip(self.roles, self._params)
        }
        items = [replacements.get(str(i), item) for i, item in enumerate(self._items)]
        new = object.__new__(type(self))
        for f in self.state_fields:
            object.__setattr__(new, f, getattr(self, f))
        new._freeze(params, items)
        return new

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        state = {f: getattr(self, f) for f in self.state_fields}
        return (_restore, (type(self), state, self._params, self._items))

    def __repr__(self) -> str:
        parts = [repr(v) for v in self.payload()]
        parts += [f"{label}={child!r}" for label, child in self.children() if not label.isdigit()]
        if self._items:
            parts = [repr(i) for i in self._items] + parts
        return f"{self.kind}({', '.join(parts)})"


def _restore(cls, state, params, items):
    node = object.__new__(cls)
    for f, value in state.items():
        object.__setattr__(node, f, value)
    node._freeze(dict(zip((label for label, _ in cls.roles), params)), items)
    return node


# --------------------------------------------------------------------- scalars


class Scalar(Node):
    """Time-independent value."""

    __slots__ = ()
    category = "scalar"
    lineage = ("Scalar", "Node")

    def __add__(self, other):
        if isinstance(other, Waveform):
            return NotImplemented
        return ScalarSum(self, other)

    def __radd__(self, other):
        return ScalarSum(other, self)

    def __sub__(self, other):
        if isinstance(other, Waveform):
            return NotImplemented
        return ScalarSub(self, other)

    def __rsub__(self, other):
        return ScalarSub(other, self)

    def __mul__(self, other):
        if isinstance(other, Waveform):
            return NotImplemented
        return ScalarProduct(self, other)

    def __rmul__(self, other):
        return ScalarProduct(other, self)

    def __truediv__(self, other):
        if isinstance(other, Waveform):
            return NotImplemented
        return ScalarDiv(self, other)

    def __rtruediv__(self, other):
        return ScalarDiv(other, self)

    def __neg__(self):
        return ScalarNeg(self)


class Num(Scalar):
    """A number leaf. ``origin`` records the variable key it was bound from."""

    __slots__ = ("value", "origin")
    kind = "Num"
    lineage = ("Num", "Scalar", "Node")
    payload_fields = ("value",)
    state_fields = ("value", "origin")

    def __init__(self, value, origin: str | None = None):
        if not _is_real(value):
            raise CategoryViolation(f"Num needs a real number, got {type(value).__name__}")
        if not isinstance(value, int):
            value = float(value)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "origin", origin)
        self._freeze({})

    def __repr__(self) -> str:
        return f"Num({self.value!r})"


class Var(Scalar):
    __slots__ = ("key",)
    kind = "Var"
    lineage = ("Var", "Scalar", "Node")
    payload_fields = ("key",)
    state_fields = ("key",)

    def __init__(self, key: str):
        if not isinstance(key, str) or not key:
            raise InvalidNode("Var key must be a non-empty string")
        object.__setattr__(self, "key", key)
        self._freeze({})

    def __repr__(self) -> str:
        return f"Var({self.key!r})"


class ScalarOperator(Scalar):
    __slots__ = ()
    lineage = ("ScalarOperator", "Scalar", "OperatorNode")
    item_role = "scalar"
    arity = (1, None)

    def __init__(self, *items):
        if len(items) == 1 and isinstance(items[0], (list, tuple)):
            items = tuple(items[0])
        self._freeze({}, [as_scalar(i) for i in items])


class ScalarSum(ScalarOperator):
    __slots__ = ()
    kind = "ScalarSum"
    lineage = ("ScalarSum",) + ScalarOperator.lineage


class ScalarProduct(ScalarOperator):
    __slots__ = ()
    kind = "ScalarProduct"
    lineage = ("ScalarProduct",) + ScalarOperator.lineage


class ScalarSub(ScalarOperator):
    __slots__ = ()
    kind = "ScalarSub"
    lineage = ("ScalarSub",) + ScalarOperator.lineage
    arity = (2, 2)


class ScalarDiv(ScalarOperator):
    __slots__ = ()
    kind = "ScalarDiv"
    lineage = ("ScalarDiv",) + ScalarOperator.lineage
    arity = (2, 2)


class ScalarNeg(ScalarOperator):
    __slots__ = ()
    kind = "ScalarNeg"
    lineage = ("ScalarNeg",) + ScalarOperator.lineage
    arity = (1, 1)


class ScalarMin(ScalarOperator):
    __slots__ = ()
    kind = "ScalarMin"
    lineage = ("ScalarMin",) + ScalarOperator.lineage


class ScalarMax(ScalarOperator):
    __slots__ = ()
    kind = "ScalarMax"
    lineage = ("ScalarMax",) + ScalarOperator.lineage


# ------------------------------------------------------------------- waveforms


class Waveform(Node):
    """Time-dependent value, zero outside ``[t_start, t_start + d)``."""

    __slots__ = ()
    category = "waveform"
    lineage = ("Waveform", "Node")

    def _promote(self, other):
        if isinstance(other, Waveform):
            return other
        from .duration import duration_expr

        d = duration_expr(self)
        if d is UNBOUNDED:
            raise InvalidNode(f"cannot promote {other!r} next to an unbounded {self.kind}")
        return Const(as_scalar(other), d)

    def __add__(self, other):
        return WaveformSum(self, self._promote(other))

    def __radd__(self, other):
        return WaveformSum(self._promote(other), self)

    def __sub__(self, other):
        return WaveformSub(self, self._promote(other))

    def __rsub__(self, other):
        return WaveformSub(self._promote(other), self)

    def __mul__(self, other):
        return WaveformProduct(self, self._promote(other))

    def __rmul__(self, other):
        return WaveformProduct(self._promote(other), self)

    def __truediv__(self, other):
        return WaveformDiv(self, self._promote(other))

    def __rtruediv__(self, other):
        return WaveformDiv(self._promote(other), self)

    def __neg__(self):
        return WaveformNeg(self)

    @property
    def duration(self):
        """Configured duration (a scalar, or UNBOUNDED for clocks)."""
        try:
            return self.param("duration")
        except KeyError:
            raise AttributeError(f"{self.kind} has no configured duration") from None


class Const(Waveform):
    __slots__ = ()
    kind = "Const"
    lineage = ("Const", "Waveform", "Node")
    roles = (("value", "scalar"), ("duration", "duration"))
    value = _param(0)

    def __init__(self, value, duration):
        self._freeze({"value": as_scalar(value), "duration": as_duration(duration)})


class Zero(Waveform):
    __slots__ = ()
    kind = "Zero"
    lineage = ("Zero", "Waveform", "Node")
    roles = (("duration", "duration"),)

    def __init__(self, duration):
        self._freeze({"duration": as_duration(duration)})


class Ramp(Waveform):
    """Linear from ``start_value`` at t_start towards ``stop_value`` at t_start + d."""

    __slots__ = ()
    kind = "Ramp"
    lineage = ("Ramp", "Waveform", "Node")
    roles = (("start_value", "scalar"), ("stop_value", "scalar"), ("duration", "duration"))
    start_value = _param(0)
    stop_value = _param(1)

    def __init__(self, start_value, stop_value, duration):
        self._freeze({
            "start_value": as_scalar(start_value),
            "stop_value": as_scalar(stop_value),
            "duration": as_duration(duration),
        })


class Triangle(Waveform):
    """Zero at both domain edges, ``amplitude`` at the midpoint."""

    __slots__ = ()
    kind = "Triangle"
    lineage = ("Triangle", "Waveform", "Node")
    roles = (("amplitude", "scalar"), ("duration", "duration"))
    amplitude = _param(0)

    def __init__(self, amplitude, duration):
        self._freeze({"amplitude": as_scalar(amplitude), "duration": as_duration(duration)})


class Gaussian(Waveform):
    """Gaussian centered on the domain midpoint, no renormalization."""

    __slots__ = ()
    kind = "Gaussian"
    lineage = ("Gaussian", "Waveform", "Node")
    roles = (("amplitude", "scalar"), ("sigma", "scalar"), ("duration", "duration"))
    amplitude = _param(0)
    sigma = _param(1)

    def __init__(self, amplitude, sigma, duration):
        self._freeze({
            "amplitude": as_scalar(amplitude),
            "sigma": as_scalar(sigma),
            "duration": as_duration(duration),
        })


class Polynomial(Waveform):
    """sum(c[i] * tau**i) with tau the time since t_start."""

    __slots__ = ()
    kind = "Polynomial"
    lineage = ("Polynomial", "Waveform", "Node")
    roles = (("duration", "duration"),)
    item_role = "scalar"
    arity = (1, None)

    def __init__(self, coefficients, duration):
        self._freeze(
            {"duration": as_duration(duration)}, [as_scalar(c) for c in coefficients]
        )

    @property
    def coefficients(self):
        return self._items


class Power(Waveform):
    """scale * tau**exponent with tau the time since t_start."""

    __slots__ = ()
    kind = "Power"
    lineage = ("Power", "Waveform", "Node")
    roles = (("scale", "scalar"), ("exponent", "scalar"), ("duration", "duration"))
    scale = _param(0)
    exponent = _param(1)

    def __init__(self, scale, exponent, duration):
        self._freeze({
            "scale": as_scalar(scale),
            "exponent": as_scalar(exponent),
            "duration": as_duration(duration),
        })


class Clock(Waveform):
    """Reference clock with phase 2*pi*f*t + phase, anchored at global t = 0."""

    __slots__ = ()
    kind = "Clock"
    lineage = ("Clock", "Waveform", "Node")
    roles = (("frequency", "scalar"), ("phase", "scalar"), ("duration", "duration"))
    unbounded_ok = True
    frequency = _param(0)
    phase = _param(1)

    def __init__(self, frequency, phase=0.0, duration=UNBOUNDED):
        self._freeze({
            "frequency": as_scalar(frequency),
            "phase": as_scalar(phase),
            "duration": as_duration(duration, allow_unbounded=True),
        })


class ClockSeq(Waveform):
    """Clocks played back to back; only the first clock's phase is used."""

    __slots__ = ()
    kind = "ClockSeq"
    lineage = ("ClockSeq", "Waveform", "Node")
    item_role = "clock"
    arity = (1, None)
    unbounded_ok = True

    def __init__(self, *clocks):
        if len(clocks) == 1 and isinstance(clocks[0], (list, tuple)):
            clocks = tuple(clocks[0])
        self._freeze({}, clocks)

    def _check(self) -> None:
        for i, clock in enumerate(self._items[:-1]):
            if clock.duration is UNBOUNDED:
                raise InvalidNode(f"ClockSeq item {i} is unbounded but not last")


def _phase_mode(mode, ref_clock) -> PhaseMode:
    if mode is None:
        return PhaseMode.CONTINUOUS if ref_clock is not None else PhaseMode.ABSOLUTE
    try:
        return PhaseMode(mode.lower() if isinstance(mode, str) else mode)
    except ValueError:
        raise PhaseModeError(f"unknown phase mode {mode!r}") from None


class Sine(Waveform):
    """amplitude * sin(2*pi*frequency*tau + phase [+ reference clock phase])."""

    __slots__ = ("phase_mode",)
    kind = "Sine"
    lineage = ("Sine", "Waveform", "Node")
    roles = (
        ("amplitude", "waveform"),
        ("frequency", "waveform"),
        ("phase", "waveform"),
        ("ref_clock", "reference"),
        ("duration", "duration"),
    )
    payload_fields = ("phase_mode",)
    state_fields = ("phase_mode",)
    amplitude = _param(0)
    frequency = _param(1)
    phase = _param(2)
    ref_clock = _param(3)

    def __init__(self, amplitude, frequency, phase, duration, phase_mode=None, ref_clock=None):
        d = as_duration(duration)
        object.__setattr__(self, "phase_mode", _phase_mode(phase_mode, ref_clock))
        self._freeze({
            "amplitude": as_waveform(amplitude, d),
            "frequency": as_waveform(frequency, d),
            "phase": as_waveform(phase, d),
            "ref_clock": ref_clock,
            "duration": d,
        })

    def _check(self) -> None:
        if self.phase_mode is PhaseMode.CONTINUOUS and self.ref_clock is None:
            raise PhaseModeError("continuous phase mode requires a reference clock")
        if self.phase_mode is PhaseMode.ABSOLUTE and self.ref_clock is not None:
            raise PhaseModeError("absolute phase mode does not take a reference clock")


class _ModulatedSine(Waveform):
    __slots__ = ()
    roles = (
        ("carrier", "clock"),
        ("modulation", "waveform"),
        ("amplitude", "waveform"),
        ("phase", "waveform"),
        ("duration", "duration"),
    )
    carrier = _param(0)
    modulation = _param(1)
    amplitude = _param(2)
    phase = _param(3)
    phase_mode = PhaseMode.CONTINUOUS

    def __init__(self, carrier, modulation, amplitude, phase, duration):
        d = as_duration(duration)
        self._freeze({
            "carrier": carrier,
            "modulation": as_waveform(modulation, d),
            "amplitude": as_waveform(amplitude, d),
            "phase": as_waveform(phase, d),
            "duration": d,
        })

    @property
    def ref_clock(self):
        return self.carrier


class SineFM(_ModulatedSine):
    """Sine whose frequency is carrier frequency + modulation (Hz)."""

    __slots__ = ()
    kind = "SineFM"
    lineage = ("SineFM", "Sine", "Waveform", "Node")


class SinePM(_ModulatedSine):
    """Sine whose phase is offset by the modulation (radians)."""

    __slots__ = ()
    kind = "SinePM"
    lineage = ("SinePM", "Sine", "Waveform", "Node")


class WaveformOperator(Waveform):
    __slots__ = ()
    lineage = ("WaveformOperator", "Waveform", "OperatorNode")
    item_role = "waveform"
    arity = (1, None)

    def __init__(self, *items):
        if len(items) == 1 and isinstance(items[0], (list, tuple)):
            items = tuple(items[0])
        left = next((i for i in items if isinstance(i, Waveform)), None)
        if left is None and items:
            raise CategoryViolation(f"{self.kind} needs at least one waveform item")
        if left is not None and not all(isinstance(i, Waveform) for i in items):
            items = [left._promote(i) for i in items]
        self._freeze({}, items)


class WaveformSum(WaveformOperator):
    __slots__ = ()
    kind = "WaveformSum"
    lineage = ("WaveformSum",) + WaveformOperator.lineage


class WaveformProduct(WaveformOperator):
    __slots__ = ()
    kind = "WaveformProduct"
    lineage = ("WaveformProduct",) + WaveformOperator.lineage


class WaveformSub(WaveformOperator):
    __slots__ = ()
    kind = "WaveformSub"
    lineage = ("WaveformSub",) + WaveformOperator.lineage
    arity = (2, 2)


class WaveformDiv(WaveformOperator):
    __slots__ = ()
    kind = "WaveformDiv"
    lineage = ("WaveformDiv",) + WaveformOperator.lineage
    arity = (2, 2)


class WaveformNeg(WaveformOperator):
    __slots__ = ()
    kind = "WaveformNeg"
    lineage = ("WaveformNeg",) + WaveformOperator.lineage
    arity = (1, 1)


class Sequence(WaveformOperator):
    """Concatenation; item i starts when item i-1 ends."""

    __slots__ = ()
    kind = "Sequence"
    lineage = ("Sequence",) + WaveformOperator.lineage
    arity = (0, None)

    def __init__(self, *items):
        if len(items) == 1 and isinstance(items[0], (list, tuple)):
            items = tuple(items[0])
        self._freeze({}, items)


KINDS: dict[str, type[Node]] = {
    cls.kind: cls
    for cls in (
        Num, Var, ScalarSum, ScalarProduct, ScalarSub, ScalarDiv, ScalarNeg, ScalarMin, ScalarMax,
        Const, Zero, Ramp, Triangle, Gaussian, Polynomial, Power, Clock, ClockSeq,
        Sine, SineFM, SinePM,
        WaveformSum, WaveformProduct, WaveformSub, WaveformDiv, WaveformNeg, Sequence,
    )
}

LINEAGE: dict[str, tuple[str, ...]] = {name: cls.lineage for name, cls in KINDS.items()}

CLOCK_KINDS = (Clock, ClockSeq)

_SCALAR_OPS = {
    "Sum": ScalarSum, "Product": ScalarProduct, "Sub": ScalarSub, "Div": ScalarDiv,
    "Neg": ScalarNeg, "Min": ScalarMin, "Max": ScalarMax,
}
_WAVEFORM_OPS = {
    "Sum": WaveformSum, "Product": WaveformProduct, "Sub": WaveformSub,
    "Div": WaveformDiv, "Neg": WaveformNeg,
}


def operator(name: str, *items) -> Node:
    """Build the scalar or waveform operator ``name`` depending on the items."""
    if len(items) == 1 and isinstance(items[0], (list, tuple)):
        items = tuple(items[0])
    if any(isinstance(i, Waveform) for i in items):
        if name not in _WAVEFORM_OPS:
            raise CategoryViolation(f"{name} is not defined for waveforms")
        return _WAVEFORM_OPS[name](*items)
    return _SCALAR_OPS[name](*items)


def Sum(*items):
    return operator("Sum", *items)


def Product(*items):
    return operator("Product", *items)


def Sub(*items):
    return operator("Sub", *items)


def Div(*items):
    return operator("Div", *items)


def Neg(*items):
    return operator("Neg", *items)


def Min(*items):
    return operator("Min", *items)


def Max(*items):
    return operator("Max", *items)


def identity_equal(a: Node, b: Node) -> bool:
    return a is b


def structural_equal(a: Node, b: Node) -> bool:
    """True when kinds, payloads and all children match recursively."""
    seen: set[tuple[int, int]] = set()

    def eq(x, y) -> bool:
        if x is y:
            return True
        if not (isinstance(x, Node) and isinstance(y, Node)):
            return False
        key = (id(x), id(y))
        if key in seen:
            return True
        if x.kind != y.kind or x.payload() != y.payload():
            return False
        cx, cy = x.children(), y.children()
        if len(cx) != len(cy):
            return False
        for (lx, nx), (ly, ny) in zip(cx, cy):
            if lx != ly or not eq(nx, ny):
                return False
        seen.add(key)
        return True

    return eq(a, b)


def iter_unique(root: Node):
    """Yield ``(path, node)`` for each distinct node, depth-first preorder."""
    seen: set[int] = set()
    stack = [((), root)]
    while stack:
        path, node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield path, node
        for label, child in reversed(node.children()):
            if id(child) not in seen:
                stack.append((path + (label,), child))
