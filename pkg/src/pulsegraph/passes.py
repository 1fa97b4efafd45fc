"""Visitors, transformers, standard rewrite passes and pipelines.

Dispatch walks ``node.lineage`` most-specific first and calls the first
``visit_<Kind>`` method found. A handler rejects a node by returning
``NotImplemented``; the search then continues down the lineage and finally
falls back to ``generic_visit``.

A :class:`Visitor` walks every distinct node of a DAG once and returns the
root unchanged. A :class:`Transformer` rewrites bottom-up: handlers receive
a node whose children are already transformed, and returning the same
instance means "unchanged".
"""

from __future__ import annotations

import copy
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Mapping, NamedTuple

from .duration import duration_expr
from .errors import (
    CategoryViolation,
    ClockReplacement,
    DivisionByZero,
    PipelineError,
    PulseGraphError,
    ScheduleViolation,
    UnboundVariable,
    VisitError,
)
from .evaluate import Evaluator, expand_sine_fm, expand_sine_pm
from .nodes import (
    CLOCK_KINDS,
    UNBOUNDED,
    Node,
    Num,
    ScalarDiv,
    ScalarMax,
    ScalarMin,
    ScalarNeg,
    ScalarProduct,
    ScalarSub,
    ScalarSum,
    Sequence,
    Var,
    Waveform,
    WaveformNeg,
    WaveformProduct,
    WaveformSum,
)
from .schedule import Schedule, Violation


class Visitor:
    """Read-only graph walk with lineage-based dispatch."""

    def __init__(self):
        self._path: list[str] = []
        self._seen: set[int] = set()

    @property
    def path(self) -> tuple[str, ...]:
        """Edge labels from the root to the node being visited."""
        return tuple(self._path)

    def run(self, root: Node) -> Node:
        self._path = []
        self._seen = {id(root)}
        return self._guarded(root)

    def visit(self, node: Node) -> Node:
        for name in node.lineage:
            handler = getattr(self, f"visit_{name}", None)
            if handler is None:
                continue
            result = handler(node)
            if result is not NotImplemented:
                return node
        self.generic_visit(node)
        return node

    def generic_visit(self, node: Node) -> None:
        for label, child in node.children():
            if id(child) in self._seen:
                continue
            self._seen.add(id(child))
            self._path.append(label)
            self.visit(child)
            self._path.pop()

    def _guarded(self, root: Node) -> Node:
        try:
            return self.visit(root)
        except PulseGraphError as exc:
            if exc.path is None:
                exc.path = self.path
            raise
        except Exception as exc:
            raise VisitError(f"{type(exc).__name__}: {exc}", path=self.path) from exc


def _check_replacement(old: Node, new) -> None:
    if not isinstance(new, Node):
        raise CategoryViolation(f"handler for {old.kind} returned {type(new).__name__}")
    if new.category != old.category:
        raise CategoryViolation(f"{old.kind} ({old.category}) replaced by {new.kind} ({new.category})")
    if isinstance(old, CLOCK_KINDS) and not isinstance(new, CLOCK_KINDS):
        raise ClockReplacement(f"clock {old.kind} replaced by {new.kind}")


class Transformer(Visitor):
    """Bottom-up rewriter. Unchanged subgraphs keep their identity."""

    def run(self, root: Node) -> Node:
        self._path = []
        self._memo: dict[int, tuple[Node, Node]] = {}
        return self._guarded(root)

    def _guarded(self, root: Node) -> Node:
        new = super()._guarded(root)
        if new is not root:
            try:
                _check_replacement(root, new)
            except PulseGraphError as exc:
                exc.path = ()
                raise
        return new

    def visit(self, node: Node) -> Node:
        node = self.generic_visit(node)
        for name in node.lineage:
            handler = getattr(self, f"visit_{name}", None)
            if handler is None:
                continue
            result = handler(node)
            if result is NotImplemented:
                continue
            if result is not node:
                _check_replacement(node, result)
            return result
        return node

    def generic_visit(self, node: Node) -> Node:
        changed = {}
        for label, child in node.children():
            hit = self._memo.get(id(child))
            if hit is None:
                self._path.append(label)
                new = self.visit(child)
                if new is not child:
                    _check_replacement(child, new)
                self._path.pop()
                self._memo[id(child)] = (child, new)
            else:
                new = hit[1]
            if new is not child:
                changed[label] = new
        return node.with_children(changed) if changed else node


# ------------------------------------------------------------ standard passes


class Substitute(Transformer):
    """Replace bound variables with numbers that remember their key."""

    name = "substitute"

    def __init__(self, bindings: Mapping[str, float] | None = None):
        super().__init__()
        self.bindings = dict(bindings or {})

    def visit_Var(self, node: Var):
        if node.key in self.bindings:
            return Num(self.bindings[node.key], origin=node.key)
        return node


class Unbind(Transformer):
    """Turn numbers produced by substitution back into variables."""

    name = "unbind"

    def __init__(self, keys: Iterable[str] = ()):
        super().__init__()
        self.keys = set(keys)

    def visit_Num(self, node: Num):
        if node.origin is not None and node.origin in self.keys:
            return Var(node.origin)
        return node


_FOLDABLE = {"ScalarSum", "ScalarProduct", "ScalarMin", "ScalarMax"}


class Fold(Transformer):
    """Evaluate scalar operators whose items are numbers.

    Sum/Product/Min/Max with a mix of numbers and other items get their
    numbers merged into one, placed where the first number was.
    """

    name = "fold"

    def __init__(self):
        super().__init__()
        self._ev = Evaluator()

    def visit_ScalarOperator(self, node):
        nums = [i for i in node.items if isinstance(i, Num)]
        if len(nums) == len(node.items):
            try:
                return Num(self._ev.scalar(node))
            except DivisionByZero:
                return node
        if node.kind in _FOLDABLE and len(nums) > 1:
            merged = Num(self._ev.scalar(type(node)(*nums)))
            items, placed = [], False
            for i in node.items:
                if isinstance(i, Num):
                    if not placed:
                        items.append(merged)
                        placed = True
                else:
                    items.append(i)
            return type(node)(*items)
        return node


def _is_num(node, value) -> bool:
    return isinstance(node, Num) and node.value == value


class Simplify(Transformer):
    """Structural cleanups that keep values and durations intact."""

    name = "simplify"

    def __init__(self):
        super().__init__()
        self._ev = Evaluator()

    def _flatten(self, node):
        items = []
        for i in node.items:
            if type(i) is type(node):
                items.extend(i.items)
            else:
                items.append(i)
        return items

    def visit_ScalarOperator(self, node):
        kind = node.kind
        if kind in ("ScalarSum", "ScalarProduct", "ScalarMin", "ScalarMax"):
            items = self._flatten(node)
            if kind == "ScalarSum":
                items = [i for i in items if not _is_num(i, 0)] or [Num(0)]
            elif kind == "ScalarProduct":
                items = [i for i in items if not _is_num(i, 1)] or [Num(1)]
            if len(items) == 1:
                return items[0]
            if len(items) == len(node.items) and all(a is b for a, b in zip(items, node.items)):
                return node
            return type(node)(*items)
        if kind == "ScalarSub" and _is_num(node.items[1], 0):
            return node.items[0]
        if kind == "ScalarDiv" and _is_num(node.items[1], 1):
            return node.items[0]
        if kind == "ScalarNeg" and isinstance(node.items[0], ScalarNeg):
            return node.items[0].items[0]
        return node

    def _zero_length(self, w: Waveform) -> bool:
        d = duration_expr(w)
        if d is UNBOUNDED:
            return False
        try:
            return self._ev.scalar(d) == 0
        except (UnboundVariable, DivisionByZero):
            return False

    def visit_WaveformOperator(self, node):
        if isinstance(node, WaveformNeg):
            inner = node.items[0]
            return inner.items[0] if isinstance(inner, WaveformNeg) else node
        if not isinstance(node, (WaveformSum, WaveformProduct, Sequence)):
            return node
        items = self._flatten(node)
        if isinstance(node, Sequence):
            items = [i for i in items if not self._zero_length(i)]
        if len(items) == 1:
            return items[0]
        if len(items) == len(node.items) and all(a is b for a, b in zip(items, node.items)):
            return node
        return type(node)(items)


class ExpandModulated(Transformer):
    """Rewrite SineFM/SinePM as plain continuous Sine nodes."""

    name = "expand"

    def visit_SineFM(self, node):
        return expand_sine_fm(node)

    def visit_SinePM(self, node):
        return expand_sine_pm(node)


class Validate(Visitor):
    """Collect waveforms with a negative resolved duration.

    With ``strict`` the run raises :class:`ScheduleViolation` when any
    violation was found.
    """

    name = "validate"

    def __init__(self, strict: bool = True):
        super().__init__()
        self.strict = strict
        self.violations: list[Violation] = []
        self._ev = Evaluator()

    def run(self, root: Node) -> Node:
        self.violations = []
        out = super().run(root)
        if self.strict and self.violations:
            raise ScheduleViolation(self.violations)
        return out

    def visit_Waveform(self, node):
        d = self._ev.duration(node)
        if d < 0:
            self.violations.append(Violation(None, self.path, node, d))
        self.generic_visit(node)


class NodeCounter(Visitor):
    name = "count"

    def __init__(self):
        super().__init__()
        self.count = 0

    def visit_Node(self, node):
        self.count += 1
        self.generic_visit(node)

    visit_OperatorNode = visit_Node


# ------------------------------------------------------------ functional API


def substitute(root: Node, bindings: Mapping[str, float]) -> Node:
    return Substitute(bindings).run(root)


def unbind(root: Node, keys: Iterable[str]) -> Node:
    return Unbind(keys).run(root)


def fold_constants(root: Node) -> Node:
    return Fold().run(root)


def simplify(root: Node) -> Node:
    return Simplify().run(root)


def normalize(root: Node, max_rounds: int = 32) -> Node:
    """Alternate fold and simplify until nothing changes."""
    for _ in range(max_rounds):
        new = simplify(fold_constants(root))
        if new is root:
            break
        root = new
    return root


# ----------------------------------------------------------------- pipelines


class PassResult(NamedTuple):
    graph: Node
    visitors: tuple


def _pass_name(v) -> str:
    return getattr(v, "name", type(v).__name__)


class Pipeline:
    """Ordered passes applied to a graph or to every channel of a schedule.

    Each run deep-copies the configured passes, so state collected by a
    visitor never leaks between runs or channels.
    """

    def __init__(self, passes: Iterable[Visitor] = ()):
        self.passes = list(passes)

    def _run_one(self, graph: Node, channel=None) -> PassResult:
        visitors = tuple(copy.deepcopy(p) for p in self.passes)
        for i, v in enumerate(visitors):
            try:
                graph = v.run(graph)
            except PulseGraphError as exc:
                if isinstance(exc, ScheduleViolation) and channel is not None:
                    exc.violations = [
                        Violation(channel, x.path, x.node, x.duration) for x in exc.violations
                    ]
                err = PipelineError(i, _pass_name(v), exc, channel=channel)
                raise err from exc
        return PassResult(graph, visitors)

    def run(self, target, workers: int | None = None):
        if isinstance(target, Node):
            return self._run_one(target)
        channels = target.waveforms if isinstance(target, Schedule) else dict(target)
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {ch: pool.submit(self._run_one, w, ch) for ch, w in channels.items()}
                return {ch: f.result() for ch, f in futures.items()}
        return {ch: self._run_one(w, ch) for ch, w in channels.items()}
