"""Seeded random graph generators and independent oracles used by the tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from pulsegraph import nodes as n

WAVEFORM_PARAMS = {
    "Sine": ("amplitude", "frequency", "phase"),
    "SineFM": ("modulation", "amplitude", "phase"),
    "SinePM": ("modulation", "amplitude", "phase"),
}


class GraphGen:
    """Random scalar and waveform DAGs over a fixed pool of variables."""

    def __init__(self, seed: int, n_vars: int = 4, max_depth: int = 8):
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.keys = [f"v{i}" for i in range(n_vars)]
        self.bindings = {k: self.rng.uniform(0.1, 5.0) for k in self.keys}
        self.shared: list = []

    # durations are mostly positive; Sub may make them negative, which is fine
    def scalar(self, depth: int):
        r = self.rng
        if depth >= self.max_depth or r.random() < 0.45:
            if r.random() < 0.5:
                return n.Var(r.choice(self.keys))
            return n.Num(r.choice([0.5, 1.0, 1.25, 2.0, 3.0, r.uniform(0.1, 4.0)]))
        kind = r.choice(["Sum", "Product", "Min", "Max", "Sub", "Neg"])
        if kind in ("Sub",):
            return n.ScalarSub(self.scalar(depth + 1), self.scalar(depth + 1))
        if kind == "Neg":
            return n.ScalarNeg(self.scalar(depth + 1))
        cls = {"Sum": n.ScalarSum, "Product": n.ScalarProduct, "Min": n.ScalarMin, "Max": n.ScalarMax}[kind]
        return cls(*[self.scalar(depth + 1) for _ in range(r.randint(1, 3))])

    def clock(self, depth: int, unbounded_ok=True):
        # the clock sits at depth + 1 below its owner
        d = n.UNBOUNDED if unbounded_ok and self.rng.random() < 0.4 else self.scalar(depth + 2)
        return n.Clock(self.rng.uniform(1.0, 10.0), self.rng.uniform(0, 1), d)

    def waveform(self, depth: int = 0):
        """A waveform whose subgraph keeps every node within ``max_depth``."""
        r = self.rng
        room = self.max_depth - depth
        reusable = [w for w, h in self.shared if h <= room]
        if reusable and r.random() < 0.1:
            return r.choice(reusable)
        kinds = ["Const", "Zero", "Ramp", "Triangle", "Gaussian", "Polynomial", "Power", "Clock"]
        if room >= 2:
            kinds.append("ClockSeq")
            if r.random() > 0.35:
                kinds = ["Sine", "SineFM", "SinePM", "Sum", "Product", "Sub", "Div", "Neg", "Sequence"]
        w = self._build(r.choice(kinds), depth)
        self.shared.append((w, height(w)))
        return w

    def _param(self, depth):
        r = self.rng.random()
        if r < 0.5:
            return self.rng.uniform(0.1, 2.0)
        return self.waveform(depth + 1)

    def _build(self, kind, depth):
        r = self.rng
        s = lambda: self.scalar(depth + 1)  # noqa: E731
        if kind == "Const":
            return n.Const(s(), s())
        if kind == "Zero":
            return n.Zero(s())
        if kind == "Ramp":
            return n.Ramp(s(), s(), s())
        if kind == "Triangle":
            return n.Triangle(s(), s())
        if kind == "Gaussian":
            return n.Gaussian(s(), s(), s())
        if kind == "Polynomial":
            return n.Polynomial([s() for _ in range(r.randint(1, 3))], s())
        if kind == "Power":
            return n.Power(s(), s(), s())
        if kind == "Clock":
            return self.clock(depth)
        if kind == "ClockSeq":
            k = r.randint(1, 3)
            return n.ClockSeq(*[self.clock(depth, unbounded_ok=(i == k - 1)) for i in range(k)])
        if kind == "Sine":
            ref = self.clock(depth) if r.random() < 0.5 else None
            # plain-number params become Const(x, duration): one level deeper
            d = self.scalar(depth + 2)
            return n.Sine(self._param(depth), self._param(depth), self._param(depth), d, ref_clock=ref)
        if kind in ("SineFM", "SinePM"):
            cls = n.SineFM if kind == "SineFM" else n.SinePM
            d = self.scalar(depth + 2)
            return cls(self.clock(depth), self._param(depth), self._param(depth), self._param(depth), d)
        items = lambda k: [self.waveform(depth + 1) for _ in range(k)]  # noqa: E731
        if kind == "Sum":
            return n.WaveformSum(*items(r.randint(1, 3)))
        if kind == "Product":
            return n.WaveformProduct(*items(r.randint(1, 3)))
        if kind == "Sub":
            return n.WaveformSub(*items(2))
        if kind == "Div":
            return n.WaveformDiv(*items(2))
        if kind == "Neg":
            return n.WaveformNeg(*items(1))
        return n.Sequence(*items(r.randint(0, 3)))


def height(w) -> int:
    """Longest edge count from ``w`` down to a leaf."""
    memo: dict[int, int] = {}

    def go(x):
        if id(x) not in memo:
            memo[id(x)] = 1 + max((go(c) for _, c in x.children()), default=-1)
        return memo[id(x)]

    return go(w)


# ----------------------------------------------------------------- oracles


def eval_scalar(s, bindings=None):
    """Plain recursive scalar evaluation in exact rationals."""
    bindings = bindings or {}
    if isinstance(s, n.Num):
        return Fraction(s.value)
    if isinstance(s, n.Var):
        return Fraction(bindings[s.key])
    vals = [eval_scalar(i, bindings) for i in s.items]
    k = s.kind
    if k == "ScalarSum":
        total = vals[0]
        for v in vals[1:]:
            total = total + v
        return total
    if k == "ScalarProduct":
        total = vals[0]
        for v in vals[1:]:
            total = total * v
        return total
    if k == "ScalarSub":
        return vals[0] - vals[1]
    if k == "ScalarDiv":
        return vals[0] / vals[1]
    if k == "ScalarNeg":
        return -vals[0]
    if k == "ScalarMin":
        return min(vals)
    if k == "ScalarMax":
        return max(vals)
    raise AssertionError(k)


def brute_duration(w, bindings=None):
    """Exact effective duration from first principles; inf stands for unbounded."""
    k = w.kind
    if k in ("Sequence", "ClockSeq"):
        total = Fraction(0)
        for i in w.items:
            total = total + brute_duration(i, bindings)
        return total
    if k in ("WaveformProduct", "WaveformDiv"):
        return min(brute_duration(i, bindings) for i in w.items)
    if k in ("WaveformSum", "WaveformSub"):
        return max(brute_duration(i, bindings) for i in w.items)
    if k == "WaveformNeg":
        return brute_duration(w.items[0], bindings)
    own = w.param("duration")
    own = math.inf if own is n.UNBOUNDED else eval_scalar(own, bindings)
    params = [brute_duration(w.param(label), bindings) for label in WAVEFORM_PARAMS.get(k, ())]
    return min([own] + params)


def scalar_graph(rng: random.Random, size: int, keys=("x", "y", "z"), integers=True):
    """Random scalar DAG with about ``size`` operator nodes; no division."""
    pool = [n.Var(k) for k in keys]
    pool += [n.Num(rng.randint(-3, 3) if integers else rng.uniform(-3, 3)) for _ in range(3)]
    kinds = [n.ScalarSum, n.ScalarProduct, n.ScalarMin, n.ScalarMax, n.ScalarSub, n.ScalarNeg]
    for _ in range(size):
        cls = rng.choice(kinds)
        if cls is n.ScalarNeg:
            node = cls(rng.choice(pool))
        elif cls is n.ScalarSub:
            node = cls(rng.choice(pool), rng.choice(pool))
        else:
            node = cls(*[rng.choice(pool[-6:] + pool[:3]) for _ in range(rng.randint(1, 3))])
        pool.append(node)
    return pool[-1]
