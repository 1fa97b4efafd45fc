"""Immutable graph IR for parameterized pulses, with passes and lowering backends."""

__version__ = "0.1.0"

from .duration import duration_expr
from .errors import (
    ArityError,
    CategoryViolation,
    ClockReplacement,
    DivisionByZero,
    InvalidNode,
    NegativeDuration,
    PhaseModeError,
    PipelineError,
    PulseGraphError,
    ScheduleError,
    ScheduleViolation,
    SchemaError,
    SingularPower,
    UnboundedDuration,
    UnboundVariable,
    UnsupportedWaveform,
    VisitError,
)
from .evaluate import (
    Evaluator,
    SampleBlock,
    clock_phase,
    expand_modulated,
    render,
    resolve_duration,
    resolve_scalar,
    value_at,
)
from .nodes import (
    UNBOUNDED,
    Clock,
    ClockSeq,
    Const,
    Div,
    Gaussian,
    Max,
    Min,
    Neg,
    Node,
    Num,
    PhaseMode,
    Polynomial,
    Power,
    Product,
    Ramp,
    Scalar,
    Sequence,
    Sine,
    SineFM,
    SinePM,
    Sub,
    Sum,
    Triangle,
    Var,
    Waveform,
    Zero,
    identity_equal,
    structural_equal,
)
from .passes import (
    ExpandModulated,
    Fold,
    NodeCounter,
    Pipeline,
    Simplify,
    Substitute,
    Transformer,
    Unbind,
    Validate,
    Visitor,
    fold_constants,
    normalize,
    simplify,
    substitute,
    unbind,
)
from .schedule import Channel, Schedule, Violation, validate
from .serialize import load_document, node_from_json, node_to_json
from .targets import DdsSegment, emit_samples, munch_dds, synthesize, to_csv, to_dot
