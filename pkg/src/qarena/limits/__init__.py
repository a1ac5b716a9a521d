from .certify import (
    Certificate,
    CertifiedPiece,
    EffortExhaustedError,
    Proved,
    Refuted,
    Unknown,
    UnregisteredProblemError,
    Verdict,
    closed_form_delta,
    find_delta,
    validate_registry_entry,
    verify_delta,
)
from .expr import (
    EvalDomainError,
    Expr,
    ExprSyntaxError,
    LimitsError,
    eval_point,
    expr_vars,
    is_constant,
    parse_expr,
    render_expr,
)
from .interval import Interval, eval_interval
from .problems import (
    DEFAULT_REGISTRY,
    DEFAULT_REGISTRY_TEXT,
    LimitKind,
    LimitProblem,
    Registry,
    RegistryEntry,
    load_registry,
    parse_registry,
    render_registry,
)
from .session import (
    IndexNotBeyondNError,
    LimitRole,
    LimitSession,
    MoveEvent,
    MoveRejected,
    NonpositiveValueError,
    OutOfWindowError,
    Phase,
    SessionOverError,
    WrongMoverError,
    engine_move,
    engine_owns,
    new_session,
    run_engine,
    session_step,
)
from .strategies import TailBound, Witness, choose_epsilon, find_N, find_witness

__all__ = [
    "Certificate", "CertifiedPiece", "DEFAULT_REGISTRY",
    "DEFAULT_REGISTRY_TEXT", "EffortExhaustedError", "EvalDomainError",
    "Expr", "ExprSyntaxError", "IndexNotBeyondNError", "Interval",
    "LimitKind", "LimitProblem", "LimitRole", "LimitSession", "LimitsError",
    "MoveEvent", "MoveRejected", "NonpositiveValueError", "OutOfWindowError",
    "Phase", "Proved", "Refuted", "Registry", "RegistryEntry",
    "SessionOverError", "TailBound", "Unknown", "UnregisteredProblemError",
    "Verdict", "Witness", "WrongMoverError", "choose_epsilon",
    "closed_form_delta", "engine_move", "engine_owns", "eval_interval",
    "eval_point", "expr_vars", "find_N", "find_delta", "find_witness",
    "is_constant", "load_registry", "new_session", "parse_expr",
    "parse_registry", "render_expr", "render_registry", "run_engine",
    "session_step", "validate_registry_entry", "verify_delta",
]
