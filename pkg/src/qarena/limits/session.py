"""The ε-δ / ε-N game as an explicit state machine.

Roles are anchored to the original limit claim: the Verifier defends it
(owns a and δ/N/M), the Falsifier disputes it (owns ε and the sample point
x/n). A divergence session plays the negated formula; the movers stay the
same, the quantifier kinds (and thus the scheme) flip, and the Falsifier is
the side trying to make |f(x) - a| ≥ ε come out true.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .certify import EffortExhaustedError, UnregisteredProblemError, \
    closed_form_delta, find_delta
from .expr import EvalDomainError, Expr, LimitsError, eval_point, parse_expr
from .problems import (
    DEFAULT_REGISTRY,
    LimitKind,
    LimitProblem,
    Registry,
    analytic_tail_bound,
)
from .strategies import choose_epsilon, find_N, find_witness


class LimitRole(Enum):
    VERIFIER = "verifier"   # defends the limit claim
    FALSIFIER = "falsifier"  # disputes it

    @property
    def opponent(self) -> "LimitRole":
        return (LimitRole.FALSIFIER if self is LimitRole.VERIFIER
                else LimitRole.VERIFIER)


class Phase(Enum):
    CHOOSE_A = "choose_a"
    CHOOSE_EPSILON = "choose_epsilon"
    CHOOSE_DELTA = "choose_delta"
    CHOOSE_N = "choose_n"
    CHOOSE_M = "choose_m"
    CHOOSE_X = "choose_x"
    CHOOSE_INDEX = "choose_index"
    DONE = "done"


_PHASE_OWNER = {
    Phase.CHOOSE_A: LimitRole.VERIFIER,
    Phase.CHOOSE_EPSILON: LimitRole.FALSIFIER,
    Phase.CHOOSE_DELTA: LimitRole.VERIFIER,
    Phase.CHOOSE_N: LimitRole.VERIFIER,
    Phase.CHOOSE_M: LimitRole.VERIFIER,
    Phase.CHOOSE_X: LimitRole.FALSIFIER,
    Phase.CHOOSE_INDEX: LimitRole.FALSIFIER,
}

_BOUND_PHASE = {
    LimitKind.FUNCTION_AT_POINT: Phase.CHOOSE_DELTA,
    LimitKind.SEQUENCE: Phase.CHOOSE_N,
    LimitKind.FUNCTION_AT_INFINITY: Phase.CHOOSE_M,
}

_SAMPLE_PHASE = {
    LimitKind.FUNCTION_AT_POINT: Phase.CHOOSE_X,
    LimitKind.SEQUENCE: Phase.CHOOSE_INDEX,
    LimitKind.FUNCTION_AT_INFINITY: Phase.CHOOSE_X,
}


class MoveRejected(LimitsError):
    """Base class for illegal session moves."""


class WrongMoverError(MoveRejected):
    pass


class NonpositiveValueError(MoveRejected):
    pass


class OutOfWindowError(MoveRejected):
    """x outside the punctured δ-window (or below M)."""


class IndexNotBeyondNError(MoveRejected):
    pass


class SessionOverError(MoveRejected):
    pass


@dataclass(frozen=True)
class MoveEvent:
    phase: Phase
    mover: LimitRole
    value: float


@dataclass(frozen=True)
class LimitSession:
    kind: LimitKind
    expr: Expr
    expr_text: str
    divergence: bool
    human_role: LimitRole
    x0: Optional[float] = None
    a: Optional[float] = None
    eps: Optional[float] = None
    bound: Optional[float] = None  # δ, N or M depending on kind
    sample: Optional[float] = None  # x or n
    phase: Phase = Phase.CHOOSE_A
    winner: Optional[LimitRole] = None
    matrix_holds: Optional[bool] = None
    deviation: Optional[float] = None  # |f(sample) - a| at the verdict
    transcript: tuple[MoveEvent, ...] = ()

    @property
    def engine_role(self) -> LimitRole:
        return self.human_role.opponent

    @property
    def mover(self) -> Optional[LimitRole]:
        if self.phase is Phase.DONE:
            return None
        return _PHASE_OWNER[self.phase]

    @property
    def problem(self) -> LimitProblem:
        if self.a is None:
            raise LimitsError("no claimed limit yet")
        return LimitProblem(self.kind, self.expr, self.a, self.x0)

    @property
    def scheme(self) -> str:
        """Quantifier kinds of the four moves; divergence flips them."""
        base = "∃∀∃∀"
        if not self.divergence:
            return base
        return "".join("∀" if c == "∃" else "∃" for c in base)


def new_session(kind: LimitKind, expr: str | Expr, *,
                x0: float | None = None,
                divergence: bool = False,
                human_role: LimitRole = LimitRole.FALSIFIER,
                a: float | None = None) -> LimitSession:
    expr_text = expr if isinstance(expr, str) else None
    e = parse_expr(expr) if isinstance(expr, str) else expr
    if expr_text is None:
        from .expr import render_expr

        expr_text = render_expr(e)
    if kind is LimitKind.FUNCTION_AT_POINT and x0 is None:
        raise LimitsError("function-at-point sessions need x0")
    s = LimitSession(kind=kind, expr=e, expr_text=expr_text,
                     divergence=divergence, human_role=human_role, x0=x0)
    if a is not None:
        # A claim fixed in the configuration counts as the opening move.
        s = session_step(s, a, mover=LimitRole.VERIFIER)
    return s


def _next_phase(s: LimitSession) -> Phase:
    order = [Phase.CHOOSE_A, Phase.CHOOSE_EPSILON, _BOUND_PHASE[s.kind],
             _SAMPLE_PHASE[s.kind], Phase.DONE]
    return order[order.index(s.phase) + 1]


def session_step(s: LimitSession, value: float,
                 mover: LimitRole | None = None) -> LimitSession:
    """Apply one move; phase-appropriate validation, distinct rejections."""
    if s.phase is Phase.DONE:
        raise SessionOverError("the game is over")
    owner = _PHASE_OWNER[s.phase]
    if mover is not None and mover is not owner:
        raise WrongMoverError(
            f"phase {s.phase.value} belongs to the {owner.value}")
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise MoveRejected("moves must be finite numbers")

    updates: dict = {}
    if s.phase is Phase.CHOOSE_A:
        updates["a"] = value
    elif s.phase is Phase.CHOOSE_EPSILON:
        if not value > 0.0:
            raise NonpositiveValueError("ε must be positive")
        updates["eps"] = value
    elif s.phase is Phase.CHOOSE_DELTA:
        if not value > 0.0:
            raise NonpositiveValueError("δ must be positive")
        updates["bound"] = value
    elif s.phase is Phase.CHOOSE_N:
        if value != int(value) or value < 0:
            raise MoveRejected("N must be a non-negative integer")
        updates["bound"] = float(int(value))
    elif s.phase is Phase.CHOOSE_M:
        updates["bound"] = value
    elif s.phase is Phase.CHOOSE_X:
        if s.kind is LimitKind.FUNCTION_AT_POINT:
            if not (0.0 < abs(value - s.x0) < s.bound):
                raise OutOfWindowError(
                    f"x must satisfy 0 < |x - {s.x0}| < {s.bound}")
        else:
            if value < s.bound:
                raise OutOfWindowError(f"x must satisfy x >= {s.bound}")
        updates["sample"] = value
    elif s.phase is Phase.CHOOSE_INDEX:
        if value != int(value):
            raise MoveRejected("n must be an integer")
        if not value > s.bound:
            raise IndexNotBeyondNError(f"n must exceed N = {int(s.bound)}")
        updates["sample"] = float(int(value))

    event = MoveEvent(s.phase, owner, value)
    s = replace(s, transcript=s.transcript + (event,), **updates)
    s = replace(s, phase=_next_phase(s))
    if s.phase is Phase.DONE:
        s = _settle(s)
    return s


def _settle(s: LimitSession) -> LimitSession:
    try:
        deviation = abs(eval_point(s.expr, s.sample) - s.a)
    except EvalDomainError:
        # The sample hit a hole in f's domain; the mover of the sample
        # failed to produce a counterexample (or example).
        return replace(s, matrix_holds=None, deviation=None,
                       winner=LimitRole.VERIFIER)
    holds = deviation < s.eps
    # In both game forms the Verifier wins exactly when the convergence
    # matrix |f(x) - a| < ε holds; the divergence game plays the negated
    # formula, whose asserting side is the Falsifier.
    winner = LimitRole.VERIFIER if holds else LimitRole.FALSIFIER
    return replace(s, matrix_holds=holds, deviation=deviation, winner=winner)


# ------------------------------------------------------------ engine moves

def engine_owns(s: LimitSession) -> bool:
    return s.phase is not Phase.DONE and s.mover is s.engine_role


def engine_move(s: LimitSession,
                registry: Registry = DEFAULT_REGISTRY) -> float:
    """Deterministic engine choice for the current phase."""
    if s.phase is Phase.CHOOSE_A:
        true_limit = registry.true_limit(
            LimitProblem(s.kind, s.expr, 0.0, s.x0))
        if true_limit is not None:
            return true_limit
        return _estimate_limit(s)
    if s.phase is Phase.CHOOSE_EPSILON:
        return choose_epsilon(s.problem, registry)
    if s.phase is Phase.CHOOSE_DELTA:
        try:
            return closed_form_delta(s.problem, s.eps, registry)
        except (UnregisteredProblemError, LimitsError):
            pass
        try:
            delta, _ = find_delta(s.problem, s.eps)
            return delta
        except EffortExhaustedError:
            return 1e-6  # desperate; the claim is probably false
    if s.phase in (Phase.CHOOSE_N, Phase.CHOOSE_M):
        entry = registry.lookup_problem(s.problem)
        if entry is not None and entry.closed_form is not None \
                and entry.true_limit == s.a:
            return float(analytic_tail_bound(entry, s.eps))
        tail = find_N(s.problem, s.eps)
        if tail is not None:
            return float(tail.value)
        return 1e6
    if s.phase in (Phase.CHOOSE_X, Phase.CHOOSE_INDEX):
        witness = find_witness(s.problem, s.eps, s.bound)
        if witness is not None:
            return witness.value
        return _concede_sample(s)
    raise SessionOverError("no move to make")


def _estimate_limit(s: LimitSession) -> float:
    probes = ([s.x0 + 2.0 ** -20, s.x0 - 2.0 ** -20, s.x0]
              if s.kind is LimitKind.FUNCTION_AT_POINT
              else [2.0 ** 24, 2.0 ** 20])
    for x in probes:
        try:
            return eval_point(s.expr, x)
        except EvalDomainError:
            continue
    return 0.0


def _concede_sample(s: LimitSession) -> float:
    """A legal sample when no violating witness exists."""
    if s.kind is LimitKind.FUNCTION_AT_POINT:
        for frac in (0.5, 0.25, 0.75, 0.125):
            x = s.x0 + s.bound * frac
            try:
                eval_point(s.expr, x)
                return x
            except EvalDomainError:
                continue
        return s.x0 + s.bound * 0.5
    if s.kind is LimitKind.SEQUENCE:
        return float(int(s.bound) + 1)
    return s.bound + 1.0


def run_engine(s: LimitSession,
               registry: Registry = DEFAULT_REGISTRY) -> LimitSession:
    """Advance through every consecutive engine-owned phase."""
    while engine_owns(s):
        s = session_step(s, engine_move(s, registry), mover=s.engine_role)
    return s
