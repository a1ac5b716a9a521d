"""Rigorous certification of δ choices by adaptive interval bisection.

``verify_delta`` answers whether ``0 < |x - x0| < δ  ⟹  |f(x) - a| < ε``
by certifying the *closed* interval [x0-δ, x0+δ] (strictly stronger than
the open-interval requirement), splitting at x0 first. When f is undefined
at x0 itself, a core around x0 of negligible width is refined away and
excluded; the exclusion can only come from domain errors, never from the
inequality failing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .expr import EvalDomainError, Expr, LimitsError, eval_point
from .interval import Interval, eval_interval
from .problems import LimitKind, LimitProblem, Registry, DEFAULT_REGISTRY

DEFAULT_EVAL_BUDGET = 20_000

# A domain-error piece touching x0 narrower than this fraction of δ is
# tolerated as the excluded core (covers f undefined exactly at x0).
_CORE_FRACTION = 2.0 ** -40


@dataclass(frozen=True)
class CertifiedPiece:
    piece: Interval
    bound: Interval  # enclosure of |f(x) - a| over the piece


@dataclass(frozen=True)
class Certificate:
    pieces: tuple[CertifiedPiece, ...]
    excluded_core: Optional[Interval]
    evaluations: int

    def to_json(self) -> str:
        obj = {
            "schema": "certificate/1",
            "pieces": [{"lo": p.piece.lo, "hi": p.piece.hi,
                        "bound_lo": p.bound.lo, "bound_hi": p.bound.hi}
                       for p in self.pieces],
            "excluded_core": (None if self.excluded_core is None else
                              {"lo": self.excluded_core.lo,
                               "hi": self.excluded_core.hi}),
            "evaluations": self.evaluations,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


class Verdict:
    kind = "unknown"


@dataclass(frozen=True)
class Proved(Verdict):
    certificate: Certificate
    kind: str = field(default="proved", init=False, repr=False)


@dataclass(frozen=True)
class Refuted(Verdict):
    witness: float
    magnitude: float  # |f(witness) - a|, re-evaluates exactly
    kind: str = field(default="refuted", init=False, repr=False)


@dataclass(frozen=True)
class Unknown(Verdict):
    reason: str
    evaluations: int
    kind: str = field(default="unknown", init=False, repr=False)


def _deviation(f: Expr, a: float, piece: Interval) -> Interval:
    return (eval_interval(f, piece) - Interval.point(a)).abs()


def verify_delta(problem: LimitProblem, eps: float, delta: float,
                 budget: int = DEFAULT_EVAL_BUDGET) -> Verdict:
    """Certify or refute one δ for one ε.

    Proved: |f(x) - a| < ε holds on all of [x0-δ, x0+δ] (minus at most a
    negligible core at x0 where f is undefined). Refuted: carries a witness
    x with 0 < |x-x0| < δ and |f(x) - a| >= ε. Unknown: effort exhausted.
    """
    if problem.kind is not LimitKind.FUNCTION_AT_POINT:
        raise LimitsError("verify_delta needs a function-at-point problem")
    if not (eps > 0.0) or not (delta > 0.0):
        raise ValueError("eps and delta must be positive")
    x0, f, a = problem.x0, problem.expr, problem.limit
    lo, hi = x0 - delta, x0 + delta
    core_width = max(delta * _CORE_FRACTION, 5e-324)

    # LIFO stack, right half pushed first: deterministic left-to-right sweep.
    # Pieces that cannot be decided (float-resolution slivers, domain holes
    # away from x0) are set aside instead of aborting: a refutation found
    # further along still wins; only a would-be Proved degrades to Unknown.
    stack = [Interval(x0, hi), Interval(lo, x0)]
    certified: list[CertifiedPiece] = []
    undecided: list[str] = []
    core: Optional[Interval] = None
    evaluations = 0

    while stack:
        piece = stack.pop()
        if evaluations >= budget:
            return Unknown("evaluation budget exhausted", evaluations)
        evaluations += 1
        try:
            bound = _deviation(f, a, piece)
        except EvalDomainError:
            if piece.width <= core_width:
                if piece.lo <= x0 <= piece.hi:
                    core = piece if core is None else core.hull(piece)
                else:
                    undecided.append(
                        f"f undefined inside [{piece.lo}, {piece.hi}]")
                continue
            mid = piece.mid
            stack.append(Interval(mid, piece.hi))
            stack.append(Interval(piece.lo, mid))
            continue
        if bound.hi < eps:
            certified.append(CertifiedPiece(piece, bound))
            continue
        if bound.lo >= eps:
            witness = _witness_in(piece, x0, lo, hi)
            if witness is not None:
                try:
                    magnitude = abs(eval_point(f, witness) - a)
                except EvalDomainError:
                    magnitude = None
                if magnitude is not None and magnitude >= eps:
                    return Refuted(witness, magnitude)
            # Fall through and keep bisecting: the violation may hug the
            # boundary or x0, where no admissible witness lives.
        if piece.width <= 4.0 * math.ulp(max(abs(piece.lo), abs(piece.hi), 1.0)):
            undecided.append(
                f"cannot decide [{piece.lo}, {piece.hi}] at float resolution")
            continue
        mid = piece.mid
        stack.append(Interval(mid, piece.hi))
        stack.append(Interval(piece.lo, mid))

    if undecided:
        return Unknown("; ".join(undecided[:3]), evaluations)
    return Proved(Certificate(tuple(certified), core, evaluations))


def _witness_in(piece: Interval, x0: float, lo: float, hi: float) -> float | None:
    """A point of the piece strictly inside the open punctured interval."""
    for candidate in (piece.mid, 0.5 * (piece.lo + piece.mid),
                      0.5 * (piece.mid + piece.hi)):
        if lo < candidate < hi and candidate != x0:
            return candidate
    return None


DEFAULT_HALVINGS = 60


def find_delta(problem: LimitProblem, eps: float,
               budget: int = DEFAULT_EVAL_BUDGET,
               max_halvings: int = DEFAULT_HALVINGS) -> tuple[float, Proved]:
    """Geometric halving from δ=1 until verify_delta certifies.

    Raises :class:`EffortExhaustedError` when no δ in the halving sequence
    can be certified within the budget.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    delta = 1.0
    for _ in range(max_halvings):
        verdict = verify_delta(problem, eps, delta, budget)
        if isinstance(verdict, Proved):
            return delta, verdict
        delta *= 0.5
    raise EffortExhaustedError(
        f"no certifiable delta found down to {delta} for eps={eps}")


class EffortExhaustedError(LimitsError):
    pass


class UnregisteredProblemError(LimitsError, KeyError):
    pass


def closed_form_delta(problem: LimitProblem, eps: float,
                      registry: Registry = DEFAULT_REGISTRY) -> float:
    """The registered analytic δ(ε) for this problem.

    The shipped registry carries the corrected form for x² at 3,
    δ(ε) = sqrt(9+ε) - 3 (see README for why 3 - sqrt(9-ε) is unsound).
    Entries are expected to pass verify_delta at 0.99·δ; boundary-tight
    forms cannot certify at δ exactly.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    entry = registry.lookup_problem(problem)
    if entry is None or entry.closed_form is None:
        raise UnregisteredProblemError(
            f"no registered closed form for {problem}")
    if entry.true_limit != problem.limit:
        raise UnregisteredProblemError(
            f"registered limit {entry.true_limit} differs from claimed "
            f"{problem.limit}")
    return entry.closed_form_value(eps)


def validate_registry_entry(entry, eps_samples, budget: int = DEFAULT_EVAL_BUDGET,
                            shrink: float = 0.99) -> list[str]:
    """Check that shrunk closed-form deltas certify; returns failure notes."""
    failures = []
    if entry.kind is not LimitKind.FUNCTION_AT_POINT or entry.closed_form is None:
        return failures
    problem = LimitProblem(entry.kind, entry.expr, entry.true_limit, entry.x0)
    for eps in eps_samples:
        delta = shrink * entry.closed_form_value(eps)
        if delta <= 0:
            failures.append(f"eps={eps}: nonpositive delta")
            continue
        verdict = verify_delta(problem, eps, delta, budget)
        if not isinstance(verdict, Proved):
            failures.append(f"eps={eps}: {verdict.kind}")
    return failures
