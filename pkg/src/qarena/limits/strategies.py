"""Concrete move choices for the limit games: tail bounds, witnesses, ε.

These are the engine's "openings": analytic when the problem is in the
registry, honest sampling otherwise (flagged as empirical).
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import EvalDomainError, eval_point, is_constant
from .problems import (
    DEFAULT_REGISTRY,
    LimitKind,
    LimitProblem,
    Registry,
    analytic_tail_bound,
)

EMPIRICAL_WINDOW = 10_000
SCAN_BUDGET = 1_000_000


@dataclass(frozen=True)
class TailBound:
    """An N (sequences) or M (limits at infinity) answering one ε."""

    value: int
    method: str  # "analytic" | "empirical"

    @property
    def analytic(self) -> bool:
        return self.method == "analytic"


def find_N(problem: LimitProblem, eps: float,
           window: int = EMPIRICAL_WINDOW,
           scan_budget: int = SCAN_BUDGET,
           registry: Registry = DEFAULT_REGISTRY) -> TailBound | None:
    """A tail bound N with |a - a_n| < ε observed for all n in (N, N+window].

    Registered sequences (with the claimed limit matching the registered
    one) get the analytic closed-form N; anything else is scanned and
    flagged empirical. ``None`` when no such N is found within the budget.
    """
    if problem.kind is LimitKind.FUNCTION_AT_POINT:
        raise ValueError("find_N needs a sequence or at-infinity problem")
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    a = problem.limit
    if is_constant(problem.expr) and eval_point(problem.expr, 0.0) == a:
        return TailBound(0, "analytic")
    entry = registry.lookup_problem(problem)
    if entry is not None and entry.closed_form is not None \
            and entry.true_limit == a:
        return TailBound(analytic_tail_bound(entry, eps), "analytic")

    candidate, streak = 0, 0
    for n in range(1, scan_budget + 1):
        try:
            ok = abs(a - eval_point(problem.expr, float(n))) < eps
        except EvalDomainError:
            ok = False
        if ok:
            streak += 1
            if streak >= window:
                return TailBound(candidate, "empirical")
        else:
            candidate, streak = n, 0
    return None


@dataclass(frozen=True)
class Witness:
    value: float
    magnitude: float  # |f(value) - a| as evaluated


def _try_witness(problem: LimitProblem, eps: float, x: float) -> Witness | None:
    try:
        magnitude = abs(eval_point(problem.expr, x) - problem.limit)
    except EvalDomainError:
        return None
    if magnitude >= eps:
        return Witness(x, magnitude)
    return None


def find_witness(problem: LimitProblem, eps: float, bound: float,
                 budget: int = 4096) -> Witness | None:
    """A point violating the convergence matrix inside the mover's window:
    0 < |x-x0| < δ for point problems, n > N for sequences, x >= M at
    infinity. ``None`` when nothing is found (the claim may well be true).
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if problem.kind is LimitKind.FUNCTION_AT_POINT:
        return _point_witness(problem, eps, bound, budget)
    if problem.kind is LimitKind.SEQUENCE:
        return _tail_witness(problem, eps, int(bound), budget, integral=True)
    return _tail_witness(problem, eps, bound, budget, integral=False)


def _point_witness(problem, eps, delta, budget):
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    x0 = problem.x0
    candidates: list[float] = [x0 + delta / 2, x0 - delta / 2]
    for j in range(1, 41):
        off = delta * (1.0 - 2.0 ** -j)
        candidates.append(x0 + off)
        candidates.append(x0 - off)
    grid = 128
    for k in range(1, grid):
        off = delta * k / grid
        candidates.append(x0 + off)
        candidates.append(x0 - off)
    tried = 0
    best: Witness | None = None
    for x in candidates:
        if not (abs(x - x0) > 0.0 and abs(x - x0) < delta):
            continue
        tried += 1
        if tried > budget:
            break
        hit = _try_witness(problem, eps, x)
        if hit is not None:
            return hit
    return best


def _tail_witness(problem, eps, start, budget, integral):
    # Scan just past the bound, then probe geometrically far out.
    base = int(start) if integral else start
    candidates: list[float] = []
    for k in range(1, min(budget, 2000) + 1):
        candidates.append(float(base + k))
    scale = max(1.0, abs(float(base)))
    for k in range(1, 61):
        candidates.append(float(base) + scale * (2.0 ** k))
    for x in candidates:
        if integral:
            x = float(int(x))
            if x <= start:
                continue
        elif x < start:
            continue
        hit = _try_witness(problem, eps, x)
        if hit is not None:
            return hit
    return None


def choose_epsilon(problem: LimitProblem,
                   registry: Registry = DEFAULT_REGISTRY) -> float:
    """The disputing engine's opening ε.

    With a registered true limit L ≠ a this is |L - a| / 2, which the
    witness search can always answer. Otherwise half the smallest deviation
    |f - a| seen on probes approaching the limit point (a sampled lower
    bound on how far f stays from a), with 1.0 as the no-information
    fallback. Always positive.
    """
    a = problem.limit
    true_limit = registry.true_limit(problem)
    if true_limit is not None and true_limit != a:
        return abs(true_limit - a) / 2.0
    if problem.kind is LimitKind.FUNCTION_AT_POINT:
        probes = [problem.x0 + 2.0 ** -j for j in range(1, 17)]
        probes += [problem.x0 - 2.0 ** -j for j in range(1, 17)]
    else:
        probes = [float(2 ** j) for j in range(4, 21)]
    deviations = []
    for x in probes:
        try:
            deviations.append(abs(eval_point(problem.expr, x) - a))
        except EvalDomainError:
            continue
    floor = min(deviations) if deviations else 0.0
    return floor / 2.0 if floor > 0.0 else 1.0
