"""Bachet's token game: remove 1..3 tokens per turn, taking the last wins.

Losing counts are exactly the multiples of 4; the closed-form winning move
is ``tokens mod 4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import GameAdapter, Outcome, Role

TAKE_MAX = 3


@dataclass(frozen=True)
class BachetState:
    tokens: int
    verifier_to_move: bool = True

    def __post_init__(self):
        if self.tokens < 0:
            raise ValueError("token count must be non-negative")


def bachet_moves(s: BachetState) -> list[int]:
    return [r for r in range(1, TAKE_MAX + 1) if r <= s.tokens]


def bachet_apply(s: BachetState, r: int) -> BachetState:
    if r not in bachet_moves(s):
        raise ValueError(f"cannot remove {r} of {s.tokens} tokens")
    return BachetState(s.tokens - r, not s.verifier_to_move)


def bachet_status(s: BachetState) -> Outcome:
    if s.tokens > 0:
        return Outcome.NONTERMINAL
    # Whoever just moved took the last token and wins.
    return Outcome.NOT_WIN if s.verifier_to_move else Outcome.VERIFIER_WIN


def bachet_strategy(s: BachetState) -> int | None:
    """Closed-form move for the Verifier: reduce to a multiple of 4.

    In a losing position (multiple of 4) there is no winning move; the
    canonical fallback removes 1. ``None`` when no move exists at all.
    """
    if not s.verifier_to_move:
        raise ValueError("strategy is defined for the Verifier to move")
    if s.tokens == 0:
        return None
    r = s.tokens % 4
    return r if r else 1


class BachetAdapter(GameAdapter):
    def turn(self, s: BachetState) -> Role:
        return Role.VERIFIER if s.verifier_to_move else Role.FALSIFIER

    def moves(self, s: BachetState) -> list[int]:
        return bachet_moves(s)

    def apply(self, s: BachetState, r: int) -> BachetState:
        return bachet_apply(s, r)

    def terminal(self, s: BachetState) -> Outcome:
        return bachet_status(s)

    def move_text(self, s: BachetState, r: int) -> str:
        return str(r)

    def move_label(self, s: BachetState, r: int) -> str:
        return f"remove {r}"

    def position_label(self, s: BachetState) -> str:
        return str(s.tokens)
