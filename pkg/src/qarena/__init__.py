"""Quantifier games: chess mate-in-k, Bachet's token game, epsilon-delta limits."""

__version__ = "0.1.0"
