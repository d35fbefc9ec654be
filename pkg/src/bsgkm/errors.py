"""Exception hierarchy shared by the whole engine.

Every failure mode a caller may want to branch on gets its own class;
plain ValueError is reserved for misuse of the API (bad indices, wrong
parents, malformed input files).
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all mathematically meaningful failures."""


class NotDivisible(EngineError):
    """An exact division in the formal group algebra failed.

    Attributes:
        monomial: exponent tuple of the first term that could not be
            eliminated, or None when the failure is not tied to a term.
        reason: "monomial" when the exponent itself is not divisible,
            "coefficient" when the coefficient quotient leaves the ring.
    """

    def __init__(self, message, monomial=None, reason="monomial"):
        super().__init__(message)
        self.monomial = monomial
        self.reason = reason


class PrecisionExhausted(EngineError):
    """The requested operation would drop below zero working precision.

    Raised instead of silently producing a series that carries no
    trustworthy terms at all.
    """


class ResidualDenominator(EngineError):
    """A localized value that must be integral failed to cancel.

    Signals either a bug upstream or exhausted precision; the message
    records the fixed point / Weyl element where cancellation failed.
    """


class ConfigError(Exception):
    """Invalid job configuration (CLI or file input)."""
