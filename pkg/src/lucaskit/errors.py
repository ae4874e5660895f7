"""Exception hierarchy for lucaskit.

Everything raised on purpose derives from LucasKitError so callers (and the
CLI) can distinguish precondition failures from genuine bugs.
"""


class LucasKitError(Exception):
    """Base class for all lucaskit-specific errors."""


class CoprimalityViolation(LucasKitError, ValueError):
    """The coefficient pair (P, Q) shares a common factor."""


class ZeroPair(LucasKitError, ValueError):
    """Both coefficients are zero."""


class BadModulus(LucasKitError, ValueError):
    """A modulus of 1 or less was supplied where a real modulus is needed."""


class NotApplicable(LucasKitError):
    """A checked hypothesis does not hold, so the conclusion is not claimed."""


class NotOddPrime(LucasKitError, ValueError):
    """An odd prime was required."""


class OutOfRange(LucasKitError, ValueError):
    """Input exceeds the range for which a deterministic answer is guaranteed."""


class WrongResidueClass(LucasKitError, ValueError):
    """The index is in the wrong residue class mod 4 for this operation."""


class Unsupported(LucasKitError, ValueError):
    """The input is explicitly outside the operation's stated hypotheses."""


class UnsupportedDiscriminant(LucasKitError, ValueError):
    """The operation requires a positive discriminant P^2 - 4Q."""


class CapExceeded(LucasKitError, RuntimeError):
    """Trial factorization hit its cap before finishing; no answer is guessed."""


class InternalInvariantViolation(LucasKitError, RuntimeError):
    """A condition that is a theorem failed; this signals a bug."""
