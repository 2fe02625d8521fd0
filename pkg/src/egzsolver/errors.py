"""Exception types shared across the package."""


class InputError(ValueError):
    """Rejected user-facing input (bad value, wrong count, malformed stream)."""


class InvariantViolation(AssertionError):
    """A structural invariant of the solver state failed.

    These indicate an algorithm bug, never a user error.
    """


class RecoveryError(InvariantViolation):
    """A reverse-replay step produced an infeasible demand.

    Carries a forensic description of the journal position that broke.
    """


class Infeasible(Exception):
    """Raised by oracles when no witness exists for the requested target."""
