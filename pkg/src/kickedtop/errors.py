"""Exception types shared across the package."""


class InvariantViolation(RuntimeError):
    """A numerical invariant was broken beyond roundoff tolerance.

    Raised e.g. when a reduced density matrix acquires an eigenvalue below
    -1e-10, or a propagator loses unitarity. Signals a genuine numerical
    problem, not a user mistake.
    """


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""
