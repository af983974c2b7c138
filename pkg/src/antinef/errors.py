"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: 1 for bad input, 2 for violated
mathematical preconditions, 3 for internal inconsistencies (two routes
that must agree did not).
"""


class LatticeError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(LatticeError):
    """Malformed documents, unknown names, structural problems."""

    exit_code = 1


class PreconditionError(LatticeError):
    """A mathematical precondition of an operation is violated."""

    exit_code = 2


class TheoremViolationError(LatticeError):
    """An internal cross-check failed; surfaced loudly, never corrected."""

    exit_code = 3
