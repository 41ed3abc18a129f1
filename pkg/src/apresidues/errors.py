"""Exception types shared by all modules.

The CLI maps these to distinct exit codes (usage=1, domain=2, resource=3),
so library code should raise these rather than bare ValueError/RuntimeError.
"""


class DomainError(ValueError):
    """An argument violates a mathematical precondition (e.g. even modulus)."""


class ResourceError(RuntimeError):
    """A request exceeds a configured computation budget (sieve size, scan cap)."""


class IntegrityError(ArithmeticError):
    """A floating-point result strayed further from an exact value than the
    accumulation error budget allows; indicates a logic bug, not noise."""
