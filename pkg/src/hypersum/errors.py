"""Error types shared across the package.

DomainError marks inputs outside an operation's contract (bad parameters,
out-of-domain evaluation points, unmet preconditions); ConvergenceError marks
iterative procedures that hit their caps. The CLI maps DomainError to exit
code 3 and verification failures to exit code 4.
"""


class DomainError(ValueError):
    """Input violates a documented precondition or domain restriction."""


class ConvergenceError(RuntimeError):
    """An iteration or series hit its cap without meeting its tolerance."""
