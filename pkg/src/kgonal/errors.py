"""Exception types shared across the package.

The CLI maps each class to its own exit status.
"""


class InputError(ValueError):
    """Malformed or out-of-range user input."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed.  Always indicates a bug."""


class CertificateError(RuntimeError):
    """A requested certificate could not be produced or did not hold."""


class SearchLimitError(InputError):
    """A search hit its caller-supplied node budget."""
