class NumericalError(RuntimeError):
    """An eigen-solver failed to converge or produced unusable output."""


class PairNotSupported(ValueError):
    """The requested spin pair cannot be served by the free-fermion fast path."""
