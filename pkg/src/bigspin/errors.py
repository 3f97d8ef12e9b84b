"""Exception types shared across the package."""


class InvariantViolation(RuntimeError):
    """A numerical contract was broken (norm drift, block structure, oracle mismatch).

    Raised when a quantity that should hold to numerical precision does not,
    which usually indicates a corrupted input matrix or an internal bug rather
    than a bad argument.
    """
