"""Exception types shared across the package."""


class ComputationError(RuntimeError):
    """A computation failed or its mathematical preconditions do not hold.

    Raised for conditions discovered mid-computation: a configuration that
    is not a packing or not a covering, kernel overflow, an ill-posed Gram
    solve, or a non-convergent iteration.  Malformed or invalid inputs
    raise ValueError instead.
    """
