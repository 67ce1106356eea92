"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: unknown letters, bad file syntax, inconsistent alphabets."""


class RangeError(ValueError):
    """A query needs words longer than the language approximation holds."""


class MembershipError(ValueError):
    """A group word is not in the subgroup it was expected to belong to."""


class NotABasisError(ValueError):
    """A generator set was required to be a basis of the free group and is not."""


class InvariantViolation(AssertionError):
    """A computed object failed a structural check that should always hold."""
