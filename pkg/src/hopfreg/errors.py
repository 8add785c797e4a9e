"""Exception hierarchy shared by all modules."""


class HopfRegError(Exception):
    pass


class UsageError(HopfRegError, ValueError):
    """Bad arguments: dimension or field mismatch, unknown names."""


class PreconditionError(HopfRegError, ValueError):
    """An operation's mathematical hypothesis does not hold."""


class NotSplitError(PreconditionError):
    """A commutative semisimple algebra over QQ does not split into copies of QQ."""


class ValidationError(HopfRegError):
    """A constructed structure violates one of its defining identities.

    ``identity`` names the violated axiom and ``indices`` the basis indices
    where it first fails.
    """

    def __init__(self, identity, indices=(), detail=""):
        self.identity = identity
        self.indices = tuple(int(i) for i in indices)
        msg = f"{identity} fails at basis indices {self.indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ResourceError(HopfRegError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} elements but the cap is {cap}")


class TheoremViolation(HopfRegError):
    """Two procedures that must agree returned different answers."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
