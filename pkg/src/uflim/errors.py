"""Exception hierarchy shared by every module."""


class UflimError(Exception):
    pass


class InputError(UflimError, ValueError):
    """Malformed or mismatched input (unknown atoms, mismatched grounds, ...)."""


class DegeneratePartitionError(InputError):
    pass


class OrderError(UflimError):
    """Raised when a refinement map is requested for a non-comparable pair."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class ResourceError(UflimError):
    """Input exceeds the configured size guard."""


class DiagramError(UflimError):
    def __init__(self, issues):
        self.issues = list(issues)
        head = "; ".join(str(i) for i in self.issues[:3])
        more = f" (+{len(self.issues) - 3} more)" if len(self.issues) > 3 else ""
        super().__init__(f"diagram violates inverse-family laws: {head}{more}")


class ConeError(UflimError):
    def __init__(self, message, arrow=None):
        super().__init__(message)
        self.arrow = arrow


class ThreadError(UflimError):
    pass
