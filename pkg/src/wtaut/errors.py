"""Error types shared across modules and mapped to CLI exit codes."""


class DataError(ValueError):
    """Structurally valid input that fails a mathematical precondition."""


class ResourceError(RuntimeError):
    """Request exceeds a configured size cap."""


class UsageError(Exception):
    """Malformed invocation (bad flag values); maps to exit code 2."""
