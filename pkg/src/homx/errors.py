"""Exception hierarchy.

The CLI maps these onto exit statuses: parameter-like errors exit 2,
:class:`InvariantViolation` exits 3.
"""


class HomxError(Exception):
    """Base class for all library errors."""


class ParameterError(HomxError, ValueError):
    pass


class FormatError(HomxError, ValueError):
    """Malformed graph6 line or target document.

    ``offset`` is the byte offset inside the offending line, ``line`` the
    1-based line number inside a stream; either may be ``None``.
    """

    def __init__(self, message, offset=None, line=None):
        parts = [message]
        if line is not None:
            parts.append(f"line {line}")
        if offset is not None:
            parts.append(f"byte {offset}")
        super().__init__(", ".join(parts) if len(parts) > 1 else message)
        self.offset = offset
        self.line = line


class ResourceError(HomxError):
    """A requested computation exceeds a configured practical cap."""


class RegimeError(HomxError, ValueError):
    """The target graph is outside the regime an operation requires."""


class ConstructionError(HomxError, ValueError):
    """An ear decomposition violates an attachment rule."""


class Unsupported(HomxError, NotImplementedError):
    pass


class InvariantViolation(HomxError, AssertionError):
    """A structural claim failed on a concrete instance.

    This is the signal the tool exists to emit; never swallow it.
    """
