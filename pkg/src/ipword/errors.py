"""Exception hierarchy shared by every module."""


class IpwordError(Exception):
    """Base class for library errors."""


class InvalidArgument(IpwordError, ValueError):
    pass


class InsufficientData(IpwordError):
    """The requested horizon or bound cannot decide the question."""


class NotMaximal(IpwordError):
    """A prefix code left some position unmatched."""

    def __init__(self, position, window):
        self.position = position
        self.window = tuple(window)
        super().__init__(f"no code word matches at position {position} (window {self.window})")


class NotProlongable(InvalidArgument):
    pass


class Degenerate(InvalidArgument):
    pass


class StreamsIdentical(IpwordError):
    pass


class ResourceLimit(IpwordError):
    pass


class UnsupportedFormat(IpwordError):
    pass
