"""Exception hierarchy shared by every parflow module."""


class ParflowError(Exception):
    """Base class for all library errors."""


class TaskError(ParflowError):
    """A parallel task failed; ``index`` is the position of the failing task."""

    def __init__(self, index, message=""):
        self.index = index
        super().__init__(f"task {index} failed: {message}" if message else f"task {index} failed")


class DecodeError(ParflowError):
    """A codec could not turn bytes back into a value."""


class DeadlockTimeout(ParflowError, TimeoutError):
    """A blocking stream or fabric operation did not make progress in time."""


class ChannelClosed(ParflowError):
    """Send to, or fetch from, an endpoint that has terminated."""


class EndOfStream(ParflowError):
    """Raised by ``Stream.recv`` once a closed stream has been drained."""


class UnknownSlot(ParflowError, KeyError):
    """A remote handle names a slot its owner does not hold."""


class NonSquareInput(ParflowError, ValueError):
    pass


class DimensionError(ParflowError, ValueError):
    pass


class MalformedPuzzle(ParflowError, ValueError):
    pass


class InvalidInput(ParflowError, ValueError):
    pass


class VerificationMismatch(ParflowError):
    """A benchmark result disagreed with its oracle; ``reports`` holds the timings anyway."""

    def __init__(self, message, reports=()):
        self.reports = list(reports)
        super().__init__(message)
