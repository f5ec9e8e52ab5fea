"""Exception hierarchy shared by every module of the package."""


class DeepVoteError(ValueError):
    """Base class for all errors raised by deepvote."""


class EmptyInput(DeepVoteError):
    pass


class NonNumericCell(DeepVoteError):
    pass


class GradeOutOfRange(DeepVoteError):
    pass


class RaggedRows(DeepVoteError):
    pass


class InvalidTarget(DeepVoteError):
    pass


class DimensionMismatch(DeepVoteError):
    pass


class TooFewVoters(DeepVoteError):
    pass


class UnsupportedDimension(DeepVoteError):
    pass


class CandidateMismatch(DeepVoteError):
    pass
