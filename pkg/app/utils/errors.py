"""Exception hierarchy. Contract errors map to CLI exit code 2."""


class RankMixError(Exception):
    """Base class for every error raised by the toolkit."""


class ContractError(RankMixError):
    """A documented failure mode of an algorithm (not a bad argument)."""


class SingularNoiseError(ContractError):
    pass


class InsufficientSamplesError(ContractError):
    pass


class InfeasibleError(ContractError):
    pass


class CandidateOverflowError(ContractError):
    pass


class SupportOverflowError(ContractError):
    pass


class NoiseUnidentifiableError(ContractError):
    pass


class SupportBoundError(ContractError):
    pass


class InputFileError(RankMixError):
    """An input file that does not parse into the expected document."""


# ==================== INPUT ERRORS ====================

class SizeMismatchError(RankMixError, ValueError):
    pass


class CapExceededError(RankMixError, ValueError):
    pass


class InvalidTupleError(RankMixError, ValueError):
    pass


class InvalidPermutationError(RankMixError, ValueError):
    pass


class InvalidPartitionError(RankMixError, ValueError):
    pass


class InvalidDistributionError(RankMixError, ValueError):
    pass
