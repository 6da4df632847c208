class TrainerError(Exception):
    """Base class for trainer errors."""


class ConllFormatError(TrainerError):
    """An input file does not follow the CoNLL token-tag format."""


class ModelUnavailableError(TrainerError):
    """A pretrained model could not be loaded (offline, bad name, ...)."""
