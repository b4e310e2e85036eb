"""Exception hierarchy shared by every module."""


class EpimcError(Exception):
    """Base class for all library errors."""


class InputError(EpimcError, ValueError):
    """Malformed model, unknown agent/world, or otherwise invalid input."""


class ParseError(InputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class EmptyGroupError(ParseError):
    """A ``D`` modality was written with no agents."""


class UnsupportedFragmentError(EpimcError):
    """The formula uses a construct the requested procedure does not cover."""


class EmptyDomainError(InputError):
    """A world-removing update would leave no worlds."""


class NoDistinguisherError(EpimcError):
    """The two worlds are bisimilar, so no formula tells them apart."""


class ClosureError(InputError):
    """A world set is not closed under collective bisimilarity."""
