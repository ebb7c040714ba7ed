"""Exception types raised across the package."""


class SMLError(Exception):
    """Base class for all errors raised by smlassort."""


class InvalidInstanceError(SMLError, ValueError):
    """A product or instance violates its field constraints."""


class InvalidAssortmentError(SMLError, ValueError):
    """An assortment references product ids that the instance does not have."""


class DomainError(SMLError, ValueError):
    """An argument is outside the domain of the requested operation."""


class UnsupportedModelError(SMLError):
    """The instance uses more levels than the requested operation supports."""


class ResourceLimitError(SMLError):
    """An exhaustive enumeration would exceed its configured cap."""


class ConfigError(SMLError, ValueError):
    """A benchmark family configuration is invalid."""


class InstanceFormatError(SMLError, ValueError):
    """An instance document could not be parsed or validated."""
