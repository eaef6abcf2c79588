"""Shared exception types."""


class CapacityError(ValueError):
    """An input exceeds a documented capacity guard (exact-arithmetic or
    brute-force size limits)."""


class IndexFormatError(ValueError):
    """A serialized index file is malformed, has an unsupported version,
    or does not match the corpus it is loaded against."""
