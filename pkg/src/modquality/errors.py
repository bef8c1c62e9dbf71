"""Exception hierarchy. Everything raised for bad data derives from ModQualityError."""


class ModQualityError(Exception):
    """Base class for data and validation errors (CLI exit status 1)."""


class FactFormatError(ModQualityError):
    """Malformed fact file: bad syntax, wrong types, unknown fields."""

    def __init__(self, message, *, line=None, column=None, record=None):
        self.line = line
        self.column = column
        self.record = record
        where = []
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        if record is not None:
            where.append(f"at {record}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class ReferentialIntegrityError(ModQualityError):
    """An edge or membership names a class that was never declared."""


class CompletenessError(ModQualityError):
    """A class is missing its module assignment in some scheme."""


class ValidationError(ModQualityError):
    """A structural invariant would be violated (empty module, duplicate id, ...)."""


class NotFoundError(ModQualityError, LookupError):
    """Unknown scheme, module or class."""


class InvalidArgumentError(ModQualityError, ValueError):
    """Argument outside an operation's domain."""
