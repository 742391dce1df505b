"""Exception hierarchy shared by every pipeline."""


class JepError(Exception):
    """Base class for all errors raised by this package."""


class LabelMismatch(JepError):
    pass


class AlphabetError(JepError):
    pass


class ArityError(JepError):
    pass


class InvalidEncoding(JepError):
    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class SizeLimitExceeded(JepError):
    """An enumeration or fixpoint grew past its configured cap."""

    def __init__(self, what, limit, diagnostics=None):
        msg = f"{what} exceeded cap of {limit}"
        if diagnostics:
            msg += " (" + ", ".join(f"{k}={v}" for k, v in diagnostics.items()) + ")"
        super().__init__(msg)
        self.what = what
        self.limit = limit
        self.diagnostics = diagnostics or {}


class ParseError(JepError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class NotCograph(JepError):
    pass


class InvalidCotree(JepError):
    pass


class MissingP4(JepError):
    pass


class UnreachableGluingVertex(JepError):
    pass
