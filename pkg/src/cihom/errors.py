"""Exception hierarchy shared by the library and the command line."""


class CIHomError(Exception):
    """Base class for all errors raised by cihom."""


class RingMismatchError(CIHomError, ValueError):
    """Objects living over different polynomial rings were combined."""


class NotHomogeneousError(CIHomError, ValueError):
    pass


class ParseError(CIHomError, ValueError):
    """A ring or map description could not be parsed.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    position is unknown.
    """

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self.__str__())

    def __str__(self):
        where = []
        if self.source:
            where.append(str(self.source))
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        prefix = ", ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


class IllDefinedMapError(CIHomError, ValueError):
    """A proposed homomorphism does not respect the defining relations."""


class ResourceLimitError(CIHomError, RuntimeError):
    """A computation exceeded one of the configured resource guards."""


class TheoremMismatch(CIHomError, AssertionError):
    """Computed invariants contradict a theorem; always indicates a bug.

    ``data`` holds the intermediate values that led to the contradiction.
    """

    def __init__(self, message, data=None):
        self.data = dict(data or {})
        super().__init__(message)

    def dump(self):
        lines = [str(self)]
        for key in sorted(self.data):
            lines.append(f"  {key} = {self.data[key]!r}")
        return "\n".join(lines)
