"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the region where an operation is defined."""


class SingularityError(DomainError):
    """Evaluation requested at (or numerically too close to) a pole."""


class ZeroTableError(ValueError):
    """Base class for problems with an ingested zero table."""


class ZeroParseError(ZeroTableError):
    def __init__(self, line_no, text):
        super().__init__(f"line {line_no}: not a decimal ordinate: {text!r}")
        self.line_no = line_no
        self.text = text


class MonotonicityError(ZeroTableError):
    def __init__(self, line_no, prev, value):
        super().__init__(f"line {line_no}: ordinate {value} does not exceed previous {prev}")
        self.line_no = line_no


class EmptyTableError(ZeroTableError):
    pass


class InsufficientSamplesError(ValueError):
    pass


class CharacterError(ValueError):
    """Generator images that do not define a Dirichlet character."""
