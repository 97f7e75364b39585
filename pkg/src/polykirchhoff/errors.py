"""Exception types shared across the package."""


class SpecError(ValueError):
    """A chain encoding violates one of its bounds."""


class SpecParseError(SpecError):
    """Malformed ``k:h:w1,...`` text."""

    def __init__(self, text, position, reason):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")


class DisconnectedNetworkError(ValueError):
    pass


class NumericalFailure(ArithmeticError):
    pass


class RuleNotApplicable(ValueError):
    """A rewrite rule was asked to act on a configuration it does not match."""


class NoValidCut(ValueError):
    pass


class EnumerationCapExceeded(RuntimeError):
    pass
