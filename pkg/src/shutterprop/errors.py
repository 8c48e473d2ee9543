"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain of an operation (t <= 0, x on a boundary, ...)."""


class InvalidParameterError(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class DepthUnsupportedError(ValueError):
    """Requested jet depth exceeds what the packet kind can provide."""


class UnsupportedKindError(TypeError):
    """Operation is not defined for this packet kind."""


class NonConvergenceError(ArithmeticError):
    def __init__(self, message, estimates=()):
        self.estimates = tuple(estimates)
        if self.estimates:
            message = f"{message} (last estimates: {', '.join(repr(e) for e in self.estimates)})"
        super().__init__(message)


class PaddingError(ArithmeticError):
    """Periodic domain too small: wrapped amplitude would exceed the bound."""


class JetMismatchError(ValueError):
    def __init__(self, order, message):
        self.order = order
        super().__init__(message)


class TooFewFringesError(ArithmeticError):
    pass
