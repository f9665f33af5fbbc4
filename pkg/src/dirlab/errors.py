"""Exception types shared across the package."""


class ContractError(ValueError):
    """An argument violates an operation's precondition."""


class NotASelfMapError(ContractError):
    """A candidate symbol does not map the disk into itself."""


class SymbolSpecError(ValueError):
    """A symbol spec string could not be parsed."""


class ContourTooCloseError(ContractError):
    """The target point lies too close to the image of the counting contour."""


class QuadratureError(RuntimeError):
    """A winding-number integral failed to settle near an integer."""


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap.

    The last iterate and eigenvalue estimate are kept on the exception.
    """

    def __init__(self, message, vector=None, value=None, iterations=None):
        super().__init__(message)
        self.vector = vector
        self.value = value
        self.iterations = iterations
