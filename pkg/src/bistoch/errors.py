"""Exception hierarchy shared by all bistoch modules."""


class BistochError(Exception):
    """Base class for all library errors."""


class NegativeEntry(BistochError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"negative entry {value} at {index}")


class NonPositiveEntry(BistochError):
    pass


class NotSquare(BistochError):
    pass


class NotStochastic(BistochError):
    pass


class NotBiStochastic(BistochError):
    pass


class DimensionMismatch(BistochError):
    pass


class ModeMismatch(BistochError):
    pass


class IndexOutOfRange(BistochError):
    pass


class NotFixedPoint(BistochError):
    pass


class ZeroComponent(BistochError):
    pass


class NotExact(BistochError):
    pass


class InvalidRightInverse(BistochError):
    pass


class InvalidPartition(BistochError):
    pass


class DimensionTooSmall(BistochError):
    pass


class IncompleteKrausSet(BistochError):
    def __init__(self, defect):
        self.defect = defect
        super().__init__(f"Kraus completeness defect {defect}")


class CompletionFailure(BistochError):
    pass


class NotConverged(BistochError):
    def __init__(self, iterations, defect):
        self.iterations = iterations
        self.defect = defect
        super().__init__(f"no convergence after {iterations} iterations (defect {defect})")


class ParameterOutOfRange(BistochError):
    pass


class AnchorOutsideRegion(BistochError):
    pass


class NoPerfectMatching(BistochError):
    pass


class DemoMismatch(BistochError):
    pass
