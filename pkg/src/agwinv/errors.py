"""Exception hierarchy. Everything raised on purpose derives from AgwError."""


class AgwError(Exception):
    pass


class ZeroInverse(AgwError, ZeroDivisionError):
    pass


class Undefined(AgwError, ValueError):
    pass


class ZeroArgument(AgwError, ValueError):
    pass


class ParseError(AgwError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class DomainNotTotal(AgwError, ValueError):
    pass


class Singular(AgwError, ValueError):
    pass


class CoefficientsNotInBaseField(AgwError, ValueError):
    pass


class NotPermutation(AgwError, ValueError):
    pass


class NotSurjective(AgwError, ValueError):
    pass


class NotBijective(AgwError, ValueError):
    pass


class OracleTooLarge(AgwError, ValueError):
    pass


class SquareNotCommuting(AgwError, ValueError):
    pass


class NotPP(AgwError, ValueError):
    pass


class BadIndex(AgwError, ValueError):
    pass


class GcdHypothesisFailed(AgwError, ValueError):
    pass


class HypothesisFailed(AgwError, ValueError):
    """A structural hypothesis of a construction does not hold.

    ``condition`` names the first violated condition.
    """

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class DivisionByZero(AgwError, ZeroDivisionError):
    pass


class IndexOutOfRange(AgwError, IndexError):
    pass


class BranchesNotDisjoint(AgwError, ValueError):
    pass


class NotInjectiveOnBranch(AgwError, ValueError):
    pass


class EvenCharacteristic(AgwError, ValueError):
    pass


class UsageError(AgwError, ValueError):
    pass
