"""Exception types shared across the package."""


class RamError(Exception):
    """Base class for all errors raised by ramstruct."""


class NotASubgroup(RamError):
    pass


class NotNormal(RamError):
    pass


class NotAPGroup(RamError):
    pass


class NotNilpotent(RamError):
    pass


class NotExponentP(RamError):
    pass


class NotCoprime(RamError):
    pass


class HypothesisViolated(RamError):
    """A theorem hypothesis (e.g. the semi-abelian condition) fails for the input."""


class PreconditionViolated(RamError):
    pass


class NoLiftExists(RamError):
    pass


class InadmissibleSize(RamError):
    """The requested size pair is outside the admissible region; message names the clause."""


class DegenerateRank(RamError):
    """The odd-odd 2-group construction does not apply when d(G) = 3."""


class PaddingImpossible(RamError):
    pass


class InternalContradiction(RamError):
    """A construction guaranteed by theory failed validation; indicates a bug or bad input."""


class ParseError(RamError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.text = text
        self.pos = pos


class InvalidOrder(ParseError):
    pass


class InvalidPrime(ParseError):
    pass


class OutOfRange(RamError):
    pass
