"""Exception hierarchy shared by the model, the engines and the generators."""


class CoverError(Exception):
    """Error in cover program."""


class DuplicateColumn(CoverError):
    pass


class LateDeclaration(CoverError):
    pass


class EmptyRow(CoverError):
    pass


class DuplicateLabelInRow(CoverError):
    pass


class InvalidLabel(CoverError):
    pass


class UnknownRowId(CoverError):
    pass


class TooLarge(CoverError):
    pass


class ParseError(CoverError):
    """Input text could not be parsed; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class BadDirective(ParseError):
    pass


class LateDirective(ParseError):
    pass


class EmptyInstanceWarning(UserWarning):
    pass


# pentomino boards and solutions
class BadCharacter(ParseError):
    def __init__(self, line: int, col: int, char: str):
        self.col = col
        super().__init__(f"column {col}: unexpected character {char!r}", line)


class EmptyBoard(CoverError):
    pass


class IncompleteSolution(CoverError):
    pass


class TransformEscape(CoverError):
    pass


# grids
class MalformedSolution(CoverError):
    pass


class InconsistentGivens(CoverError):
    pass


class BadDimensions(ParseError):
    pass


class BadToken(ParseError):
    pass


class IncompleteGrid(CoverError):
    pass
