"""Exception types shared across the toolkit."""


class LevelForgeError(Exception):
    """Base class for all toolkit errors."""


class UnknownTile(LevelForgeError):
    def __init__(self, char, line=None, col=None, context=""):
        self.char = char
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + ("" if col is None else f", col {col}")
        super().__init__(f"unknown tile {char!r}{where}{(' (' + context + ')') if context else ''}")


class RaggedLines(LevelForgeError):
    pass


class WrongDimensions(LevelForgeError):
    pass


class BadRatios(LevelForgeError):
    pass


class SchemaError(LevelForgeError):
    pass


class DuplicateTile(LevelForgeError):
    pass


class DimensionMismatch(LevelForgeError):
    pass


class DimTooSmall(LevelForgeError):
    pass


class NonFiniteValues(LevelForgeError):
    pass


class InvalidSpec(LevelForgeError):
    pass


class ShapeMismatch(LevelForgeError):
    pass


class UnknownGame(LevelForgeError):
    pass


class NonFiniteLoss(LevelForgeError):
    def __init__(self, epoch, detail=""):
        self.epoch = epoch
        super().__init__(f"non-finite loss at epoch {epoch}" + (f": {detail}" if detail else ""))


class EmptyTrainSet(LevelForgeError):
    pass


class VersionMismatch(LevelForgeError):
    pass


class CorruptPayload(LevelForgeError):
    pass


class BadStart(LevelForgeError):
    pass


class EmptyInput(LevelForgeError):
    pass


class SearchBudgetExceeded(LevelForgeError):
    """Raised when a playability search exceeds its wall-clock deadline."""
