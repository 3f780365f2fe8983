"""Exception hierarchy shared by all chandas modules."""

from __future__ import annotations


class ChandasError(Exception):
    """Base class for every error raised by the package."""


class UnknownCharacter(ChandasError, ValueError):
    def __init__(self, offset: int, char: str):
        self.offset = offset
        self.char = char
        super().__init__(f"unknown character {char!r} (U+{ord(char):04X}) at offset {offset}")


class MalformedText(ChandasError, ValueError):
    def __init__(self, offset: int, message: str = "malformed text"):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class InvalidVariant(ChandasError, ValueError):
    pass


class LengthOutOfRange(ChandasError, ValueError):
    pass


class VerseFormatError(ChandasError, ValueError):
    pass


class MissingDanda(VerseFormatError):
    pass


class ExtraDanda(VerseFormatError):
    pass


class DatabaseError(ChandasError):
    pass


class ParseError(DatabaseError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateName(DatabaseError):
    pass


class DuplicatePattern(DatabaseError):
    pass


class PatternTooLong(DatabaseError):
    pass


class BadYati(DatabaseError):
    pass
