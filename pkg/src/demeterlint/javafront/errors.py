"""Source-anchored diagnostics shared by the lexer, parser, and binder."""

from __future__ import annotations

__all__ = ["SourceError", "ParseError", "BindError"]


class SourceError(Exception):
    """An error pinned to a file position, rendered one line, greppable."""

    code = "E-SOURCE"

    def __init__(self, file: str, line: int, col: int, message: str):
        super().__init__(f"{self.code}: {file}:{line}:{col}: {message}")
        self.file = file
        self.line = line
        self.col = col
        self.message = message


class ParseError(SourceError):
    code = "E-PARSE"


class BindError(SourceError):
    code = "E-BIND"
