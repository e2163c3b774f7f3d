"""Front end for the analyzed Java subset: lexing, parsing, binding."""

from .ast import CompilationUnit
from .binder import (
    AccessSite,
    Executable,
    ProvStep,
    ReceiverDesc,
    bind_and_extract,
    build_type_table,
)
from .errors import BindError, ParseError, SourceError
from .parser import parse_unit

__all__ = [
    "AccessSite",
    "BindError",
    "CompilationUnit",
    "Executable",
    "ParseError",
    "ProvStep",
    "ReceiverDesc",
    "SourceError",
    "bind_and_extract",
    "build_type_table",
    "parse_unit",
]
