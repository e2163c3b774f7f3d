"""Syntax nodes for the analyzed dialect.

Nodes are plain mutable dataclasses; the binder annotates type declarations
with their qualified names (``qualified_name``), including generated names
for anonymous classes, before extraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

__all__ = [
    "ArrayAccess",
    "ArrayInit",
    "Assign",
    "Binary",
    "Block",
    "BreakStmt",
    "Cast",
    "CatchClause",
    "CompilationUnit",
    "Conditional",
    "ContinueStmt",
    "Declarator",
    "EmptyStmt",
    "Expr",
    "ExprStmt",
    "FieldAccess",
    "FieldDecl",
    "ForStmt",
    "IfStmt",
    "ImportDecl",
    "InitBlock",
    "InstanceOf",
    "Literal",
    "LocalDecl",
    "MethodCall",
    "MethodDecl",
    "NameExpr",
    "NewArray",
    "NewObject",
    "Param",
    "Paren",
    "ReturnStmt",
    "Span",
    "Stmt",
    "SuperCtorCall",
    "SuperMember",
    "SwitchGroup",
    "SwitchStmt",
    "ThisCtorCall",
    "ThisExpr",
    "TryStmt",
    "TypeDeclNode",
    "TypeName",
    "Unary",
    "WhileStmt",
]


@dataclass(frozen=True)
class Span:
    file: str
    line: int
    col: int

    def key(self) -> tuple[str, int, int]:
        return (self.file, self.line, self.col)


@dataclass
class TypeName:
    """A type as written: dotted name plus array dimensions."""

    name: str
    dims: int
    span: Span

    @property
    def written(self) -> str:
        return self.name + "[]" * self.dims


# -- expressions -------------------------------------------------------------


@dataclass
class Literal:
    kind: str  # int long float double char string boolean null
    text: str
    span: Span


@dataclass
class NameExpr:
    name: str
    span: Span


@dataclass
class ThisExpr:
    span: Span


@dataclass
class FieldAccess:
    target: "Expr"
    name: str
    span: Span


@dataclass
class MethodCall:
    target: Optional["Expr"]  # None = unqualified call
    name: str
    args: list["Expr"]
    span: Span


@dataclass
class SuperMember:
    """``super.name`` or ``super.name(args)`` (``args`` None for a field)."""

    name: str
    args: Optional[list["Expr"]]
    span: Span


@dataclass
class SuperCtorCall:
    args: list["Expr"]
    span: Span


@dataclass
class ThisCtorCall:
    args: list["Expr"]
    span: Span


@dataclass
class Cast:
    type: TypeName
    expr: "Expr"
    span: Span


@dataclass
class NewObject:
    type: TypeName
    args: list["Expr"]
    body: Optional["TypeDeclNode"]  # anonymous class body
    span: Span


@dataclass
class NewArray:
    element: TypeName
    dim_exprs: list[Optional["Expr"]]
    init: Optional["ArrayInit"]
    span: Span


@dataclass
class ArrayInit:
    items: list[Union["Expr", "ArrayInit"]]
    span: Span


@dataclass
class ArrayAccess:
    target: "Expr"
    index: "Expr"
    span: Span


@dataclass
class Unary:
    op: str
    expr: "Expr"
    prefix: bool
    span: Span


@dataclass
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span


@dataclass
class InstanceOf:
    expr: "Expr"
    type: TypeName
    span: Span


@dataclass
class Conditional:
    cond: "Expr"
    then: "Expr"
    other: "Expr"
    span: Span


@dataclass
class Assign:
    op: str  # "=", "+=", ...
    target: "Expr"
    value: "Expr"
    span: Span


@dataclass
class Paren:
    expr: "Expr"
    span: Span


Expr = Union[
    Literal,
    NameExpr,
    ThisExpr,
    FieldAccess,
    MethodCall,
    SuperMember,
    SuperCtorCall,
    ThisCtorCall,
    Cast,
    NewObject,
    NewArray,
    ArrayInit,
    ArrayAccess,
    Unary,
    Binary,
    InstanceOf,
    Conditional,
    Assign,
    Paren,
]


# -- statements --------------------------------------------------------------


@dataclass
class Block:
    stmts: list["Stmt"]
    span: Span


@dataclass
class LocalDecl:
    type: TypeName
    declarators: list["Declarator"]
    span: Span


@dataclass
class ExprStmt:
    expr: Expr
    span: Span


@dataclass
class IfStmt:
    cond: Expr
    then: "Stmt"
    other: Optional["Stmt"]
    span: Span


@dataclass
class WhileStmt:
    cond: Expr
    body: "Stmt"
    span: Span


@dataclass
class ForStmt:
    init: Union[LocalDecl, list[Expr], None]
    cond: Optional[Expr]
    update: list[Expr]
    body: "Stmt"
    span: Span


@dataclass
class SwitchGroup:
    labels: list[Optional[Expr]]  # None = default
    stmts: list["Stmt"]


@dataclass
class SwitchStmt:
    selector: Expr
    groups: list[SwitchGroup]
    span: Span


@dataclass
class ReturnStmt:
    value: Optional[Expr]
    span: Span


@dataclass
class BreakStmt:
    span: Span


@dataclass
class ContinueStmt:
    span: Span


@dataclass
class CatchClause:
    param: "Param"
    body: Block
    span: Span


@dataclass
class TryStmt:
    body: Block
    catches: list[CatchClause]
    final: Optional[Block]
    span: Span


@dataclass
class EmptyStmt:
    span: Span


Stmt = Union[
    Block,
    LocalDecl,
    ExprStmt,
    IfStmt,
    WhileStmt,
    ForStmt,
    SwitchStmt,
    ReturnStmt,
    BreakStmt,
    ContinueStmt,
    TryStmt,
    EmptyStmt,
]


# -- declarations ------------------------------------------------------------


@dataclass
class Declarator:
    name: str
    extra_dims: int
    init: Union[Expr, ArrayInit, None]
    span: Span


@dataclass
class FieldDecl:
    modifiers: list[str]
    type: TypeName
    declarators: list[Declarator]
    span: Span


@dataclass
class Param:
    type: TypeName
    name: str
    extra_dims: int
    span: Span

    @property
    def written_type(self) -> str:
        return self.type.written + "[]" * self.extra_dims


@dataclass
class MethodDecl:
    modifiers: list[str]
    ret: Optional[TypeName]  # None for constructors
    name: str
    params: list[Param]
    body: Optional[Block]
    is_ctor: bool
    span: Span


@dataclass
class InitBlock:
    static: bool
    body: Block
    span: Span


@dataclass
class TypeDeclNode:
    name: Optional[str]  # None for anonymous classes until named
    kind: str  # "class" | "interface"
    modifiers: list[str]
    extends: list[TypeName]
    implements: list[TypeName]
    members: list  # FieldDecl | MethodDecl | InitBlock | TypeDeclNode
    span: Span
    anonymous: bool = False
    # Supplied by the anonymous-class creation site: the written supertype.
    anon_supertype: Optional[TypeName] = None
    # Assigned during table construction.
    qualified_name: Optional[str] = None


@dataclass
class ImportDecl:
    name: str
    on_demand: bool
    span: Span


@dataclass
class CompilationUnit:
    package: Optional[str]
    imports: list[ImportDecl]
    types: list[TypeDeclNode]
    file: str
