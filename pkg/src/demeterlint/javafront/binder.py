"""Name binding and per-executable fact extraction.

Two passes over parsed units.  ``build_type_table`` assigns qualified names
(generated ``Outer$anonN`` names included), turns every source declaration
into a TypeDecl, and merges with the stub table.  ``bind_and_extract`` then
walks executable bodies emitting one AccessSite per syntactic member access,
with receiver static type and provenance, in token order.

Receiver typing is static: the declared type of the receiver expression
governs, with no flow analysis.  Accesses through ``this``/``super`` are
recorded but marked by form so detection can skip them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Union

from ..codemodel import (
    DeclKind,
    MemberDecl,
    MemberKind,
    MemberResolutionError,
    Origin,
    ResolutionMode,
    TypeDecl,
    TypeKind,
    TypeRef,
    TypeTable,
    array_of,
    unknown_type,
)
from . import ast
from .errors import BindError

__all__ = [
    "AccessSite",
    "Executable",
    "ProvStep",
    "ReceiverDesc",
    "bind_and_extract",
    "build_type_table",
]

OBJECT = TypeRef("java.lang.Object")
STRING = "java.lang.String"

_PRIM = {name: TypeRef(name, TypeKind.PRIMITIVE) for name in (
    "int", "boolean", "char", "byte", "short", "long", "float", "double", "void", "null"
)}

_NUMERIC_RANK = {"double": 4, "float": 3, "long": 2, "int": 1, "char": 0, "short": 0, "byte": 0}


@dataclass(frozen=True)
class ProvStep:
    """One step of receiver provenance: how the value came to hand."""

    kind: str  # parameter field local call cast new static-member literal
    label: str
    type: TypeRef


@dataclass(frozen=True)
class ReceiverDesc:
    form: str  # this-implicit this-explicit super outer-instance type-name expression
    static_type: TypeRef
    chain: tuple[ProvStep, ...]


@dataclass
class AccessSite:
    site_id: str
    access_kind: str  # method-call field-read field-write static-member-access array-length
    receiver: ReceiverDesc
    member: MemberDecl
    file: str
    line: int
    col: int
    arg_types: tuple[TypeRef, ...] = ()


@dataclass
class Executable:
    id: str
    owner_type: TypeRef
    exec_kind: str  # method constructor instance-initializer static-initializer field-initializer
    params: list[tuple[str, TypeRef]]
    instantiated_types: set[TypeRef] = dc_field(default_factory=set)
    downcast_param_types: set[TypeRef] = dc_field(default_factory=set)
    enclosing_executable: Optional[str] = None
    body_accesses: list[AccessSite] = dc_field(default_factory=list)
    file: str = ""
    line: int = 0
    col: int = 0

    def sort_key(self) -> tuple[str, int, int]:
        return (self.file, self.line, self.col)


# -- unit environment ---------------------------------------------------------


class _UnitEnv:
    """Type-name resolution for one compilation unit.

    Simple names resolve in the usual order: types declared in this unit,
    then the unit's package, then single-type imports, then on-demand
    imports in declared order (ambiguity is an error), then java.lang.
    """

    def __init__(self, unit: ast.CompilationUnit, universe: set[str]):
        self.unit = unit
        self.universe = universe
        self.package = unit.package or ""
        self.single: dict[str, str] = {}
        self.on_demand: list[str] = []
        for imp in unit.imports:
            if imp.on_demand:
                self.on_demand.append(imp.name)
            else:
                self.single[imp.name.rsplit(".", 1)[-1]] = imp.name
        self.local_types: dict[str, str] = {}

        def register(node: ast.TypeDeclNode) -> None:
            if node.name and node.qualified_name:
                self.local_types.setdefault(node.name, node.qualified_name)
            for m in node.members:
                if isinstance(m, ast.TypeDeclNode):
                    register(m)

        for t in unit.types:
            register(t)

    def resolve_simple(self, name: str) -> Optional[str]:
        if name in self.local_types:
            return self.local_types[name]
        candidate = f"{self.package}.{name}" if self.package else name
        if candidate in self.universe:
            return candidate
        if name in self.single:
            return self.single[name]
        matches = []
        for pkg in self.on_demand:
            q = f"{pkg}.{name}"
            if q in self.universe and q not in matches:
                matches.append(q)
        if len(matches) > 1:
            raise _Ambiguity(name, matches)
        if matches:
            return matches[0]
        q = f"java.lang.{name}"
        if q in self.universe:
            return q
        return None

    def resolve_type_name(
        self, tn: ast.TypeName, mode: ResolutionMode, extra_dims: int = 0
    ) -> TypeRef:
        ref = self.resolve_base(tn.name, tn.span, mode)
        for _ in range(tn.dims + extra_dims):
            ref = array_of(ref)
        return ref

    def resolve_base(self, name: str, span: ast.Span, mode: ResolutionMode) -> TypeRef:
        if name in _PRIM:
            return _PRIM[name]
        try:
            if "." in name:
                if name in self.universe:
                    return TypeRef(name)
            else:
                resolved = self.resolve_simple(name)
                if resolved is not None:
                    return TypeRef(resolved)
        except _Ambiguity as amb:
            raise BindError(
                span.file, span.line, span.col,
                f"ambiguous type name '{amb.name}': {' vs '.join(amb.matches)}",
            ) from None
        if mode is ResolutionMode.LENIENT:
            return unknown_type(name)
        raise BindError(span.file, span.line, span.col, f"unknown type '{name}'")

    def is_name_prefix(self, prefix: str) -> bool:
        dotted = prefix + "."
        return any(n.startswith(dotted) for n in self.universe)


class _Ambiguity(Exception):
    def __init__(self, name: str, matches: list[str]):
        super().__init__(name)
        self.name = name
        self.matches = matches


# -- qualified-name assignment and table construction --------------------------


def _iter_type_nodes(unit: ast.CompilationUnit):
    """Yield every type node of the unit in source order, anonymous included.

    Qualified names are assigned on the way: nested named types get
    ``Outer$Inner``; anonymous bodies get ``Outer$anonN`` numbered per
    nearest enclosing named type.
    """

    def walk_type(node: ast.TypeDeclNode, qualified: str, counter: list[int] | None,
                  named_base: str | None):
        node.qualified_name = qualified
        if not node.anonymous:
            counter = [0]
            named_base = qualified
        assert counter is not None and named_base is not None
        yield node
        for member in node.members:
            if isinstance(member, ast.TypeDeclNode):
                yield from walk_type(member, f"{qualified}${member.name}", None, None)
            elif isinstance(member, ast.FieldDecl):
                for d in member.declarators:
                    if d.init is not None:
                        yield from walk_exprs([d.init], counter, named_base)
            elif isinstance(member, ast.MethodDecl) and member.body is not None:
                yield from walk_exprs([member.body], counter, named_base)
            elif isinstance(member, ast.InitBlock):
                yield from walk_exprs([member.body], counter, named_base)

    def walk_exprs(exprs, counter, named_base):
        for e in exprs:
            if isinstance(e, ast.NewObject) and e.body is not None:
                for a in e.args:
                    yield from walk_exprs([a], counter, named_base)
                counter[0] += 1
                yield from walk_type(e.body, f"{named_base}$anon{counter[0]}", counter, named_base)
            else:
                yield from walk_exprs(_child_exprs(e), counter, named_base)

    for top in unit.types:
        prefix = f"{unit.package}." if unit.package else ""
        yield from walk_type(top, prefix + (top.name or ""), None, None)


def _init_exprs(init) -> list:
    return [init]


def _stmt_exprs(s) -> list:
    """Children of a statement in token order (statements and expressions)."""
    if isinstance(s, ast.Block):
        return list(s.stmts)
    if isinstance(s, ast.LocalDecl):
        return [d.init for d in s.declarators if d.init is not None]
    if isinstance(s, ast.ExprStmt):
        return [s.expr]
    if isinstance(s, ast.IfStmt):
        out = [s.cond, s.then]
        if s.other is not None:
            out.append(s.other)
        return out
    if isinstance(s, ast.WhileStmt):
        return [s.cond, s.body]
    if isinstance(s, ast.ForStmt):
        out: list = []
        if isinstance(s.init, ast.LocalDecl):
            out.append(s.init)
        elif isinstance(s.init, list):
            out.extend(s.init)
        if s.cond is not None:
            out.append(s.cond)
        out.extend(s.update)
        out.append(s.body)
        return out
    if isinstance(s, ast.SwitchStmt):
        out = [s.selector]
        for g in s.groups:
            out.extend(l for l in g.labels if l is not None)
            out.extend(g.stmts)
        return out
    if isinstance(s, ast.ReturnStmt):
        return [s.value] if s.value is not None else []
    if isinstance(s, ast.TryStmt):
        out = [s.body]
        for c in s.catches:
            out.append(c.body)
        if s.final is not None:
            out.append(s.final)
        return out
    return []


def _child_exprs(e) -> list:
    """Sub-expressions (and nested statements) of an expression, token order."""
    if isinstance(e, (ast.Block, ast.LocalDecl, ast.ExprStmt, ast.IfStmt, ast.WhileStmt,
                      ast.ForStmt, ast.SwitchStmt, ast.ReturnStmt, ast.TryStmt,
                      ast.BreakStmt, ast.ContinueStmt, ast.EmptyStmt)):
        return _stmt_exprs(e)
    if isinstance(e, ast.FieldAccess):
        return [e.target]
    if isinstance(e, ast.MethodCall):
        return ([e.target] if e.target is not None else []) + list(e.args)
    if isinstance(e, ast.SuperMember):
        return list(e.args or [])
    if isinstance(e, (ast.SuperCtorCall, ast.ThisCtorCall)):
        return list(e.args)
    if isinstance(e, ast.Cast):
        return [e.expr]
    if isinstance(e, ast.NewObject):
        return list(e.args)  # the body is handled by the caller
    if isinstance(e, ast.NewArray):
        out = [d for d in e.dim_exprs if d is not None]
        if e.init is not None:
            out.append(e.init)
        return out
    if isinstance(e, ast.ArrayInit):
        return list(e.items)
    if isinstance(e, ast.ArrayAccess):
        return [e.target, e.index]
    if isinstance(e, ast.Unary):
        return [e.expr]
    if isinstance(e, ast.Binary):
        return [e.left, e.right]
    if isinstance(e, ast.InstanceOf):
        return [e.expr]
    if isinstance(e, ast.Conditional):
        return [e.cond, e.then, e.other]
    if isinstance(e, ast.Assign):
        return [e.target, e.value]
    if isinstance(e, ast.Paren):
        return [e.expr]
    return []


def _visibility(modifiers: list[str]) -> str:
    for v in ("public", "protected", "private"):
        if v in modifiers:
            return v
    return "package"


def build_type_table(
    units: list[ast.CompilationUnit],
    stubs: TypeTable,
    mode: ResolutionMode = ResolutionMode.STRICT,
) -> TypeTable:
    """Assign qualified names, declare source types, merge with stubs."""
    per_unit_nodes: list[tuple[ast.CompilationUnit, list[ast.TypeDeclNode]]] = []
    universe: set[str] = {d.name for d in stubs}
    for unit in units:
        nodes = list(_iter_type_nodes(unit))
        per_unit_nodes.append((unit, nodes))
        universe.update(n.qualified_name for n in nodes)

    source = TypeTable()
    for unit, nodes in per_unit_nodes:
        env = _UnitEnv(unit, universe)
        for node in nodes:
            source.add(_declare(node, env, mode))
    merged = stubs.merge(source)
    merged.validate()
    return merged


def _declare(node: ast.TypeDeclNode, env: _UnitEnv, mode: ResolutionMode) -> TypeDecl:
    assert node.qualified_name is not None
    owner = node.qualified_name
    supers: list[TypeRef] = []
    if node.anonymous:
        assert node.anon_supertype is not None
        supers.append(env.resolve_type_name(node.anon_supertype, mode))
    else:
        for tn in node.extends + node.implements:
            supers.append(env.resolve_type_name(tn, mode))
    members: list[MemberDecl] = []
    is_interface = node.kind == "interface"
    for m in node.members:
        if isinstance(m, ast.FieldDecl):
            base = m.type
            for d in m.declarators:
                members.append(
                    MemberDecl(
                        name=d.name,
                        member_kind=MemberKind.FIELD,
                        is_static="static" in m.modifiers or is_interface,
                        visibility="public" if is_interface else _visibility(m.modifiers),
                        declared_type=env.resolve_type_name(base, mode, extra_dims=d.extra_dims),
                        param_types=(),
                        declaring_type=owner,
                    )
                )
        elif isinstance(m, ast.MethodDecl):
            params = tuple(
                env.resolve_type_name(p.type, mode, extra_dims=p.extra_dims) for p in m.params
            )
            if m.is_ctor:
                members.append(
                    MemberDecl(
                        name="<init>",
                        member_kind=MemberKind.CONSTRUCTOR,
                        is_static=False,
                        visibility=_visibility(m.modifiers),
                        declared_type=TypeRef(owner),
                        param_types=params,
                        declaring_type=owner,
                    )
                )
            else:
                assert m.ret is not None
                members.append(
                    MemberDecl(
                        name=m.name,
                        member_kind=MemberKind.METHOD,
                        is_static="static" in m.modifiers,
                        visibility="public" if is_interface else _visibility(m.modifiers),
                        declared_type=env.resolve_type_name(m.ret, mode),
                        param_types=params,
                        declaring_type=owner,
                    )
                )
    return TypeDecl(
        ref=TypeRef(owner),
        decl_kind=DeclKind.INTERFACE if is_interface else DeclKind.CLASS,
        supertypes=tuple(supers),
        members=tuple(members),
        origin=Origin.SOURCE,
    )


# -- extraction ----------------------------------------------------------------


def bind_and_extract(
    units: list[ast.CompilationUnit],
    table: TypeTable,
    mode: ResolutionMode = ResolutionMode.STRICT,
) -> list[Executable]:
    """Extract every executable with its access sites, sorted by (file, span).

    ``build_type_table`` must have run on these unit objects first: it
    annotates type nodes with qualified names.
    """
    universe = {d.name for d in table}
    out: list[Executable] = []
    for unit in units:
        env = _UnitEnv(unit, universe)
        extractor = _Extractor(env, table, mode)
        for node in unit.types:
            extractor.extract_type(node, enclosing_types=[], enclosing_exec=None)
        out.extend(extractor.executables)
    out.sort(key=Executable.sort_key)
    return out


@dataclass(frozen=True)
class _Value:
    """What visiting an expression yields for receiver purposes."""

    type: TypeRef
    chain: tuple[ProvStep, ...]
    form: str  # expression | this-explicit | type-name | name-prefix
    label: str = ""  # dotted prefix text for name-prefix values


class _Extractor:
    def __init__(self, env: _UnitEnv, table: TypeTable, mode: ResolutionMode):
        self.env = env
        self.table = table
        self.mode = mode
        self.executables: list[Executable] = []
        self.file = env.unit.file

    # -- executables ------------------------------------------------------

    def extract_type(
        self,
        node: ast.TypeDeclNode,
        enclosing_types: list[TypeRef],
        enclosing_exec: Optional[str],
    ) -> None:
        assert node.qualified_name is not None
        owner = TypeRef(node.qualified_name)
        init_blocks = 0
        static_blocks = 0
        for m in node.members:
            if isinstance(m, ast.FieldDecl):
                for d in m.declarators:
                    if d.init is None:
                        continue
                    ex = self._new_executable(
                        f"{owner.name}#<field:{d.name}>",
                        owner, "field-initializer", [], d.span, enclosing_exec,
                    )
                    walker = _BodyWalker(self, ex, owner, enclosing_types)
                    walker.visit_expr_or_init(d.init)
                    walker.finish()
            elif isinstance(m, ast.InitBlock):
                if m.static:
                    static_blocks += 1
                    ident = f"{owner.name}#<clinit>[{static_blocks}]"
                    kind = "static-initializer"
                else:
                    init_blocks += 1
                    ident = f"{owner.name}#<init-block>[{init_blocks}]"
                    kind = "instance-initializer"
                ex = self._new_executable(ident, owner, kind, [], m.span, enclosing_exec)
                walker = _BodyWalker(self, ex, owner, enclosing_types)
                walker.visit_stmt(m.body)
                walker.finish()
            elif isinstance(m, ast.MethodDecl):
                if m.body is None:
                    continue
                sig = ",".join(p.written_type for p in m.params)
                name = "<init>" if m.is_ctor else m.name
                params = [
                    (p.name, self.env.resolve_type_name(p.type, self.mode, extra_dims=p.extra_dims))
                    for p in m.params
                ]
                ex = self._new_executable(
                    f"{owner.name}#{name}({sig})",
                    owner,
                    "constructor" if m.is_ctor else "method",
                    params,
                    m.span,
                    enclosing_exec,
                )
                walker = _BodyWalker(self, ex, owner, enclosing_types)
                walker.visit_stmt(m.body)
                walker.finish()
            elif isinstance(m, ast.TypeDeclNode):
                self.extract_type(m, [owner] + enclosing_types, None)

    def _new_executable(
        self,
        ident: str,
        owner: TypeRef,
        kind: str,
        params: list[tuple[str, TypeRef]],
        span: ast.Span,
        enclosing_exec: Optional[str],
    ) -> Executable:
        ex = Executable(
            id=ident,
            owner_type=owner,
            exec_kind=kind,
            params=params,
            enclosing_executable=enclosing_exec,
            file=span.file,
            line=span.line,
            col=span.col,
        )
        self.executables.append(ex)
        return ex


class _BodyWalker:
    """Walks one executable body, emitting sites in token order."""

    def __init__(
        self,
        extractor: _Extractor,
        ex: Executable,
        owner: TypeRef,
        enclosing_types: list[TypeRef],
    ):
        self.x = extractor
        self.ex = ex
        self.owner = owner
        self.enclosing_types = enclosing_types
        self.scopes: list[dict[str, TypeRef]] = []
        self.ordinal = 0
        self.pending_anons: list[tuple[ast.TypeDeclNode, list[TypeRef]]] = []

    def finish(self) -> None:
        """Process anonymous classes created in this body, in source order."""
        for node, types_chain in self.pending_anons:
            self.x.extract_type(node, types_chain, enclosing_exec=self.ex.id)

    # -- helpers ------------------------------------------------------------

    @property
    def table(self) -> TypeTable:
        return self.x.table

    @property
    def mode(self) -> ResolutionMode:
        return self.x.mode

    def err(self, span: ast.Span, message: str) -> BindError:
        return BindError(span.file, span.line, span.col, message)

    def try_member(self, receiver: TypeRef, name: str, arity: int | None) -> MemberDecl | None:
        try:
            return self.table.resolve_member(receiver, name, arity, ResolutionMode.STRICT)
        except MemberResolutionError:
            return None

    def member_or_err(
        self, receiver: TypeRef, name: str, arity: int | None, span: ast.Span
    ) -> MemberDecl:
        if receiver.kind is TypeKind.PRIMITIVE:
            raise self.err(span, f"member access on primitive type '{receiver.name}'")
        if receiver.kind is TypeKind.ARRAY:
            receiver = OBJECT  # arrays expose only Object members beyond length
        try:
            return self.table.resolve_member(receiver, name, arity, self.mode)
        except MemberResolutionError:
            shown = name if arity is None else f"{name}({arity} args)"
            raise self.err(span, f"no member {shown} on type {receiver.name}") from None

    def emit(
        self,
        access_kind: str,
        receiver: ReceiverDesc,
        member: MemberDecl,
        span: ast.Span,
    ) -> AccessSite:
        self.ordinal += 1
        site = AccessSite(
            site_id=f"{self.ex.id}@{self.ordinal:04d}",
            access_kind=access_kind,
            receiver=receiver,
            member=member,
            file=span.file,
            line=span.line,
            col=span.col,
        )
        self.ex.body_accesses.append(site)
        return site

    def lookup_local(self, name: str) -> TypeRef | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def lookup_param(self, name: str) -> TypeRef | None:
        for pname, ptype in self.ex.params:
            if pname == name:
                return ptype
        return None

    def direct_superclass(self) -> TypeRef:
        decl = self.table.get(self.owner.name)
        if decl is not None:
            for sup in decl.supertypes:
                sup_decl = self.table.get(sup.name)
                if sup_decl is None or sup_decl.decl_kind is DeclKind.CLASS:
                    return sup
        return OBJECT

    # -- statements ----------------------------------------------------------

    def visit_stmt(self, s: ast.Stmt) -> None:
        if isinstance(s, ast.Block):
            self.scopes.append({})
            for inner in s.stmts:
                self.visit_stmt(inner)
            self.scopes.pop()
        elif isinstance(s, ast.LocalDecl):
            self.visit_local_decl(s)
        elif isinstance(s, ast.ExprStmt):
            self.visit_expr(s.expr)
        elif isinstance(s, ast.IfStmt):
            self.visit_expr(s.cond)
            self.visit_stmt(s.then)
            if s.other is not None:
                self.visit_stmt(s.other)
        elif isinstance(s, ast.WhileStmt):
            self.visit_expr(s.cond)
            self.visit_stmt(s.body)
        elif isinstance(s, ast.ForStmt):
            self.scopes.append({})
            if isinstance(s.init, ast.LocalDecl):
                self.visit_local_decl(s.init)
            elif isinstance(s.init, list):
                for e in s.init:
                    self.visit_expr(e)
            if s.cond is not None:
                self.visit_expr(s.cond)
            for e in s.update:
                self.visit_expr(e)
            self.visit_stmt(s.body)
            self.scopes.pop()
        elif isinstance(s, ast.SwitchStmt):
            self.visit_expr(s.selector)
            self.scopes.append({})
            for g in s.groups:
                for label in g.labels:
                    if label is not None:
                        self.visit_expr(label)
                for inner in g.stmts:
                    self.visit_stmt(inner)
            self.scopes.pop()
        elif isinstance(s, ast.ReturnStmt):
            if s.value is not None:
                self.visit_expr(s.value)
        elif isinstance(s, ast.TryStmt):
            self.visit_stmt(s.body)
            for c in s.catches:
                # Caught variables count as parameters of this executable.
                ptype = self.x.env.resolve_type_name(c.param.type, self.mode)
                self.ex.params.append((c.param.name, ptype))
                self.visit_stmt(c.body)
            if s.final is not None:
                self.visit_stmt(s.final)
        elif isinstance(s, (ast.BreakStmt, ast.ContinueStmt, ast.EmptyStmt)):
            pass
        else:  # pragma: no cover - parser produces no other statements
            raise AssertionError(f"unhandled statement {type(s).__name__}")

    def visit_local_decl(self, s: ast.LocalDecl) -> None:
        for d in s.declarators:
            if d.init is not None:
                self.visit_expr_or_init(d.init)
            t = self.x.env.resolve_type_name(s.type, self.mode, extra_dims=d.extra_dims)
            if not self.scopes:
                self.scopes.append({})
            self.scopes[-1][d.name] = t

    def visit_expr_or_init(self, e) -> None:
        if isinstance(e, ast.ArrayInit):
            for item in e.items:
                self.visit_expr_or_init(item)
        else:
            self.visit_expr(e)

    # -- expressions -----------------------------------------------------------

    def visit_expr(self, e: ast.Expr) -> _Value:
        method = getattr(self, "_visit_" + type(e).__name__, None)
        if method is None:  # pragma: no cover - parser produces no other nodes
            raise AssertionError(f"unhandled expression {type(e).__name__}")
        return method(e)

    def _unknown_value(self, name: str) -> _Value:
        t = unknown_type(name)
        return _Value(t, (ProvStep("local", name, t),), "expression")

    def _visit_Literal(self, e: ast.Literal) -> _Value:
        if e.kind == "string":
            t: TypeRef = TypeRef(STRING)
        elif e.kind == "boolean":
            t = _PRIM["boolean"]
        elif e.kind == "null":
            t = _PRIM["null"]
        else:
            t = _PRIM[e.kind]
        return _Value(t, (ProvStep("literal", e.text, t),), "expression")

    def _visit_ThisExpr(self, e: ast.ThisExpr) -> _Value:
        return _Value(self.owner, (), "this-explicit")

    def _visit_Paren(self, e: ast.Paren) -> _Value:
        return self.visit_expr(e.expr)

    def _visit_NameExpr(self, e: ast.NameExpr) -> _Value:
        name = e.name
        t = self.lookup_local(name)
        if t is not None:
            return _Value(t, (ProvStep("local", name, t),), "expression")
        t = self.lookup_param(name)
        if t is not None:
            return _Value(t, (ProvStep("parameter", name, t),), "expression")
        member = self.try_member_visible(self.owner, name, None)
        if member is not None:
            recv = ReceiverDesc("this-implicit", self.owner, ())
            self.emit("field-read", recv, member, e.span)
            return _Value(
                member.declared_type,
                (ProvStep("field", name, member.declared_type),),
                "expression",
            )
        for outer in self.enclosing_types:
            member = self.try_member(outer, name, None)
            if member is not None:
                recv = ReceiverDesc("outer-instance", outer, ())
                self.emit("field-read", recv, member, e.span)
                return _Value(
                    member.declared_type,
                    (ProvStep("field", name, member.declared_type),),
                    "expression",
                )
        try:
            resolved = self.x.env.resolve_simple(name)
        except _Ambiguity as amb:
            raise self.err(
                e.span, f"ambiguous type name '{amb.name}': {' vs '.join(amb.matches)}"
            ) from None
        if resolved is not None:
            return _Value(TypeRef(resolved), (), "type-name")
        if self.x.env.is_name_prefix(name):
            return _Value(OBJECT, (), "name-prefix", label=name)
        if self.mode is ResolutionMode.LENIENT:
            return self._unknown_value(name)
        raise self.err(e.span, f"cannot resolve name '{name}'")

    def try_member_visible(self, receiver: TypeRef, name: str, arity: int | None):
        return self.try_member(receiver, name, arity)

    def _visit_FieldAccess(self, e: ast.FieldAccess) -> _Value:
        v = self.visit_expr(e.target)
        if v.form == "name-prefix":
            extended = f"{v.label}.{e.name}"
            if extended in self.x.env.universe:
                return _Value(TypeRef(extended), (), "type-name")
            if self.x.env.is_name_prefix(extended):
                return _Value(OBJECT, (), "name-prefix", label=extended)
            if self.mode is ResolutionMode.LENIENT:
                return self._unknown_value(extended)
            raise self.err(e.span, f"cannot resolve name '{extended}'")
        if v.type.kind is TypeKind.ARRAY and e.name == "length":
            member = MemberDecl(
                name="length",
                member_kind=MemberKind.FIELD,
                is_static=False,
                visibility="public",
                declared_type=_PRIM["int"],
                param_types=(),
                declaring_type=v.type.name,
            )
            form = v.form if v.form in ("this-explicit",) else "expression"
            self.emit("array-length", ReceiverDesc(form, v.type, v.chain), member, e.span)
            return _Value(_PRIM["int"], (ProvStep("field", "length", _PRIM["int"]),), "expression")
        member = self.member_or_err(v.type, e.name, None, e.span)
        if v.form == "type-name":
            self.emit("static-member-access", ReceiverDesc("type-name", v.type, ()), member, e.span)
            return _Value(
                member.declared_type,
                (ProvStep("static-member", e.name, member.declared_type),),
                "expression",
            )
        form = "this-explicit" if v.form == "this-explicit" else "expression"
        self.emit("field-read", ReceiverDesc(form, v.type, v.chain), member, e.span)
        return _Value(
            member.declared_type,
            v.chain + (ProvStep("field", e.name, member.declared_type),),
            "expression",
        )

    def _visit_MethodCall(self, e: ast.MethodCall) -> _Value:
        arity = len(e.args)
        if e.target is None:
            member = self.try_member_visible(self.owner, e.name, arity)
            if member is not None:
                recv = ReceiverDesc("this-implicit", self.owner, ())
                site = self.emit("method-call", recv, member, e.span)
            else:
                for outer in self.enclosing_types:
                    member = self.try_member(outer, e.name, arity)
                    if member is not None:
                        recv = ReceiverDesc("outer-instance", outer, ())
                        site = self.emit("method-call", recv, member, e.span)
                        break
                else:
                    if self.mode is ResolutionMode.LENIENT:
                        member = self.table.resolve_member(
                            self.owner, e.name, arity, ResolutionMode.LENIENT
                        )
                        recv = ReceiverDesc("this-implicit", self.owner, ())
                        site = self.emit("method-call", recv, member, e.span)
                    else:
                        raise self.err(
                            e.span, f"cannot resolve method '{e.name}' ({arity} args)"
                        )
            site.arg_types = tuple(self.visit_expr(a).type for a in e.args)
            ret = member.declared_type
            return _Value(ret, (ProvStep("call", e.name, ret),), "expression")
        v = self.visit_expr(e.target)
        if v.form == "name-prefix":
            if self.mode is ResolutionMode.LENIENT:
                v = self._unknown_value(v.label)
            else:
                raise self.err(e.span, f"cannot resolve name '{v.label}'")
        member = self.member_or_err(v.type, e.name, arity, e.span)
        if v.form == "type-name":
            site = self.emit(
                "static-member-access", ReceiverDesc("type-name", v.type, ()), member, e.span
            )
            result_chain: tuple[ProvStep, ...] = (
                ProvStep("static-member", e.name, member.declared_type),
            )
        else:
            form = "this-explicit" if v.form == "this-explicit" else "expression"
            site = self.emit(
                "method-call", ReceiverDesc(form, v.type, v.chain), member, e.span
            )
            result_chain = v.chain + (ProvStep("call", e.name, member.declared_type),)
        site.arg_types = tuple(self.visit_expr(a).type for a in e.args)
        return _Value(member.declared_type, result_chain, "expression")

    def _visit_SuperMember(self, e: ast.SuperMember) -> _Value:
        sup = self.direct_superclass()
        arity = None if e.args is None else len(e.args)
        member = self.member_or_err(sup, e.name, arity, e.span)
        kind = "field-read" if e.args is None else "method-call"
        site = self.emit(kind, ReceiverDesc("super", sup, ()), member, e.span)
        if e.args is not None:
            site.arg_types = tuple(self.visit_expr(a).type for a in e.args)
            return _Value(
                member.declared_type,
                (ProvStep("call", e.name, member.declared_type),),
                "expression",
            )
        return _Value(
            member.declared_type,
            (ProvStep("field", e.name, member.declared_type),),
            "expression",
        )

    def _visit_SuperCtorCall(self, e: ast.SuperCtorCall) -> _Value:
        for a in e.args:
            self.visit_expr(a)
        return _Value(_PRIM["void"], (), "expression")

    def _visit_ThisCtorCall(self, e: ast.ThisCtorCall) -> _Value:
        for a in e.args:
            self.visit_expr(a)
        return _Value(_PRIM["void"], (), "expression")

    def _visit_Cast(self, e: ast.Cast) -> _Value:
        v = self.visit_expr(e.expr)
        t = self.x.env.resolve_type_name(e.type, self.mode)
        if isinstance(e.expr, ast.NameExpr) and self.lookup_param(e.expr.name) is not None:
            if not t.is_primitive:
                self.ex.downcast_param_types.add(t)
        return _Value(t, v.chain + (ProvStep("cast", t.name, t),), "expression")

    def _visit_NewObject(self, e: ast.NewObject) -> _Value:
        if e.body is not None:
            assert e.body.qualified_name is not None
            t = TypeRef(e.body.qualified_name)
            self.pending_anons.append((e.body, [self.owner] + self.enclosing_types))
        else:
            t = self.x.env.resolve_type_name(e.type, self.mode)
        if not t.is_primitive:
            self.ex.instantiated_types.add(t)
        for a in e.args:
            self.visit_expr(a)
        return _Value(t, (ProvStep("new", t.name, t),), "expression")

    def _visit_NewArray(self, e: ast.NewArray) -> _Value:
        elem = self.x.env.resolve_type_name(e.element, self.mode)
        t = elem
        for _ in e.dim_exprs:
            t = array_of(t)
        for d in e.dim_exprs:
            if d is not None:
                self.visit_expr(d)
        if e.init is not None:
            self.visit_expr_or_init(e.init)
        return _Value(t, (ProvStep("new", t.name, t),), "expression")

    def _visit_ArrayInit(self, e: ast.ArrayInit) -> _Value:
        self.visit_expr_or_init(e)
        return _Value(unknown_type("<array-init>"), (), "expression")

    def _visit_ArrayAccess(self, e: ast.ArrayAccess) -> _Value:
        v = self.visit_expr(e.target)
        self.visit_expr(e.index)
        if v.type.kind is TypeKind.ARRAY:
            assert v.type.element is not None
            return _Value(v.type.element, v.chain, "expression")
        if v.type.kind is TypeKind.UNKNOWN or self.mode is ResolutionMode.LENIENT:
            return _Value(unknown_type(f"{v.type.name}[?]"), v.chain, "expression")
        raise self.err(e.span, f"array access on non-array type {v.type.name}")

    def _visit_Unary(self, e: ast.Unary) -> _Value:
        if e.op in ("++", "--"):
            return self._visit_increment(e)
        v = self.visit_expr(e.expr)
        if e.op == "!":
            t: TypeRef = _PRIM["boolean"]
        elif e.op in ("~", "+", "-"):
            t = _promote_unary(v.type)
        else:  # pragma: no cover
            t = v.type
        return _Value(t, (ProvStep("literal", e.op, t),), "expression")

    def _visit_increment(self, e: ast.Unary) -> _Value:
        target = e.expr
        while isinstance(target, ast.Paren):
            target = target.expr
        v = self._write_target(target)
        return _Value(v.type, v.chain, "expression")

    def _visit_Binary(self, e: ast.Binary) -> _Value:
        lv = self.visit_expr(e.left)
        rv = self.visit_expr(e.right)
        t = _binary_type(e.op, lv.type, rv.type)
        return _Value(t, (ProvStep("literal", e.op, t),), "expression")

    def _visit_InstanceOf(self, e: ast.InstanceOf) -> _Value:
        self.visit_expr(e.expr)
        self.x.env.resolve_type_name(e.type, self.mode)
        t = _PRIM["boolean"]
        return _Value(t, (ProvStep("literal", "instanceof", t),), "expression")

    def _visit_Conditional(self, e: ast.Conditional) -> _Value:
        self.visit_expr(e.cond)
        then = self.visit_expr(e.then)
        self.visit_expr(e.other)
        # Documented simplification: the conditional types as its then-branch.
        return _Value(then.type, then.chain, "expression")

    def _visit_Assign(self, e: ast.Assign) -> _Value:
        target = e.target
        while isinstance(target, ast.Paren):
            target = target.expr
        v = self._write_target(target)
        self.visit_expr(e.value)
        return _Value(v.type, v.chain, "expression")

    def _write_target(self, target: ast.Expr) -> _Value:
        """Visit an assignment/increment target, emitting one write site."""
        if isinstance(target, ast.NameExpr):
            name = target.name
            t = self.lookup_local(name)
            if t is not None:
                return _Value(t, (ProvStep("local", name, t),), "expression")
            t = self.lookup_param(name)
            if t is not None:
                return _Value(t, (ProvStep("parameter", name, t),), "expression")
            member = self.try_member(self.owner, name, None)
            if member is not None:
                recv = ReceiverDesc("this-implicit", self.owner, ())
                self.emit("field-write", recv, member, target.span)
                return _Value(
                    member.declared_type,
                    (ProvStep("field", name, member.declared_type),),
                    "expression",
                )
            for outer in self.enclosing_types:
                member = self.try_member(outer, name, None)
                if member is not None:
                    recv = ReceiverDesc("outer-instance", outer, ())
                    self.emit("field-write", recv, member, target.span)
                    return _Value(
                        member.declared_type,
                        (ProvStep("field", name, member.declared_type),),
                        "expression",
                    )
            if self.mode is ResolutionMode.LENIENT:
                return self._unknown_value(name)
            raise self.err(target.span, f"cannot resolve name '{name}'")
        if isinstance(target, ast.FieldAccess):
            v = self.visit_expr(target.target)
            if v.form == "name-prefix":
                if self.mode is ResolutionMode.LENIENT:
                    v = self._unknown_value(v.label)
                else:
                    raise self.err(target.span, f"cannot resolve name '{v.label}'")
            member = self.member_or_err(v.type, target.name, None, target.span)
            if v.form == "type-name":
                self.emit(
                    "static-member-access", ReceiverDesc("type-name", v.type, ()), member, target.span
                )
            else:
                form = "this-explicit" if v.form == "this-explicit" else "expression"
                self.emit("field-write", ReceiverDesc(form, v.type, v.chain), member, target.span)
            return _Value(
                member.declared_type,
                v.chain + (ProvStep("field", target.name, member.declared_type),),
                "expression",
            )
        if isinstance(target, ast.ArrayAccess):
            return self._visit_ArrayAccess(target)
        if isinstance(target, ast.SuperMember) and target.args is None:
            return self._visit_SuperMember(target)
        # anything else: value computed, no member written
        return self.visit_expr(target)


def _promote_unary(t: TypeRef) -> TypeRef:
    if t.kind is TypeKind.PRIMITIVE and t.name in _NUMERIC_RANK:
        return _PRIM[t.name] if _NUMERIC_RANK[t.name] >= 1 else _PRIM["int"]
    if t.kind is TypeKind.UNKNOWN:
        return t
    return _PRIM["int"]


def _binary_type(op: str, left: TypeRef, right: TypeRef) -> TypeRef:
    if op in ("==", "!=", "<", ">", "<=", ">=", "&&", "||"):
        return _PRIM["boolean"]
    if op == "+" and (left.name == STRING or right.name == STRING):
        return TypeRef(STRING)
    if op in ("&", "|", "^") and left.name == "boolean" and right.name == "boolean":
        return _PRIM["boolean"]
    if op in ("<<", ">>", ">>>"):
        return _promote_unary(left)
    if left.kind is TypeKind.UNKNOWN:
        return left
    if right.kind is TypeKind.UNKNOWN:
        return right
    lrank = _NUMERIC_RANK.get(left.name, 0) if left.is_primitive else 0
    rrank = _NUMERIC_RANK.get(right.name, 0) if right.is_primitive else 0
    best = max(lrank, rrank, 1)
    for name, rank in _NUMERIC_RANK.items():
        if rank == best and name in ("double", "float", "long", "int"):
            return _PRIM[name]
    return _PRIM["int"]
