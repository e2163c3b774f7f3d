"""Types, members, and the merged type table the analysis runs against.

The model is deliberately small: a type is a named reference (declared,
primitive, array, or unknown), a declaration lists supertypes and members,
and a table maps qualified names to declarations.  Declarations come from
two origins, analyzed source and stub documents, and are merged into one
table before analysis.

Two operations carry the semantic weight.  ``supertype_closure`` computes
the reflexive-transitive supertype set used for friendship checks, and
``resolve_member`` finds the member an access refers to, searching the
receiver first and then its supertypes depth-first, extends before
implements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

__all__ = [
    "ARRAYS",
    "DeclKind",
    "LoadError",
    "MemberDecl",
    "MemberKind",
    "MemberResolutionError",
    "Origin",
    "PRIMITIVES",
    "ResolutionMode",
    "TypeDecl",
    "TypeKind",
    "TypeRef",
    "TypeTable",
    "load_stubs",
    "parse_type_name",
]

STUB_SCHEMA = "demeterlint-stubs/1"

PRIMITIVES = frozenset(
    {"int", "boolean", "char", "byte", "short", "long", "float", "double", "void", "null"}
)

OBJECT_NAME = "java.lang.Object"


class TypeKind(Enum):
    DECLARED = "declared"
    PRIMITIVE = "primitive"
    ARRAY = "array"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TypeRef:
    """A reference to a type by qualified name.

    Array references carry exactly one element reference; their name is the
    element name with a trailing ``[]``.  ``null`` is modelled as a primitive
    so the literal can be typed without ever becoming a friend or receiver.
    """

    name: str
    kind: TypeKind = TypeKind.DECLARED
    element: TypeRef | None = None

    def __post_init__(self) -> None:
        if self.kind is TypeKind.ARRAY and self.element is None:
            raise ValueError("array reference needs an element type")
        if self.kind is not TypeKind.ARRAY and self.element is not None:
            raise ValueError("only array references carry an element type")

    @property
    def is_primitive(self) -> bool:
        return self.kind is TypeKind.PRIMITIVE

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    def __str__(self) -> str:
        return self.name


def array_of(element: TypeRef) -> TypeRef:
    return TypeRef(element.name + "[]", TypeKind.ARRAY, element)


#: Pseudo-type standing for "some array"; closures of array types include it,
#: never user code.  The angle brackets keep it out of the Java name space.
ARRAYS = TypeRef("<arrays>")


def unknown_type(name: str) -> TypeRef:
    return TypeRef(name, TypeKind.UNKNOWN)


def parse_type_name(text: str) -> TypeRef:
    """Turn a stub-document type string into a reference.

    Accepts qualified names, primitive names, and trailing ``[]`` pairs
    (``java.lang.String[]``).
    """
    text = text.strip()
    dims = 0
    while text.endswith("[]"):
        text = text[:-2].strip()
        dims += 1
    if not text:
        raise LoadError("E-STUB", "empty type name")
    if text in PRIMITIVES:
        ref = TypeRef(text, TypeKind.PRIMITIVE)
    else:
        ref = TypeRef(text)
    for _ in range(dims):
        ref = array_of(ref)
    return ref


class MemberKind(Enum):
    FIELD = "field"
    METHOD = "method"
    CONSTRUCTOR = "constructor"


class DeclKind(Enum):
    CLASS = "class"
    INTERFACE = "interface"


class Origin(Enum):
    SOURCE = "analyzed-source"
    STUB = "stub"


@dataclass(frozen=True)
class MemberDecl:
    """One declared field, method, or constructor.

    ``declared_type`` is the field type or method return type.  The
    resolution key is (declaring type, name, arity); fields resolve with
    arity ``None``.
    """

    name: str
    member_kind: MemberKind
    is_static: bool
    visibility: str
    declared_type: TypeRef
    param_types: tuple[TypeRef, ...]
    declaring_type: str

    @property
    def arity(self) -> int | None:
        if self.member_kind is MemberKind.FIELD:
            return None
        return len(self.param_types)

    @property
    def is_public(self) -> bool:
        return self.visibility == "public"


@dataclass(frozen=True)
class TypeDecl:
    ref: TypeRef
    decl_kind: DeclKind
    supertypes: tuple[TypeRef, ...]
    members: tuple[MemberDecl, ...]
    origin: Origin

    @property
    def name(self) -> str:
        return self.ref.name

    def structurally_equal(self, other: TypeDecl) -> bool:
        """Equality ignoring origin, used to tolerate benign merges."""
        return (
            self.ref == other.ref
            and self.decl_kind == other.decl_kind
            and self.supertypes == other.supertypes
            and self.members == other.members
        )


class LoadError(Exception):
    """Raised for malformed or inconsistent stub and table input."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class MemberResolutionError(LookupError):
    def __init__(self, receiver: TypeRef, name: str, arity: int | None):
        shown = name if arity is None else f"{name}/{arity}"
        super().__init__(f"no member {shown} on {receiver.name}")
        self.receiver = receiver
        self.member_name = name
        self.arity = arity


class ResolutionMode(Enum):
    STRICT = "strict"
    LENIENT = "lenient"


def _check_members(decl_name: str, members: Iterable[MemberDecl]) -> None:
    seen: set[tuple[str, int | None]] = set()
    for m in members:
        key = (m.name, m.arity)
        if m.member_kind is MemberKind.CONSTRUCTOR:
            key = ("<init>", m.arity)
        if key in seen:
            raise LoadError(
                "E-STUB", f"duplicate member {key[0]}/{key[1]} in {decl_name}"
            )
        seen.add(key)


@dataclass
class TypeTable:
    """All known type declarations, keyed by qualified name."""

    _decls: dict[str, TypeDecl] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self._decls

    def __iter__(self) -> Iterator[TypeDecl]:
        return iter(self._decls.values())

    def __len__(self) -> int:
        return len(self._decls)

    def get(self, name: str) -> TypeDecl | None:
        return self._decls.get(name)

    def add(self, decl: TypeDecl) -> None:
        existing = self._decls.get(decl.name)
        if existing is not None:
            if existing.structurally_equal(decl):
                # Prefer the analyzed declaration so merge order cannot matter.
                if existing.origin is Origin.STUB and decl.origin is Origin.SOURCE:
                    self._decls[decl.name] = decl
                return
            raise LoadError(
                "E-STUB",
                f"conflicting declarations for {decl.name} "
                f"({existing.origin.value} vs {decl.origin.value})",
            )
        _check_members(decl.name, decl.members)
        self._decls[decl.name] = decl

    def merge(self, other: TypeTable) -> TypeTable:
        merged = TypeTable(dict(self._decls))
        for decl in other:
            merged.add(decl)
        return merged

    def validate(self) -> None:
        """Check supertype sanity: acyclic everywhere, resolvable for source.

        Stub declarations may name supertypes that are not in the table;
        such references simply close to themselves.
        """
        for decl in self:
            if decl.origin is Origin.SOURCE:
                for sup in decl.supertypes:
                    if sup.name not in self._decls:
                        raise LoadError(
                            "E-BIND",
                            f"{decl.name}: supertype {sup.name} is not declared",
                        )
        state: dict[str, int] = {}

        def visit(name: str, trail: tuple[str, ...]) -> None:
            mark = state.get(name)
            if mark == 2:
                return
            if mark == 1:
                cycle = " -> ".join(trail + (name,))
                raise LoadError("E-STUB", f"cyclic supertypes: {cycle}")
            state[name] = 1
            decl = self._decls.get(name)
            if decl is not None:
                for sup in decl.supertypes:
                    visit(sup.name, trail + (name,))
            state[name] = 2

        for name in self._decls:
            visit(name, ())

    # -- closure ----------------------------------------------------------

    def supertype_closure(self, seeds: Iterable[TypeRef]) -> frozenset[TypeRef]:
        """Reflexive-transitive supertypes of ``seeds``.

        Seeds must already be primitive-free; callers filter.  Unknown types
        close to themselves.  An array closes to itself, its element's
        closure, and the shared array pseudo-type.  Declared types implicitly
        reach ``java.lang.Object`` even when no supertype is written.
        """
        out: set[TypeRef] = set()
        work: list[TypeRef] = []
        for ref in seeds:
            if ref.is_primitive:
                raise ValueError(f"primitive seed {ref.name} (callers must filter)")
            work.append(ref)
        while work:
            ref = work.pop()
            if ref in out:
                continue
            out.add(ref)
            if ref.kind is TypeKind.ARRAY:
                out.add(ARRAYS)
                assert ref.element is not None
                if not ref.element.is_primitive:
                    work.append(ref.element)
                continue
            if ref.kind is not TypeKind.DECLARED or ref == ARRAYS:
                continue
            decl = self._decls.get(ref.name)
            if decl is not None:
                work.extend(decl.supertypes)
            if ref.name != OBJECT_NAME:
                work.append(TypeRef(OBJECT_NAME))
        return frozenset(out)

    # -- member resolution -------------------------------------------------

    def _resolution_order(self, start: TypeRef) -> Iterator[TypeDecl]:
        """Receiver first, then supertypes depth-first in declared order.

        The parser and the stub loader both keep the extends edge ahead of
        implements edges, so the declared order realizes extends-first.
        ``java.lang.Object`` is searched last.
        """
        visited: set[str] = set()
        saw_object = False

        def walk(name: str) -> Iterator[TypeDecl]:
            nonlocal saw_object
            if name in visited:
                return
            visited.add(name)
            if name == OBJECT_NAME:
                saw_object = True
            decl = self._decls.get(name)
            if decl is None:
                return
            yield decl
            for sup in decl.supertypes:
                yield from walk(sup.name)

        yield from walk(start.name)
        if not saw_object:
            yield from walk(OBJECT_NAME)

    def resolve_member(
        self,
        receiver: TypeRef,
        name: str,
        arity: int | None,
        mode: ResolutionMode = ResolutionMode.STRICT,
    ) -> MemberDecl:
        """Find the member ``name`` with the given arity on ``receiver``.

        ``arity`` is ``None`` for fields.  Private members of supertypes are
        invisible.  Constructors are looked up on the receiver only; they are
        not inherited.  In lenient mode an unresolved member comes back as a
        synthetic member of unknown type instead of an error.
        """
        if receiver.kind is TypeKind.DECLARED:
            if name == "<init>":
                decl = self._decls.get(receiver.name)
                if decl is not None:
                    for m in decl.members:
                        if m.member_kind is MemberKind.CONSTRUCTOR and m.arity == arity:
                            return m
            else:
                for decl in self._resolution_order(receiver):
                    for m in decl.members:
                        if m.member_kind is MemberKind.CONSTRUCTOR:
                            continue
                        if m.name != name or m.arity != arity:
                            continue
                        if m.visibility == "private" and decl.name != receiver.name:
                            continue
                        return m
        if mode is ResolutionMode.LENIENT:
            kind = MemberKind.FIELD if arity is None else MemberKind.METHOD
            return MemberDecl(
                name=name,
                member_kind=kind,
                is_static=False,
                visibility="public",
                declared_type=unknown_type(f"<unresolved:{name}>"),
                param_types=tuple(unknown_type("<arg>") for _ in range(arity or 0)),
                declaring_type=receiver.name,
            )
        raise MemberResolutionError(receiver, name, arity)

    def simple_name_index(self) -> dict[str, list[str]]:
        index: dict[str, list[str]] = {}
        for name in sorted(self._decls):
            index.setdefault(name.rsplit(".", 1)[-1], []).append(name)
        return index


# -- stub loading -----------------------------------------------------------


def _load_member(owner: str, raw: dict) -> MemberDecl:
    try:
        name = raw["name"]
        kind = MemberKind(raw["kind"])
    except (KeyError, ValueError) as exc:
        raise LoadError("E-STUB", f"bad member in {owner}: {exc}") from exc
    declared = parse_type_name(raw.get("type", "void"))
    params = tuple(parse_type_name(p) for p in raw.get("params", ()))
    if kind is MemberKind.FIELD and raw.get("params"):
        raise LoadError("E-STUB", f"field {owner}.{name} must not list params")
    return MemberDecl(
        name=name,
        member_kind=kind,
        is_static=bool(raw.get("static", False)),
        visibility=raw.get("visibility", "public"),
        declared_type=declared,
        param_types=params,
        declaring_type=owner,
    )


def load_stubs(source: str | Path) -> TypeTable:
    """Load one stub document (path or raw JSON text) into a table."""
    if isinstance(source, Path) or (
        isinstance(source, str) and not source.lstrip().startswith("{")
    ):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise LoadError("E-STUB", f"cannot read {path}: {exc}") from exc
        origin_name = str(path)
    else:
        text = str(source)
        origin_name = "<inline>"
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError("E-STUB", f"{origin_name}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != STUB_SCHEMA:
        raise LoadError("E-STUB", f"{origin_name}: expected schema {STUB_SCHEMA}")
    table = TypeTable()
    for raw in doc.get("types", ()):
        name = raw.get("name")
        if not name:
            raise LoadError("E-STUB", f"{origin_name}: type without a name")
        try:
            kind = DeclKind(raw.get("kind", "class"))
        except ValueError as exc:
            raise LoadError("E-STUB", f"{origin_name}: {name}: {exc}") from exc
        supers = tuple(parse_type_name(s) for s in raw.get("supertypes", ()))
        members = tuple(_load_member(name, m) for m in raw.get("members", ()))
        table.add(
            TypeDecl(
                ref=TypeRef(name),
                decl_kind=kind,
                supertypes=supers,
                members=members,
                origin=Origin.STUB,
            )
        )
    return table
