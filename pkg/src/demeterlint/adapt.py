"""Layered adaptation rules: loading, effective friend sets, attribution.

A configuration is an ordered stack of layers, each holding rules in document
order.  Rules only ever add friends or member exemptions, so silencing is
monotone in the layer prefix: once a violation is silenced at layer k it
stays silenced at every deeper prefix.  Classification exploits that to find,
per violation, the smallest k whose cumulative rule set removes it, and then
attributes the removal to a single rule at that layer by ablation.

The nine rule kinds cover the catalog of ways a strict reading of the Law
over-reports: types everybody may use, members everybody may use, grants
earned by calling designated accessors, constructor parameters acting as
fields, anonymous classes borrowing their enclosing scope, parameter
downcasts, aggregate element types, friend implications, and per-executable
grants with a review status.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .codemodel import LoadError, MemberKind, TypeRef, TypeTable, parse_type_name
from .demeter import (
    FriendSet,
    MemberExemption,
    PotentialViolation,
    base_friend_set,
    check_site,
    make_friend_set,
)
from .javafront import Executable

__all__ = [
    "Adapter",
    "ConfigError",
    "LayeredConfig",
    "Rule",
    "RULE_KINDS",
    "Verdict",
    "Waterfall",
    "WaterfallEntry",
    "attribute_waterfall",
    "config_warnings",
    "load_config",
]

CONFIG_SCHEMA = "demeterlint-config/1"

RULE_KINDS = frozenset(
    {
        "universal-friend-types",
        "universal-friend-members",
        "call-grant",
        "ctor-params-as-fields",
        "anon-inner-share",
        "downcast-param",
        "aggregation-elements",
        "friend-implication",
        "executable-grant",
    }
)

MEMBER_PREDICATES = frozenset({"public-static", "array-length"})

STATUSES = frozenset({"accepted", "adjourned", "review-pending"})


class ConfigError(LoadError):
    def __init__(self, message: str):
        super().__init__("E-CONFIG", message)


@dataclass(frozen=True)
class Rule:
    """One adaptation rule; the payload fields used depend on ``kind``."""

    rule_id: str
    kind: str
    layer: int
    tag: str = ""
    order: int = 0  # global document order, the attribution tie-breaker
    types: tuple[str, ...] = ()
    package_glob: str = ""
    implementors_of: tuple[str, ...] = ()
    member_predicate: str = ""
    member_pattern: Optional[tuple[str, str]] = None  # (declaring type, name glob)
    matcher: tuple[tuple[str, str], ...] = ()  # (declaring type, name glob)
    grants: tuple[str, ...] = ()
    pairs: tuple[tuple[str, str], ...] = ()
    executables: tuple[str, ...] = ()
    status: str = "accepted"
    hint: str = ""
    enabled: bool = True
    field_map: tuple[tuple[str, str, str], ...] = ()  # (class, field, element)
    infer_via: tuple[str, ...] = ()

    @property
    def granted_role(self) -> str:
        return f"granted:{self.rule_id}"


@dataclass(frozen=True)
class LayeredConfig:
    """Rules grouped by layer index, ascending; empty config = base Law."""

    rules: tuple[Rule, ...]  # sorted by (layer, order)
    layer_names: tuple[tuple[int, str], ...]

    @property
    def layer_indices(self) -> tuple[int, ...]:
        return tuple(sorted({r.layer for r in self.rules}))

    def rules_through(self, k: int) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.layer <= k)

    def rules_at(self, k: int) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.layer == k)

    def name_of(self, layer: int) -> str:
        for idx, name in self.layer_names:
            if idx == layer:
                return name
        return f"layer-{layer}"


EMPTY_CONFIG = LayeredConfig(rules=(), layer_names=())


# -- loading -------------------------------------------------------------------


def _str_tuple(raw, context: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ConfigError(f"{context}: expected a list of strings")
    return tuple(raw)


def _parse_rule(raw: dict, default_layer: int, order: int, context: str) -> Rule:
    if not isinstance(raw, dict):
        raise ConfigError(f"{context}: rule must be an object")
    rule_id = raw.get("id")
    kind = raw.get("kind")
    if not rule_id or not isinstance(rule_id, str):
        raise ConfigError(f"{context}: rule without an id")
    if kind not in RULE_KINDS:
        raise ConfigError(f"{context}: rule {rule_id}: unknown kind '{kind}'")
    layer = raw.get("layer", default_layer)
    if not isinstance(layer, int) or layer < 0:
        raise ConfigError(f"{context}: rule {rule_id}: layer must be a non-negative integer")

    kw: dict = {}
    if kind == "universal-friend-types":
        kw["types"] = _str_tuple(raw.get("types", []), f"{rule_id}.types")
        kw["package_glob"] = raw.get("package_glob", "")
        kw["implementors_of"] = _str_tuple(
            raw.get("implementors_of", []), f"{rule_id}.implementors_of"
        )
        if not (kw["types"] or kw["package_glob"] or kw["implementors_of"]):
            raise ConfigError(f"{context}: rule {rule_id}: no types, glob, or implementors")
    elif kind == "universal-friend-members":
        predicate = raw.get("member_predicate", "")
        pattern = raw.get("member_pattern")
        if predicate:
            if predicate not in MEMBER_PREDICATES:
                raise ConfigError(
                    f"{context}: rule {rule_id}: unknown member predicate '{predicate}'"
                )
            kw["member_predicate"] = predicate
        elif pattern is not None:
            if not isinstance(pattern, dict) or "type" not in pattern or "name" not in pattern:
                raise ConfigError(
                    f"{context}: rule {rule_id}: member_pattern needs 'type' and 'name'"
                )
            kw["member_pattern"] = (pattern["type"], pattern["name"])
        else:
            raise ConfigError(
                f"{context}: rule {rule_id}: needs member_predicate or member_pattern"
            )
    elif kind == "call-grant":
        matchers = raw.get("matcher")
        if not isinstance(matchers, list) or not matchers:
            raise ConfigError(f"{context}: rule {rule_id}: call-grant needs a matcher list")
        parsed = []
        for m in matchers:
            if not isinstance(m, dict) or "type" not in m or "name" not in m:
                raise ConfigError(
                    f"{context}: rule {rule_id}: matcher entries need 'type' and 'name'"
                )
            parsed.append((m["type"], m["name"]))
        kw["matcher"] = tuple(parsed)
        kw["grants"] = _str_tuple(raw.get("grants", []), f"{rule_id}.grants")
    elif kind in ("ctor-params-as-fields", "anon-inner-share", "downcast-param"):
        kw["enabled"] = bool(raw.get("enabled", True))
    elif kind == "aggregation-elements":
        entries = []
        for e in raw.get("field_map", []):
            if not isinstance(e, dict) or not {"type", "field", "element"} <= set(e):
                raise ConfigError(
                    f"{context}: rule {rule_id}: field_map entries need type/field/element"
                )
            entries.append((e["type"], e["field"], e["element"]))
        kw["field_map"] = tuple(entries)
        kw["infer_via"] = _str_tuple(raw.get("infer_via", []), f"{rule_id}.infer_via")
        if not (kw["field_map"] or kw["infer_via"]):
            raise ConfigError(f"{context}: rule {rule_id}: empty aggregation rule")
    elif kind == "friend-implication":
        pairs = raw.get("pairs")
        if not isinstance(pairs, list) or not pairs:
            raise ConfigError(f"{context}: rule {rule_id}: needs implication pairs")
        parsed_pairs = []
        for p in pairs:
            if not isinstance(p, list) or len(p) != 2:
                raise ConfigError(f"{context}: rule {rule_id}: pairs are [from, to]")
            parsed_pairs.append((p[0], p[1]))
        kw["pairs"] = tuple(parsed_pairs)
    elif kind == "executable-grant":
        kw["executables"] = _str_tuple(raw.get("executables", []), f"{rule_id}.executables")
        if not kw["executables"]:
            raise ConfigError(f"{context}: rule {rule_id}: needs executable ids or globs")
        kw["grants"] = _str_tuple(raw.get("grants", []), f"{rule_id}.grants")
        status = raw.get("status", "accepted")
        if status not in STATUSES:
            raise ConfigError(f"{context}: rule {rule_id}: unknown status '{status}'")
        kw["status"] = status
        kw["hint"] = raw.get("hint", "")

    return Rule(
        rule_id=rule_id,
        kind=kind,
        layer=layer,
        tag=raw.get("tag", ""),
        order=order,
        **kw,
    )


def load_config(documents: Sequence[str | Path]) -> LayeredConfig:
    """Parse configuration documents in the given (ascending-layer) order.

    A document missing an explicit ``layer`` takes the previous document's
    layer plus one (the first defaults to 0).  Rules may override the
    document layer individually.  Two documents must not claim the same
    layer; rule ids must be globally unique.
    """
    rules: list[Rule] = []
    layer_names: list[tuple[int, str]] = []
    seen_ids: set[str] = set()
    seen_layers: set[int] = set()
    next_layer = 0
    order = 0
    for doc_source in documents:
        if isinstance(doc_source, Path) or not str(doc_source).lstrip().startswith("{"):
            path = Path(doc_source)
            context = str(path)
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigError(f"cannot read {path}: {exc}") from exc
        else:
            text = str(doc_source)
            context = "<inline>"
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{context}: not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or doc.get("schema") != CONFIG_SCHEMA:
            raise ConfigError(f"{context}: expected schema {CONFIG_SCHEMA}")
        doc_layer = doc.get("layer", next_layer)
        if not isinstance(doc_layer, int) or doc_layer < 0:
            raise ConfigError(f"{context}: layer must be a non-negative integer")
        if doc_layer in seen_layers:
            raise ConfigError(f"{context}: duplicate layer {doc_layer}")
        seen_layers.add(doc_layer)
        next_layer = doc_layer + 1
        layer_names.append((doc_layer, doc.get("name", f"layer-{doc_layer}")))
        raw_rules = doc.get("rules", [])
        if not isinstance(raw_rules, list):
            raise ConfigError(f"{context}: rules must be a list")
        for raw in raw_rules:
            rule = _parse_rule(raw, doc_layer, order, context)
            order += 1
            if rule.rule_id in seen_ids:
                raise ConfigError(f"{context}: duplicate rule id '{rule.rule_id}'")
            seen_ids.add(rule.rule_id)
            rules.append(rule)
    rules.sort(key=lambda r: (r.layer, r.order))
    layer_names.sort()
    return LayeredConfig(rules=tuple(rules), layer_names=tuple(layer_names))


def config_warnings(config: LayeredConfig, table: TypeTable) -> list[str]:
    """Type names a rule mentions that the table does not know.

    These are warnings, not errors: a rule may name types that only appear
    in some other project's stubs, and an inert rule is harmless.
    """
    out = []
    for rule in config.rules:
        mentioned = list(rule.types) + list(rule.implementors_of) + list(rule.grants)
        mentioned += [u for pair in rule.pairs for u in pair]
        mentioned += [e[2] for e in rule.field_map]
        for name in mentioned:
            if name not in table:
                out.append(f"rule {rule.rule_id}: unknown type '{name}'")
    return out


# -- effective friend sets -------------------------------------------------------


def _glob_matches_id(glob: str, exec_id: str) -> bool:
    # Executable ids may contain [] (initializer indices), which fnmatch
    # would treat as a character class; literal patterns compare directly.
    if not any(c in glob for c in "*?["):
        return glob == exec_id
    return fnmatchcase(exec_id, glob)


def _package_of(name: str) -> str:
    return name.rsplit(".", 1)[0] if "." in name else ""


class Adapter:
    """Computes effective friend sets and verdicts for one analysis run.

    Holds the caches that make classification cheap: base sets, per-class
    constructor parameters, aggregation inference, and (executable, layer)
    effective sets, including ablated variants used for attribution.
    """

    def __init__(
        self,
        executables: Sequence[Executable],
        table: TypeTable,
        config: LayeredConfig,
    ):
        self.table = table
        self.config = config
        self.by_id: dict[str, Executable] = {ex.id: ex for ex in executables}
        self.by_owner: dict[str, list[Executable]] = {}
        for ex in executables:
            self.by_owner.setdefault(ex.owner_type.name, []).append(ex)
        self.base: dict[str, FriendSet] = {
            ex.id: base_friend_set(ex, table) for ex in executables
        }
        self._effective_cache: dict[tuple[str, int, frozenset[str]], FriendSet] = {}
        self._implementors_cache: dict[str, tuple[str, ...]] = {}
        self._package_cache: dict[str, tuple[str, ...]] = {}
        self._ctor_param_cache: dict[str, tuple[TypeRef, ...]] = {}
        self._agg_cache: dict[tuple[str, str], tuple[TypeRef, ...]] = {}

    # -- rule ingredient caches -------------------------------------------

    def _implementors(self, interface: str) -> tuple[str, ...]:
        got = self._implementors_cache.get(interface)
        if got is None:
            target = parse_type_name(interface)
            got = tuple(
                decl.name
                for decl in sorted(self.table, key=lambda d: d.name)
                if target in self.table.supertype_closure([decl.ref])
            )
            self._implementors_cache[interface] = got
        return got

    def _package_types(self, glob: str) -> tuple[str, ...]:
        got = self._package_cache.get(glob)
        if got is None:
            # "java.lang.*" means direct members of java.lang, not subpackages.
            pkg = glob[:-2] if glob.endswith(".*") else glob
            got = tuple(
                decl.name
                for decl in sorted(self.table, key=lambda d: d.name)
                if _package_of(decl.name) == pkg
            )
            self._package_cache[glob] = got
        return got

    def _ctor_params(self, owner: str) -> tuple[TypeRef, ...]:
        got = self._ctor_param_cache.get(owner)
        if got is None:
            types: list[TypeRef] = []
            for ex in self.by_owner.get(owner, ()):
                if ex.exec_kind != "constructor":
                    continue
                for _, t in ex.params:
                    if not t.is_primitive and t not in types:
                        types.append(t)
            got = tuple(types)
            self._ctor_param_cache[owner] = got
        return got

    def _aggregation_elements(self, owner: str, rule: Rule) -> tuple[TypeRef, ...]:
        got = self._agg_cache.get((owner, rule.rule_id))
        if got is not None:
            return got
        elements: list[TypeRef] = []
        for cls, _field_name, element in rule.field_map:
            if cls == owner:
                ref = parse_type_name(element)
                if ref not in elements:
                    elements.append(ref)
        if rule.infer_via:
            own_fields = set()
            decl = self.table.get(owner)
            if decl is not None:
                own_fields = {
                    m.name for m in decl.members if m.member_kind is MemberKind.FIELD
                }
            for ex in self.by_owner.get(owner, ()):
                for site in ex.body_accesses:
                    if site.access_kind != "method-call":
                        continue
                    if site.member.name not in rule.infer_via:
                        continue
                    chain = site.receiver.chain
                    # The receiver must be one of the aggregate's own fields.
                    if len(chain) != 1 or chain[0].kind != "field":
                        continue
                    if chain[0].label not in own_fields:
                        continue
                    for t in site.arg_types:
                        if not t.is_primitive and t not in elements:
                            elements.append(t)
        got = tuple(elements)
        self._agg_cache[(owner, rule.rule_id)] = got
        return got

    # -- the effective set ---------------------------------------------------

    def effective(
        self,
        exec_id: str,
        k: int,
        disabled: frozenset[str] = frozenset(),
    ) -> FriendSet:
        """Cumulative friend set of one executable through layer k.

        k = -1 is the base set.  ``disabled`` removes whole rules, which is
        how attribution tests single-rule necessity.
        """
        if k < 0:
            return self.base[exec_id]
        key = (exec_id, k, disabled)
        got = self._effective_cache.get(key)
        if got is not None:
            return got

        ex = self.by_id[exec_id]
        owner = ex.owner_type.name
        rules = [
            r for r in self.config.rules_through(k) if r.rule_id not in disabled
        ]
        if not rules:
            return self.base[exec_id]
        roles = self.base[exec_id].seed_roles()

        def grant(type_ref: TypeRef, rule: Rule) -> None:
            if type_ref.is_primitive:
                return
            roles.setdefault(type_ref, set()).add(rule.granted_role)

        for r in rules:
            if r.kind == "universal-friend-types":
                for name in r.types:
                    grant(parse_type_name(name), r)
                if r.package_glob:
                    for name in self._package_types(r.package_glob):
                        grant(TypeRef(name), r)
                for interface in r.implementors_of:
                    for name in self._implementors(interface):
                        grant(TypeRef(name), r)
        for r in rules:
            if r.kind == "ctor-params-as-fields" and r.enabled:
                for t in self._ctor_params(owner):
                    grant(t, r)
        for r in rules:
            if r.kind == "aggregation-elements":
                for t in self._aggregation_elements(owner, r):
                    grant(t, r)
        for r in rules:
            if r.kind == "call-grant":
                for site in ex.body_accesses:
                    if site.access_kind not in ("method-call", "static-member-access"):
                        continue
                    if site.member.member_kind is not MemberKind.METHOD:
                        continue
                    for m_type, m_glob in r.matcher:
                        if site.member.declaring_type == m_type and fnmatchcase(
                            site.member.name, m_glob
                        ):
                            if r.grants:
                                for name in r.grants:
                                    grant(parse_type_name(name), r)
                            else:
                                grant(site.member.declared_type, r)
                            break
        for r in rules:
            if r.kind == "downcast-param" and r.enabled:
                for t in sorted(ex.downcast_param_types, key=lambda t: t.name):
                    grant(t, r)
        for r in rules:
            if r.kind == "executable-grant" and r.status == "accepted":
                if any(_glob_matches_id(g, exec_id) for g in r.executables):
                    for name in r.grants:
                        grant(parse_type_name(name), r)
        share = next(
            (r for r in rules if r.kind == "anon-inner-share" and r.enabled), None
        )
        if share is not None and ex.enclosing_executable is not None:
            enclosing = self.effective(ex.enclosing_executable, k, disabled)
            for t, _ in enclosing.seeds:
                grant(t, share)

        implications = [
            (parse_type_name(a), parse_type_name(b), r)
            for r in rules
            if r.kind == "friend-implication"
            for a, b in r.pairs
        ]
        closure = self.table.supertype_closure(roles)
        changed = bool(implications)
        while changed:
            changed = False
            for premise, conclusion, r in implications:
                if premise in closure and conclusion not in closure:
                    grant(conclusion, r)
                    closure = self.table.supertype_closure(roles)
                    changed = True

        exemptions = [
            MemberExemption(r.rule_id, r.member_predicate)
            if r.member_predicate
            else MemberExemption(r.rule_id, "pattern", r.member_pattern[0], r.member_pattern[1])
            for r in rules
            if r.kind == "universal-friend-members"
        ]
        got = make_friend_set(self.table, roles, exemptions)
        self._effective_cache[key] = got
        return got

    # -- classification -------------------------------------------------------

    def classify(
        self, violations: Sequence[PotentialViolation], jobs: int = 1
    ) -> list["Verdict"]:
        """One verdict per violation, sorted by site id.

        Classification is pure per violation, so extra threads change
        nothing observable; the caches tolerate duplicate computation.
        """
        if jobs > 1 and len(violations) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                out = list(pool.map(self._classify_one, violations))
        else:
            out = [self._classify_one(v) for v in violations]
        out.sort(key=lambda verdict: verdict.violation.site.site_id)
        return out

    def _silenced_at(self, v: PotentialViolation, k: int, disabled=frozenset()) -> bool:
        friends = self.effective(v.executable_id, k, disabled)
        return check_site(v.site, v.executable_id, friends) is None

    def _classify_one(self, v: PotentialViolation) -> "Verdict":
        for k in self.config.layer_indices:
            if not self._silenced_at(v, k):
                continue
            necessary = [
                r
                for r in self.config.rules_at(k)
                if not self._silenced_at(v, k, frozenset({r.rule_id}))
            ]
            if necessary:
                primary, also = necessary[0], necessary[1:]
            else:
                # Same-layer redundancy: no single rule is necessary, so
                # attribute to the first rule at k that is sufficient on top
                # of the previous layers.
                prev = [r.rule_id for r in self.config.rules_at(k)]
                sufficient = [
                    r
                    for r in self.config.rules_at(k)
                    if self._silenced_at(
                        v, k, frozenset(x for x in prev if x != r.rule_id)
                    )
                ]
                primary, also = sufficient[0], sufficient[1:]
            return Verdict(
                violation=v,
                outcome="silenced",
                layer=k,
                rule_id=primary.rule_id,
                also_matched=tuple(r.rule_id for r in also),
            )
        return Verdict(
            violation=v,
            outcome="remaining",
            status=self._remaining_status(v),
            hint=self._remaining_hint(v),
        )

    def _matching_grant_rules(self, v: PotentialViolation) -> Iterable[Rule]:
        for r in self.config.rules:
            if r.kind != "executable-grant":
                continue
            if not any(_glob_matches_id(g, v.executable_id) for g in r.executables):
                continue
            yield r

    def _remaining_status(self, v: PotentialViolation) -> str:
        for r in self._matching_grant_rules(v):
            if r.status == "accepted" or not r.grants:
                continue
            would_befriend = self.table.supertype_closure(
                [parse_type_name(name) for name in r.grants]
            )
            if v.receiver_type in would_befriend:
                return r.status
        return "candidate-true-positive"

    def _remaining_hint(self, v: PotentialViolation) -> str:
        for r in self._matching_grant_rules(v):
            if not r.hint:
                continue
            if r.grants:
                would_befriend = self.table.supertype_closure(
                    [parse_type_name(name) for name in r.grants]
                )
                if v.receiver_type not in would_befriend:
                    continue
            return r.hint
        return ""


@dataclass(frozen=True)
class Verdict:
    violation: PotentialViolation
    outcome: str  # "silenced" | "remaining"
    layer: Optional[int] = None
    rule_id: Optional[str] = None
    also_matched: tuple[str, ...] = ()
    status: str = ""  # remaining only: adjourned | review-pending | candidate-true-positive
    hint: str = ""


@dataclass(frozen=True)
class WaterfallEntry:
    rule_id: str
    layer: int
    count: int


@dataclass(frozen=True)
class Waterfall:
    total: int
    per_layer: tuple[tuple[int, int], ...]  # (layer index, silenced count)
    per_rule: tuple[WaterfallEntry, ...]  # every configured rule, zeros included
    remaining: int


def attribute_waterfall(verdicts: Sequence[Verdict], config: LayeredConfig) -> Waterfall:
    """Aggregate verdicts per layer and per primary rule; checks conservation."""
    layer_counts = {k: 0 for k in config.layer_indices}
    rule_counts = {r.rule_id: 0 for r in config.rules}
    remaining = 0
    for verdict in verdicts:
        if verdict.outcome == "silenced":
            layer_counts[verdict.layer] += 1
            rule_counts[verdict.rule_id] += 1
        else:
            remaining += 1
    total = len(verdicts)
    silenced = sum(layer_counts.values())
    if silenced + remaining != total or sum(rule_counts.values()) != silenced:
        raise RuntimeError(
            f"conservation failure: {silenced} silenced + {remaining} remaining != {total}"
        )
    per_rule = tuple(
        WaterfallEntry(r.rule_id, r.layer, rule_counts[r.rule_id]) for r in config.rules
    )
    return Waterfall(
        total=total,
        per_layer=tuple(sorted(layer_counts.items())),
        per_rule=per_rule,
        remaining=remaining,
    )
