"""Binder coverage: table construction, executables, sites, provenance."""

import pytest

from demeterlint.codemodel import (
    DeclKind,
    ResolutionMode,
    TypeKind,
    TypeRef,
    TypeTable,
)
from demeterlint.javafront import BindError, bind_and_extract, build_type_table, parse_unit

from conftest import build_case_front, build_front

LENIENT = ResolutionMode.LENIENT


def front(*sources: str, stubs=(), mode=ResolutionMode.STRICT):
    named = [(f"S{i}.java", s) for i, s in enumerate(sources)]
    return build_front(named, list(stubs), mode)


def by_id(executables) -> dict:
    return {ex.id: ex for ex in executables}


def site_kinds(ex) -> list[str]:
    return [s.access_kind for s in ex.body_accesses]


class TestTableConstruction:
    def test_qualified_names(self):
        table, _ = front("package p.q;\nclass A { class B { } }")
        assert table.get("p.q.A") is not None
        assert table.get("p.q.A$B") is not None

    def test_default_package(self):
        table, _ = front("class A { }")
        assert table.get("A") is not None

    def test_supertypes_resolved_through_imports(self):
        table, _ = front(
            "package p;\nimport q.*;\nclass A extends B { }",
            "package q;\npublic class B { }",
        )
        assert table.get("p.A").supertypes == (TypeRef("q.B"),)

    def test_interface_members_implicitly_public(self):
        table, _ = front("package p;\ninterface I { int C = 1; void m(); }")
        decl = table.get("p.I")
        assert decl.decl_kind is DeclKind.INTERFACE
        c, m = decl.members
        assert c.is_static and c.is_public
        assert m.is_public and not m.is_static

    def test_ctor_member(self):
        table, _ = front("package p;\nclass A { A(int x) { } }")
        ctor = table.get("p.A").members[0]
        assert ctor.name == "<init>" and ctor.declared_type == TypeRef("p.A")

    def test_anonymous_type_declared_with_supertype(self):
        table, _ = front(
            "package p;\nclass A { void m() { I r = new I() { public void f() { } }; } }\n"
            "interface I { void f(); }"
        )
        anon = table.get("p.A$anon1")
        assert anon is not None and anon.supertypes == (TypeRef("p.I"),)

    def test_anon_numbering_flat_per_named_type(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  void m() { f(new I() { public void f() { g(new I() { public void f() { } }); } }); }\n"
            "  void n() { f(new I() { public void f() { } }); }\n"
            "  void f(I i) { } void g(I i) { }\n"
            "}\n"
            "interface I { void f(); }"
        )
        table, _ = front(src)
        assert table.get("p.A$anon1") is not None
        assert table.get("p.A$anon2") is not None
        assert table.get("p.A$anon3") is not None
        assert table.get("p.A$anon1$anon2") is None

    def test_ambiguous_on_demand_import(self):
        with pytest.raises(BindError) as e:
            front(
                "package p;\nimport q.*;\nimport r.*;\nclass A { void m(V v) { } }",
                "package q;\npublic class V { }",
                "package r;\npublic class V { }",
            )
        assert "ambiguous" in str(e.value)

    def test_unknown_type_strict_vs_lenient(self):
        with pytest.raises(BindError):
            front("package p;\nclass A { void m(Missing x) { } }")
        table, exes = front(
            "package p;\nclass A { void m(Missing x) { } }", mode=LENIENT
        )
        (param_name, param_type), = by_id(exes)["p.A#m(Missing)"].params
        assert param_type.kind is TypeKind.UNKNOWN


class TestExecutables:
    def test_ids_and_kinds(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  int f = 1;\n"
            "  int g;\n"
            "  static { }\n"
            "  { }\n"
            "  static { }\n"
            "  A(int x, String[] s) { }\n"
            "  void m(int a[]) { }\n"
            "}"
        )
        _, exes = front(src, mode=LENIENT)
        ids = [ex.id for ex in exes]
        assert ids == [
            "p.A#<field:f>",
            "p.A#<clinit>[1]",
            "p.A#<init-block>[1]",
            "p.A#<clinit>[2]",
            "p.A#<init>(int,String[])",
            "p.A#m(int[])",
        ]
        kinds = {ex.id: ex.exec_kind for ex in exes}
        assert kinds["p.A#<field:f>"] == "field-initializer"
        assert kinds["p.A#<clinit>[1]"] == "static-initializer"
        assert kinds["p.A#<init-block>[1]"] == "instance-initializer"
        assert kinds["p.A#<init>(int,String[])"] == "constructor"

    def test_uninitialized_field_no_executable(self):
        _, exes = front("package p;\nclass A { int g; }")
        assert exes == []

    def test_abstract_method_no_executable(self):
        _, exes = front("package p;\nabstract class A { abstract void m(); }")
        assert exes == []

    def test_sorted_by_position(self):
        _, exes = front(
            "package p;\nclass B { void z() { } void a() { } }",
            "package p;\nclass A { void q() { } }",
        )
        assert [ex.id for ex in exes] == ["p.B#z()", "p.B#a()", "p.A#q()"]

    def test_catch_var_becomes_param(self):
        src = (
            "package p;\n"
            "class A { void m() { try { } catch (E e) { } } }\n"
            "class E { }"
        )
        _, exes = front(src)
        ex = exes[0]
        assert ex.params == [("e", TypeRef("p.E"))]

    def test_instantiated_types(self):
        src = "package p;\nclass A { void m() { B b = new B(); int[] a = new int[3]; } }\nclass B { }"
        _, exes = front(src)
        ex = by_id(exes)["p.A#m()"]
        assert ex.instantiated_types == {TypeRef("p.B")}

    def test_downcast_params_bare_names_only(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  void m(Object o, Object q) {\n"
            "    B b = (B) o;\n"
            "    B c = (B) (q);\n"
            "    B d = (B) mk();\n"
            "    int n = (int) 0;\n"
            "  }\n"
            "  Object mk() { return null; }\n"
            "}\n"
            "class B { }"
        )
        table, exes = front(src, stubs=[], mode=LENIENT)
        ex = by_id(exes)["p.A#m(Object,Object)"]
        assert ex.downcast_param_types == {TypeRef("p.B")}


class TestSites:
    def test_own_member_forms(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  int f;\n"
            "  void m() { f = f + 1; this.f = 2; g(); this.g(); }\n"
            "  void g() { }\n"
            "}"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.A#m()"]
        got = [(s.access_kind, s.receiver.form) for s in ex.body_accesses]
        assert got == [
            ("field-write", "this-implicit"),
            ("field-read", "this-implicit"),
            ("field-write", "this-explicit"),
            ("method-call", "this-implicit"),
            ("method-call", "this-explicit"),
        ]

    def test_site_ids_are_ordinal(self):
        _, exes = front("package p;\nclass A { int f; void m() { f = 1; f = 2; } }")
        ex = by_id(exes)["p.A#m()"]
        assert [s.site_id for s in ex.body_accesses] == [
            "p.A#m()@0001",
            "p.A#m()@0002",
        ]

    def test_compound_assignment_single_write(self):
        _, exes = front("package p;\nclass A { int f; void m() { f += 1; f++; --f; } }")
        ex = by_id(exes)["p.A#m()"]
        assert site_kinds(ex) == ["field-write", "field-write", "field-write"]

    def test_call_chain_provenance(self):
        src = (
            "package p;\n"
            "class A { void m(B b) { b.g().h(); } }\n"
            "class B { C g() { return null; } }\n"
            "class C { void h() { } }"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.A#m(B)"]
        g, h = ex.body_accesses
        assert g.receiver.static_type == TypeRef("p.B")
        assert [(s.kind, s.label) for s in g.receiver.chain] == [("parameter", "b")]
        assert h.receiver.static_type == TypeRef("p.C")
        assert [(s.kind, s.label) for s in h.receiver.chain] == [
            ("parameter", "b"),
            ("call", "g"),
        ]

    def test_super_receiver(self):
        src = (
            "package p;\n"
            "class A { int f; void m() { } }\n"
            "class B extends A { void n() { super.m(); int x = super.f; } }"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.B#n()"]
        assert [(s.access_kind, s.receiver.form, s.receiver.static_type.name) for s in ex.body_accesses] == [
            ("method-call", "super", "p.A"),
            ("field-read", "super", "p.A"),
        ]

    def test_outer_instance_access(self):
        src = (
            "package p;\n"
            "class Outer {\n"
            "  int of;\n"
            "  void om() { }\n"
            "  class Inner { void m() { of = 1; om(); } }\n"
            "}"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.Outer$Inner#m()"]
        got = [(s.access_kind, s.receiver.form, s.receiver.static_type.name) for s in ex.body_accesses]
        assert got == [
            ("field-write", "outer-instance", "p.Outer"),
            ("method-call", "outer-instance", "p.Outer"),
        ]

    def test_static_member_access_via_type_name(self):
        src = (
            "package p;\n"
            "class A { void m() { int x = B.C; B.f(); B.C = 2; } }\n"
            "class B { static int C; static void f() { } }"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.A#m()"]
        assert site_kinds(ex) == ["static-member-access"] * 3
        assert all(s.receiver.form == "type-name" for s in ex.body_accesses)
        assert all(s.receiver.static_type == TypeRef("p.B") for s in ex.body_accesses)

    def test_static_call_result_chain(self):
        src = (
            "package p;\n"
            "class A { void m() { B.mk().h(); } }\n"
            "class B { static C mk() { return null; } }\n"
            "class C { void h() { } }"
        )
        _, exes = front(src)
        mk, h = by_id(exes)["p.A#m()"].body_accesses
        assert mk.access_kind == "static-member-access"
        assert h.access_kind == "method-call"
        assert [(s.kind, s.label) for s in h.receiver.chain] == [("static-member", "mk")]

    def test_array_length_site(self):
        src = "package p;\nclass A { void m(String[] a) { int n = a.length; } }"
        _, exes = front(src, mode=LENIENT)
        (site,) = by_id(exes)["p.A#m(String[])"].body_accesses
        assert site.access_kind == "array-length"
        assert site.receiver.static_type.kind is TypeKind.ARRAY
        assert site.member.name == "length"
        assert site.member.declared_type.name == "int"

    def test_array_element_transparent(self):
        src = (
            "package p;\n"
            "class A { void m(B[] bs) { bs[0].h(); } }\n"
            "class B { void h() { } }"
        )
        _, exes = front(src)
        (site,) = by_id(exes)["p.A#m(B[])"].body_accesses
        assert site.access_kind == "method-call"
        assert site.receiver.static_type == TypeRef("p.B")
        assert [(s.kind, s.label) for s in site.receiver.chain] == [("parameter", "bs")]

    def test_new_emits_no_site(self):
        src = "package p;\nclass A { void m() { B b = new B(1); } }\nclass B { B(int x) { } }"
        _, exes = front(src)
        assert by_id(exes)["p.A#m()"].body_accesses == []

    def test_explicit_ctor_calls_no_site(self):
        src = (
            "package p;\n"
            "class A { A(int x) { } A() { this(1); } }\n"
            "class B extends A { B() { super(2); } }"
        )
        _, exes = front(src)
        for ex in exes:
            assert ex.body_accesses == []

    def test_arg_types_recorded(self):
        src = (
            "package p;\n"
            "class A { void m(B b, C c) { b.add(c); } }\n"
            "class B { void add(Object o) { } }\n"
            "class C { }"
        )
        _, exes = front(src, mode=LENIENT)
        (site,) = by_id(exes)["p.A#m(B,C)"].body_accesses
        assert site.arg_types == (TypeRef("p.C"),)

    def test_receiver_sites_before_member_before_args(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  B fb; int fi;\n"
            "  void m() { fb.add(fi); }\n"
            "}\n"
            "class B { void add(int x) { } }"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.A#m()"]
        labels = [(s.access_kind, s.member.name) for s in ex.body_accesses]
        assert labels == [
            ("field-read", "fb"),
            ("method-call", "add"),
            ("field-read", "fi"),
        ]

    def test_for_order_init_cond_update_body(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  int a, b, c, d;\n"
            "  void m() { for (a = 0; b < 1; c++) d = 2; }\n"
            "}"
        )
        _, exes = front(src)
        ex = by_id(exes)["p.A#m()"]
        assert [s.member.name for s in ex.body_accesses] == ["a", "b", "c", "d"]

    def test_name_prefix_resolution(self, stub_paths):
        src = (
            "package p;\n"
            'class A { void m() { java.lang.System.out.println("x"); } }'
        )
        jdk = [p for p in stub_paths if p.name == "jdk.json"]
        _, exes = build_front([("A.java", src)], jdk)
        out, println = by_id(exes)["p.A#m()"].body_accesses
        assert out.access_kind == "static-member-access"
        assert out.receiver.static_type == TypeRef("java.lang.System")
        assert println.access_kind == "method-call"
        assert println.receiver.static_type == TypeRef("java.io.PrintStream")

    def test_dead_prefix_strict_error(self):
        src = "package p;\nclass A { void m() { int x = com.nowhere.Foo.bar; } }"
        with pytest.raises(BindError) as e:
            front(src)
        assert "cannot resolve name 'com'" in str(e.value)

    def test_dead_prefix_lenient_unknown(self):
        src = "package p;\nclass A { void m() { int x = com.nowhere.Foo.bar; } }"
        _, exes = front(src, mode=LENIENT)
        sites = by_id(exes)["p.A#m()"].body_accesses
        # 'com' matches no known package, so it becomes an unknown value and
        # each following segment reads a field off an unknown receiver.
        assert len(sites) == 3
        assert all(s.receiver.static_type.kind is TypeKind.UNKNOWN for s in sites)

    def test_string_concat_types_string(self, stub_paths):
        src = 'package p;\nclass A { void m(int n) { int k = ("x" + n).length(); } }'
        jdk = [p for p in stub_paths if p.name == "jdk.json"]
        _, exes = build_front([("A.java", src)], jdk)
        (site,) = by_id(exes)["p.A#m(int)"].body_accesses
        assert site.receiver.static_type == TypeRef("java.lang.String")

    def test_conditional_types_as_then_branch(self):
        src = (
            "package p;\n"
            "class A { void m(boolean t, B b, C c) { (t ? b : c).h(); } }\n"
            "class B { void h() { } }\n"
            "class C { void h() { } }"
        )
        _, exes = front(src)
        site = by_id(exes)["p.A#m(boolean,B,C)"].body_accesses[-1]
        assert site.receiver.static_type == TypeRef("p.B")

    def test_primitive_receiver_strict_error(self):
        with pytest.raises(BindError) as e:
            front("package p;\nclass A { void m(int x) { x.f(); } }")
        assert "primitive" in str(e.value)

    def test_unresolved_member_lenient_unknown(self):
        src = "package p;\nclass A { void m(B b) { b.nope(); } }\nclass B { }"
        _, exes = front(src, mode=LENIENT)
        (site,) = by_id(exes)["p.A#m(B)"].body_accesses
        assert site.member.declared_type.kind is TypeKind.UNKNOWN

    def test_anon_enclosing_executable(self):
        src = (
            "package p;\n"
            "class A {\n"
            "  void m() { reg(new I() { public void f() { helper(); } }); }\n"
            "  void reg(I i) { }\n"
            "  void helper() { }\n"
            "}\n"
            "interface I { void f(); }"
        )
        _, exes = front(src)
        anon = by_id(exes)["p.A$anon1#f()"]
        assert anon.enclosing_executable == "p.A#m()"
        assert anon.owner_type == TypeRef("p.A$anon1")
        (site,) = anon.body_accesses
        assert site.receiver.form == "outer-instance"
        assert site.receiver.static_type == TypeRef("p.A")

    def test_nested_named_type_has_no_enclosing_executable(self):
        src = "package p;\nclass A { class B { void m() { } } }"
        _, exes = front(src)
        assert by_id(exes)["p.A$B#m()"].enclosing_executable is None


class TestDeterminism:
    def test_two_runs_identical(self, corpus):
        case = corpus["listing3"]
        _, first = build_case_front(case)
        _, second = build_case_front(case)

        def shape(exes):
            return [
                (
                    ex.id,
                    ex.exec_kind,
                    tuple(ex.params),
                    tuple(sorted(t.name for t in ex.instantiated_types)),
                    tuple(
                        (s.site_id, s.access_kind, s.receiver.form,
                         s.receiver.static_type.name, s.member.name, s.arg_types)
                        for s in ex.body_accesses
                    ),
                )
                for ex in exes
            ]

        assert shape(first) == shape(second)


class TestCorpus:
    def test_counts_match_oracle(self, corpus_case):
        _, exes = build_case_front(corpus_case)
        oracle = corpus_case.expected["oracle"]
        assert len(exes) == oracle["executables"]
        assert sum(len(ex.body_accesses) for ex in exes) == oracle["access_sites"]

    def test_listing1_shape(self, corpus):
        _, exes = build_case_front(corpus["listing1"])
        ids = {ex.id for ex in exes}
        assert ids == {
            "CH.ifa.draw.figures.TriangleFigure#<field:fRotation>",
            "CH.ifa.draw.figures.TriangleFigure#polygon()",
        }
        poly = by_id(exes)["CH.ifa.draw.figures.TriangleFigure#polygon()"]
        assert poly.instantiated_types == {TypeRef("java.awt.Polygon")}
        assert len(poly.body_accesses) == 15
        rect_reads = [
            s for s in poly.body_accesses
            if s.access_kind == "field-read" and s.receiver.static_type.name == "java.awt.Rectangle"
        ]
        assert len(rect_reads) == 10

    def test_listing3_shape(self, corpus):
        _, exes = build_case_front(corpus["listing3"])
        constrain = by_id(exes)["CH.ifa.draw.figures.ElbowHandle#constrainX(int)"]
        assert len(constrain.body_accesses) == 24
        owner_call = constrain.body_accesses[2]
        assert owner_call.member.name == "owner"
        assert owner_call.receiver.static_type.name == "CH.ifa.draw.framework.Connector"
        assert [(s.kind, s.label) for s in owner_call.receiver.chain] == [
            ("local", "line"),
            ("call", "start"),
        ]
        ctor = by_id(exes)["CH.ifa.draw.figures.ElbowHandle#<init>(LineConnection,int)"]
        assert site_kinds(ctor) == ["field-write"]

    def test_listing5_shape(self, corpus):
        _, exes = build_case_front(corpus["listing5"])
        load = by_id(exes)["CH.ifa.draw.util.Iconkit#loadImageResource(String)"]
        assert len(load.body_accesses) == 8
        assert ("ex", TypeRef("java.lang.Exception")) in load.params
        kinds = site_kinds(load)
        assert kinds.count("static-member-access") == 2  # getDefaultToolkit, System.out

    def test_listing6_anon(self, corpus):
        _, exes = build_case_front(corpus["listing6"])
        anon = by_id(exes)[
            "CH.ifa.draw.samples.javadraw.JavaDrawApp$anon1#actionPerformed(ActionEvent)"
        ]
        assert anon.enclosing_executable == (
            "CH.ifa.draw.samples.javadraw.JavaDrawApp#createWindowMenu()"
        )
        (site,) = anon.body_accesses
        assert site.receiver.form == "outer-instance"
        assert site.member.name == "openView"

    def test_listing8_provenance(self, corpus):
        _, exes = build_case_front(corpus["listing8"])
        step = by_id(exes)[
            "CH.ifa.draw.figures.TriangleRotationHandle#invokeStep(int,int,Drawing)"
        ]
        assert len(step.body_accesses) == 11
        rotate = step.body_accesses[-1]
        assert rotate.member.name == "rotate"
        assert rotate.receiver.static_type.name == "CH.ifa.draw.figures.TriangleFigure"
        assert [(s.kind, s.label) for s in rotate.receiver.chain] == [
            ("call", "owner"),
            ("cast", "CH.ifa.draw.figures.TriangleFigure"),
        ]
        atan = step.body_accesses[0]
        assert atan.access_kind == "static-member-access"
        assert atan.receiver.static_type.name == "java.lang.Math"

    def test_listing9_array_length(self, corpus):
        _, exes = build_case_front(corpus["listing9"])
        font = by_id(exes)["CH.ifa.draw.application.DrawApplication#createFontMenu()"]
        lengths = [s for s in font.body_accesses if s.access_kind == "array-length"]
        assert len(lengths) == 1
        assert lengths[0].receiver.static_type.name == "java.lang.String[]"
        menu_add = [s for s in font.body_accesses if s.member.name == "add"]
        assert menu_add[0].arg_types == (
            TypeRef("CH.ifa.draw.standard.ChangeAttributeCommand"),
        )

    def test_listing15_downcasts(self, corpus):
        _, exes = build_case_front(corpus["listing15"])
        connect = by_id(exes)[
            "CH.ifa.draw.samples.pert.PertDependency#handleConnect(Figure,Figure)"
        ]
        assert connect.downcast_param_types == {
            TypeRef("CH.ifa.draw.samples.pert.PertFigure")
        }
        can = by_id(exes)[
            "CH.ifa.draw.samples.pert.PertDependency#canConnect(Figure,Figure)"
        ]
        assert can.body_accesses == [] and can.downcast_param_types == set()
