"""Recursive-descent parser for the analyzed dialect.

The dialect is the pre-generics language of the corpus: package and import
declarations, class/interface declarations (nested and anonymous included),
fields with initializers, methods, constructors, initializer blocks, and the
statement/expression forms listed in ``parse_unit``.  Constructs outside the
subset fail with an error naming the construct.
"""

from __future__ import annotations

from . import ast
from .errors import ParseError
from .lexer import Kind, Token, tokenize

__all__ = ["parse_unit"]

PRIMITIVE_TYPES = frozenset(
    {"int", "boolean", "char", "byte", "short", "long", "float", "double", "void"}
)

MODIFIER_WORDS = frozenset(
    {
        "public",
        "private",
        "protected",
        "static",
        "final",
        "abstract",
        "transient",
        "synchronized",
        "native",
        "volatile",
    }
)

ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

_LITERAL_KINDS = {
    Kind.INT: "int",
    Kind.LONG: "long",
    Kind.FLOAT: "float",
    Kind.DOUBLE: "double",
    Kind.CHAR: "char",
    Kind.STRING: "string",
}


def parse_unit(source_text: str, file_name: str) -> ast.CompilationUnit:
    """Parse one compilation unit; raises ParseError outside the dialect."""
    return _Parser(tokenize(source_text, file_name), file_name).unit()


class _Parser:
    def __init__(self, tokens: list[Token], file_name: str):
        self.toks = tokens
        self.pos = 0
        self.file = file_name

    # -- token plumbing ----------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind in (Kind.PUNCT, Kind.KEYWORD) and t.text == text

    def at_ident(self, k: int = 0) -> bool:
        return self.peek(k).kind is Kind.IDENT

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind is not Kind.EOF:
            self.pos += 1
        return t

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str, context: str) -> Token:
        if self.at(text):
            return self.next()
        t = self.peek()
        got = t.text or "end of file"
        raise ParseError(self.file, t.line, t.col, f"expected '{text}' {context}, got '{got}'")

    def span(self, tok: Token | None = None) -> ast.Span:
        t = tok or self.peek()
        return ast.Span(self.file, t.line, t.col)

    def fail(self, construct: str, tok: Token | None = None) -> ParseError:
        t = tok or self.peek()
        return ParseError(self.file, t.line, t.col, f"{construct} is outside the analyzed dialect")

    # -- unit and declarations ---------------------------------------------

    def unit(self) -> ast.CompilationUnit:
        package = None
        if self.at("package"):
            self.next()
            package = self.qualified_name("in package declaration")
            self.expect(";", "after package declaration")
        imports: list[ast.ImportDecl] = []
        while self.at("import"):
            start = self.next()
            name = self.ident("after import").text
            on_demand = False
            while self.accept("."):
                if self.accept("*"):
                    on_demand = True
                    break
                name += "." + self.ident("in import name").text
            self.expect(";", "after import declaration")
            imports.append(ast.ImportDecl(name, on_demand, self.span(start)))
        types: list[ast.TypeDeclNode] = []
        while self.peek().kind is not Kind.EOF:
            if self.accept(";"):
                continue
            types.append(self.type_decl())
        return ast.CompilationUnit(package, imports, types, self.file)

    def qualified_name(self, context: str) -> str:
        name = self.ident(context).text
        while self.at(".") and self.at_ident(1):
            self.next()
            name += "." + self.next().text
        return name

    def ident(self, context: str) -> Token:
        t = self.peek()
        if t.kind is not Kind.IDENT:
            if t.text == "@":
                raise self.fail("annotation")
            raise ParseError(
                self.file, t.line, t.col, f"expected identifier {context}, got '{t.text or 'eof'}'"
            )
        return self.next()

    def modifiers(self) -> list[str]:
        mods: list[str] = []
        while True:
            t = self.peek()
            if t.kind is Kind.KEYWORD and t.text in MODIFIER_WORDS:
                # 'static {' and 'synchronized (' open blocks, not modifiers
                if t.text == "static" and self.at("{", 1):
                    return mods
                mods.append(self.next().text)
            elif t.text == "@":
                raise self.fail("annotation")
            else:
                return mods

    def type_decl(self) -> ast.TypeDeclNode:
        mods = self.modifiers()
        start = self.peek()
        if self.at("class"):
            kind = "class"
        elif self.at("interface"):
            kind = "interface"
        else:
            raise ParseError(
                self.file,
                start.line,
                start.col,
                f"expected a type declaration, got '{start.text or 'eof'}'",
            )
        self.next()
        name = self.ident("after 'class'" if kind == "class" else "after 'interface'").text
        if self.at("<"):
            raise self.fail("generic type declaration")
        extends: list[ast.TypeName] = []
        implements: list[ast.TypeName] = []
        if self.accept("extends"):
            extends.append(self.type_name("in extends clause"))
            while self.accept(","):
                if kind == "class":
                    raise self.fail("multiple class inheritance")
                extends.append(self.type_name("in extends clause"))
        if self.accept("implements"):
            if kind == "interface":
                raise self.fail("implements clause on an interface")
            implements.append(self.type_name("in implements clause"))
            while self.accept(","):
                implements.append(self.type_name("in implements clause"))
        members = self.class_body(name)
        return ast.TypeDeclNode(
            name=name,
            kind=kind,
            modifiers=mods,
            extends=extends,
            implements=implements,
            members=members,
            span=self.span(start),
        )

    def class_body(self, type_name: str | None) -> list:
        self.expect("{", "to open the type body")
        members: list = []
        while not self.at("}"):
            if self.peek().kind is Kind.EOF:
                raise ParseError(self.file, self.peek().line, self.peek().col, "unclosed type body")
            if self.accept(";"):
                continue
            members.append(self.member(type_name))
        self.next()  # }
        return members

    def member(self, type_name: str | None):
        start = self.peek()
        start_pos = self.pos
        # initializer blocks: '{' or 'static {'
        if self.at("{"):
            return ast.InitBlock(False, self.block(), self.span(start))
        if self.at("static") and self.at("{", 1):
            self.next()
            return ast.InitBlock(True, self.block(), self.span(start))
        mods = self.modifiers()
        if self.at("class") or self.at("interface"):
            self.pos = start_pos
            return self.type_decl()
        # constructor: Name '(' where Name is the declared type's simple name
        if (
            type_name is not None
            and self.at_ident()
            and self.peek().text == type_name
            and self.at("(", 1)
        ):
            name_tok = self.next()
            params = self.param_list()
            self.skip_throws()
            body = self.block() if self.at("{") else self.no_body("constructor")
            return ast.MethodDecl(mods, None, name_tok.text, params, body, True, self.span(start))
        ret = self.type_name("as a member type", allow_void=True)
        name_tok = self.ident("as the member name")
        if self.at("("):
            params = self.param_list()
            self.skip_throws()
            if self.at("{"):
                body = self.block()
            else:
                self.expect(";", "after abstract method declaration")
                body = None
            return ast.MethodDecl(
                mods, ret, name_tok.text, params, body, False, self.span(start)
            )
        declarators = [self.declarator(name_tok)]
        while self.accept(","):
            declarators.append(self.declarator(self.ident("in field declaration")))
        self.expect(";", "after field declaration")
        return ast.FieldDecl(mods, ret, declarators, self.span(start))

    def no_body(self, what: str):
        self.expect(";", f"after {what} declaration")
        return None

    def skip_throws(self) -> None:
        if self.accept("throws"):
            self.qualified_name("in throws clause")
            while self.accept(","):
                self.qualified_name("in throws clause")

    def param_list(self) -> list[ast.Param]:
        self.expect("(", "to open the parameter list")
        params: list[ast.Param] = []
        if not self.at(")"):
            while True:
                start = self.peek()
                self.accept("final")
                ptype = self.type_name("as a parameter type")
                name = self.ident("as the parameter name").text
                extra = 0
                while self.accept("["):
                    self.expect("]", "in parameter array declarator")
                    extra += 1
                params.append(ast.Param(ptype, name, extra, self.span(start)))
                if not self.accept(","):
                    break
        self.expect(")", "to close the parameter list")
        return params

    def declarator(self, name_tok: Token) -> ast.Declarator:
        extra = 0
        while self.accept("["):
            self.expect("]", "in array declarator")
            extra += 1
        init = None
        if self.accept("="):
            init = self.array_init() if self.at("{") else self.expr()
        return ast.Declarator(name_tok.text, extra, init, ast.Span(self.file, name_tok.line, name_tok.col))

    def type_name(self, context: str, allow_void: bool = False) -> ast.TypeName:
        t = self.peek()
        if t.kind is Kind.KEYWORD and t.text in PRIMITIVE_TYPES:
            if t.text == "void" and not allow_void:
                raise ParseError(self.file, t.line, t.col, f"'void' is not allowed {context}")
            self.next()
            name = t.text
        else:
            name = self.qualified_name(context)
        if self.at("<"):
            raise self.fail("generic type arguments")
        dims = 0
        while self.at("[") and self.at("]", 1):
            self.next()
            self.next()
            dims += 1
        return ast.TypeName(name, dims, ast.Span(self.file, t.line, t.col))

    # -- statements ----------------------------------------------------------

    def block(self) -> ast.Block:
        start = self.expect("{", "to open a block")
        stmts: list[ast.Stmt] = []
        while not self.at("}"):
            if self.peek().kind is Kind.EOF:
                raise ParseError(self.file, start.line, start.col, "unclosed block")
            stmts.append(self.stmt())
        self.next()
        return ast.Block(stmts, self.span(start))

    def stmt(self) -> ast.Stmt:
        t = self.peek()
        if self.at("{"):
            return self.block()
        if self.accept(";"):
            return ast.EmptyStmt(self.span(t))
        if self.at("if"):
            self.next()
            self.expect("(", "after 'if'")
            cond = self.expr()
            self.expect(")", "after if condition")
            then = self.stmt()
            other = self.stmt() if self.accept("else") else None
            return ast.IfStmt(cond, then, other, self.span(t))
        if self.at("while"):
            self.next()
            self.expect("(", "after 'while'")
            cond = self.expr()
            self.expect(")", "after while condition")
            return ast.WhileStmt(cond, self.stmt(), self.span(t))
        if self.at("do"):
            raise self.fail("do-while statement")
        if self.at("throw"):
            raise self.fail("throw statement")
        if self.at("synchronized"):
            raise self.fail("synchronized statement")
        if self.at("class") or self.at("interface"):
            raise self.fail("local class declaration")
        if self.at("for"):
            return self.for_stmt()
        if self.at("switch"):
            return self.switch_stmt()
        if self.at("return"):
            self.next()
            value = None if self.at(";") else self.expr()
            self.expect(";", "after return statement")
            return ast.ReturnStmt(value, self.span(t))
        if self.at("break"):
            self.next()
            if self.at_ident():
                raise self.fail("labeled break")
            self.expect(";", "after 'break'")
            return ast.BreakStmt(self.span(t))
        if self.at("continue"):
            self.next()
            if self.at_ident():
                raise self.fail("labeled continue")
            self.expect(";", "after 'continue'")
            return ast.ContinueStmt(self.span(t))
        if self.at("try"):
            return self.try_stmt()
        if self.at_ident() and self.at(":", 1):
            raise self.fail("labeled statement")
        decl = self.try_local_decl()
        if decl is not None:
            return decl
        expr = self.expr()
        self.expect(";", "after expression statement")
        return ast.ExprStmt(expr, self.span(t))

    def try_local_decl(self) -> ast.LocalDecl | None:
        """Parse a local declaration if the lookahead shape matches.

        The shape is (optional 'final') type identifier followed by one of
        '=', ',', ';', '['.  Anything else backtracks to an expression
        statement; a '<' after the would-be type name backtracks too, so
        comparisons like ``a < b`` parse as expressions.
        """
        start_pos = self.pos
        t = self.peek()
        had_final = bool(self.accept("final"))
        is_primitive = t.kind is Kind.KEYWORD and self.peek().text in PRIMITIVE_TYPES
        if not (is_primitive or self.at_ident()):
            if had_final:
                raise ParseError(self.file, t.line, t.col, "expected a type after 'final'")
            self.pos = start_pos
            return None
        try:
            ty = self.type_name("in local declaration")
        except ParseError:
            self.pos = start_pos
            if had_final:
                raise
            return None
        if not self.at_ident():
            self.pos = start_pos
            if had_final:
                raise ParseError(self.file, t.line, t.col, "expected a name after the type")
            return None
        name_tok = self.peek()
        follower = self.peek(1).text
        if follower not in ("=", ",", ";", "["):
            self.pos = start_pos
            return None
        self.next()
        declarators = [self.declarator(name_tok)]
        while self.accept(","):
            declarators.append(self.declarator(self.ident("in local declaration")))
        self.expect(";", "after local declaration")
        return ast.LocalDecl(ty, declarators, ast.Span(self.file, t.line, t.col))

    def for_stmt(self) -> ast.ForStmt:
        start = self.next()
        self.expect("(", "after 'for'")
        init: ast.LocalDecl | list[ast.Expr] | None
        if self.at(";"):
            self.next()
            init = None
        else:
            decl = self.try_local_decl_in_for()
            if decl is not None:
                init = decl  # the ';' was consumed by the declaration parse
            else:
                init = [self.expr()]
                while self.accept(","):
                    init.append(self.expr())
                self.expect(";", "after for-initializer")
        cond = None if self.at(";") else self.expr()
        self.expect(";", "after for-condition")
        update: list[ast.Expr] = []
        if not self.at(")"):
            update.append(self.expr())
            while self.accept(","):
                update.append(self.expr())
        self.expect(")", "after for header")
        return ast.ForStmt(init, cond, update, self.stmt(), self.span(start))

    def try_local_decl_in_for(self) -> ast.LocalDecl | None:
        saved = self.pos
        decl = self.try_local_decl()
        if decl is None:
            self.pos = saved
        return decl

    def switch_stmt(self) -> ast.SwitchStmt:
        start = self.next()
        self.expect("(", "after 'switch'")
        selector = self.expr()
        self.expect(")", "after switch selector")
        self.expect("{", "to open the switch body")
        groups: list[ast.SwitchGroup] = []
        while not self.at("}"):
            labels: list[ast.Expr | None] = []
            while self.at("case") or self.at("default"):
                if self.next().text == "case":
                    labels.append(self.expr())
                else:
                    labels.append(None)
                self.expect(":", "after switch label")
            if not labels:
                t = self.peek()
                raise ParseError(
                    self.file, t.line, t.col, "expected 'case' or 'default' in switch body"
                )
            stmts: list[ast.Stmt] = []
            while not (self.at("case") or self.at("default") or self.at("}")):
                stmts.append(self.stmt())
            groups.append(ast.SwitchGroup(labels, stmts))
        self.next()
        return ast.SwitchStmt(selector, groups, self.span(start))

    def try_stmt(self) -> ast.TryStmt:
        start = self.next()
        body = self.block()
        catches: list[ast.CatchClause] = []
        while self.at("catch"):
            c = self.next()
            self.expect("(", "after 'catch'")
            self.accept("final")
            ptype = self.type_name("as the catch parameter type")
            pname = self.ident("as the catch parameter name").text
            self.expect(")", "after catch parameter")
            catches.append(
                ast.CatchClause(ast.Param(ptype, pname, 0, self.span(c)), self.block(), self.span(c))
            )
        final = self.block() if self.accept("finally") else None
        if not catches and final is None:
            raise ParseError(
                self.file, start.line, start.col, "try statement needs a catch or finally"
            )
        return ast.TryStmt(body, catches, final, self.span(start))

    # -- expressions ---------------------------------------------------------

    def expr(self) -> ast.Expr:
        return self.assignment()

    def assignment(self) -> ast.Expr:
        start = self.peek()
        left = self.conditional()
        t = self.peek()
        if t.text == "->":
            raise self.fail("lambda expression", t)
        if t.kind is Kind.PUNCT and t.text in ASSIGN_OPS:
            self.next()
            value = self.assignment()
            return ast.Assign(t.text, left, value, self.span(start))
        return left

    def conditional(self) -> ast.Expr:
        start = self.peek()
        cond = self.binary(0)
        if self.accept("?"):
            then = self.expr()
            self.expect(":", "in conditional expression")
            other = self.conditional()
            return ast.Conditional(cond, then, other, self.span(start))
        return cond

    _LEVELS: list[tuple[str, ...]] = [
        ("||",),
        ("&&",),
        ("|",),
        ("^",),
        ("&",),
        ("==", "!="),
        ("<", ">", "<=", ">=", "instanceof"),
        ("<<", ">>", ">>>"),
        ("+", "-"),
        ("*", "/", "%"),
    ]

    def binary(self, level: int) -> ast.Expr:
        if level >= len(self._LEVELS):
            return self.unary()
        ops = self._LEVELS[level]
        start = self.peek()
        left = self.binary(level + 1)
        while True:
            t = self.peek()
            if t.text not in ops or t.kind not in (Kind.PUNCT, Kind.KEYWORD):
                return left
            self.next()
            if t.text == "instanceof":
                ty = self.type_name("after 'instanceof'")
                left = ast.InstanceOf(left, ty, self.span(start))
                continue
            right = self.binary(level + 1)
            left = ast.Binary(t.text, left, right, self.span(start))

    def unary(self) -> ast.Expr:
        t = self.peek()
        if t.text in ("+", "-", "!", "~", "++", "--") and t.kind is Kind.PUNCT:
            self.next()
            return ast.Unary(t.text, self.unary(), True, self.span(t))
        if self.at("(") and self.cast_ahead():
            self.next()
            ty = self.type_name("in cast")
            self.expect(")", "after cast type")
            return ast.Cast(ty, self.unary(), self.span(t))
        return self.postfix()

    def cast_ahead(self) -> bool:
        """Decide '(' opens a cast: '(' type ')' then a unary-start token."""
        k = 1
        t = self.peek(k)
        if t.kind is Kind.KEYWORD and t.text in PRIMITIVE_TYPES and t.text != "void":
            primitive = True
        elif t.kind is Kind.IDENT:
            primitive = False
        else:
            return False
        k += 1
        if not primitive:
            while self.peek(k).text == "." and self.peek(k + 1).kind is Kind.IDENT:
                k += 2
        dims = 0
        while self.peek(k).text == "[" and self.peek(k + 1).text == "]":
            k += 2
            dims += 1
        if self.peek(k).text != ")":
            return False
        after = self.peek(k + 1)
        if primitive or dims:
            return after.text != ")"  # '(int)' must still be followed by something
        if after.kind in (Kind.IDENT, Kind.INT, Kind.LONG, Kind.FLOAT, Kind.DOUBLE, Kind.CHAR, Kind.STRING):
            return True
        if after.kind is Kind.KEYWORD and after.text in ("this", "super", "new", "true", "false", "null"):
            return True
        return after.text in ("(", "!", "~")

    def postfix(self) -> ast.Expr:
        expr = self.primary()
        while True:
            t = self.peek()
            if self.at("."):
                nxt = self.peek(1)
                if nxt.kind is Kind.KEYWORD and nxt.text == "this":
                    raise self.fail("qualified 'this'", nxt)
                if nxt.kind is Kind.KEYWORD and nxt.text == "new":
                    raise self.fail("qualified class instance creation", nxt)
                if nxt.kind is Kind.KEYWORD and nxt.text == "class":
                    raise self.fail("class literal", nxt)
                self.next()
                name = self.ident("after '.'")
                if self.at("("):
                    args = self.arg_list()
                    expr = ast.MethodCall(expr, name.text, args, self.span(name))
                else:
                    expr = ast.FieldAccess(expr, name.text, self.span(name))
            elif self.at("["):
                self.next()
                index = self.expr()
                self.expect("]", "after array index")
                expr = ast.ArrayAccess(expr, index, self.span(t))
            elif self.at("++") or self.at("--"):
                self.next()
                expr = ast.Unary(t.text, expr, False, self.span(t))
            else:
                return expr

    def arg_list(self) -> list[ast.Expr]:
        self.expect("(", "to open the argument list")
        args: list[ast.Expr] = []
        if not self.at(")"):
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")", "to close the argument list")
        return args

    def array_init(self) -> ast.ArrayInit:
        start = self.expect("{", "to open an array initializer")
        items: list = []
        while not self.at("}"):
            items.append(self.array_init() if self.at("{") else self.expr())
            if not self.accept(","):
                break
        self.expect("}", "to close an array initializer")
        return ast.ArrayInit(items, self.span(start))

    def primary(self) -> ast.Expr:
        t = self.peek()
        if t.kind in _LITERAL_KINDS:
            self.next()
            return ast.Literal(_LITERAL_KINDS[t.kind], t.text, self.span(t))
        if t.kind is Kind.KEYWORD:
            if t.text in ("true", "false"):
                self.next()
                return ast.Literal("boolean", t.text, self.span(t))
            if t.text == "null":
                self.next()
                return ast.Literal("null", t.text, self.span(t))
            if t.text == "this":
                self.next()
                if self.at("("):
                    return ast.ThisCtorCall(self.arg_list(), self.span(t))
                return ast.ThisExpr(self.span(t))
            if t.text == "super":
                self.next()
                if self.at("("):
                    return ast.SuperCtorCall(self.arg_list(), self.span(t))
                self.expect(".", "after 'super'")
                name = self.ident("after 'super.'")
                if self.at("("):
                    return ast.SuperMember(name.text, self.arg_list(), self.span(name))
                return ast.SuperMember(name.text, None, self.span(name))
            if t.text == "new":
                return self.creator()
            if t.text in PRIMITIVE_TYPES:
                # e.g. 'int.class'; nothing in the dialect starts this way
                raise self.fail(f"'{t.text}' in expression position")
        if self.at("("):
            self.next()
            if self.at(")") and self.peek(1).text == "->":
                raise self.fail("lambda expression")
            inner = self.expr()
            if self.at(",") and self._lambda_params_ahead():
                raise self.fail("lambda expression")
            self.expect(")", "to close the parenthesized expression")
            if self.at("->"):
                raise self.fail("lambda expression")
            return ast.Paren(inner, self.span(t))
        if t.text == "->":
            raise self.fail("lambda expression")
        if t.text == "@":
            raise self.fail("annotation")
        if t.kind is Kind.IDENT:
            self.next()
            if self.at("("):
                return ast.MethodCall(None, t.text, self.arg_list(), self.span(t))
            return ast.NameExpr(t.text, self.span(t))
        raise ParseError(
            self.file, t.line, t.col, f"unexpected '{t.text or 'end of file'}' in expression"
        )

    def _lambda_params_ahead(self) -> bool:
        """From inside '(...', does the matching ')' lead into '->'?"""
        depth = 1
        k = 0
        while True:
            tok = self.peek(k)
            if tok.kind is Kind.EOF:
                return False
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth -= 1
                if depth == 0:
                    return self.peek(k + 1).text == "->"
            k += 1

    def creator(self) -> ast.Expr:
        start = self.next()  # 'new'
        t = self.peek()
        if t.kind is Kind.KEYWORD and t.text in PRIMITIVE_TYPES and t.text != "void":
            self.next()
            elem = ast.TypeName(t.text, 0, self.span(t))
            return self.array_creator(elem, start)
        name = self.qualified_name("after 'new'")
        if self.at("<"):
            raise self.fail("generic type arguments")
        ty = ast.TypeName(name, 0, ast.Span(self.file, t.line, t.col))
        if self.at("["):
            return self.array_creator(ty, start)
        args = self.arg_list()
        body = None
        if self.at("{"):
            members = self.class_body(None)
            body = ast.TypeDeclNode(
                name=None,
                kind="class",
                modifiers=[],
                extends=[],
                implements=[],
                members=members,
                span=self.span(start),
                anonymous=True,
                anon_supertype=ty,
            )
        return ast.NewObject(ty, args, body, self.span(start))

    def array_creator(self, elem: ast.TypeName, start: Token) -> ast.NewArray:
        dim_exprs: list[ast.Expr | None] = []
        while self.at("["):
            self.next()
            if self.at("]"):
                self.next()
                dim_exprs.append(None)
            else:
                dim_exprs.append(self.expr())
                self.expect("]", "after array dimension")
        init = self.array_init() if self.at("{") else None
        if init is None and all(d is None for d in dim_exprs):
            raise ParseError(
                self.file, start.line, start.col, "array creation needs a dimension or initializer"
            )
        return ast.NewArray(elem, dim_exprs, init, ast.Span(self.file, start.line, start.col))
