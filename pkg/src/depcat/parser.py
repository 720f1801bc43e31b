"""Surface syntax for ``.mltt`` files and a printer that round-trips through it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from . import syntax as S
from .judgements import CtxEqJ, CtxJ, Judgement, TermEqJ, TermJ, TypeEqJ, TypeJ

GRAMMAR = r"""
start: item*

?item: typeconst | termconst | axiom | define | check | evalitem

typeconst: "typeconst" NAME tele
termconst: "termconst" NAME tele ":" expr
axiom: "axiom" [ctxdecl] TURNSTILE expr "=" expr sort
define: "def" NAME ":" expr ":=" expr      -> def_term
      | "def" NAME "type" ":=" expr         -> def_type
check: "check" [ctxdecl] TURNSTILE judgement -> check_j
     | "check" ctxdecl "ctx"                -> check_ctx
     | "check" ctxdecl "=" ctxdecl "ctx"    -> check_ctx_eq
evalitem: "eval" [ctxdecl] TURNSTILE expr ":" expr

sort: ":" expr   -> sort_term
    | "type"     -> sort_type

judgement: expr ":" expr             -> j_term
         | expr "type"               -> j_type
         | expr "=" expr ":" expr    -> j_term_eq
         | expr "=" expr "type"      -> j_type_eq

tele: "(" [binding ("," binding)*] ")"
ctxdecl: "(" [binding ("," binding)*] ")"
binding: NAME ":" expr

?expr: LAMBDA NAME+ "." expr                 -> lam
     | PI "(" NAME ":" expr ")" expr         -> pi
     | SIGMA "(" NAME ":" expr ")" expr      -> sigma
     | prod ARROW expr                       -> arrow
     | prod

?prod: app TIMES prod                        -> times
     | app

?app: app atom                               -> apply
    | atom

?atom: NAME                                  -> name
     | NAME "[" [expr ("," expr)*] "]"       -> capp
     | STAR                                  -> star
     | UNIT                                  -> unit
     | "(" expr "," expr ")"                 -> pair
     | "(" expr ")"
     | "rsig" "[" NAME "." expr "]" "(" NAME "." NAME "." expr "," expr ")"  -> rsig
     | "fst" "(" expr ":" expr ")"           -> fst
     | "snd" "(" expr ":" expr ")"           -> snd

LAMBDA: "\\" | "λ"
PI.2: "Pi" | "Π"
SIGMA.2: "Sigma" | "Σ"
STAR.2: "star" | "⋆"
UNIT.2: "Unit"
ARROW: "->" | "→"
TIMES: "*" | "×"
TURNSTILE: "|-" | "⊢"
NAME: /(?!(Pi|Sigma|star|Unit|rsig|fst|snd|type|ctx|def|check|eval|axiom|typeconst|termconst)\b)[A-Za-z_][A-Za-z0-9_']*/

COMMENT: /#[^\n]*/ | /--[^\n]*/
%import common.WS
%ignore WS
%ignore COMMENT
"""

_LARK = Lark(GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=True)

KEYWORDS = {
    "Pi", "Sigma", "star", "Unit", "rsig", "fst", "snd", "type", "ctx", "def",
    "check", "eval", "axiom", "typeconst", "termconst",
}


# ---------------------------------------------------------------- errors and items


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    end_line: int = 0
    end_column: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{message} at {span}")
        self.message = message
        self.span = span


class SourceSyntaxError(ParseError):
    pass


class DuplicateConstant(ParseError):
    pass


class ForwardReference(ParseError):
    pass


class UnboundName(ParseError):
    pass


class KindError(ParseError):
    """A type was written where a term is required, or vice versa."""


@dataclass(frozen=True)
class TypeConstDecl:
    name: str
    tele: S.Ctx
    span: Span = field(compare=False)


@dataclass(frozen=True)
class TermConstDecl:
    name: str
    tele: S.Ctx
    cod: S.Ty
    span: Span = field(compare=False)


@dataclass(frozen=True)
class AxiomDecl:
    ctx: S.Ctx
    lhs: Union[S.Tm, S.Ty]
    rhs: Union[S.Tm, S.Ty]
    sort: Optional[S.Ty]  # None for a type equation
    span: Span = field(compare=False)


@dataclass(frozen=True)
class DefDecl:
    name: str
    body: Union[S.Tm, S.Ty]
    ty: Optional[S.Ty]  # None when the definition is a type
    span: Span = field(compare=False)


@dataclass(frozen=True)
class CheckItem:
    judgement: Judgement
    span: Span = field(compare=False)


@dataclass(frozen=True)
class EvalItem:
    ctx: S.Ctx
    tm: S.Tm
    ty: S.Ty
    span: Span = field(compare=False)


Item = Union[TypeConstDecl, TermConstDecl, AxiomDecl, DefDecl, CheckItem, EvalItem]


@dataclass(frozen=True)
class SourceFile:
    items: tuple[Item, ...]

    def declarations(self) -> list[Item]:
        return [i for i in self.items if isinstance(i, (TypeConstDecl, TermConstDecl, AxiomDecl))]

    def checks(self) -> list[CheckItem]:
        return [i for i in self.items if isinstance(i, CheckItem)]

    def evals(self) -> list[EvalItem]:
        return [i for i in self.items if isinstance(i, EvalItem)]


# ---------------------------------------------------------------- elaboration


def _span(node) -> Span:
    if isinstance(node, Token):
        return Span(node.line or 0, node.column or 0, node.end_line or 0, node.end_column or 0)
    m = node.meta
    if getattr(m, "empty", True):
        return Span(0, 0)
    return Span(m.line, m.column, m.end_line, m.end_column)


class _Elaborator:
    def __init__(self, declared_later: dict[str, Token]):
        self.type_consts: dict[str, int] = {}
        self.term_consts: dict[str, int] = {}
        self.defs: dict[str, tuple[Union[S.Tm, S.Ty], bool]] = {}
        self.declared_later = declared_later

    # -- names

    def _resolve_const(self, tok: Token) -> str:
        name = str(tok)
        if name in self.type_consts:
            return "type"
        if name in self.term_consts:
            return "term"
        if name in self.declared_later:
            raise ForwardReference(f"constant {name} used before its declaration", _span(tok))
        raise UnboundName(f"unknown constant {name}", _span(tok))

    def _declare(self, tok: Token, table: dict[str, int], arity: int) -> None:
        name = str(tok)
        if name in self.type_consts or name in self.term_consts or name in self.defs:
            raise DuplicateConstant(f"{name} is already declared", _span(tok))
        table[name] = arity

    # -- expressions

    def ty(self, node, scope: list[str]) -> S.Ty:
        e = self.expr(node, scope)
        if not S.is_type(e):
            raise KindError("expected a type, found a term", _span(node))
        return e

    def tm(self, node, scope: list[str]) -> S.Tm:
        e = self.expr(node, scope)
        if S.is_type(e):
            raise KindError("expected a term, found a type", _span(node))
        return e

    def expr(self, node, scope: list[str]):
        kind = node.data
        ch = node.children
        match kind:
            case "name":
                tok = ch[0]
                name = str(tok)
                for i in range(len(scope) - 1, -1, -1):
                    if scope[i] == name:
                        return S.Var(len(scope) - 1 - i, name)
                if name in self.defs:
                    return self.defs[name][0]
                which = self._resolve_const(tok)
                arity = (self.type_consts if which == "type" else self.term_consts)[name]
                if arity != 0:
                    raise SourceSyntaxError(f"{name} takes {arity} argument(s); write {name}[...]", _span(tok))
                return S.TConst(name) if which == "type" else S.Const(name)
            case "capp":
                tok, *args = ch
                args = [a for a in args if a is not None]
                which = self._resolve_const(tok)
                name = str(tok)
                arity = (self.type_consts if which == "type" else self.term_consts)[name]
                if len(args) != arity:
                    raise SourceSyntaxError(f"{name} expects {arity} argument(s), got {len(args)}", _span(node))
                targs = tuple(self.tm(a, scope) for a in args)
                return S.TConst(name, targs) if which == "type" else S.Const(name, targs)
            case "star":
                return S.Star()
            case "unit":
                return S.Unit()
            case "pair":
                return S.Pair(self.tm(ch[0], scope), self.tm(ch[1], scope))
            case "lam":
                names = [str(t) for t in ch[1:-1]]
                body = self.tm(ch[-1], scope + names)
                for n in reversed(names):
                    body = S.Lam(n, body)
                return body
            case "pi" | "sigma":
                x = str(ch[1])
                dom = self.ty(ch[2], scope)
                cod = self.ty(ch[3], scope + [x])
                return (S.Pi if kind == "pi" else S.Sigma)(x, dom, cod)
            case "arrow":
                return S.arrow(self.ty(ch[0], scope), self.ty(ch[2], scope))
            case "times":
                return S.product(self.ty(ch[0], scope), self.ty(ch[2], scope))
            case "apply":
                return S.App(self.tm(ch[0], scope), self.tm(ch[1], scope))
            case "rsig":
                z, mot, x, y, br, p = ch
                return S.RSig(
                    str(z),
                    self.ty(mot, scope + [str(z)]),
                    str(x),
                    str(y),
                    self.tm(br, scope + [str(x), str(y)]),
                    self.tm(p, scope),
                )
            case "fst" | "snd":
                p = self.tm(ch[0], scope)
                sig = self.ty(ch[1], scope)
                if not isinstance(sig, S.Sigma):
                    raise KindError(f"{kind} needs a Sigma annotation", _span(ch[1]))
                if kind == "fst":
                    return S.proj1(p, sig.dom, b=sig.cod)
                return S.proj2(p, sig.dom, sig.cod, annotate=True)
        raise SourceSyntaxError(f"unexpected construct {kind}", _span(node))

    def bindings(self, node) -> S.Ctx:
        out = S.EMPTY
        scope: list[str] = []
        if node is None:
            return out
        for b in node.children:
            if b is None:
                continue
            tok, tnode = b.children
            out = out.extend(str(tok), self.ty(tnode, scope))
            scope.append(str(tok))
        return out

    # -- items

    def item(self, node) -> Optional[Item]:
        kind = node.data
        ch = node.children
        sp = _span(node)
        match kind:
            case "typeconst":
                tele = self.bindings(ch[1])
                self._declare(ch[0], self.type_consts, len(tele))
                return TypeConstDecl(str(ch[0]), tele, sp)
            case "termconst":
                tele = self.bindings(ch[1])
                cod = self.ty(ch[2], tele.names())
                self._declare(ch[0], self.term_consts, len(tele))
                return TermConstDecl(str(ch[0]), tele, cod, sp)
            case "axiom":
                cnode, _turn, lhs, rhs, sort = ch
                c = self.bindings(cnode)
                sc = c.names()
                if sort.data == "sort_type":
                    return AxiomDecl(c, self.ty(lhs, sc), self.ty(rhs, sc), None, sp)
                return AxiomDecl(c, self.tm(lhs, sc), self.tm(rhs, sc), self.ty(sort.children[0], sc), sp)
            case "def_term":
                name, tnode, bnode = ch
                ty, body = self.ty(tnode, []), self.tm(bnode, [])
                self._declare_def(name, body, False)
                return DefDecl(str(name), body, ty, sp)
            case "def_type":
                name, bnode = ch
                body = self.ty(bnode, [])
                self._declare_def(name, body, True)
                return DefDecl(str(name), body, None, sp)
            case "check_j":
                cnode, _turn, j = ch
                c = self.bindings(cnode)
                return CheckItem(self.judgement(c, j), sp)
            case "check_ctx":
                return CheckItem(CtxJ(self.bindings(ch[0])), sp)
            case "check_ctx_eq":
                return CheckItem(CtxEqJ(self.bindings(ch[0]), self.bindings(ch[1])), sp)
            case "evalitem":
                cnode, _turn, t, ty = ch
                c = self.bindings(cnode)
                sc = c.names()
                return EvalItem(c, self.tm(t, sc), self.ty(ty, sc), sp)
        raise SourceSyntaxError(f"unexpected item {kind}", sp)

    def _declare_def(self, tok: Token, body, is_type: bool) -> None:
        name = str(tok)
        if name in self.type_consts or name in self.term_consts or name in self.defs:
            raise DuplicateConstant(f"{name} is already declared", _span(tok))
        self.defs[name] = (body, is_type)

    def judgement(self, c: S.Ctx, node) -> Judgement:
        sc = c.names()
        ch = node.children
        match node.data:
            case "j_term":
                return TermJ(c, self.tm(ch[0], sc), self.ty(ch[1], sc))
            case "j_type":
                return TypeJ(c, self.ty(ch[0], sc))
            case "j_term_eq":
                return TermEqJ(c, self.tm(ch[0], sc), self.tm(ch[1], sc), self.ty(ch[2], sc))
            case "j_type_eq":
                return TypeEqJ(c, self.ty(ch[0], sc), self.ty(ch[1], sc))
        raise SourceSyntaxError("unknown judgement form", _span(node))


def _parse_tree(text: str, start: str = "start") -> Tree:
    try:
        return _LARK.parse(text)
    except UnexpectedEOF as exc:
        lines = text.splitlines() or [""]
        raise SourceSyntaxError("unexpected end of input", Span(len(lines), len(lines[-1]) + 1)) from exc
    except UnexpectedCharacters as exc:
        raise SourceSyntaxError(f"unexpected character {text[exc.pos_in_stream]!r}", Span(exc.line, exc.column)) from exc
    except UnexpectedToken as exc:
        tok = exc.token
        what = "end of input" if tok.type == "$END" else repr(str(tok))
        line = tok.line if tok.line is not None else 1
        col = tok.column if tok.column is not None else 1
        raise SourceSyntaxError(f"unexpected {what}", Span(line, col)) from exc
    except UnexpectedInput as exc:  # pragma: no cover - other lark failures
        raise SourceSyntaxError(str(exc), Span(getattr(exc, "line", 1), getattr(exc, "column", 1))) from exc


def parse_file(text: str) -> SourceFile:
    tree = _parse_tree(text)
    later: dict[str, Token] = {}
    for it in tree.children:
        if it.data in ("typeconst", "termconst"):
            later.setdefault(str(it.children[0]), it.children[0])
    el = _Elaborator(later)
    items = []
    for it in tree.children:
        out = el.item(it)
        if out is not None:
            items.append(out)
    return SourceFile(tuple(items))


def parse_expr(text: str, scope: list[str] | None = None, consts: dict[str, tuple[str, int]] | None = None):
    """Parse a single expression.

    ``consts`` maps constant names to ``("type" | "term", arity)``.
    """
    tree = _parse_tree(f"check |- {text} type")
    j = tree.children[0].children[2]
    el = _Elaborator({})
    for name, (kind, arity) in (consts or {}).items():
        (el.type_consts if kind == "type" else el.term_consts)[name] = arity
    return el.expr(j.children[0], list(scope or []))


# ---------------------------------------------------------------- printing

_LEVEL_EXPR, _LEVEL_PROD, _LEVEL_APP, _LEVEL_ATOM = range(4)


def _fresh(name: str, taken: set[str]) -> str:
    if not name or name == "_" or name in KEYWORDS:
        name = "x"
    while name in taken:
        name += "'"
    return name


class _Printer:
    def __init__(self, scope: list[str], arrows: bool = False):
        self.scope = list(scope)
        self.arrows = arrows

    def bind(self, name: str, used: bool = True) -> str:
        if not used and name == "_":
            return "_"
        return _fresh(name, set(self.scope))

    def var(self, v: S.Var) -> str:
        if v.index < len(self.scope):
            return self.scope[len(self.scope) - 1 - v.index]
        return f"#{v.index}"

    def go(self, e, level: int) -> str:
        text, own = self._node(e)
        return f"({text})" if own < level else text

    def _under(self, names: list[str], e, level: int) -> str:
        self.scope.extend(names)
        try:
            return self.go(e, level)
        finally:
            del self.scope[len(self.scope) - len(names):]

    def _node(self, e) -> tuple[str, int]:
        match e:
            case S.Var():
                return self.var(e), _LEVEL_ATOM
            case S.Star():
                return "star", _LEVEL_ATOM
            case S.Unit():
                return "Unit", _LEVEL_ATOM
            case S.Pair(a, b):
                return f"({self.go(a, 0)}, {self.go(b, 0)})", _LEVEL_ATOM
            case S.Const(name, args) | S.TConst(name, args):
                return f"{name}[{', '.join(self.go(a, 0) for a in args)}]", _LEVEL_ATOM
            case S.App(f, a):
                return f"{self.go(f, _LEVEL_APP)} {self.go(a, _LEVEL_ATOM)}", _LEVEL_APP
            case S.Lam(name, body):
                x = self.bind(name)
                return f"\\{x}. {self._under([x], body, 0)}", _LEVEL_EXPR
            case S.Pi(name, a, b) | S.Sigma(name, a, b):
                if self.arrows and 0 not in S.free_vars(b):
                    bt = self.go(S.subst_top(b, (S.Star(),)), _LEVEL_EXPR if isinstance(e, S.Pi) else _LEVEL_PROD)
                    if isinstance(e, S.Pi):
                        return f"{self.go(a, _LEVEL_PROD)} -> {bt}", _LEVEL_EXPR
                    return f"{self.go(a, _LEVEL_APP)} * {bt}", _LEVEL_PROD
                x = self.bind(name)
                kw = "Pi" if isinstance(e, S.Pi) else "Sigma"
                return f"{kw} ({x}:{self.go(a, 0)}) {self._under([x], b, 0)}", _LEVEL_EXPR
            case S.RSig(z, mot, x, y, br, p):
                zz = self.bind(z)
                m = self._under([zz], mot, 0)
                xx = self.bind(x)
                yy = _fresh(y, set(self.scope) | {xx})
                g = self._under([xx, yy], br, 0)
                return f"rsig[{zz}. {m}]({xx}. {yy}. {g}, {self.go(p, 0)})", _LEVEL_ATOM
        raise TypeError(f"cannot print {e!r}")


def pretty(e, scope: list[str] | S.Ctx | None = None, arrows: bool = False) -> str:
    """Render a tree in the ASCII surface syntax.

    ``scope`` names the free variables (outermost first).  With ``arrows``,
    non-dependent Pi and Sigma print as ``A -> B`` and ``A * B``.
    """
    if isinstance(scope, S.Ctx):
        scope = scope.names()
    return _Printer(list(scope or []), arrows).go(e, 0)


def pretty_ctx(c: S.Ctx, arrows: bool = False) -> str:
    parts = []
    names: list[str] = []
    for ent in c.entries:
        parts.append(f"{ent.name}:{pretty(ent.ty, names, arrows)}")
        names.append(ent.name)
    return "(" + ", ".join(parts) + ")"


def pretty_judgement(j: Judgement, arrows: bool = False) -> str:
    match j:
        case CtxJ(c):
            return f"{pretty_ctx(c, arrows)} ctx"
        case CtxEqJ(a, b):
            return f"{pretty_ctx(a, arrows)} = {pretty_ctx(b, arrows)} ctx"
        case TypeJ(c, t):
            return f"{pretty_ctx(c, arrows)} |- {pretty(t, c, arrows)} type"
        case TermJ(c, a, t):
            return f"{pretty_ctx(c, arrows)} |- {pretty(a, c, arrows)} : {pretty(t, c, arrows)}"
        case TypeEqJ(c, a, b):
            return f"{pretty_ctx(c, arrows)} |- {pretty(a, c, arrows)} = {pretty(b, c, arrows)} type"
        case TermEqJ(c, a, b, t):
            return f"{pretty_ctx(c, arrows)} |- {pretty(a, c, arrows)} = {pretty(b, c, arrows)} : {pretty(t, c, arrows)}"
    raise TypeError(j)
