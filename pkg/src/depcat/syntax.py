"""Locally nameless syntax for MLTT(1, Pi, Sigma) with signature constants.

Variables are de Bruijn indices; display names ride along but never take part
in equality, so ``==`` on trees is alpha-equivalence.  Context morphisms list
their components outermost first, matching the usual ``(g1, ..., gn)`` reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union


class UnboundVariable(Exception):
    pass


class DomainMismatch(Exception):
    pass


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Pi:
    name: str = field(compare=False)
    dom: "Ty"
    cod: "Ty"


@dataclass(frozen=True)
class Sigma:
    name: str = field(compare=False)
    dom: "Ty"
    cod: "Ty"


@dataclass(frozen=True)
class TConst:
    name: str
    args: tuple["Tm", ...] = ()


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    index: int
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class Lam:
    name: str = field(compare=False)
    body: "Tm"


@dataclass(frozen=True)
class App:
    fn: "Tm"
    arg: "Tm"


@dataclass(frozen=True)
class Pair:
    fst: "Tm"
    snd: "Tm"


@dataclass(frozen=True)
class RSig:
    """Sigma eliminator ``rsig[z. motive](x. y. branch, scrut)``.

    ``motive`` lives under one extra binder (z), ``branch`` under two (x, y).
    ``ann`` optionally records the Sigma type of ``scrut`` (same scope as
    ``scrut``); it guides inference only and is ignored by equality.
    """

    zname: str = field(compare=False)
    motive: "Ty"
    xname: str = field(compare=False)
    yname: str = field(compare=False)
    branch: "Tm"
    scrut: "Tm"
    ann: Optional["Ty"] = field(default=None, compare=False)


@dataclass(frozen=True)
class Const:
    name: str
    args: tuple["Tm", ...] = ()


Ty = Union[Unit, Pi, Sigma, TConst]
Tm = Union[Var, Star, Lam, App, Pair, RSig, Const]
Expr = Union[Ty, Tm]

TYPE_NODES = (Unit, Pi, Sigma, TConst)
TERM_NODES = (Var, Star, Lam, App, Pair, RSig, Const)


def is_type(e: object) -> bool:
    return isinstance(e, TYPE_NODES)


# ---------------------------------------------------------------- contexts


@dataclass(frozen=True)
class Entry:
    name: str = field(compare=False)
    ty: Ty = field(default_factory=Unit)


@dataclass(frozen=True)
class Ctx:
    """A pre-context, outermost entry first.

    Equality ignores display names; duplicate names are legal here and are
    rejected by the checker's context-formation rule instead.
    """

    entries: tuple[Entry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, name: str, ty: Ty) -> "Ctx":
        return Ctx(self.entries + (Entry(name, ty),))

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def lookup(self, index: int) -> Ty:
        """Type of ``Var(index)`` weakened to the whole context."""
        if not 0 <= index < len(self.entries):
            raise UnboundVariable(f"index {index} in context of length {len(self)}")
        return shift(self.entries[len(self.entries) - 1 - index].ty, index + 1)

    def prefix(self, n: int) -> "Ctx":
        return Ctx(self.entries[:n])

    def duplicates(self) -> list[str]:
        seen: set[str] = set()
        dups = []
        for e in self.entries:
            if e.name in seen:
                dups.append(e.name)
            seen.add(e.name)
        return dups


EMPTY = Ctx()


def ctx(*pairs: tuple[str, Ty]) -> Ctx:
    return Ctx(tuple(Entry(n, t) for n, t in pairs))


@dataclass(frozen=True)
class CtxMor:
    """Context morphism ``dom -> cod``; ``comps[i]`` is the image of the i-th
    (outermost-first) variable of ``cod``."""

    dom: Ctx
    cod: Ctx
    comps: tuple[Tm, ...]

    def __post_init__(self) -> None:
        if len(self.comps) != len(self.cod):
            raise DomainMismatch(
                f"{len(self.comps)} components for a codomain of length {len(self.cod)}"
            )


# ---------------------------------------------------------------- traversal

VarFn = Callable[[Var, int], Tm]


def map_vars(e, fn: VarFn, depth: int = 0):
    """Rebuild ``e`` with every variable ``v`` at binder depth ``d`` replaced by
    ``fn(v, d)``.  Binder depth counts binders crossed inside ``e``."""
    match e:
        case Var():
            return fn(e, depth)
        case Star() | Unit():
            return e
        case Lam(name, body):
            return Lam(name, map_vars(body, fn, depth + 1))
        case App(f, a):
            return App(map_vars(f, fn, depth), map_vars(a, fn, depth))
        case Pair(a, b):
            return Pair(map_vars(a, fn, depth), map_vars(b, fn, depth))
        case RSig(z, mot, x, y, br, p, ann):
            return RSig(
                z,
                map_vars(mot, fn, depth + 1),
                x,
                y,
                map_vars(br, fn, depth + 2),
                map_vars(p, fn, depth),
                None if ann is None else map_vars(ann, fn, depth),
            )
        case Const(name, args):
            return Const(name, tuple(map_vars(a, fn, depth) for a in args))
        case Pi(n, a, b):
            return Pi(n, map_vars(a, fn, depth), map_vars(b, fn, depth + 1))
        case Sigma(n, a, b):
            return Sigma(n, map_vars(a, fn, depth), map_vars(b, fn, depth + 1))
        case TConst(name, args):
            return TConst(name, tuple(map_vars(a, fn, depth) for a in args))
    raise TypeError(f"not a syntax tree: {e!r}")


def shift(e, amount: int = 1, cutoff: int = 0):
    if amount == 0:
        return e

    def go(v: Var, d: int) -> Tm:
        if v.index >= d + cutoff:
            return Var(v.index + amount, v.name)
        return v

    return map_vars(e, go)


def subst_top(e, images: tuple[Tm, ...] | list[Tm], tail: int = 0):
    """Replace the innermost ``len(images)`` variables.

    ``images[0]`` replaces ``Var(0)``.  Variables past the replaced block are
    renumbered as ``index - len(images) + tail``; images already live in the
    target scope.
    """
    n = len(images)

    def go(v: Var, d: int) -> Tm:
        i = v.index
        if i < d:
            return v
        j = i - d
        if j < n:
            return shift(images[j], d)
        return Var(j - n + tail + d, v.name)

    return map_vars(e, go)


def instantiate(body, a: Tm):
    """``body[a/x]`` where x is the innermost variable of ``body``'s scope."""
    return subst_top(body, (a,))


def subst(body, x: Var, a: Tm):
    """Substitute ``a`` for the free variable ``x`` and keep the scope intact.

    In the named reading this is ``body[a/x]``; here the slot of ``x`` stays in
    place but no longer occurs.
    """

    def go(v: Var, d: int) -> Tm:
        if v.index == x.index + d:
            return shift(a, d)
        return v

    return map_vars(body, go)


def free_vars(e, depth: int = 0) -> frozenset[int]:
    out: set[int] = set()

    def go(v: Var, d: int) -> Tm:
        if v.index >= d:
            out.add(v.index - d)
        return v

    map_vars(e, go, depth)
    return frozenset(out)


def size(e) -> int:
    match e:
        case Var() | Star() | Unit():
            return 1
        case Lam(_, b):
            return 1 + size(b)
        case App(f, a) | Pair(f, a):
            return 1 + size(f) + size(a)
        case RSig(_, m, _, _, br, p):
            return 1 + size(m) + size(br) + size(p)
        case Const(_, args) | TConst(_, args):
            return 1 + sum(size(a) for a in args)
        case Pi(_, a, b) | Sigma(_, a, b):
            return 1 + size(a) + size(b)
    raise TypeError(f"not a syntax tree: {e!r}")


def alpha_eq(e1, e2) -> bool:
    return e1 == e2


def constants(e) -> set[str]:
    """Names of all constants (type or term) occurring in ``e``."""
    out: set[str] = set()

    def walk(x) -> None:
        match x:
            case Const(name, args) | TConst(name, args):
                out.add(name)
                for a in args:
                    walk(a)
            case Lam(_, b):
                walk(b)
            case App(f, a) | Pair(f, a):
                walk(f)
                walk(a)
            case RSig(_, m, _, _, br, p):
                walk(m)
                walk(br)
                walk(p)
            case Pi(_, a, b) | Sigma(_, a, b):
                walk(a)
                walk(b)

    walk(e)
    return out


# ---------------------------------------------------------------- context morphisms


def id_cm(g: Ctx) -> CtxMor:
    n = len(g)
    names = g.names()
    return CtxMor(g, g, tuple(Var(n - 1 - i, names[i]) for i in range(n)))


def weaken_cm(g: Ctx, name: str, ty: Ty) -> CtxMor:
    """The display map ``p(A) : g, x:A -> g``."""
    n = len(g)
    names = g.names()
    return CtxMor(g.extend(name, ty), g, tuple(Var(n - i, names[i]) for i in range(n)))


def gen_subst(e, f: CtxMor):
    """Simultaneous substitution of ``f``'s components for ``f.cod``'s variables."""
    n = len(f.cod)
    images = tuple(reversed(f.comps))
    bad = [i for i in free_vars(e) if i >= n]
    if bad:
        raise UnboundVariable(f"variable #{min(bad)} is outside a codomain of length {n}")
    return subst_top(e, images, tail=0)


def gen_subst_ctx_tail(tail: Ctx, f: CtxMor) -> Ctx:
    """Push ``f`` through a telescope ``tail`` living over ``f.cod``."""
    out = []
    cur = f
    for k, ent in enumerate(tail.entries):
        ty = gen_subst(ent.ty, cur)
        out.append(Entry(ent.name, ty))
        cur = lift_cm(cur, ent.name, ty)
    return Ctx(tuple(out))


def lift_cm(f: CtxMor, name: str, dom_ty: Ty, cod_ty: Ty | None = None) -> CtxMor:
    """``f`` extended under one binder: ``(f o p, x) : dom, x:A[f] -> cod, x:A``."""
    comps = tuple(shift(c, 1) for c in f.comps) + (Var(0, name),)
    cod_ty = cod_ty if cod_ty is not None else dom_ty
    return CtxMor(f.dom.extend(name, dom_ty), f.cod.extend(name, cod_ty), comps)


def compose_cm(g: CtxMor, f: CtxMor) -> CtxMor:
    """``g o f`` for ``f : Theta -> Delta`` and ``g : Delta -> Gamma``."""
    if f.cod != g.dom:
        raise DomainMismatch("codomain of the right factor differs from the left factor's domain")
    return CtxMor(f.dom, g.cod, tuple(gen_subst(c, f) for c in g.comps))


# ---------------------------------------------------------------- derived projections


def proj1(p: Tm, a: Ty, zname: str = "z", b: Optional[Ty] = None) -> Tm:
    """First projection of ``p : Sigma(x:a) b`` as the Sigma-eliminator form."""
    ann = None if b is None else Sigma("x", a, b)
    return RSig(zname, shift(a, 1), "x", "y", Var(1, "x"), p, ann)


def proj2(p: Tm, a: Ty, b: Ty, zname: str = "z", annotate: bool = False) -> Tm:
    """Second projection; the motive is ``b[proj1(z)/x]`` over ``z : Sigma``."""
    motive = subst_top(b, (proj1(Var(0, zname), shift(a, 1)),), tail=1)
    return RSig(zname, motive, "x", "y", Var(0, "y"), p, Sigma("x", a, b) if annotate else None)


def arrow(a: Ty, b: Ty) -> Pi:
    return Pi("_", a, shift(b, 1))


def product(a: Ty, b: Ty) -> Sigma:
    return Sigma("_", a, shift(b, 1))


# ---------------------------------------------------------------- untyped beta


class BetaBudget(Exception):
    pass


def beta_nf(e, fuel: int = 20000):
    """Contract every ``(\\x. b) a`` and every Sigma-eliminator on a literal pair.

    Untyped, so it only terminates on typable input; ``fuel`` bounds the number
    of contractions and :class:`BetaBudget` is raised past it.
    """
    budget = [fuel]

    def tick():
        budget[0] -= 1
        if budget[0] < 0:
            raise BetaBudget(f"more than {fuel} beta steps")

    def go(e):
        match e:
            case Var() | Star() | Unit():
                return e
            case Lam(x, b):
                return Lam(x, go(b))
            case App(f, a):
                f2, a2 = go(f), go(a)
                if isinstance(f2, Lam):
                    tick()
                    return go(instantiate(f2.body, a2))
                return App(f2, a2)
            case Pair(a, b):
                return Pair(go(a), go(b))
            case RSig(z, m, x, y, br, p, ann):
                p2 = go(p)
                if isinstance(p2, Pair):
                    tick()
                    return go(subst_top(br, (p2.snd, p2.fst)))
                return RSig(z, go(m), x, y, go(br), p2, None if ann is None else go(ann))
            case Const(name, args):
                return Const(name, tuple(go(a) for a in args))
            case TConst(name, args):
                return TConst(name, tuple(go(a) for a in args))
            case Pi(x, a, b):
                return Pi(x, go(a), go(b))
            case Sigma(x, a, b):
                return Sigma(x, go(a), go(b))
        raise TypeError(f"not an expression: {e!r}")

    return go(e)
