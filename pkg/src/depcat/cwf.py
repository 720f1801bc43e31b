"""The strict CCCwD interface, the formers derived from it, and the law harness.

A model is any object implementing :class:`Model`.  Contexts are passed
explicitly to every structure map so that models whose values do not record
their own base (the term model) fit the same interface.  Notation in comments:
``G.A`` comprehension, ``A{f}`` reindexing, ``<f, t>`` extension, ``[s, t]``
dependent pairing.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, Optional


class Model(ABC):
    """Strict SCCwD with unit, coherent Sigma-spaces and coherent Pi-spaces."""

    name = "model"

    # -- category with terminal object
    @abstractmethod
    def terminal(self): ...
    @abstractmethod
    def bang(self, g): ...
    @abstractmethod
    def ident(self, g): ...
    @abstractmethod
    def compose(self, f, g):
        """``f o g``."""
    @abstractmethod
    def dom(self, f): ...
    @abstractmethod
    def cod(self, f): ...

    # -- dependence and comprehension
    @abstractmethod
    def reindex(self, a, phi):
        """``A{phi}`` for ``A`` over ``cod(phi)``."""
    @abstractmethod
    def reindex_tm(self, t, phi):
        """``t{phi}`` for ``t : cod(phi) => A``."""
    @abstractmethod
    def ext(self, g, a): ...
    @abstractmethod
    def p1(self, g, a): ...
    @abstractmethod
    def p2(self, g, a): ...
    @abstractmethod
    def extend(self, g, a, phi, t):
        """``<phi, t> : dom(phi) -> g.a`` for ``t : dom(phi) => a{phi}``."""

    # -- unit
    @abstractmethod
    def unit(self):
        """The unit D-object over the terminal object."""
    @abstractmethod
    def unit_bang(self, g):
        """The unique D-morphism ``g => 1{!}``."""

    # -- Sigma
    @abstractmethod
    def sigma(self, g, a, b): ...
    @abstractmethod
    def varpi1(self, g, a, b):
        """``g.Sigma(a,b) => a{p1}``."""
    @abstractmethod
    def varpi2(self, g, a, b):
        """``g.Sigma(a,b) => b{<p1, varpi1>}``."""
    @abstractmethod
    def spair(self, g, a, b, phi, s, t):
        """``[s, t] : dom(phi) => Sigma(a,b){phi}``."""

    # -- Pi
    @abstractmethod
    def pi(self, g, a, b): ...
    @abstractmethod
    def dev(self, g, a, b):
        """``g.Pi(a,b).a{p1} => b{p1^+}``."""
    @abstractmethod
    def lam(self, g, a, b, f):
        """Currying of ``f : g.a => b`` into ``g => Pi(a,b)``."""

    # -- decidable equality
    @abstractmethod
    def eq_obj(self, g, h) -> bool: ...
    @abstractmethod
    def eq_mor(self, f, g) -> bool: ...
    @abstractmethod
    def eq_dobj(self, g, a, b) -> bool: ...
    @abstractmethod
    def eq_dmor(self, g, a, s, t) -> bool: ...

    def show(self, x, g=None) -> str:
        """Render a value; ``g`` is the context it lives in, when known."""
        return repr(x)


# ---------------------------------------------------------------- derived helpers


def plus(m: Model, phi, a):
    """``phi^+ = <phi o p1, p2> : D.a{phi} -> G.a`` for ``phi : D -> G``."""
    d, g = m.dom(phi), m.cod(phi)
    aphi = m.reindex(a, phi)
    return m.extend(g, a, m.compose(phi, m.p1(d, aphi)), m.p2(d, aphi))


def plus_star(m: Model, phi, a, b):
    """``phi* = <phi o p1, p2>`` on ``D.Sigma(a,b){phi} -> G.Sigma(a,b)``."""
    return plus(m, phi, m.sigma(m.cod(phi), a, b))


def plus_plus(m: Model, phi, a, b):
    """``phi^{++} = <phi^+ o p1, p2> : D.a{phi}.b{phi^+} -> G.a.b``."""
    return plus(m, plus(m, phi, a), b)


def section(m: Model, g, a, t):
    """``t-bar = <id, t> : g -> g.a``."""
    return m.extend(g, a, m.ident(g), t)


def pair_iso(m: Model, g, a, b):
    """``Pair = <p1 o p1, [p2{p1}, p2]>`` and ``Pair^-1 = <<p1, varpi1>, varpi2>``."""
    ga = m.ext(g, a)
    s = m.sigma(g, a, b)
    q = m.compose(m.p1(g, a), m.p1(ga, b))
    inner = m.spair(g, a, b, q, m.reindex_tm(m.p2(g, a), m.p1(ga, b)), m.p2(ga, b))
    fwd = m.extend(g, s, q, inner)
    back = m.extend(ga, b, m.extend(g, a, m.p1(g, s), m.varpi1(g, a, b)), m.varpi2(g, a, b))
    return fwd, back


def sigma_elim(m: Model, g, a, b, f):
    """``R^Sigma(f) = f{Pair^-1}``."""
    return m.reindex_tm(f, pair_iso(m, g, a, b)[1])


def lam_inv(m: Model, g, a, b, k):
    """``Lambda^-1(k) = dev{(k-bar)^{+a{p1}}} : g.a => b``."""
    p = m.pi(g, a, b)
    kbar = section(m, g, p, k)
    return m.reindex_tm(m.dev(g, a, b), plus(m, kbar, m.reindex(a, m.p1(g, p))))


def app(m: Model, g, a, b, k, t):
    """``App(k, t) = Lambda^-1(k){t-bar}``."""
    return m.reindex_tm(lam_inv(m, g, a, b, k), section(m, g, a, t))


@dataclass(frozen=True)
class DObjMorphism:
    """A morphism ``(phi, f) : (D, d) -> (G, c)`` in the category of D-objects."""

    phi: Any
    f: Any
    src: Any = None  # (D, d)
    tgt: Any = None  # (G, c)


def dobj_id(m: Model, g, c) -> DObjMorphism:
    return DObjMorphism(m.ident(g), m.p2(g, c), (g, c), (g, c))


def dobj_compose(m: Model, second: DObjMorphism, first: DObjMorphism) -> DObjMorphism:
    """``(psi, g) o (phi, f) = (psi o phi, g{<phi o p1, f>})``."""
    (d, dd) = first.src
    (g, c) = first.tgt
    lift = m.extend(g, c, m.compose(first.phi, m.p1(d, dd)), first.f)
    return DObjMorphism(m.compose(second.phi, first.phi), m.reindex_tm(second.f, lift), first.src, second.tgt)


def dobj_eq(m: Model, x: DObjMorphism, y: DObjMorphism) -> bool:
    (d, dd) = x.src
    (g, c) = x.tgt
    return m.eq_mor(x.phi, y.phi) and m.eq_dmor(
        m.ext(d, dd), m.reindex(c, m.compose(x.phi, m.p1(d, dd))), x.f, y.f
    )


def sigma_assoc(m: Model, g, a, b, c):
    """``Triple : Sigma(Sigma(a,b), c) ~ Sigma(a, Sigma(b, c{Pair}))`` and its inverse.

    ``c`` lives over ``g.Sigma(a,b)``.
    """
    s_ab = m.sigma(g, a, b)
    pair_fwd, _ = pair_iso(m, g, a, b)
    ga = m.ext(g, a)
    c_pair = m.reindex(c, pair_fwd)
    inner_s = m.sigma(ga, b, c_pair)
    left = m.sigma(g, s_ab, c)
    right = m.sigma(g, a, inner_s)

    # forward, on g.left
    q = m.extend(g, s_ab, m.p1(g, left), m.varpi1(g, s_ab, c))  # <p1, varpi1> : g.left -> g.Sigma(a,b)
    a_cmp = m.reindex_tm(m.varpi1(g, a, b), q)
    b_cmp = m.reindex_tm(m.varpi2(g, a, b), q)
    c_cmp = m.varpi2(g, s_ab, c)
    to_ga = m.extend(g, a, m.p1(g, left), a_cmp)
    inner = m.spair(ga, b, c_pair, to_ga, b_cmp, c_cmp)
    fwd = m.spair(g, a, inner_s, m.p1(g, left), a_cmp, inner)

    # backward, on g.right
    r = m.extend(ga, inner_s, m.extend(g, a, m.p1(g, right), m.varpi1(g, a, inner_s)), m.varpi2(g, a, inner_s))
    a2 = m.varpi1(g, a, inner_s)
    b2 = m.reindex_tm(m.varpi1(ga, b, c_pair), r)
    c2 = m.reindex_tm(m.varpi2(ga, b, c_pair), r)
    ab = m.spair(g, a, b, m.p1(g, right), a2, b2)
    bwd = m.spair(g, s_ab, c, m.p1(g, right), ab, c2)

    t = DObjMorphism(m.ident(g), fwd, (g, left), (g, right))
    t_inv = DObjMorphism(m.ident(g), bwd, (g, right), (g, left))
    return t, t_inv


def unit_law(m: Model, g, a):
    """Isomorphisms ``Sigma(1{!}, a{p1}) ~ a`` and ``a ~ Sigma(a, 1{!})``.

    Returns ``((to_left, from_left), (to_right, from_right))`` where ``to_*``
    go out of ``a``.
    """
    one = m.reindex(m.unit(), m.bang(g))
    a1 = m.reindex(a, m.p1(g, one))
    left = m.sigma(g, one, a1)
    ga = m.ext(g, a)
    to_left_f = m.spair(g, one, a1, m.p1(g, a), m.unit_bang(ga), m.p2(g, a))
    from_left_f = m.varpi2(g, one, a1)
    one_a = m.reindex(m.unit(), m.bang(ga))
    right = m.sigma(g, a, one_a)
    to_right_f = m.spair(g, a, one_a, m.p1(g, a), m.p2(g, a), m.unit_bang(ga))
    from_right_f = m.varpi1(g, a, one_a)
    return (
        (
            DObjMorphism(m.ident(g), to_left_f, (g, a), (g, left)),
            DObjMorphism(m.ident(g), from_left_f, (g, left), (g, a)),
        ),
        (
            DObjMorphism(m.ident(g), to_right_f, (g, a), (g, right)),
            DObjMorphism(m.ident(g), from_right_f, (g, right), (g, a)),
        ),
    )


# ---------------------------------------------------------------- instances


class Sampler(ABC):
    """Model-specific generators used to populate law instances."""

    @abstractmethod
    def obj(self, rng: random.Random): ...
    @abstractmethod
    def dobj(self, rng: random.Random, g): ...
    @abstractmethod
    def mor(self, rng: random.Random, d, g):
        """A morphism ``d -> g`` or None."""
    @abstractmethod
    def dmor(self, rng: random.Random, g, a):
        """A D-morphism ``g => a`` or None."""

    def dmors(self, rng: random.Random, g, a, limit: int) -> list:
        """All D-morphisms ``g => a`` when few, otherwise a sample of ``limit``."""
        out = []
        for _ in range(limit):
            t = self.dmor(rng, g, a)
            if t is None:
                break
            out.append(t)
        return out


@dataclass
class Instance:
    label: str
    G: Any
    A: Any
    D: Any = None
    Th: Any = None
    phi: Any = None
    psi: Any = None
    B: Any = None
    C: Any = None
    E: Any = None
    t: Any = None
    g: Any = None
    h: Any = None
    f: Any = None
    k: Any = None
    hc: Any = None
    gd: Any = None
    fs: Any = None  # g.a.b => P{Pair} with P = C{p1}
    gs: Any = None  # g.Sigma(a,b) => P
    ab: Any = None  # a D-object over g.Sigma(a,b) for associativity
    rng_seed: int = 0


def build_instance(m: Model, smp: Sampler, rng: random.Random, label: str, G=None, A=None, B=None) -> Instance:
    G = smp.obj(rng) if G is None else G
    A = smp.dobj(rng, G) if A is None else A
    inst = Instance(label, G, A, rng_seed=rng.randrange(1 << 30))
    D = smp.obj(rng)
    phi = smp.mor(rng, D, G)
    if phi is None:
        D, phi = G, m.ident(G)
    Th = smp.obj(rng)
    psi = smp.mor(rng, Th, D)
    if psi is None:
        Th, psi = D, m.ident(D)
    inst.D, inst.phi, inst.Th, inst.psi = D, phi, Th, psi
    ga = m.ext(G, A)
    inst.B = smp.dobj(rng, ga) if B is None else B
    inst.C = smp.dobj(rng, G)
    inst.E = smp.dobj(rng, G)
    def attempt(fn):
        # a broken model may refuse to build some role; the laws needing it are skipped
        try:
            return fn()
        except Exception:
            return None

    s = attempt(lambda: m.sigma(G, A, inst.B))
    inst.t = attempt(lambda: smp.dmor(rng, G, A))
    inst.g = attempt(lambda: smp.dmor(rng, D, m.reindex(A, phi)))
    if inst.g is not None:
        inst.h = attempt(lambda: smp.dmor(rng, D, m.reindex(inst.B, m.extend(G, A, phi, inst.g))))
    inst.f = attempt(lambda: smp.dmor(rng, ga, inst.B))
    inst.k = attempt(lambda: smp.dmor(rng, G, m.pi(G, A, inst.B)))
    a1 = m.reindex(A, m.p1(G, inst.C))
    inst.hc = attempt(
        lambda: smp.dmor(rng, m.ext(m.ext(G, inst.C), a1), m.reindex(inst.B, plus(m, m.p1(G, inst.C), A)))
    )
    inst.gd = attempt(lambda: smp.dmor(rng, m.ext(G, inst.E), m.reindex(inst.C, m.p1(G, inst.E))))
    if s is not None:
        P = m.reindex(inst.C, m.p1(G, s))
        inst.fs = attempt(lambda: smp.dmor(rng, m.ext(ga, inst.B), m.reindex(P, pair_iso(m, G, A, inst.B)[0])))
        inst.gs = attempt(lambda: smp.dmor(rng, m.ext(G, s), P))
        inst.ab = attempt(lambda: smp.dobj(rng, m.ext(G, s)))
    return inst


# ---------------------------------------------------------------- laws

SKIP = object()


@dataclass(frozen=True)
class Law:
    name: str
    group: str
    uses: frozenset[str]
    needs: tuple[str, ...]
    fn: Callable


AXIOM_LAWS: list[Law] = []
DERIVED_LAWS: list[Law] = []


def _law(name: str, group: str, uses: str, needs: str = "", registry: list | None = None):
    def deco(fn):
        (AXIOM_LAWS if registry is None else registry).append(
            Law(name, group, frozenset(uses.split()), tuple(needs.split()), fn)
        )
        return fn

    return deco


def _derived(name: str, needs: str = ""):
    return _law(name, "derived", "", needs, DERIVED_LAWS)


class _Ctx:
    """Per-check helper: collects the first failure with a readable witness."""

    def __init__(self, m: Model, smp: Sampler, inst: Instance, limit: int):
        self.m, self.smp, self.inst, self.limit = m, smp, inst, limit
        self.rng = random.Random(inst.rng_seed)

    def dmor(self, g, a, s, t, what: str) -> Optional[str]:
        if self.m.eq_dmor(g, a, s, t):
            return None
        return f"{what}: {self.m.show(s, g)} != {self.m.show(t, g)}"

    def mor(self, f, g, what: str) -> Optional[str]:
        if self.m.eq_mor(f, g):
            return None
        return f"{what}: {self.m.show(f)} != {self.m.show(g)}"

    def dobj(self, g, a, b, what: str) -> Optional[str]:
        if self.m.eq_dobj(g, a, b):
            return None
        return f"{what}: {self.m.show(a, g)} != {self.m.show(b, g)}"

    def obj(self, g, h, what: str) -> Optional[str]:
        if self.m.eq_obj(g, h):
            return None
        return f"{what}: {self.m.show(g)} != {self.m.show(h)}"

    def all(self, g, a) -> list:
        return self.smp.dmors(self.rng, g, a, self.limit)


def _first(*checks: Optional[str]) -> Optional[str]:
    for c in checks:
        if c is not None:
            return c
    return None


# -- category, terminal object


@_law("CatId", "cwf", "cat")
def _cat_id(c: _Ctx, I: Instance):
    m = c.m
    return _first(
        c.mor(m.compose(m.ident(I.G), I.phi), I.phi, "id o phi"),
        c.mor(m.compose(I.phi, m.ident(I.D)), I.phi, "phi o id"),
    )


@_law("CatAssoc", "cwf", "cat ext p1 reindex")
def _cat_assoc(c: _Ctx, I: Instance):
    m = c.m
    x = m.reindex(m.reindex(I.A, I.phi), I.psi)
    rho = m.p1(I.Th, x)
    return c.mor(
        m.compose(m.compose(I.phi, I.psi), rho), m.compose(I.phi, m.compose(I.psi, rho)), "(phi o psi) o rho"
    )


@_law("Terminal", "cwf", "cat terminal")
def _terminal(c: _Ctx, I: Instance):
    m = c.m
    return _first(
        c.obj(m.cod(m.bang(I.G)), m.terminal(), "cod(!)"),
        c.mor(m.compose(m.bang(I.G), I.phi), m.bang(I.D), "! o phi"),
    )


# -- functoriality of reindexing


@_law("TyId", "cwf", "reindex cat")
def _ty_id(c: _Ctx, I: Instance):
    return c.dobj(I.G, c.m.reindex(I.A, c.m.ident(I.G)), I.A, "A{id}")


@_law("TyComp", "cwf", "reindex cat")
def _ty_comp(c: _Ctx, I: Instance):
    m = c.m
    return c.dobj(
        I.Th, m.reindex(I.A, m.compose(I.phi, I.psi)), m.reindex(m.reindex(I.A, I.phi), I.psi), "A{phi o psi}"
    )


@_law("TmId", "cwf", "reindex cat", "t")
def _tm_id(c: _Ctx, I: Instance):
    return c.dmor(I.G, I.A, c.m.reindex_tm(I.t, c.m.ident(I.G)), I.t, "t{id}")


@_law("TmComp", "cwf", "reindex cat", "t")
def _tm_comp(c: _Ctx, I: Instance):
    m = c.m
    return c.dmor(
        I.Th,
        m.reindex(I.A, m.compose(I.phi, I.psi)),
        m.reindex_tm(I.t, m.compose(I.phi, I.psi)),
        m.reindex_tm(m.reindex_tm(I.t, I.phi), I.psi),
        "t{phi o psi}",
    )


# -- comprehension


@_law("ConsL", "cwf", "ext p1 pairing cat", "g")
def _cons_l(c: _Ctx, I: Instance):
    m = c.m
    return c.mor(m.compose(m.p1(I.G, I.A), m.extend(I.G, I.A, I.phi, I.g)), I.phi, "p1 o <phi,g>")


@_law("ConsR", "cwf", "ext p2 pairing reindex", "g")
def _cons_r(c: _Ctx, I: Instance):
    m = c.m
    lhs = m.reindex_tm(m.p2(I.G, I.A), m.extend(I.G, I.A, I.phi, I.g))
    return c.dmor(I.D, m.reindex(I.A, I.phi), lhs, I.g, "p2{<phi,g>}")


@_law("ConsNat", "cwf", "ext pairing cat reindex", "g")
def _cons_nat(c: _Ctx, I: Instance):
    m = c.m
    lhs = m.compose(m.extend(I.G, I.A, I.phi, I.g), I.psi)
    rhs = m.extend(I.G, I.A, m.compose(I.phi, I.psi), m.reindex_tm(I.g, I.psi))
    return c.mor(lhs, rhs, "<phi,g> o psi")


@_law("ConsId", "cwf", "ext p1 p2 pairing cat")
def _cons_id(c: _Ctx, I: Instance):
    m = c.m
    ga = m.ext(I.G, I.A)
    return c.mor(m.extend(I.G, I.A, m.p1(I.G, I.A), m.p2(I.G, I.A)), m.ident(ga), "<p1,p2>")


@_law("Strictness", "strict", "ext p1 p2 reindex")
def _strictness(c: _Ctx, I: Instance):
    m = c.m
    ga = m.ext(I.G, I.A)
    a1 = m.reindex(I.A, m.p1(I.G, I.A))
    lhs = m.reindex_tm(m.p2(I.G, I.A), m.p1(ga, a1))
    rhs = m.p2(ga, a1)
    return c.dmor(m.ext(ga, a1), m.reindex(a1, m.p1(ga, a1)), lhs, rhs, "p2{p1} vs p2 on G.A.A{p1}")


# -- unit


@_law("UnitUniq", "unit", "unit terminal reindex")
def _unit_uniq(c: _Ctx, I: Instance):
    m = c.m
    one = m.reindex(m.unit(), m.bang(I.G))
    b = m.unit_bang(I.G)
    for u in c.all(I.G, one):
        w = c.dmor(I.G, one, u, b, "D-morphism into 1{!} differs from the bang")
        if w:
            return w
    return c.dmor(I.D, m.reindex(m.unit(), m.bang(I.D)), m.reindex_tm(b, I.phi), m.unit_bang(I.D), "bang{phi}")


# -- Sigma


def _sig_pair(c: _Ctx, I: Instance):
    m = c.m
    s = m.sigma(I.G, I.A, I.B)
    pr = m.spair(I.G, I.A, I.B, I.phi, I.g, I.h)
    return s, m.extend(I.G, s, I.phi, pr)


@_law("SigmaBeta1", "sigma", "sigma ext pairing reindex", "g h")
def _sigma_beta1(c: _Ctx, I: Instance):
    m = c.m
    _, e = _sig_pair(c, I)
    return c.dmor(I.D, m.reindex(I.A, I.phi), m.reindex_tm(m.varpi1(I.G, I.A, I.B), e), I.g, "varpi1{<phi,[g,h]>}")


@_law("SigmaBeta2", "sigma", "sigma ext pairing reindex", "g h")
def _sigma_beta2(c: _Ctx, I: Instance):
    m = c.m
    _, e = _sig_pair(c, I)
    ty = m.reindex(I.B, m.extend(I.G, I.A, I.phi, I.g))
    return c.dmor(I.D, ty, m.reindex_tm(m.varpi2(I.G, I.A, I.B), e), I.h, "varpi2{<phi,[g,h]>}")


@_law("SigmaEta", "sigma", "sigma ext pairing reindex")
def _sigma_eta(c: _Ctx, I: Instance):
    m = c.m
    s = m.sigma(I.G, I.A, I.B)
    target = m.reindex(s, I.phi)
    for q in c.all(I.D, target):
        e = m.extend(I.G, s, I.phi, q)
        back = m.spair(
            I.G, I.A, I.B, I.phi, m.reindex_tm(m.varpi1(I.G, I.A, I.B), e), m.reindex_tm(m.varpi2(I.G, I.A, I.B), e)
        )
        w = c.dmor(I.D, target, back, q, "[varpi1{<phi,q>}, varpi2{<phi,q>}]")
        if w:
            return w
    return None


def _sigma_moved(m: Model, I: Instance):
    a_phi = m.reindex(I.A, I.phi)
    b_phi = m.reindex(I.B, plus(m, I.phi, I.A))
    return a_phi, b_phi


@_law("Coh0Sigma", "sigma", "sigma reindex ext p1 p2 pairing")
def _coh0(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    return c.dobj(I.D, m.reindex(m.sigma(I.G, I.A, I.B), I.phi), m.sigma(I.D, a_phi, b_phi), "Sigma(A,B){phi}")


def _coh_proj(c: _Ctx, I: Instance, which: int):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    s = m.sigma(I.G, I.A, I.B)
    star = plus(m, I.phi, s)
    proj = m.varpi1 if which == 1 else m.varpi2
    lhs = m.reindex_tm(proj(I.G, I.A, I.B), star)
    rhs = proj(I.D, a_phi, b_phi)
    s2 = m.sigma(I.D, a_phi, b_phi)
    if which == 1:
        ty = m.reindex(a_phi, m.p1(I.D, s2))
    else:
        ty = m.reindex(b_phi, m.extend(I.D, a_phi, m.p1(I.D, s2), m.varpi1(I.D, a_phi, b_phi)))
    return c.dmor(m.ext(I.D, s2), ty, lhs, rhs, f"varpi{which}{{phi*}}")


@_law("Coh1Sigma", "sigma", "sigma reindex ext p1 p2 pairing")
def _coh1(c: _Ctx, I: Instance):
    return _coh_proj(c, I, 1)


@_law("Coh2Sigma", "sigma", "sigma reindex ext p1 p2 pairing")
def _coh2(c: _Ctx, I: Instance):
    return _coh_proj(c, I, 2)


# -- Pi


@_law("PiBeta", "pi", "pi dev lam reindex ext p1 p2 pairing", "f")
def _pi_beta(c: _Ctx, I: Instance):
    m = c.m
    back = lam_inv(m, I.G, I.A, I.B, m.lam(I.G, I.A, I.B, I.f))
    return c.dmor(m.ext(I.G, I.A), I.B, back, I.f, "dev{(Lambda f)^+}")


@_law("PiEta", "pi", "pi dev lam reindex ext p1 p2 pairing")
def _pi_eta(c: _Ctx, I: Instance):
    m = c.m
    p = m.pi(I.G, I.A, I.B)
    for k in c.all(I.G, p):
        w = c.dmor(I.G, p, m.lam(I.G, I.A, I.B, lam_inv(m, I.G, I.A, I.B, k)), k, "Lambda(Lambda^-1 k)")
        if w:
            return w
    return None


def _up_parts(m: Model, I: Instance):
    gc = m.ext(I.G, I.C)
    a1 = m.reindex(I.A, m.p1(I.G, I.C))
    b1 = m.reindex(I.B, plus(m, m.p1(I.G, I.C), I.A))
    return gc, a1, b1


@_law("UP2Pi", "pi", "pi dev lam reindex ext p1 p2 pairing", "hc")
def _up2(c: _Ctx, I: Instance):
    m = c.m
    p = m.pi(I.G, I.A, I.B)
    gc, a1, b1 = _up_parts(m, I)
    lam_h = m.lam(gc, a1, b1, I.hc)
    to_gp = m.extend(I.G, p, m.p1(I.G, I.C), lam_h)
    lhs = m.reindex_tm(m.dev(I.G, I.A, I.B), plus(m, to_gp, m.reindex(I.A, m.p1(I.G, p))))
    return c.dmor(m.ext(gc, a1), b1, lhs, I.hc, "dev{<p1, Lambda h>^+}")


@_law("UP3Pi", "pi", "pi dev lam reindex ext p1 p2 pairing", "hc gd")
def _up3(c: _Ctx, I: Instance):
    m = c.m
    gc, a1, b1 = _up_parts(m, I)
    ge = m.ext(I.G, I.E)
    sub = m.extend(I.G, I.C, m.p1(I.G, I.E), I.gd)
    a_e = m.reindex(I.A, m.p1(I.G, I.E))
    b_e = m.reindex(I.B, plus(m, m.p1(I.G, I.E), I.A))
    lhs = m.lam(ge, a_e, b_e, m.reindex_tm(I.hc, plus(m, sub, a1)))
    rhs = m.reindex_tm(m.lam(gc, a1, b1, I.hc), sub)
    ty = m.reindex(m.pi(I.G, I.A, I.B), m.p1(I.G, I.E))
    return c.dmor(ge, ty, lhs, rhs, "Lambda(h{<p1,g>^+}) vs Lambda(h){<p1,g>}")


@_law("DcompPi1", "pi", "pi reindex ext p1 p2 pairing")
def _dcomp1(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    return c.dobj(I.D, m.reindex(m.pi(I.G, I.A, I.B), I.phi), m.pi(I.D, a_phi, b_phi), "Pi(A,B){phi}")


@_law("DcompPi2", "pi", "pi dev reindex ext p1 p2 pairing")
def _dcomp2(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    p = m.pi(I.G, I.A, I.B)
    lift = plus(m, plus(m, I.phi, p), m.reindex(I.A, m.p1(I.G, p)))
    lhs = m.reindex_tm(m.dev(I.G, I.A, I.B), lift)
    rhs = m.dev(I.D, a_phi, b_phi)
    p2 = m.pi(I.D, a_phi, b_phi)
    dp = m.ext(I.D, p2)
    a2 = m.reindex(a_phi, m.p1(I.D, p2))
    ty = m.reindex(b_phi, plus(m, m.p1(I.D, p2), a_phi))
    return c.dmor(m.ext(dp, a2), ty, lhs, rhs, "dev{phi^{+Pi+A}}")


# ---------------------------------------------------------------- derived-former theorems


@_derived("PairInverse")
def _pair_inverse(c: _Ctx, I: Instance):
    m = c.m
    fwd, back = pair_iso(m, I.G, I.A, I.B)
    ga = m.ext(I.G, I.A)
    return _first(
        c.mor(m.compose(back, fwd), m.ident(m.ext(ga, I.B)), "Pair^-1 o Pair"),
        c.mor(m.compose(fwd, back), m.ident(m.ext(I.G, m.sigma(I.G, I.A, I.B))), "Pair o Pair^-1"),
    )


@_derived("RSigmaComp", "fs")
def _rsig_comp(c: _Ctx, I: Instance):
    m = c.m
    fwd, _ = pair_iso(m, I.G, I.A, I.B)
    s = m.sigma(I.G, I.A, I.B)
    P = m.reindex(I.C, m.p1(I.G, s))
    r = sigma_elim(m, I.G, I.A, I.B, I.fs)
    return c.dmor(m.ext(m.ext(I.G, I.A), I.B), m.reindex(P, fwd), m.reindex_tm(r, fwd), I.fs, "R(f){Pair}")


@_derived("RSigmaUniq", "gs")
def _rsig_uniq(c: _Ctx, I: Instance):
    m = c.m
    fwd, _ = pair_iso(m, I.G, I.A, I.B)
    s = m.sigma(I.G, I.A, I.B)
    P = m.reindex(I.C, m.p1(I.G, s))
    r = sigma_elim(m, I.G, I.A, I.B, m.reindex_tm(I.gs, fwd))
    return c.dmor(m.ext(I.G, s), P, r, I.gs, "R(g{Pair})")


@_derived("RSigmaSubst", "fs")
def _rsig_subst(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    s = m.sigma(I.G, I.A, I.B)
    P = m.reindex(I.C, m.p1(I.G, s))
    star = plus(m, I.phi, s)
    lhs = m.reindex_tm(sigma_elim(m, I.G, I.A, I.B, I.fs), star)
    rhs = sigma_elim(m, I.D, a_phi, b_phi, m.reindex_tm(I.fs, plus_plus(m, I.phi, I.A, I.B)))
    return c.dmor(m.ext(I.D, m.reindex(s, I.phi)), m.reindex(P, star), lhs, rhs, "R(f){phi*}")


@_derived("PairSubst")
def _pair_subst(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    s = m.sigma(I.G, I.A, I.B)
    fwd, _ = pair_iso(m, I.G, I.A, I.B)
    fwd2, _ = pair_iso(m, I.D, a_phi, b_phi)
    ga = m.ext(I.G, I.A)
    return _first(
        c.mor(m.compose(m.p1(I.G, s), fwd), m.compose(m.p1(I.G, I.A), m.p1(ga, I.B)), "p1 o Pair"),
        c.mor(
            m.compose(plus(m, I.phi, s), fwd2),
            m.compose(fwd, plus_plus(m, I.phi, I.A, I.B)),
            "phi* o Pair'",
        ),
    )


@_derived("PiComp", "f t")
def _pi_comp(c: _Ctx, I: Instance):
    m = c.m
    lhs = app(m, I.G, I.A, I.B, m.lam(I.G, I.A, I.B, I.f), I.t)
    bar = section(m, I.G, I.A, I.t)
    return c.dmor(I.G, m.reindex(I.B, bar), lhs, m.reindex_tm(I.f, bar), "App(lambda f, a)")


@_derived("LamUniq", "k")
def _lam_uniq(c: _Ctx, I: Instance):
    m = c.m
    ga = m.ext(I.G, I.A)
    a1 = m.reindex(I.A, m.p1(I.G, I.A))
    b1 = m.reindex(I.B, plus(m, m.p1(I.G, I.A), I.A))
    inner = app(m, ga, a1, b1, m.reindex_tm(I.k, m.p1(I.G, I.A)), m.p2(I.G, I.A))
    return c.dmor(I.G, m.pi(I.G, I.A, I.B), m.lam(I.G, I.A, I.B, inner), I.k, "lambda(App(k{p}, v))")


@_derived("LamSubst", "f")
def _lam_subst(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    lhs = m.reindex_tm(m.lam(I.G, I.A, I.B, I.f), I.phi)
    rhs = m.lam(I.D, a_phi, b_phi, m.reindex_tm(I.f, plus(m, I.phi, I.A)))
    return c.dmor(I.D, m.pi(I.D, a_phi, b_phi), lhs, rhs, "lambda(f){phi}")


@_derived("AppSubst", "k t")
def _app_subst(c: _Ctx, I: Instance):
    m = c.m
    a_phi, b_phi = _sigma_moved(m, I)
    lhs = m.reindex_tm(app(m, I.G, I.A, I.B, I.k, I.t), I.phi)
    rhs = app(m, I.D, a_phi, b_phi, m.reindex_tm(I.k, I.phi), m.reindex_tm(I.t, I.phi))
    ty = m.reindex(I.B, m.compose(section(m, I.G, I.A, I.t), I.phi))
    return c.dmor(I.D, ty, lhs, rhs, "App(k,a){phi}")


@_derived("TripleIso", "ab")
def _triple(c: _Ctx, I: Instance):
    m = c.m
    t, t_inv = sigma_assoc(m, I.G, I.A, I.B, I.ab)
    w1 = None if dobj_eq(m, dobj_compose(m, t_inv, t), dobj_id(m, *t.src)) else "Triple^-1 o Triple != id"
    w2 = None if dobj_eq(m, dobj_compose(m, t, t_inv), dobj_id(m, *t.tgt)) else "Triple o Triple^-1 != id"
    return _first(w1, w2)


@_derived("UnitLawIso")
def _unit_law(c: _Ctx, I: Instance):
    m = c.m
    for to, frm in unit_law(m, I.G, I.A):
        if not dobj_eq(m, dobj_compose(m, frm, to), dobj_id(m, *to.src)):
            return "unit-law iso: back o forth != id"
        if not dobj_eq(m, dobj_compose(m, to, frm), dobj_id(m, *to.tgt)):
            return "unit-law iso: forth o back != id"
    return None


# ---------------------------------------------------------------- reports


@dataclass
class LawResult:
    name: str
    group: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    unknown: int = 0
    witness: str = ""

    @property
    def status(self) -> str:
        if self.failed:
            return "FAIL"
        if self.unknown:
            return "CONDITIONAL"
        if self.checked == 0:
            return "SKIP"
        return "PASS"

    def line(self) -> str:
        out = f"LAW {self.name} {self.status}"
        if self.failed and self.witness:
            out += f" {self.witness}"
        return out

    def as_dict(self) -> dict:
        return {
            "law": self.name,
            "group": self.group,
            "status": self.status,
            "checked": self.checked,
            "failed": self.failed,
            "skipped": self.skipped,
            "witness": self.witness or None,
        }


@dataclass
class LawReport:
    model: str
    results: list[LawResult] = field(default_factory=list)
    instances: int = 0
    seed: Optional[int] = None

    def __getitem__(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def failing(self) -> set[str]:
        return {r.name for r in self.results if r.status == "FAIL"}

    @property
    def ok(self) -> bool:
        return not self.failing

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def text(self) -> str:
        return "\n".join(self.lines())

    def merge(self, other: "LawReport") -> "LawReport":
        by = {r.name: r for r in self.results}
        for r in other.results:
            if r.name in by:
                a = by[r.name]
                a.checked += r.checked
                a.failed += r.failed
                a.skipped += r.skipped
                a.unknown += r.unknown
                a.witness = a.witness or r.witness
            else:
                self.results.append(replace(r))
                by[r.name] = self.results[-1]
        self.instances += other.instances
        return self


def run_laws(
    m: Model,
    smp: Sampler,
    instances: Iterable[Instance],
    laws: Optional[list[Law]] = None,
    limit: int = 64,
    model_name: Optional[str] = None,
) -> LawReport:
    laws = AXIOM_LAWS if laws is None else laws
    results = [LawResult(l.name, l.group) for l in laws]
    count = 0
    for inst in instances:
        count += 1
        for law, res in zip(laws, results):
            if any(getattr(inst, n) is None for n in law.needs):
                res.skipped += 1
                continue
            before = getattr(m, "unknown_events", 0)
            try:
                out = law.fn(_Ctx(m, smp, inst, limit), inst)
            except Exception as exc:  # a structure map refused ill-typed input
                out = f"error: {type(exc).__name__}: {exc}"
            if getattr(m, "unknown_events", 0) != before:
                res.unknown += 1
            res.checked += 1
            if out is not None:
                res.failed += 1
                if not res.witness:
                    res.witness = f"[{inst.label}] {out}"
    return LawReport(model_name or m.name, results, count)


def check_laws(m: Model, smp: Sampler, budget: int = 200, seed: int = 0, limit: int = 64) -> LawReport:
    """Check every interface law on ``budget`` seeded random instances."""
    rng = random.Random(seed)
    insts = (build_instance(m, smp, rng, f"random#{i}") for i in range(budget))
    rep = run_laws(m, smp, insts, AXIOM_LAWS, limit)
    rep.seed = seed
    return rep


def check_derived(m: Model, smp: Sampler, budget: int = 60, seed: int = 0, limit: int = 64) -> LawReport:
    rng = random.Random(seed)
    insts = (build_instance(m, smp, rng, f"random#{i}") for i in range(budget))
    rep = run_laws(m, smp, insts, DERIVED_LAWS, limit)
    rep.seed = seed
    return rep


def law_names() -> list[str]:
    return [l.name for l in AXIOM_LAWS]


def laws_using(tag: str) -> set[str]:
    return {l.name for l in AXIOM_LAWS if tag in l.uses}
