"""Contextual cartesian closed categories and their translation to and from
constant models with dependence.

A finite CtxCCC (:class:`FinCtxCCC`) has simple types over a few finite atoms
as its atomic objects and finite sequences of them as objects.  Products and
exponentials are chosen so that every object is literally ``T x A1 x .. x An``.
:func:`functor_D` turns any CtxCCC into a :class:`cwf.Model` whose D-objects
are the atomic objects, and :func:`functor_S` turns such a model back into a
CtxCCC by right-shifting.  :func:`roundtrip_check` and
:func:`roundtrip_check_d` compare the composites with the originals.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import cwf
from . import syntax as S
from .finset import POINT, CardinalityLimit, FinFun, FinSet, FnGraph, show_atom

# ---------------------------------------------------------------- simple types


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Prod:
    left: "SType"
    right: "SType"

    def __str__(self) -> str:
        return f"({self.left}*{self.right})"


@dataclass(frozen=True)
class Arrow:
    dom: "SType"
    cod: "SType"

    def __str__(self) -> str:
        return f"({self.dom}->{self.cod})"


SType = "Base | Prod | Arrow"


def type_depth(t) -> int:
    if isinstance(t, Base):
        return 0
    if isinstance(t, Prod):
        return 1 + max(type_depth(t.left), type_depth(t.right))
    return 1 + max(type_depth(t.dom), type_depth(t.cod))


def show_obj(d: tuple) -> str:
    return "T" if not d else "T." + ".".join(str(t) for t in d)


class NotDecomposable(Exception):
    pass


@dataclass(frozen=True)
class CMor:
    """A morphism between two objects, carried by a function between their carriers."""

    dom: tuple
    cod: tuple
    fn: FinFun

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self) -> str:
        return f"{show_obj(self.dom)} -> {show_obj(self.cod)} {self.fn!r}"


def _mismatch(what: str, a, b):
    raise ValueError(f"{what}: {show_obj(a)} vs {show_obj(b)}")


# ---------------------------------------------------------------- the finite CtxCCC


class FinCtxCCC:
    """Objects are tuples of simple types; ``()`` is the terminal object ``T``.

    ``Delta x Gamma`` appends the right-shifted type of ``Gamma`` (nested
    pairs) and ``Delta => Gamma`` has one arrow type per atom of ``Gamma``.
    """

    name = "finccc"

    def __init__(self, atoms: dict, depth: int = 3, limit: int = 1 << 16):
        self.atoms = {n: (c if isinstance(c, FinSet) else FinSet(c)) for n, c in atoms.items()}
        self.depth = depth
        self.limit = limit
        self._tcar: dict = {}
        self._ocar: dict = {}

    # -- carriers
    def carrier_ty(self, t) -> FinSet:
        hit = self._tcar.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Base):
            out = self.atoms[t.name]
        elif isinstance(t, Prod):
            l, r = self.carrier_ty(t.left), self.carrier_ty(t.right)
            out = FinSet._sorted(tuple((u, v) for u in l.elems for v in r.elems))
        else:
            d, c = self.carrier_ty(t.dom), self.carrier_ty(t.cod)
            n = len(c) ** len(d)
            if n > self.limit:
                raise CardinalityLimit(n, self.limit, f"carrier of {t}")
            out = FinSet._sorted(
                tuple(FnGraph(tuple(zip(d.elems, ch))) for ch in itertools.product(c.elems, repeat=len(d)))
            )
        self._tcar[t] = out
        return out

    def carrier(self, d: tuple) -> FinSet:
        hit = self._ocar.get(d)
        if hit is not None:
            return hit
        if not d:
            out = FinSet([POINT])
        else:
            pre, last = self.carrier(d[:-1]), self.carrier_ty(d[-1])
            if len(pre) * len(last) > self.limit:
                raise CardinalityLimit(len(pre) * len(last), self.limit, f"carrier of {show_obj(d)}")
            out = FinSet._sorted(tuple((x, v) for x in pre.elems for v in last.elems))
        self._ocar[d] = out
        return out

    def mor(self, dom: tuple, cod: tuple, fn: Callable) -> CMor:
        src = self.carrier(dom)
        return CMor(dom, cod, FinFun(src, self.carrier(cod), tuple(fn(x) for x in src.elems)))

    # -- right-shifted types and the element bijections behind them
    def rtype(self, d: tuple):
        """The single type folding ``d`` (None for ``T``)."""
        if not d:
            return None
        out = d[0]
        for t in d[1:]:
            out = Prod(out, t)
        return out

    def shift(self, d: tuple, e):
        if len(d) == 1:
            return e[1]
        return (self.shift(d[:-1], e[0]), e[1])

    def unshift(self, d: tuple, v):
        if len(d) == 1:
            return (POINT, v)
        return (self.unshift(d[:-1], v[0]), v[1])

    def pair_elem(self, d: tuple, g: tuple, x, y):
        return x if not g else (x, self.shift(g, y))

    def split_elem(self, d: tuple, g: tuple, e):
        return (e, POINT) if not g else (e[0], self.unshift(g, e[1]))

    # -- category
    def terminal(self) -> tuple:
        return ()

    def bang(self, d: tuple) -> CMor:
        return self.mor(d, (), lambda x: POINT)

    def ident(self, d: tuple) -> CMor:
        return self.mor(d, d, lambda x: x)

    def compose(self, f: CMor, g: CMor) -> CMor:
        """``f o g``."""
        if g.cod != f.dom:
            _mismatch("composition of non-composable morphisms", g.cod, f.dom)
        return self.mor(g.dom, f.cod, lambda x: f(g(x)))

    def dom(self, f: CMor) -> tuple:
        return f.dom

    def cod(self, f: CMor) -> tuple:
        return f.cod

    # -- products
    def product(self, d: tuple, g: tuple) -> tuple:
        return d if not g else d + (self.rtype(g),)

    def p1(self, d: tuple, g: tuple) -> CMor:
        return self.mor(self.product(d, g), d, lambda e: self.split_elem(d, g, e)[0])

    def p2(self, d: tuple, g: tuple) -> CMor:
        return self.mor(self.product(d, g), g, lambda e: self.split_elem(d, g, e)[1])

    def pair(self, f: CMor, g: CMor) -> CMor:
        if f.dom != g.dom:
            _mismatch("pairing of morphisms with different domains", f.dom, g.dom)
        return self.mor(f.dom, self.product(f.cod, g.cod), lambda x: self.pair_elem(f.cod, g.cod, f(x), g(x)))

    # -- exponentials
    def arrow_type(self, d: tuple, t):
        r = self.rtype(d)
        return t if r is None else Arrow(r, t)

    def exp(self, d: tuple, g: tuple) -> tuple:
        return tuple(self.arrow_type(d, t) for t in g)

    def _apply(self, d: tuple, fnv, s):
        """Apply one component of an exponential element at a right-shifted argument."""
        return fnv if not d else fnv(s)

    def ev(self, d: tuple, g: tuple) -> CMor:
        e = self.exp(d, g)
        dom = self.product(e, d)

        def run(x):
            k, arg = (x, POINT) if not d else (x[0], x[1])
            comps = []
            while len(comps) < len(g):
                k, f = k
                comps.append(self._apply(d, f, arg))
            out = POINT
            for v in reversed(comps):
                out = (out, v)
            return out

        return self.mor(dom, g, run)

    def curry(self, th: tuple, d: tuple, g: tuple, f: CMor) -> CMor:
        if f.dom != self.product(th, d) or f.cod != g:
            _mismatch("currying a morphism of the wrong shape", f.dom, self.product(th, d))
        args = self.carrier_ty(self.rtype(d)).elems if d else None

        def run(x):
            if args is None:
                return f(x)
            outs = [f((x, s)) for s in args]
            comps = []
            for i in range(len(g), 0, -1):
                col = []
                for o in outs:
                    for _ in range(len(g) - i):
                        o = o[0]
                    col.append(o[1])
                comps.append(FnGraph(tuple(zip(args, col))))
            out = POINT
            for v in reversed(comps):
                out = (out, v)
            return out

        return self.mor(th, self.exp(d, g), run)

    # -- contextual structure
    def is_atomic(self, d: tuple) -> bool:
        return len(d) <= 1

    def decompose(self, d: tuple) -> tuple:
        """The atomic objects ``D1, .., Dn`` with ``d = T x D1 x .. x Dn``."""
        return tuple((t,) for t in d)

    # -- equality, enumeration, display
    def eq_obj(self, a, b) -> bool:
        return a == b

    def eq_mor(self, f, g) -> bool:
        return f == g

    def count_hom(self, d: tuple, g: tuple) -> int:
        return len(self.carrier(g)) ** len(self.carrier(d))

    def hom(self, d: tuple, g: tuple, limit: int = 4096) -> list[CMor]:
        n = self.count_hom(d, g)
        if n > limit:
            raise CardinalityLimit(n, limit, "hom-set")
        src, tgt = self.carrier(d), self.carrier(g)
        return [CMor(d, g, FinFun(src, tgt, tab)) for tab in itertools.product(tgt.elems, repeat=len(src))]

    def random_mor(self, rng: random.Random, d: tuple, g: tuple) -> Optional[CMor]:
        src, tgt = self.carrier(d), self.carrier(g)
        if len(tgt) == 0 and len(src) > 0:
            return None
        return CMor(d, g, FinFun(src, tgt, tuple(rng.choice(tgt.elems) for _ in src.elems)))

    def types(self, depth: int) -> list:
        """Simple types of nesting depth at most ``depth`` (products and arrows)."""
        levels = [[Base(n) for n in self.atoms]]
        for _ in range(depth):
            prev = [t for lvl in levels for t in lvl]
            newest = set(levels[-1])
            layer = []
            for former in (Prod, Arrow):
                for a, b in itertools.product(prev, prev):
                    if a in newest or b in newest:
                        layer.append(former(a, b))
            levels.append(layer)
        return [t for lvl in levels for t in lvl]

    def objects(self, max_len: int, types: Optional[list] = None) -> list[tuple]:
        pool = types if types is not None else [Base(n) for n in self.atoms]
        return [tuple(c) for n in range(max_len + 1) for c in itertools.product(pool, repeat=n)]

    def show(self, x, g=None) -> str:
        text = show_obj(x) if isinstance(x, tuple) else repr(x)
        return text if len(text) <= 160 else text[:157] + "..."


class ReversedDecomposition(FinCtxCCC):
    """Fault injection: reports the atoms of an object in reverse order."""

    name = "finccc-mutant:wrong-decomposition"

    def decompose(self, d: tuple) -> tuple:
        return tuple(reversed(super().decompose(d)))


# ---------------------------------------------------------------- the functor D


class DModel(cwf.Model):
    """The constant model of a CtxCCC: D-objects over any object are its atomic objects.

    A D-morphism ``G => A`` is a morphism ``G -> A``; reindexing a D-object
    does nothing and reindexing a D-morphism is composition.
    """

    def __init__(self, c):
        self.c = c
        self.name = f"D({c.name})"

    # -- category
    def terminal(self):
        return self.c.terminal()

    def bang(self, g):
        return self.c.bang(g)

    def ident(self, g):
        return self.c.ident(g)

    def compose(self, f, g):
        return self.c.compose(f, g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    # -- dependence
    def _atomic(self, a):
        if not self.c.is_atomic(a):
            raise ValueError(f"{show_obj(a)} is not an atomic object")
        return a

    def reindex(self, a, phi):
        return a

    def reindex_tm(self, t, phi):
        return self.c.compose(t, phi)

    def ext(self, g, a):
        return self.c.product(g, self._atomic(a))

    def p1(self, g, a):
        return self.c.p1(g, a)

    def p2(self, g, a):
        return self.c.p2(g, a)

    def extend(self, g, a, phi, t):
        if phi.cod != g:
            _mismatch("extension along a morphism into another object", phi.cod, g)
        if t.cod != a:
            _mismatch("extension by a D-morphism into another D-object", t.cod, a)
        return self.c.pair(phi, t)

    # -- unit
    def unit(self):
        return self.c.terminal()

    def unit_bang(self, g):
        return self.c.bang(g)

    # -- Sigma: the atom T x (A x B)
    def sigma(self, g, a, b):
        T = self.c.terminal()
        return self._atomic(self.c.product(T, self.c.product(a, b)))

    def _unpack(self, a, b):
        T = self.c.terminal()
        ab = self.c.product(a, b)
        return self.c.p2(T, ab)  # T x (A x B) -> A x B

    def varpi1(self, g, a, b):
        s = self.sigma(g, a, b)
        c = self.c
        return c.compose(c.p1(a, b), c.compose(self._unpack(a, b), c.p2(g, s)))

    def varpi2(self, g, a, b):
        s = self.sigma(g, a, b)
        c = self.c
        return c.compose(c.p2(a, b), c.compose(self._unpack(a, b), c.p2(g, s)))

    def spair(self, g, a, b, phi, s, t):
        c = self.c
        inner = c.pair(s, t)
        return c.pair(c.bang(phi.dom), inner)

    # -- Pi: the exponential A => B
    def pi(self, g, a, b):
        return self._atomic(self.c.exp(a, b))

    def dev(self, g, a, b):
        c = self.c
        p = self.pi(g, a, b)
        gp = c.product(g, p)
        gpa = c.product(gp, a)
        q = c.pair(c.compose(c.p2(g, p), c.p1(gp, a)), c.p2(gp, a))
        return c.compose(c.ev(a, b), q)

    def lam(self, g, a, b, f):
        return self.c.curry(g, a, b, f)

    # -- contextual data
    def decompose(self, d) -> tuple:
        return self.c.decompose(d)

    def core(self, g, a):
        return a

    def hom(self, d, g, limit: int = 4096):
        return self.c.hom(d, g, limit)

    def random_mor(self, rng, d, g):
        return self.c.random_mor(rng, d, g)

    # -- equality
    def eq_obj(self, g, h) -> bool:
        return self.c.eq_obj(g, h)

    def eq_mor(self, f, g) -> bool:
        return self.c.eq_mor(f, g)

    def eq_dobj(self, g, a, b) -> bool:
        return self.c.eq_obj(a, b)

    def eq_dmor(self, g, a, s, t) -> bool:
        return self.c.eq_mor(s, t)

    def show(self, x, g=None) -> str:
        return self.c.show(x)


def functor_D(c) -> DModel:
    return DModel(c)


class DSampler(cwf.Sampler):
    """Random objects, atoms and maps of ``D(c)`` for the law harness."""

    def __init__(self, d: DModel, pool: Optional[list] = None, max_len: int = 2):
        self.d = d
        self.pool = pool if pool is not None else d.c.types(1)
        self.max_len = max_len

    def obj(self, rng):
        n = rng.choice(range(self.max_len + 1))
        return tuple(rng.choice(self.pool) for _ in range(n))

    def dobj(self, rng, g):
        return () if rng.random() < 0.15 else (rng.choice(self.pool),)

    def mor(self, rng, d, g):
        return self.d.random_mor(rng, d, g)

    def dmor(self, rng, g, a):
        return self.d.random_mor(rng, g, a)

    def dmors(self, rng, g, a, limit):
        try:
            return self.d.hom(g, a, limit)
        except CardinalityLimit:
            return super().dmors(rng, g, a, limit)


def check_d_laws(c, budget: int = 40, seed: int = 0, limit: int = 64) -> cwf.LawReport:
    d = functor_D(c)
    return cwf.check_laws(d, DSampler(d), budget, seed, limit)


# ---------------------------------------------------------------- right-shifting


@dataclass
class Shift:
    """``R`` over ``T`` with ``r : T.R -> delta`` and ``l : delta => R{!}``."""

    R: object
    r: object
    l: object


def _prefixes(d: cwf.Model, delta) -> list:
    """``[(prefix, D-object)]`` along the decomposition of ``delta``."""
    out = []
    cur = d.terminal()
    for a in d.decompose(delta):
        out.append((cur, a))
        cur = d.ext(cur, a)
    return out


def right_shift(d: cwf.Model, delta) -> Shift:
    """Fold a decomposable object into one D-object over ``T``."""
    parts = _prefixes(d, delta)
    if not parts:
        raise NotDecomposable(f"{d.show(delta)} has no atoms")
    return _shift(d, parts)


def _shift(d: cwf.Model, parts: list) -> Shift:
    T = d.terminal()
    g0, c = parts[0]
    c0 = d.core(g0, c)
    tc = d.ext(T, c0)
    out = Shift(c0, d.ident(tc), d.p2(T, c0))
    cur = tc
    for g, b in parts[1:]:
        rprev = out.R
        trp = d.ext(T, rprev)
        bb = d.reindex(d.core(g, b), d.bang(trp))
        R = d.sigma(T, rprev, bb)
        ts = d.ext(T, R)
        back = d.extend(T, rprev, d.p1(T, R), d.varpi1(T, rprev, bb))
        r = d.extend(g, b, d.compose(out.r, back), d.varpi2(T, rprev, bb))
        nxt = d.ext(g, b)
        l = d.spair(T, rprev, bb, d.bang(nxt), d.reindex_tm(out.l, d.p1(g, b)), d.p2(g, b))
        out = Shift(R, r, l)
        cur = nxt
    return out


def _shift_or_unit(d: cwf.Model, delta) -> Shift:
    """Right-shifting extended to ``T`` by the unit D-object."""
    parts = _prefixes(d, delta)
    if parts:
        return _shift(d, parts)
    T = d.terminal()
    u = d.unit()
    return Shift(u, d.bang(d.ext(T, u)), d.unit_bang(delta))


def right_shift_lemmas(d: cwf.Model, delta) -> list[tuple[str, bool, str]]:
    """The two retraction equations for ``delta``; ``(name, ok, detail)`` rows."""
    rows = []
    T = d.terminal()
    try:
        sh = right_shift(d, delta)
        tr = d.ext(T, sh.R)
        left = d.compose(sh.r, d.extend(T, sh.R, d.bang(delta), sh.l))
        ok1 = d.eq_mor(left, d.ident(delta))
        rows.append(("RightShiftRetract", ok1, "" if ok1 else f"{d.show(left)} != id"))
        right = d.extend(T, sh.R, d.bang(tr), d.reindex_tm(sh.l, sh.r))
        ok2 = d.eq_mor(right, d.ident(tr))
        rows.append(("RightShiftSection", ok2, "" if ok2 else f"{d.show(right)} != id"))
    except Exception as exc:
        msg = f"error: {type(exc).__name__}: {exc}"
        rows += [("RightShiftRetract", False, msg), ("RightShiftSection", False, msg)]
    return rows


# ---------------------------------------------------------------- the functor S


class SCCC:
    """The CtxCCC of a constant contextual model, built from right-shifting."""

    def __init__(self, d):
        self.d = d
        self.name = f"S({d.name})"

    def _R(self, g) -> Shift:
        return _shift_or_unit(self.d, g)

    def terminal(self):
        return self.d.terminal()

    def bang(self, g):
        return self.d.bang(g)

    def ident(self, g):
        return self.d.ident(g)

    def compose(self, f, g):
        return self.d.compose(f, g)

    def dom(self, f):
        return self.d.dom(f)

    def cod(self, f):
        return self.d.cod(f)

    # -- products: delta . R(gamma){!}
    def product(self, delta, gamma):
        d = self.d
        return d.ext(delta, d.reindex(self._R(gamma).R, d.bang(delta)))

    def p1(self, delta, gamma):
        d = self.d
        return d.p1(delta, d.reindex(self._R(gamma).R, d.bang(delta)))

    def p2(self, delta, gamma):
        d = self.d
        sh = self._R(gamma)
        rb = d.reindex(sh.R, d.bang(delta))
        dr = d.ext(delta, rb)
        return d.compose(sh.r, d.extend(d.terminal(), sh.R, d.bang(dr), d.p2(delta, rb)))

    def pair(self, f, g):
        d = self.d
        delta, gamma = d.cod(f), d.cod(g)
        sh = self._R(gamma)
        return d.extend(delta, d.reindex(sh.R, d.bang(delta)), f, d.reindex_tm(sh.l, g))

    # -- exponentials, by recursion on the decomposition of the codomain
    def _exp_parts(self, delta, gamma):
        d = self.d
        T = d.terminal()
        rd = self._R(delta).R
        e = T
        steps = []
        for g, a in _prefixes(d, gamma):
            ac = d.core(g, a)
            P = d.pi(e, d.reindex(rd, d.bang(e)), d.reindex(ac, d.bang(d.ext(e, d.reindex(rd, d.bang(e))))))
            steps.append((e, g, a, ac, P))
            e = d.ext(e, P)
        return rd, steps, e

    def exp(self, delta, gamma):
        return self._exp_parts(delta, gamma)[2]

    def ev(self, delta, gamma):
        d = self.d
        T = d.terminal()
        rd, steps, e = self._exp_parts(delta, gamma)
        if not steps:
            return d.bang(self.product(e, delta))
        return self._ev(delta, rd, steps)

    def _ev(self, delta, rd, steps):
        d = self.d
        T = d.terminal()
        e1, g1, a, ac, P = steps[-1]
        e = d.ext(e1, P)
        rde = d.reindex(rd, d.bang(e))
        dom = d.ext(e, rde)
        q1 = d.p1(e, rde)
        q11 = d.compose(d.p1(e1, P), q1)
        inner = d.extend(e1, d.reindex(rd, d.bang(e1)), q11, d.p2(e, rde))
        prev = self._ev(delta, rd, steps[:-1]) if len(steps) > 1 else d.bang(self.product(e1, delta))
        first = d.compose(prev, inner)
        acb = d.reindex(ac, d.bang(d.ext(T, rd)))
        pt = d.pi(T, rd, acb)
        m1 = d.extend(T, pt, d.bang(dom), d.reindex_tm(d.p2(e1, P), q1))
        m2 = d.extend(d.ext(T, pt), d.reindex(rd, d.p1(T, pt)), m1, d.p2(e, rde))
        second = d.reindex_tm(d.dev(T, rd, acb), m2)
        return d.extend(g1, a, first, second)

    def curry(self, th, delta, gamma, f):
        d = self.d
        rd, steps, e = self._exp_parts(delta, gamma)
        return self._curry(th, rd, steps, f)

    def _curry(self, th, rd, steps, f):
        d = self.d
        if not steps:
            return d.bang(th)
        e1, g1, a, ac, P = steps[-1]
        first = self._curry(th, rd, steps[:-1], d.compose(d.p1(g1, a), f))
        rth = d.reindex(rd, d.bang(th))
        body = d.reindex_tm(d.p2(g1, a), f)
        second = d.lam(th, rth, d.reindex(ac, d.bang(d.ext(th, rth))), body)
        return d.extend(e1, P, first, second)

    # -- contextual structure
    def decompose(self, g) -> tuple:
        d = self.d
        T = d.terminal()
        return tuple(d.ext(T, d.core(p, a)) for p, a in _prefixes(d, g))

    def is_atomic(self, g) -> bool:
        return len(self.decompose(g)) <= 1

    def eq_obj(self, a, b) -> bool:
        return self.d.eq_obj(a, b)

    def eq_mor(self, f, g) -> bool:
        return self.d.eq_mor(f, g)

    def hom(self, a, b, limit: int = 4096):
        return self.d.hom(a, b, limit)

    def random_mor(self, rng, a, b):
        return self.d.random_mor(rng, a, b)

    def show(self, x, g=None) -> str:
        return self.d.show(x)


def functor_S(d) -> SCCC:
    return SCCC(d)


# ---------------------------------------------------------------- reports


class BridgeReport:
    """Named checks with counts, rendered in the same line format as law reports."""

    def __init__(self, name: str):
        self.name = name
        self.results = {}

    def record(self, law: str, ok: bool, witness: str = "", skipped: bool = False):
        r = self.results.setdefault(law, cwf.LawResult(law, self.name))
        if skipped:
            r.skipped += 1
            return
        r.checked += 1
        if not ok:
            r.failed += 1
            r.witness = r.witness or witness

    def attempt(self, law: str, fn: Callable[[], Optional[str]], skip_on=(CardinalityLimit,)):
        try:
            out = fn()
        except skip_on:
            self.record(law, True, skipped=True)
            return
        except Exception as exc:
            out = f"error: {type(exc).__name__}: {exc}"
        self.record(law, out is None, out or "")

    def as_law_report(self) -> cwf.LawReport:
        return cwf.LawReport(self.name, list(self.results.values()))

    @property
    def failing(self) -> set[str]:
        return {n for n, r in self.results.items() if r.status == "FAIL"}

    @property
    def ok(self) -> bool:
        return not self.failing

    def __getitem__(self, law: str) -> cwf.LawResult:
        return self.results[law]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results.values()]

    def text(self) -> str:
        return "\n".join(self.lines())


def _neq(what: str, show, a, b) -> Optional[str]:
    return None if a == b else f"{what}: {show(a)} != {show(b)}"


# ---------------------------------------------------------------- strict CCC laws


def check_ccc_laws(
    c, objects: list, seed: int = 0, samples: int = 2, report: Optional[BridgeReport] = None
) -> BridgeReport:
    """Product, exponential and contextual laws of a CtxCCC over ``objects``."""
    rep = report or BridgeReport(f"ccc:{c.name}")
    rng = random.Random(seed)
    T = c.terminal()
    show = c.show
    for delta in objects:
        rep.attempt("CtxDecomposition", lambda: _decomposition(c, delta))
        rep.attempt(
            "CccTerminal",
            lambda: None if all(c.eq_mor(f, c.bang(delta)) for f in c.hom(delta, T, 64)) else "a second map into T",
        )
    for th, delta, gamma in _triples(objects, rng, 3 * len(objects)):

        def prods():
            f = c.random_mor(rng, th, delta)
            g = c.random_mor(rng, th, gamma)
            if f is None or g is None:
                return None
            fg = c.pair(f, g)
            return (
                _neq("p1 o <f,g>", show, c.compose(c.p1(delta, gamma), fg), f)
                or _neq("p2 o <f,g>", show, c.compose(c.p2(delta, gamma), fg), g)
            )

        def prod_eta():
            h = c.random_mor(rng, th, c.product(delta, gamma))
            if h is None:
                return None
            back = c.pair(c.compose(c.p1(delta, gamma), h), c.compose(c.p2(delta, gamma), h))
            return _neq("<p1 o h, p2 o h>", show, back, h)

        def beta():
            th_d = c.product(th, delta)
            f = c.random_mor(rng, th_d, gamma)
            if f is None:
                return None
            lam = c.curry(th, delta, gamma, f)
            lhs = c.compose(c.ev(delta, gamma), c.pair(c.compose(lam, c.p1(th, delta)), c.p2(th, delta)))
            return _neq("ev o (curry f x id)", show, lhs, f)

        def eta():
            k = c.random_mor(rng, th, c.exp(delta, gamma))
            if k is None:
                return None
            e = c.exp(delta, gamma)
            inner = c.compose(c.ev(delta, gamma), c.pair(c.compose(k, c.p1(th, delta)), c.p2(th, delta)))
            return _neq("curry(ev o (k x id))", show, c.curry(th, delta, gamma, inner), k)

        for _ in range(samples):
            rep.attempt("CccProduct", prods)
            rep.attempt("CccProductEta", prod_eta)
            rep.attempt("CccBeta", beta)
            rep.attempt("CccEta", eta)
    return rep


def _decomposition(c, delta) -> Optional[str]:
    parts = c.decompose(delta)
    if not all(c.is_atomic(p) and p != c.terminal() for p in parts):
        return f"non-atomic piece in the decomposition of {c.show(delta)}"
    rebuilt = c.terminal()
    for p in parts:
        rebuilt = c.product(rebuilt, p)
    return _neq("T x D1 x .. x Dn", c.show, rebuilt, delta)


def _triples(objects: list, rng: random.Random, n: int):
    for _ in range(n):
        yield rng.choice(objects), rng.choice(objects), rng.choice(objects)


# ---------------------------------------------------------------- round trips


def roundtrip_check(
    c, objects: Optional[list] = None, seed: int = 0, samples: int = 2, report: Optional[BridgeReport] = None
) -> BridgeReport:
    """``S(D(c))`` against ``c`` on the nose, plus the right-shift equations in ``D(c)``."""
    objects = objects if objects is not None else c.objects(c.depth)
    rep = report or BridgeReport(f"roundtrip:{c.name}")
    d = functor_D(c)
    s = functor_S(d)
    rng = random.Random(seed)
    show = c.show
    for delta in objects:
        rep.attempt("SDAtoms", lambda: None if s.is_atomic(delta) == c.is_atomic(delta) else "atomicity differs")
        rep.attempt("SDDecomposition", lambda: _neq("decomposition", show, s.decompose(delta), c.decompose(delta)))
        if delta != c.terminal():
            for name, ok, detail in right_shift_lemmas(d, delta):
                rep.record(name, ok, detail)
    pairs = [(a, b) for a in objects for b in objects]
    for delta, gamma in pairs:
        rep.attempt("SDProductObject", lambda: _neq("product", show, s.product(delta, gamma), c.product(delta, gamma)))
        rep.attempt(
            "SDProjections",
            lambda: _neq("p1", show, s.p1(delta, gamma), c.p1(delta, gamma))
            or _neq("p2", show, s.p2(delta, gamma), c.p2(delta, gamma)),
        )
        rep.attempt("SDExponentialObject", lambda: _neq("exponential", show, s.exp(delta, gamma), c.exp(delta, gamma)))
        rep.attempt("SDEvaluation", lambda: _neq("ev", show, s.ev(delta, gamma), c.ev(delta, gamma)))
        th = rng.choice(objects)

        def pairing():
            f, g = c.random_mor(rng, th, delta), c.random_mor(rng, th, gamma)
            if f is None or g is None:
                return None
            return _neq("pairing", show, s.pair(f, g), c.pair(f, g))

        def currying():
            f = c.random_mor(rng, c.product(th, delta), gamma)
            if f is None:
                return None
            return _neq("currying", show, s.curry(th, delta, gamma, f), c.curry(th, delta, gamma, f))

        for _ in range(samples):
            rep.attempt("SDPairing", pairing)
            rep.attempt("SDCurrying", currying)
    return rep


def eps(d, gamma, a, f):
    """``D(S(d))(gamma, T.a) -> d(gamma, a{!})``: a map into ``T.a`` to its second projection."""
    T = d.terminal()
    if d.eq_obj(a, d.unit()):
        return d.unit_bang(gamma)
    return d.reindex_tm(d.p2(T, a), f)


def eps_inv(d, gamma, a, g):
    T = d.terminal()
    if d.eq_obj(a, d.unit()):
        return d.bang(gamma)
    return d.extend(T, a, d.bang(gamma), g)


def roundtrip_check_d(
    d, objects: list, cores: list, limit: int = 4096, report: Optional[BridgeReport] = None
) -> BridgeReport:
    """The comparison ``D(S(d)) -> d``: mutually inverse on D-objects and D-morphisms, structure-preserving."""
    rep = report or BridgeReport(f"epsilon:{d.name}")
    s = functor_S(d)
    dd = functor_D(s)
    T = d.terminal()
    show = d.show

    def dobj_eps(g, x):
        parts = s.decompose(x)
        if not parts:
            return d.reindex(d.unit(), d.bang(g))
        (p, a), = _prefixes(d, x)
        return d.reindex(d.core(p, a), d.bang(g))

    def dobj_eps_inv(g, a):
        c0 = d.core(g, a)
        return T if d.eq_obj(c0, d.unit()) else d.ext(T, c0)

    for g in objects:
        for a in cores:
            ag = d.reindex(a, d.bang(g))
            ta = dobj_eps_inv(g, ag)
            rep.attempt(
                "EpsDObjects",
                lambda: _neq("eps(eps^-1 A)", show, dobj_eps(g, ta), ag) or _neq("eps^-1(eps T.A)", show, dobj_eps_inv(g, dobj_eps(g, ta)), ta),
            )
            rep.attempt("EpsComprehension", lambda: _neq("G.(T.A) vs G.A", show, dd.ext(g, ta), d.ext(g, ag)))

            def morphisms():
                src = dd.hom(g, ta, limit)
                images = [eps(d, g, a, f) for f in src]
                for f, img in zip(src, images):
                    if eps_inv(d, g, a, img) != f:
                        return f"eps^-1(eps f) != f for {show(f)}"
                tgt = d.hom(g, ag, limit)
                if set(images) != set(tgt) or len(set(images)) != len(src):
                    return f"not a bijection: {len(src)} maps into T.A, {len(tgt)} D-morphisms, {len(set(images))} images"
                for t in tgt:
                    if eps(d, g, a, eps_inv(d, g, a, t)) != t:
                        return f"eps(eps^-1 t) != t for {show(t)}"
                return None

            rep.attempt("EpsBijection", morphisms)
            rep.attempt(
                "EpsProjection",
                lambda: _neq("eps(p2)", show, eps(d, dd.ext(g, ta), a, dd.p2(g, ta)), d.p2(g, ag)),
            )
    for g in objects:
        for a, b in itertools.product(cores, cores):
            ag, bg = d.reindex(a, d.bang(g)), d.reindex(b, d.bang(d.ext(g, a)))
            ta, tb = dobj_eps_inv(g, ag), dobj_eps_inv(g, b)
            rep.attempt("EpsSigma", lambda: _neq("eps(Sigma)", show, dobj_eps(g, dd.sigma(g, ta, tb)), d.sigma(g, ag, bg)))
            rep.attempt("EpsPi", lambda: _neq("eps(Pi)", show, dobj_eps(g, dd.pi(g, ta, tb)), d.pi(g, ag, bg)))

            def projections():
                sig = d.sigma(g, ag, bg)
                gs = d.ext(g, sig)
                c = d.core(g, sig)
                w1 = eps(d, gs, a, dd.varpi1(g, ta, tb))
                w2 = eps(d, gs, b, dd.varpi2(g, ta, tb))
                return _neq("eps(varpi1)", show, w1, d.varpi1(g, ag, bg)) or _neq("eps(varpi2)", show, w2, d.varpi2(g, ag, bg))

            def evaluation():
                pg = d.pi(g, ag, bg)
                dom = d.ext(d.ext(g, pg), d.reindex(ag, d.p1(g, pg)))
                return _neq("eps(dev)", show, eps(d, dom, b, dd.dev(g, ta, tb)), d.dev(g, ag, bg))

            rep.attempt("EpsSigmaProjections", projections)
            rep.attempt("EpsDev", evaluation)
    return rep


# ---------------------------------------------------------------- instances and fault injection


def parse_ctxccc(text: str) -> FinCtxCCC:
    """Instance files: ``atom NAME = {e1, e2}`` lines and a ``depth N`` line; ``#`` starts a comment."""
    from .finset import LiteralError, parse_literal

    atoms: dict = {}
    depth = 3
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"atom\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)", line)
        if m:
            lit = parse_literal(m.group(2))
            if not isinstance(lit, FinSet):
                raise LiteralError(f"line {n}: atom {m.group(1)} must be a finite set")
            atoms[m.group(1)] = lit
            continue
        m = re.fullmatch(r"depth\s+(\d+)", line)
        if m:
            depth = int(m.group(1))
            continue
        raise LiteralError(f"line {n}: expected 'atom NAME = {{..}}' or 'depth N'")
    if not atoms:
        raise LiteralError("no atoms declared")
    return FinCtxCCC(atoms, depth)


def default_instance() -> FinCtxCCC:
    return FinCtxCCC({"o": FinSet([0, 1]), "i": FinSet(["a"])}, depth=3)


def bridge_objects(c: FinCtxCCC) -> list:
    """Every context of base atoms up to the depth bound, plus two compound atoms."""
    base = [Base(n) for n in c.atoms]
    objs = c.objects(c.depth, base)
    extra = [(Prod(base[0], base[-1]),), (Arrow(base[0], base[-1]),)]
    return objs + [e for e in extra if e not in objs]


def bridge_cores(c: FinCtxCCC) -> list:
    base = [(Base(n),) for n in c.atoms]
    b0 = Base(next(iter(c.atoms)))
    return [()] + base + [(Prod(b0, b0),), (Arrow(b0, b0),)]


def bridge_suite(c, seed: int = 0, limit: int = 4096) -> BridgeReport:
    """The full instance-level check: CCC laws, S(D(c)) = c, right-shifting, and the epsilon comparison."""
    objs = bridge_objects(c)
    rep = BridgeReport(f"bridge:{c.name}")
    check_ccc_laws(c, objs, seed, report=rep)
    roundtrip_check(c, objs, seed, report=rep)
    small = [o for o in objs if len(o) <= 2]
    roundtrip_check_d(functor_D(c), small, bridge_cores(c), limit, report=rep)
    return rep


# checks that consume the reported decomposition of objects
DECOMPOSITION_CHECKS = {
    "CtxDecomposition",
    "SDDecomposition",
    "SDAtoms",
    "SDProductObject",
    "SDProjections",
    "SDExponentialObject",
    "SDEvaluation",
    "SDPairing",
    "SDCurrying",
    "RightShiftRetract",
    "RightShiftSection",
    "EpsDObjects",
    "EpsComprehension",
    "EpsBijection",
    "EpsProjection",
    "EpsSigma",
    "EpsPi",
    "EpsSigmaProjections",
    "EpsDev",
}


@dataclass
class BridgeMutantOutcome:
    mutant: str
    primary: str
    newly_failing: set
    allowed: set

    @property
    def caught(self) -> bool:
        return self.primary in self.newly_failing and self.newly_failing <= self.allowed

    def line(self) -> str:
        verdict = "CAUGHT" if self.caught else "MISSED"
        return f"MUTANT {self.mutant} {verdict} failing={','.join(sorted(self.newly_failing)) or '-'}"


def run_decomposition_mutant(seed: int = 0, baseline: Optional[BridgeReport] = None) -> BridgeMutantOutcome:
    good = default_instance()
    if baseline is None:
        baseline = bridge_suite(good, seed)
    bad = ReversedDecomposition(good.atoms, good.depth)
    rep = bridge_suite(bad, seed)
    return BridgeMutantOutcome(
        "wrong-decomposition", "CtxDecomposition", rep.failing - baseline.failing, set(DECOMPOSITION_CHECKS)
    )


# ---------------------------------------------------------------- the simply typed fragment


class NotSimple(Exception):
    pass


def simple_type(ty, cons: set) -> object:
    """A closed MLTT type built from Unit, non-dependent Sigma/Pi and nullary constants."""
    match ty:
        case S.Unit():
            return ("unit",)
        case S.Sigma(_, a, b) | S.Pi(_, a, b):
            if 0 in S.free_vars(b):
                raise NotSimple("dependent type")
            tag = "prod" if isinstance(ty, S.Sigma) else "arrow"
            return (tag, simple_type(a, cons), simple_type(S.shift(b, -1), cons))
        case S.TConst(name, args):
            if args or name not in cons:
                raise NotSimple(f"type constant {name} is not a base atom")
            return ("base", name)
    raise NotSimple(f"not a simple type: {ty!r}")


class Classical:
    """The textbook semantics of the simply typed fragment in a CtxCCC."""

    def __init__(self, c: FinCtxCCC, checker):
        self.c = c
        self.ch = checker

    def obj(self, st) -> tuple:
        c = self.c
        match st:
            case ("unit",):
                return c.terminal()
            case ("base", n):
                return (Base(n),)
            case ("prod", a, b):
                return c.product(self.obj(a), self.obj(b))
            case ("arrow", a, b):
                return c.exp(self.obj(a), self.obj(b))
        raise NotSimple(str(st))

    def st(self, g, ty):
        return simple_type(self.ch.normalize_type(g, ty), set(self.c.atoms))

    def ctx(self, g: S.Ctx) -> tuple:
        out = self.c.terminal()
        for i, e in enumerate(g.entries):
            out = self.c.product(out, self.obj(self.st(g.prefix(i), e.ty)))
        return out

    def tm(self, g: S.Ctx, t, ty):
        c = self.c
        gg = self.ctx(g)
        nty = self.ch.normalize_type(g, ty)
        match t:
            case S.Var(i):
                pre = g.prefix(len(g) - 1)
                last = self.obj(self.st(pre, g.entries[-1].ty))
                if i == 0:
                    return c.p2(self.ctx(pre), last)
                inner = self.tm(pre, S.Var(i - 1), pre.lookup(i - 1))
                return c.compose(inner, c.p1(self.ctx(pre), last))
            case S.Star():
                return c.bang(gg)
            case S.Lam(x, body):
                a, b = nty.dom, nty.cod
                body_d = self.tm(g.extend(x, a), body, b)
                return c.curry(gg, self.obj(self.st(g, a)), self.obj(self.st(g.extend(x, a), b)), body_d)
            case S.App(f, arg):
                fty = self.ch.normalize_type(g, self.ch.infer_term(g, f)) if not isinstance(f, S.Lam) else None
                if fty is None:
                    dom = self.ch.infer_term(g, arg)
                    fty = S.Pi(f.name, dom, S.shift(ty, 1))
                a = self.obj(self.st(g, fty.dom))
                b = self.obj(self.st(g.extend(fty.name, fty.dom), fty.cod))
                return c.compose(c.ev(a, b), c.pair(self.tm(g, f, fty), self.tm(g, arg, fty.dom)))
            case S.Pair(p, q):
                return c.pair(self.tm(g, p, nty.dom), self.tm(g, q, S.instantiate(nty.cod, p)))
            case S.RSig(z, motive, x, y, br, p, ann):
                h = self.ch.normalize_type(g, ann if ann is not None else self.ch.infer_term(g, p))
                a = self.obj(self.st(g, h.dom))
                b = self.obj(self.st(g.extend(h.name, h.dom), h.cod))
                tp = self.tm(g, p, h)
                gx = g.extend(x, h.dom)
                gxy = gx.extend(y, h.cod)
                into = c.pair(c.pair(c.ident(gg), c.compose(c.p1(a, b), tp)), c.compose(c.p2(a, b), tp))
                br_ty = S.subst_top(motive, (S.Pair(S.Var(1, x), S.Var(0, y)),), tail=2)
                return c.compose(self.tm(gxy, br, br_ty), into)
        raise NotSimple(f"not a simply typed term: {t!r}")


class _Codec:
    """Canonical values of simple types, read off either semantics' carriers."""

    def __init__(self, c: FinCtxCCC):
        self.c = c

    def values(self, st) -> list:
        match st:
            case ("unit",):
                return [()]
            case ("base", n):
                return list(self.c.atoms[n].elems)
            case ("prod", a, b):
                return [(u, v) for u in self.values(a) for v in self.values(b)]
            case ("arrow", a, b):
                dom = self.values(a)
                return [frozenset(zip(dom, ch)) for ch in itertools.product(self.values(b), repeat=len(dom))]

    # classical objects: decode through the CCC structure maps
    def cl_decode(self, st, obj, e):
        c = self.c
        match st:
            case ("unit",):
                return ()
            case ("base", _):
                return e[1]
            case ("prod", a, b):
                oa, ob = cl_obj(c, a), cl_obj(c, b)
                x, y = c.split_elem(oa, ob, e)
                return (self.cl_decode(a, oa, x), self.cl_decode(b, ob, y))
            case ("arrow", a, b):
                oa, ob = cl_obj(c, a), cl_obj(c, b)
                ev = c.ev(oa, ob)
                return frozenset(
                    (self.cl_decode(a, oa, u), self.cl_decode(b, ob, ev(c.pair_elem(obj, oa, e, u))))
                    for u in c.carrier(oa).elems
                )

    # atoms of D(c): decode an element of the carrier of an atomic object
    def d_decode(self, st, atom, e):
        c = self.c
        if not atom:
            return self._unit_like(st)
        v = e[1]
        return self._d_val(st, atom[0], v)

    def _unit_like(self, st):
        match st:
            case ("unit",):
                return ()
            case ("prod", a, b):
                return (self._unit_like(a), self._unit_like(b))
            case ("arrow", a, b):
                return frozenset((u, self._unit_like(b)) for u in self.values(a))
        raise NotSimple("inhabited type with a terminal carrier")

    def _d_val(self, st, ty, v):
        c = self.c
        match st:
            case ("base", _):
                return v
            case ("prod", a, b):
                ua, ub = d_atom(c, a), d_atom(c, b)
                if not ua:
                    return (self._unit_like(a), self._d_val(b, ub[0], v))
                if not ub:
                    return (self._d_val(a, ua[0], v), self._unit_like(b))
                return (self._d_val(a, ua[0], v[0]), self._d_val(b, ub[0], v[1]))
            case ("arrow", a, b):
                ua, ub = d_atom(c, a), d_atom(c, b)
                if not ub:
                    return self._unit_like(st)
                if not ua:
                    return frozenset(((self._unit_like(a), self._d_val(b, ub[0], v)),))
                return frozenset((self._d_val(a, ua[0], u), self._d_val(b, ub[0], v(u))) for u in c.carrier_ty(ua[0]).elems)
        raise NotSimple(str(st))


def cl_obj(c: FinCtxCCC, st) -> tuple:
    match st:
        case ("unit",):
            return c.terminal()
        case ("base", n):
            return (Base(n),)
        case ("prod", a, b):
            return c.product(cl_obj(c, a), cl_obj(c, b))
        case ("arrow", a, b):
            return c.exp(cl_obj(c, a), cl_obj(c, b))


def d_atom(c: FinCtxCCC, st) -> tuple:
    """The atomic object that ``D(c)`` assigns to a simple type."""
    d = functor_D(c)
    T = c.terminal()
    match st:
        case ("unit",):
            return d.unit()
        case ("base", n):
            return (Base(n),)
        case ("prod", a, b):
            return d.sigma(T, d_atom(c, a), d_atom(c, b))
        case ("arrow", a, b):
            return d.pi(T, d_atom(c, a), d_atom(c, b))


@dataclass
class StlcRow:
    label: str
    ok: bool
    detail: str = ""


def stlc_suite(c: FinCtxCCC, sig, judgements: Iterable) -> list[StlcRow]:
    """Evaluate each ``(ctx, term, type)`` through ``D(c)`` and classically in ``c``; compare canonical graphs."""
    from .interpreter import Interpreter, Structure, TermJ
    from .parser import pretty

    d = functor_D(c)
    T = c.terminal()
    structure = Structure({n: (Base(n),) for n in sig.type_consts if n in c.atoms}, {})
    it = Interpreter(d, sig, structure)
    cl = Classical(c, it.checker)
    codec = _Codec(c)
    rows = []
    for g, t, ty in judgements:
        label = f"{pretty(t, g, True)} : {pretty(ty, g, True)}"
        verdict = it.checker.check_term(g, t, ty)
        if not verdict.ok:
            rows.append(StlcRow(label, False, f"not derivable: {verdict.describe()}"))
            continue
        try:
            sts = [cl.st(g.prefix(i), e.ty) for i, e in enumerate(g.entries)]
            st = cl.st(g, ty)
            den = it.interpret(TermJ(g, t, ty))
            if not den.ok:
                rows.append(StlcRow(label, False, str(den)))
                continue
            atom = d_atom(c, st)
            via_eps = eps_inv(d, den.value.dom, atom, den.value)
            classical = cl.tm(g, t, ty)
            mism = _compare(c, codec, sts, st, via_eps, classical)
            rows.append(StlcRow(label, mism is None, mism or ""))
        except Exception as exc:
            rows.append(StlcRow(label, False, f"error: {type(exc).__name__}: {exc}"))
    return rows


def _compare(c, codec: _Codec, sts: list, st, dmor, cmor) -> Optional[str]:
    """Both maps as graphs on canonical environments."""
    d = functor_D(c)
    env_d = {(): POINT}
    env_c = {(): POINT}
    cur_d, cur_c = c.terminal(), c.terminal()
    for s in sts:
        atom, obj = d_atom(c, s), cl_obj(c, s)
        dec_d = {codec.d_decode(s, atom, e): e for e in c.carrier(atom).elems} if atom else {codec._unit_like(s): POINT}
        dec_c = {codec.cl_decode(s, obj, e): e for e in c.carrier(obj).elems} if obj else {codec._unit_like(s): POINT}
        env_d = {k + (v,): c.pair_elem(cur_d, atom, x, dec_d[v]) for k, x in env_d.items() for v in dec_d}
        env_c = {k + (v,): c.pair_elem(cur_c, obj, x, dec_c[v]) for k, x in env_c.items() for v in dec_c}
        cur_d, cur_c = d.ext(cur_d, atom), c.product(cur_c, obj)
    atom, obj = d_atom(c, st), cl_obj(c, st)
    for key in env_d:
        out_d = codec.d_decode(st, atom, dmor(env_d[key])) if atom else codec._unit_like(st)
        out_c = codec.cl_decode(st, obj, cmor(env_c[key])) if obj else codec._unit_like(st)
        if out_d != out_c:
            return f"at {key}: through D(c) {out_d}, classically {out_c}"
    return None
