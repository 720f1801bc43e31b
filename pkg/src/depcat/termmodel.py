"""The term model: contexts, context morphisms, types and terms modulo judgmental equality."""

from __future__ import annotations

import itertools
import random
import warnings
from typing import Iterable, Optional

from . import cwf
from . import syntax as S
from .checker import Checker, Unknown
from .signature import EMPTY_SIGNATURE, ValidatedSignature, validate_signature


def _fresh(g: S.Ctx, base: str = "v") -> str:
    taken = set(g.names())
    k = len(g)
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


class TermModel(cwf.Model):
    """Equality of every kind of value is decided by the checker."""

    name = "term"

    def __init__(self, sig: Optional[ValidatedSignature] = None, fuel: Optional[int] = None):
        self.sig = sig if sig is not None else validate_signature(EMPTY_SIGNATURE)
        self.checker = Checker(self.sig, fuel)
        self.unknown_events = 0

    # -- verdicts to booleans
    def _decide(self, verdict) -> bool:
        if isinstance(verdict, Unknown):
            self.unknown_events += 1
            warnings.warn("term-model equality undecided (rewrite fuel exhausted); treated as unequal")
            return False
        return verdict.ok

    # -- category
    def terminal(self):
        return S.EMPTY

    def bang(self, g):
        return S.CtxMor(g, S.EMPTY, ())

    def ident(self, g):
        return S.id_cm(g)

    def _nf(self, e):
        # representatives stay beta-normal: the bidirectional checker cannot
        # infer a redex such as (\x. \y. b) a, while its normal form is checkable
        try:
            return S.beta_nf(e)
        except S.BetaBudget:
            self.unknown_events += 1
            return e

    def compose(self, f, g):
        return S.CtxMor(g.dom, f.cod, tuple(self._nf(S.gen_subst(c, g)) for c in f.comps))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    # -- dependence
    def reindex(self, a, phi):
        return self._nf(S.gen_subst(a, phi))

    def reindex_tm(self, t, phi):
        return self._nf(S.gen_subst(t, phi))

    def ext(self, g, a):
        return g.extend(_fresh(g), a)

    def p1(self, g, a):
        return S.weaken_cm(g, _fresh(g), a)

    def p2(self, g, a):
        return S.Var(0, _fresh(g))

    def extend(self, g, a, phi, t):
        return S.CtxMor(phi.dom, self.ext(g, a), phi.comps + (t,))

    # -- unit
    def unit(self):
        return S.Unit()

    def unit_bang(self, g):
        return S.Star()

    # -- Sigma
    def sigma(self, g, a, b):
        return S.Sigma(_fresh(g), a, b)

    def varpi1(self, g, a, b):
        return S.proj1(S.Var(0), S.shift(a, 1))

    def varpi2(self, g, a, b):
        return S.proj2(S.Var(0), S.shift(a, 1), S.shift(b, 1, 1))

    def spair(self, g, a, b, phi, s, t):
        return S.Pair(s, t)

    # -- Pi
    def pi(self, g, a, b):
        return S.Pi(_fresh(g), a, b)

    def dev(self, g, a, b):
        return S.App(S.Var(1), S.Var(0))

    def lam(self, g, a, b, f):
        return S.Lam(_fresh(g), f)

    # -- equality
    def eq_obj(self, g, h) -> bool:
        return self._decide(self.checker.equal_ctxs(g, h))

    def eq_mor(self, f, g) -> bool:
        if len(f.comps) != len(g.comps):
            return False
        if not (self.eq_obj(f.dom, g.dom) and self.eq_obj(f.cod, g.cod)):
            return False
        for i, (s, t) in enumerate(zip(f.comps, g.comps)):
            ty = S.gen_subst(f.cod.entries[i].ty, S.CtxMor(f.dom, f.cod.prefix(i), f.comps[:i]))
            if not self._decide(self.checker.equal_terms(f.dom, s, t, ty)):
                return False
        return True

    def eq_dobj(self, g, a, b) -> bool:
        return self._decide(self.checker.equal_types(g, a, b))

    def eq_dmor(self, g, a, s, t) -> bool:
        return self._decide(self.checker.equal_terms(g, s, t, a))

    def show(self, x, g=None) -> str:
        from .parser import pretty, pretty_ctx

        if isinstance(x, S.Ctx):
            return pretty_ctx(x)
        if isinstance(x, S.CtxMor):
            names = x.dom.names()
            return "(" + ", ".join(pretty(c, names) for c in x.comps) + ")"
        try:
            names = g.names() if g is not None else [f"v{i}" for i in range(64)]
            return pretty(x, names)
        except Exception:
            return repr(x)


def term_model(sig: Optional[ValidatedSignature] = None, fuel: Optional[int] = None) -> TermModel:
    return TermModel(sig, fuel)


class WrongV(TermModel):
    """Second projection pointing one variable too far out."""

    name = "term-mutant:wrong-v"

    def p2(self, g, a):
        return S.Var(1 if len(g) else 0)


# ---------------------------------------------------------------- type pool and inhabitants


def closed_types(depth: int) -> list[S.Ty]:
    """Closed types over the empty signature of depth at most ``depth``."""
    levels = [[S.Unit()]]
    for _ in range(depth):
        prev = [t for lvl in levels for t in lvl]
        newest = levels[-1]
        layer = []
        for former in (S.Pi, S.Sigma):
            for a, b in itertools.product(prev, prev):
                if a in newest or b in newest:
                    layer.append(former("x", a, S.shift(b, 1)))
        levels.append(layer)
    return [t for lvl in levels for t in lvl]


def contexts(types: list[S.Ty], max_len: int) -> list[S.Ctx]:
    out = []
    for n in range(max_len + 1):
        for combo in itertools.product(types, repeat=n):
            out.append(S.Ctx(tuple(S.Entry(f"x{i}", t) for i, t in enumerate(combo))))
    return out


class TermSampler(cwf.Sampler):
    """Builds well-typed inhabitants by type-directed random search."""

    def __init__(self, m: TermModel, pool: Optional[list] = None, depth: int = 3):
        self.m = m
        self.pool = pool if pool is not None else closed_types(2)
        self.depth = depth

    def _nf(self, g, a):
        return self.m.checker.normalize_type(g, a)

    def _sig_types(self, rng, g) -> list:
        out = []
        for name, tc in self.m.sig.type_consts.items():
            args = self._fill(rng, g, tc.tele)
            if args is not None:
                out.append(S.TConst(name, args))
        return out

    def _fill(self, rng, g, tele: S.Ctx, depth: int = 2):
        args: list = []
        for i, ent in enumerate(tele.entries):
            ty = S.gen_subst(ent.ty, S.CtxMor(g, tele.prefix(i), tuple(args)))
            a = self.inhabit(rng, g, ty, depth)
            if a is None:
                return None
            args.append(a)
        return tuple(args)

    def obj(self, rng):
        n = rng.choice((0, 1, 1, 2))
        g = S.EMPTY
        for _ in range(n):
            g = g.extend(_fresh(g, "x"), self.dobj(rng, g))
        return g

    def dobj(self, rng, g):
        extra = self._sig_types(rng, g)
        if extra and rng.random() < 0.6:
            return rng.choice(extra)
        return rng.choice(self.pool)

    def mor(self, rng, d, g):
        comps: list = []
        for i, ent in enumerate(g.entries):
            ty = S.gen_subst(ent.ty, S.CtxMor(d, g.prefix(i), tuple(comps)))
            t = self.inhabit(rng, d, ty)
            if t is None:
                return None
            comps.append(t)
        return S.CtxMor(d, g, tuple(comps))

    def dmor(self, rng, g, a):
        return self.inhabit(rng, g, a)

    def dmors(self, rng, g, a, limit):
        out: list = []
        for _ in range(min(limit, 6)):
            t = self.inhabit(rng, g, a)
            if t is not None and t not in out:
                out.append(t)
        return out

    # -- search
    def _neutrals(self, rng, g, depth: int):
        """Variables and one round of eliminations on them, with their types."""
        found = []
        for i in range(len(g)):
            found.append((S.Var(i, g.entries[len(g) - 1 - i].name), g.lookup(i)))
        more = []
        for t, ty in found:
            ty = self._nf(g, ty)
            if isinstance(ty, S.Sigma):
                more.append((S.proj1(t, ty.dom), ty.dom))
                more.append((S.proj2(t, ty.dom, ty.cod), S.instantiate(ty.cod, S.proj1(t, ty.dom))))
            elif isinstance(ty, S.Pi):
                arg = self.inhabit(rng, g, ty.dom, depth - 1)
                if arg is not None:
                    more.append((S.App(t, arg), S.instantiate(ty.cod, arg)))
        return found + more

    def inhabit(self, rng, g, a, depth: Optional[int] = None):
        depth = self.depth if depth is None else depth
        nf = self._nf(g, a)
        cands = []
        if depth > 0:
            cands = [t for t, ty in self._neutrals(rng, g, depth) if self._nf(g, ty) == nf]
        intro = self._intro(rng, g, nf, depth)
        if intro is not None and (not cands or rng.random() < 0.5):
            return intro
        return rng.choice(cands) if cands else intro

    def _intro(self, rng, g, a, depth):
        if isinstance(a, S.Unit):
            return S.Star()
        if depth <= 0:
            return None
        if isinstance(a, S.Pi):
            body = self.inhabit(rng, g.extend(_fresh(g, "y"), a.dom), a.cod, depth - 1)
            return None if body is None else S.Lam(a.name, body)
        if isinstance(a, S.Sigma):
            fst = self.inhabit(rng, g, a.dom, depth - 1)
            if fst is None:
                return None
            snd = self.inhabit(rng, g, S.instantiate(a.cod, fst), depth - 1)
            return None if snd is None else S.Pair(fst, snd)
        if isinstance(a, S.TConst):
            makers = [c for c in self.m.sig.term_consts.values() if isinstance(c.cod, S.TConst) and c.cod.name == a.name]
            rng.shuffle(makers)
            for c in makers:
                args = self._fill(rng, g, c.tele, depth - 1)
                if args is None:
                    continue
                cod = S.gen_subst(c.cod, S.CtxMor(g, c.tele, args))
                t = S.Const(c.name, args)
                if self._nf(g, cod) == a:
                    return t
        return None


# ---------------------------------------------------------------- law runs


def term_instances(m: TermModel, smp: TermSampler, max_len: int = 2, seed: int = 0, stride: int = 1):
    """One instance per context of length <= ``max_len`` over the sampler's pool.

    The A and B slots walk the pool round-robin so every pool type appears in
    both roles.
    """
    rng = random.Random(seed)
    pool = smp.pool
    for i, g in enumerate(contexts(pool, max_len)):
        if i % stride:
            continue
        a = pool[i % len(pool)]
        b = pool[(3 * i + 1) % len(pool)]
        yield cwf.build_instance(m, smp, rng, f"ctx#{i} {m.show(g)}", g, a, b)


def check_cwf_laws_on_term_model(
    sig: Optional[ValidatedSignature] = None,
    depth: int = 2,
    max_len: int = 2,
    seed: int = 0,
    laws: Optional[list] = None,
    stride: int = 1,
    model: Optional[TermModel] = None,
) -> cwf.LawReport:
    """Run the law suite over every context of length <= ``max_len`` (types of depth <= ``depth``)."""
    m = model or term_model(sig)
    smp = TermSampler(m, closed_types(depth))
    rep = cwf.run_laws(m, smp, term_instances(m, smp, max_len, seed, stride), laws, limit=6)
    rep.seed = seed
    return rep


def check_laws(sig=None, budget: int = 40, seed: int = 0, laws=None, model: Optional[TermModel] = None):
    """Randomly sampled instances, including signature types when the signature has any."""
    m = model or term_model(sig)
    smp = TermSampler(m)
    rng = random.Random(seed)
    insts: Iterable = (cwf.build_instance(m, smp, rng, f"random#{i}") for i in range(budget))
    rep = cwf.run_laws(m, smp, insts, laws, limit=6)
    rep.seed = seed
    return rep
