"""Partial interpretation of pre-syntax in a model, given a structure for the constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Union

from . import cwf
from . import syntax as S
from .checker import Checker, TypeCheckError
from .judgements import CtxJ, TermJ, TypeJ
from .signature import ValidatedSignature


class AlgebraViolation(Exception):
    def __init__(self, what: str, detail: str = ""):
        super().__init__(f"{what}: {detail}" if detail else what)
        self.what = what
        self.detail = detail


class _Undefined(Exception):
    pass


@dataclass(frozen=True)
class Undefined:
    reason: str

    ok = False

    def __str__(self) -> str:
        return f"undefined ({self.reason})"


@dataclass(frozen=True)
class Denotation:
    """A defined denotation; ``kind`` is one of obj, mor, dobj, dmor."""

    kind: str
    value: Any
    ok = True


Result = Union[Denotation, Undefined]


@dataclass
class Structure:
    """Values for the constants of a signature in a model.

    ``types[C]`` is a D-object over the denotation of C's telescope and
    ``terms[F]`` a D-morphism from the telescope into F's codomain.
    """

    types: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)


class Interpreter:
    def __init__(self, model: cwf.Model, sig: ValidatedSignature, structure: Structure, fuel: Optional[int] = None):
        self.m = model
        self.sig = sig
        self.S = structure
        self.checker = Checker(sig, fuel)
        self._memo: dict = {}

    # -- entry points returning Denotation | Undefined
    def _wrap(self, kind: str, fn, *args) -> Result:
        try:
            return Denotation(kind, fn(*args))
        except _Undefined as exc:
            return Undefined(str(exc))
        except TypeCheckError as exc:
            return Undefined(f"ill-typed: {exc.reason}")
        except (S.UnboundVariable, S.DomainMismatch) as exc:
            return Undefined(f"ill-scoped: {exc}")
        except Exception as exc:  # model refused (cardinality, mismatched carriers)
            return Undefined(f"{type(exc).__name__}: {exc}")

    def interpret(self, j) -> Result:
        match j:
            case CtxJ(g):
                return self._wrap("obj", self._checked_ctx, g)
            case TypeJ(g, a):
                return self._wrap("dobj", self._checked_type, g, a)
            case TermJ(g, t, a):
                return self._wrap("dmor", self._checked_term, g, t, a)
            case S.CtxMor():
                return self._wrap("mor", self._checked_cm, j)
        raise TypeError(f"cannot interpret {j!r}")

    def _require(self, verdict):
        if not verdict.ok:
            raise _Undefined(f"ill-typed: {verdict.describe()}")

    def _checked_ctx(self, g):
        self._require(self.checker.check_ctx(g))
        return self.ctx(g)

    def _checked_type(self, g, a):
        self._require(self.checker.check_type(g, a))
        return self.ty(g, a)

    def _checked_term(self, g, t, a):
        self._require(self.checker.check_term(g, t, a))
        return self.tm(g, t, a)

    def _checked_cm(self, f):
        self._require(self.checker.check_ctx(f.dom))
        self._require(self.checker.check_ctx_morphism(f.dom, f.comps, f.cod))
        return self.cm(f)

    # -- the recursion (raw; assumes well-typed input)
    def _memoized(self, key, fn):
        hit = self._memo.get(key)
        if hit is None:
            hit = fn()
            self._memo[key] = hit
        return hit

    def ctx(self, g: S.Ctx):
        def go():
            if len(g) == 0:
                return self.m.terminal()
            pre = g.prefix(len(g) - 1)
            return self.m.ext(self.ctx(pre), self.ty(pre, g.entries[-1].ty))

        return self._memoized(("ctx", g), go)

    def ty(self, g: S.Ctx, a: S.Ty):
        return self._memoized(("ty", g, a), lambda: self._ty(g, a))

    def _ty(self, g, a):
        m = self.m
        gg = self.ctx(g)
        match a:
            case S.Unit():
                return m.reindex(m.unit(), m.bang(gg))
            case S.Pi(x, dom, cod):
                return m.pi(gg, self.ty(g, dom), self.ty(g.extend(x, dom), cod))
            case S.Sigma(x, dom, cod):
                return m.sigma(gg, self.ty(g, dom), self.ty(g.extend(x, dom), cod))
            case S.TConst(name, args):
                decl = self.sig.type_consts.get(name)
                if decl is None or name not in self.S.types:
                    raise _Undefined(f"no structure for type constant {name}")
                return m.reindex(self.S.types[name], self.cm(S.CtxMor(g, decl.tele, tuple(args))))
        raise _Undefined(f"not a type: {a!r}")

    def cm(self, f: S.CtxMor):
        """``<<! , f1>, ..., fn> : [dom] -> [cod]``."""

        def go():
            m = self.m
            cur = m.bang(self.ctx(f.dom))
            for k, (c, ent) in enumerate(zip(f.comps, f.cod.entries)):
                pre = f.cod.prefix(k)
                ty_here = S.gen_subst(ent.ty, S.CtxMor(f.dom, pre, f.comps[:k]))
                cur = m.extend(self.ctx(pre), self.ty(pre, ent.ty), cur, self.tm(f.dom, c, ty_here))
            return cur

        return self._memoized(("cm", f), go)

    def tm(self, g: S.Ctx, t: S.Tm, a: S.Ty):
        return self._memoized(("tm", g, t, a), lambda: self._tm(g, t, a))

    def _infer(self, g, t) -> S.Ty:
        return self.checker.normalize_type(g, self.checker.infer_term(g, t))

    def _whnf(self, g, a) -> S.Ty:
        return self.checker.normalize_type(g, a)

    def _tm(self, g: S.Ctx, t, a):
        m = self.m
        gg = self.ctx(g)
        match t:
            case S.Var(i):
                if not 0 <= i < len(g):
                    raise _Undefined(f"unbound variable #{i}")
                pre = g.prefix(len(g) - 1)
                last = g.entries[-1].ty
                if i == 0:
                    return m.p2(self.ctx(pre), self.ty(pre, last))
                inner = self.tm(pre, S.Var(i - 1, t.name), pre.lookup(i - 1))
                return m.reindex_tm(inner, m.p1(self.ctx(pre), self.ty(pre, last)))
            case S.Star():
                return m.unit_bang(gg)
            case S.Lam(x, body):
                h = self._whnf(g, a)
                if not isinstance(h, S.Pi):
                    raise _Undefined("lambda at a non-Pi type")
                gx = g.extend(x, h.dom)
                return m.lam(gg, self.ty(g, h.dom), self.ty(gx, h.cod), self.tm(gx, body, h.cod))
            case S.App(f, arg):
                try:
                    if isinstance(f, S.Lam):
                        dom = self._infer(g, arg)
                        fty = S.Pi(f.name, dom, self._infer(g.extend(f.name, dom), f.body))
                    else:
                        fty = self._whnf(g, self._infer(g, f))
                except TypeCheckError:
                    # same fallback as the checker: a non-dependent function type
                    fty = S.Pi("_", self._infer(g, arg), S.shift(a, 1))
                if not isinstance(fty, S.Pi):
                    raise _Undefined("application of a non-function")
                gx = g.extend(fty.name, fty.dom)
                k = self.tm(g, f, fty)
                av = self.tm(g, arg, fty.dom)
                return cwf.app(m, gg, self.ty(g, fty.dom), self.ty(gx, fty.cod), k, av)
            case S.Pair(p, q):
                h = self._whnf(g, a)
                if not isinstance(h, S.Sigma):
                    raise _Undefined("pair at a non-Sigma type")
                gx = g.extend(h.name, h.dom)
                ad, bd = self.ty(g, h.dom), self.ty(gx, h.cod)
                pv = self.tm(g, p, h.dom)
                qv = self.tm(g, q, S.instantiate(h.cod, p))
                fwd, _ = cwf.pair_iso(m, gg, ad, bd)
                to_gab = m.extend(m.ext(gg, ad), bd, cwf.section(m, gg, ad, pv), qv)
                s = m.sigma(gg, ad, bd)
                return m.reindex_tm(m.p2(gg, s), m.compose(fwd, to_gab))
            case S.RSig(z, motive, x, y, br, p, ann):
                h = self._whnf(g, ann if ann is not None else self._infer(g, p))
                if not isinstance(h, S.Sigma):
                    raise _Undefined("Sigma-elimination of a non-pair")
                gx = g.extend(x, h.dom)
                gxy = gx.extend(y, h.cod)
                ad, bd = self.ty(g, h.dom), self.ty(gx, h.cod)
                br_ty = S.subst_top(motive, (S.Pair(S.Var(1, x), S.Var(0, y)),), tail=2)
                rs = cwf.sigma_elim(m, gg, ad, bd, self.tm(gxy, br, br_ty))
                s = m.sigma(gg, ad, bd)
                return m.reindex_tm(rs, cwf.section(m, gg, s, self.tm(g, p, h)))
            case S.Const(name, args):
                decl = self.sig.term_consts.get(name)
                if decl is None or name not in self.S.terms:
                    raise _Undefined(f"no structure for term constant {name}")
                return m.reindex_tm(self.S.terms[name], self.cm(S.CtxMor(g, decl.tele, tuple(args))))
        raise _Undefined(f"not a term: {t!r}")

    # -- algebra conditions
    def validate(self) -> None:
        """Raise :class:`AlgebraViolation` unless the structure is an algebra."""
        m = self.m
        typed = getattr(m, "typed_as", None)
        for name, decl in self.sig.type_consts.items():
            if name not in self.S.types:
                raise AlgebraViolation(f"type constant {name}", "missing from the structure")
            base = self.ctx(decl.tele)
            try:
                same = m.eq_dobj(base, m.reindex(self.S.types[name], m.ident(base)), self.S.types[name])
            except Exception as exc:
                raise AlgebraViolation(f"type constant {name}", f"not a family over its telescope ({exc})") from exc
            if not same:
                raise AlgebraViolation(f"type constant {name}", "not a family over its telescope")
        for name, decl in self.sig.term_consts.items():
            if name not in self.S.terms:
                raise AlgebraViolation(f"term constant {name}", "missing from the structure")
            base = self.ctx(decl.tele)
            cod = self.ty(decl.tele, decl.cod)
            if typed is not None and not typed(base, cod, self.S.terms[name]):
                raise AlgebraViolation(f"term constant {name}", "does not land in the denotation of its codomain")
        for k, ax in enumerate(self.sig.source.axioms):
            g = self.ctx(ax.ctx)
            if ax.sort is None:
                ok = m.eq_dobj(g, self.ty(ax.ctx, ax.lhs), self.ty(ax.ctx, ax.rhs))
            else:
                ok = m.eq_dmor(
                    g, self.ty(ax.ctx, ax.sort), self.tm(ax.ctx, ax.lhs, ax.sort), self.tm(ax.ctx, ax.rhs, ax.sort)
                )
            if not ok:
                raise AlgebraViolation(f"axiom #{k}", "its two sides denote different values")


def interpret(model: cwf.Model, sig: ValidatedSignature, structure: Structure, j, validate: bool = True) -> Result:
    it = Interpreter(model, sig, structure)
    if validate:
        it.validate()
    return it.interpret(j)


# ---------------------------------------------------------------- structures


def generic_structure(sig: ValidatedSignature) -> Structure:
    """Each constant applied to the variables of its own telescope (for the term model)."""

    def vars_of(tele: S.Ctx) -> tuple:
        n = len(tele)
        return tuple(S.Var(n - 1 - i, e.name) for i, e in enumerate(tele.entries))

    types = {n: S.TConst(n, vars_of(d.tele)) for n, d in sig.type_consts.items()}
    terms = {n: S.Const(n, vars_of(d.tele)) for n, d in sig.term_consts.items()}
    return Structure(types, terms)


def _tele_key(elem, k: int):
    """Flatten a nested ``((.., v1), v2)`` telescope element to ``v`` or ``(v1, .., vk)``."""
    vals = []
    for _ in range(k):
        elem, v = elem
        vals.append(v)
    vals.reverse()
    return vals[0] if k == 1 else tuple(vals)


def finset_structure(model, sig: ValidatedSignature, literals: dict) -> Structure:
    """Build a FinSet structure from env literals (see :func:`depcat.finset.parse_env`)."""
    from .finset import POINT, DFinFun, DFinSet, FinSet, LiteralError

    it = Interpreter(model, sig, Structure())
    types: dict = {}
    terms: dict = {}
    it.S = Structure(types, terms)
    for d in sig.source.decls:
        name = getattr(d, "name", None)
        if name is None:
            continue
        if name not in literals:
            raise AlgebraViolation(f"constant {name}", "missing from the environment")
        lit = literals[name]
        base = it.ctx(d.tele)
        k = len(d.tele)
        if name in sig.type_consts:
            if isinstance(lit, FinSet) and k == 0:
                types[name] = DFinSet(base, (lit,))
            elif isinstance(lit, FinSet):
                types[name] = DFinSet(base, (lit,) * len(base))
            elif isinstance(lit, dict):
                try:
                    types[name] = DFinSet(base, tuple(lit[_tele_key(e, k)] for e in base))
                except KeyError as exc:
                    raise AlgebraViolation(f"type constant {name}", f"no fiber for {exc}") from exc
            else:
                raise LiteralError(f"S({name}) must be a set or a family")
        else:
            cod = it.ty(d.tele, d.cod)
            if isinstance(lit, dict):
                key = (lambda e: POINT) if k == 0 else (lambda e: _tele_key(e, k))
                try:
                    table = tuple(lit[key(e)] for e in base)
                except KeyError as exc:
                    raise AlgebraViolation(f"term constant {name}", f"no value for {exc}") from exc
            elif k == 0:
                table = (lit,)
            else:
                raise LiteralError(f"S({name}) must be a function literal")
            terms[name] = DFinFun(base, cod, table)
    return it.S


# ---------------------------------------------------------------- suites


@dataclass
class SuiteReport:
    name: str
    rows: list = field(default_factory=list)  # (label, ok, detail)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r[1]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, label: str, ok: bool, detail: str = ""):
        self.rows.append((label, ok, detail))

    def lines(self) -> list[str]:
        return [f"{self.name} {label} {'PASS' if ok else 'FAIL'}" + (f" {d}" if d and not ok else "") for label, ok, d in self.rows]


def soundness_suite(it: Interpreter, pairs) -> SuiteReport:
    """``pairs``: (ctx, a, a2, ty) judged equal; their denotations must coincide."""
    from .parser import pretty

    rep = SuiteReport("SOUND")
    for g, a, b, ty in pairs:
        label = f"{pretty(a, g)} = {pretty(b, g)}"
        da = it.interpret(TermJ(g, a, ty))
        db = it.interpret(TermJ(g, b, ty))
        if not (da.ok and db.ok):
            rep.add(label, False, str(da if not da.ok else db))
            continue
        same = it.m.eq_dmor(it.ctx(g), it.ty(g, ty), da.value, db.value)
        rep.add(label, same, "" if same else f"{it.m.show(da.value)} vs {it.m.show(db.value)}")
    return rep


def completeness_suite(it: Interpreter, pairs) -> SuiteReport:
    """Denotational equality must agree with the checker on every pair, equal or not."""
    from .parser import pretty

    rep = SuiteReport("COMPLETE")
    for g, a, b, ty in pairs:
        label = f"{pretty(a, g)} ~ {pretty(b, g)}"
        judged = it.checker.equal_terms(g, a, b, ty).ok
        da = it.interpret(TermJ(g, a, ty))
        db = it.interpret(TermJ(g, b, ty))
        if not (da.ok and db.ok):
            rep.add(label, False, "undefined denotation")
            continue
        denoted = it.m.eq_dmor(it.ctx(g), it.ty(g, ty), da.value, db.value)
        rep.add(label, denoted == judged, f"checker={judged} model={denoted}")
    return rep


def substitution_lemma_suite(it: Interpreter, samples) -> SuiteReport:
    """``samples``: (f, expr, ty_or_None, g2) with ``f : dom -> cod``.

    ``expr`` is a type over ``f.cod`` when ``ty_or_None`` is None, otherwise a
    term of that type; ``g2`` is an optional morphism ``cod -> X`` for the
    composition clause.
    """
    m = it.m
    rep = SuiteReport("SUBST")
    for idx, (f, e, ty, g2) in enumerate(samples):
        fv = it.cm(f)
        d = it.ctx(f.dom)
        if ty is None:
            lhs = m.reindex(it.ty(f.cod, e), fv)
            rhs = it.ty(f.dom, S.gen_subst(e, f))
            rep.add(f"#{idx} type", m.eq_dobj(d, lhs, rhs))
        else:
            lhs = m.reindex_tm(it.tm(f.cod, e, ty), fv)
            rhs = it.tm(f.dom, S.gen_subst(e, f), S.gen_subst(ty, f))
            rep.add(f"#{idx} term", m.eq_dmor(d, it.ty(f.dom, S.gen_subst(ty, f)), lhs, rhs))
        if g2 is not None:
            lhs = m.compose(it.cm(g2), fv)
            rhs = it.cm(S.compose_cm(g2, f))
            rep.add(f"#{idx} morphism", m.eq_mor(lhs, rhs))
    return rep


def substitution_samples(sig: ValidatedSignature, n: int = 100, seed: int = 0, pool=None, depth: int = 2) -> list:
    """Random checker-validated ``(f, expr, ty_or_None, g2)`` samples for :func:`substitution_lemma_suite`.

    Alternates between type and term samples; ``g2`` is a morphism out of
    ``f.cod`` into a freshly drawn context.
    """
    import random

    from .termmodel import TermSampler, term_model

    tm = term_model(sig)
    smp = TermSampler(tm, pool, depth=depth)
    ch = tm.checker
    rng = random.Random(seed)
    out: list = []
    tries = 0
    while len(out) < n and tries < 50 * n:
        tries += 1
        cod = smp.obj(rng)
        dom = smp.obj(rng)
        f = smp.mor(rng, dom, cod)
        if f is None or not ch.check_ctx_morphism(dom, f.comps, cod).ok:
            continue
        x = smp.obj(rng)
        g2 = smp.mor(rng, cod, x)
        if g2 is not None and not ch.check_ctx_morphism(cod, g2.comps, x).ok:
            g2 = None
        if len(out) % 2 == 0:
            ty = smp.dobj(rng, cod)
            expr = None
        else:
            ty = smp.dobj(rng, cod)
            expr = smp.dmor(rng, cod, ty)
            if expr is None or not ch.check_term(cod, expr, ty).ok:
                continue
        if expr is None:
            out.append((f, ty, None, g2))
        else:
            out.append((f, expr, ty, g2))
    return out
