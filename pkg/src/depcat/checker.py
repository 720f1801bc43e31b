"""Decision procedures for the six judgement forms.

Judgmental equality is decided by normalization by evaluation: terms are
evaluated into values (closures for binders, neutrals for stuck terms) and read
back type-directed, which eta-expands at Pi, splits into projections at Sigma
and collapses to ``star`` at Unit.  The Sigma eliminator on a neutral scrutinee
is evaluated through the two projections, which is how surjective pairing is
realised.  Axioms act as rewrite rules on constant applications, matched
against read-back normal forms and limited by a per-normalization fuel budget.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Union

from . import syntax as S
from .judgements import CtxEqJ, CtxJ, Judgement, TermEqJ, TermJ, TypeEqJ, TypeJ
from .signature import Rule, SignatureView

DEFAULT_FUEL = 1000


def default_fuel() -> int:
    raw = os.environ.get("DEPCAT_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        return max(0, int(raw))
    except ValueError:
        return DEFAULT_FUEL


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Derivable:
    ok = True

    def describe(self) -> str:
        return "derivable"


@dataclass(frozen=True)
class NotDerivable:
    reason: str
    subgoal: str = ""
    ok = False

    def describe(self) -> str:
        return f"{self.reason} [{self.subgoal}]" if self.subgoal else self.reason


@dataclass(frozen=True)
class Unknown:
    reason: str = "rewrite fuel exhausted"
    ok = False

    def describe(self) -> str:
        return f"unknown: {self.reason}"


Verdict = Union[Derivable, NotDerivable, Unknown]
DERIVABLE = Derivable()


class FuelExhausted(Exception):
    pass


class TypeCheckError(Exception):
    def __init__(self, reason: str, subgoal: str = ""):
        super().__init__(reason)
        self.reason = reason
        self.subgoal = subgoal


# ---------------------------------------------------------------- values


class Value:
    __slots__ = ()


class VStar(Value):
    __slots__ = ()


VSTAR = VStar()


class VPair(Value):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class VLam(Value):
    __slots__ = ("name", "body", "env")

    def __init__(self, name, body, env):
        self.name, self.body, self.env = name, body, env


class VNe(Value):
    __slots__ = ("ne",)

    def __init__(self, ne):
        self.ne = ne


class VUnitT(Value):
    __slots__ = ()


VUNIT = VUnitT()


class VPiT(Value):
    __slots__ = ("name", "dom", "cod", "env")

    def __init__(self, name, dom, cod, env):
        self.name, self.dom, self.cod, self.env = name, dom, cod, env


class VSigmaT(Value):
    __slots__ = ("name", "dom", "cod", "env")

    def __init__(self, name, dom, cod, env):
        self.name, self.dom, self.cod, self.env = name, dom, cod, env


class VTCon(Value):
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        self.name, self.args = name, args


class NVar:
    __slots__ = ("level",)

    def __init__(self, level):
        self.level = level


class NApp:
    __slots__ = ("head", "arg")

    def __init__(self, head, arg):
        self.head, self.arg = head, arg


class NFst:
    __slots__ = ("head",)

    def __init__(self, head):
        self.head = head


class NSnd:
    __slots__ = ("head",)

    def __init__(self, head):
        self.head = head


class NConst:
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        self.name, self.args = name, args


class _Missing(Value):
    """Placeholder for rule variables that the rule's right side never uses."""

    __slots__ = ()


_MISSING = _Missing()


# ---------------------------------------------------------------- the evaluator


class Normalizer:
    """One normalization session: a fuel budget and the stack of variable types."""

    def __init__(self, sig: SignatureView, fuel: int):
        self.sig = sig
        self.fuel = fuel
        self.levels: list[Value] = []

    # -- environment for a context

    def bind_ctx(self, g: S.Ctx) -> tuple:
        env: tuple = ()
        for ent in g.entries:
            t = self.eval_ty(ent.ty, env)
            env = env + (self.fresh(t),)
        return env

    def fresh(self, ty: Value) -> VNe:
        self.levels.append(ty)
        return VNe(NVar(len(self.levels) - 1))

    def pop(self) -> None:
        self.levels.pop()

    def env_here(self) -> tuple:
        return tuple(VNe(NVar(l)) for l in range(len(self.levels)))

    # -- evaluation

    def eval(self, t, env: tuple) -> Value:
        match t:
            case S.Var(i):
                v = env[len(env) - 1 - i]
                if v is _MISSING:
                    raise RuntimeError("rule right side uses an unmatched variable")
                return v
            case S.Star():
                return VSTAR
            case S.Lam(name, body):
                return VLam(name, body, env)
            case S.App(f, a):
                return self.apply(self.eval(f, env), self.eval(a, env))
            case S.Pair(a, b):
                return VPair(self.eval(a, env), self.eval(b, env))
            case S.RSig(_, _, _, _, br, p):
                pv = self.eval(p, env)
                return self.eval(br, env + (self.vfst(pv), self.vsnd(pv)))
            case S.Const(name, args):
                return self.const_value(name, tuple(self.eval(a, env) for a in args))
        return self.eval_ty(t, env)

    def eval_ty(self, t, env: tuple) -> Value:
        match t:
            case S.Unit():
                return VUNIT
            case S.Pi(name, a, b):
                return VPiT(name, self.eval_ty(a, env), b, env)
            case S.Sigma(name, a, b):
                return VSigmaT(name, self.eval_ty(a, env), b, env)
            case S.TConst(name, args):
                return self.tconst_value(name, tuple(self.eval(a, env) for a in args))
        raise TypeError(f"not a type: {t!r}")

    def inst(self, clo, v: Value) -> Value:
        """Instantiate the codomain of a Pi/Sigma type value."""
        return self.eval_ty(clo.cod, clo.env + (v,))

    def apply(self, f: Value, a: Value) -> Value:
        if isinstance(f, VLam):
            return self.eval(f.body, f.env + (a,))
        if isinstance(f, VNe):
            return VNe(NApp(f.ne, a))
        raise TypeError("application of a non-function value")

    def vfst(self, p: Value) -> Value:
        if isinstance(p, VPair):
            return p.a
        if isinstance(p, VNe):
            return VNe(NFst(p.ne))
        raise TypeError("projection from a non-pair value")

    def vsnd(self, p: Value) -> Value:
        if isinstance(p, VPair):
            return p.b
        if isinstance(p, VNe):
            return VNe(NSnd(p.ne))
        raise TypeError("projection from a non-pair value")

    # -- constants and rewriting

    def _tele_types(self, tele: S.Ctx, args: tuple) -> list[Value]:
        env: tuple = ()
        out = []
        for ent, a in zip(tele.entries, args):
            out.append(self.eval_ty(ent.ty, env))
            env = env + (a,)
        return out

    def _read_args(self, tele: S.Ctx, args: tuple) -> tuple:
        return tuple(self.readback(a, t) for a, t in zip(args, self._tele_types(tele, args)))

    def _try_rules(self, rules: tuple[Rule, ...], tele: S.Ctx, args: tuple):
        if not rules:
            return None
        nfs = self._read_args(tele, args)
        for rule in rules:
            binding = _match_args(rule.patterns, nfs, len(rule.ctx))
            if binding is None:
                continue
            if self.fuel <= 0:
                raise FuelExhausted()
            self.fuel -= 1
            here = self.env_here()
            env = tuple(
                _MISSING if b is None else self.eval(b, here) for b in reversed(binding)
            )
            return rule, env
        return None

    def const_value(self, name: str, args: tuple) -> Value:
        decl = self.sig.term_consts[name]
        hit = self._try_rules(self.sig.rules_for(name), decl.tele, args)
        if hit is not None:
            rule, env = hit
            return self.eval(rule.rhs, env)
        return VNe(NConst(name, args))

    def tconst_value(self, name: str, args: tuple) -> Value:
        decl = self.sig.type_consts[name]
        hit = self._try_rules(self.sig.rules_for(name), decl.tele, args)
        if hit is not None:
            rule, env = hit
            return self.eval_ty(rule.rhs, env)
        return VTCon(name, args)

    # -- read-back

    def readback(self, v: Value, ty: Value) -> S.Tm:
        if isinstance(ty, VUnitT):
            return S.Star()
        if isinstance(ty, VPiT):
            x = self.fresh(ty.dom)
            try:
                body = self.readback(self.apply(v, x), self.inst(ty, x))
            finally:
                self.pop()
            name = v.name if isinstance(v, VLam) else ty.name
            return S.Lam(name if name != "_" else "x", body)
        if isinstance(ty, VSigmaT):
            a = self.vfst(v)
            return S.Pair(self.readback(a, ty.dom), self.readback(self.vsnd(v), self.inst(ty, a)))
        if isinstance(v, VNe):
            return self.readback_ne(v.ne)[0]
        raise TypeError("ill-typed value during read-back")

    def readback_ne(self, ne) -> tuple[S.Tm, Value]:
        if isinstance(ne, NVar):
            return S.Var(len(self.levels) - 1 - ne.level), self.levels[ne.level]
        if isinstance(ne, NApp):
            h, ht = self.readback_ne(ne.head)
            return S.App(h, self.readback(ne.arg, ht.dom)), self.inst(ht, ne.arg)
        if isinstance(ne, NFst):
            h, ht = self.readback_ne(ne.head)
            z = self.fresh(ht)
            try:
                motive = self.readback_ty(ht.dom)
            finally:
                self.pop()
            return S.RSig("z", motive, "x", "y", S.Var(1, "x"), h), ht.dom
        if isinstance(ne, NSnd):
            h, ht = self.readback_ne(ne.head)
            z = self.fresh(ht)
            try:
                motive = self.readback_ty(self.inst(ht, self.vfst(z)))
            finally:
                self.pop()
            fst = self.vfst(VNe(ne.head))
            return S.RSig("z", motive, "x", "y", S.Var(0, "y"), h), self.inst(ht, fst)
        if isinstance(ne, NConst):
            decl = self.sig.term_consts[ne.name]
            args = self._read_args(decl.tele, ne.args)
            return S.Const(ne.name, args), self.eval_ty(decl.cod, ne.args)
        raise TypeError(f"unknown neutral {ne!r}")

    def readback_ty(self, t: Value) -> S.Ty:
        if isinstance(t, VUnitT):
            return S.Unit()
        if isinstance(t, (VPiT, VSigmaT)):
            dom = self.readback_ty(t.dom)
            x = self.fresh(t.dom)
            try:
                cod = self.readback_ty(self.inst(t, x))
            finally:
                self.pop()
            return (S.Pi if isinstance(t, VPiT) else S.Sigma)(t.name, dom, cod)
        if isinstance(t, VTCon):
            decl = self.sig.type_consts[t.name]
            return S.TConst(t.name, self._read_args(decl.tele, t.args))
        raise TypeError("not a type value")


def _match(pat, target, depth: int, binding: list) -> bool:
    match pat:
        case S.Var(i):
            if i < depth:
                return target == pat
            if any(j < depth for j in S.free_vars(target)):
                return False
            val = S.shift(target, -depth)
            slot = i - depth
            if binding[slot] is None:
                binding[slot] = val
                return True
            return binding[slot] == val
    if type(pat) is not type(target):
        return False
    match pat:
        case S.Star() | S.Unit():
            return True
        case S.Pair(a, b):
            return _match(a, target.fst, depth, binding) and _match(b, target.snd, depth, binding)
        case S.Const(name, args) | S.TConst(name, args):
            return name == target.name and len(args) == len(target.args) and all(
                _match(p, t, depth, binding) for p, t in zip(args, target.args)
            )
        case S.Lam(_, b):
            return _match(b, target.body, depth + 1, binding)
        case S.App(f, a):
            return _match(f, target.fn, depth, binding) and _match(a, target.arg, depth, binding)
        case S.RSig(_, m, _, _, br, p):
            return (
                _match(m, target.motive, depth + 1, binding)
                and _match(br, target.branch, depth + 2, binding)
                and _match(p, target.scrut, depth, binding)
            )
        case S.Pi(_, a, b) | S.Sigma(_, a, b):
            return _match(a, target.dom, depth, binding) and _match(b, target.cod, depth + 1, binding)
    return False


def _match_args(patterns, targets, nvars: int) -> Optional[list]:
    """Match rule patterns against normal forms; returns bindings by index."""
    binding: list = [None] * nvars
    for p, t in zip(patterns, targets):
        if not _match(p, t, 0, binding):
            return None
    return binding


# ---------------------------------------------------------------- the checker


class _Unknown(Exception):
    pass


class Checker:
    """Judgement checking against a (validated or in-progress) signature."""

    def __init__(self, sig: SignatureView, fuel: Optional[int] = None):
        self.sig = sig
        self.fuel = default_fuel() if fuel is None else fuel

    # -- normalization entry points

    def _session(self, g: S.Ctx) -> tuple[Normalizer, tuple]:
        n = Normalizer(self.sig, self.fuel)
        env = n.bind_ctx(g)
        return n, env

    def normalize_type(self, g: S.Ctx, a: S.Ty) -> S.Ty:
        try:
            n, env = self._session(g)
            return n.readback_ty(n.eval_ty(a, env))
        except FuelExhausted as exc:
            raise _Unknown() from exc

    def normalize_term(self, g: S.Ctx, t: S.Tm, a: S.Ty) -> S.Tm:
        try:
            n, env = self._session(g)
            return n.readback(n.eval(t, env), n.eval_ty(a, env))
        except FuelExhausted as exc:
            raise _Unknown() from exc

    # -- verdict wrappers

    def _run(self, fn, *args) -> Verdict:
        try:
            fn(*args)
        except TypeCheckError as exc:
            return NotDerivable(exc.reason, exc.subgoal)
        except _Unknown:
            return Unknown()
        return DERIVABLE

    def check(self, j: Judgement) -> Verdict:
        match j:
            case CtxJ(g):
                return self.check_ctx(g)
            case TypeJ(g, a):
                return self._run(self._judge_type, g, a)
            case TermJ(g, t, a):
                return self._run(self._judge_term, g, t, a)
            case CtxEqJ(g, h):
                return self.equal_ctxs(g, h)
            case TypeEqJ(g, a, b):
                return self._run(self._judge_type_eq, g, a, b)
            case TermEqJ(g, t, u, a):
                return self._run(self._judge_term_eq, g, t, u, a)
        raise TypeError(j)

    def check_ctx(self, g: S.Ctx) -> Verdict:
        return self._run(self._ctx, g)

    def check_type(self, g: S.Ctx, a: S.Ty) -> Verdict:
        return self._run(self._judge_type, g, a)

    def check_term(self, g: S.Ctx, t: S.Tm, a: S.Ty) -> Verdict:
        return self._run(self._judge_term, g, t, a)

    def equal_types(self, g: S.Ctx, a: S.Ty, b: S.Ty) -> Verdict:
        return self._run(self._judge_type_eq, g, a, b)

    def equal_terms(self, g: S.Ctx, t: S.Tm, u: S.Tm, a: S.Ty) -> Verdict:
        return self._run(self._judge_term_eq, g, t, u, a)

    def equal_ctxs(self, g: S.Ctx, h: S.Ctx) -> Verdict:
        def go():
            self._ctx(g)
            self._ctx(h)
            if len(g) != len(h):
                raise TypeCheckError("contexts have different lengths", f"{len(g)} vs {len(h)}")
            for k in range(len(g)):
                pre = g.prefix(k)
                self._conv_ty(pre, g.entries[k].ty, h.entries[k].ty, f"entry {k + 1}")
        return self._run(go)

    def check_ctx_morphism(self, dom: S.Ctx, comps, cod: S.Ctx) -> Verdict:
        return self._run(self._cm, dom, tuple(comps), cod)

    def infer_term(self, g: S.Ctx, t: S.Tm) -> S.Ty:
        """Return a type for ``t``; raises TypeCheckError when there is none."""
        try:
            return self._infer(g, t)
        except _Unknown as exc:
            raise TypeCheckError("rewrite fuel exhausted", "infer") from exc

    def derived_projections(self, g: S.Ctx, p: S.Tm, a: S.Ty, b: S.Ty) -> tuple[S.Tm, S.Tm]:
        v = self.check_term(g, p, S.Sigma("x", a, b))
        if not v.ok:
            raise TypeCheckError(v.describe(), "derived_projections")
        return S.proj1(p, a), S.proj2(p, a, b)

    # -- rules

    def _ctx(self, g: S.Ctx) -> None:
        dups = g.duplicates()
        if dups:
            raise TypeCheckError(f"variable {dups[0]} is declared twice", "Ctx-Ext freshness")
        for k, ent in enumerate(g.entries):
            self._type(g.prefix(k), ent.ty)

    def _judge_type(self, g, a) -> None:
        self._ctx(g)
        self._type(g, a)

    def _judge_term(self, g, t, a) -> None:
        self._ctx(g)
        self._type(g, a)
        self._check(g, t, a)

    def _judge_type_eq(self, g, a, b) -> None:
        self._ctx(g)
        self._type(g, a)
        self._type(g, b)
        self._conv_ty(g, a, b, "type equality")

    def _judge_term_eq(self, g, t, u, a) -> None:
        self._ctx(g)
        self._type(g, a)
        self._check(g, t, a)
        self._check(g, u, a)
        if self.normalize_term(g, t, a) != self.normalize_term(g, u, a):
            raise TypeCheckError("normal forms differ", "term equality")

    def _conv_ty(self, g, a, b, what: str) -> None:
        if a == b:
            return
        if self.normalize_type(g, a) != self.normalize_type(g, b):
            from .parser import pretty

            raise TypeCheckError(
                f"type mismatch: {pretty(a, g)} vs {pretty(b, g)}", what
            )

    def _type(self, g: S.Ctx, a) -> None:
        match a:
            case S.Unit():
                return
            case S.Pi(x, dom, cod) | S.Sigma(x, dom, cod):
                self._type(g, dom)
                self._type(g.extend(x, dom), cod)
                return
            case S.TConst(name, args):
                decl = self.sig.type_consts.get(name)
                if decl is None:
                    raise TypeCheckError(f"unknown type constant {name}", "Type-Const")
                self._cm(g, tuple(args), decl.tele, f"arguments of {name}")
                return
        raise TypeCheckError("expected a type", "type formation")

    def _cm(self, dom: S.Ctx, comps: tuple, cod: S.Ctx, what: str = "context morphism") -> None:
        if len(comps) != len(cod):
            raise TypeCheckError(f"{what}: expected {len(cod)} component(s), got {len(comps)}", what)
        for k, (c, ent) in enumerate(zip(comps, cod.entries)):
            target = S.subst_top(ent.ty, tuple(reversed(comps[:k])))
            try:
                self._check(dom, c, target)
            except TypeCheckError as exc:
                raise TypeCheckError(exc.reason, f"{what}, component {k + 1}") from exc

    def _whnf_ty(self, g: S.Ctx, a: S.Ty) -> S.Ty:
        if isinstance(a, (S.Pi, S.Sigma, S.Unit)):
            return a
        return self.normalize_type(g, a)

    def _check(self, g: S.Ctx, t, a: S.Ty) -> None:
        match t:
            case S.Lam(x, body):
                h = self._whnf_ty(g, a)
                if not isinstance(h, S.Pi):
                    raise TypeCheckError("a lambda needs a Pi type", "Pi-Intro")
                self._check(g.extend(x, h.dom), body, h.cod)
                return
            case S.Pair(p, q):
                h = self._whnf_ty(g, a)
                if not isinstance(h, S.Sigma):
                    raise TypeCheckError("a pair needs a Sigma type", "Sigma-Intro")
                self._check(g, p, h.dom)
                self._check(g, q, S.instantiate(h.cod, p))
                return
            case S.App(f, arg):
                try:
                    inferred = self._infer(g, t)
                except TypeCheckError as first:
                    # head not inferable, e.g. (\x. \y. x) b: check it at arg-type -> a
                    try:
                        da = self._infer(g, arg)
                    except TypeCheckError:
                        raise first from None
                    self._check(g, f, S.Pi("_", da, S.shift(a, 1)))
                    return
                self._conv_ty(g, inferred, a, "conversion")
                return
        inferred = self._infer(g, t)
        self._conv_ty(g, inferred, a, "conversion")

    def _infer(self, g: S.Ctx, t) -> S.Ty:
        match t:
            case S.Var(i):
                if not 0 <= i < len(g):
                    raise TypeCheckError(f"unbound variable #{i}", "Var")
                return g.lookup(i)
            case S.Star():
                return S.Unit()
            case S.App(S.Lam(x, body), arg):
                da = self._infer(g, arg)
                cod = self._infer(g.extend(x, da), body)
                return S.instantiate(cod, arg)
            case S.App(f, arg):
                ft = self._whnf_ty(g, self._infer(g, f))
                if not isinstance(ft, S.Pi):
                    raise TypeCheckError("applying a term whose type is not a Pi type", "Pi-Elim")
                self._check(g, arg, ft.dom)
                return S.instantiate(ft.cod, arg)
            case S.Pair(p, q):
                return S.product(self._infer(g, p), self._infer(g, q))
            case S.Lam():
                raise TypeCheckError("cannot infer the type of an unannotated lambda", "Pi-Intro")
            case S.RSig(z, motive, x, y, br, p, ann):
                if ann is not None:
                    self._type(g, ann)
                    self._check(g, p, ann)
                    pt = self._whnf_ty(g, ann)
                else:
                    pt = self._whnf_ty(g, self._infer(g, p))
                if not isinstance(pt, S.Sigma):
                    raise TypeCheckError("eliminating a term whose type is not a Sigma type", "Sigma-Elim")
                self._type(g.extend(z, pt), motive)
                gxy = g.extend(x, pt.dom).extend(y, pt.cod)
                target = S.subst_top(motive, (S.Pair(S.Var(1, x), S.Var(0, y)),), tail=2)
                self._check(gxy, br, target)
                return S.instantiate(motive, p)
            case S.Const(name, args):
                decl = self.sig.term_consts.get(name)
                if decl is None:
                    raise TypeCheckError(f"unknown term constant {name}", "Term-Const")
                self._cm(g, tuple(args), decl.tele, f"arguments of {name}")
                return S.subst_top(decl.cod, tuple(reversed(args)))
        raise TypeCheckError("expected a term", "term formation")


# ---------------------------------------------------------------- module-level API


def check_ctx(sig, g: S.Ctx) -> Verdict:
    return Checker(sig).check_ctx(g)


def check_type(sig, g: S.Ctx, a: S.Ty) -> Verdict:
    return Checker(sig).check_type(g, a)


def check_term(sig, g: S.Ctx, t: S.Tm, a: S.Ty) -> Verdict:
    return Checker(sig).check_term(g, t, a)


def infer_term(sig, g: S.Ctx, t: S.Tm) -> S.Ty:
    return Checker(sig).infer_term(g, t)


def equal_terms(sig, g: S.Ctx, t: S.Tm, u: S.Tm, a: S.Ty) -> Verdict:
    return Checker(sig).equal_terms(g, t, u, a)


def equal_types(sig, g: S.Ctx, a: S.Ty, b: S.Ty) -> Verdict:
    return Checker(sig).equal_types(g, a, b)


def equal_ctxs(sig, g: S.Ctx, h: S.Ctx) -> Verdict:
    return Checker(sig).equal_ctxs(g, h)


def check_ctx_morphism(sig, dom: S.Ctx, comps, cod: S.Ctx) -> Verdict:
    return Checker(sig).check_ctx_morphism(dom, comps, cod)


def derived_projections(sig, g: S.Ctx, p: S.Tm, a: S.Ty, b: S.Ty) -> tuple[S.Tm, S.Tm]:
    return Checker(sig).derived_projections(g, p, a, b)
