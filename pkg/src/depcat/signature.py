"""GMLTT signatures: constants with telescope formats plus oriented axioms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import syntax as S


@dataclass(frozen=True)
class TypeConstant:
    name: str
    tele: S.Ctx


@dataclass(frozen=True)
class TermConstant:
    name: str
    tele: S.Ctx
    cod: S.Ty


@dataclass(frozen=True)
class Axiom:
    """``ctx |- lhs = rhs : sort`` (or ``type`` when ``sort`` is None), oriented left to right."""

    ctx: S.Ctx
    lhs: Union[S.Tm, S.Ty]
    rhs: Union[S.Tm, S.Ty]
    sort: Optional[S.Ty] = None

    @property
    def is_type_eq(self) -> bool:
        return self.sort is None


Decl = Union[TypeConstant, TermConstant, Axiom]


@dataclass(frozen=True)
class Signature:
    """Declarations in source order (the order matters for well-formedness)."""

    decls: tuple[Decl, ...] = ()

    def add(self, d: Decl) -> "Signature":
        return Signature(self.decls + (d,))

    @property
    def type_consts(self) -> dict[str, TypeConstant]:
        return {d.name: d for d in self.decls if isinstance(d, TypeConstant)}

    @property
    def term_consts(self) -> dict[str, TermConstant]:
        return {d.name: d for d in self.decls if isinstance(d, TermConstant)}

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return tuple(d for d in self.decls if isinstance(d, Axiom))

    def const_kinds(self) -> dict[str, tuple[str, int]]:
        out: dict[str, tuple[str, int]] = {}
        for d in self.decls:
            if isinstance(d, TypeConstant):
                out[d.name] = ("type", len(d.tele))
            elif isinstance(d, TermConstant):
                out[d.name] = ("term", len(d.tele))
        return out


@dataclass(frozen=True)
class Rule:
    """An axiom compiled into a left-to-right rewrite on normal forms."""

    index: int
    head: str
    kind: str  # "term" or "type"
    ctx: S.Ctx
    patterns: tuple[S.Tm, ...]
    rhs: Union[S.Tm, S.Ty]
    guarded: bool


class IllFormedFormat(Exception):
    def __init__(self, constant: str, reason: str):
        super().__init__(f"format of {constant}: {reason}")
        self.constant = constant
        self.reason = reason


class IllTypedAxiom(Exception):
    def __init__(self, index: int, reason: str):
        super().__init__(f"axiom #{index}: {reason}")
        self.index = index
        self.reason = reason


class UnguardedAxiom(IllTypedAxiom):
    pass


_SEAL = object()


@dataclass(frozen=True)
class SignatureView:
    """What the checker needs: constant formats and compiled rewrite rules."""

    type_consts: dict[str, TypeConstant] = field(default_factory=dict)
    term_consts: dict[str, TermConstant] = field(default_factory=dict)
    rules: tuple[Rule, ...] = ()

    def rules_for(self, head: str) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.head == head)

    @property
    def trusted(self) -> bool:
        return any(not r.guarded for r in self.rules)


class ValidatedSignature(SignatureView):
    """Sealed result of :func:`validate_signature`."""

    def __init__(self, token, source: Signature, view: SignatureView, warnings: tuple[str, ...]):
        if token is not _SEAL:
            raise TypeError("use validate_signature() to build a ValidatedSignature")
        object.__setattr__(self, "type_consts", view.type_consts)
        object.__setattr__(self, "term_consts", view.term_consts)
        object.__setattr__(self, "rules", view.rules)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "warnings", warnings)

    def __repr__(self) -> str:
        return f"ValidatedSignature({len(self.source.decls)} declarations, {len(self.rules)} rules)"

    __hash__ = object.__hash__

    def __eq__(self, other) -> bool:
        return isinstance(other, ValidatedSignature) and self.source == other.source


# ---------------------------------------------------------------- the guard


def _occurrences(e, depth: int = 0):
    """Yield ``(name, args, depth)`` for each constant application in ``e``."""
    match e:
        case S.Const(name, args) | S.TConst(name, args):
            yield name, args, depth
            for a in args:
                yield from _occurrences(a, depth)
        case S.Lam(_, b):
            yield from _occurrences(b, depth + 1)
        case S.App(f, a) | S.Pair(f, a):
            yield from _occurrences(f, depth)
            yield from _occurrences(a, depth)
        case S.RSig(_, m, _, _, br, p):
            yield from _occurrences(m, depth + 1)
            yield from _occurrences(br, depth + 2)
            yield from _occurrences(p, depth)
        case S.Pi(_, a, b) | S.Sigma(_, a, b):
            yield from _occurrences(a, depth)
            yield from _occurrences(b, depth + 1)


def _subterms(e) -> list:
    out = [e]
    match e:
        case S.Const(_, args) | S.TConst(_, args):
            for a in args:
                out.extend(_subterms(a))
        case S.Pair(a, b):
            out.extend(_subterms(a))
            out.extend(_subterms(b))
    return out


def _is_pattern(e) -> bool:
    match e:
        case S.Var() | S.Star():
            return True
        case S.Pair(a, b):
            return _is_pattern(a) and _is_pattern(b)
        case S.Const(_, args):
            return all(_is_pattern(a) for a in args)
    return False


def _var_counts(e) -> dict[int, int]:
    counts: dict[int, int] = {}

    def go(v: S.Var, d: int):
        if v.index >= d:
            counts[v.index - d] = counts.get(v.index - d, 0) + 1
        return v

    S.map_vars(e, go)
    return counts


def guard_violation(ax: Axiom, defined: dict[str, int], head_rank: int) -> Optional[str]:
    """Why ``ax`` fails the termination guard, or None if it passes.

    The guard: the left side is a constant applied to first-order linear
    patterns; the right side mentions only variables from the left side; and
    each constant in the right side either was declared before the
    head, or is the head itself applied to a structural descent of the
    left-side arguments.
    """
    lhs, rhs = ax.lhs, ax.rhs
    if not isinstance(lhs, (S.Const, S.TConst)):
        return "left side is not headed by a constant"
    if not all(_is_pattern(a) for a in lhs.args):
        return "left-side arguments are not first-order patterns"
    if any(c > 1 for c in _var_counts(lhs).values()):
        return "left side is not linear"
    if not S.free_vars(rhs) <= S.free_vars(lhs):
        return "right side has variables absent from the left side"
    for name, args, depth in _occurrences(rhs):
        if name not in defined:
            continue
        if name == lhs.name:
            if len(args) != len(lhs.args):
                return "recursive call with wrong arity"
            shifted = [[S.shift(s, depth) for s in _subterms(l)] for l in lhs.args]
            ok = all(a in subs for a, subs in zip(args, shifted))
            proper = any(a in subs[1:] for a, subs in zip(args, shifted))
            if not (ok and proper):
                return f"recursive call to {name} does not descend structurally"
        elif defined[name] >= head_rank:
            return f"right side calls {name}, which is not declared before {lhs.name}"
    return None


# ---------------------------------------------------------------- validation


def _flag_type_axiom(ax: Axiom, index: int) -> Optional[str]:
    lhs, rhs = ax.lhs, ax.rhs
    lh = lhs.name if isinstance(lhs, S.TConst) else type(lhs).__name__
    rh = rhs.name if isinstance(rhs, S.TConst) else type(rhs).__name__
    if lh != rh:
        return f"axiom #{index} equates types with distinct heads {lh} and {rh}"
    return None


def validate_signature(sig: Signature, trust_axioms: bool = False) -> ValidatedSignature:
    """Check each declaration against the prefix before it and compile axioms."""
    from .checker import Checker

    view = SignatureView()
    rank: dict[str, int] = {}
    warnings: list[str] = []
    ax_index = 0
    for pos, d in enumerate(sig.decls):
        chk = Checker(view)
        match d:
            case TypeConstant(name, tele):
                if name in view.type_consts or name in view.term_consts:
                    raise IllFormedFormat(name, "duplicate constant")
                v = chk.check_ctx(tele)
                if not v.ok:
                    raise IllFormedFormat(name, v.describe())
                view = SignatureView({**view.type_consts, name: d}, view.term_consts, view.rules)
                rank[name] = pos
            case TermConstant(name, tele, cod):
                if name in view.type_consts or name in view.term_consts:
                    raise IllFormedFormat(name, "duplicate constant")
                v = chk.check_ctx(tele)
                if not v.ok:
                    raise IllFormedFormat(name, v.describe())
                v = chk.check_type(tele, cod)
                if not v.ok:
                    raise IllFormedFormat(name, "codomain: " + v.describe())
                view = SignatureView(view.type_consts, {**view.term_consts, name: d}, view.rules)
                rank[name] = pos
            case Axiom(actx, lhs, rhs, sort):
                idx = ax_index
                ax_index += 1
                v = chk.check_ctx(actx)
                if not v.ok:
                    raise IllTypedAxiom(idx, "context: " + v.describe())
                if sort is None:
                    for side in (lhs, rhs):
                        v = chk.check_type(actx, side)
                        if not v.ok:
                            raise IllTypedAxiom(idx, v.describe())
                    flag = _flag_type_axiom(d, idx)
                    if flag:
                        warnings.append(flag)
                else:
                    v = chk.check_type(actx, sort)
                    if not v.ok:
                        raise IllTypedAxiom(idx, "sort: " + v.describe())
                    for side in (lhs, rhs):
                        v = chk.check_term(actx, side, sort)
                        if not v.ok:
                            raise IllTypedAxiom(idx, v.describe())
                # every constant counts, not only those that already rewrite:
                # a later axiom could make a currently inert constant loop back
                defined = dict(rank)
                if isinstance(lhs, (S.Const, S.TConst)):
                    head_rank = rank[lhs.name]
                else:
                    head_rank = -1
                why = guard_violation(d, defined, head_rank)
                if why is not None and not trust_axioms:
                    raise UnguardedAxiom(idx, why + " (pass trust_axioms to accept it with fuel-bounded rewriting)")
                if not isinstance(lhs, (S.Const, S.TConst)):
                    raise UnguardedAxiom(idx, "left side must be headed by a constant to orient it")
                if why is not None:
                    warnings.append(f"axiom #{idx} is trusted: {why}")
                rule = Rule(
                    idx,
                    lhs.name,
                    "type" if sort is None else "term",
                    actx,
                    tuple(lhs.args),
                    rhs,
                    why is None,
                )
                view = SignatureView(view.type_consts, view.term_consts, view.rules + (rule,))
    return ValidatedSignature(_SEAL, sig, view, tuple(warnings))


EMPTY_SIGNATURE = Signature()


def from_source(src) -> Signature:
    """Collect the declarations of a parsed ``SourceFile``."""
    from .parser import AxiomDecl, TermConstDecl, TypeConstDecl

    sig = Signature()
    for it in src.items:
        if isinstance(it, TypeConstDecl):
            sig = sig.add(TypeConstant(it.name, it.tele))
        elif isinstance(it, TermConstDecl):
            sig = sig.add(TermConstant(it.name, it.tele, it.cod))
        elif isinstance(it, AxiomDecl):
            sig = sig.add(Axiom(it.ctx, it.lhs, it.rhs, it.sort))
    return sig
