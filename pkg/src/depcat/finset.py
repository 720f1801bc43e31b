"""Finite sets and dependent functions as a strict model, by explicit enumeration.

Atoms are ints, strings, tuples of atoms, or :class:`FnGraph` values.  Every
carrier is kept in one canonical order so that the strict laws hold as literal
equality of Python values.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from . import cwf

DEFAULT_LIMIT = 10**6
POINT = "•"


class CardinalityLimit(Exception):
    def __init__(self, size: int, limit: int, what: str = "carrier"):
        super().__init__(f"{what} would have {size} elements (limit {limit})")
        self.size, self.limit = size, limit


def atom_key(a) -> tuple:
    if isinstance(a, bool):
        return (0, int(a))
    if isinstance(a, int):
        return (0, a)
    if isinstance(a, str):
        return (1, a)
    if isinstance(a, tuple):
        return (2, tuple(atom_key(x) for x in a))
    if isinstance(a, FnGraph):
        return (3, tuple((atom_key(i), atom_key(o)) for i, o in a.pairs))
    raise TypeError(f"not an atom: {a!r}")


def show_atom(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(show_atom(x) for x in a) + ")"
    if isinstance(a, FnGraph):
        return "{" + ",".join(f"{show_atom(i)}:{show_atom(o)}" for i, o in a.pairs) + "}"
    return str(a)


@dataclass(frozen=True)
class FnGraph:
    """A finite function as a hashable graph (an element of a Pi fiber)."""

    pairs: tuple

    def __call__(self, x):
        for i, o in self.pairs:
            if i == x:
                return o
        raise KeyError(x)

    def __repr__(self) -> str:
        return show_atom(self)


class FinSet:
    __slots__ = ("elems", "_index", "_hash")

    def __init__(self, elems: Iterable = ()):
        uniq = {}
        for e in elems:
            uniq.setdefault(atom_key(e), e)
        self.elems = tuple(uniq[k] for k in sorted(uniq))
        self._index = None
        self._hash = None

    @classmethod
    def _sorted(cls, elems: tuple) -> "FinSet":
        s = object.__new__(cls)
        s.elems, s._index, s._hash = elems, None, None
        return s

    def index(self) -> dict:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elems)}
        return self._index

    def __contains__(self, x) -> bool:
        return x in self.index()

    def __iter__(self):
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self.elems == other.elems

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.elems)
        return self._hash

    def __repr__(self) -> str:
        return "{" + ",".join(show_atom(e) for e in self.elems) + "}"


@dataclass(frozen=True)
class DFinSet:
    """A family ``x |-> A_x`` over ``base``; ``fibers`` aligned with ``base``."""

    base: FinSet
    fibers: tuple

    def __post_init__(self):
        if len(self.fibers) != len(self.base):
            raise ValueError("family is not total on its base")

    def fiber(self, x) -> FinSet:
        return self.fibers[self.base.index()[x]]

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{show_atom(x)}:{f!r}" for x, f in zip(self.base, self.fibers)) + "}"


@dataclass(frozen=True)
class FinFun:
    dom: FinSet
    cod: FinSet
    table: tuple

    def __call__(self, x):
        return self.table[self.dom.index()[x]]

    def __repr__(self) -> str:
        return "{" + ",".join(f"{show_atom(x)}->{show_atom(y)}" for x, y in zip(self.dom, self.table)) + "}"


@dataclass(frozen=True)
class DFinFun:
    """A dependent function ``x |-> f(x) in fam_x`` with ``fam`` over ``dom``."""

    dom: FinSet
    fam: DFinSet
    table: tuple

    def __call__(self, x):
        return self.table[self.dom.index()[x]]

    def __repr__(self) -> str:
        return "{" + ",".join(f"{show_atom(x)}->{show_atom(y)}" for x, y in zip(self.dom, self.table)) + "}"

    def graph(self) -> tuple:
        return tuple(zip(self.dom.elems, self.table))


def _check(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


class FinSetModel(cwf.Model):
    name = "finset"

    def __init__(self, limit: int = DEFAULT_LIMIT, validate: bool = True):
        self.limit = limit
        self.validate = validate
        self._T = FinSet([POINT])
        self._pi_cache: dict = {}

    # -- category
    def terminal(self):
        return self._T

    def bang(self, g):
        return FinFun(g, self._T, (POINT,) * len(g))

    def ident(self, g):
        return FinFun(g, g, g.elems)

    def compose(self, f, g):
        _check(g.cod == f.dom, "composition of non-composable functions")
        ix = f.dom.index()
        return FinFun(g.dom, f.cod, tuple(f.table[ix[y]] for y in g.table))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    # -- dependence
    def reindex(self, a, phi):
        _check(a.base == phi.cod, "reindexing along a function into a different base")
        ix = a.base.index()
        return DFinSet(phi.dom, tuple(a.fibers[ix[y]] for y in phi.table))

    def reindex_tm(self, t, phi):
        _check(t.dom == phi.cod, "substituting along a function into a different base")
        ix = t.dom.index()
        return DFinFun(phi.dom, self.reindex(t.fam, phi), tuple(t.table[ix[y]] for y in phi.table))

    def ext(self, g, a):
        _check(a.base == g, "comprehension of a family over another base")
        # elements already come out in canonical order: g sorted, each fiber sorted
        return FinSet._sorted(tuple((x, v) for x, fib in zip(g.elems, a.fibers) for v in fib.elems))

    def p1(self, g, a):
        ga = self.ext(g, a)
        return FinFun(ga, g, tuple(x for x, _ in ga.elems))

    def p2(self, g, a):
        ga = self.ext(g, a)
        return DFinFun(ga, self.reindex(a, self.p1(g, a)), tuple(v for _, v in ga.elems))

    def extend(self, g, a, phi, t):
        _check(phi.cod == g and t.dom == phi.dom, "extension of mismatched components")
        if self.validate:
            for y, v in zip(phi.dom, t.table):
                _check(v in a.fiber(phi(y)), f"extension leaves the fiber at {show_atom(y)}")
        return FinFun(phi.dom, self.ext(g, a), tuple(zip(phi.table, t.table)))

    # -- unit
    def unit_fiber(self) -> FinSet:
        return FinSet([POINT])

    def unit(self):
        return DFinSet(self._T, (self.unit_fiber(),))

    def unit_bang(self, g):
        return DFinFun(g, self.reindex(self.unit(), self.bang(g)), (POINT,) * len(g))

    # -- Sigma
    def sigma_fiber(self, g, x, a_x: FinSet, b, ga_index) -> FinSet:
        return FinSet._sorted(tuple((u, v) for u in a_x.elems for v in b.fibers[ga_index[(x, u)]].elems))

    def sigma(self, g, a, b):
        ga = self.ext(g, a)
        _check(b.base == ga, "Sigma of a family over another base")
        ix = ga.index()
        return DFinSet(g, tuple(self.sigma_fiber(g, x, ax, b, ix) for x, ax in zip(g.elems, a.fibers)))

    def sigma_unpair(self, g, a, b, w) -> tuple:
        return w

    def varpi1(self, g, a, b):
        s = self.sigma(g, a, b)
        gs = self.ext(g, s)
        fam = self.reindex(a, self.p1(g, s))
        return DFinFun(gs, fam, tuple(self.sigma_unpair(g, a, b, w)[0] for _, w in gs.elems))

    def varpi2(self, g, a, b):
        s = self.sigma(g, a, b)
        gs = self.ext(g, s)
        q = FinFun(gs, self.ext(g, a), tuple((x, self.sigma_unpair(g, a, b, w)[0]) for x, w in gs.elems))
        fam = self.reindex(b, q)
        return DFinFun(gs, fam, tuple(self.sigma_unpair(g, a, b, w)[1] for _, w in gs.elems))

    def sigma_pair(self, g, a, b, x, u, v):
        return (u, v)

    def spair(self, g, a, b, phi, s, t):
        _check(s.dom == phi.dom and t.dom == phi.dom, "pairing of mismatched components")
        sg = self.sigma(g, a, b)
        fam = self.reindex(sg, phi)
        return DFinFun(
            phi.dom, fam, tuple(self.sigma_pair(g, a, b, phi(y), u, v) for y, u, v in zip(phi.dom, s.table, t.table))
        )

    # -- Pi
    def pi_fiber(self, x, a_x: FinSet, b, ga_index) -> FinSet:
        fibs = [b.fibers[ga_index[(x, u)]].elems for u in a_x.elems]
        size = math.prod(len(f) for f in fibs)
        if size > self.limit:
            raise CardinalityLimit(size, self.limit, "Pi fiber")
        return FinSet._sorted(
            tuple(FnGraph(tuple(zip(a_x.elems, choice))) for choice in itertools.product(*fibs))
        )

    def pi(self, g, a, b):
        key = (g, a, b)
        hit = self._pi_cache.get(key)
        if hit is not None:
            return hit
        ga = self.ext(g, a)
        _check(b.base == ga, "Pi of a family over another base")
        ix = ga.index()
        out = DFinSet(g, tuple(self.pi_fiber(x, ax, b, ix) for x, ax in zip(g.elems, a.fibers)))
        if len(self._pi_cache) > 4096:
            self._pi_cache.clear()
        self._pi_cache[key] = out
        return out

    # how an element of a Pi fiber acts, and how a graph is stored; overridden by variants
    def pi_decode(self, g, x, fib: FinSet, f: FnGraph) -> FnGraph:
        return f

    def pi_encode(self, g, x, fib: FinSet, graph: FnGraph) -> FnGraph:
        return graph

    def dev(self, g, a, b):
        p = self.pi(g, a, b)
        gp = self.ext(g, p)
        a1 = self.reindex(a, self.p1(g, p))
        dom = self.ext(gp, a1)
        fam = self.reindex(b, cwf.plus(self, self.p1(g, p), a))
        table = tuple(self.pi_decode(g, x, p.fiber(x), f)(u) for (x, f), u in dom.elems)
        return DFinFun(dom, fam, table)

    def lam(self, g, a, b, f):
        p = self.pi(g, a, b)
        ga = self.ext(g, a)
        _check(f.dom == ga, "currying a function with the wrong domain")
        table = []
        for x, ax in zip(g.elems, a.fibers):
            graph = FnGraph(tuple((u, f((x, u))) for u in ax.elems))
            table.append(self.pi_encode(g, x, p.fiber(x), graph))
        return DFinFun(g, p, tuple(table))

    # -- equality
    def eq_obj(self, g, h) -> bool:
        return g == h

    def typed_as(self, g, a, t) -> bool:
        """Whether ``t`` is a D-morphism ``g => a`` (every value in its fiber)."""
        if not (isinstance(t, DFinFun) and t.dom == g and t.fam == a):
            return False
        return all(v in fib for v, fib in zip(t.table, a.fibers))

    def eq_mor(self, f, g) -> bool:
        return f == g

    def eq_dobj(self, g, a, b) -> bool:
        return a == b

    def eq_dmor(self, g, a, s, t) -> bool:
        return s == t

    def show(self, x, g=None) -> str:
        text = repr(x)
        return text if len(text) <= 160 else text[:157] + "..."


def finset_model(limit: int = DEFAULT_LIMIT) -> FinSetModel:
    return FinSetModel(limit)


# ---------------------------------------------------------------- enumeration


def count_dmorphisms(g: FinSet, a: DFinSet) -> int:
    return math.prod(len(f) for f in a.fibers)


def enumerate_dmorphisms(g: FinSet, a: DFinSet, limit: int = DEFAULT_LIMIT) -> list[DFinFun]:
    """Every dependent function ``g => a``, in lexicographic table order."""
    if a.base != g:
        raise ValueError("family is not over the given base")
    n = count_dmorphisms(g, a)
    if n > limit:
        raise CardinalityLimit(n, limit, "D-morphism set")
    return [DFinFun(g, a, tab) for tab in itertools.product(*(f.elems for f in a.fibers))]


def enumerate_morphisms(d: FinSet, g: FinSet, limit: int = DEFAULT_LIMIT) -> list[FinFun]:
    n = len(g) ** len(d)
    if n > limit:
        raise CardinalityLimit(n, limit, "hom-set")
    return [FinFun(d, g, tab) for tab in itertools.product(g.elems, repeat=len(d))]


def family(base: FinSet, sizes: Iterable[int], letters: str = "abc") -> DFinSet:
    """A family over ``base`` whose fiber at the i-th point has ``sizes[i]`` letters."""
    return DFinSet(base, tuple(FinSet(letters[:n]) for n in sizes))


def numbers(n: int) -> FinSet:
    return FinSet(range(n))


class FinSetSampler(cwf.Sampler):
    FIBER_WEIGHTS = (1, 3, 3, 2)  # sizes 0..3

    def __init__(self, m: FinSetModel, max_base: int = 3, max_fiber: int = 3):
        self.m = m
        self.max_base = max_base
        self.max_fiber = max_fiber

    def _fiber_size(self, rng: random.Random) -> int:
        return rng.choices(range(self.max_fiber + 1), self.FIBER_WEIGHTS[: self.max_fiber + 1])[0]

    def obj(self, rng):
        n = rng.choices(range(self.max_base + 1), (1, 3, 3, 2)[: self.max_base + 1])[0]
        if rng.random() < 0.2:
            return FinSet(["p", "q", "r"][:n])
        return numbers(n)

    def dobj(self, rng, g):
        letters = rng.choice(("abc", "xyz"))
        return family(g, [self._fiber_size(rng) for _ in g], letters)

    def mor(self, rng, d, g):
        if len(g) == 0 and len(d) > 0:
            return None
        return FinFun(d, g, tuple(rng.choice(g.elems) for _ in d))

    def dmor(self, rng, g, a):
        if any(len(f) == 0 for f in a.fibers):
            return None
        return DFinFun(g, a, tuple(rng.choice(f.elems) for f in a.fibers))

    def dmors(self, rng, g, a, limit):
        if count_dmorphisms(g, a) <= limit:
            return enumerate_dmorphisms(g, a, limit)
        seen = {}
        for _ in range(limit):
            t = self.dmor(rng, g, a)
            seen.setdefault(t.table, t)
        return list(seen.values())


def exhaustive_shapes(max_base: int = 3, max_fiber: int = 3):
    """Every base ``{0..n-1}`` with ``n <= max_base`` and every fiber-size vector."""
    for n in range(max_base + 1):
        g = numbers(n)
        for sizes in itertools.product(range(max_fiber + 1), repeat=n):
            yield g, family(g, sizes)


def law_instances(m: FinSetModel, smp: FinSetSampler, budget: int, seed: int, exhaustive: bool = True):
    rng = random.Random(seed)
    if exhaustive:
        for i, (g, a) in enumerate(exhaustive_shapes(smp.max_base, smp.max_fiber)):
            sizes = "".join(str(len(f)) for f in a.fibers)
            yield cwf.build_instance(m, smp, rng, f"shape|G|={len(g)},A={sizes or '-'}", g, a)
    for i in range(budget):
        yield cwf.build_instance(m, smp, rng, f"random#{i}")


def check_laws(
    m: Optional[FinSetModel] = None, budget: int = 200, seed: int = 0, exhaustive: bool = True, limit: int = 64
) -> cwf.LawReport:
    """The full law suite over exhaustive small shapes plus ``budget`` random instances."""
    m = m or finset_model()
    smp = FinSetSampler(m)
    rep = cwf.run_laws(m, smp, law_instances(m, smp, budget, seed, exhaustive), cwf.AXIOM_LAWS, limit)
    rep.seed = seed
    return rep


def check_derived(m: Optional[FinSetModel] = None, budget: int = 60, seed: int = 0, limit: int = 64):
    m = m or finset_model()
    smp = FinSetSampler(m)
    rep = cwf.run_laws(m, smp, law_instances(m, smp, budget, seed, False), cwf.DERIVED_LAWS, limit)
    rep.seed = seed
    return rep


# ---------------------------------------------------------------- variants and mutants


def _rotate(fib: FinSet, f, steps: int):
    if len(fib) == 0:
        return f
    ix = fib.index()[f]
    return fib.elems[(ix + steps) % len(fib)]


class PermutedPi(FinSetModel):
    """Same carriers, but each Pi fiber element denotes its successor's graph."""

    name = "finset-permuted-pi"

    def pi_decode(self, g, x, fib, f):
        return _rotate(fib, f, 1)

    def pi_encode(self, g, x, fib, graph):
        return _rotate(fib, graph, -1)


def pi_uniqueness(m: FinSetModel, m2: FinSetModel, g, a, b) -> Optional[str]:
    """Build iota/jota between two Pi structures and check they are mutually inverse."""
    p, p2 = m.pi(g, a, b), m2.pi(g, a, b)
    b_plus = lambda mm, q: mm.reindex(b, cwf.plus(mm, mm.p1(g, q), a))
    gp, gp2 = m.ext(g, p), m.ext(g, p2)
    iota = m2.lam(gp, m.reindex(a, m.p1(g, p)), b_plus(m, p), m.dev(g, a, b))
    jota = m.lam(gp2, m.reindex(a, m.p1(g, p2)), b_plus(m, p2), m2.dev(g, a, b))
    i = cwf.DObjMorphism(m.ident(g), iota, (g, p), (g, p2))
    j = cwf.DObjMorphism(m.ident(g), jota, (g, p2), (g, p))
    if not cwf.dobj_eq(m, cwf.dobj_compose(m, j, i), cwf.dobj_id(m, g, p)):
        return "jota o iota != id"
    if not cwf.dobj_eq(m, cwf.dobj_compose(m, i, j), cwf.dobj_id(m, g, p2)):
        return "iota o jota != id"
    return None


class WrongV(FinSetModel):
    """Second projection rotated inside each fiber."""

    name = "mutant:wrong-v"

    def p2(self, g, a):
        ga = self.ext(g, a)
        table = tuple(_rotate(a.fiber(x), v, 1) for x, v in ga.elems)
        return DFinFun(ga, self.reindex(a, self.p1(g, a)), table)


class BrokenSigmaCoherence(FinSetModel):
    """Sigma fibers tagged with the size of the base they were built over."""

    name = "mutant:broken-sigma-coherence"

    def sigma_fiber(self, g, x, a_x, b, ga_index):
        plain = super().sigma_fiber(g, x, a_x, b, ga_index)
        return FinSet._sorted(tuple((w, len(g)) for w in plain.elems))

    def sigma_unpair(self, g, a, b, w):
        return w[0]

    def sigma_pair(self, g, a, b, x, u, v):
        return ((u, v), len(g))


class NonUniqueBang(FinSetModel):
    """A two-point unit."""

    name = "mutant:non-unique-bang"

    def unit_fiber(self):
        return FinSet([POINT, "◦"])


class BrokenDevSubstitution(FinSetModel):
    """Pi elements encoded by a rotation that depends on the size of the base."""

    name = "mutant:broken-dev-substitution"

    def pi_decode(self, g, x, fib, f):
        return _rotate(fib, f, len(g))

    def pi_encode(self, g, x, fib, graph):
        return _rotate(fib, graph, -len(g))


MUTANTS = {
    "wrong-v": (WrongV, "ConsR", lambda: cwf.laws_using("p2")),
    "broken-sigma-coherence": (BrokenSigmaCoherence, "Coh0Sigma", lambda: {"Coh0Sigma", "Coh1Sigma", "Coh2Sigma"}),
    "non-unique-bang": (NonUniqueBang, "UnitUniq", lambda: {"UnitUniq"}),
    "broken-dev-substitution": (BrokenDevSubstitution, "DcompPi2", lambda: {"DcompPi2", "UP2Pi", "UP3Pi"}),
}


@dataclass
class MutantOutcome:
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


def run_mutant(name: str, budget: int = 60, seed: int = 0, baseline: Optional[cwf.LawReport] = None) -> MutantOutcome:
    cls, primary, allowed = MUTANTS[name]
    if baseline is None:
        baseline = check_laws(finset_model(), budget, seed)
    rep = check_laws(cls(), budget, seed)
    return MutantOutcome(name, primary, rep.failing - baseline.failing, set(allowed()))


# ---------------------------------------------------------------- literals

_TOKEN = re.compile(r"\s*(->|[{}():,=@\[\]]|[A-Za-z0-9_'•◦.\-]+)")


class LiteralError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"unexpected character {text[pos]!r} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _atom(tok: str):
    if re.fullmatch(r"-?\d+", tok):
        return int(tok)
    return tok


def parse_literal(text: str):
    """Parse a set ``{..}``, map ``{k:v,..}``, ``k -> v``, tuple ``(..)`` or atom.

    Sets come back as :class:`FinSet`, maps as ``dict``.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def eat(t=None):
        nonlocal pos
        tok = peek()
        if tok is None or (t is not None and tok != t):
            raise LiteralError(f"expected {t or 'a value'} in {text!r}")
        pos += 1
        return tok

    def value():
        tok = peek()
        if tok == "{":
            eat("{")
            keys, vals, is_map = [], [], None
            while peek() != "}":
                k = value()
                if peek() == ":":
                    eat(":")
                    v = value()
                    if is_map is False:
                        raise LiteralError("mixed set and map literal")
                    is_map = True
                    keys.append(k)
                    vals.append(v)
                else:
                    if is_map:
                        raise LiteralError("mixed set and map literal")
                    is_map = False
                    keys.append(k)
                if peek() == ",":
                    eat(",")
                elif peek() != "}":
                    raise LiteralError(f"expected ',' or '}}' in {text!r}")
            eat("}")
            return dict(zip(keys, vals)) if is_map else FinSet(keys)
        if tok == "(":
            eat("(")
            items = [value()]
            while peek() == ",":
                eat(",")
                items.append(value())
            eat(")")
            return items[0] if len(items) == 1 else tuple(items)
        return _atom(eat())

    v = value()
    if peek() == "->":
        eat("->")
        v = {v: value()}
    if peek() is not None:
        raise LiteralError(f"trailing input {' '.join(toks[pos:])!r}")
    return v


def parse_family(text: str, base: FinSet) -> DFinSet:
    lit = parse_literal(text)
    if isinstance(lit, FinSet):  # constant family
        return DFinSet(base, (lit,) * len(base))
    if not isinstance(lit, dict) or set(lit) != set(base.elems):
        raise LiteralError("family literal must assign a set to every base point")
    return DFinSet(base, tuple(_as_set(lit[x]) for x in base))


def _as_set(v) -> FinSet:
    if isinstance(v, FinSet):
        return v
    raise LiteralError(f"expected a set literal, got {v!r}")


@dataclass
class Environment:
    """Named sets and families from an env file (``N={..}``, ``A@X={..}``, ``S(c) = ..``)."""

    sets: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    structure: dict = field(default_factory=dict)


def parse_env(text: str) -> Environment:
    env = Environment()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"S\(\s*([A-Za-z_][\w']*)\s*\)\s*=\s*(.+)", line)
        if m:
            env.structure[m.group(1)] = parse_literal(m.group(2))
            continue
        m = re.fullmatch(r"([A-Za-z_][\w']*)\s*@\s*([A-Za-z_][\w']*)\s*=\s*(.+)", line)
        if m:
            name, base = m.group(1), m.group(2)
            if base not in env.sets:
                raise LiteralError(f"line {lineno}: unknown base set {base}")
            env.families[name] = parse_family(m.group(3), env.sets[base])
            continue
        m = re.fullmatch(r"([A-Za-z_][\w']*)\s*=\s*(.+)", line)
        if m:
            env.sets[m.group(1)] = _as_set(parse_literal(m.group(2)))
            continue
        raise LiteralError(f"line {lineno}: cannot read {raw!r}")
    return env
