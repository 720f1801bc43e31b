import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depcat import cwf
from depcat import finset as F
from depcat.finset import POINT, DFinFun, DFinSet, FinFun, FinSet, FnGraph

X = FinSet([0, 1])
A = DFinSet(X, (FinSet(["a"]), FinSet(["b", "c"])))


@pytest.fixture(scope="module")
def m():
    return F.finset_model()


@pytest.fixture(scope="module")
def baseline():
    return F.check_laws(F.finset_model(), budget=60, seed=0)


class TestStructure:
    def test_comprehension(self, m):
        assert m.ext(X, A).elems == ((0, "a"), (1, "b"), (1, "c"))

    def test_pi_fiber_size(self, m):
        g = m.terminal()
        a = DFinSet(g, (FinSet([0, 1]),))
        ga = m.ext(g, a)
        b = DFinSet(ga, (FinSet(["x"]), FinSet(["y", "z"])))
        (fib,) = m.pi(g, a, b).fibers
        assert len(fib) == 2
        assert set(fib) == {FnGraph(((0, "x"), (1, "y"))), FnGraph(((0, "x"), (1, "z")))}

    def test_dmorphism_count(self):
        assert F.count_dmorphisms(X, A) == 2
        got = F.enumerate_dmorphisms(X, A)
        assert sorted(t.table for t in got) == [("a", "b"), ("a", "c")]

    def test_empty_fiber_has_no_sections(self):
        a = DFinSet(X, (FinSet([]), FinSet(["b"])))
        assert F.enumerate_dmorphisms(X, a) == []

    def test_pair_iso_is_reassociation(self, m):
        b = DFinSet(m.ext(X, A), (FinSet(["u"]), FinSet(["v", "w"]), FinSet([])))
        fwd, back = cwf.pair_iso(m, X, A, b)
        for ((x, a), bb), out in zip(fwd.dom, fwd.table):
            assert out == (x, (a, bb))
        assert m.compose(back, fwd) == m.ident(m.ext(m.ext(X, A), b))

    def test_application_is_lookup(self, m):
        a = F.family(X, [2, 1])
        b = F.family(m.ext(X, a), [2, 1, 2], "xyz")
        k = F.enumerate_dmorphisms(X, m.pi(X, a, b))[3]
        t = DFinFun(X, a, ("b", "a"))
        applied = cwf.app(m, X, a, b, k, t)
        assert applied.table == tuple(k.table[i](t.table[i]) for i in range(2))

    def test_unit_law_cardinalities(self, m):
        for sizes in ([0, 3], [2, 1], [1, 1]):
            a = F.family(X, sizes)
            (_, (to_r, _)) = cwf.unit_law(m, X, a)
            left = m.sigma(X, m.reindex(m.unit(), m.bang(X)), m.reindex(a, m.p1(X, m.reindex(m.unit(), m.bang(X)))))
            assert [len(f) for f in left.fibers] == sizes
            assert [len(f) for f in to_r.tgt[1].fibers] == sizes

    def test_extension_outside_fiber_refused(self, m):
        phi = m.ident(X)
        with pytest.raises(ValueError):
            m.extend(X, A, phi, DFinFun(X, A, ("b", "b")))

    def test_cardinality_limit(self):
        small = F.finset_model(limit=10)
        a = DFinSet(small.terminal(), (F.numbers(4),))
        b = DFinSet(small.ext(small.terminal(), a), (F.numbers(3),) * 4)
        with pytest.raises(F.CardinalityLimit):
            small.pi(small.terminal(), a, b)


class TestLaws:
    def test_every_interface_law_but_strictness(self, baseline):
        assert baseline.failing == {"Strictness"}, baseline.text()

    def test_strictness_witness_needs_two_points(self):
        rep = F.check_laws(F.finset_model(), budget=0, seed=0)
        assert "Strictness" in rep.failing
        assert rep["Strictness"].witness.startswith("[shape")

    def test_derived_laws(self):
        rep = F.check_derived(budget=50, seed=1)
        assert rep.ok, rep.text()
        assert min(r.checked for r in rep.results) >= 30

    def test_report_lines(self, baseline):
        lines = baseline.lines()
        assert lines[0] == "LAW CatId PASS"
        assert any(l.startswith("LAW Strictness FAIL [") for l in lines)

    def test_seeded_runs_are_deterministic(self):
        a = F.check_laws(budget=15, seed=7, exhaustive=False)
        b = F.check_laws(budget=15, seed=7, exhaustive=False)
        assert a.lines() == b.lines()

    def test_pi_unique_up_to_iso(self, m):
        other = F.PermutedPi()
        rng = random.Random(3)
        smp = F.FinSetSampler(m)
        for _ in range(20):
            g = smp.obj(rng)
            a = smp.dobj(rng, g)
            b = smp.dobj(rng, m.ext(g, a))
            assert F.pi_uniqueness(m, other, g, a, b) is None


@pytest.mark.parametrize("name", sorted(F.MUTANTS))
def test_mutant_caught_by_its_laws(name, baseline):
    out = F.run_mutant(name, budget=60, seed=0, baseline=baseline)
    assert out.caught, out.line()


class TestLiterals:
    def test_set(self):
        assert F.parse_literal("{1, 0, 1}") == FinSet([0, 1])

    def test_map_and_arrow(self):
        assert F.parse_literal("{0:a, 1:b}") == {0: "a", 1: "b"}
        assert F.parse_literal("• -> 1") == {POINT: 1}

    def test_env(self):
        env = F.parse_env("N = {0, 1}\nA@N = {0:{a}, 1:{b,c}}\nS(z) = • -> 0\n")
        assert env.sets["N"] == X
        assert env.families["A"] == A
        assert env.structure["z"] == {POINT: 0}

    def test_bad_env_line(self):
        with pytest.raises(F.LiteralError):
            F.parse_env("what is this")

    @given(st.sets(st.integers(0, 5)))
    def test_sets_round_trip(self, xs):
        assert F.parse_literal("{" + ", ".join(map(str, xs)) + "}") == FinSet(xs)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=0, max_size=3))
def test_dmorphism_count_is_product(sizes):
    g = F.numbers(len(sizes))
    a = F.family(g, sizes)
    expected = 1
    for n in sizes:
        expected *= n
    assert F.count_dmorphisms(g, a) == expected == len(F.enumerate_dmorphisms(g, a))
