import random
import warnings

import pytest

from depcat import cwf
from depcat import syntax as S
from depcat import termmodel as T
from conftest import load

U = S.Unit()


@pytest.fixture(scope="module")
def m():
    return T.term_model()


def test_closed_type_pool_sizes():
    assert [len(T.closed_types(d)) for d in range(3)] == [1, 3, 19]


def test_contexts_enumeration():
    assert len(T.contexts(T.closed_types(2), 2)) == 1 + 19 + 19 * 19


def test_structure_maps_are_syntax(m):
    g = S.ctx(("x", U))
    assert m.ext(g, U) == S.ctx(("x", U), ("v1", U))
    assert m.p2(g, U) == S.Var(0)
    assert m.p1(g, U).comps == (S.Var(1),)
    assert m.lam(g, U, U, S.Var(0)) == S.Lam("v1", S.Var(0))


def test_equality_is_judgmental(m):
    g = S.ctx(("t", U))
    assert m.eq_dmor(g, U, S.Var(0), S.Star())
    pi = S.Pi("x", U, U)
    assert m.eq_dobj(S.EMPTY, pi, S.Pi("y", U, U))
    assert not m.eq_dobj(S.EMPTY, pi, S.Sigma("x", U, U))


def test_type_composition_over_phi(m):
    smp = T.TermSampler(m)
    rng = random.Random(0)
    for _ in range(15):
        g = smp.obj(rng)
        d = smp.obj(rng)
        e = smp.obj(rng)
        phi, psi = smp.mor(rng, d, g), smp.mor(rng, e, d)
        a = smp.dobj(rng, g)
        assert m.eq_dobj(e, m.reindex(a, m.compose(phi, psi)), m.reindex(m.reindex(a, phi), psi))


def test_sampled_inhabitants_typecheck(m):
    smp = T.TermSampler(m)
    rng = random.Random(1)
    for a in T.closed_types(2):
        t = smp.inhabit(rng, S.EMPTY, a)
        assert t is not None and m.checker.check_term(S.EMPTY, t, a).ok


def test_laws_on_a_slice_of_phi():
    rep = T.check_cwf_laws_on_term_model(stride=12)
    assert rep.ok, rep.text()
    assert rep.instances >= 30


def test_laws_with_a_signature():
    _, sig = load("bool.mltt")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rep = T.check_laws(sig, budget=25, seed=2)
    # with two distinct variables of type B[] the strictness equation has a counterexample
    assert rep.failing == {"Strictness"}, rep.text()
    assert rep["Strictness"].witness.endswith("v0 != v1")


def test_wrong_variable_is_caught():
    bad = T.WrongV()
    rep = T.check_cwf_laws_on_term_model(stride=12, model=bad)
    assert "ConsR" in rep.failing
    assert rep.failing <= cwf.laws_using("p2")
