import random

import pytest

from depcat import bridge as B
from depcat.finset import POINT, FinSet, LiteralError
from conftest import load

o, i = B.Base("o"), B.Base("i")


@pytest.fixture(scope="module")
def c():
    return B.default_instance()


class TestFinCtxCCC:
    def test_carriers(self, c):
        assert c.carrier(()).elems == (POINT,)
        assert len(c.carrier((o, i, o))) == 4
        assert len(c.carrier_ty(B.Arrow(o, o))) == 4
        assert len(c.carrier_ty(B.Arrow(B.Prod(o, o), o))) == 16

    def test_products_append_one_atom(self, c):
        assert c.product((o,), ()) == (o,)
        assert c.product((o,), (i, o)) == (o, B.Prod(i, o))
        assert c.product((), (o,)) == (o,)

    def test_exponentials_are_pointwise(self, c):
        assert c.exp((o, i), (o, o)) == (B.Arrow(B.Prod(o, i), o),) * 2
        assert c.exp((), (o,)) == (o,)
        assert c.exp((o,), ()) == ()

    def test_decomposition(self, c):
        assert c.decompose((o, i)) == ((o,), (i,))
        assert c.is_atomic((B.Arrow(o, i),)) and not c.is_atomic((o, i))

    def test_types_by_depth(self, c):
        assert len(c.types(0)) == 2
        assert len(c.types(1)) == 2 + 2 * 4

    def test_ccc_laws(self, c):
        rep = B.check_ccc_laws(c, B.bridge_objects(c), seed=1)
        assert rep.ok, rep.text()

    def test_beta_in_the_composite(self, c):
        s = B.functor_S(B.functor_D(c))
        objs = [(), (o,), (i, o), (o, o)]
        rep = B.check_ccc_laws(s, objs, seed=2)
        assert rep.ok, rep.text()
        assert rep["CccBeta"].checked >= 10

    def test_hom_enumeration(self, c):
        assert len(c.hom((o,), (o,))) == 4
        assert len(c.hom((o, o), ())) == 1

    def test_composition_checks_types(self, c):
        with pytest.raises(ValueError):
            c.compose(c.ident((o,)), c.ident((i,)))


class TestDModel:
    def test_constant_dependence(self, c):
        d = B.functor_D(c)
        phi = c.bang((o,))
        assert d.reindex((i,), phi) == (i,)
        assert d.sigma((), (o,), (i,)) == (B.Prod(o, i),)
        assert d.sigma((), (), (o,)) == (o,)
        assert d.pi((), (o,), (i,)) == (B.Arrow(o, i),)

    def test_atomicity_enforced(self, c):
        with pytest.raises(ValueError):
            B.functor_D(c).ext((), (o, i))

    def test_laws(self, c):
        rep = B.check_d_laws(c, budget=30, seed=0)
        # a constant model over a carrier with two points cannot be strict
        assert rep.failing == {"Strictness"}, rep.text()


class TestRightShift:
    def test_terminal_is_not_decomposable(self, c):
        with pytest.raises(B.NotDecomposable):
            B.right_shift(B.functor_D(c), ())

    def test_folded_object(self, c):
        sh = B.right_shift(B.functor_D(c), (o, i, o))
        assert sh.R == (B.Prod(B.Prod(o, i), o),)

    @pytest.mark.parametrize("delta", [(o,), (o, i), (i, o, o), (B.Arrow(o, o), i)])
    def test_lemmas(self, c, delta):
        rows = B.right_shift_lemmas(B.functor_D(c), delta)
        assert [r[0] for r in rows] == ["RightShiftRetract", "RightShiftSection"]
        assert all(ok for _, ok, _ in rows), rows


class TestRoundTrip:
    def test_on_the_nose(self, c):
        objs = [o_ for o_ in B.bridge_objects(c) if len(o_) <= 2]
        rep = B.roundtrip_check(c, objs, seed=0)
        assert rep.ok, rep.text()

    def test_epsilon(self, c):
        d = B.functor_D(c)
        rep = B.roundtrip_check_d(d, [(), (o,), (i, o)], B.bridge_cores(c))
        assert rep.ok, rep.text()
        assert rep["EpsBijection"].checked == 3 * len(B.bridge_cores(c))

    def test_epsilon_inverse_by_hand(self, c):
        d = B.functor_D(c)
        rng = random.Random(0)
        for _ in range(10):
            t = c.random_mor(rng, (o, i), (o,))
            assert B.eps(d, (o, i), (o,), B.eps_inv(d, (o, i), (o,), t)) == t

    def test_wrong_decomposition_mutant(self, c):
        base = B.bridge_suite(c)
        assert base.ok, base.text()
        out = B.run_decomposition_mutant(baseline=base)
        assert out.caught, out.line()
        assert "CtxDecomposition" in out.newly_failing


class TestInstances:
    def test_parse(self):
        c = B.parse_ctxccc("# two atoms\natom o = {0, 1}\natom i = {a}\ndepth 2\n")
        assert c.atoms == {"o": FinSet([0, 1]), "i": FinSet(["a"])} and c.depth == 2

    @pytest.mark.parametrize("text", ["", "atom o = 3", "depth x\natom o = {0}", "nonsense"])
    def test_bad_instance(self, text):
        with pytest.raises(LiteralError):
            B.parse_ctxccc(text)


@pytest.fixture(scope="module")
def corpus():
    src, sig = load("stlc.mltt")
    return sig, [(x.judgement.ctx, x.judgement.tm, x.judgement.ty) for x in src.checks()]


class TestSTLC:
    def test_agreement(self, c, corpus):
        sig, js = corpus
        rows = B.stlc_suite(c, sig, js)
        assert len(rows) >= 20
        assert all(r.ok for r in rows), [(r.label, r.detail) for r in rows if not r.ok]

    def test_comparison_detects_a_swap(self, c):
        # D(c) and classical maps that differ on one input must be reported
        st = ("base", "o")
        d_map = c.p2((), (o,))
        swapped = c.mor((o,), (o,), lambda e: (POINT, 1 - e[1]))
        assert B._compare(c, B._Codec(c), [st], st, d_map, d_map) is None
        assert "classically" in B._compare(c, B._Codec(c), [st], st, d_map, swapped)

    def test_dependent_type_rejected(self, c):
        from depcat import syntax as S

        with pytest.raises(B.NotSimple):
            B.simple_type(S.Pi("x", S.TConst("o"), S.TConst("F", (S.Var(0),))), {"o"})
