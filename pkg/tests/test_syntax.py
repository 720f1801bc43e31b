from hypothesis import given, settings
from hypothesis import strategies as st

from depcat import syntax as S
from strategies import exprs, terms, types

U = S.Unit()


def lam(body, name="y"):
    return S.Lam(name, body)


class TestSubstitution:
    def test_variable_case(self):
        a = S.Pair(S.Star(), S.Star())
        assert S.instantiate(S.Var(0), a) == a

    def test_unused_variable(self):
        ident = lam(S.Var(0))
        assert S.instantiate(ident, S.Var(3)) == ident

    def test_capture_avoidance(self):
        # (\y. x)[y/x] must not capture: the image is the outer y, one binder out
        body = lam(S.Var(1, "x"))
        out = S.subst_top(body, (S.Var(0, "y"),), tail=1)
        assert out == lam(S.Var(1))
        assert out != lam(S.Var(0))

    def test_named_substitution_keeps_scope(self):
        e = S.Pair(S.Var(0), S.Var(1))
        assert S.subst(e, S.Var(1), S.Star()) == S.Pair(S.Var(0), S.Star())

    @given(terms(2), terms(2))
    def test_instantiate_after_shift_is_identity(self, e, a):
        assert S.instantiate(S.shift(e, 1), a) == e

    @given(exprs(3), st.integers(1, 3))
    def test_shift_inverse(self, e, k):
        assert S.shift(S.shift(e, k), -k) == e

    @given(exprs(3))
    def test_free_vars_bounded(self, e):
        assert all(i < 3 for i in S.free_vars(e))


class TestContextMorphisms:
    G = S.ctx(("x", U), ("y", S.Pi("z", U, U)))

    def test_identity_shapes(self):
        assert S.id_cm(S.EMPTY).comps == ()
        assert S.id_cm(S.ctx(("x", U))).comps == (S.Var(0),)
        assert S.id_cm(S.ctx(("x", U), ("y", U))).comps == (S.Var(1), S.Var(0))

    @given(exprs(2))
    def test_identity_substitution(self, e):
        assert S.gen_subst(e, S.id_cm(self.G)) == e

    def test_substitution_under_binder(self):
        f = S.CtxMor(S.EMPTY, S.ctx(("x", U)), (S.Star(),))
        pi = S.Pi("y", U, S.Pair(S.Var(1), S.Var(0)))
        assert S.gen_subst(pi, f) == S.Pi("y", U, S.Pair(S.Star(), S.Var(0)))

    def test_unit_laws(self):
        g = S.CtxMor(self.G, S.ctx(("a", U)), (S.App(S.Var(0), S.Var(1)),))
        assert S.compose_cm(g, S.id_cm(self.G)) == g
        assert S.compose_cm(S.id_cm(g.cod), g) == g

    @given(st.lists(terms(2, 2), min_size=2, max_size=2), st.lists(terms(2, 2), min_size=2, max_size=2), terms(2, 2))
    @settings(max_examples=60)
    def test_associativity_is_syntactic(self, fs, gs, h):
        G = S.ctx(("a", U), ("b", U))
        f = S.CtxMor(G, G, tuple(fs))
        g = S.CtxMor(G, G, tuple(gs))
        hh = S.CtxMor(G, S.ctx(("c", U)), (h,))
        assert S.compose_cm(S.compose_cm(hh, g), f) == S.compose_cm(hh, S.compose_cm(g, f))

    def test_mismatch_rejected(self):
        f = S.CtxMor(S.EMPTY, S.ctx(("x", U)), (S.Star(),))
        try:
            S.compose_cm(f, f)
        except S.DomainMismatch:
            return
        raise AssertionError("composition across mismatched contexts went through")


class TestAlpha:
    def test_renamed_binders(self):
        assert S.alpha_eq(S.Lam("x", S.Var(0)), S.Lam("y", S.Var(0)))
        assert S.alpha_eq(S.Pi("x", U, U), S.Pi("y", U, U))

    def test_binding_position_matters(self):
        k1 = S.Lam("x", S.Lam("y", S.Var(1)))
        k2 = S.Lam("y", S.Lam("x", S.Var(0)))
        assert not S.alpha_eq(k1, k2)

    @given(types(1))
    def test_reflexive(self, t):
        assert S.alpha_eq(t, t)


class TestBeta:
    def test_normalizes_redex(self):
        assert S.beta_nf(S.App(S.Lam("x", S.Pair(S.Var(0), S.Var(0))), S.Star())) == S.Pair(S.Star(), S.Star())

    def test_budget(self):
        w = S.Lam("x", S.App(S.Var(0), S.Var(0)))
        try:
            S.beta_nf(S.App(w, w), fuel=50)
        except S.BetaBudget:
            return
        raise AssertionError("omega normalized")
