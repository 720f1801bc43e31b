import pytest

from depcat import checker as C
from depcat import parser as P
from depcat import syntax as S
from depcat.signature import EMPTY_SIGNATURE, validate_signature
from conftest import FIXTURES, load

U = S.Unit()
PHI = validate_signature(EMPTY_SIGNATURE)


def _golden(kind: str):
    src, sig = load(f"golden/{kind}.mltt", prelude="golden/prelude.mltt")
    ch = C.Checker(sig)
    return [pytest.param(ch, c, id=f"{kind}:{c.span.line - _prelude_lines()}") for c in src.checks()]


def _prelude_lines() -> int:
    return len((FIXTURES / "golden/prelude.mltt").read_text().splitlines())


@pytest.mark.parametrize("ch, item", _golden("positive"))
def test_golden_positive(ch, item):
    v = ch.check(item.judgement)
    assert isinstance(v, C.Derivable), f"{P.pretty_judgement(item.judgement)}: {v.describe()}"


@pytest.mark.parametrize("ch, item", _golden("negative"))
def test_golden_negative(ch, item):
    v = ch.check(item.judgement)
    assert isinstance(v, C.NotDerivable), f"{P.pretty_judgement(item.judgement)}: {v.describe()}"


class TestSpecExamples:
    def test_contexts(self):
        assert C.check_ctx(PHI, S.EMPTY).ok
        assert C.check_ctx(PHI, S.ctx(("x", U), ("y", U))).ok
        assert isinstance(C.check_ctx(PHI, S.ctx(("x", U), ("x", U))), C.NotDerivable)

    def test_types(self):
        g = S.ctx(("x", U))
        assert C.check_type(PHI, g, U).ok
        assert C.check_type(PHI, S.EMPTY, S.Pi("x", U, S.Sigma("y", U, U))).ok

    def test_variable_infers_weakened_type(self):
        g = S.ctx(("a", U), ("f", S.Pi("x", U, U)), ("b", U))
        assert C.infer_term(PHI, g, S.Var(1)) == S.Pi("x", U, U)

    def test_redex_infers(self):
        assert C.infer_term(PHI, S.EMPTY, S.App(S.Lam("x", S.Var(0)), S.Star())) == U

    def test_pair_against_sigma_and_pi(self):
        p = S.Pair(S.Star(), S.Star())
        assert C.check_term(PHI, S.EMPTY, p, S.Sigma("x", U, U)).ok
        assert not C.check_term(PHI, S.EMPTY, p, S.Pi("x", U, U)).ok

    def test_computation_and_uniqueness(self):
        g = S.ctx(("a", U))
        redex = S.App(S.Lam("x", S.Pair(S.Var(0), S.Var(0))), S.Var(0))
        assert C.equal_terms(PHI, g, redex, S.Pair(S.Var(0), S.Var(0)), S.Sigma("x", U, U)).ok
        assert C.equal_terms(PHI, S.ctx(("t", U)), S.Var(0), S.Star(), U).ok
        pi = S.Pi("x", U, S.Sigma("y", U, U))
        eta = S.Lam("x", S.App(S.Var(1), S.Var(0)))
        assert C.equal_terms(PHI, S.ctx(("f", pi)), eta, S.Var(0), pi).ok

    def test_context_morphisms(self):
        g = S.ctx(("x", U), ("y", U))
        assert C.check_ctx_morphism(PHI, g, (), S.EMPTY).ok
        assert C.check_ctx_morphism(PHI, g, S.id_cm(g).comps, g).ok
        assert C.check_ctx_morphism(PHI, S.EMPTY, (S.Star(),), S.ctx(("x", U))).ok
        assert not C.check_ctx_morphism(PHI, S.EMPTY, (S.Lam("x", S.Var(0)),), S.ctx(("x", U))).ok

    def test_derived_projections(self):
        A, B = U, S.Pi("x", U, U)
        g = S.ctx(("a", A), ("b", B))
        p1, p2 = C.derived_projections(PHI, g, S.Pair(S.Var(1), S.Var(0)), A, S.shift(B, 1))
        assert C.equal_terms(PHI, g, p1, S.Var(1), A).ok
        assert C.equal_terms(PHI, g, p2, S.Var(0), B).ok
        sig = S.Sigma("x", A, S.shift(B, 1))
        h = S.ctx(("p", sig))
        q1, q2 = C.derived_projections(PHI, h, S.Var(0), A, S.shift(B, 1))
        assert C.equal_terms(PHI, h, S.Pair(q1, q2), S.Var(0), sig).ok


class TestSignatureExamples:
    def test_naturals(self):
        src, sig = load("nat.mltt")
        ch = C.Checker(sig)
        assert all(ch.check(c.judgement).ok for c in src.checks())

    def test_identity_types_trusted(self):
        from depcat import signature

        src = P.parse_file((FIXTURES / "identity.mltt").read_text())
        sig = signature.validate_signature(signature.from_source(src), trust_axioms=True)
        assert all(C.Checker(sig).check(c.judgement).ok for c in src.checks())


class TestFuel:
    def test_exhaustion_is_unknown(self):
        src, sig = load("nat.mltt")
        *_, last = src.checks()
        assert isinstance(C.Checker(sig, fuel=2).check(last.judgement), C.Unknown)
        assert isinstance(C.Checker(sig, fuel=1000).check(last.judgement), C.Derivable)

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("DEPCAT_FUEL", "3")
        assert C.Checker(PHI).fuel == 3
        monkeypatch.setenv("DEPCAT_FUEL", "junk")
        assert C.Checker(PHI).fuel == C.DEFAULT_FUEL

    def test_verdicts_describe_failures(self):
        v = C.check_term(PHI, S.EMPTY, S.Star(), S.Pi("x", U, U))
        assert isinstance(v, C.NotDerivable) and "mismatch" in v.describe()
