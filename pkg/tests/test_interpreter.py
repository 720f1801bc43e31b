import itertools

import pytest

from depcat import finset as F
from depcat import interpreter as I
from depcat import parser as P
from depcat import syntax as S
from depcat import termmodel as T
from depcat.finset import POINT, FinSet, FnGraph
from depcat.judgements import TermJ, TypeJ
from conftest import FIXTURES, bool_finset_interpreter, equality_pairs, load

U = S.Unit()


def _sig(text):
    from depcat import signature

    src = P.parse_file(text)
    return src, signature.validate_signature(signature.from_source(src))


class TestFinSetDenotations:
    def test_variable_is_second_projection(self):
        _, sig = _sig("typeconst N ()")
        m = F.finset_model()
        it = I.Interpreter(m, sig, I.finset_structure(m, sig, {"N": FinSet([0, 1])}))
        g = S.ctx(("x", S.TConst("N")))
        den = it.interpret(TermJ(g, S.Var(0), S.TConst("N")))
        assert den.ok and den.kind == "dmor"
        assert den.value.graph() == (((POINT, 0), 0), ((POINT, 1), 1))

    def test_identity_function_is_the_only_point(self):
        m = F.finset_model()
        _, sig = _sig("")
        it = I.Interpreter(m, sig, I.Structure())
        den = it.interpret(TermJ(S.EMPTY, S.Lam("x", S.Var(0)), S.Pi("x", U, U)))
        (fib,) = it.ty(S.EMPTY, S.Pi("x", U, U)).fibers
        assert len(fib) == 1 and den.value.table == fib.elems

    def test_ill_typed_is_undefined(self):
        _, sig = _sig("")
        it = I.Interpreter(F.finset_model(), sig, I.Structure())
        den = it.interpret(TermJ(S.EMPTY, S.Star(), S.Pi("x", U, U)))
        assert not den.ok and "ill-typed" in str(den)

    def test_bool_algebra(self):
        src, sig = load("bool.mltt")
        it = bool_finset_interpreter(sig)
        first, second = src.evals()
        assert it.interpret(TermJ(first.ctx, first.tm, first.ty)).value.table == (0,)
        assert it.interpret(TermJ(second.ctx, second.tm, second.ty)).value.table == (("a", POINT), ("b", POINT))

    def test_truncated_successor_breaks_the_recursor(self):
        src, sig = load("nat.mltt")
        n = FinSet([0, 1, 2])
        fns = [FnGraph(tuple(zip(n.elems, ch))) for ch in itertools.product(n.elems, repeat=3)]
        literals = {
            "N": n,
            "zero": {POINT: 0},
            "succ": {0: 1, 1: 2, 2: 2},
            "recN": {(cz, cs, y): cz for cz in n.elems for cs in fns for y in n.elems},
        }
        m = F.finset_model()
        it = I.Interpreter(m, sig, I.finset_structure(m, sig, literals))
        with pytest.raises(I.AlgebraViolation):
            it.validate()

    def test_missing_constant(self):
        _, sig = load("bool.mltt")
        with pytest.raises(I.AlgebraViolation):
            I.finset_structure(F.finset_model(), sig, {"B": FinSet([0, 1])})


class TestTermModel:
    def test_generic_interpretation_is_syntax(self):
        _, sig = load("bool.mltt")
        it = I.Interpreter(T.term_model(sig), sig, I.generic_structure(sig))
        den = it.interpret(TypeJ(S.ctx(("b", S.TConst("B"))), S.TConst("Fam", (S.Var(0),))))
        assert den.value == S.TConst("Fam", (S.Var(0),))


@pytest.fixture(scope="module")
def soundness():
    src, sig = load("soundness.mltt")
    return sig, equality_pairs(src)


def test_soundness_finset(soundness):
    sig, pairs = soundness
    rep = I.soundness_suite(bool_finset_interpreter(sig, limit=5000), pairs)
    assert rep.ok, "\n".join(rep.lines())


def test_soundness_term_model(soundness):
    sig, pairs = soundness
    it = I.Interpreter(T.term_model(sig), sig, I.generic_structure(sig))
    rep = I.soundness_suite(it, pairs)
    assert rep.ok, "\n".join(rep.lines())


def test_completeness_generic_model():
    src, sig = load("completeness.mltt")
    it = I.Interpreter(T.term_model(sig), sig, I.generic_structure(sig))
    rep = I.completeness_suite(it, equality_pairs(src))
    assert rep.ok, "\n".join(rep.lines())
    assert any(d == "checker=False model=False" for _, _, d in rep.rows)


def test_substitution_lemma_small():
    src, sig = load("bool.mltt")
    consts = {"B": ("type", 0), "Fam": ("type", 1)}
    pool = [P.parse_expr(t, consts=consts) for t in ("Unit", "B[]", "B[] -> B[]", "Sigma (x : B[]) Fam[x]")]
    samples = I.substitution_samples(sig, 30, seed=4, pool=pool)
    assert len(samples) == 30
    rep = I.substitution_lemma_suite(bool_finset_interpreter(sig), samples)
    assert rep.ok, "\n".join(rep.lines())


def test_weakening_against_constant_type():
    src, sig = load("bool.mltt")
    it = bool_finset_interpreter(sig)
    B = S.TConst("B")
    p = S.weaken_cm(S.ctx(("b", B)), "c", B)
    rep = I.substitution_lemma_suite(it, [(p, S.TConst("Fam", (S.Var(0),)), None, None)])
    assert rep.ok
