"""Acceptance criteria 1 to 10, one recorded line each."""

import pytest

from depcat import bridge as B
from depcat import checker as C
from depcat import finset as F
from depcat import interpreter as I
from depcat import parser as P
from depcat import termmodel as T
from depcat.judgements import TermJ
from conftest import bool_finset_interpreter, equality_pairs, load


def _fails(rep) -> str:
    return ",".join(sorted(rep.failing)) or "-"


def test_1_golden_corpus(criterion):
    pos_src, sig = load("golden/positive.mltt", prelude="golden/prelude.mltt")
    neg_src, _ = load("golden/negative.mltt", prelude="golden/prelude.mltt")
    ch = C.Checker(sig)
    pos = [ch.check(i.judgement) for i in pos_src.checks()]
    neg = [ch.check(i.judgement) for i in neg_src.checks()]
    good_pos = sum(isinstance(v, C.Derivable) for v in pos)
    good_neg = sum(isinstance(v, C.NotDerivable) for v in neg)
    ok = len(pos) >= 40 and len(neg) >= 20 and good_pos == len(pos) and good_neg == len(neg)
    criterion(1, ok, f"positive {good_pos}/{len(pos)} negative {good_neg}/{len(neg)}")
    assert ok


@pytest.fixture(scope="module")
def finset_full():
    return F.check_laws(budget=200, seed=0)


def test_2_finset_laws(criterion, finset_full):
    rep = finset_full
    ok = rep.ok and rep.instances >= 200
    detail = f"instances={rep.instances} failing={_fails(rep)}"
    if not rep.ok:
        detail += " " + "; ".join(rep[n].line() for n in sorted(rep.failing))
    criterion(2, ok, detail)
    assert ok, rep.text()


def test_3_derived_laws(criterion):
    rep = F.check_derived(budget=120, seed=0)
    least = min(r.checked for r in rep.results)
    ok = rep.ok and least >= 50
    criterion(3, ok, f"laws={len(rep.results)} min_checked={least} failing={_fails(rep)}")
    assert ok, rep.text()


def test_4_term_model(criterion):
    rep = T.check_cwf_laws_on_term_model(depth=2, max_len=2, seed=0)
    ok = rep.ok and all(r.status == "PASS" for r in rep.results)
    criterion(4, ok, f"instances={rep.instances} laws={len(rep.results)} failing={_fails(rep)}")
    assert ok, rep.text()


def test_5_soundness(criterion):
    src, sig = load("soundness.mltt")
    pairs = equality_pairs(src)
    fin = I.soundness_suite(bool_finset_interpreter(sig, limit=5000), pairs)
    term = I.soundness_suite(I.Interpreter(T.term_model(sig), sig, I.generic_structure(sig)), pairs)
    ok = len(pairs) >= 30 and fin.ok and term.ok
    criterion(5, ok, f"pairs={len(pairs)} finset_failures={len(fin.failures)} term_failures={len(term.failures)}")
    assert ok, "\n".join(fin.lines() + term.lines())


def test_6_completeness(criterion):
    src, sig = load("completeness.mltt")
    pairs = equality_pairs(src)
    rep = I.completeness_suite(I.Interpreter(T.term_model(sig), sig, I.generic_structure(sig)), pairs)
    ok = len(pairs) >= 30 and rep.ok
    criterion(6, ok, f"pairs={len(pairs)} failures={len(rep.failures)}")
    assert ok, "\n".join(rep.lines())


def test_7_substitution_lemma(criterion):
    _, sig = load("bool.mltt")
    consts = {"B": ("type", 0), "Fam": ("type", 1)}
    texts = ("Unit", "B[]", "B[] -> B[]", "Sigma (x : B[]) Fam[x]", "B[] * B[]", "Pi (x : B[]) Fam[x]")
    pool = [P.parse_expr(t, consts=consts) for t in texts]
    samples = I.substitution_samples(sig, 120, seed=0, pool=pool)
    rep = I.substitution_lemma_suite(bool_finset_interpreter(sig), samples)
    ok = len(samples) >= 100 and rep.ok
    criterion(7, ok, f"samples={len(samples)} failures={len(rep.failures)}")
    assert ok, "\n".join(rep.lines())


@pytest.fixture(scope="module")
def bridge_baseline():
    return B.bridge_suite(B.default_instance(), seed=0)


def test_8_ds_round_trip(criterion, bridge_baseline):
    rep = bridge_baseline
    c = B.default_instance()
    sizes = sorted(len(c.carrier((B.Base(a),))) for a in c.atoms)
    shifts = [k for k in rep.results if k.startswith("RightShift")]
    ok = rep.ok and len(c.atoms) == 2 and sizes[-1] <= 2 and c.depth == 3 and bool(shifts)
    criterion(8, ok, f"atoms={len(c.atoms)} sizes={sizes} depth={c.depth} checks={len(rep.results)} failing={_fails(rep)}")
    assert ok, rep.text()


def test_9_stlc(criterion):
    src, sig = load("stlc.mltt")
    js = [(i.judgement.ctx, i.judgement.tm, i.judgement.ty) for i in src.checks() if isinstance(i.judgement, TermJ)]
    rows = B.stlc_suite(B.default_instance(), sig, js)
    bad = [r for r in rows if not r.ok]
    ok = len(rows) >= 20 and not bad
    criterion(9, ok, f"judgements={len(rows)} mismatches={len(bad)}")
    assert ok, "\n".join(f"{r.label} {r.detail}" for r in bad)


def test_10_mutants(criterion, bridge_baseline):
    base = F.check_laws(budget=60, seed=0)
    outcomes = [F.run_mutant(name, budget=60, seed=0, baseline=base) for name in F.MUTANTS]
    outcomes.append(B.run_decomposition_mutant(seed=0, baseline=bridge_baseline))
    missed = [o.mutant for o in outcomes if not o.caught]
    ok = len(outcomes) == 5 and not missed
    criterion(10, ok, f"caught={len(outcomes) - len(missed)}/{len(outcomes)}" + (f" missed={','.join(missed)}" if missed else ""))
    assert ok, "\n".join(o.line() for o in outcomes)
