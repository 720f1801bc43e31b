import pytest

from depcat import syntax as S
from depcat.signature import (
    EMPTY_SIGNATURE,
    IllFormedFormat,
    IllTypedAxiom,
    Signature,
    TermConstant,
    TypeConstant,
    UnguardedAxiom,
    ValidatedSignature,
    validate_signature,
)
from conftest import load


def test_empty_signature_is_valid():
    v = validate_signature(EMPTY_SIGNATURE)
    assert not v.type_consts and not v.term_consts and not v.rules


def test_naturals_with_recursor():
    _, sig = load("nat.mltt")
    assert set(sig.term_consts) == {"zero", "succ", "recN"}
    assert len(sig.rules) == 2 and all(r.guarded for r in sig.rules)


def test_undeclared_codomain():
    sig = Signature((TermConstant("z", S.EMPTY, S.TConst("M")),))
    with pytest.raises(IllFormedFormat):
        validate_signature(sig)


def test_duplicate_constant():
    n = TypeConstant("N", S.EMPTY)
    with pytest.raises(IllFormedFormat):
        validate_signature(Signature((n, n)))


def test_ill_typed_axiom(tmp_path):
    from depcat import parser, signature

    src = parser.parse_file("typeconst N ()\ntermconst z () : N[]\naxiom |- z[] = star : N[]")
    with pytest.raises(IllTypedAxiom):
        validate_signature(signature.from_source(src))


def test_non_linear_axiom_needs_trust():
    from depcat import parser, signature

    src = parser.parse_file((__import__("conftest").FIXTURES / "identity.mltt").read_text())
    with pytest.raises(UnguardedAxiom):
        validate_signature(signature.from_source(src))
    trusted = validate_signature(signature.from_source(src), trust_axioms=True)
    assert trusted.warnings


def test_looping_axioms_rejected():
    from depcat import parser, signature

    text = "typeconst N ()\ntermconst a () : N[]\ntermconst b () : N[]\naxiom |- a[] = b[] : N[]\naxiom |- b[] = a[] : N[]"
    with pytest.raises(UnguardedAxiom):
        validate_signature(signature.from_source(parser.parse_file(text)))


def test_sealed():
    with pytest.raises(TypeError):
        ValidatedSignature(object(), EMPTY_SIGNATURE, None, ())
