import pytest
from hypothesis import given

from depcat import parser as P
from depcat import syntax as S
from depcat.judgements import TermJ, TypeJ
from strategies import exprs

U = S.Unit()


def test_check_item():
    (item,) = P.parse_file("check |- star : Unit").checks()
    assert item.judgement == TermJ(S.EMPTY, S.Star(), U)
    assert (item.span.line, item.span.column) == (1, 1)


def test_lambda_tree():
    (item,) = P.parse_file(r"check |- \x. x : Pi (x:Unit) Unit").checks()
    assert item.judgement.tm == S.Lam("x", S.Var(0))
    assert item.judgement.ty == S.Pi("x", U, U)


def test_constants_with_empty_format():
    src = P.parse_file("typeconst N ()\ntermconst zero () : N[]")
    ty, tm = src.declarations()
    assert (ty.name, len(ty.tele)) == ("N", 0)
    assert tm.cod == S.TConst("N")


def test_unicode_spelling_matches_ascii():
    a = P.parse_expr("Π (x : Unit) Σ (y : Unit) Unit")
    b = P.parse_expr("Pi (x : Unit) Sigma (y : Unit) Unit")
    assert a == b


def test_arrow_and_product_sugar():
    assert P.parse_expr("Unit -> Unit * Unit") == S.arrow(U, S.product(U, U))


def test_fst_snd_sugar():
    e = P.parse_expr("fst (p : Unit * Unit)", ["p"])
    assert isinstance(e, S.RSig) and e.branch == S.Var(1)


@pytest.mark.parametrize(
    "text, err",
    [
        ("check |- star :", P.SourceSyntaxError),
        ("typeconst N ()\ntypeconst N ()", P.DuplicateConstant),
        ("termconst z () : N[]\ntypeconst N ()", P.ForwardReference),
        ("check |- M[] type", P.UnboundName),
        ("typeconst N ()\ncheck |- N[] : Unit", P.KindError),
        ("check |- (x, star) : Unit", P.UnboundName),
    ],
)
def test_errors_carry_spans(text, err):
    with pytest.raises(err) as info:
        P.parse_file(text)
    assert info.value.span.line >= 1


def test_print_examples():
    assert P.pretty(S.Lam("x", S.Var(0))) == r"\x. x"
    assert P.pretty(S.Pi("x", U, U)) == "Pi (x:Unit) Unit"
    assert P.pretty(S.Pi("x", U, U), arrows=True) == "Unit -> Unit"


def test_printer_renames_shadowed_binders():
    e = S.Lam("x", S.Lam("x", S.Var(1)))
    assert P.pretty(e) == r"\x. \x'. x"


@given(exprs(2))
def test_print_parse_round_trip(e):
    scope = ["a", "b"]
    assert P.parse_expr(P.pretty(e, scope), scope) == e


@given(exprs(1))
def test_round_trip_with_sugar(e):
    assert P.parse_expr(P.pretty(e, ["a"], arrows=True), ["a"]) == e


def test_judgement_printing():
    j = TypeJ(S.ctx(("x", U)), S.Sigma("y", U, U))
    assert P.pretty_judgement(j) == "(x:Unit) |- Sigma (y:Unit) Unit type"
