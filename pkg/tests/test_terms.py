import itertools
import random

import pytest

from polyadic.core import retract
from polyadic.cover import build_post_cover
from polyadic.errors import (
    ArityMismatch,
    ParseError,
    PolyadicError,
    UnboundVariable,
)
from polyadic.terms import (
    Apply,
    Constant,
    Equation,
    GConst,
    GInv,
    GMul,
    GOne,
    GVar,
    Skew,
    Variable,
    eval_equation,
    eval_group_term,
    eval_term,
    group_term_to_string,
    group_to_polyadic,
    group_to_polyadic_equation,
    is_coefficient_free,
    normalize_term,
    parse_equation,
    parse_group_equation,
    parse_group_term,
    parse_term,
    polyadic_to_group,
    term_to_free_word,
    term_to_string,
    terms_equal,
    term_variables,
    validate_term,
)

NAMES = ["0", "1", "2"]


def test_parse_term_variables_and_constants():
    t = parse_term("f(x1, ~x2, c2)", element_names=NAMES)
    assert t == Apply((Variable(0), Skew(Variable(1)), Constant(2)))
    assert term_variables(t) == {0, 1}
    assert not is_coefficient_free(t)
    assert is_coefficient_free(parse_term("f(x1,x1,x1)", element_names=NAMES))


def test_parse_term_bare_constant_names():
    assert parse_term("2", element_names=NAMES) == Constant(2)
    assert parse_term("c2", element_names=NAMES) == Constant(2)
    with pytest.raises(ParseError):
        parse_term("q", element_names=NAMES)
    with pytest.raises(ParseError):
        parse_term("f(x1,x2", element_names=NAMES)


def test_parse_term_generator_mode():
    t = parse_term("f(~x, y, x)", generators=["x", "y"])
    assert t == Apply((Skew(Variable(0)), Variable(1), Variable(0)))
    with pytest.raises(PolyadicError):
        term_to_free_word(
            parse_term("c1", element_names=NAMES), ["x"], 3
        )


def test_eval_term_and_equation(p2):
    t = parse_term("f(x1, x1, x1)", element_names=NAMES)
    assert eval_term(t, (2,), p2) == 2
    assert eval_term(t, (1,), p2) == 1
    eq = parse_equation("f(x1,x1,x1) = c2", element_names=NAMES)
    assert eval_equation(eq, (2,), p2)
    assert not eval_equation(eq, (0,), p2)
    with pytest.raises(UnboundVariable):
        eval_term(parse_term("x3", element_names=NAMES), (0, 1), p2)
    with pytest.raises(ArityMismatch):
        eval_term(Apply((Variable(0), Variable(0))), (1,), p2)


def test_validate_term():
    validate_term(parse_term("f(x1,x2,x1)", element_names=NAMES), 3, 2)
    with pytest.raises(UnboundVariable):
        validate_term(parse_term("x3", element_names=NAMES), 3, 2)
    with pytest.raises(ArityMismatch):
        validate_term(Apply((Variable(0),) * 4), 3, 2)


def test_term_to_string_roundtrip(p2):
    for text in ("f(x1,~x2,2)", "~f(x1,x1,x1)", "f(f(x1,x1,x1),x2,c0)"):
        t = parse_term(text, element_names=NAMES)
        s = term_to_string(t, p2)
        assert parse_term(s, element_names=NAMES) == t


def test_normalize_reassociation(p2):
    # nested applications that flatten to the same syllable word
    inner = parse_term("f(x1,x2,x3)", element_names=NAMES)
    left = Apply((inner, Variable(3), Variable(4)))
    right = Apply((Variable(0), Apply((Variable(1), Variable(2), Variable(3))), Variable(4)))
    assert terms_equal(left, right, p2)
    nl = normalize_term(left, p2)
    nr = normalize_term(right, p2)
    assert nl == nr


def test_normalize_detects_difference(p2):
    a = parse_term("f(x1,x2,x3)", element_names=NAMES)
    b = parse_term("f(x2,x1,x3)", element_names=NAMES)
    assert not terms_equal(a, b, p2)


def test_normalize_skew_cancellation(p2):
    # f(x,...,x, ~x) with n-1 copies equals x in every polyadic group,
    # and the normal form agrees
    t = Apply((Variable(0), Variable(0), Skew(Variable(0))))
    assert terms_equal(t, Variable(0), p2)


def test_group_term_parse_and_string():
    t = parse_group_term("x1*x2'", ["a", "b"])
    assert t == GMul(GVar(0), GInv(GVar(1)))
    assert group_term_to_string(t) == "x1*x2^-1"
    t2 = parse_group_term("a x1 b^2", ["a", "b"])
    assert isinstance(t2, GMul)
    assert parse_group_term("1", ["a", "b"]) == GOne()
    left, right = parse_group_equation("x1*x2 = 1", ["a", "b"])
    assert right == GOne()


def test_group_term_eval():
    from polyadic.groups import cyclic_group

    z3 = cyclic_group(3)
    t = parse_group_term("x1*x2'", ["0", "1", "2"])
    assert eval_group_term(t, (1, 2), z3) == (1 - 2) % 3
    assert eval_group_term(GOne(), (), z3) == 0


def test_group_to_polyadic_matches_retract(p2):
    # evaluating the translated term in P equals evaluating the original
    # in the retract at a, for every anchor and assignment
    t = GMul(GVar(0), GMul(GConst(1), GInv(GVar(1))))
    for a in p2.elements():
        g = retract(p2, a)
        pt = group_to_polyadic(t, a, p2.n)
        for asg in itertools.product(range(3), repeat=2):
            want = eval_group_term(t, asg, g)
            got = eval_term(pt, asg, p2)
            assert want == got, (a, asg)


def test_polyadic_to_group_matches_cover(p2):
    cover = build_post_cover(p2)
    t = parse_term("f(x1, ~x2, c2)", element_names=NAMES)
    gt = polyadic_to_group(t, cover)
    for asg in itertools.product(range(3), repeat=2):
        lifted = tuple(cover.embed_index(v) for v in asg)
        want = cover.embed_index(eval_term(t, asg, p2))
        got = eval_group_term(gt, lifted, cover.group)
        assert want == got, asg


def test_group_to_polyadic_identity_and_inverse_forms(p2):
    n = p2.n
    anchor = Constant(1)
    t = group_to_polyadic(GOne(), 1, n)
    assert t == Skew(anchor)
    t2 = group_to_polyadic(GInv(GVar(0)), 1, n)
    assert isinstance(t2, Apply)
    assert t2.children[0] == Skew(anchor)
    assert t2.children[-1] == Skew(anchor)
    assert t2.children[-2] == Skew(Variable(0))


def test_nested_translation_keeps_inner_constant(p7):
    # golden shape for the worked two-variable equation with coefficients
    # b x^2 y^-1 c x = 1: the translation must keep the constant c inside
    # the nest (dropping it is a known transcription slip)
    s3names = list(p7.names())
    b = p7.index("021")
    c = p7.index("120")
    a = p7.index("102")
    t = GMul(
        GConst(b),
        GMul(GVar(0), GMul(GVar(0), GMul(GInv(GVar(1)), GMul(GConst(c), GVar(0))))),
    )
    pt = group_to_polyadic(t, a, p7.n)
    rendered = term_to_string(pt, p7)
    assert s3names[c] in rendered
    # eliding c reproduces the shorter display shape
    t_no_c = GMul(GConst(b), GMul(GVar(0), GMul(GVar(0), GMul(GInv(GVar(1)), GVar(0)))))
    short = term_to_string(group_to_polyadic(t_no_c, a, p7.n), p7)
    assert short != rendered
    assert len(short) < len(rendered)


def test_random_translation_agreement(p4):
    # random binary trees of group terms agree with their translations
    rng = random.Random(5)
    names = list(p4.names())

    def random_gterm(depth):
        r = rng.random()
        if depth <= 0 or r < 0.3:
            if r < 0.1:
                return GConst(rng.randrange(4))
            return GVar(rng.randrange(2))
        if r < 0.5:
            return GInv(random_gterm(depth - 1))
        return GMul(random_gterm(depth - 1), random_gterm(depth - 1))

    for _ in range(25):
        t = random_gterm(3)
        for a in p4.elements():
            g = retract(p4, a)
            pt = group_to_polyadic(t, a, p4.n)
            for asg in itertools.product(range(4), repeat=2):
                assert eval_group_term(t, asg, g) == eval_term(pt, asg, p4)
