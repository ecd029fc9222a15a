import itertools

import pytest

from polyadic.core import retract, tabulate
from polyadic.cover import (
    GroupPresentation,
    PolyadicPresentation,
    build_post_cover,
    coset_enumerate,
    extend_hom_to_cover,
    positive_form,
    presentation_to_group,
)
from polyadic.errors import (
    CapExceeded,
    EmptyGeneratorSet,
    NotPolyadicHom,
)
from polyadic.groups import (
    are_isomorphic,
    cyclic_group,
    enumerate_homs,
    symmetric_group,
)
from polyadic.terms import parse_term
from polyadic.words import generator, parse_word


def test_cover_order_all_catalog(catalog):
    for key, p in catalog.items():
        c = build_post_cover(p)
        assert c.order == (p.n - 1) * p.order, key
        # the embedded copy sits at grade 1 and multiplies like f
        for g in p.elements():
            assert c.grade(c.embed_index(g)) == 1


def test_cover_of_p1_is_z6(p1):
    c = build_post_cover(p1)
    ok, wit = are_isomorphic(c.group, cyclic_group(6))
    assert ok and wit.is_valid()


def test_cover_of_p2_is_s3(p2):
    c = build_post_cover(p2)
    ok, wit = are_isomorphic(c.group, symmetric_group(3))
    assert ok and wit.is_valid()


def test_cover_f_is_product_of_embeds(p4):
    c = build_post_cover(p4)
    for args in itertools.product(p4.elements(), repeat=p4.n):
        acc = c.embed_index(args[0])
        for x in args[1:]:
            acc = c.group.mul(acc, c.embed_index(x))
        assert c.grade(acc) == 1
        assert acc == c.embed_index(p4.f(list(args)))


def test_cover_r_subgroup_is_retract(p4):
    c = build_post_cover(p4)
    r = c.r_subgroup()
    assert len(r) == p4.order
    assert all(c.grade(x) == 0 for x in r)


def test_cover_grade_map(p7):
    c = build_post_cover(p7)
    n1 = p7.n - 1
    for x in range(c.order):
        for y in range(c.order):
            assert c.grade(c.group.mul(x, y)) == (c.grade(x) + c.grade(y)) % n1


def test_cover_of_table_form(p2):
    c = build_post_cover(tabulate(p2))
    assert c.order == 6


def test_extend_hom_to_cover(p1):
    cover = build_post_cover(p1)
    z6 = cyclic_group(6)
    g = retract(p1, 0)
    betas = [h for h in enumerate_homs(g, z6)]
    valid = 0
    for beta in betas:
        images = tuple(beta(x) for x in p1.elements())
        try:
            h = extend_hom_to_cover(cover, images, z6)
        except NotPolyadicHom:
            continue
        valid += 1
        assert h.is_valid()
        for x in p1.elements():
            assert h(cover.embed_index(x)) == images[x]
    assert valid > 0


def test_extend_hom_rejects_non_hom(p1):
    cover = build_post_cover(p1)
    z6 = cyclic_group(6)
    with pytest.raises(NotPolyadicHom):
        extend_hom_to_cover(cover, (0, 1, 1), z6)


def test_positive_form():
    x = generator("x")
    assert positive_form(x ** -2) == x ** 2
    assert positive_form(x ** 2) == x ** 2


def test_presentation_to_group_singleton():
    pres = PolyadicPresentation(
        ("x",), ((parse_term("~x", generators=["x"]), parse_term("x", generators=["x"])),)
    )
    gp = presentation_to_group(pres, 3)
    assert gp.generators == ("x",)
    assert [str(w) for w in gp.relators] == ["x^-2"]
    g = coset_enumerate(gp)
    assert g.order == 2


def test_presentation_free_generator_kept():
    pres = PolyadicPresentation(
        ("x", "y"),
        ((parse_term("~x", generators=["x", "y"]), parse_term("x", generators=["x", "y"])),),
    )
    gp = presentation_to_group(pres, 4)
    assert gp.generators == ("x", "y")
    assert [str(w) for w in gp.relators] == ["x^-3"]


def test_presentation_commutator_golden():
    # f(x, y, ~y) = f(y, x, ~y) flattens to the commutator relator
    gens = ["x", "y"]
    left = parse_term("f(x, y, ~y)", generators=gens)
    right = parse_term("f(y, x, ~y)", generators=gens)
    gp = presentation_to_group(PolyadicPresentation(tuple(gens), ((left, right),)), 3)
    assert [str(w) for w in gp.relators] == ["x*y*x^-1*y^-1"]


def test_presentation_requires_generators():
    with pytest.raises(EmptyGeneratorSet):
        presentation_to_group(PolyadicPresentation((), ()), 3)


def test_coset_enumeration_known_orders():
    x = generator("x")
    g = coset_enumerate(GroupPresentation(("x",), (x ** 6,)))
    assert g.order == 6
    ok, _ = are_isomorphic(g, cyclic_group(6))
    assert ok

    r, s = generator("r"), generator("s")
    s3 = coset_enumerate(GroupPresentation(("r", "s"), (r ** 3, s ** 2, r * s * r * s)))
    assert s3.order == 6
    ok, _ = are_isomorphic(s3, symmetric_group(3))
    assert ok

    d4 = coset_enumerate(GroupPresentation(("r", "s"), (r ** 4, s ** 2, r * s * r * s)))
    assert d4.order == 8
    assert d4.order_profile() == (1, 2, 2, 2, 2, 2, 4, 4)

    a, b = generator("a"), generator("b")
    a4 = coset_enumerate(GroupPresentation(("a", "b"), (a ** 3, b ** 3, a * b * a * b)))
    assert a4.order == 12

    q8 = coset_enumerate(
        GroupPresentation(
            ("a", "b"), (a ** 4, b ** 2 * a ** -2, b ** -1 * a * b * a)
        )
    )
    assert q8.order == 8
    assert q8.order_profile() == (1, 2, 4, 4, 4, 4, 4, 4)


def test_coset_enumeration_deterministic_names():
    x = generator("x")
    g1 = coset_enumerate(GroupPresentation(("x",), (x ** 4,)))
    g2 = coset_enumerate(GroupPresentation(("x",), (x ** 4,)))
    assert list(g1.names()) == ["c0", "c1", "c2", "c3"]
    assert g1.table == g2.table


def test_coset_enumeration_cap():
    a, b = generator("a"), generator("b")
    pres = GroupPresentation(("a", "b"), (a * b * a ** -1 * b ** -1,))
    with pytest.raises(CapExceeded):
        coset_enumerate(pres, cap=100)


def test_coset_enumeration_via_words():
    gp = GroupPresentation(
        ("x",), (parse_word("x^2"),)
    )
    assert coset_enumerate(gp).order == 2
