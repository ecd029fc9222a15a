import random

import pytest

from polyadic.errors import (
    ArityMismatch,
    HeightViolation,
    LengthViolation,
    ParseError,
)
from polyadic.words import (
    FreeWord,
    MpWord,
    PolyadicFreeWord,
    cancellation_piece,
    delete_piece,
    f_free,
    generator,
    insert_piece,
    mp_embed,
    mp_equal,
    mp_f,
    parse_mp_word,
    parse_word,
    reduce_word,
    skew_free,
)

x = generator("x")
y = generator("y")


def test_reduction_basics():
    assert str(x * y * y.inv() * x) == "x^2"
    assert (x * x.inv()).is_empty()
    assert str(FreeWord(())) == "1"
    w = reduce_word([("x", 1), ("x", 1), ("x", -1), ("y", 1)])
    assert str(w) == "x*y"


def test_height_and_powers():
    w = x ** 2 * y.inv() * x * y ** 2
    assert w.height == 4
    assert (x ** -3).height == -3
    assert w.inv().height == -4
    assert len(x ** 2 * y) == 3


def test_parse_word_syntax():
    assert str(parse_word("x*y*y^-1*x")) == "x^2"
    assert str(parse_word("x y y' x")) == "x^2"
    assert str(parse_word("x^3*y^-2")) == "x^3*y^-2"
    assert parse_word("1").is_empty()
    assert str(parse_word("xy' * z")) == "xy^-1*z"
    with pytest.raises(ParseError):
        parse_word("x +")
    with pytest.raises(ParseError):
        parse_word("~x")


def test_polyadic_free_word_membership():
    PolyadicFreeWord(x ** 4, 4)
    with pytest.raises(HeightViolation):
        PolyadicFreeWord(x ** 2, 4)
    w = x ** 2 * y.inv() * x * y ** 2
    PolyadicFreeWord(w, 4)


def test_f_free_heights_and_arity():
    out = f_free([x, y, x], 3)
    assert out.word == x * y * x
    with pytest.raises(ArityMismatch):
        f_free([x, y], 3)
    with pytest.raises(HeightViolation) as info:
        f_free([x, x ** 2, x], 3)
    assert info.value.index == 1


def test_f_free_associativity_random():
    rng = random.Random(2024)
    gens = [generator(g) for g in "abc"]
    for _ in range(300):
        n = rng.choice((3, 4, 5))
        words = []
        for _ in range(2 * n - 1):
            w = FreeWord(())
            for _ in range(n - 1):
                w = w * rng.choice(gens) ** rng.choice((1, 1, -1, 2))
            # adjust to height 1 mod n-1
            h = w.height
            w = w * gens[0] ** ((1 - h) % (n - 1))
            words.append(w)
        left = f_free([f_free(words[:n], n)] + words[n:], 3 if n == 3 else n).word
        for i in range(1, n):
            inner = f_free(words[i : i + n], n)
            outer = f_free(words[:i] + [inner] + words[i + n :], n)
            assert outer.word == left, (n, i)


def test_skew_free_defining_identity_random():
    rng = random.Random(77)
    gens = [generator(g) for g in "uvw"]
    for _ in range(300):
        n = rng.choice((3, 4, 5))
        w = FreeWord(())
        while (w.height - 1) % (n - 1) != 0 or w.is_empty():
            w = w * rng.choice(gens) ** rng.choice((-2, -1, 1, 2, 3))
        s = skew_free(w, n)
        assert s.word == w ** (2 - n)
        got = f_free([w] * (n - 1) + [s], n)
        assert got.word == w


def test_mp_words_and_pieces():
    m = parse_mp_word("x ~x x", 3)
    assert len(m.letters) == 3
    with pytest.raises(LengthViolation):
        MpWord((("x", False), ("x", False)), 3)
    # every cancellation piece has n-1 letters and embeds to the identity
    for n in range(3, 7):
        for i in range(n - 1):
            piece = cancellation_piece("x", i, n)
            assert len(piece) == n - 1
            acc = FreeWord(())
            for g, marked in piece:
                acc = acc * (generator(g) ** (2 - n) if marked else generator(g))
            assert acc.is_empty(), (n, i)


def test_piece_insert_delete_preserve_embedding():
    for n in (3, 4, 5):
        base = MpWord((("x", False),) * 1, n)
        for gen in ("x", "y"):
            for i in range(n - 1):
                for pos in range(len(base.letters) + 1):
                    grown = insert_piece(base, pos, gen, i)
                    assert mp_embed(grown) == mp_embed(base), (n, gen, i, pos)
                    back = delete_piece(grown, pos, gen, i)
                    assert back.letters == base.letters


def test_mp_equal_golden():
    m1 = parse_mp_word("x ~x x", 3)
    m2 = parse_mp_word("x", 3)
    assert mp_equal(m1, m2)
    m3 = parse_mp_word("x x ~x x", 4)
    m4 = parse_mp_word("x", 4)
    assert mp_equal(m3, m4)
    assert not mp_equal(parse_mp_word("x", 3), parse_mp_word("y", 3))


def test_mp_f_concatenates():
    a = parse_mp_word("x", 3)
    b = parse_mp_word("y", 3)
    c = parse_mp_word("~z", 3)
    out = mp_f([a, b, c], 3)
    assert len(out.letters) == 3
    assert mp_embed(out).word == generator("x") * generator("y") * generator("z") ** -1
