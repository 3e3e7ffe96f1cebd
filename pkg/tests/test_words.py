"""Normal forms, cyclic reduction and the word grammar."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trirad.errors import ParseError
from trirad.words import (
    IDENTITY,
    GroupWord,
    Syllable,
    cyclic_key,
    cyclic_reduce,
    minimal_period,
    multiply,
    normal_form,
    parse_word,
    render_word,
)


def W(text):
    return parse_word(text)


def test_normal_form_merges_and_reduces():
    # S^2 = -I at p = 2
    assert normal_form(W("S^2"), 2, 3) == GroupWord(-1, ())
    assert normal_form(W("S * S"), 2, 3) == GroupWord(-1, ())
    # U^3 = -I at q = 3, so U^4 = -U
    assert normal_form(W("U^4"), 2, 3) == GroupWord(-1, (Syllable("U", 1),))
    # inverse exponents wrap with a sign: S^-1 = -S at p = 2
    assert normal_form(W("S^-1"), 2, 3) == GroupWord(-1, (Syllable("S", 1),))
    # cascading merge: S U U^2 S at (2,3) -> S U^3 S -> -S^2 -> I
    assert normal_form(W("S * U * U^2 * S"), 2, 3) == IDENTITY


def test_normal_form_keeps_alternation():
    w = normal_form(W("S * U^5 * U^3 * S^2"), 3, 5)
    assert w == GroupWord(-1, (Syllable("S", 1), Syllable("U", 3), Syllable("S", 2)))


def test_multiply_cancels():
    w = W("S * U^2")
    assert multiply(w, w.inverse(), 3, 5) == IDENTITY
    assert multiply(w.inverse(), w, 3, 5) == IDENTITY


def test_inverse_of_sign():
    assert GroupWord(-1, ()).inverse() == GroupWord(-1, ())


def test_cyclic_reduce_examples():
    w = W("S * U^2 * S")  # conjugate of S^2 U^2 = -U^2
    red, conj = cyclic_reduce(w, 2, 3)
    assert red == GroupWord(-1, (Syllable("U", 2),))
    assert conj == GroupWord(1, (Syllable("S", 1),))
    red, conj = cyclic_reduce(W("S * U"), 2, 3)
    assert red == W("S * U") and conj == IDENTITY


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_cyclic_reduce_is_conjugation(seed):
    rng = random.Random(seed)
    p, q = rng.choice([(2, 3), (3, 5), (4, 5)])
    sylls = []
    gen = rng.choice("SU")
    for _ in range(rng.randint(0, 8)):
        order = p if gen == "S" else q
        sylls.append(Syllable(gen, rng.randint(-order, order) or 1))
        gen = "U" if gen == "S" else "S"
    w = GroupWord(rng.choice((1, -1)), tuple(sylls))
    red, conj = cyclic_reduce(w, p, q)
    back = multiply(multiply(conj, red, p, q), conj.inverse(), p, q)
    assert back == normal_form(w, p, q)
    # reduced words have distinct end generators (or at most one syllable)
    if len(red) >= 2:
        assert red.syllables[0].gen != red.syllables[-1].gen
    # idempotence
    red2, conj2 = cyclic_reduce(red, p, q)
    assert red2 == red and conj2 == IDENTITY


def test_minimal_period():
    s = (Syllable("S", 1), Syllable("U", 1))
    assert minimal_period(s * 3) == 2
    assert minimal_period(s) == 2
    assert minimal_period((Syllable("S", 1), Syllable("U", 1), Syllable("S", 1), Syllable("U", 2))) == 4


def test_cyclic_key_rotation_invariant():
    s = (Syllable("S", 1), Syllable("U", 2), Syllable("S", 2))
    assert cyclic_key(s) == cyclic_key(s[1:] + s[:1])
    assert cyclic_key(()) == ()


def test_parse_basic():
    assert W("I") == IDENTITY
    assert W("-I") == GroupWord(-1, ())
    assert W("S") == GroupWord(1, (Syllable("S", 1),))
    assert W("- S^3 * U^-2") == GroupWord(-1, (Syllable("S", 3), Syllable("U", -2)))
    assert W("  U ^ 2  *  S ") == GroupWord(1, (Syllable("U", 2), Syllable("S", 1)))


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as e:
        W("S * * U")
    assert e.value.offset == 4  # position of the second '*'
    with pytest.raises(ParseError):
        W("S^0")
    with pytest.raises(ParseError):
        W("")
    with pytest.raises(ParseError):
        W("S U")  # missing '*'
    with pytest.raises(ParseError):
        W("X^2")


def test_render_round_trip():
    for text in ["I", "-I", "S", "- S^3 * U^-2 * S", "U^2 * S * U"]:
        w = W(text)
        assert W(render_word(w)) == w


def test_render_style():
    assert render_word(GroupWord(-1, (Syllable("S", 2), Syllable("U", 1)))) == "- S^2 * U"
    assert render_word(IDENTITY) == "I"
