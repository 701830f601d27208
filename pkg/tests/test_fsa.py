"""Automaton algebra: compilation, boolean operations, witnesses."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ioltstest import (
    Dfsa,
    FormatError,
    bounded_language,
    compile_regex,
    complement,
    complete,
    complete_quiescence,
    determinize,
    empty_language,
    equivalent,
    intersect,
    is_empty,
    parse_model,
    shortest_witness,
    union,
)
from ioltstest.modelgen import SplitMix64
from conftest import M1_TEXT

ABX = ("a", "b", "x")


def random_dfsa(seed, alphabet=ABX, max_states=4):
    """Small random complete automaton for sampling-based properties."""
    rng = SplitMix64(seed)
    n = 1 + rng.below(max_states)
    trans = {(s, t): rng.below(n) for s in range(n) for t in alphabet}
    accepting = frozenset(s for s in range(n) if rng.chance(0.4))
    return Dfsa(tuple(alphabet), n, 0, accepting, trans, complete=True)


def random_words(seed, alphabet=ABX, count=100, max_len=6):
    rng = SplitMix64(seed)
    words = []
    for _ in range(count):
        words.append(tuple(alphabet[rng.below(len(alphabet))]
                           for _ in range(rng.below(max_len + 1))))
    return words


def test_compile_paper_language():
    d = compile_regex("( a | b ) * a x", ABX)
    assert d.complete
    for word, expect in [
        (("a", "x"), True),
        (("b", "a", "x"), True),
        (("a", "b", "a", "b", "a", "x"), True),
        (("a", "b"), False),
        ((), False),
    ]:
        assert d.accepts(word) == expect


def test_compile_empty_source_is_empty_language():
    d = compile_regex("", ABX)
    assert is_empty(d)
    assert d.n_states == 1


def test_compile_single_finite_word():
    atm = ("ic", "pin", "cpi", "wd", "amo", "ins")
    word = ("ic", "pin", "cpi", "wd", "amo", "ins", "amo")
    d = compile_regex(" ".join(word), atm)
    assert d.accepts(word)
    assert not d.accepts(word[:-1])
    assert not d.accepts(word + ("amo",))


def test_compile_finite_directive():
    d = compile_regex("#finite\na x\nb x\n", ABX)
    assert d.accepts(("a", "x"))
    assert d.accepts(("b", "x"))
    assert not d.accepts(("x",))


def test_compile_empty_word_constant():
    d = compile_regex("%empty", ABX)
    assert d.accepts(())
    assert not d.accepts(("a",))


def test_compile_is_minimal():
    # words {a, b}: initial, accept, sink
    assert compile_regex("a | b", ("a", "b")).n_states == 3


@pytest.mark.parametrize("src", ["a |", "( a", "a )", "* a", "a c"])
def test_compile_rejects_bad_sources(src):
    with pytest.raises(FormatError):
        compile_regex(src, ("a", "b"))


def test_recompilation_is_language_equivalent():
    a = compile_regex("( a | b ) * a x", ABX)
    b = compile_regex("( a | b ) * a x", ABX)
    assert equivalent(a, b)


def test_complete_idempotent():
    d = compile_regex("a x", ABX)
    assert complete(d) is d
    assert complete(complete(d)).n_states == d.n_states


def test_complete_adds_single_sink():
    m1 = parse_model(M1_TEXT)
    det = determinize(complete_quiescence(m1))
    assert not det.complete
    assert complete(det).n_states == 3


def test_complement_of_spec_traces():
    m1 = parse_model(M1_TEXT)
    det = determinize(complete_quiescence(m1))
    comp = complement(det)
    assert comp.accepts(("x",))
    assert comp.accepts(("a", "a"))
    assert not comp.accepts(("a", "x"))


def test_complement_involution_on_samples():
    a = random_dfsa(7)
    back = complement(complement(a))
    for w in random_words(11):
        assert back.accepts(w) == a.accepts(w)


def test_complement_of_universal_is_empty():
    universal = complement(empty_language(ABX))
    assert is_empty(complement(universal))


def test_intersect_with_complement_is_empty():
    for seed in range(10):
        a = random_dfsa(seed)
        assert is_empty(intersect(a, complement(a)))


def test_union_identity():
    b = random_dfsa(3)
    u = union(empty_language(ABX), b)
    for w in random_words(5):
        assert u.accepts(w) == b.accepts(w)


def test_boolean_combinations_on_samples():
    for seed in range(8):
        a, b = random_dfsa(seed), random_dfsa(seed + 100)
        inter, uni = intersect(a, b), union(a, b)
        for w in random_words(seed + 200, count=125):  # 1000 words overall
            assert inter.accepts(w) == (a.accepts(w) and b.accepts(w))
            assert uni.accepts(w) == (a.accepts(w) or b.accepts(w))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32),
       st.lists(st.sampled_from(ABX), max_size=6))
def test_de_morgan(seed, word):
    a, b = random_dfsa(seed), random_dfsa(seed ^ 0x5A5A)
    left = complement(union(a, b))
    right = intersect(complement(a), complement(b))
    assert left.accepts(word) == right.accepts(word)


def test_product_size_bound():
    a, b = random_dfsa(1, max_states=4), random_dfsa(2, max_states=4)
    assert intersect(a, b).n_states <= (a.n_states + 1) * (b.n_states + 1)


def test_emptiness_and_witness():
    assert is_empty(empty_language(ABX))
    assert shortest_witness(empty_language(ABX)) is None
    d = compile_regex("a x | a a x", ABX)
    assert shortest_witness(d) == ("a", "x")


def test_witness_tie_break_uses_alphabet_order():
    d = compile_regex("b a | a b", ("a", "b"))
    assert shortest_witness(d) == ("a", "b")


def test_witness_is_minimal():
    for seed in range(20):
        a = random_dfsa(seed)
        w = shortest_witness(a)
        if w is None:
            assert is_empty(a)
            continue
        assert a.accepts(w)
        if w:
            assert not bounded_language(a, len(w) - 1)
