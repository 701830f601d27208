"""Both conformance checkers plus the fault-suite construction."""

import pytest

from ioltstest import (
    AlphabetMismatchError,
    GenParams,
    bounded_language,
    build_fault_suite,
    check_ioco,
    check_lang,
    compile_regex,
    determinize,
    empty_language,
    ensure_quiescence,
    intersect,
    ioco_desirable_language,
    is_empty,
    mutate,
    parse_model,
    random_iolts,
    submachine,
    verdict_json,
    witnesses_transition_cover,
)
from ioltstest.fsa import Dfsa


def obs_alphabet(m):
    return ensure_quiescence(m).observable_alphabet


def test_ioco_reflexive(m1):
    assert check_ioco(m1, m1).conforms


def test_ioco_detects_unspecified_output(m1, m3):
    v = check_ioco(m1, m3)
    assert not v.conforms
    assert v.witnesses == (("x",),)


def test_ioco_underspecified_iut_conforms(m1, m4):
    # input a undefined in the implementation truncates exploration
    assert check_ioco(m1, m4).conforms


def test_ioco_handles_internal_moves(m1):
    """A tau move hides the state change but not the output it leads to."""
    iut = parse_model(
        "states: q0 q1\ninitial: q0\ninputs: a\noutputs: x\ntransitions:\n"
        "q0 tau q1\nq1 x q0\n"
    )
    v = check_ioco(m1, iut)
    assert not v.conforms
    assert v.witnesses == (("x",),)


def test_ioco_alphabet_mismatch(m1):
    other = parse_model(
        "states: s0\ninitial: s0\ninputs: b\noutputs: x\ntransitions:\n"
    )
    with pytest.raises(AlphabetMismatchError):
        check_ioco(m1, other)


def test_ioco_witness_shape(m1):
    """Witness = specified prefix plus one output the spec does not offer."""
    iut = parse_model(
        "states: q0 q1 q2\ninitial: q0\ninputs: a\noutputs: x\ntransitions:\n"
        "q0 a q1\nq1 x q2\nq2 x q2\n"
    )
    v = check_ioco(m1, iut)
    assert not v.conforms
    (w,) = v.witnesses
    ds = determinize(ensure_quiescence(m1))
    di = determinize(ensure_quiescence(iut))
    assert di.accepts(w)
    assert ds.accepts(w[:-1])
    assert not ds.accepts(w)
    assert w[-1] in ("x", "delta")


def test_suite_of_empty_languages_is_empty(m1):
    alpha = obs_alphabet(m1)
    suite = build_fault_suite(m1, empty_language(alpha), empty_language(alpha))
    assert is_empty(suite)


def test_suite_for_specified_word_is_empty(m1):
    # "a x" is a specification trace, so D inside otr(spec) reveals nothing
    alpha = obs_alphabet(m1)
    d = compile_regex("a x", alpha)
    suite = build_fault_suite(m1, d, empty_language(alpha))
    assert is_empty(suite)


def test_suite_accepts_exactly_d_minus_spec(m1):
    alpha = obs_alphabet(m1)
    d = ioco_desirable_language(m1)
    suite = build_fault_suite(m1, d, empty_language(alpha))
    ds = determinize(ensure_quiescence(m1))
    for w in sorted(bounded_language(d, 4)) + [("x",), ("a", "a"), ("a", "x", "x")]:
        assert suite.accepts(w) == (d.accepts(w) and not ds.accepts(w))


def test_suite_size_bound(m1):
    alpha = obs_alphabet(m1)
    d = compile_regex("( a | delta ) * a x", alpha)
    f = empty_language(alpha)
    suite = build_fault_suite(m1, d, f)
    n_s = determinize(ensure_quiescence(m1)).n_states
    assert suite.n_states <= (n_s + 1) ** 2 * d.n_states * f.n_states


def test_check_lang_conforming(m1):
    alpha = obs_alphabet(m1)
    d = compile_regex("( a | delta ) * a x", alpha)
    v = check_lang(m1, m1, d, empty_language(alpha))
    assert v.conforms
    assert v.stats.suite_states is not None


def test_check_lang_detects_extended_behavior(m1):
    iut = parse_model(
        "states: q0 q1 q2\ninitial: q0\ninputs: a\noutputs: x\ntransitions:\n"
        "q0 a q1\nq1 x q0\nq1 x q2\nq2 x q2\n"
    )
    alpha = obs_alphabet(m1)
    d = compile_regex("a x x", alpha)
    v = check_lang(m1, iut, d, empty_language(alpha))
    assert not v.conforms
    assert v.witnesses == (("a", "x", "x"),)


def test_check_lang_empty_languages_always_conform(m1, m3):
    alpha = obs_alphabet(m1)
    v = check_lang(m1, m3, empty_language(alpha), empty_language(alpha))
    assert v.conforms


def test_check_lang_forbidden_side(m1):
    """F catches behavior that is specified yet unwanted."""
    alpha = obs_alphabet(m1)
    f = compile_regex("a x", alpha)
    v = check_lang(m1, m1, empty_language(alpha), f)
    assert not v.conforms
    assert v.witnesses == (("a", "x"),)


def test_cover_handles_empty_word_fault(m1):
    """Forbidding the empty word faults every model; the cover reports it."""
    alpha = obs_alphabet(m1)
    f = compile_regex("%empty", alpha)
    v = check_lang(m1, m1, empty_language(alpha), f, witness="cover")
    assert not v.conforms
    assert v.witnesses == ((),)


def test_verdict_json_shape(m1, m3):
    payload = verdict_json(check_ioco(m1, m3), "ioco")
    assert payload["relation"] == "ioco"
    assert payload["conforms"] is False
    assert payload["witnesses"] == [["x"]]
    assert set(payload["stats"]) >= {"spec_states", "iut_states", "suite_states"}


def test_cover_empty_product():
    alpha = ("a", "x")
    assert witnesses_transition_cover(empty_language(alpha),
                                      empty_language(alpha)) == []


def test_cover_single_chain():
    alpha = ("a", "x")
    chain = compile_regex("a x", alpha)
    universal = Dfsa(alpha, 1, 0, frozenset({0}),
                     {(0, t): 0 for t in alpha}, complete=True)
    words = witnesses_transition_cover(universal, chain)
    assert words == [("a", "x")]


def test_cover_two_branches():
    alpha = ("a", "b", "x")
    suite = compile_regex("( a | b ) x", alpha)
    universal = Dfsa(alpha, 1, 0, frozenset({0}),
                     {(0, t): 0 for t in alpha}, complete=True)
    words = witnesses_transition_cover(universal, suite)
    assert ("a", "x") in words and ("b", "x") in words


def test_cover_includes_shortest_witness(m1, m3):
    v_single = check_ioco(m1, m3, witness="single")
    v_cover = check_ioco(m1, m3, witness="cover")
    assert not v_cover.conforms
    assert min(len(w) for w in v_cover.witnesses) == len(v_single.witnesses[0])


def test_cover_covers_all_fault_transitions(m1, m3):
    d = ioco_desirable_language(m1)
    suite = build_fault_suite(m1, d, empty_language(d.alphabet))
    di = determinize(ensure_quiescence(m3))
    words = witnesses_transition_cover(di, suite)
    prod = intersect(di, suite)
    covered = set()
    for w in words:
        assert prod.accepts(w)
        state = prod.initial
        for tok in w:
            covered.add((state, tok))
            state = prod.transitions[(state, tok)]
    # every transition on an initial-to-accepting path is covered
    # (all product states are reachable by construction)
    co = set(prod.accepting)
    changed = True
    while changed:
        changed = False
        for (src, tok), dst in prod.transitions.items():
            if dst in co and src not in co:
                co.add(src)
                changed = True
    for (src, tok), dst in prod.transitions.items():
        if dst in co:
            assert (src, tok) in covered


def _states_after(m, word):
    from ioltstest.iolts import _tau_closure

    reach = _tau_closure(m, frozenset({m.initial}))
    for tok in word:
        nxt = {t for s in reach for lab, t in m.transitions_from(s) if lab == tok}
        if not nxt:
            return frozenset()
        reach = _tau_closure(m, frozenset(nxt))
    return reach


def _out_after(m, word):
    outputs = set(m.outputs)
    return {lab for s in _states_after(m, word)
            for lab, _ in m.transitions_from(s) if lab in outputs}


def test_check_ioco_matches_definitional_oracle():
    """Replay-based out() comparison over all bounded spec traces agrees with
    the product-based checker; fault witnesses verify against the definition."""
    from ioltstest import traces_bounded

    for i in range(60):
        spec = random_iolts(GenParams(states=1 + i % 4, inputs=["a", "b"],
                                      outputs=["x", "y"],
                                      deterministic=(i % 3 != 0),
                                      input_enabled=False, density=0.45,
                                      seed=5000 + i))
        if i % 2:
            iut = random_iolts(GenParams(states=1 + (i // 2) % 4,
                                         inputs=["a", "b"], outputs=["x", "y"],
                                         deterministic=False,
                                         input_enabled=False, density=0.45,
                                         seed=9000 + i))
        else:
            iut = submachine(spec, 0.6, seed=i)
        v = check_ioco(spec, iut)
        sc, ic = ensure_quiescence(spec), ensure_quiescence(iut)
        if v.conforms:
            for sigma in traces_bounded(sc, 7):
                if _states_after(ic, sigma):
                    assert _out_after(ic, sigma) <= _out_after(sc, sigma)
        else:
            (w,) = v.witnesses
            prefix, last = w[:-1], w[-1]
            assert last in _out_after(ic, prefix)
            assert last not in _out_after(sc, prefix)
            assert _states_after(sc, prefix)


def test_relations_agree_on_ioco_shaped_languages():
    """check_ioco agrees with check_lang under D = otr(S)*outputs, F = empty."""
    agreements = 0
    for seed in range(30):
        spec = random_iolts(GenParams(states=2 + seed % 5, inputs=["a", "b"],
                                      outputs=["x", "y"], deterministic=True,
                                      input_enabled=False, density=0.5,
                                      seed=seed))
        if seed % 2:
            iut = submachine(spec, 0.6, seed)
        else:
            iut = mutate(spec, 0.3, seed).model
        d = ioco_desirable_language(spec)
        f = empty_language(d.alphabet)
        assert check_ioco(spec, iut).conforms == check_lang(spec, iut, d, f).conforms
        agreements += 1
    assert agreements == 30
