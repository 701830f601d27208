"""Conformance checking: direct ioco and language-based checking with suites.

Two independent decision routes are provided on purpose.  ``check_ioco`` walks
the synchronized product of the determinized specification and implementation
and reports the first output (or quiescence) the implementation offers that
the specification does not.  ``check_lang`` builds a fault-suite automaton
from desirable/forbidden languages (D, F) and decides conformance by product
emptiness; with D = otr(spec) extended by one output and F empty it coincides
with ioco, which the test suite exploits as a cross-oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import AlphabetMismatchError
from .fsa import (
    Dfsa,
    complement,
    complete,
    empty_language,
    intersect,
    is_empty,
    shortest_witness,
    union,
)
from .iolts import DELTA, Iolts, determinize, ensure_quiescence

WITNESS_STRATEGIES = ("single", "cover")


@dataclass(frozen=True)
class SuiteStats:
    """Automaton sizes behind a verdict; suite fields are None when no suite
    automaton was built (the direct ioco path)."""

    spec_states: int
    iut_states: int
    alphabet_size: int
    d_states: int | None = None
    f_states: int | None = None
    suite_states: int | None = None


@dataclass(frozen=True)
class Verdict:
    conforms: bool
    witnesses: tuple[tuple[str, ...], ...]
    stats: SuiteStats

    def __post_init__(self):
        if self.conforms and self.witnesses:
            raise ValueError("conforming verdict cannot carry witnesses")


def verdict_json(v: Verdict, relation: str) -> dict:
    """The machine-readable verdict shape written by the CLI."""
    return {
        "relation": relation,
        "conforms": v.conforms,
        "witnesses": [list(w) for w in v.witnesses],
        "stats": {
            "spec_states": v.stats.spec_states,
            "iut_states": v.stats.iut_states,
            "suite_states": v.stats.suite_states,
            "d_states": v.stats.d_states,
            "f_states": v.stats.f_states,
            "alphabet_size": v.stats.alphabet_size,
        },
    }


def _require_same_alphabets(spec: Iolts, iut: Iolts) -> None:
    def user_outputs(m: Iolts) -> set[str]:
        return {t for t in m.outputs if t != DELTA}

    if set(spec.inputs) != set(iut.inputs) or user_outputs(spec) != user_outputs(iut):
        raise AlphabetMismatchError("specification and implementation alphabets differ")


def check_ioco(spec: Iolts, iut: Iolts, witness: str = "single") -> Verdict:
    """Decide whether every implementation output after a specification trace
    is allowed by the specification (quiescence included).

    Both models are quiescence-completed if needed.  Exploration follows the
    synchronized product of the determinized models: outputs advance only when
    enabled on both sides (an implementation-only output is a fault), inputs
    advance only when enabled on both sides, and implementation states lacking
    a specified input silently truncate exploration (no obligation there).

    ``witness`` selects "single" (shortest fault word) or "cover" (transition
    cover of the fault-relevant product, several words per fault region).
    """
    if witness not in WITNESS_STRATEGIES:
        raise ValueError(f"unknown witness strategy {witness!r}")
    _require_same_alphabets(spec, iut)
    ds = determinize(ensure_quiescence(spec))
    di = determinize(ensure_quiescence(iut))
    spec_outputs = set(spec.outputs)
    outputs = {t for t in ds.alphabet if t == DELTA or t in spec_outputs}
    first_fault: tuple[str, ...] | None = None
    seen = {(ds.initial, di.initial)}
    queue: deque[tuple[int, int, tuple[str, ...]]] = deque([(ds.initial, di.initial, ())])
    while queue and first_fault is None:
        s, q, word = queue.popleft()
        for tok in ds.alphabet:
            s2 = ds.step(s, tok)
            q2 = di.step(q, tok)
            if tok in outputs and q2 is not None and s2 is None:
                first_fault = word + (tok,)
                break
            if s2 is None or q2 is None:
                continue
            if (s2, q2) not in seen:
                seen.add((s2, q2))
                queue.append((s2, q2, word + (tok,)))
    stats = SuiteStats(ds.n_states, di.n_states, len(ds.alphabet))
    if first_fault is None:
        return Verdict(True, (), stats)
    if witness == "single":
        return Verdict(False, (first_fault,), stats)
    d_aut = _ioco_desirable(ds, outputs)
    suite = _suite_from_automata(ds, d_aut, empty_language(ds.alphabet))
    witnesses = tuple(witnesses_transition_cover(di, suite))
    stats = SuiteStats(ds.n_states, di.n_states, len(ds.alphabet),
                       d_states=complete(d_aut).n_states, f_states=1,
                       suite_states=suite.n_states)
    return Verdict(False, witnesses, stats)


def ioco_desirable_language(spec: Iolts) -> Dfsa:
    """The language otr(spec)·(outputs ∪ {delta}), the D that makes
    language-based checking coincide with ioco when F is empty."""
    cs = ensure_quiescence(spec)
    ds = determinize(cs)
    outputs = set(cs.outputs)
    return _ioco_desirable(ds, outputs)


def _ioco_desirable(spec_det: Dfsa, outputs: set[str]) -> Dfsa:
    # States are (det state, last-token-was-output); one extra accepting state
    # catches spec traces extended by an output the spec does not enable.
    done = object()
    index: dict = {(spec_det.initial, False): 0}
    order = [(spec_det.initial, False)]
    trans: dict[tuple[int, str], int] = {}
    done_idx: int | None = None
    qi = 0
    while qi < len(order):
        node = order[qi]
        qi += 1
        i = index[node]
        if node is done:
            continue
        s, _ = node
        for tok in spec_det.alphabet:
            t = spec_det.step(s, tok)
            if t is not None:
                nxt = (t, tok in outputs)
            elif tok in outputs:
                nxt = done
            else:
                continue
            if nxt is done and done_idx is None:
                done_idx = len(index)
                index[done] = done_idx
                order.append(done)
            if nxt is not done and nxt not in index:
                index[nxt] = len(index)
                order.append(nxt)
            trans[(i, tok)] = index[nxt]
    accepting = {i for node, i in index.items()
                 if node is done or (node is not done and node[1])}
    n = len(index)
    return Dfsa(spec_det.alphabet, n, 0, frozenset(accepting), trans,
                complete=len(trans) == n * len(spec_det.alphabet))


def _suite_from_automata(spec_det: Dfsa, d: Dfsa, f: Dfsa) -> Dfsa:
    a1 = complete(spec_det)          # accepts otr(spec)
    b1 = complement(a1)              # accepts the complement
    dc = complete(d)
    fc = complete(f)
    a2 = intersect(fc, a1)           # forbidden and specified
    b2 = intersect(dc, b1)           # desirable and unspecified
    return union(a2, b2)


def build_fault_suite(spec: Iolts, d: Dfsa, f: Dfsa) -> Dfsa:
    """The complete suite automaton accepting every fault-revealing word:
    (L(d) minus otr(spec)) plus (L(f) inside otr(spec)).

    State count stays within (n+1)^2 * |d| * |f| for n the determinized
    specification size and |d|, |f| the completed operand sizes.
    """
    ds = determinize(ensure_quiescence(spec))
    if set(d.alphabet) != set(ds.alphabet) or set(f.alphabet) != set(ds.alphabet):
        raise AlphabetMismatchError(
            "desirable/forbidden languages must range over the specification's "
            "observable alphabet (delta included)"
        )
    return _suite_from_automata(ds, d, f)


def check_lang(spec: Iolts, iut: Iolts, d: Dfsa, f: Dfsa,
               witness: str = "single") -> Verdict:
    """Language-based conformance: no implementation trace may be desirable-
    but-unspecified or forbidden-but-specified."""
    if witness not in WITNESS_STRATEGIES:
        raise ValueError(f"unknown witness strategy {witness!r}")
    _require_same_alphabets(spec, iut)
    ds = determinize(ensure_quiescence(spec))
    di = determinize(ensure_quiescence(iut))
    if set(d.alphabet) != set(ds.alphabet) or set(f.alphabet) != set(ds.alphabet):
        raise AlphabetMismatchError(
            "desirable/forbidden languages must range over the specification's "
            "observable alphabet (delta included)"
        )
    suite = _suite_from_automata(ds, d, f)
    product = intersect(di, suite)
    stats = SuiteStats(ds.n_states, di.n_states, len(ds.alphabet),
                       d_states=complete(d).n_states,
                       f_states=complete(f).n_states,
                       suite_states=suite.n_states)
    if is_empty(product):
        return Verdict(True, (), stats)
    if witness == "single":
        w = shortest_witness(product)
        assert w is not None
        return Verdict(False, (w,), stats)
    return Verdict(False, tuple(witnesses_transition_cover(di, suite)), stats)


def witnesses_transition_cover(iut: Dfsa, suite: Dfsa) -> list[tuple[str, ...]]:
    """Accepted product words covering every transition on some fault path.

    Every transition of the reachable iut x suite product that lies on at
    least one path from the initial to an accepting state is traversed by at
    least one returned word.  Words come out shortest-first, ties broken by
    alphabet declaration order; the list is empty iff the product language is.
    """
    prod = intersect(iut, suite)
    # distance-to-accepting by backward search
    radj: dict[int, list[tuple[int, str]]] = {}
    for (src, tok), dst in prod.transitions.items():
        radj.setdefault(dst, []).append((src, tok))
    dist: dict[int, int] = {s: 0 for s in prod.accepting}
    frontier = list(prod.accepting)
    while frontier:
        nxt = []
        for s in frontier:
            for p, _ in radj.get(s, ()):
                if p not in dist:
                    dist[p] = dist[s] + 1
                    nxt.append(p)
        frontier = nxt
    if prod.initial not in dist:
        return []
    # shortest prefix per state, lexicographic in alphabet order
    prefix: dict[int, tuple[str, ...]] = {prod.initial: ()}
    queue = deque([prod.initial])
    while queue:
        s = queue.popleft()
        for tok in prod.alphabet:
            t = prod.step(s, tok)
            if t is not None and t not in prefix:
                prefix[t] = prefix[s] + (tok,)
                queue.append(t)

    def suffix(state: int) -> tuple[str, ...]:
        out: list[str] = []
        while state not in prod.accepting:
            for tok in prod.alphabet:
                t = prod.step(state, tok)
                if t is not None and dist.get(t, -1) == dist[state] - 1:
                    out.append(tok)
                    state = t
                    break
        return tuple(out)

    relevant = [(src, tok, dst) for (src, tok), dst in prod.transitions.items()
                if dst in dist and src in prefix]
    if not relevant:
        # the fault language is exactly {empty word}: nothing to cover,
        # but the list must be nonempty for a nonempty language
        return [()]
    rank = {tok: i for i, tok in enumerate(prod.alphabet)}
    candidates = []
    for src, tok, dst in relevant:
        word = prefix[src] + (tok,) + suffix(dst)
        candidates.append((len(word), tuple(rank[t] for t in word), word, (src, tok)))
    candidates.sort(key=lambda c: (c[0], c[1]))
    covered: set[tuple[int, str]] = set()
    words: list[tuple[str, ...]] = []
    for _, _, word, edge in candidates:
        if edge in covered:
            continue
        words.append(word)
        state = prod.initial
        for tok in word:
            covered.add((state, tok))
            state = prod.transitions[(state, tok)]
    return words
