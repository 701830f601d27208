"""Deterministic finite-automaton algebra over action tokens.

Automata here speak in whole tokens (``pin``, ``amo``) rather than characters.
A regular expression is a whitespace-separated token sequence using the
operators ``| * ( )`` plus ``%empty`` for the empty word; a multi-line source
(or one introduced by a ``#finite`` directive) denotes the finite language with
one word per line, and an empty source denotes the empty language.

The algebra provides exactly what conformance-suite construction needs:
completion, complement, product intersection and union, emptiness, and
shortest accepted words.  Products are left unminimized on purpose so that
suite-size bounds stay directly observable; only compiled regexes are
minimized.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError, FormatError

_OPERATORS = ("(", ")", "|", "*")
_EMPTY_WORD = "%empty"
_FINITE_DIRECTIVE = "#finite"


@dataclass(frozen=True, eq=False)
class Dfsa:
    """A deterministic finite automaton with a possibly partial transition map.

    ``transitions`` maps ``(state, token)`` to the successor state; a missing
    pair means the word dies there.  ``complete`` asserts that every pair is
    defined.  Instances are immutable; every operation below returns a new
    automaton.
    """

    alphabet: tuple[str, ...]
    n_states: int
    initial: int
    accepting: frozenset[int]
    transitions: dict[tuple[int, str], int]
    complete: bool = False

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise FormatError("duplicate token in automaton alphabet")
        if self.n_states < 1:
            raise FormatError("automaton needs at least one state")
        if not 0 <= self.initial < self.n_states:
            raise FormatError("initial state out of range")
        if not all(0 <= s < self.n_states for s in self.accepting):
            raise FormatError("accepting state out of range")
        tokens = set(self.alphabet)
        for (src, tok), dst in self.transitions.items():
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise FormatError("transition endpoint out of range")
            if tok not in tokens:
                raise FormatError(f"transition token {tok!r} not in alphabet")
        if self.complete:
            for s in range(self.n_states):
                for tok in self.alphabet:
                    if (s, tok) not in self.transitions:
                        raise FormatError("automaton flagged complete is partial")

    def step(self, state: int, token: str) -> int | None:
        return self.transitions.get((state, token))

    def accepts(self, word: Iterable[str]) -> bool:
        state = self.initial
        for tok in word:
            nxt = self.transitions.get((state, tok))
            if nxt is None:
                return False
            state = nxt
        return state in self.accepting

    def enabled(self, state: int) -> tuple[str, ...]:
        """Tokens with a defined transition at ``state``, in alphabet order."""
        return tuple(t for t in self.alphabet if (state, t) in self.transitions)


def empty_language(alphabet: Sequence[str]) -> Dfsa:
    """The complete one-state automaton accepting nothing."""
    alpha = tuple(alphabet)
    return Dfsa(alpha, 1, 0, frozenset(), {(0, t): 0 for t in alpha}, complete=True)


def complete(a: Dfsa) -> Dfsa:
    """Make every (state, token) pair defined by routing gaps to a fresh sink.

    If the transition map is already total no sink is added and the automaton
    is returned as-is (with the ``complete`` flag set).
    """
    missing = [
        (s, tok)
        for s in range(a.n_states)
        for tok in a.alphabet
        if (s, tok) not in a.transitions
    ]
    if not missing:
        return a if a.complete else replace(a, complete=True)
    sink = a.n_states
    trans = dict(a.transitions)
    for pair in missing:
        trans[pair] = sink
    for tok in a.alphabet:
        trans[(sink, tok)] = sink
    return Dfsa(a.alphabet, a.n_states + 1, a.initial, a.accepting, trans, complete=True)


def complement(a: Dfsa) -> Dfsa:
    """Accept exactly the words ``a`` rejects (completing first if needed)."""
    c = complete(a)
    return replace(c, accepting=frozenset(range(c.n_states)) - c.accepting)


def _product(a: Dfsa, b: Dfsa, conjunction: bool) -> Dfsa:
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatchError(
            "automata alphabets differ: "
            f"{sorted(set(a.alphabet) ^ set(b.alphabet))} not shared"
        )
    order = a.alphabet
    index: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    queue = deque([(a.initial, b.initial)])
    trans: dict[tuple[int, str], int] = {}
    accepting: set[int] = set()
    while queue:
        pa, pb = queue.popleft()
        i = index[(pa, pb)]
        in_a, in_b = pa in a.accepting, pb in b.accepting
        if (in_a and in_b) if conjunction else (in_a or in_b):
            accepting.add(i)
        for tok in order:
            qa = a.step(pa, tok)
            qb = b.step(pb, tok)
            if qa is None or qb is None:
                continue
            if (qa, qb) not in index:
                index[(qa, qb)] = len(index)
                queue.append((qa, qb))
            trans[(i, tok)] = index[(qa, qb)]
    n = len(index)
    total = len(trans) == n * len(order)
    return Dfsa(order, n, 0, frozenset(accepting), trans, complete=total)


def intersect(a: Dfsa, b: Dfsa) -> Dfsa:
    """Reachable product accepting L(a) ∩ L(b)."""
    return _product(a, b, conjunction=True)


def union(a: Dfsa, b: Dfsa) -> Dfsa:
    """Reachable product of the completed operands accepting L(a) ∪ L(b)."""
    return _product(complete(a), complete(b), conjunction=False)


def is_empty(a: Dfsa) -> bool:
    """True iff no accepting state is reachable from the initial state."""
    seen = {a.initial}
    queue = deque([a.initial])
    while queue:
        s = queue.popleft()
        if s in a.accepting:
            return False
        for tok in a.alphabet:
            t = a.step(s, tok)
            if t is not None and t not in seen:
                seen.add(t)
                queue.append(t)
    return True


def shortest_witness(a: Dfsa) -> tuple[str, ...] | None:
    """A minimum-length accepted word, ties broken by alphabet order.

    Returns None when the language is empty.  The breadth-first search expands
    tokens in alphabet declaration order, so among equal-length candidates the
    lexicographically smallest one (under that order) is produced.
    """
    if a.initial in a.accepting:
        return ()
    seen = {a.initial}
    queue: deque[tuple[int, tuple[str, ...]]] = deque([(a.initial, ())])
    while queue:
        s, word = queue.popleft()
        for tok in a.alphabet:
            t = a.step(s, tok)
            if t is None or t in seen:
                continue
            extended = word + (tok,)
            if t in a.accepting:
                return extended
            seen.add(t)
            queue.append((t, extended))
    return None


def equivalent(a: Dfsa, b: Dfsa) -> bool:
    """Language equality, decided by emptiness of the symmetric difference."""
    return is_empty(union(intersect(a, complement(b)), intersect(b, complement(a))))


def bounded_language(a: Dfsa, depth: int) -> set[tuple[str, ...]]:
    """All accepted words of length at most ``depth``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    words: set[tuple[str, ...]] = set()
    frontier: list[tuple[int, tuple[str, ...]]] = [(a.initial, ())]
    if a.initial in a.accepting:
        words.add(())
    for _ in range(depth):
        nxt: list[tuple[int, tuple[str, ...]]] = []
        for state, word in frontier:
            for tok in a.alphabet:
                t = a.step(state, tok)
                if t is None:
                    continue
                w = word + (tok,)
                if t in a.accepting:
                    words.add(w)
                nxt.append((t, w))
        frontier = nxt
    return words


# --- token-regex compilation -------------------------------------------------

# AST nodes are tagged tuples:
#   ("empty",)            the empty language
#   ("eps",)              the empty word
#   ("lit", token)
#   ("cat", left, right)
#   ("alt", left, right)
#   ("star", inner)


def _parse_tokens(tokens: list[str], alphabet: set[str]):
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_alt():
        node = parse_seq()
        while peek() == "|":
            take()
            node = ("alt", node, parse_seq())
        return node

    def parse_seq():
        items = []
        while peek() is not None and peek() not in (")", "|"):
            items.append(parse_item())
        if not items:
            raise FormatError("regex syntax error: empty alternative")
        node = items[0]
        for item in items[1:]:
            node = ("cat", node, item)
        return node

    def parse_item():
        node = parse_atom()
        while peek() == "*":
            take()
            node = ("star", node)
        return node

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            node = parse_alt()
            if peek() != ")":
                raise FormatError("regex syntax error: unbalanced '('")
            take()
            return node
        if tok in (")", "|", "*", None):
            raise FormatError(f"regex syntax error near {tok!r}")
        take()
        if tok == _EMPTY_WORD:
            return ("eps",)
        if tok not in alphabet:
            raise FormatError(f"regex literal {tok!r} not in alphabet")
        return ("lit", tok)

    node = parse_alt()
    if pos != len(tokens):
        raise FormatError(f"regex syntax error: trailing {tokens[pos]!r}")
    return node


class _Nfa:
    """Thompson-construction scratch space."""

    def __init__(self):
        self.eps: list[set[int]] = []
        self.edges: list[dict[str, set[int]]] = []

    def new_state(self) -> int:
        self.eps.append(set())
        self.edges.append({})
        return len(self.eps) - 1

    def add_eps(self, a: int, b: int) -> None:
        self.eps[a].add(b)

    def add_edge(self, a: int, tok: str, b: int) -> None:
        self.edges[a].setdefault(tok, set()).add(b)

    def fragment(self, ast) -> tuple[int, int]:
        tag = ast[0]
        start, end = self.new_state(), self.new_state()
        if tag == "empty":
            pass  # no connection at all
        elif tag == "eps":
            self.add_eps(start, end)
        elif tag == "lit":
            self.add_edge(start, ast[1], end)
        elif tag == "cat":
            s1, e1 = self.fragment(ast[1])
            s2, e2 = self.fragment(ast[2])
            self.add_eps(start, s1)
            self.add_eps(e1, s2)
            self.add_eps(e2, end)
        elif tag == "alt":
            for sub in (ast[1], ast[2]):
                s, e = self.fragment(sub)
                self.add_eps(start, s)
                self.add_eps(e, end)
        elif tag == "star":
            s, e = self.fragment(ast[1])
            self.add_eps(start, end)
            self.add_eps(start, s)
            self.add_eps(e, s)
            self.add_eps(e, end)
        else:  # pragma: no cover - internal invariant
            raise AssertionError(f"unknown ast node {tag}")
        return start, end

    def closure(self, states: frozenset[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(states)
        while stack:
            s = stack.pop()
            for t in self.eps[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def _nfa_to_dfsa(nfa: _Nfa, start: int, end: int, alphabet: tuple[str, ...]) -> Dfsa:
    init = nfa.closure(frozenset({start}))
    index: dict[frozenset[int], int] = {init: 0}
    queue = deque([init])
    trans: dict[tuple[int, str], int] = {}
    accepting: set[int] = set()
    while queue:
        subset = queue.popleft()
        i = index[subset]
        if end in subset:
            accepting.add(i)
        for tok in alphabet:
            targets = set()
            for s in subset:
                targets |= nfa.edges[s].get(tok, set())
            if not targets:
                continue
            closed = nfa.closure(frozenset(targets))
            if closed not in index:
                index[closed] = len(index)
                queue.append(closed)
            trans[(i, tok)] = index[closed]
    n = len(index)
    return Dfsa(alphabet, n, 0, frozenset(accepting), trans,
                complete=len(trans) == n * len(alphabet))


def _minimize(a: Dfsa) -> Dfsa:
    """Hopcroft partition refinement; expects a complete automaton."""
    states = range(a.n_states)
    finals = set(a.accepting)
    nonfinals = set(states) - finals
    partition: list[set[int]] = [s for s in (finals, nonfinals) if s]
    work: list[set[int]] = [min(finals, nonfinals, key=len)] if finals and nonfinals else []
    pre: dict[str, dict[int, set[int]]] = {tok: {} for tok in a.alphabet}
    for (src, tok), dst in a.transitions.items():
        pre[tok].setdefault(dst, set()).add(src)
    while work:
        splitter = work.pop()
        for tok in a.alphabet:
            x = set()
            for dst in splitter:
                x |= pre[tok].get(dst, set())
            if not x:
                continue
            next_partition: list[set[int]] = []
            for block in partition:
                inter = block & x
                diff = block - x
                if inter and diff:
                    next_partition.extend((inter, diff))
                    if block in work:
                        work.remove(block)
                        work.extend((inter, diff))
                    else:
                        work.append(min(inter, diff, key=len))
                else:
                    next_partition.append(block)
            partition = next_partition
    block_of = {}
    for bi, block in enumerate(partition):
        for s in block:
            block_of[s] = bi
    reps = [min(block) for block in partition]
    trans = {}
    for bi, rep in enumerate(reps):
        for tok in a.alphabet:
            trans[(bi, tok)] = block_of[a.transitions[(rep, tok)]]
    accepting = frozenset(bi for bi, block in enumerate(partition) if block & a.accepting)
    return Dfsa(a.alphabet, len(partition), block_of[a.initial], accepting, trans, complete=True)


def _renumber_bfs(a: Dfsa) -> Dfsa:
    """Canonical state numbering: breadth-first from initial, alphabet order."""
    order = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        s = queue.popleft()
        for tok in a.alphabet:
            t = a.step(s, tok)
            if t is not None and t not in order:
                order[t] = len(order)
                queue.append(t)
    # unreachable states (none arise from our pipelines) are dropped
    trans = {
        (order[s], tok): order[t]
        for (s, tok), t in a.transitions.items()
        if s in order and t in order
    }
    accepting = frozenset(order[s] for s in a.accepting if s in order)
    n = len(order)
    return Dfsa(a.alphabet, n, 0, accepting, trans,
                complete=len(trans) == n * len(a.alphabet))


def _split_source(src: str) -> tuple[bool, list[str]]:
    """Separate the #finite directive from content lines; drop comments."""
    lines = [ln.strip() for ln in src.splitlines()]
    finite = False
    content: list[str] = []
    for ln in lines:
        if not ln:
            continue
        if ln == _FINITE_DIRECTIVE and not content and not finite:
            finite = True
            continue
        if ln.startswith("#"):
            continue
        content.append(ln)
    return finite, content


def compile_regex(src: str, alphabet: Sequence[str]) -> Dfsa:
    """Compile a token regex (or finite word list) to a minimized complete Dfsa.

    ``src`` holds either a single regex line, or several lines (optionally
    under a ``#finite`` directive) each denoting one word of a finite language.
    An empty source denotes the empty language.

    Raises FormatError on syntax errors or literals outside ``alphabet``.
    """
    alpha = tuple(alphabet)
    if len(set(alpha)) != len(alpha):
        raise FormatError("duplicate token in regex alphabet")
    for tok in alpha:
        if not tok or any(c.isspace() for c in tok) or tok in _OPERATORS or tok == _EMPTY_WORD:
            raise FormatError(f"invalid alphabet token {tok!r}")
    finite, lines = _split_source(src)
    tokens_set = set(alpha)
    if not lines:
        return empty_language(alpha)
    if finite or len(lines) > 1:
        ast = ("empty",)
        first = True
        for ln in lines:
            word_ast = ("eps",)
            if ln != _EMPTY_WORD:
                parts = ln.split()
                for tok in parts:
                    if tok not in tokens_set:
                        raise FormatError(f"regex literal {tok!r} not in alphabet")
                word_ast = ("lit", parts[0])
                for tok in parts[1:]:
                    word_ast = ("cat", word_ast, ("lit", tok))
            ast = word_ast if first else ("alt", ast, word_ast)
            first = False
    else:
        ast = _parse_tokens(lines[0].split(), tokens_set)
    nfa = _Nfa()
    start, end = nfa.fragment(ast)
    dfsa = _nfa_to_dfsa(nfa, start, end, alpha)
    return _renumber_bfs(_minimize(complete(dfsa)))
