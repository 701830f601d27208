"""IOLTS models: file format, quiescence completion, determinization, traces.

An IOLTS is a labeled transition system whose visible labels are split into
disjoint input and output alphabets, with ``tau`` marking internal moves.
Quiescence (no outputs and no internal moves at a state) is made observable by
adding a ``delta`` self-loop there, after which the observable behavior of a
model is the prefix-closed set of its tau-free label sequences.

State order is declaration order and is semantically load-bearing: it defines
the state indices used by the multigraph construction and every tie-breaking
rule downstream, so all transformations preserve it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property

from .errors import FormatError
from .fsa import Dfsa

TAU = "tau"
DELTA = "delta"

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_RESERVED_NAMES = frozenset({"tau", "delta", "pass", "fail"})
_SECTIONS = ("states", "initial", "inputs", "outputs")


def _check_name(name: str, kind: str) -> None:
    if not _NAME_RE.match(name):
        raise FormatError(f"invalid {kind} name {name!r}")
    if name in _RESERVED_NAMES:
        raise FormatError(f"reserved name {name!r} may not be used as a {kind}")


@dataclass(frozen=True)
class Iolts:
    """An input/output labeled transition system.

    ``outputs`` contains ``delta`` once the model has been quiescence-completed;
    plain user models never mention ``delta``, and ``tau`` appears only as a
    transition label.  Instances are immutable and safe to share.
    """

    states: tuple[str, ...]
    initial: int
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    transitions: tuple[tuple[int, str, int], ...]

    def __post_init__(self):
        if not self.states:
            raise FormatError("model has no states")
        if len(set(self.states)) != len(self.states):
            raise FormatError("duplicate state name")
        for name in self.states:
            _check_name(name, "state")
        seen: set[str] = set()
        for name in self.inputs:
            _check_name(name, "input action")
            if name in seen:
                raise FormatError(f"duplicate action name {name!r}")
            seen.add(name)
        for name in self.outputs:
            if name != DELTA:
                _check_name(name, "output action")
            if name in seen:
                raise FormatError(
                    f"alphabets not disjoint: {name!r}" if name in self.inputs
                    else f"duplicate action name {name!r}"
                )
            seen.add(name)
        if not 0 <= self.initial < len(self.states):
            raise FormatError("initial state out of range")
        labels = set(self.inputs) | set(self.outputs) | {TAU}
        triples = set()
        for src, label, dst in self.transitions:
            if not (0 <= src < len(self.states) and 0 <= dst < len(self.states)):
                raise FormatError("transition endpoint out of range")
            if label not in labels:
                raise FormatError(f"unknown label {label!r}")
            if (src, label, dst) in triples:
                raise FormatError("duplicate transition")
            triples.add((src, label, dst))

    @cached_property
    def _adjacency(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        out: list[list[tuple[str, int]]] = [[] for _ in self.states]
        for src, label, dst in self.transitions:
            out[src].append((label, dst))
        return tuple(tuple(row) for row in out)

    def transitions_from(self, state: int) -> tuple[tuple[str, int], ...]:
        return self._adjacency[state]

    @property
    def observable_alphabet(self) -> tuple[str, ...]:
        """Inputs then outputs, in declaration order (delta last if completed)."""
        return self.inputs + self.outputs

    @cached_property
    def is_deterministic(self) -> bool:
        """No tau transitions and at most one target per (state, label)."""
        seen = set()
        for src, label, dst in self.transitions:
            if label == TAU or (src, label) in seen:
                return False
            seen.add((src, label))
        return True

    @property
    def has_delta(self) -> bool:
        return DELTA in self.outputs or any(l == DELTA for _, l, _ in self.transitions)

    def _is_quiescent(self, state: int) -> bool:
        # delta itself does not count against quiescence
        for label, _ in self._adjacency[state]:
            if label == TAU or (label != DELTA and label in self._output_set):
                return False
        return True

    @cached_property
    def _output_set(self) -> frozenset[str]:
        return frozenset(self.outputs)

    @cached_property
    def is_quiescence_completed(self) -> bool:
        """Delta self-loops sit at exactly the quiescent states, nowhere else."""
        if DELTA not in self.outputs:
            return False
        looped = set()
        for src, label, dst in self.transitions:
            if label == DELTA:
                if src != dst:
                    return False
                looped.add(src)
        quiescent = {i for i in range(len(self.states)) if self._is_quiescent(i)}
        return looped == quiescent


# --- file format ---------------------------------------------------------


def _logical_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_sections(text: str) -> tuple[dict[str, list[str]], list[list[str]]]:
    lines = _logical_lines(text)
    pos = 0
    header: dict[str, list[str]] = {}
    for name in _SECTIONS:
        if pos >= len(lines) or not lines[pos].startswith(name + ":"):
            raise FormatError(f"missing section {name!r}")
        header[name] = lines[pos][len(name) + 1 :].split()
        pos += 1
    if pos >= len(lines) or lines[pos] != "transitions:":
        raise FormatError("missing section 'transitions'")
    pos += 1
    rows = []
    for line in lines[pos:]:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"malformed transition line {line!r}")
        rows.append(parts)
    return header, rows


def _assemble(header: dict[str, list[str]], rows: list[list[str]],
              allow_tau: bool) -> tuple:
    """Resolve names to indices; shared by the model and test-purpose loaders."""
    states = header["states"]
    if not states:
        raise FormatError("model has no states")
    if len(header["initial"]) != 1:
        raise FormatError("initial section must name exactly one state")
    state_index = {}
    for i, name in enumerate(states):
        if name in state_index:
            raise FormatError(f"duplicate state name {name!r}")
        state_index[name] = i
    initial_name = header["initial"][0]
    if initial_name not in state_index:
        raise FormatError(f"initial state {initial_name!r} not declared")
    inputs = tuple(header["inputs"])
    outputs = tuple(header["outputs"])
    labels = set(inputs) | set(outputs)
    transitions = []
    seen = set()
    for src, label, dst in rows:
        if src not in state_index:
            raise FormatError(f"unknown state {src!r} in transition")
        if dst not in state_index:
            raise FormatError(f"unknown state {dst!r} in transition")
        if label not in labels and not (allow_tau and label == TAU):
            raise FormatError(f"unknown label {label!r}")
        triple = (state_index[src], label, state_index[dst])
        if triple not in seen:
            seen.add(triple)
            transitions.append(triple)
    return tuple(states), state_index[initial_name], inputs, outputs, tuple(transitions)


def parse_model(text: str) -> Iolts:
    """Parse the line-oriented model format.

    Sections appear exactly once, in order: ``states:``, ``initial:``,
    ``inputs:``, ``outputs:``, ``transitions:`` followed by one
    ``<src> <label> <dst>`` per line.  ``#`` starts a comment.  ``delta`` is
    accepted only in the outputs section (as written by quiescence completion);
    user models should not mention it.
    """
    header, rows = _parse_sections(text)
    states, initial, inputs, outputs, transitions = _assemble(header, rows,
                                                              allow_tau=True)
    if DELTA in inputs:
        raise FormatError("reserved name 'delta' may not be declared as an input")
    return Iolts(states, initial, inputs, outputs, transitions)


def serialize_model(m: Iolts, comments: tuple[str, ...] = ()) -> str:
    """Canonical text for a model: fixed section order, stored transition order."""
    return _serialize(m.states, m.initial, m.inputs, m.outputs, m.transitions,
                      comments)


def _serialize(states, initial, inputs, outputs, transitions, comments) -> str:
    def section(name: str, tokens) -> str:
        return f"{name}:" + ("" if not tokens else " " + " ".join(tokens))

    lines = [f"# {c}" for c in comments]
    lines.append(section("states", states))
    lines.append(section("initial", [states[initial]]))
    lines.append(section("inputs", inputs))
    lines.append(section("outputs", outputs))
    lines.append("transitions:")
    for src, label, dst in transitions:
        lines.append(f"{states[src]} {label} {states[dst]}")
    return "\n".join(lines) + "\n"


# --- quiescence ------------------------------------------------------------


def complete_quiescence(m: Iolts) -> Iolts:
    """Add a delta self-loop at every quiescent state and delta to the outputs.

    Raises FormatError if the model already mentions delta anywhere.
    """
    if m.has_delta:
        raise FormatError("model already contains delta")
    added = tuple((i, DELTA, i) for i in range(len(m.states)) if m._is_quiescent(i))
    return replace(m, outputs=m.outputs + (DELTA,), transitions=m.transitions + added)


def ensure_quiescence(m: Iolts) -> Iolts:
    """Return ``m`` if already quiescence-completed, else complete it.

    A model that mentions delta without being structurally completed is
    rejected: user-supplied delta is forbidden.
    """
    if m.is_quiescence_completed:
        return m
    if m.has_delta:
        raise FormatError("model mentions delta but is not quiescence-completed")
    return complete_quiescence(m)


# --- observable semantics ---------------------------------------------------


def _tau_closure(m: Iolts, states: frozenset[int]) -> frozenset[int]:
    stack = list(states)
    seen = set(states)
    while stack:
        s = stack.pop()
        for label, t in m.transitions_from(s):
            if label == TAU and t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def determinize(m: Iolts) -> Dfsa:
    """Subset construction over observable tokens; all subset states accept.

    The result recognizes exactly the observable traces of ``m`` (a prefix
    closed language, hence the all-accepting state set).  Missing transitions
    stay missing: the empty subset is never materialized.  Requires a
    quiescence-completed model so that delta is part of the token alphabet.
    """
    if not m.is_quiescence_completed:
        raise FormatError("determinize requires a quiescence-completed model")
    alphabet = m.observable_alphabet
    init = _tau_closure(m, frozenset({m.initial}))
    index: dict[frozenset[int], int] = {init: 0}
    queue = [init]
    trans: dict[tuple[int, str], int] = {}
    qi = 0
    while qi < len(queue):
        subset = queue[qi]
        qi += 1
        i = index[subset]
        for tok in alphabet:
            targets = {t for s in subset for label, t in m.transitions_from(s)
                       if label == tok}
            if not targets:
                continue
            closed = _tau_closure(m, frozenset(targets))
            if closed not in index:
                index[closed] = len(index)
                queue.append(closed)
            trans[(i, tok)] = index[closed]
    n = len(index)
    return Dfsa(alphabet, n, 0, frozenset(range(n)), trans,
                complete=len(trans) == n * len(alphabet))


def traces_bounded(m: Iolts, depth: int) -> set[tuple[str, ...]]:
    """All observable traces of length <= depth, by exhaustive search.

    This is the brute-force oracle: it replays words against the raw
    transition relation with tau-closure at every step and never builds an
    automaton, so it cross-checks determinize() through an independent path.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not m.is_quiescence_completed:
        raise FormatError("traces_bounded requires a quiescence-completed model")
    alphabet = m.observable_alphabet
    words: set[tuple[str, ...]] = {()}
    frontier: list[tuple[tuple[str, ...], frozenset[int]]] = [
        ((), _tau_closure(m, frozenset({m.initial})))
    ]
    for _ in range(depth):
        nxt = []
        for word, reach in frontier:
            for tok in alphabet:
                targets = {t for s in reach for label, t in m.transitions_from(s)
                           if label == tok}
                if not targets:
                    continue
                w = word + (tok,)
                words.add(w)
                nxt.append((w, _tau_closure(m, frozenset(targets))))
        frontier = nxt
    return words
