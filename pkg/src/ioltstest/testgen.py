"""Fault-model generation: leveled multigraph, path extraction, test purposes.

The multigraph unrolls a deterministic, quiescence-completed specification
into m*n + 1 levels (m = state bound on implementations, n = specification
states).  Within a level an edge may only move to a strictly larger state
index; self-loops and back edges drop to the next level, which forces
acyclicity.  Every output token (delta included) that a state does not enable
becomes an edge to the distinguished fail node.  Breadth-first label paths
from the initial node to fail are the fault words, and each one is completed
into a tester: deterministic, input-enabled over the outputs-plus-delta it
listens to, emitting exactly one stimulus per state, with pass/fail terminals.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError
from .iolts import (
    DELTA,
    Iolts,
    _assemble,
    _parse_sections,
    _serialize,
    ensure_quiescence,
)

FAIL = "fail"
PASS = "pass"

Node = tuple[int, int]  # (state index, level)


@dataclass(frozen=True)
class Multigraph:
    """The acyclic unfolding of a specification with a fail sink.

    ``edges`` maps each (state, level) node to its out-edges in token
    declaration order; a target of ``"fail"`` is the sink.
    """

    m: int
    n: int
    tokens: tuple[str, ...]
    initial: Node
    edges: dict[Node, tuple[tuple[str, object], ...]]

    @property
    def levels(self) -> int:
        return self.m * self.n + 1

    @property
    def node_count(self) -> int:
        """All (state, level) nodes plus the fail sink."""
        return self.n * self.levels + 1

    def replay(self, word) -> list:
        """Node sequence induced by a label word; stops at fail."""
        path = [self.initial]
        node = self.initial
        for tok in word:
            if node == FAIL:
                raise ValueError("word continues past fail")
            step = dict(self.edges[node])
            if tok not in step:
                raise ValueError(f"label {tok!r} undefined at node {node}")
            node = step[tok]
            path.append(node)
        return path

    @property
    def is_acyclic(self) -> bool:
        for (state, level), out in self.edges.items():
            for _, target in out:
                if target == FAIL:
                    continue
                t_state, t_level = target
                if (t_level, t_state) <= (level, state):
                    return False
        return True


def build_multigraph(spec: Iolts, m: int) -> Multigraph:
    """Unroll ``spec`` into the m*n+1 level fault multigraph.

    Requires a deterministic, quiescence-completed specification and m >= 1.
    """
    if m < 1:
        raise ValueError("state bound m must be >= 1")
    if not spec.is_quiescence_completed:
        raise FormatError("multigraph construction requires a quiescence-completed model")
    if not spec.is_deterministic:
        raise FormatError("multigraph construction requires a deterministic model")
    n = len(spec.states)
    top = m * n
    tokens = spec.observable_alphabet
    outputs = set(spec.outputs)
    step = {}
    for src, label, dst in spec.transitions:
        step[(src, label)] = dst
    edges: dict[Node, tuple[tuple[str, object], ...]] = {}
    for i in range(n):
        for k in range(top + 1):
            out: list[tuple[str, object]] = []
            for tok in tokens:
                j = step.get((i, tok))
                if j is not None:
                    if j > i:
                        out.append((tok, (j, k)))
                    elif k + 1 <= top:
                        out.append((tok, (j, k + 1)))
                elif tok in outputs:
                    out.append((tok, FAIL))
            edges[(i, k)] = tuple(out)
    graph = Multigraph(m, n, tokens, (spec.initial, 0), edges)
    if not graph.is_acyclic:  # structural guarantee, checked on every build
        raise AssertionError("multigraph construction produced a cycle")
    return graph


def _enumerate_fault_paths(g: Multigraph, limit: int) -> tuple[list[tuple[str, ...]], bool]:
    if limit < 1:
        raise ValueError("path limit must be >= 1")
    paths: list[tuple[str, ...]] = []
    queue: deque[tuple[Node, tuple[str, ...]]] = deque([(g.initial, ())])
    while queue:
        node, word = queue.popleft()
        out = g.edges[node]
        for idx, (tok, target) in enumerate(out):
            if target == FAIL:
                paths.append(word + (tok,))
                if len(paths) == limit:
                    # Every pending node owns at least one fail edge (having
                    # emitted a path means some output token exists), so any
                    # unprocessed edge or queue entry implies more paths.
                    return paths, bool(queue) or idx + 1 < len(out)
            else:
                queue.append((target, word + (tok,)))
    return paths, False


def enumerate_fault_paths(g: Multigraph, limit: int) -> list[tuple[str, ...]]:
    """Breadth-first label sequences of paths from the initial node to fail.

    Shortest paths come first; equal lengths are ordered by token declaration
    order.  Enumeration stops after ``limit`` paths.
    """
    return _enumerate_fault_paths(g, limit)[0]


@dataclass(frozen=True)
class TestPurpose:
    """A tester automaton: listens on the model's outputs plus delta, emits
    the model's inputs, and verdicts at the pass/fail terminals.

    Unlike a plain model, ``inputs`` legitimately contains delta here (the
    tester observes quiescence), so this is its own type rather than an Iolts.
    """

    states: tuple[str, ...]
    initial: int
    inputs: tuple[str, ...]   # observed: model outputs plus delta
    outputs: tuple[str, ...]  # emitted: model inputs
    transitions: tuple[tuple[int, str, int], ...]
    pass_index: int
    fail_index: int

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise FormatError("duplicate state name in test purpose")
        names = set(self.inputs) | set(self.outputs)
        if len(names) != len(self.inputs) + len(self.outputs):
            raise FormatError("test purpose alphabets overlap")
        if "tau" in names or PASS in names or FAIL in names:
            raise FormatError("reserved name used as a test purpose action")
        if DELTA in self.outputs:
            raise FormatError("delta belongs to the observed side of a test purpose")
        for src, label, dst in self.transitions:
            if label not in names:
                raise FormatError(f"unknown label {label!r} in test purpose")
            if not (0 <= src < len(self.states) and 0 <= dst < len(self.states)):
                raise FormatError("transition endpoint out of range")
        if self.states[self.pass_index] != PASS or self.states[self.fail_index] != FAIL:
            raise FormatError("pass/fail indices must name the pass/fail states")

    @cached_property
    def _step(self) -> dict[tuple[int, str], int]:
        table = {}
        for src, label, dst in self.transitions:
            if (src, label) in table:
                raise FormatError("test purpose is nondeterministic")
            table[(src, label)] = dst
        return table

    @cached_property
    def _stimuli(self) -> tuple[str | None, ...]:
        emitted = set(self.outputs)
        offered: list[list[str]] = [[] for _ in self.states]
        for (src, lab) in self._step:
            if lab in emitted:
                offered[src].append(lab)
        out: list[str | None] = []
        for s, labs in enumerate(offered):
            if s in (self.pass_index, self.fail_index):
                out.append(None)
            elif len(labs) == 1:
                out.append(labs[0])
            else:
                raise FormatError("test purpose is not output-deterministic")
        return tuple(out)

    def step(self, state: int, token: str) -> int | None:
        return self._step.get((state, token))

    def stimulus(self, state: int) -> str | None:
        """The unique token emitted at ``state``; None at pass/fail."""
        return self._stimuli[state]


def path_to_test_purpose(path, inputs, outputs) -> TestPurpose:
    """Complete a fault-path label sequence into a full tester.

    ``inputs``/``outputs`` are the model's alphabets (delta is appended to the
    observed side automatically).  Completion adds: pass-edges for every
    unobserved output token, one pass-edge labeled with the declaration-order
    smallest input wherever the chain emits no input, and pass/fail self-loops
    on every observed token.
    """
    path = tuple(path)
    observed = tuple(outputs) + ((DELTA,) if DELTA not in outputs else ())
    emitted = tuple(inputs)
    if not path:
        raise FormatError("fault path is empty")
    legal = set(observed) | set(emitted)
    for tok in path:
        if tok not in legal:
            raise FormatError(f"fault path label {tok!r} not in the alphabet")
    if path[-1] not in set(observed):
        raise FormatError("fault path must end with an output or delta")
    chain = [f"t{i}" for i in range(len(path))]
    states = tuple(chain) + (PASS, FAIL)
    pass_idx, fail_idx = len(chain), len(chain) + 1
    transitions: list[tuple[int, str, int]] = []
    for i, tok in enumerate(path):
        target = i + 1 if i + 1 < len(path) else fail_idx
        transitions.append((i, tok, target))
    for i, tok in enumerate(path):
        for obs in observed:
            if obs != tok:
                transitions.append((i, obs, pass_idx))
        if tok not in emitted and emitted:
            # keep one stimulus per state: smallest declared input
            transitions.append((i, emitted[0], pass_idx))
    for terminal in (pass_idx, fail_idx):
        for obs in observed:
            transitions.append((terminal, obs, terminal))
    return TestPurpose(states, 0, observed, emitted, tuple(transitions),
                       pass_idx, fail_idx)


def tp_invariant_violations(tp: TestPurpose) -> list[str]:
    """Structural checks behind the tester guarantees; empty list means sound.

    Checks: determinism, input-enabledness over the observed tokens, exactly
    one stimulus per non-terminal state, acyclicity outside the terminal
    self-loops, and that neither terminal can reach the other.
    """
    problems = []
    step: dict[tuple[int, str], int] = {}
    for src, label, dst in tp.transitions:
        if (src, label) in step:
            problems.append(f"nondeterministic at state {tp.states[src]} on {label}")
        step[(src, label)] = dst
    emitted = set(tp.outputs)
    for s in range(len(tp.states)):
        missing = [tok for tok in tp.inputs if (s, tok) not in step]
        if missing:
            problems.append(f"state {tp.states[s]} not input-enabled: misses {missing}")
        if s in (tp.pass_index, tp.fail_index):
            continue
        offered = [lab for (src, lab) in step if src == s and lab in emitted]
        if len(offered) != 1:
            problems.append(f"state {tp.states[s]} offers {len(offered)} stimuli")
    # cycle check ignoring terminal self-loops
    adj: dict[int, list[int]] = {}
    for (src, _), dst in step.items():
        if src == dst and src in (tp.pass_index, tp.fail_index):
            continue
        adj.setdefault(src, []).append(dst)
    color = [0] * len(tp.states)

    def visit(s: int) -> bool:
        color[s] = 1
        for t in adj.get(s, ()):
            if color[t] == 1 or (color[t] == 0 and visit(t)):
                return True
        color[s] = 2
        return False

    if any(color[s] == 0 and visit(s) for s in range(len(tp.states))):
        problems.append("cycle outside pass/fail self-loops")

    def reachable(start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            for (src, _), dst in step.items():
                if src == s and dst not in seen:
                    seen.add(dst)
                    stack.append(dst)
        return seen

    if tp.pass_index in reachable(tp.fail_index):
        problems.append("pass reachable from fail")
    if tp.fail_index in reachable(tp.pass_index):
        problems.append("fail reachable from pass")
    return problems


@dataclass(frozen=True)
class FaultModel:
    """An ordered set of test purposes extracted from one multigraph."""

    tps: tuple[TestPurpose, ...]
    paths: tuple[tuple[str, ...], ...]
    m: int
    n: int
    limit: int
    truncated: bool
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]  # model outputs including delta

    @property
    def levels(self) -> int:
        return self.m * self.n + 1

    @property
    def exhaustive(self) -> bool:
        return not self.truncated


def generate_fault_model(spec: Iolts, m: int, limit: int = 1000) -> FaultModel:
    """Multigraph construction, path extraction and tester completion in one go.

    The specification is quiescence-completed if necessary (it must be
    deterministic).  When ``limit`` exceeds the number of fault paths the
    model is exhaustive; otherwise it is sound but truncated, and flagged so.
    """
    cs = ensure_quiescence(spec)
    g = build_multigraph(cs, m)
    paths, truncated = _enumerate_fault_paths(g, limit)
    user_outputs = tuple(t for t in cs.outputs if t != DELTA)
    tps = tuple(path_to_test_purpose(p, cs.inputs, user_outputs) for p in paths)
    return FaultModel(tps, tuple(paths), m, g.n, limit, truncated,
                      cs.inputs, cs.outputs)


# --- fault-model directory format -------------------------------------------


def tp_to_text(tp: TestPurpose, comments: tuple[str, ...] = ()) -> str:
    return _serialize(tp.states, tp.initial, tp.inputs, tp.outputs,
                      tp.transitions, comments)


def tp_from_text(text: str) -> TestPurpose:
    header, rows = _parse_sections(text)
    states, initial, inputs, outputs, transitions = _assemble(header, rows,
                                                              allow_tau=False)
    try:
        pass_idx = states.index(PASS)
        fail_idx = states.index(FAIL)
    except ValueError:
        raise FormatError("test purpose file lacks pass/fail states") from None
    tp = TestPurpose(states, initial, inputs, outputs, transitions,
                     pass_idx, fail_idx)
    problems = tp_invariant_violations(tp)
    if problems:
        raise FormatError("invalid test purpose: " + "; ".join(problems))
    return tp


def write_fault_model(model: FaultModel, directory: str) -> None:
    """Write tp-NNNN.iolts files plus a manifest.json describing the run."""
    os.makedirs(directory, exist_ok=True)
    for i, tp in enumerate(model.tps):
        with open(os.path.join(directory, f"tp-{i:04d}.iolts"), "w", encoding="utf-8") as fh:
            fh.write(tp_to_text(tp, comments=(f"fault path: {' '.join(model.paths[i])}",)))
    manifest = {
        "m": model.m,
        "n": model.n,
        "levels": model.levels,
        "limit": model.limit,
        "truncated": model.truncated,
        "tp_count": len(model.tps),
        "inputs": list(model.inputs),
        "outputs": list(model.outputs),
        "paths": [list(p) for p in model.paths],
    }
    with open(os.path.join(directory, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def read_fault_model(directory: str) -> FaultModel:
    with open(os.path.join(directory, "manifest.json"), encoding="utf-8") as fh:
        manifest = json.load(fh)
    tps = []
    for i in range(manifest["tp_count"]):
        with open(os.path.join(directory, f"tp-{i:04d}.iolts"), encoding="utf-8") as fh:
            tps.append(tp_from_text(fh.read()))
    return FaultModel(
        tuple(tps),
        tuple(tuple(p) for p in manifest["paths"]),
        manifest["m"],
        manifest["n"],
        manifest["limit"],
        manifest["truncated"],
        tuple(manifest["inputs"]),
        tuple(manifest["outputs"]),
    )
