"""Executing fault models against implementation models.

A run explores the synchronous product of a tester and the determinized
implementation.  Stimuli flow tester-to-implementation (one token per tester
state), observations flow back (any enabled output or quiescence).  The
verdict is fail exactly when some product state pairs the tester's fail state
with any implementation state; the witness is the shortest such word.

Implementations may be underspecified: when the tester's stimulus is not an
enabled input and no observation is possible either, that branch of the run is
abandoned, flagged ``incomplete``, and counts as pass - conformance places no
obligation on unspecified inputs.
"""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import AlphabetMismatchError
from .fsa import Dfsa
from .iolts import Iolts, determinize, ensure_quiescence
from .testgen import FaultModel, TestPurpose


@dataclass(frozen=True)
class TpResult:
    index: int
    verdict: str  # "pass" | "fail"
    witness: tuple[str, ...] | None
    incomplete: bool


@dataclass(frozen=True)
class RunReport:
    overall: str
    results: tuple[TpResult, ...]
    elapsed_ms: float


def report_json(report: RunReport) -> dict:
    return {
        "overall": report.overall,
        "tps": [
            {
                "id": r.index,
                "verdict": r.verdict,
                "witness": list(r.witness) if r.witness is not None else None,
                "incomplete": r.incomplete,
            }
            for r in report.results
        ],
        "elapsed_ms": report.elapsed_ms,
    }


def run_tp(iut: Iolts, tp: TestPurpose) -> tuple[str, tuple[str, ...] | None, bool]:
    """Run one tester against an implementation model.

    Returns (verdict, witness, incomplete).  The implementation is
    quiescence-completed if needed; its observed alphabet must match what the
    tester listens for and emits.
    """
    ci = ensure_quiescence(iut)
    _check_alphabets(ci, tp)
    return _run_product(determinize(ci), tp)


def _check_alphabets(ci: Iolts, tp: TestPurpose) -> None:
    if set(tp.inputs) != set(ci.outputs) or set(tp.outputs) != set(ci.inputs):
        raise AlphabetMismatchError(
            "test purpose alphabets do not match the implementation's"
        )


def _run_product(di: Dfsa, tp: TestPurpose) -> tuple[str, tuple[str, ...] | None, bool]:
    observed = set(tp.inputs)  # implementation outputs plus delta
    seen = {(tp.initial, di.initial)}
    queue: deque[tuple[int, int, tuple[str, ...]]] = deque(
        [(tp.initial, di.initial, ())]
    )
    incomplete = False
    while queue:
        t, q, word = queue.popleft()
        if t == tp.fail_index:
            return "fail", word, incomplete
        if t == tp.pass_index:
            continue
        moved = False
        for tok in di.alphabet:
            q2 = di.step(q, tok)
            if q2 is None:
                continue
            if tok in observed:
                t2 = tp.step(t, tok)
            elif tok == tp.stimulus(t):
                t2 = tp.step(t, tok)
            else:
                continue
            if t2 is None:
                continue
            moved = True
            if (t2, q2) not in seen:
                seen.add((t2, q2))
                queue.append((t2, q2, word + (tok,)))
        if not moved:
            incomplete = True
    return "pass", None, incomplete


def run_fault_model(iut: Iolts, model: FaultModel, fail_fast: bool = False,
                    workers: int = 1) -> RunReport:
    """Run every tester of a fault model; overall pass means all pass.

    ``fail_fast`` stops at the first failing tester (remaining testers are
    omitted from the report).  ``workers`` > 1 runs testers concurrently; the
    report order is tester order either way.
    """
    start = time.perf_counter()
    ci = ensure_quiescence(iut)
    di = determinize(ci)  # shared across testers; the model is immutable
    for tp in model.tps:
        _check_alphabets(ci, tp)
    results: list[TpResult] = []
    if workers > 1 and not fail_fast and model.tps:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda tp: _run_product(di, tp), model.tps))
        results = [TpResult(i, v, w, inc) for i, (v, w, inc) in enumerate(outcomes)]
    else:
        for i, tp in enumerate(model.tps):
            verdict, witness, inc = _run_product(di, tp)
            results.append(TpResult(i, verdict, witness, inc))
            if fail_fast and verdict == "fail":
                break
    overall = "pass" if all(r.verdict == "pass" for r in results) else "fail"
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(overall, tuple(results), elapsed)
