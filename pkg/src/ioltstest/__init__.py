"""Conformance testing toolkit for input/output labeled transition systems.

Checks classical ioco conformance and language-based conformance against
desirable/forbidden regular languages, generates complete fault models of
test purposes through an acyclic multigraph unfolding, runs test suites
against implementation models, and ships a seeded random-model/mutation
harness for experiments.
"""

from .conformance import (
    SuiteStats,
    Verdict,
    build_fault_suite,
    check_ioco,
    check_lang,
    ioco_desirable_language,
    verdict_json,
    witnesses_transition_cover,
)
from .errors import AlphabetMismatchError, FormatError, IoltsTestError
from .fsa import (
    Dfsa,
    bounded_language,
    compile_regex,
    complement,
    complete,
    empty_language,
    equivalent,
    intersect,
    is_empty,
    shortest_witness,
    union,
)
from .iolts import (
    DELTA,
    TAU,
    Iolts,
    complete_quiescence,
    determinize,
    ensure_quiescence,
    parse_model,
    serialize_model,
    traces_bounded,
)
from .modelgen import (
    GenParams,
    MutationEdit,
    MutationRecord,
    SplitMix64,
    angelic_input_enable,
    mutate,
    random_iolts,
    submachine,
)
from .testgen import (
    FaultModel,
    Multigraph,
    TestPurpose,
    build_multigraph,
    enumerate_fault_paths,
    generate_fault_model,
    path_to_test_purpose,
    read_fault_model,
    tp_from_text,
    tp_invariant_violations,
    tp_to_text,
    write_fault_model,
)
from .testrun import RunReport, TpResult, report_json, run_fault_model, run_tp

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "DELTA",
    "Dfsa",
    "FaultModel",
    "FormatError",
    "GenParams",
    "Iolts",
    "IoltsTestError",
    "Multigraph",
    "MutationEdit",
    "MutationRecord",
    "RunReport",
    "SplitMix64",
    "SuiteStats",
    "TAU",
    "TestPurpose",
    "TpResult",
    "Verdict",
    "angelic_input_enable",
    "bounded_language",
    "build_fault_suite",
    "build_multigraph",
    "check_ioco",
    "check_lang",
    "compile_regex",
    "complement",
    "complete",
    "complete_quiescence",
    "determinize",
    "empty_language",
    "ensure_quiescence",
    "enumerate_fault_paths",
    "equivalent",
    "generate_fault_model",
    "intersect",
    "ioco_desirable_language",
    "is_empty",
    "mutate",
    "parse_model",
    "path_to_test_purpose",
    "random_iolts",
    "read_fault_model",
    "report_json",
    "run_fault_model",
    "run_tp",
    "serialize_model",
    "shortest_witness",
    "submachine",
    "tp_from_text",
    "tp_invariant_violations",
    "tp_to_text",
    "traces_bounded",
    "union",
    "verdict_json",
    "witnesses_transition_cover",
    "write_fault_model",
]
