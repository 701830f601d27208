"""Walkthrough: the experiment harness - generation, submachines, mutants.

Everything is a pure function of a 64-bit seed, so experiment populations are
reproducible.  Submachines delete output behavior (and conform by
construction); mutants retarget or relabel a fixed share of transitions;
angelic input-enabling shows why forcing enabledness can fabricate faults.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import (
    GenParams,
    angelic_input_enable,
    check_ioco,
    generate_fault_model,
    mutate,
    random_iolts,
    run_fault_model,
    serialize_model,
    submachine,
)

spec = random_iolts(GenParams(states=6, inputs=["a", "b"], outputs=["x", "y"],
                              deterministic=True, input_enabled=True,
                              density=0.5, seed=2024))
print(f"random spec: {len(spec.states)} states, {len(spec.transitions)} transitions")
print("same seed, same bytes:",
      serialize_model(spec) == serialize_model(random_iolts(
          GenParams(states=6, inputs=["a", "b"], outputs=["x", "y"],
                    deterministic=True, input_enabled=True, density=0.5,
                    seed=2024))))

sub = submachine(spec, keep_fraction=0.7, seed=5)
print("\nsubmachine conforms:", check_ioco(spec, sub).conforms)

record = mutate(spec, rate=0.1, seed=17)
print(f"\nmutant with {len(record.edits)} edit(s):")
for e in record.edits:
    print(f"  {e.kind}: {e.before} -> {e.after}")
verdict = check_ioco(spec, record.model)
print("mutant conforms:", verdict.conforms)

model = generate_fault_model(spec, m=6, limit=1000)
report = run_fault_model(record.model, model, fail_fast=True)
print(f"fault model ({len(model.tps)} testers, truncated={model.truncated}) "
      f"says: {report.overall}")

# Forcing input-enabledness on an underspecified implementation invents
# behavior and can flip a sound verdict: the self-loop added at q0 for b
# parks the machine in a quiescent state where the richer spec demands y.
from ioltstest import parse_model  # noqa: E402

rich_spec = parse_model("""\
states: s0 s1 s2 s3
initial: s0
inputs: a b
outputs: x y
transitions:
s0 a s1
s1 x s0
s0 b s2
s2 y s3
""")
partial = parse_model("""\
states: q0 q1 q2
initial: q0
inputs: a b
outputs: x y
transitions:
q0 a q1
q1 x q2
""")
forced = angelic_input_enable(partial)
print("\nunderspecified implementation conforms:",
      check_ioco(rich_spec, partial).conforms)
print("after forced input-enabling:", check_ioco(rich_spec, forced).conforms)
