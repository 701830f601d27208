"""Walkthrough: running a fault model against implementations.

Each tester meets the implementation in a synchronous product: the tester
stimulates with one input per state, the implementation answers with outputs
or quiescence.  Reaching the tester's fail state anywhere in the product is a
fault; an implementation with undefined stimuli simply ends that experiment
early (flagged, but not a fault).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import generate_fault_model, parse_model, run_fault_model, run_tp

spec = parse_model("""\
states: s0 s1
initial: s0
inputs: a
outputs: x
transitions:
s0 a s1
s1 x s0
""")

good = spec
bad = parse_model("""\
states: q0 q1
initial: q0
inputs: a
outputs: x
transitions:
q0 a q1
q1 x q0
q0 x q0
""")
shy = parse_model("""\
states: q0
initial: q0
inputs: a
outputs: x
transitions:
""")

model = generate_fault_model(spec, m=2)
print(f"exhaustive model with {len(model.tps)} testers "
      f"(truncated={model.truncated})")

for name, iut in (("good", good), ("bad", bad), ("shy", shy)):
    report = run_fault_model(iut, model)
    fails = [r for r in report.results if r.verdict == "fail"]
    incomplete = sum(1 for r in report.results if r.incomplete)
    print(f"\n{name}: overall {report.overall}, "
          f"{len(fails)} failing testers, {incomplete} incomplete runs")
    for r in fails[:3]:
        print(f"  tp-{r.index:04d} witnessed: {' '.join(r.witness)}")

# A single tester can be run on its own as well.
verdict, witness, incomplete = run_tp(bad, model.tps[0])
print("\nfirst tester alone on 'bad':", verdict, witness)
