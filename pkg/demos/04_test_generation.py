"""Walkthrough: from a specification to a fault model of test purposes.

The specification is unrolled into an acyclic multigraph with m*n+1 levels
(m bounds the implementation's state count).  Label paths reaching the fail
sink are exactly the minimal fault experiments; each becomes a tester that
stimulates the implementation down that path and verdicts pass/fail.
"""

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import (
    build_multigraph,
    ensure_quiescence,
    enumerate_fault_paths,
    generate_fault_model,
    parse_model,
    tp_to_text,
    write_fault_model,
)

spec = parse_model("""\
states: s0 s1 s2 s3
initial: s0
inputs: a b
outputs: x
transitions:
s0 a s1
s1 a s3
s3 b s0
s0 b s3
s1 x s2
s2 a s1
""")

completed = ensure_quiescence(spec)
g = build_multigraph(completed, m=4)
print(f"multigraph: {g.levels} levels, {g.node_count} nodes, acyclic={g.is_acyclic}")

word = ("a", "a", "b", "b", "x")
print("node path of", " ".join(word), "->", g.replay(word))

print("\nfirst ten fault paths (breadth-first):")
for path in enumerate_fault_paths(g, 10):
    print("  ", " ".join(path))

model = generate_fault_model(spec, m=4, limit=25)
print(f"\nfault model: {len(model.tps)} testers, truncated={model.truncated}")
print("first tester in the model file format:\n")
print(tp_to_text(model.tps[0]))

with tempfile.TemporaryDirectory() as out:
    write_fault_model(model, out)
    files = sorted(p.name for p in Path(out).iterdir())
    print("suite directory holds:", files[:3], "...", files[-1])
