"""Walkthrough: model files, quiescence completion, observable traces.

A reactive system alternates input a and output x.  Its initial state emits
nothing, so an observer that waits there sees quiescence - made explicit as a
delta self-loop before any analysis happens.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import (
    complete_quiescence,
    determinize,
    parse_model,
    serialize_model,
    traces_bounded,
)

MODEL = """\
states: s0 s1
initial: s0
inputs: a
outputs: x
transitions:
s0 a s1
s1 x s0
"""

m = parse_model(MODEL)
print("parsed states:", m.states)
print("deterministic:", m.is_deterministic)

# s0 has no outputs and no internal moves, so it is quiescent; s1 emits x.
c = complete_quiescence(m)
print("\nafter quiescence completion:")
print(serialize_model(c))

# Observable behavior up to three steps: note the delta prefixes.
print("traces up to length 3:")
for word in sorted(traces_bounded(c, 3), key=lambda w: (len(w), w)):
    print("  ", " ".join(word) if word else "(empty)")

# The determinized automaton accepts exactly the observable traces.
d = determinize(c)
print("\ndeterminized:", d.n_states, "states over", d.alphabet)
for probe in (("a", "x"), ("a", "delta"), ("delta", "a")):
    print("  accepts", " ".join(probe), "->", d.accepts(probe))
