"""Walkthrough: the two conformance relations, and where they differ.

The direct check asks: after every specified trace, does the implementation
only produce outputs (or quiescence) the specification allows?  The
language-based check instead takes regular languages of desirable (D) and
forbidden (F) behaviors and hunts for implementation traces that are
desirable-but-unspecified or forbidden-but-specified.  An implementation can
pass the first and fail the second.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import (
    check_ioco,
    check_lang,
    compile_regex,
    empty_language,
    ensure_quiescence,
    parse_model,
)

spec = parse_model("""\
states: s0 s1
initial: s0
inputs: a b
outputs: x
transitions:
s0 a s1
s1 x s0
""")

# Conforms under ioco, but quietly implements b-then-ax, which the
# specification never mentions.
iut = parse_model("""\
states: q0 q1 q2 q3
initial: q0
inputs: a b
outputs: x
transitions:
q0 a q1
q1 x q0
q0 b q2
q2 a q3
q3 x q2
""")

v = check_ioco(spec, iut)
print("direct check:", "conforms" if v.conforms else "fault")

alpha = ensure_quiescence(spec).observable_alphabet
desirable = compile_regex("( a | b ) * a x", alpha)
v = check_lang(spec, iut, desirable, empty_language(alpha))
print("language-based check with D=(a|b)*ax:",
      "conforms" if v.conforms else "fault")
for w in v.witnesses:
    print("  witness:", " ".join(w))
print("  suite automaton size:", v.stats.suite_states)

# A blatantly broken implementation: output x before any stimulus.
noisy = parse_model("""\
states: q0 q1
initial: q0
inputs: a b
outputs: x
transitions:
q0 a q1
q1 x q0
q0 x q0
""")
v = check_ioco(spec, noisy, witness="cover")
print("\nnoisy implementation:", "conforms" if v.conforms else "fault")
print("  transition-cover witnesses:", [" ".join(w) for w in v.witnesses])
