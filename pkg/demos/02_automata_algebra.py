"""Walkthrough: token regexes and the automaton algebra behind suites.

Action names are whole tokens, so regexes separate them with whitespace:
``( a | b ) * a x`` is any a/b warm-up followed by input a answered by x.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ioltstest import (
    compile_regex,
    complement,
    intersect,
    is_empty,
    shortest_witness,
    union,
)

ALPHA = ("a", "b", "x")

d = compile_regex("( a | b ) * a x", ALPHA)
print("language (a|b)*ax compiled to", d.n_states, "states (complete, minimal)")
for probe in (("a", "x"), ("b", "a", "x"), ("a", "b"), ()):
    print("  accepts", " ".join(probe) or "(empty)", "->", d.accepts(probe))

# A finite language is just one word per line.
finite = compile_regex("#finite\na x\nb x\n", ALPHA)
print("\nfinite language {ax, bx}: accepts bx ->", finite.accepts(("b", "x")))

# Boolean structure: intersection with the complement is empty...
print("\nd and not d empty:", is_empty(intersect(d, complement(d))))

# ...and the shortest member of a language is found breadth-first,
# ties broken by alphabet order.
print("shortest word of (a|b)*ax:", " ".join(shortest_witness(d)))
both = union(d, finite)
print("shortest word of the union:", " ".join(shortest_witness(both)))
