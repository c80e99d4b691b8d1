"""Walk through totally symmetric sets in a few small groups."""

from braidquot.catalog import build
from braidquot.perm import parse_cycles
from braidquot.tss import check_span_bound, enumerate_tss, is_totally_symmetric

S4 = build("S:4")

# the three double transpositions commute, and S4 permutes them in every possible way
klein = [S4.index(parse_cycles(c, 4)) for c in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")]
chk = is_totally_symmetric(S4, klein)
print("Klein triple is a TSS:", chk.ok)
print("swap witnesses:", [S4.label(h) for h in chk.witnesses])

# and it is the only 3-element TSS in S4, up to conjugacy
inv = enumerate_tss(S4, 3)
print("3-element TSS classes in S4:", len(inv))

# A4 only rotates the Klein triple, so the swap test fails there
A4 = build("A:4")
print("in A4:", is_totally_symmetric(A4, [A4.index(parse_cycles(c, 4)) for c in
                                           ("(1 2)(3 4)", "(1 3)(2 4)")]).reason)

# S6 has four classes of 3-element TSS; the standard one is {(1 2), (3 4), (5 6)}
S6 = build("S:6")
for t, size in zip(enumerate_tss(S6, 3).classes, enumerate_tss(S6, 3).orbit_sizes):
    rep = check_span_bound(t)
    print(f"  {[S6.label(x) for x in t.members]}  orbit {size}  p={rep.p}  |<T>|={rep.span_order}")

for spec in ("PSL2:7", "PSL2:8", "A:6", "M10"):
    G = build(spec)
    print(spec, {k: len(enumerate_tss(G, k)) for k in (2, 3, 4)})
