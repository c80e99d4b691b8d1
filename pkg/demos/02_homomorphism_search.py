"""Search for homomorphisms from B_n and B_n' into finite groups."""

from braidquot.catalog import build
from braidquot.oracle import independent_verify, naive_verdict
from braidquot.presentations import load_presentation
from braidquot.search import search

# the canonical map B_5 -> S_5 is found, and it is the only non-cyclic one up to conjugacy
p = load_presentation("bn:5")
G = build("S:5")
rep = search(p, G, "noncyclic")
print(rep.verdict, rep.witness_labels)

# B_6 -> S_6 has two classes of witnesses: the canonical map and its twist by
# the outer automorphism of S_6
rep = search(load_presentation("bn:6"), build("S:6"), "noncyclic")
print("B6 -> S6:", len(rep.witnesses), "witness classes")

# the n = 6 nonexistence checks
for pres, spec, mode in (("bnp:6", "PSL2:7", "nontrivial"), ("bn:6", "PGL2:9", "noncyclic"),
                         ("bn:6", "M10", "noncyclic")):
    rep = search(load_presentation(pres), build(spec), mode)
    print(f"{pres} -> {spec}: {rep.verdict}  nodes={rep.stats['nodes']}  order={rep.stats['order']}")

# B_8' -> A_8: the restriction of the canonical map, plus its twist by an odd permutation
p8 = load_presentation("bnp:8")
A8 = build("A:8")
rep = search(p8, A8, "nontrivial")
print("B8' -> A8:", rep.verdict, len(rep.witnesses), "witness classes",
      all(independent_verify(p8, A8, w) for w in rep.witnesses))

# the naive search agrees on small targets, it just works harder
q = load_presentation("bnp:6")
for spec in ("A:5", "A:6", "PGL2:7"):
    print(spec, search(q, build(spec), "nontrivial").verdict, naive_verdict(q, build(spec), "nontrivial"))
