"""Regenerate src/braidquot/data/bnprime_<n>.pres by Reidemeister-Schreier rewriting.

Every relator written is re-checked in B_n with the Artin action before the
file is saved.

    python tools/derive_bnprime_files.py
"""

from pathlib import Path

from braidquot.presentations import (check_relators_in_braid_group, derive_bnprime_presentation,
                                     serialize_presentation, validate_presentation)

DATA = Path(__file__).resolve().parents[1] / "src" / "braidquot" / "data"

HEADER = """Presentation of the commutator subgroup B_{n}' (n = {n}).
Generators (as braids): u = s2 s1^-1, v = s1 s2 s1^-2, w = s2 s3 s1^-1 s2^-1,
c_i = s_(i+2) s1^-1, the usual generating list for B_n'.  u is the product
s2 s1^-1 (exponent sum 0), like every other generator.
Relators: Reidemeister-Schreier rewrites of s1^k r s1^-k for every Artin
relator r of B_{n} and -2 <= k <= 2, over the transversal {{s1^k}}, with
u_k = s1^k s2 s1^-(k+1) eliminated through u_(k+2) = u_k^-1 u_(k+1).
SHIFT lines give conjugation by s1 (u -> v, v -> u^-1 v, w -> v c1 v^-1,
c_i fixed); the presentation is the closure of the relators under it.
Each relator and shift line is verified in B_{n} via the Artin action."""


def main():
    for n in range(5, 9):
        p = derive_bnprime_presentation(n)
        bad = check_relators_in_braid_group(p)
        assert not bad, (n, bad)
        assert validate_presentation(p, n).ok
        (DATA / f"bnprime_{n}.pres").write_text(serialize_presentation(p, HEADER.format(n=n)))
        print(n, len(p.relators), "relators")


if __name__ == "__main__":
    main()
