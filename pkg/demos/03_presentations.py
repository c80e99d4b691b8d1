"""Where the B_n' relators come from and how they are checked."""

from braidquot.catalog import build
from braidquot.presentations import (bn_prime_presentation, canonical_images, check_relators_in_braid_group,
                                     derive_bnprime_presentation, shift_orbit, validate_presentation)

p = bn_prime_presentation(6)
print(p.generators)
for r in p.relators[:5]:
    print("  ", p.format_word(r))

# every relator is a genuine identity in B_6 (faithful Artin action on F_6) ...
print("relators failing in B6:", check_relators_in_braid_group(p))
# ... and holds under the canonical images in A_6
print("canonical check:", validate_presentation(p, 6).ok)

# the shipped file is exactly what the Reidemeister-Schreier rewrite produces
print("matches derivation:", derive_bnprime_presentation(6).relators == p.relators)

# conjugation by s1 permutes the relator families; on a finite group the
# orbit of an assignment closes, which makes the infinite relator set checkable
A6 = build("A:6")
imgs = canonical_images(p, A6)
print("shift orbit length:", len(list(shift_orbit(p, imgs, A6))))
