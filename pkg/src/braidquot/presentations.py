"""Finite presentations of B_n and its commutator subgroup B_n'.

A word is a tuple of ``(generator index, +1 | -1)`` letters.  Relators are
words that must evaluate to the identity.  Products follow the package
convention (left to right, see :mod:`braidquot.perm`).

The standard presentation of B_n is generated in code.  Presentations of
B_n' on the generators

    u = s2 s1^-1,  v = s1 s2 s1^-2,  w = s2 s3 s1^-1 s2^-1,  c_i = s_{i+2} s1^-1

are shipped as text files (``data/bnprime_<n>.pres``).  Their relators come
from Reidemeister-Schreier rewriting of the B_n relators over the transversal
{s1^k}; :func:`derive_bnprime_presentation` reproduces them and
:func:`check_relators_in_braid_group` certifies each one in B_n through the
faithful Artin action on a free group.

The rewriting produces the relator family once per coset s1^k.  Conjugation
by s1 maps the family for k to the family for k+1; the file records that map
as ``SHIFT`` lines.  For a finite target group the full (infinite) relator set
is then checkable exactly by iterating the shift on an assignment until it
cycles (see :func:`shift_orbit`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .groups import GroupHandle

Word = tuple[tuple[int, int], ...]


class PresentationError(ValueError):
    pass


class UnassignedGenerator(KeyError):
    pass


@dataclass(frozen=True)
class Hint:
    """Generators whose images must form a TSS of full size or collapse."""

    generators: tuple[int, ...]
    collapse: str  # "cyclic" | "trivial"


@dataclass
class Presentation:
    name: str
    generators: list[str]
    relators: list[Word]
    hints: list[Hint] = field(default_factory=list)
    shift: dict[int, Word] | None = None
    kind: str = "other"  # "braid" | "bnprime" | "other"
    n: int | None = None

    def gen_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generators)


# -- words -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^(-?\d+))?$")


def parse_word(text: str, generators: Sequence[str]) -> Word:
    out = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m or m.group(1) not in generators:
            raise PresentationError(f"bad letter {tok!r}")
        e = int(m.group(2)) if m.group(2) else 1
        i = list(generators).index(m.group(1))
        out.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return tuple(out)


def format_word(w: Word, generators: Sequence[str]) -> str:
    return " ".join(generators[i] + ("" if e == 1 else "^-1") for i, e in w)


def inverse_word(w: Word) -> Word:
    return tuple((i, -e) for i, e in reversed(w))


def free_reduce(w: Sequence[tuple[int, int]]) -> Word:
    out: list[tuple[int, int]] = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def substitute(w: Word, images: Mapping[int, Word]) -> Word:
    out: list[tuple[int, int]] = []
    for i, e in w:
        img = images[i]
        out.extend(img if e == 1 else inverse_word(img))
    return free_reduce(out)


def evaluate_word(w: Word, images: Sequence[int | None] | Mapping[int, int], G: GroupHandle) -> int:
    """Element id of ``w`` under the generator images (ids in ``G``)."""
    out = 0
    for i, e in w:
        try:
            x = images[i]
        except (IndexError, KeyError):
            x = None
        if x is None:
            raise UnassignedGenerator(i)
        out = G.mul(out, x if e == 1 else G.inv(x))
    return out


@dataclass
class Assignment:
    presentation: Presentation
    group: GroupHandle
    images: list[int | None]

    @classmethod
    def empty(cls, p: Presentation, G: GroupHandle) -> Assignment:
        return cls(p, G, [None] * len(p.generators))

    def is_total(self) -> bool:
        return all(x is not None for x in self.images)

    def evaluate(self, w: Word) -> int:
        return evaluate_word(w, self.images, self.group)


# -- B_n ---------------------------------------------------------------------

def braid_presentation(n: int) -> Presentation:
    """Artin presentation of B_n on s1..s_{n-1}; hint X_n = (s1, s3, ...)."""
    if n < 3:
        raise PresentationError("braid presentations need n >= 3")
    gens = [f"s{i}" for i in range(1, n)]
    rels: list[Word] = []
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            rels.append(((i, 1), (j, 1), (i, -1), (j, -1)))
    for i in range(n - 2):
        a, b = i, i + 1
        rels.append(((a, 1), (b, 1), (a, 1), (b, -1), (a, -1), (b, -1)))
    hints = []
    k = n // 2
    if k >= 2:
        hints.append(Hint(tuple(range(0, 2 * k - 1, 2)), "cyclic"))
    return Presentation(f"bn:{n}", gens, rels, hints, kind="braid", n=n)


def braid_word(text: str, n: int) -> Word:
    return parse_word(text, [f"s{i}" for i in range(1, n)])


def bnprime_generator_words(n: int) -> dict[str, Word]:
    """The generators of B_n' as words in s1..s_{n-1}."""
    bw = lambda t: braid_word(t, n)  # noqa: E731
    out = {"u": bw("s2 s1^-1"), "v": bw("s1 s2 s1^-2"), "w": bw("s2 s3 s1^-1 s2^-1")}
    for i in range(1, n - 2):
        out[f"c{i}"] = bw(f"s{i + 2} s1^-1")
    return out


def bnprime_generator_names(n: int) -> list[str]:
    return ["u", "v", "w"] + [f"c{i}" for i in range(1, n - 2)]


# -- presentation files ---------------------------------------------------------

def parse_presentation(text: str, name: str = "", kind: str = "other",
                       n: int | None = None) -> Presentation:
    gens: list[str] | None = None
    rels: list[Word] = []
    hints: list[Hint] = []
    shift: dict[int, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "GENERATORS":
                gens = rest.split()
                if not gens or len(set(gens)) != len(gens):
                    raise PresentationError("generator names must be distinct and non-empty")
            elif gens is None:
                raise PresentationError("GENERATORS must come first")
            elif head == "RELATOR":
                w = parse_word(rest, gens)
                if not w:
                    raise PresentationError("empty relator")
                rels.append(w)
            elif head == "HINT":
                m = re.match(r"^TSS\s+(.+?)\s+COLLAPSE\s+(cyclic|trivial)$", rest)
                if not m:
                    raise PresentationError("expected HINT TSS <letters> COLLAPSE <cyclic|trivial>")
                idx = tuple(gens.index(t) if t in gens else -1 for t in m.group(1).split())
                if -1 in idx or len(set(idx)) != len(idx):
                    raise PresentationError("hint letters must be distinct generators")
                hints.append(Hint(idx, m.group(2)))
            elif head == "SHIFT":
                letter, _, img = rest.partition(" ")
                if letter not in gens:
                    raise PresentationError(f"unknown generator {letter!r}")
                shift[gens.index(letter)] = parse_word(img, gens)
            else:
                raise PresentationError(f"unknown directive {head!r}")
        except PresentationError as err:
            raise PresentationError(f"line {lineno}: {err}") from None
    if gens is None:
        raise PresentationError("no GENERATORS line")
    if shift:
        for i in range(len(gens)):
            shift.setdefault(i, ((i, 1),))
    return Presentation(name, gens, rels, hints, shift or None, kind=kind, n=n)


def serialize_presentation(p: Presentation, header: str = "") -> str:
    out = [f"# {ln}" if ln else "#" for ln in header.splitlines()]
    out.append("GENERATORS " + " ".join(p.generators))
    for w in p.relators:
        out.append("RELATOR " + p.format_word(w))
    for h in p.hints:
        out.append("HINT TSS " + " ".join(p.generators[i] for i in h.generators) + f" COLLAPSE {h.collapse}")
    if p.shift:
        for i, w in sorted(p.shift.items()):
            if w != ((i, 1),):
                out.append(f"SHIFT {p.generators[i]} {p.format_word(w)}")
    return "\n".join(out) + "\n"


def bnprime_file(n: int):
    return resources.files("braidquot").joinpath("data", f"bnprime_{n}.pres")


def bn_prime_presentation(n: int, path=None, validate: bool = True) -> Presentation:
    """Load the B_n' presentation (generators u, v, w, c1..c_{n-3})."""
    if n < 5:
        raise PresentationError("B_n' presentations are provided for n >= 5")
    src = Path(path) if path is not None else bnprime_file(n)
    try:
        text = src.read_text()
    except FileNotFoundError:
        raise PresentationError(f"relator file {src} not found") from None
    p = parse_presentation(text, name=f"bnp:{n}", kind="bnprime", n=n)
    if p.generators != bnprime_generator_names(n):
        raise PresentationError(f"{src}: generators must be {bnprime_generator_names(n)}")
    if validate:
        report = validate_presentation(p, n)
        if not report.ok:
            raise PresentationError(f"{src}: relator {report.failures[0]} fails under the canonical images")
    return p


def load_presentation(token: str) -> Presentation:
    """``bn:<n>`` or ``bnp:<n>``."""
    kind, _, num = token.partition(":")
    if not num.isdigit():
        raise PresentationError(f"bad presentation token {token!r}")
    if kind == "bn":
        return braid_presentation(int(num))
    if kind == "bnp":
        return bn_prime_presentation(int(num))
    raise PresentationError(f"bad presentation token {token!r}")


# -- canonical images and validation ---------------------------------------------------

def canonical_braid_images(n: int, G: GroupHandle) -> list[int]:
    """Ids of the transpositions (i-1 i) in a copy of S_n on n points."""
    from .perm import Permutation

    return [G.index(Permutation.from_cycles(n, [[i, i + 1]])) for i in range(n - 1)]


def canonical_images(p: Presentation, G: GroupHandle) -> list[int]:
    """Ids in ``G`` of the generator images under the canonical map B_n -> S_n.

    ``G`` is a permutation group of degree n containing those images, e.g.
    S_n, or A_n for a B_n' presentation.
    """
    from .catalog import build

    n = p.n
    S = build(f"S:{n}")
    sig = canonical_braid_images(n, S)
    if p.kind == "braid":
        imgs = sig
    else:
        words = bnprime_generator_words(n)
        imgs = [evaluate_word(words[g], sig, S) for g in p.generators]
    if G is S:
        return imgs
    return [G.index(S.permutation(x)) for x in imgs]


@dataclass
class ValidationReport:
    presentation: str
    checked: int
    failures: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_presentation(p: Presentation, n: int | None = None) -> ValidationReport:
    """Evaluate every relator under the canonical images in S_n (or A_n for B_n')."""
    from .catalog import build

    n = n if n is not None else p.n
    if p.n is None:
        p.n = n
    G = build(f"S:{n}") if p.kind == "braid" else build(f"A:{n}")
    imgs = canonical_images(p, G)
    fails = [k for k, r in enumerate(p.relators) if evaluate_word(r, imgs, G) != 0]
    if p.shift:
        # the shift is conjugation by s1, an automorphism of the image of B_n'
        S = build(f"S:{n}")
        simgs = canonical_images(p, S)
        s1 = canonical_braid_images(n, S)[0]
        for i, w in p.shift.items():
            if evaluate_word(w, simgs, S) != S.conj(simgs[i], s1):
                fails.append(len(p.relators) + i)
    return ValidationReport(p.name, len(p.relators), fails)


# -- shift closure -------------------------------------------------------------------

def shift_orbit(p: Presentation, images: Sequence[int], G: GroupHandle, limit: int | None = None):
    """Yield the assignments ``a, a o phi, a o phi^2, ...`` until the orbit cycles."""
    images = tuple(int(x) for x in images)
    yield images
    if not p.shift:
        return
    seen = {images}
    limit = limit if limit is not None else G.order ** 2 + 1
    cur = images
    for _ in range(limit):
        cur = tuple(evaluate_word(p.shift[i], cur, G) for i in range(len(p.generators)))
        if cur in seen:
            return
        seen.add(cur)
        yield cur
    raise RuntimeError("shift orbit did not close")


def satisfies_all_relators(p: Presentation, images: Sequence[int], G: GroupHandle) -> bool:
    """Every relator, including every shifted copy, evaluates to the identity."""
    for imgs in shift_orbit(p, images, G):
        for r in p.relators:
            if evaluate_word(r, imgs, G) != 0:
                return False
    return True


# -- the braid group word problem -----------------------------------------------------

def _artin_letter(i: int, e: int, n: int) -> dict[int, Word]:
    """Action of s_{i+1}^e on the free group F_n (letters are generator indices)."""
    x, y = i, i + 1
    if e == 1:
        return {x: ((x, 1), (y, 1), (x, -1)), y: ((x, 1),)}
    return {x: ((y, 1),), y: ((y, -1), (x, 1), (y, 1))}


def artin_action(w: Word, n: int) -> tuple[Word, ...]:
    """Images of the free generators under the automorphism of ``w``.

    The Artin representation of B_n in Aut(F_n) is faithful, so a braid word
    is trivial iff every free generator is fixed.
    """
    images = [((j, 1),) for j in range(n)]
    for i, e in reversed(w):
        sub = _artin_letter(i, e, n)
        full = {j: sub.get(j, ((j, 1),)) for j in range(n)}
        images = [substitute(img, full) for img in images]
    return tuple(images)


def braid_words_equal(a: Word, b: Word, n: int) -> bool:
    return artin_action(a, n) == artin_action(b, n)


def braid_word_trivial(w: Word, n: int) -> bool:
    return all(img == ((j, 1),) for j, img in enumerate(artin_action(w, n)))


def to_braid_word(p: Presentation, w: Word) -> Word:
    """Rewrite a B_n' word in s1..s_{n-1}."""
    words = bnprime_generator_words(p.n)
    return substitute(w, {i: words[g] for i, g in enumerate(p.generators)})


def check_relators_in_braid_group(p: Presentation) -> list[int]:
    """Indices of relators (then shift lines) that are *not* identities in B_n."""
    n = p.n
    bad = []
    for k, r in enumerate(p.relators):
        half = len(r) // 2
        lhs = to_braid_word(p, r[:half])
        rhs = to_braid_word(p, inverse_word(r[half:]))
        if not braid_words_equal(lhs, rhs, n):
            bad.append(k)
    if p.shift:
        s1 = ((0, 1),)
        gw = bnprime_generator_words(n)
        for i, w in p.shift.items():
            lhs = free_reduce(s1 + gw[p.generators[i]] + inverse_word(s1))
            if not braid_words_equal(lhs, to_braid_word(p, w), n):
                bad.append(len(p.relators) + i)
    return bad


# -- Reidemeister-Schreier for B_n' -----------------------------------------------------

def _u_words(lo: int, hi: int) -> dict[int, Word]:
    """u_k = s1^k s2 s1^-(k+1) as words in u (=u_0) and v (=u_1).

    Braid relation s1 s2 s1 = s2 s1 s2 at coset k gives u_{k+2} = u_k^-1 u_{k+1}.
    """
    U, V = 0, 1
    words = {0: ((U, 1),), 1: ((V, 1),)}
    for k in range(0, hi - 1):
        words[k + 2] = free_reduce(inverse_word(words[k]) + words[k + 1])
    for k in range(0, lo, -1):
        # u_{k-1} = u_k u_{k+1}^-1
        words[k - 1] = free_reduce(words[k] + inverse_word(words[k + 1]))
    return words


def derive_bnprime_presentation(n: int, window: tuple[int, int] = (-2, 2)) -> Presentation:
    """Rewrite s1^k r s1^-k for every B_n relator r and ``window[0] <= k <= window[1]``."""
    names = bnprime_generator_names(n)
    idx = {g: i for i, g in enumerate(names)}
    lo, hi = window
    uw = _u_words(lo - 1, hi + 4)
    c = lambda j: ((idx[f"c{j}"], 1),)  # noqa: E731

    def schreier(coset: int, gen: int) -> Word:
        # Schreier generator s1^coset * s_{gen+1} * s1^-(coset+1)
        if gen == 0:
            return ()
        if gen == 1:
            return uw[coset]
        return c(gen - 1)

    braid = braid_presentation(n)
    rels: list[Word] = [free_reduce(((idx["u"], 1), (idx["c1"], 1), (idx["u"], -1), (idx["w"], -1)))]
    seen = {rels[0]}
    for k in range(lo, hi + 1):
        for r in braid.relators:
            coset = k
            out: list[tuple[int, int]] = []
            for g, e in r:
                if e == 1:
                    out.extend(schreier(coset, g))
                    coset += 1
                else:
                    coset -= 1
                    out.extend(inverse_word(schreier(coset, g)))
            assert coset == k
            w = _cyclic_reduce(free_reduce(out))
            if w and w not in seen and inverse_word(w) not in seen:
                seen.add(w)
                rels.append(w)
    shift = {i: ((i, 1),) for i in range(len(names))}
    shift[idx["u"]] = ((idx["v"], 1),)
    shift[idx["v"]] = ((idx["u"], -1), (idx["v"], 1))
    shift[idx["w"]] = ((idx["v"], 1), (idx["c1"], 1), (idx["v"], -1))
    hints = []
    odd = tuple(idx[f"c{j}"] for j in range(1, n - 2, 2))
    even = tuple(idx[f"c{j}"] for j in range(2, n - 2, 2))
    if len(odd) >= 2:
        hints.append(Hint(odd, "trivial"))
    if len(even) >= 2:
        hints.append(Hint(even, "trivial"))
    return Presentation(f"bnp:{n}", names, rels, hints, shift, kind="bnprime", n=n)


def _cyclic_reduce(w: Word) -> Word:
    w = list(w)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)
