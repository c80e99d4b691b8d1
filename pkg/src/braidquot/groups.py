"""Enumerated finite groups.

A :class:`GroupHandle` stores every element of a finite group as a row of an
integer array (a permutation of ``degree`` points).  Element ids are the row
numbers; id 0 is always the identity.  Ids are assigned by breadth-first
closure from the generators with each new layer sorted, so two constructions
from the same generators agree id-for-id.

Matrix groups are enumerated on matrices (in projective canonical form when
the group is a projective quotient) and then stored through their faithful
action on points or vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import matrices as mat
from .fields import field
from .perm import Permutation

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured size cap."""


@dataclass
class ConjClasses:
    class_of: np.ndarray            # element id -> class index
    representatives: list[int]      # minimum id of each class
    members: list[np.ndarray]       # sorted ids per class
    conjugator: np.ndarray          # id m -> y with y * rep * y^-1 == m

    def __len__(self):
        return len(self.representatives)

    def sizes(self) -> list[int]:
        return [len(m) for m in self.members]


def _bfs_closure(identity, gens, mul, cap: int) -> list:
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        layer = set()
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    layer.add(y)
        frontier = sorted(layer)
        seen.update(frontier)
        elements.extend(frontier)
        if len(elements) > cap:
            raise CapExceeded(f"closure exceeded cap of {cap} elements")
    return elements


class GroupHandle:
    """A finite group with all elements enumerated and indexed."""

    def __init__(self, perms: np.ndarray, generators: Sequence[int], *, name: str = "",
                 kind: str = "permutation", matrices: list | None = None,
                 q: int | None = None, dim: int | None = None):
        self.perms = np.ascontiguousarray(perms, dtype=np.intp)
        self.order, self.degree = self.perms.shape
        self.generators = list(generators)
        self.name = name
        self.kind = kind
        self.matrices = matrices
        self.q, self.dim = q, dim
        self._plist = self.perms.tolist()
        self._build_index()
        self.inverse = self.ids_of(np.argsort(self.perms, axis=1))
        self._inv = self.inverse.tolist()
        self._centralizers: dict[int, np.ndarray] = {}
        self._transporters: dict[tuple[int, int], np.ndarray] = {}

    # -- indexing -----------------------------------------------------------
    def _build_index(self):
        # greedy base: points whose images already separate all elements
        base: list[int] = []
        codes = np.zeros(self.order, dtype=np.int64)
        d = self.degree
        for pt in range(d):
            if len(np.unique(codes)) == self.order:
                break
            trial = codes * d + self.perms[:, pt]
            if len(np.unique(trial)) > len(np.unique(codes)):
                base.append(pt)
                codes = trial
        if len(np.unique(codes)) != self.order:
            raise ValueError("duplicate elements in group enumeration")
        self.base = np.array(base, dtype=np.intp)
        self._base_list = base
        self._weights = d ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
        self._sort = np.argsort(codes)
        self._sorted_codes = codes[self._sort]
        self._code_to_id = {int(c): i for i, c in enumerate(codes.tolist())}

    def _codes(self, base_images: np.ndarray) -> np.ndarray:
        return base_images.astype(np.int64) @ self._weights

    def ids_from_base_images(self, base_images: np.ndarray) -> np.ndarray:
        codes = self._codes(base_images)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self._sorted_codes[pos], codes):
            raise KeyError("element not in group")
        return self._sort[pos]

    def ids_of(self, perms: np.ndarray) -> np.ndarray:
        """Ids of a batch of permutation rows (shape ``(m, degree)``)."""
        perms = np.asarray(perms)
        ids = self.ids_from_base_images(perms[:, self.base])
        if not np.array_equal(self.perms[ids], perms):
            raise KeyError("element not in group")
        return ids

    def index(self, element) -> int:
        """Id of a :class:`Permutation`, image tuple, or (for matrix groups) matrix."""
        if isinstance(element, mat.MatrixN):
            element = element.entries
        if self.matrices is not None and not isinstance(element, Permutation):
            return self._matrix_index[self._canon(tuple(element))]
        images = element.images if isinstance(element, Permutation) else tuple(element)
        code = sum(images[b] * w for b, w in zip(self._base_list, self._weights.tolist()))
        i = self._code_to_id.get(code)
        if i is None or tuple(self._plist[i]) != tuple(images):
            raise KeyError("element not in group")
        return i

    @cached_property
    def _matrix_index(self):
        return {m: i for i, m in enumerate(self.matrices)}

    def _canon(self, m):
        F = field(self.q)
        return mat.projective_canonical(F, m) if self.projective else m

    @property
    def projective(self) -> bool:
        return getattr(self, "_projective", False)

    # -- arithmetic ---------------------------------------------------------
    identity = 0

    def mul(self, a: int, b: int) -> int:
        pa, pb = self._plist[a], self._plist[b]
        code = 0
        for bpt, w in zip(self._base_list, self._wl):
            code += pb[pa[bpt]] * w
        return self._code_to_id[code]

    @cached_property
    def _wl(self):
        return self._weights.tolist()

    def inv(self, a: int) -> int:
        return self._inv[a]

    def mul_many(self, a, b) -> np.ndarray:
        """Elementwise products ``a[i] * b[i]`` (either side may be a scalar id)."""
        a = np.asarray(a)
        b = np.asarray(b)
        a, b = np.broadcast_arrays(a, b)
        pa = self.perms[a.ravel()][:, self.base]
        imgs = np.take_along_axis(self.perms[b.ravel()], pa, axis=1)
        return self.ids_from_base_images(imgs).reshape(a.shape)

    def conj(self, x: int, h: int) -> int:
        """``h x h^-1``."""
        return self.mul(self.mul(h, x), self._inv[h])

    def conj_many(self, x, h) -> np.ndarray:
        h = np.asarray(h)
        return self.mul_many(self.mul_many(h, x), self.inverse[h])

    def power(self, x: int, k: int) -> int:
        out = 0
        base = x if k >= 0 else self._inv[x]
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    def commute(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    # -- presentation of elements ------------------------------------------
    def permutation(self, x: int) -> Permutation:
        return Permutation(tuple(self._plist[x]))

    @property
    def elements(self) -> list:
        if self.matrices is not None:
            return list(self.matrices)
        return [Permutation(tuple(p)) for p in self._plist]

    def label(self, x: int) -> str:
        if self.matrices is not None:
            F = field(self.q)
            m = self.matrices[x]
            n = self.dim
            rows = ("[" + " ".join(F.label(m[i * n + j]) for j in range(n)) + "]" for i in range(n))
            return "[" + " ".join(rows) + "]"
        return self.permutation(x).to_cycle_string()

    # -- structure ----------------------------------------------------------
    def _conjugation_action(self, g: int) -> np.ndarray:
        """Id permutation ``x -> g^-1 x g``."""
        ginv = self.perms[self._inv[g]]
        gp = self.perms[g]
        imgs = gp[self.perms[:, ginv[self.base]]]
        return self.ids_from_base_images(imgs)

    @cached_property
    def conjugacy_classes(self) -> ConjClasses:
        n = self.order
        actions = [self._conjugation_action(g) for g in self.generators]
        if actions:
            rows = np.concatenate([np.arange(n)] * len(actions))
            cols = np.concatenate(actions)
            graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
            _, labels = connected_components(graph, directed=True, connection="weak")
        else:
            labels = np.zeros(n, dtype=np.intp)
        first = {}
        for i, lab in enumerate(labels.tolist()):
            first.setdefault(lab, i)
        reps = sorted(first.values())
        relabel = {labels[r]: k for k, r in enumerate(reps)}
        class_of = np.array([relabel[lab] for lab in labels.tolist()], dtype=np.intp)
        members = [np.flatnonzero(class_of == k) for k in range(len(reps))]

        conjugator = np.full(n, -1, dtype=np.intp)
        frontier = np.array(reps, dtype=np.intp)
        conjugator[frontier] = 0
        ginvs = [self._inv[g] for g in self.generators]
        while len(frontier):
            nxt = []
            for act, ginv in zip(actions, ginvs):
                tgt = act[frontier]
                fresh = conjugator[tgt] < 0
                if fresh.any():
                    t, src = tgt[fresh], frontier[fresh]
                    t, first_idx = np.unique(t, return_index=True)
                    conjugator[t] = self.mul_many(ginv, conjugator[src[first_idx]])
                    nxt.append(t)
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.intp)
        return ConjClasses(class_of, reps, members, conjugator)

    def centralizer(self, x: int) -> np.ndarray:
        """Sorted ids of ``{y : y x = x y}``."""
        c = self._centralizers.get(x)
        if c is None:
            xp = self.perms[x]
            mask = (xp[self.perms] == self.perms[:, xp]).all(axis=1)
            c = np.flatnonzero(mask)
            self._centralizers[x] = c
        return c

    def centralizer_mask(self, x: int) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.centralizer(x)] = True
        return mask

    def transporter(self, a: int, b: int) -> np.ndarray:
        """Sorted ids of ``{x : x a x^-1 = b}``, the coset ``x0 * C(a)`` or empty."""
        key = (a, b)
        t = self._transporters.get(key)
        if t is None:
            cc = self.conjugacy_classes
            if cc.class_of[a] != cc.class_of[b]:
                t = np.array([], dtype=np.intp)
            else:
                y = cc.conjugator
                x0 = self.mul(int(y[b]), self._inv[int(y[a])])
                t = np.sort(self.mul_many(x0, self.centralizer(a)))
            self._transporters[key] = t
        return t

    def subgroup_elements(self, seed: Iterable[int]) -> np.ndarray:
        seed = sorted(set(int(s) for s in seed))
        inside = np.zeros(self.order, dtype=bool)
        inside[0] = True
        frontier = np.array([0], dtype=np.intp)
        gens = np.array(seed, dtype=np.intp)
        while len(frontier):
            prods = self.mul_many(frontier[:, None], gens[None, :]).ravel()
            prods = np.unique(prods)
            prods = prods[~inside[prods]]
            inside[prods] = True
            frontier = prods
        return np.flatnonzero(inside)

    def subgroup_order(self, seed: Iterable[int]) -> int:
        return len(self.subgroup_elements(seed))

    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in self.generators for b in self.generators)

    def __repr__(self):
        return f"GroupHandle({self.name or '?'}, order={self.order}, degree={self.degree})"


def close_generators(generators: Sequence[Permutation], cap: int = DEFAULT_CAP,
                     name: str = "") -> GroupHandle:
    """Enumerate the permutation group generated by ``generators``."""
    if not generators:
        raise ValueError("need at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise ValueError("generators have different degrees")
    gens = [g.images for g in generators]

    def mul(x, g):
        return tuple(map(g.__getitem__, x))

    elements = _bfs_closure(tuple(range(degree)), gens, mul, cap)
    perms = np.array(elements, dtype=np.intp)
    index = {e: i for i, e in enumerate(elements)}
    return GroupHandle(perms, [index[g] for g in gens], name=name)


def close_matrix_generators(q: int, n: int, generators: Sequence[tuple[int, ...]], *,
                            projective: bool, cap: int = DEFAULT_CAP, name: str = "") -> GroupHandle:
    """Enumerate a matrix group over F_q.

    With ``projective=True`` matrices are identified up to scalars (canonical
    form: first non-zero entry 1) and the group acts on projective points;
    otherwise it acts on non-zero row vectors.
    """
    F = field(q)
    canon = (lambda m: mat.projective_canonical(F, m)) if projective else (lambda m: m)
    gens = [canon(tuple(g)) for g in generators]
    for g in gens:
        if mat.det(F, n, g) == 0:
            raise ValueError("singular generator")

    def mul(x, g):
        return canon(mat.matmul(F, n, x, g))

    elements = _bfs_closure(canon(mat.identity(n)), gens, mul, cap)
    points = mat.projective_points(F, n) if projective else mat.nonzero_vectors(F, n)
    index_pt = {p: i for i, p in enumerate(points)}
    perms = np.empty((len(elements), len(points)), dtype=np.intp)
    for r, m in enumerate(elements):
        for c, p in enumerate(points):
            w = mat.vec_times(F, n, p, m)
            if projective:
                w = mat.projective_canonical(F, w)
            perms[r, c] = index_pt[w]
    index = {e: i for i, e in enumerate(elements)}
    handle = GroupHandle(perms, [index[g] for g in gens], name=name, kind="matrix",
                         matrices=elements, q=q, dim=n)
    handle._projective = projective
    handle.points = points
    return handle
