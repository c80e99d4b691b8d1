"""Named finite groups, generator files, and the simple-group order table.

Group specs are short tokens::

    S:n  A:n  C:n  D:n          symmetric, alternating, cyclic, dihedral (order 2n)
    GL2:q SL2:q PSL2:q PGL2:q   2x2 matrix groups over F_q
    PSL3:q GL3:q                3x3 matrix groups over F_q
    PSU3:3 M10 M11              shipped permutation generator files
    file:<path>                 any generator file

Every constructed group is checked against its order formula; a mismatch
raises :class:`OrderMismatch` instead of returning a wrong handle.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import matrices as mat
from .fields import field, prime_power
from .groups import DEFAULT_CAP, GroupHandle, close_generators, close_matrix_generators
from .perm import Permutation, parse_cycles


class OrderMismatch(RuntimeError):
    pass


class GroupSpecError(ValueError):
    pass


_DATA_FILES = {"M10": "M10.gens", "M11": "M11.gens", "PSU3:3": "PSU3_3.gens"}
_SPEC_RE = re.compile(r"^(S|A|C|D|GL2|SL2|PSL2|PGL2|PSL3|GL3|PSU3):(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    param: int | None = None
    path: str | None = None

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        text = text.strip()
        if text.startswith("file:"):
            return cls("file", path=text[5:])
        if text in ("M10", "M11"):
            return cls(text)
        m = _SPEC_RE.match(text)
        if not m:
            raise GroupSpecError(f"unrecognised group spec {text!r}")
        fam, k = m.group(1), int(m.group(2))
        if fam == "PSU3":
            if k != 3:
                raise GroupSpecError("only PSU3:3 is available")
        elif fam in ("S", "C"):
            if k < 1:
                raise GroupSpecError(f"{fam}:n needs n >= 1")
        elif fam == "A":
            if k < 3:
                raise GroupSpecError("A:n needs n >= 3")
        elif fam == "D":
            if k < 2:
                raise GroupSpecError("D:n needs n >= 2")
        else:
            try:
                prime_power(k)
            except ValueError as err:
                raise GroupSpecError(str(err)) from None
        return cls(fam, k)

    def __str__(self):
        if self.family == "file":
            return f"file:{self.path}"
        if self.param is None:
            return self.family
        return f"{self.family}:{self.param}"


# -- generator files ---------------------------------------------------------

@dataclass
class GeneratorFile:
    degree: int
    order: int
    source: str
    generators: list[Permutation]


def parse_generator_file(text: str) -> GeneratorFile:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 3:
        raise ValueError("generator file needs degree, order and source lines")
    header = {}
    for key, ln in zip(("degree", "order", "source"), lines[:3]):
        word, _, rest = ln.partition(" ")
        if word != key:
            raise ValueError(f"expected {key!r} line, got {ln!r}")
        header[key] = rest.strip()
    degree = int(header["degree"])
    gens = [parse_cycles(ln, degree, one_based=True) for ln in lines[3:]]
    if not gens:
        raise ValueError("generator file lists no generators")
    return GeneratorFile(degree, int(header["order"]), header["source"], gens)


def serialize_generator_file(gf: GeneratorFile) -> str:
    out = [f"degree {gf.degree}", f"order {gf.order}", f"source {gf.source}"]
    out += [g.to_cycle_string(one_based=True) for g in gf.generators]
    return "\n".join(out) + "\n"


def write_generator_file(path, generators: Sequence[Permutation], order: int, source: str):
    gf = GeneratorFile(generators[0].degree, order, source, list(generators))
    Path(path).write_text(serialize_generator_file(gf))


def load_generator_file(path, cap: int = DEFAULT_CAP, name: str = "") -> GroupHandle:
    gf = parse_generator_file(Path(path).read_text())
    G = close_generators(gf.generators, cap=cap, name=name or str(path))
    if G.order != gf.order:
        raise OrderMismatch(f"{path}: closure has order {G.order}, file declares {gf.order}")
    return G


def _data_path(fname: str):
    return resources.files("braidquot").joinpath("data", fname)


# -- order formulas ------------------------------------------------------------

def expected_order(spec: GroupSpec) -> int | None:
    f, k = spec.family, spec.param
    if f == "S":
        return math.factorial(k)
    if f == "A":
        return math.factorial(k) // 2
    if f == "C":
        return k
    if f == "D":
        return 2 * k
    if f == "GL2":
        return (k**2 - 1) * (k**2 - k)
    if f == "SL2":
        return k * (k**2 - 1)
    if f == "PSL2":
        return k * (k**2 - 1) // math.gcd(2, k - 1)
    if f == "PGL2":
        return k * (k**2 - 1)
    if f == "PSL3":
        return k**3 * (k**3 - 1) * (k**2 - 1) // math.gcd(3, k - 1)
    if f == "GL3":
        return (k**3 - 1) * (k**3 - k) * (k**3 - k**2)
    return {"PSU3": 6048, "M10": 720, "M11": 7920}.get(f)


# -- constructors --------------------------------------------------------------

def _perm_generators(spec: GroupSpec) -> list[Permutation]:
    f, n = spec.family, spec.param
    P = Permutation.from_cycles
    if f == "S":
        if n == 1:
            return [Permutation.identity(1)]
        return [P(n, [[0, 1]]), P(n, [list(range(n))])]
    if f == "A":
        long = list(range(n)) if n % 2 else list(range(1, n))
        return [P(n, [[0, 1, 2]]), P(n, [long])]
    if f == "C":
        return [P(n, [list(range(n))])] if n > 1 else [Permutation.identity(1)]
    if f == "D":
        if n == 2:
            return [P(4, [[0, 1], [2, 3]]), P(4, [[0, 2], [1, 3]])]
        refl = [[i, n - 1 - i] for i in range(n // 2)]
        return [P(n, [list(range(n))]), P(n, refl)]
    raise AssertionError(f)


def _matrix_generators(spec: GroupSpec):
    """Return (dimension, generators, projective)."""
    f, q = spec.family, spec.param
    F = field(q)
    scalars = sorted({1, F.alpha})
    if f in ("GL2", "SL2", "PSL2", "PGL2"):
        gens = [mat.elementary(F, 2, i, j, t) for (i, j) in ((0, 1), (1, 0)) for t in scalars]
        if f in ("GL2", "PGL2") and q > 2:
            gens.append(mat.diagonal((F.primitive, 1)))
        return 2, gens, f in ("PSL2", "PGL2")
    if f in ("PSL3", "GL3"):
        gens = [mat.elementary(F, 3, i, j, t) for i in range(3) for j in range(3) if i != j
                for t in scalars]
        if f == "GL3" and q > 2:
            gens.append(mat.diagonal((F.primitive, 1, 1)))
        return 3, gens, f == "PSL3"
    raise AssertionError(f)


def build(spec: GroupSpec | str, cap: int = DEFAULT_CAP) -> GroupHandle:
    """Construct and order-check the group named by ``spec``."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    return _build(spec, cap)


@lru_cache(maxsize=None)
def _build(spec: GroupSpec, cap: int) -> GroupHandle:
    name = str(spec)
    f = spec.family
    if f == "file":
        return load_generator_file(spec.path, cap=cap, name=name)
    if name in _DATA_FILES:
        G = load_generator_file(_data_path(_DATA_FILES[name]), cap=cap, name=name)
    elif f in ("S", "A", "C", "D"):
        G = close_generators(_perm_generators(spec), cap=cap, name=name)
    else:
        dim, gens, projective = _matrix_generators(spec)
        G = close_matrix_generators(spec.param, dim, gens, projective=projective, cap=cap, name=name)
    want = expected_order(spec)
    if want is not None and G.order != want:
        raise OrderMismatch(f"{name}: closure has order {G.order}, formula gives {want}")
    G.spec = name
    return G


def projective_line_action(q: int):
    """Points of P^1(F_q) and the action map ``(matrix, point index) -> point index``."""
    F = field(q)
    points = mat.projective_points(F, 2)
    index = {p: i for i, p in enumerate(points)}

    def act(m, i: int) -> int:
        m = m.entries if isinstance(m, mat.MatrixN) else m
        return index[mat.projective_canonical(F, mat.vec_times(F, 2, points[i], m))]

    return points, act


# Groups used by the sweeping property checks, smallest first.
CATALOG_SPECS = [
    "C:5", "D:2", "D:3", "D:4", "D:5", "D:6", "D:7", "D:8", "D:9", "D:10", "D:11", "D:12",
    "S:3", "S:4", "S:5", "S:6", "S:7", "A:4", "A:5", "A:6", "A:7", "A:8",
    "GL2:2", "GL2:3", "GL2:4", "GL2:5", "SL2:3", "SL2:5",
    "PSL2:5", "PSL2:7", "PSL2:8", "PSL2:9", "PSL2:11", "PSL2:13", "PSL2:16", "PSL2:17",
    "PGL2:5", "PGL2:7", "PGL2:9", "PSL3:3", "PSL3:4", "PSU3:3", "M10", "M11",
]


def catalog_specs(max_order: int | None = None) -> list[str]:
    specs = CATALOG_SPECS
    if max_order is not None:
        specs = [s for s in specs if expected_order(GroupSpec.parse(s)) <= max_order]
    return sorted(specs, key=lambda s: (expected_order(GroupSpec.parse(s)), s))


# -- simple-group order table -----------------------------------------------------

# (printed order, printed name, group specs realising the row)
ORDER_TABLE = [
    (60, "A5", ["A:5"]),
    (168, "PSL(2,7)", ["PSL2:7"]),
    (360, "A6 = PSL(2,9)", ["A:6", "PSL2:9"]),
    (504, "PSL(2,8)", ["PSL2:8"]),
    (660, "PSL(2,11)", ["PSL2:11"]),
    (1096, "PSL(2,13)", ["PSL2:13"]),
    (2448, "PSL(2,17)", ["PSL2:17"]),
    (2520, "A7", ["A:7"]),
    (3420, "PSL(2,19)", ["PSL2:19"]),
    (4040, "PSL(2,16)", ["PSL2:16"]),
    (5616, "PSL(3,3)", ["PSL3:3"]),
    (6048, "G2(2)'", ["PSU3:3"]),
    (6072, "PSL(2,23)", ["PSL2:23"]),
    (7800, "PSL(2,25)", ["PSL2:25"]),
    (7920, "M11", ["M11"]),
    (9828, "PSL(2,27)", ["PSL2:27"]),
    (12180, "PSL(2,29)", ["PSL2:29"]),
    (14880, "PSL(2,31)", ["PSL2:31"]),
    (20160, "A8", ["A:8"]),
    (20160, "PSL(3,4)", ["PSL3:4"]),
]


@dataclass
class OrderTableRow:
    name: str
    spec: str
    printed: int
    formula: int
    computed: int

    @property
    def flagged(self) -> bool:
        return self.printed != self.computed

    def to_dict(self):
        return {"name": self.name, "spec": self.spec, "printed": self.printed,
                "formula": self.formula, "computed": self.computed, "flagged": self.flagged}


def verify_order_table() -> list[OrderTableRow]:
    """Compare printed table orders with formula and closure orders.

    Discrepancies are reported through :attr:`OrderTableRow.flagged`; a
    formula/closure disagreement is a construction bug and raises instead.
    """
    rows = []
    for printed, name, specs in ORDER_TABLE:
        for s in specs:
            spec = GroupSpec.parse(s)
            G = build(spec)
            rows.append(OrderTableRow(name, s, printed, expected_order(spec), G.order))
    return rows
