"""Simplicial complexes (dimension <= 3), chain complexes over Z, Q and Z/n,
absolute and relative (co)homology, and exactness checks for the Bockstein
and pair long exact sequences computed at cochain level.

Orientation comes from the global vertex order: a simplex is a sorted vertex
tuple and ``d[v0..vk] = sum (-1)^i [v0..^vi..vk]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .abgroup import (
    FgAbelianGroup,
    LatticeSolver,
    is_prime,
    lattice_basis,
    lattice_kernel,
    snf_diagonal,
    subquotient_invariants,
)

__all__ = [
    "MAX_DIM",
    "Coefficients",
    "Z",
    "Q",
    "zmod",
    "SimplicialComplex",
    "ChainComplexData",
    "DegreeGroup",
    "CohomologyReport",
    "build_chain_complex",
    "homology",
    "cohomology",
    "CoefficientSequence",
    "UnsupportedCoefficients",
    "bockstein_check",
    "pair_sequence_check",
    "sphere",
    "rp2_6",
    "mobius_patch",
    "torus_7",
    "RP2_FACES",
]

MAX_DIM = 3


# --------------------------------------------------------------------------
# Coefficient rings


@dataclass(frozen=True)
class Coefficients:
    """``modulus`` 0 means Z; ``rational`` selects Q."""

    modulus: int = 0
    rational: bool = False

    def __post_init__(self):
        if self.modulus < 0 or (self.rational and self.modulus):
            raise ValueError("invalid coefficient ring")

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        t = text.strip().lower().replace(" ", "")
        if t in ("z", "integers"):
            return Z
        if t in ("q", "rationals"):
            return Q
        if t.startswith("z/"):
            n = int(t[2:])
            if n < 1:
                raise ValueError("Z/n needs n >= 1")
            return cls(n)
        raise ValueError(f"unknown coefficient ring {text!r} (use z, q or z/N)")

    @property
    def is_field(self) -> bool:
        return self.rational or is_prime(self.modulus)

    def __str__(self) -> str:
        if self.rational:
            return "Q"
        return f"Z/{self.modulus}" if self.modulus else "Z"


Z = Coefficients()
Q = Coefficients(rational=True)


def zmod(n: int) -> Coefficients:
    return Coefficients(n)


# --------------------------------------------------------------------------
# Complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of sorted vertex tuples over ``range(num_vertices)``."""

    num_vertices: int
    simplices: frozenset

    def __post_init__(self):
        simplices = frozenset(tuple(s) for s in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        for s in simplices:
            if not s:
                raise ValueError("empty simplex")
            if len(s) - 1 > MAX_DIM:
                raise ValueError(f"simplex {s} has dimension > {MAX_DIM}")
            if list(s) != sorted(set(s)):
                raise ValueError(f"simplex {s} is not a sorted tuple of distinct vertices")
            if s[0] < 0 or s[-1] >= self.num_vertices:
                raise ValueError(f"simplex {s} has a vertex outside 0..{self.num_vertices - 1}")
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    if face not in simplices:
                        raise ValueError(f"face {face} of {s} missing; complex not closed")

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], num_vertices: int | None = None):
        out = set()
        facets = [tuple(sorted(f)) for f in facets]
        for f in facets:
            if len(f) - 1 > MAX_DIM:
                raise ValueError(f"simplex {f} has dimension > {MAX_DIM}")
            if len(set(f)) != len(f):
                raise ValueError(f"simplex {f} repeats a vertex")
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        if num_vertices is None:
            num_vertices = max((f[-1] for f in facets if f), default=-1) + 1
        return cls(num_vertices, frozenset(out))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def faces(self, k: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def subcomplex(self, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        sub = SimplicialComplex.from_facets(facets, self.num_vertices)
        if not sub.is_subcomplex_of(self):
            raise ValueError("given simplices are not all in the complex")
        return sub

    def facets(self) -> list[tuple[int, ...]]:
        out = []
        by_len = sorted(self.simplices, key=lambda s: (-len(s), s))
        covered: set = set()
        for s in by_len:
            if s not in covered:
                out.append(s)
            for k in range(1, len(s)):
                covered.update(combinations(s, k))
        return sorted(out)

    def to_json(self, relative: "SimplicialComplex | None" = None) -> dict:
        data = {"vertices": self.num_vertices, "simplices": [list(s) for s in self.facets()]}
        if relative is not None:
            data["relative"] = [list(s) for s in relative.facets()]
        return data

    @classmethod
    def from_json(cls, data: dict) -> tuple["SimplicialComplex", "SimplicialComplex | None"]:
        """Returns the complex and the optional ``relative`` subcomplex."""
        k = cls.from_facets(data["simplices"], data.get("vertices"))
        rel = data.get("relative")
        return k, (k.subcomplex(rel) if rel is not None else None)

    @classmethod
    def load(cls, path) -> tuple["SimplicialComplex", "SimplicialComplex | None"]:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


# --------------------------------------------------------------------------
# Chain complexes

SparseColumn = dict  # row index -> nonzero integer


@dataclass
class ChainComplexData:
    """Cells of K minus rel by degree, and sparse boundary matrices.

    ``boundary[k]`` (k = 1..3) is a list of columns, one per k-cell, mapping
    (k-1)-cell index to the oriented incidence number."""

    ring: Coefficients
    cells: list[list[tuple[int, ...]]]
    boundary: dict[int, list[SparseColumn]]
    relative: bool = False

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def rank(self, k: int) -> int:
        return len(self.cells[k]) if 0 <= k < len(self.cells) else 0

    def columns(self, k: int) -> list[SparseColumn]:
        if k < 1 or k > self.top:
            return [{} for _ in range(self.rank(k))]
        return self.boundary[k]

    def boundary_rows(self, k: int) -> list[list[int]]:
        """Dense d_k as rows (one row per (k-1)-cell)."""
        rows = [[0] * self.rank(k) for _ in range(self.rank(k - 1))]
        for j, col in enumerate(self.columns(k)):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def boundary_matrix(self, k: int):
        from .abgroup import IntMatrix

        return IntMatrix.from_rows(self.boundary_rows(k), cols=self.rank(k))

    def coboundary_rows(self, k: int) -> list[list[int]]:
        """Dense delta^k : C^k -> C^{k+1} as rows (transpose of d_{k+1})."""
        rows = [[0] * self.rank(k) for _ in range(self.rank(k + 1))]
        for j, col in enumerate(self.columns(k + 1)):
            for i, v in col.items():
                rows[j][i] = v
        return rows

    def coboundary_columns(self, k: int) -> list[SparseColumn]:
        """Sparse delta^k, one column per k-cell."""
        cols: list[SparseColumn] = [{} for _ in range(self.rank(k))]
        for j, col in enumerate(self.columns(k + 1)):
            for i, v in col.items():
                cols[i][j] = v
        return cols


def build_chain_complex(k: SimplicialComplex, ring: Coefficients = Z,
                        rel: SimplicialComplex | None = None) -> ChainComplexData:
    if rel is not None and not rel.is_subcomplex_of(k):
        raise ValueError("relative complex is not a subcomplex")
    drop = rel.simplices if rel is not None else frozenset()
    top = max(k.dimension, 0)
    if k.dimension > MAX_DIM:
        raise ValueError(f"dimension > {MAX_DIM}")
    cells = [[s for s in k.faces(d) if s not in drop] for d in range(top + 1)]
    index = [{s: i for i, s in enumerate(c)} for c in cells]
    boundary = {}
    for d in range(1, top + 1):
        cols = []
        for s in cells[d]:
            col = {}
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                j = index[d - 1].get(face)
                if j is not None:
                    col[j] = col.get(j, 0) + (-1) ** i
            cols.append(col)
        boundary[d] = cols
    c = ChainComplexData(ring, cells, boundary, relative=bool(rel is not None and rel.simplices))
    for d in range(2, top + 1):
        if not _composite_is_zero(c.columns(d - 1), c.columns(d)):
            raise AssertionError(f"boundary of boundary is nonzero in degree {d}")
    return c


def _composite_is_zero(outer: list[SparseColumn], inner: list[SparseColumn]) -> bool:
    for col in inner:
        acc: dict[int, int] = {}
        for i, v in col.items():
            for r, w in outer[i].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


# --------------------------------------------------------------------------
# Sparse elimination


def sparse_invariants(columns: Sequence[SparseColumn], nrows: int, modulus: int = 0) -> list[int]:
    """Nonzero Smith invariants of a sparse integer matrix (``modulus`` 0), or
    ``[1] * rank`` over the field Z/p (``modulus`` p prime).

    Unit pivots are eliminated greedily with the sparsest row first; whatever
    remains over Z is finished by a dense Smith normal form."""
    p = modulus
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        c = {}
        for i, v in col.items():
            if p:
                v %= p
            if v:
                c[i] = v
        if c:
            cols[j] = c
            for i in c:
                rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress and cols:
        progress = False
        for j in sorted(cols):
            col = cols.get(j)
            if col is None:
                continue
            best = None
            for i, v in col.items():
                if p or v in (1, -1):
                    n = len(rows[i])
                    if best is None or n < best[0]:
                        best = (n, i, v)
                        if n == 1:
                            break
            if best is None:
                continue
            _, r, v = best
            vinv = pow(v, -1, p) if p else v
            for j2 in list(rows[r]):
                if j2 == j:
                    continue
                c2 = cols[j2]
                f = c2[r] * vinv
                for i, w in col.items():
                    x = c2.get(i, 0) - f * w
                    if p:
                        x %= p
                    if x:
                        if i not in c2:
                            rows[i].add(j2)
                        c2[i] = x
                    elif i in c2:
                        del c2[i]
                        rows[i].discard(j2)
                if not c2:
                    del cols[j2]
            for i in col:
                rows[i].discard(j)
            del cols[j]
            units += 1
            progress = True
    if not cols:
        return [1] * units
    if p:
        raise AssertionError("modular elimination left a nonzero remainder")
    live_rows = sorted({i for c in cols.values() for i in c})
    where = {i: k for k, i in enumerate(live_rows)}
    order = sorted(cols)
    dense = [[0] * len(order) for _ in live_rows]
    for jj, j in enumerate(order):
        for i, v in cols[j].items():
            dense[where[i]][jj] = v
    return [1] * units + snf_diagonal(dense, len(order))


# --------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class DegreeGroup:
    """Over Z: free rank + torsion.  Over a field: ``rank`` is the dimension.
    Over Z/n with n composite: ``rank`` is 0 and ``torsion`` lists the
    invariant factors of the (finite) group."""

    rank: int
    torsion: tuple[int, ...] = ()

    def as_group(self, ring: Coefficients) -> FgAbelianGroup:
        if ring.modulus and ring.is_field:
            return FgAbelianGroup.from_cyclic([ring.modulus] * self.rank)
        return FgAbelianGroup(self.rank, self.torsion)

    def render(self, ring: Coefficients) -> str:
        if self.rank == 0 and not self.torsion:
            return "0"
        if ring.rational:
            return "Q" if self.rank == 1 else f"Q^{self.rank}"
        if ring.modulus and ring.is_field:
            return f"Z/{ring.modulus}" if self.rank == 1 else f"(Z/{ring.modulus})^{self.rank}"
        return str(FgAbelianGroup(self.rank, self.torsion))


@dataclass
class CohomologyReport:
    kind: str  # "homology" or "cohomology"
    ring: Coefficients
    relative: bool
    groups: list[DegreeGroup] = field(default_factory=list)

    def __getitem__(self, k: int) -> DegreeGroup:
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return DegreeGroup(0)

    def group(self, k: int) -> FgAbelianGroup:
        return self[k].as_group(self.ring)

    def dimension(self, k: int) -> int:
        if not self.ring.is_field:
            raise ValueError(f"dimension needs field coefficients, not {self.ring}")
        return self[k].rank

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ring": str(self.ring),
            "relative": self.relative,
            "degrees": [{"degree": k, "rank": g.rank, "torsion": list(g.torsion),
                         "text": g.render(self.ring)} for k, g in enumerate(self.groups)],
        }

    def to_text(self) -> str:
        sym = "H_" if self.kind == "homology" else "H^"
        rel = ", rel" if self.relative else ""
        return "\n".join(f"{sym}{k}({self.ring}{rel}) = {g.render(self.ring)}"
                         for k, g in enumerate(self.groups))


def _maps(c: ChainComplexData, kind: str):
    """Outgoing differential of degree k as (columns, nrows) for each k."""
    out = {}
    for k in range(c.top + 1):
        if kind == "homology":
            out[k] = (c.columns(k), c.rank(k - 1))
        else:
            out[k] = (c.coboundary_columns(k), c.rank(k + 1))
    return out


def _compute(c: ChainComplexData, kind: str) -> CohomologyReport:
    report = CohomologyReport(kind, c.ring, relative=c.relative)
    top = c.top
    if c.ring.modulus and not c.ring.is_field:
        for k in range(top + 1):
            sq = _degree_subquotient(c, k, kind, c.ring.modulus)
            g = sq.group()
            report.groups.append(DegreeGroup(0, g.invariant_factors))
        return report
    mod = c.ring.modulus if c.ring.modulus else 0
    maps = _maps(c, kind)
    inv = {k: sparse_invariants(cols, nrows, mod) for k, (cols, nrows) in maps.items()}
    for k in range(top + 1):
        # incoming differential: d_{k+1} for homology, delta^{k-1} for cohomology
        incoming = inv.get(k + 1 if kind == "homology" else k - 1, [])
        rank = c.rank(k) - len(inv[k]) - len(incoming)
        torsion = tuple(d for d in incoming if d > 1) if mod == 0 and not c.ring.rational else ()
        report.groups.append(DegreeGroup(rank, torsion))
    return report


def homology(c: ChainComplexData) -> CohomologyReport:
    return _compute(c, "homology")


def cohomology(c: ChainComplexData) -> CohomologyReport:
    return _compute(c, "cohomology")


# --------------------------------------------------------------------------
# Cochain-level subquotients: H = cycles / boundaries inside Z^dim


@dataclass
class Subquotient:
    """Lattices boundaries <= cycles <= Z^dim; homology with coefficients Z/m
    is represented through integer lifts (m = 0 for Z)."""

    dim: int
    cycles: list[list[int]]      # independent basis
    boundaries: list[list[int]]  # generators

    def group(self) -> FgAbelianGroup:
        return subquotient_invariants(self.cycles, self.boundaries, self.dim)

    @cached_property
    def _cycle_solver(self) -> LatticeSolver:
        return LatticeSolver(self.cycles, self.dim)

    @cached_property
    def _boundary_solver(self) -> LatticeSolver:
        return LatticeSolver(self.boundaries, self.dim)

    def is_cycle(self, v) -> bool:
        return v in self._cycle_solver

    def is_boundary(self, v) -> bool:
        return v in self._boundary_solver


def _preimage(mat_rows: list[list[int]], ncols: int, target: list[list[int]], nrows: int):
    """Generators of {x in Z^ncols : mat x in span(target)}."""
    wide = [mat_rows[i][:] + [-t[i] for t in target] for i in range(nrows)]
    ker = lattice_kernel(wide, ncols + len(target))
    return [v[:ncols] for v in ker]


def _cycles_mod(out_rows: list[list[int]], dim: int, nout: int, m: int) -> list[list[int]]:
    """Basis of {x : out x = 0 mod m} (m = 0: the kernel)."""
    if m == 0:
        return lattice_kernel(out_rows, dim) if nout else _identity(dim)
    if nout == 0:
        return _identity(dim)
    target = [[m * (i == j) for i in range(nout)] for j in range(nout)]
    return lattice_basis(_preimage(out_rows, dim, target, nout), dim)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for i in range(n)] for j in range(n)]


def _boundaries_mod(in_rows: list[list[int]], dim: int, nin: int, m: int) -> list[list[int]]:
    gens = [[in_rows[i][j] for i in range(dim)] for j in range(nin)]
    if m:
        gens += [[m * (i == j) for i in range(dim)] for j in range(dim)]
    return [g for g in gens if any(g)]


def _degree_subquotient(c: ChainComplexData, k: int, kind: str, m: int) -> Subquotient:
    dim = c.rank(k)
    if kind == "homology":
        out_rows, nout = c.boundary_rows(k), c.rank(k - 1)
        in_rows, nin = c.boundary_rows(k + 1), c.rank(k + 1)
    else:
        out_rows, nout = c.coboundary_rows(k), c.rank(k + 1)
        in_rows, nin = c.coboundary_rows(k - 1) if k >= 1 else [[] for _ in range(dim)], c.rank(k - 1)
    return Subquotient(dim, _cycles_mod(out_rows, dim, nout, m), _boundaries_mod(in_rows, dim, nin, m))


def cochain_subquotient(c: ChainComplexData, k: int, m: int) -> Subquotient:
    """H^k(C; Z/m) (m = 0 for Z) as a subquotient of integer cochains."""
    return _degree_subquotient(c, k, "cohomology", m)


# --------------------------------------------------------------------------
# Exactness of long sequences

LinearMap = Callable[[list[int]], list[int]]


@dataclass
class MapSummary:
    label: str
    kernel: FgAbelianGroup
    image: FgAbelianGroup
    well_defined: bool

    def to_json(self) -> dict:
        return {"label": self.label, "kernel": str(self.kernel), "image": str(self.image),
                "well_defined": self.well_defined}


@dataclass
class SequenceReport:
    terms: list[tuple[str, FgAbelianGroup]]
    maps: list[MapSummary]
    slots: list[tuple[str, bool]]

    @property
    def exact(self) -> bool:
        return all(ok for _, ok in self.slots) and all(m.well_defined for m in self.maps)

    def map(self, label: str) -> MapSummary:
        return next(m for m in self.maps if m.label == label)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "terms": [{"label": t, "group": str(g)} for t, g in self.terms],
            "maps": [m.to_json() for m in self.maps],
            "slots": [{"label": t, "exact": ok} for t, ok in self.slots],
        }

    def to_text(self) -> str:
        w = max(len(t) for t, _ in self.terms)
        lines = []
        for (t, g), (_, ok) in zip(self.terms, self.slots):
            lines.append(f"{t:<{w}}  {str(g):<20} {'exact' if ok else 'NOT EXACT'}")
        for m in self.maps:
            lines.append(f"  {m.label}: kernel {m.kernel}, image {m.image}")
        lines.append("sequence exact" if self.exact else "sequence NOT exact")
        return "\n".join(lines)


def _kernel_lattice(f: LinearMap, a: Subquotient, b: Subquotient) -> list[list[int]]:
    """Generators of {z in cycles(a) : f(z) in boundaries(b)}."""
    r = len(a.cycles)
    if r == 0:
        return []
    images = [f(v) for v in a.cycles]
    mat = [[images[j][i] for j in range(r)] for i in range(b.dim)]
    if b.dim == 0:
        coords = _identity(r)
    else:
        coords = _preimage(mat, r, b.boundaries, b.dim) if b.boundaries else lattice_kernel(mat, r)
    return [[sum(t[j] * a.cycles[j][i] for j in range(r)) for i in range(a.dim)] for t in coords]


def _summarize(label: str, f: LinearMap, a: Subquotient, b: Subquotient) -> MapSummary:
    ok = all(b.is_cycle(f(v)) for v in a.cycles) and all(b.is_boundary(f(v)) for v in a.boundaries)
    ker = _kernel_lattice(f, a, b) + a.boundaries
    kernel = subquotient_invariants(lattice_basis(ker, a.dim), a.boundaries, a.dim)
    img = [f(v) for v in a.cycles] + b.boundaries
    image = subquotient_invariants(lattice_basis(img, b.dim), b.boundaries, b.dim)
    return MapSummary(label, kernel, image, ok)


def check_exact_sequence(terms: list[tuple[str, Subquotient]],
                         maps: list[tuple[str, LinearMap]]) -> SequenceReport:
    """``maps[i]`` goes from ``terms[i]`` to ``terms[i + 1]``.  A zero term is
    implied before the first and after the last."""
    summaries = [_summarize(lbl, f, terms[i][1], terms[i + 1][1]) for i, (lbl, f) in enumerate(maps)]
    slots = []
    for i, (label, b) in enumerate(terms):
        # kernel of the outgoing map must equal the image of the incoming one
        if i < len(maps):
            g = maps[i][1]
            nxt = terms[i + 1][1]
            ker = _kernel_lattice(g, b, nxt)
        else:
            ker = b.cycles
        if i > 0:
            f = maps[i - 1][1]
            prev = terms[i - 1][1]
            img = [f(v) for v in prev.cycles] + b.boundaries
            composite_zero = i >= len(maps) or all(
                terms[i + 1][1].is_boundary(maps[i][1](f(v))) for v in prev.cycles)
        else:
            img = b.boundaries
            composite_zero = True
        solver = LatticeSolver(img, b.dim)
        ok = composite_zero and all(z in solver for z in ker)
        slots.append((label, ok))
    return SequenceReport([(t, sq.group()) for t, sq in terms], summaries, slots)


def _apply(rows: list[list[int]], v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(r, v)) for r in rows]


class UnsupportedCoefficients(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientSequence:
    """0 -> G -> E -> Pi -> 0 with G -> E multiplication by ``n`` and E -> Pi
    reduction: either Z -> Z -> Z/n (``integral``) or Z/n -> Z/n^2 -> Z/n."""

    n: int
    integral: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedCoefficients("n must be positive")
        if not self.integral and not is_prime(self.n):
            raise UnsupportedCoefficients("Z/p -> Z/p^2 -> Z/p needs p prime")

    @property
    def moduli(self) -> tuple[int, int, int]:
        if self.integral:
            return 0, 0, self.n
        return self.n, self.n * self.n, self.n

    @property
    def labels(self) -> tuple[str, str, str]:
        return tuple("Z" if m == 0 else f"Z/{m}" for m in self.moduli)

    def __str__(self) -> str:
        g, e, pi = self.labels
        return f"0 -> {g} -> {e} -> {pi} -> 0"

    @classmethod
    def parse(cls, text: str) -> "CoefficientSequence":
        """Accepts ``integral:N``, ``modular:P``, or a triple like ``z,z,z/2``
        / ``z/3,z/9,z/3``."""
        t = text.strip().lower().replace(" ", "")
        if t.startswith("integral:"):
            return cls(int(t.split(":", 1)[1]), True)
        if t.startswith("modular:"):
            return cls(int(t.split(":", 1)[1]), False)
        parts = t.split(",")
        if len(parts) == 3:
            try:
                a, b, c = (Coefficients.parse(x) for x in parts)
            except ValueError as exc:
                raise UnsupportedCoefficients(str(exc)) from None
            if not (a.rational or b.rational or c.rational):
                if a.modulus == 0 and b.modulus == 0 and c.modulus >= 1:
                    return cls(c.modulus, True)
                if a.modulus and a.modulus == c.modulus and b.modulus == a.modulus ** 2:
                    return cls(a.modulus, False)
        raise UnsupportedCoefficients(f"unsupported coefficient sequence {text!r}")


def _padded_cochains(k: SimplicialComplex, rel: SimplicialComplex | None, top: int):
    c = build_chain_complex(k, Z, rel)
    # pad to degree top + 1 with empty cells
    while len(c.cells) < top + 2:
        c.cells.append([])
    for d in range(1, top + 2):
        c.boundary.setdefault(d, [{} for _ in c.cells[d]])
    return c


def bockstein_check(k: SimplicialComplex, rel: SimplicialComplex | None,
                    sequence: CoefficientSequence, top: int = MAX_DIM) -> SequenceReport:
    """Long exact cohomology sequence of a coefficient sequence, through
    degree ``top``, with the connecting map computed on cochains: lift a
    Pi-cocycle to E, take the coboundary, divide by n."""
    if not isinstance(sequence, CoefficientSequence):
        raise UnsupportedCoefficients(f"unsupported coefficient sequence {sequence!r}")
    c = _padded_cochains(k, rel, top)
    n = sequence.n
    mg, me, mp = sequence.moduli
    lg, le, lp = sequence.labels
    terms: list[tuple[str, Subquotient]] = []
    maps: list[tuple[str, LinearMap]] = []

    def times_n(v):
        return [n * x for x in v]

    def identity(v):
        return list(v)

    for d in range(top + 1):
        delta = c.coboundary_rows(d)

        def beta(v, delta=delta):
            w = _apply(delta, v)
            if any(x % n for x in w):
                raise AssertionError("coboundary of a Pi-cocycle is not divisible by n")
            return [x // n for x in w]

        terms += [(f"H^{d}({lg})", cochain_subquotient(c, d, mg)),
                  (f"H^{d}({le})", cochain_subquotient(c, d, me)),
                  (f"H^{d}({lp})", cochain_subquotient(c, d, mp))]
        maps += [(f"i{d}", times_n), (f"j{d}", identity), (f"beta{d}", beta)]
    terms.append((f"H^{top + 1}({lg})", cochain_subquotient(c, top + 1, mg)))
    return check_exact_sequence(terms, maps)


def pair_sequence_check(k: SimplicialComplex, a: SimplicialComplex, ring: Coefficients = Z,
                        top: int = MAX_DIM) -> SequenceReport:
    """... -> H^d(K, A) -> H^d(K) -> H^d(A) -> H^{d+1}(K, A) -> ... at cochain level."""
    if ring.rational:
        raise ValueError("pair sequence check works over Z or Z/n")
    m = ring.modulus
    ck = _padded_cochains(k, None, top)
    ca = _padded_cochains(a, None, top)
    crel = _padded_cochains(k, a, top)
    terms: list[tuple[str, Subquotient]] = []
    maps: list[tuple[str, LinearMap]] = []
    for d in range(top + 1):
        kidx = {s: i for i, s in enumerate(ck.cells[d])}
        rel_pos = [kidx[s] for s in crel.cells[d]]
        a_pos = [kidx[s] for s in ca.cells[d]]
        nk = len(ck.cells[d])
        kidx1 = {s: i for i, s in enumerate(ck.cells[d + 1])}
        rel_pos1 = [kidx1[s] for s in crel.cells[d + 1]]
        delta_k = ck.coboundary_rows(d)

        def extend(v, rel_pos=rel_pos, nk=nk):
            out = [0] * nk
            for x, i in zip(v, rel_pos):
                out[i] = x
            return out

        def restrict(v, a_pos=a_pos):
            return [v[i] for i in a_pos]

        def connect(v, a_pos=a_pos, nk=nk, delta_k=delta_k, rel_pos1=rel_pos1):
            full = [0] * nk
            for x, i in zip(v, a_pos):
                full[i] = x
            w = _apply(delta_k, full)
            return [w[i] for i in rel_pos1]

        terms += [(f"H^{d}(K,A)", cochain_subquotient(crel, d, m)),
                  (f"H^{d}(K)", cochain_subquotient(ck, d, m)),
                  (f"H^{d}(A)", cochain_subquotient(ca, d, m))]
        maps += [(f"ext{d}", extend), (f"res{d}", restrict), (f"conn{d}", connect)]
    terms.append((f"H^{top + 1}(K,A)", cochain_subquotient(crel, top + 1, m)))
    return check_exact_sequence(terms, maps)


# --------------------------------------------------------------------------
# Standard complexes

# 6-vertex real projective plane (half of the icosahedron); every vertex pair
# is an edge and every edge lies on exactly two faces.
RP2_FACES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
)


def sphere() -> SimplicialComplex:
    """Boundary of the 3-simplex."""
    return SimplicialComplex.from_facets(combinations(range(4), 3), 4)


def rp2_6() -> SimplicialComplex:
    return SimplicialComplex.from_facets(RP2_FACES, 6)


def mobius_patch() -> tuple[SimplicialComplex, SimplicialComplex]:
    """RP^2_6 minus the face (0, 1, 2), with its boundary triangle."""
    faces = [f for f in RP2_FACES if f != (0, 1, 2)]
    k = SimplicialComplex.from_facets(faces, 6)
    return k, k.subcomplex([(0, 1), (1, 2), (0, 2)])


def torus_7() -> SimplicialComplex:
    """Seven-vertex torus with faces {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets(faces, 7)
