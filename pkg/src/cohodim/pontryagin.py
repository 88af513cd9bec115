"""Finite stages of the mod-2 Pontryagin disk.

Stage 0 is a triangulated disk with its boundary circle marked.  Each later
stage replaces every triangle by a Möbius patch: the six-vertex projective
plane with one face removed, glued so that the patch boundary is exactly the
old triangle's boundary and with three fresh interior vertices per patch.
The marked boundary edges are never subdivided, so cohomology of the pair
(stage, boundary) can be compared across generations.

Bonding maps between stages and any mesh control are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgroup import is_prime
from .errors import ResourceExceeded
from .simplicial import (
    RP2_FACES,
    CohomologyReport,
    Coefficients,
    SimplicialComplex,
    build_chain_complex,
    cohomology,
    homology,
    zmod,
)

__all__ = [
    "DEFAULT_SIMPLEX_CAP",
    "PontryaginStage",
    "triangulated_disk",
    "next_stage",
    "stage",
    "stage_report",
    "rel_class_fate",
    "FateTable",
]

DEFAULT_SIMPLEX_CAP = 100_000

# template face (0, 1, 2) is the one removed; 0, 1, 2 land on the old triangle
PATCH_FACES = tuple(f for f in RP2_FACES if f != (0, 1, 2))
PATCH_FACE_COUNT = len(PATCH_FACES)  # 9


@dataclass(frozen=True)
class PontryaginStage:
    complex: SimplicialComplex
    boundary_mark: SimplicialComplex
    generation: int = 0
    patch_registry: dict = field(default_factory=dict, compare=False)

    @property
    def triangles(self) -> list[tuple[int, ...]]:
        return self.complex.faces(2)

    def to_json(self) -> dict:
        data = self.complex.to_json(relative=self.boundary_mark)
        data["generation"] = self.generation
        return data


def triangulated_disk(n: int) -> PontryaginStage:
    """Disk with ``n`` triangles.

    n = 1 is a single triangle, n = 2 a square cut along a diagonal, and
    n >= 3 a fan of n triangles around an interior hub vertex 0."""
    if n < 1:
        raise ValueError("a disk needs at least one triangle")
    if n == 1:
        faces = [(0, 1, 2)]
        rim = [0, 1, 2]
    elif n == 2:
        faces = [(0, 1, 2), (0, 2, 3)]
        rim = [0, 1, 2, 3]
    else:
        faces = [(0, i, i % n + 1) for i in range(1, n + 1)]
        rim = list(range(1, n + 1))
    k = SimplicialComplex.from_facets(faces)
    edges = [tuple(sorted((rim[i], rim[(i + 1) % len(rim)]))) for i in range(len(rim))]
    return PontryaginStage(k, k.subcomplex(edges), 0, {})


def next_stage(s: PontryaginStage) -> PontryaginStage:
    """Replace every triangle by a Möbius patch with the same boundary."""
    nv = s.complex.num_vertices
    kept = [x for x in s.complex.simplices if len(x) <= 2]
    faces = []
    registry = {}
    for tri in s.triangles:
        fresh = (nv, nv + 1, nv + 2)
        nv += 3
        where = tri + fresh
        patch = tuple(tuple(sorted(where[v] for v in f)) for f in PATCH_FACES)
        registry[tri] = patch
        faces.extend(patch)
    k = SimplicialComplex.from_facets(faces + kept, nv)
    return PontryaginStage(k, s.boundary_mark, s.generation + 1, registry)


def stage(n: int, generation: int, simplex_cap: int = DEFAULT_SIMPLEX_CAP) -> PontryaginStage:
    """Stage ``generation`` built from the ``n``-triangle disk."""
    _check_cap(n, generation, simplex_cap)
    s = triangulated_disk(n)
    for _ in range(generation):
        s = next_stage(s)
    return s


def _check_cap(n: int, generations: int, cap: int):
    faces = n * PATCH_FACE_COUNT ** generations
    if faces > cap:
        raise ResourceExceeded(
            f"generation {generations} of the {n}-triangle disk has {faces} triangles, "
            f"over the simplex cap {cap}", faces)


def stage_report(s: PontryaginStage, ring: Coefficients, relative_to_boundary: bool = True,
                 kind: str = "cohomology") -> CohomologyReport:
    rel = s.boundary_mark if relative_to_boundary else None
    c = build_chain_complex(s.complex, ring, rel)
    return cohomology(c) if kind == "cohomology" else homology(c)


@dataclass
class FateTable:
    n: int
    p: int
    rows: list[dict]

    @property
    def column(self) -> list[int]:
        return [r["dim_H2_rel"] for r in self.rows]

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "rows": self.rows}

    def to_text(self) -> str:
        lines = [f"disk with {self.n} triangle(s), coefficients Z/{self.p}",
                 f"{'gen':>3}  {'vertices':>8}  {'edges':>8}  {'triangles':>9}  dim H^2(X_g, A; Z/{self.p})"]
        for r in self.rows:
            lines.append(f"{r['generation']:>3}  {r['vertices']:>8}  {r['edges']:>8}  "
                         f"{r['triangles']:>9}  {r['dim_H2_rel']}")
        return "\n".join(lines)


def rel_class_fate(n: int, generations: int, p: int,
                   simplex_cap: int = DEFAULT_SIMPLEX_CAP) -> FateTable:
    """dim H^2(stage_g, A; Z/p) for g = 0..generations."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if generations < 0:
        raise ValueError("generations must be nonnegative")
    _check_cap(n, generations, simplex_cap)
    s = triangulated_disk(n)
    rows = []
    for g in range(generations + 1):
        if g:
            s = next_stage(s)
        rep = stage_report(s, zmod(p), relative_to_boundary=True)
        f = s.complex.f_vector()
        rows.append({"generation": g, "vertices": f[0], "edges": f[1], "triangles": f[2],
                     "dim_H2_rel": rep.dimension(2)})
    return FateTable(n, p, rows)
