"""Finitely generated abelian groups over exact integers.

Smith normal form with unimodular transforms, canonical invariant-factor
form, tensor products, and the torsion/divisibility predicates used by the
nilpotent-group classifier.  Also a small toolkit of lattice operations
(kernel, image, membership, subquotient invariants) built on the SNF, used
by the cochain-level exactness checks in :mod:`cohodim.simplicial`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "FgAbelianGroup",
    "smith_normal_form",
    "snf_diagonal",
    "abelianization",
    "tensor_product",
    "direct_sum",
    "is_prime",
    "factorize",
    "torsion_divisibility_report",
    "is_quotient_of",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols=cols)

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix.from_rows(_matmul(self.to_rows(), other.to_rows(), other.cols), cols=other.cols)

    def transpose(self) -> "IntMatrix":
        a = self.to_rows()
        return IntMatrix.from_rows([[a[i][j] for i in range(self.rows)] for j in range(self.cols)],
                                   cols=self.rows)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.to_rows())


def _matmul(a: list[list[int]], b: list[list[int]], bcols: int) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * bcols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(bcols):
                    acc[j] += x * bk[j]
        out.append(acc)
    return out


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --------------------------------------------------------------------------
# Smith normal form


def _snf_inplace(a: list[list[int]], rows: int, cols: int,
                 u: list[list[int]] | None, v: list[list[int]] | None) -> int:
    """Reduce ``a`` to Smith form in place, mirroring row ops on ``u`` and
    column ops on ``v`` (either may be None).  Returns the rank."""

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        ad, as_ = a[dst], a[src]
        for k in range(cols):
            if as_[k]:
                ad[k] += q * as_[k]
        if u is not None:
            ud, us = u[dst], u[src]
            for k in range(rows):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than |p| survived; move it to the pivot
                best = None
                for i in range(t, rows):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, cols):
                    x = a[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            # row and column of the pivot are clear; enforce divisibility
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1
    return t


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(s, u, v)`` with ``s = u @ m @ v``, ``u``/``v`` unimodular and
    ``s`` diagonal, nonnegative, each diagonal entry dividing the next."""
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]
    _snf_inplace(a, rows, cols, u, v)
    return (IntMatrix.from_rows(a, cols=cols), IntMatrix.from_rows(u, cols=rows),
            IntMatrix.from_rows(v, cols=cols))


def snf_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero Smith invariants of a matrix given as row lists (no transforms)."""
    a = [list(r) for r in rows]
    rank = _snf_inplace(a, len(a), ncols, None, None)
    return [a[i][i] for i in range(rank)]


# --------------------------------------------------------------------------
# Lattices in Z^n (column-vector conventions; a "basis" is a list of vectors)


def lattice_kernel(mat: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : mat x = 0}."""
    rows = len(mat)
    a = [r[:] for r in mat]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    r = _snf_inplace(a, rows, ncols, None, v)
    return [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """An independent basis of the sublattice of Z^dim spanned by ``gens``."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return []
    # matrix with generators as columns
    m = [[g[i] for g in gens] for i in range(dim)]
    a = [r[:] for r in m]
    ng = len(gens)
    v = [[int(i == j) for j in range(ng)] for i in range(ng)]
    r = _snf_inplace(a, dim, ng, None, v)
    mv = _matmul(m, v, ng)
    return [[mv[i][j] for i in range(dim)] for j in range(r)]


class LatticeSolver:
    """Membership and coordinates in the lattice spanned by ``gens`` in Z^dim.

    Factors the generator matrix once; each query is then a matrix-vector
    product plus divisibility checks."""

    def __init__(self, gens: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.gens = [list(g) for g in gens]
        nb = len(self.gens)
        self.a = [[g[i] for g in self.gens] for i in range(dim)]
        self.u = [[int(i == j) for j in range(dim)] for i in range(dim)]
        self.v = [[int(i == j) for j in range(nb)] for i in range(nb)]
        self.rank = _snf_inplace(self.a, dim, nb, self.u, self.v)

    def solve(self, target: Sequence[int]):
        """Integer t with sum t_j gens_j = target, or None."""
        nb, r = len(self.gens), self.rank
        y = [0] * nb
        for i, row in enumerate(self.u):
            w = sum(x * t for x, t in zip(row, target) if x)
            if i < r:
                q, rem = divmod(w, self.a[i][i])
                if rem:
                    return None
                y[i] = q
            elif w:
                return None
        return [sum(self.v[j][k] * y[k] for k in range(r)) for j in range(nb)]

    def __contains__(self, target) -> bool:
        return self.solve(target) is not None


def lattice_solve(basis: Sequence[Sequence[int]], target: Sequence[int], dim: int):
    """Integer coefficients t with sum t_j basis_j = target, or None."""
    return LatticeSolver(basis, dim).solve(target)


def lattice_contains(basis: Sequence[Sequence[int]], target: Sequence[int], dim: int) -> bool:
    return lattice_solve(basis, target, dim) is not None


def subquotient_invariants(outer: Sequence[Sequence[int]], inner: Sequence[Sequence[int]],
                           dim: int) -> "FgAbelianGroup":
    """Structure of outer / inner; ``outer`` must be an independent basis and
    every ``inner`` vector must lie in the span of ``outer``."""
    solver = LatticeSolver(outer, dim)
    coords = []
    for w in inner:
        t = solver.solve(w)
        if t is None:
            raise ValueError("inner lattice is not contained in outer lattice")
        coords.append(t)
    return FgAbelianGroup.cokernel_of_rows(coords, len(outer))


# --------------------------------------------------------------------------
# Arithmetic helpers


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical chain d1 | d2 | ... for a direct sum of cyclic groups Z/m."""
    powers: dict[int, list[int]] = {}
    for m in orders:
        if m < 0:
            raise ValueError("cyclic orders must be nonnegative")
        if m in (0, 1):
            continue
        for p, e in factorize(m).items():
            powers.setdefault(p, []).append(p ** e)
    length = max((len(v) for v in powers.values()), default=0)
    factors = [1] * length
    for v in powers.values():
        v.sort(reverse=True)
        for k, q in enumerate(v):
            factors[length - 1 - k] *= q
    return tuple(factors)


# --------------------------------------------------------------------------
# Groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with 1 < d1 | d2 | ... | dk.

    Equality of instances is isomorphism of groups."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", inv)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in inv:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariant factors {inv} do not form a divisibility chain")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int] = (), free_rank: int = 0) -> "FgAbelianGroup":
        """Canonicalize Z^free_rank + sum Z/m; an order of 0 counts as a Z."""
        orders = list(orders)
        free_rank += sum(1 for m in orders if m == 0)
        return cls(free_rank, _invariant_factors(orders))

    @classmethod
    def cokernel(cls, m: IntMatrix) -> "FgAbelianGroup":
        """Z^cols / (row space of m)."""
        return cls.cokernel_of_rows(m.to_rows(), m.cols)

    @classmethod
    def cokernel_of_rows(cls, rows: Sequence[Sequence[int]], ncols: int) -> "FgAbelianGroup":
        diag = snf_diagonal(rows, ncols)
        return cls.from_cyclic(diag, free_rank=ncols - len(diag))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return math.prod(self.invariant_factors) if self.free_rank == 0 else None

    def p_rank(self, p: int) -> int:
        """Number of cyclic factors of p-power order in the primary decomposition."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def primary_parts(self, p: int) -> list[int]:
        """Exponents e with Z/p^e a summand, descending."""
        out = []
        for d in self.invariant_factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                out.append(e)
        return sorted(out, reverse=True)

    def primes(self) -> list[int]:
        ps: set[int] = set()
        for d in self.invariant_factors:
            ps.update(factorize(d))
        return sorted(ps)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " ⊕ ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "FgAbelianGroup":
        """Inverse of ``str``; accepts ``⊕`` or ``+`` as separator and ``0`` or
        ``1`` for the trivial group."""
        text = text.strip()
        if text in ("0", "1", "trivial", ""):
            return cls()
        rank, orders = 0, []
        for part in re.split(r"⊕|\+", text):
            part = part.strip()
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)(?:\^(\d+))?", part) or re.fullmatch(r"\(Z/(\d+)\)\^(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse abelian group summand {part!r}")
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        return cls.from_cyclic(orders, rank)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAbelianGroup":
        return cls.from_cyclic(data.get("invariant_factors", ()), data.get("free_rank", 0))


def abelianization(p) -> FgAbelianGroup:
    """G_ab as the cokernel of the exponent-sum relation matrix of ``p``."""
    from .fpgroup import abelianized_relation_matrix

    return FgAbelianGroup.cokernel(abelianized_relation_matrix(p))


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    return FgAbelianGroup.from_cyclic(
        [d for g in groups for d in g.invariant_factors],
        sum(g.free_rank for g in groups),
    )


def tensor_product(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    orders = [math.gcd(x, y) for x in a.invariant_factors for y in b.invariant_factors]
    orders += list(a.invariant_factors) * b.free_rank
    orders += list(b.invariant_factors) * a.free_rank
    return FgAbelianGroup.from_cyclic(orders, a.free_rank * b.free_rank)


@dataclass(frozen=True)
class TorsionReport:
    p: int
    p_divisible: bool
    has_p_torsion: bool
    is_p_group: bool
    is_torsion: bool

    def to_json(self) -> dict:
        return {"p": self.p, "p_divisible": self.p_divisible, "has_p_torsion": self.has_p_torsion,
                "is_p_group": self.is_p_group, "is_torsion": self.is_torsion}


def torsion_divisibility_report(a: FgAbelianGroup, p: int) -> TorsionReport:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    finite = a.free_rank == 0
    has_p = any(d % p == 0 for d in a.invariant_factors)

    def p_power(d):
        while d % p == 0:
            d //= p
        return d == 1

    return TorsionReport(
        p=p,
        p_divisible=finite and not has_p,
        has_p_torsion=has_p,
        is_p_group=finite and all(p_power(d) for d in a.invariant_factors),
        is_torsion=finite,
    )


def is_quotient_of(b: FgAbelianGroup, a: FgAbelianGroup) -> bool:
    """Whether some surjection a -> b exists.

    Free summands of ``a`` not needed for b's free part can cover any cyclic
    summands of ``b``; the rest is partition containment prime by prime."""
    spare = a.free_rank - b.free_rank
    if spare < 0:
        return False
    for p in set(a.primes()) | set(b.primes()):
        la, lb = a.primary_parts(p), b.primary_parts(p)
        rest = lb[spare:]
        if len(rest) > len(la) or any(x > y for x, y in zip(rest, la)):
            return False
    return True
