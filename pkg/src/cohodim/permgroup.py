"""Concrete finite groups: Todd-Coxeter coset enumeration, permutation groups,
subgroup series and abelian quotient invariants.

Permutations are tuples over ``range(degree)`` acting on the right: the
product ``mul(p, q)`` applies ``p`` first, so a word g1 g2 ... acts on a coset
as coset * g1 * g2 * ... .  This matches the coset action produced by
:func:`todd_coxeter`.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .abgroup import FgAbelianGroup, factorize
from .errors import ResourceExceeded
from .fpgroup import Presentation, Word

__all__ = [
    "ResourceExceeded",
    "CosetTable",
    "PermutationGroup",
    "SeriesReport",
    "todd_coxeter",
    "to_permutation_group",
    "subgroup_series",
    "lower_central_series",
    "derived_series",
    "normal_closure",
    "commutator_subgroup",
    "quotient_abelian_invariants",
    "CosetSpace",
    "mul",
    "inv",
    "comm",
    "perm_order",
    "DEFAULT_MAX_COSETS",
    "DEFAULT_ELEMENT_CAP",
]

DEFAULT_MAX_COSETS = 200_000
DEFAULT_ELEMENT_CAP = 1_000_000

Perm = tuple[int, ...]


# --------------------------------------------------------------------------
# Permutation arithmetic


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def comm(a: Perm, b: Perm) -> Perm:
    """[a, b] = a^-1 b^-1 a b."""
    return mul(mul(inv(a), inv(b)), mul(a, b))


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inv(p), -k
    out = tuple(range(len(p)))
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            order = order * n // math.gcd(order, n)
    return order


# --------------------------------------------------------------------------
# Coset enumeration


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; ``action[c][2k]`` is c * g_k, ``action[c][2k+1]``
    is c * g_k^-1.  Coset 0 is the subgroup itself."""

    generator_names: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def num_cosets(self) -> int:
        return len(self.action)

    @property
    def is_closed(self) -> bool:
        n = self.num_cosets
        return all(x is not None and 0 <= x < n for row in self.action for x in row)

    def to_csv(self) -> str:
        """One row per coset, one column per generator and inverse; 1-based."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["coset"]
        for name in self.generator_names:
            header += [name, f"{name}^-1"]
        w.writerow(header)
        for c, row in enumerate(self.action):
            w.writerow([c + 1] + [x + 1 for x in row])
        return buf.getvalue()


class _Enumerator:
    """HLT enumeration with lookahead and union-find coincidence handling."""

    def __init__(self, ngens: int, relators: list[list[int]], max_cosets: int):
        self.ncols = 2 * ngens
        self.relators = relators
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.high_water = 1

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int):
        if self.live >= self.max_cosets:
            self.lookahead()
            if self.live >= self.max_cosets:
                raise ResourceExceeded(
                    f"coset table exceeded {self.max_cosets} cosets; group may be infinite "
                    "or the cap too low", self.high_water)
            if not self.is_live(c) or self.table[c][x] is not None:
                return
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.high_water = max(self.high_water, self.live)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def merge(self, a: int, b: int, queue: list[int]):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self.merge(a, b, queue)
        k = 0
        while k < len(queue):
            dead = queue[k]
            k += 1
            row = self.table[dead]
            for x in range(self.ncols):
                d = row[x]
                if d is None:
                    continue
                xi = x ^ 1
                if self.table[d][xi] == dead:
                    self.table[d][xi] = None
                mu, nu = self.rep(dead), self.rep(d)
                if self.table[mu][x] is not None:
                    self.merge(nu, self.table[mu][x], queue)
                elif self.table[nu][xi] is not None:
                    self.merge(mu, self.table[nu][xi], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][xi] = mu

    def scan(self, c: int, word: list[int], fill: bool) -> None:
        t = self.table
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                # forward trace met the backward one; both name c * word[:j+1]
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])
            if not self.is_live(c):
                return
            if not (self.is_live(f) and self.is_live(b)):
                # a lookahead inside define merged cosets under us; rescan
                f, i = c, 0
                b, j = c, len(word) - 1

    def lookahead(self):
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for r in self.relators:
                self.scan(c, r, fill=False)
                if not self.is_live(c):
                    break

    def run(self, subgroup: list[list[int]]):
        for w in subgroup:
            self.scan(0, w, fill=True)
        c = 0
        while c < len(self.table):
            if self.is_live(c):
                for r in self.relators:
                    self.scan(c, r, fill=True)
                    if not self.is_live(c):
                        break
                if self.is_live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
                            if not self.is_live(c):
                                break
            c += 1

    def standardized(self) -> list[list[int]]:
        """Renumber live cosets in breadth-first order from coset 0."""
        order = {0: 0}
        queue = [0]
        k = 0
        while k < len(queue):
            c = queue[k]
            k += 1
            for x in range(self.ncols):
                d = self.table[c][x]
                if d is None:
                    raise RuntimeError("coset table not closed after enumeration")
                d = self.rep(d)
                if d not in order:
                    order[d] = len(queue)
                    queue.append(d)
        return [[order[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in queue]


def _letters(w: Word) -> list[int]:
    out = []
    for g, e in w.letters:
        col = 2 * g if e > 0 else 2 * g + 1
        out.extend([col] * abs(e))
    return out


def todd_coxeter(p: Presentation, subgroup: Sequence[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of <subgroup> in the group presented by ``p``.

    Raises :class:`ResourceExceeded` when more than ``max_cosets`` cosets are
    alive at once, even after a lookahead pass."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    for w in subgroup:
        if w.max_generator() >= p.num_generators:
            raise ValueError(f"subgroup word {w!r} uses an unknown generator")
    e = _Enumerator(p.num_generators, [_letters(r) for r in p.relators if r], max_cosets)
    e.run([_letters(w) for w in subgroup if w])
    rows = e.standardized()
    return CosetTable(p.generator_names, tuple(tuple(r) for r in rows))


# --------------------------------------------------------------------------
# Permutation groups


@dataclass(frozen=True)
class PermutationGroup:
    """Group generated by ``generators`` on ``range(degree)``.

    The element set is built lazily by breadth-first closure and cached;
    ``element_cap`` bounds it."""

    degree: int
    generators: tuple[Perm, ...]
    element_cap: int = field(default=DEFAULT_ELEMENT_CAP, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.degree < 1:
            raise ValueError("degree must be positive")
        target = list(range(self.degree))
        for g in gens:
            if len(g) != self.degree or sorted(g) != target:
                raise ValueError(f"{g} is not a permutation of degree {self.degree}")

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    @cached_property
    def elements(self) -> frozenset[Perm]:
        return frozenset(self._closure())

    def _closure(self) -> list[Perm]:
        seen = {self.identity}
        out = [self.identity]
        k = 0
        gens = [g for g in self.generators if g != self.identity]
        while k < len(out):
            x = out[k]
            k += 1
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    if len(out) > self.element_cap:
                        raise ResourceExceeded(
                            f"group has more than {self.element_cap} elements", len(out))
        return out

    @cached_property
    def sorted_elements(self) -> tuple[Perm, ...]:
        return tuple(sorted(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.elements

    def subgroup(self, gens: Iterable[Perm]) -> "PermutationGroup":
        return PermutationGroup(self.degree, tuple(gens), self.element_cap)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.elements <= other.elements

    def is_normal_in(self, g: "PermutationGroup") -> bool:
        h = self.elements
        return all(mul(mul(inv(x), a), x) in h for a in self.generators for x in g.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(mul(a, b) == mul(b, a) for a in gens for b in gens)

    def element_orders(self) -> Counter:
        return Counter(perm_order(x) for x in self.elements)

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, ngens={len(self.generators)})"

    @classmethod
    def from_cycles(cls, degree: int, *gens: Sequence[Sequence[int]], one_based: bool = True):
        """Build from cycle notation, e.g. ``from_cycles(3, [(1, 2)], [(1, 2, 3)])``."""
        out = []
        shift = 1 if one_based else 0
        for cycles in gens:
            p = list(range(degree))
            for cyc in cycles:
                for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                    p[a - shift] = b - shift
            out.append(tuple(p))
        return cls(degree, tuple(out))


def to_permutation_group(t: CosetTable, element_cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
    """Right-multiplication action of the generators on the cosets of ``t``."""
    if not t.is_closed:
        raise ValueError("coset table is not closed")
    n = t.num_cosets
    gens = tuple(tuple(t.action[c][2 * k] for c in range(n)) for k in range(len(t.generator_names)))
    return PermutationGroup(n, gens, element_cap)


def normal_closure(g: PermutationGroup, elems: Iterable[Perm]) -> PermutationGroup:
    """Smallest subgroup of ``g`` containing ``elems`` and normal in ``g``."""
    elems = [tuple(e) for e in elems]
    for e in elems:
        if e not in g:
            raise ValueError(f"{e} is not an element of the ambient group")
    gens: list[Perm] = []
    h = g.subgroup(())
    members = set(h.elements)
    queue = list(elems)
    while queue:
        x = queue.pop()
        if x in members:
            continue
        gens.append(x)
        h = g.subgroup(gens)
        members = set(h.elements)
        for s in g.generators:
            queue.append(mul(mul(inv(s), x), s))
        # conjugates of earlier generators by g are already queued; the new
        # elements only require conjugating generators, which we just did
    return h


def commutator_subgroup(h: PermutationGroup, k: PermutationGroup,
                        ambient: PermutationGroup) -> PermutationGroup:
    """[h, k] for h, k normal in ``ambient``: normal closure of generator commutators."""
    return normal_closure(ambient, [comm(a, b) for a in h.generators for b in k.generators])


@dataclass
class SeriesReport:
    lower_central: list[PermutationGroup]
    derived: list[PermutationGroup]
    nilpotent: bool
    solvable: bool
    nilpotency_class: int | None
    derived_length: int | None

    def to_json(self) -> dict:
        return {
            "lower_central_orders": [h.order for h in self.lower_central],
            "derived_orders": [h.order for h in self.derived],
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "class": self.nilpotency_class,
            "derived_length": self.derived_length,
        }


def lower_central_series(g: PermutationGroup, max_terms: int | None = None) -> list[PermutationGroup]:
    """gamma_1 = g, gamma_{i+1} = [gamma_i, g], until it stabilizes.

    With ``max_terms`` the list is padded with the stable term up to that length."""
    series = [g]
    while True:
        nxt = commutator_subgroup(series[-1], g, g)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    if max_terms is not None:
        series += [series[-1]] * (max_terms - len(series))
    return series


def derived_series(g: PermutationGroup) -> list[PermutationGroup]:
    series = [g]
    while True:
        h = series[-1]
        nxt = commutator_subgroup(h, h, h)
        if nxt.order == h.order:
            break
        series.append(nxt)
    return series


def subgroup_series(g: PermutationGroup) -> SeriesReport:
    lcs = lower_central_series(g)
    ds = derived_series(g)
    nil = lcs[-1].order == 1
    sol = ds[-1].order == 1
    return SeriesReport(
        lower_central=lcs,
        derived=ds,
        nilpotent=nil,
        solvable=sol,
        nilpotency_class=len(lcs) - 1 if nil else None,
        derived_length=len(ds) - 1 if sol else None,
    )


class CosetSpace:
    """Right cosets N x of a subgroup N inside ``g``, indexed deterministically."""

    def __init__(self, g: PermutationGroup, n: PermutationGroup):
        self.g, self.n = g, n
        self.index_of: dict[Perm, int] = {}
        self.reps: list[Perm] = []
        nel = n.sorted_elements
        for x in g.sorted_elements:
            if x in self.index_of:
                continue
            k = len(self.reps)
            self.reps.append(x)
            for h in nel:
                self.index_of[mul(h, x)] = k

    def __len__(self) -> int:
        return len(self.reps)

    def __getitem__(self, x: Perm) -> int:
        return self.index_of[x]

    def quotient_action(self) -> PermutationGroup:
        """Regular action of g/N on the cosets (requires N normal)."""
        gens = []
        for s in self.g.generators:
            gens.append(tuple(self.index_of[mul(r, s)] for r in self.reps))
        return PermutationGroup(len(self.reps), tuple(gens), self.g.element_cap)


def _abelian_invariants_from_orders(order_of: dict, total: int) -> FgAbelianGroup:
    """Invariants of a finite abelian group from its element orders.

    For each prime p the number of elements killed by p^k is prod p^min(k, e_i),
    which determines the multiset of p-exponents e_i."""
    orders = []
    for p, top in factorize(total).items() if total > 1 else []:
        counts = [1]
        for k in range(1, top + 1):
            counts.append(sum(1 for o in order_of.values() if (p ** k) % o == 0))
        # ranks[k] = number of cyclic p-parts with exponent >= k
        ranks = {}
        for k in range(1, top + 1):
            ratio, r = counts[k] // counts[k - 1], 0
            while ratio > 1:
                ratio //= p
                r += 1
            ranks[k] = r
        for k in range(1, top + 1):
            exactly = ranks[k] - ranks.get(k + 1, 0)
            orders += [p ** k] * exactly
    return FgAbelianGroup.from_cyclic(orders)


def quotient_abelian_invariants(g: PermutationGroup, n: PermutationGroup) -> FgAbelianGroup:
    """Invariant factors of the abelian group g/n, read off the orders of the
    cosets (not from any relation matrix)."""
    if not n.is_subgroup_of(g):
        raise ValueError("subgroup is not contained in the group")
    if not n.is_normal_in(g):
        raise ValueError("subgroup is not normal")
    nel = n.elements
    if not all(comm(a, b) in nel for a in g.generators for b in g.generators):
        raise ValueError("quotient is not abelian")
    cs = CosetSpace(g, n)
    order_of = {}
    for k, r in enumerate(cs.reps):
        o, x = 1, r
        while x not in nel:
            x = mul(x, r)
            o += 1
        order_of[k] = o
    return _abelian_invariants_from_orders(order_of, len(cs))
