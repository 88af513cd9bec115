"""Independent reference computations.

Nothing here imports the package apart from the presentation parser and word
type, which the group models need in order to read relators.  Groups come from
hand-built permutation models, SNF from determinantal divisors, and homology
ranks from dense elimination over Q and GF(p) on boundary matrices built
from scratch.  ``scripts/freeze_oracles.py`` writes the outputs to
``tests/data/oracle_values.json``; tests compare the package against that file.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

# --------------------------------------------------------------------------
# Permutation models (0-based images, points are moved left to right)


def _cycles(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


def _compose(p, q):
    # first p, then q
    return tuple(q[i] for i in p)


def _inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _regular(elements, mult, gens):
    """Right-regular permutation images of ``gens`` on ``elements``."""
    idx = {e: k for k, e in enumerate(elements)}
    return [tuple(idx[mult(e, g)] for e in elements) for g in gens]


def _quaternions():
    # (a, b, c, d) = a + bi + cj + dk with entries in {-1, 0, 1}
    def mult(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)
    units = []
    for k in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[k] = s
            units.append(tuple(v))
    return _regular(units, mult, [(0, 1, 0, 0), (0, 0, 1, 0)])


def _heisenberg():
    # (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]] over F_3
    def mult(x, y):
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2) % 3, (b1 + b2) % 3, (c1 + c2 + a1 * b2) % 3)
    elems = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    return _regular(elems, mult, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


MODELS = {
    "trivial": [],
    "cyclic5": [_cycles(5, [0, 1, 2, 3, 4])],
    "s3": [_cycles(3, [0, 1]), _cycles(3, [1, 2])],
    "s4": [_cycles(4, [0, 1]), _cycles(4, [1, 2, 3])],
    "a4": [_cycles(4, [0, 1], [2, 3]), _cycles(4, [0, 1, 2])],
    "a5": [_cycles(5, [0, 1], [2, 3]), _cycles(5, [0, 2, 4])],
    "d4": [_cycles(4, [0, 1, 2, 3]), _cycles(4, [0, 2])],
    "q8": _quaternions(),
    "heis27": _heisenberg(),
}
MODEL_DEGREE = {"trivial": 1}


def evaluate(word_letters, images, degree):
    """Image of a word (list of (generator, exponent)) in the model."""
    p = tuple(range(degree))
    for g, e in word_letters:
        q = images[g] if e > 0 else _inverse(images[g])
        for _ in range(abs(e)):
            p = _compose(p, q)
    return p


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def model_degree(name):
    gens = MODELS[name]
    return len(gens[0]) if gens else MODEL_DEGREE.get(name, 1)


def relators_hold(name, presentation) -> bool:
    gens, d = MODELS[name], model_degree(name)
    ident = tuple(range(d))
    return all(evaluate(r.letters, gens, d) == ident for r in presentation.relators)


def brute_force_order(name) -> int:
    return len(closure(MODELS[name], model_degree(name)))


def _commutator(a, b):
    return _compose(_compose(_compose(_inverse(a), _inverse(b)), a), b)


def brute_force_abelian_invariants(name) -> list[int]:
    """Invariant factors of G/[G,G] from counts of p-power torsion."""
    d = model_degree(name)
    elems = closure(MODELS[name], d)
    comms = {_commutator(a, b) for a in elems for b in elems}
    derived = closure(list(comms), d)
    # cosets of the derived subgroup
    cosets = {}
    for x in elems:
        key = min(_compose(h, x) for h in derived)
        cosets[key] = True
    reps = list(cosets)
    order = len(reps)

    def in_derived_power(x, k):
        p = tuple(range(d))
        for _ in range(k):
            p = _compose(p, x)
        return p in derived

    orders = []
    n = order
    primes = []
    q = 2
    while n > 1:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1
    for p in primes:
        # c[j] = #{x : x^(p^j) = 1} = p^(sum_i min(e_i, j))
        counts = [1]
        j = 1
        while True:
            c = sum(1 for x in reps if in_derived_power(x, p ** j))
            counts.append(c)
            if j > 1 and counts[-1] == counts[-2]:
                break
            j += 1
        logs = []
        for c in counts:
            e = 0
            while c > 1:
                c //= p
                e += 1
            logs.append(e)
        # number of cyclic factors of exponent >= j is logs[j] - logs[j-1]
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(len(ge) - 1):
            orders += [p ** (j + 1)] * (ge[j] - ge[j + 1])
    # combine primary parts into invariant factors
    by_prime = {}
    for o in orders:
        p = next(q for q in primes if o % q == 0)
        by_prime.setdefault(p, []).append(o)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for p, vals in by_prime.items():
        vals = sorted(vals)
        for k, v in enumerate(vals):
            factors[width - len(vals) + k] *= v
    return [f for f in factors if f > 1]


# --------------------------------------------------------------------------
# Smith normal form by determinantal divisors


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def determinantal_snf(m) -> list[int]:
    """Nonzero SNF diagonal: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, _det([[m[i][j] for j in c] for i in r]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


# --------------------------------------------------------------------------
# Homology ranks by dense elimination


def _rank(matrix, p=None) -> int:
    m = [[Fraction(x) if p is None else x % p for x in row] for row in matrix]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = (1 / m[rank][c]) if p is None else pow(m[rank][c], -1, p)
        m[rank] = [(x * inv) if p is None else (x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [(a - f * b) if p is None else (a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _closure_faces(facets):
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    return faces


def relative_boundaries(facets, rel_facets=()):
    """Cells per degree and dense boundary matrices of (K, A)."""
    k = _closure_faces(facets)
    a = _closure_faces(rel_facets)
    cells = {}
    for s in sorted(k - a):
        cells.setdefault(len(s) - 1, []).append(s)
    top = max(cells) if cells else 0
    for d in range(top + 1):
        cells.setdefault(d, [])
    mats = {}
    for d in range(1, top + 1):
        index = {s: i for i, s in enumerate(cells[d - 1])}
        mat = [[0] * len(cells[d]) for _ in cells[d - 1]]
        for j, s in enumerate(cells[d]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face in index:
                    mat[index[face]][j] += (-1) ** i
        mats[d] = mat
    return cells, mats


def betti_numbers(facets, rel_facets=(), p=None) -> list[int]:
    """Ranks of H_k over Q (p None) or GF(p)."""
    cells, mats = relative_boundaries(facets, rel_facets)
    top = max(cells)
    ranks = {d: (_rank(mats[d], p) if mats.get(d) and cells[d] and cells[d - 1] else 0)
             for d in range(1, top + 1)}
    return [len(cells[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(top + 1)]


def torsion_counts(facets, rel_facets=(), p=2) -> list[int]:
    """Number of p-primary cyclic summands in H_k(Z), via universal coefficients."""
    q = betti_numbers(facets, rel_facets)
    fp = betti_numbers(facets, rel_facets, p)
    out = []
    prev = 0
    for k in range(len(q)):
        t = fp[k] - q[k] - prev
        out.append(t)
        prev = t
    return out
