"""Group-theoretic reduction procedures run on concrete finite groups.

* :func:`torsion_kill_step` / :func:`solvable_reduction` repeatedly factor out
  the normal closure of all elements whose order involves only the primes of
  the current abelianization, until the abelianization is trivial.
* :func:`lcs_tensor_epimorphism_check` verifies, exhaustively, that
  ``a gamma_{i+1} (x) g [G,G] -> [a, g] gamma_{i+2}`` is a well-defined,
  bilinear, surjective map F_i (x) G_ab -> F_{i+1} on lower central factors.
* :func:`property_propagation_check` tests "G_ab is a p-group implies G is a
  p-group" for nilpotent G.
* :func:`torsion_condition_classifier` reports, prime by prime, the
  divisibility / abelianized-torsion conditions for a finite presented group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgroup import FgAbelianGroup, abelianization, factorize, is_prime, torsion_divisibility_report
from .fpgroup import Presentation
from .permgroup import (
    DEFAULT_MAX_COSETS,
    CosetSpace,
    PermutationGroup,
    comm,
    commutator_subgroup,
    lower_central_series,
    mul,
    normal_closure,
    perm_order,
    power,
    quotient_abelian_invariants,
    subgroup_series,
    to_permutation_group,
    todd_coxeter,
)

__all__ = [
    "ReductionStep",
    "ReductionTrace",
    "group_abelianization",
    "torsion_kill_step",
    "solvable_reduction",
    "lcs_tensor_epimorphism_check",
    "property_propagation_check",
    "torsion_condition_classifier",
]


def group_abelianization(g: PermutationGroup) -> FgAbelianGroup:
    return quotient_abelian_invariants(g, commutator_subgroup(g, g, g))


def _is_pi_number(n: int, primes: set[int]) -> bool:
    return all(p in primes for p in factorize(n))


def _kill(g: PermutationGroup, primes: set[int]) -> tuple[PermutationGroup, PermutationGroup]:
    targets = [x for x in g.sorted_elements if _is_pi_number(perm_order(x), primes)]
    n = normal_closure(g, targets)
    return CosetSpace(g, n).quotient_action(), n


def torsion_kill_step(g: PermutationGroup, primes) -> PermutationGroup:
    """g / N, with N generated by every element whose order has all prime
    divisors in ``primes``; realized as the regular action on N-cosets."""
    primes = set(primes)
    if not primes:
        raise ValueError("prime list is empty")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return _kill(g, primes)[0]


@dataclass(frozen=True)
class ReductionStep:
    order: int
    abelianization: FgAbelianGroup
    primes_used: tuple[int, ...]
    killed_count: int  # order of the normal subgroup factored out at this step

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "abelianization": self.abelianization.to_json(),
            "abelianization_text": str(self.abelianization),
            "primes_used": list(self.primes_used),
            "killed_count": self.killed_count,
        }


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def terminal_order(self) -> int:
        return self.steps[-1].order

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "terminal_order": self.terminal_order}

    def to_text(self) -> str:
        lines = [f"{'step':>4}  {'order':>8}  {'abelianization':<24} {'primes':<10} {'killed':>7}"]
        for k, s in enumerate(self.steps):
            primes = ",".join(map(str, s.primes_used)) or "-"
            lines.append(f"{k:>4}  {s.order:>8}  {str(s.abelianization):<24} {primes:<10} {s.killed_count:>7}")
        lines.append(f"terminal order {self.terminal_order}")
        return "\n".join(lines)


def solvable_reduction(g: PermutationGroup) -> ReductionTrace:
    """Iterate torsion killing with the primes of the current abelianization.

    Each step's primes divide the group order, so by Cauchy a nontrivial
    element is killed and the order strictly drops; the loop stops at the
    first trivial abelianization."""
    trace = ReductionTrace()
    current = g
    while True:
        ab = group_abelianization(current)
        if ab.is_trivial:
            trace.steps.append(ReductionStep(current.order, ab, (), 0))
            return trace
        primes = tuple(ab.primes())
        nxt, n = _kill(current, set(primes))
        trace.steps.append(ReductionStep(current.order, ab, primes, n.order))
        current = nxt


# --------------------------------------------------------------------------
# Lower central factors


@dataclass
class EpimorphismReport:
    level: int
    source_left: FgAbelianGroup   # F_i
    source_right: FgAbelianGroup  # G_ab
    target: FgAbelianGroup        # F_{i+1}
    well_defined: bool
    bilinear: bool
    surjective: bool
    witness: list[tuple[int, int, int]]  # (F_i coset, G_ab coset, F_{i+1} coset)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "F_i": str(self.source_left),
            "G_ab": str(self.source_right),
            "F_i_plus_1": str(self.target),
            "well_defined": self.well_defined,
            "bilinear": self.bilinear,
            "surjective": self.surjective,
            "witness": [list(w) for w in self.witness],
        }


def lcs_tensor_epimorphism_check(g: PermutationGroup, i: int) -> EpimorphismReport:
    """Exhaustively check the commutator map F_i x G_ab -> F_{i+1}.

    Well-definedness is checked over every element of every coset (not just
    representatives); bilinearity on all pairs of coset representatives; the
    witness table lists the image of every representative pair."""
    if i < 1:
        raise ValueError("level must be a positive integer")
    lcs = lower_central_series(g, max_terms=i + 2)
    gi, gi1, gi2 = lcs[i - 1], lcs[i], lcs[i + 1]
    g2 = lcs[1]
    fi = CosetSpace(gi, gi1)
    gab = CosetSpace(g, g2)
    fi1 = CosetSpace(gi1, gi2)
    target_index = fi1.index_of

    def image(a, x):
        c = comm(a, x)
        # [gamma_i, G] lies in gamma_{i+1}
        return target_index[c]

    well_defined = True
    table: dict[tuple[int, int], int] = {}
    for a in gi.sorted_elements:
        ka = fi[a]
        for x in g.sorted_elements:
            key = (ka, gab[x])
            val = image(a, x)
            prev = table.setdefault(key, val)
            if prev != val:
                well_defined = False

    def coset_mul(space: CosetSpace, k1, k2):
        return space[mul(space.reps[k1], space.reps[k2])]

    bilinear = True
    for ka in range(len(fi)):
        for kb in range(len(fi)):
            kab = coset_mul(fi, ka, kb)
            for kx in range(len(gab)):
                lhs = table[(kab, kx)]
                rhs = coset_mul(fi1, table[(ka, kx)], table[(kb, kx)])
                if lhs != rhs:
                    bilinear = False
    for ka in range(len(fi)):
        for kx in range(len(gab)):
            for ky in range(len(gab)):
                lhs = table[(ka, coset_mul(gab, kx, ky))]
                rhs = coset_mul(fi1, table[(ka, kx)], table[(ka, ky)])
                if lhs != rhs:
                    bilinear = False

    # image subgroup generated by the commutators, together with gamma_{i+2}
    gens = [comm(fi.reps[ka], gab.reps[kx]) for ka in range(len(fi)) for kx in range(len(gab))]
    hit = gi1.subgroup(list(gi2.generators) + gens)
    surjective = hit.order == gi1.order

    witness = sorted((ka, kx, v) for (ka, kx), v in table.items())
    return EpimorphismReport(
        level=i,
        source_left=quotient_abelian_invariants(gi, gi1),
        source_right=quotient_abelian_invariants(g, g2),
        target=quotient_abelian_invariants(gi1, gi2),
        well_defined=well_defined,
        bilinear=bilinear,
        surjective=surjective,
        witness=witness,
    )


@dataclass(frozen=True)
class PropagationReport:
    p: int
    nilpotent: bool
    ab_is_p_group: bool
    g_is_p_group: bool
    consistent: bool

    def to_json(self) -> dict:
        return {"p": self.p, "nilpotent": self.nilpotent, "ab_is_p_group": self.ab_is_p_group,
                "g_is_p_group": self.g_is_p_group, "consistent": self.consistent}


def property_propagation_check(g: PermutationGroup, p: int) -> PropagationReport:
    """``consistent`` is False only for a nilpotent g whose abelianization is a
    p-group while g is not, which cannot happen for a correct implementation."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    series = subgroup_series(g)
    ab = quotient_abelian_invariants(g, series.lower_central[1] if len(series.lower_central) > 1
                                     else series.lower_central[0])
    ab_p = torsion_divisibility_report(ab, p).is_p_group
    g_p = set(factorize(g.order)) <= {p}
    return PropagationReport(p, series.nilpotent, ab_p, g_p,
                             consistent=not (series.nilpotent and ab_p and not g_p))


# --------------------------------------------------------------------------
# Per-prime torsion conditions


@dataclass(frozen=True)
class PrimeConditions:
    p: int
    tor_p_nontrivial: bool
    p_divisible: bool
    tor_p_ab_nontrivial: bool

    @property
    def condition_met(self) -> bool:
        return (not self.p_divisible) or self.tor_p_ab_nontrivial

    def to_json(self) -> dict:
        return {"p": self.p, "tor_p_nontrivial": self.tor_p_nontrivial,
                "p_divisible": self.p_divisible, "tor_p_ab_nontrivial": self.tor_p_ab_nontrivial,
                "condition_met": self.condition_met}


@dataclass
class ClassifierReport:
    order: int
    abelianization: FgAbelianGroup
    is_torsion: bool
    per_prime: list[PrimeConditions]

    def to_json(self) -> dict:
        return {"order": self.order, "abelianization": str(self.abelianization),
                "is_torsion": self.is_torsion, "per_prime": [c.to_json() for c in self.per_prime]}


def torsion_condition_classifier(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> ClassifierReport:
    """For each prime dividing |N|: does N have p-torsion, is x -> x^p onto,
    and does the abelianization have p-torsion.

    The group is realized by coset enumeration, so it must be finite; a finite
    group is torsion, and the per-prime rows are reported regardless."""
    g = to_permutation_group(todd_coxeter(p, max_cosets=max_cosets))
    ab = abelianization(p)
    elements = g.sorted_elements
    rows = []
    for q in sorted(factorize(g.order)) if g.order > 1 else []:
        tor = any(perm_order(x) % q == 0 for x in elements)
        powers = {power(x, q) for x in elements}
        rows.append(PrimeConditions(
            p=q,
            tor_p_nontrivial=tor,
            p_divisible=len(powers) == len(elements),
            tor_p_ab_nontrivial=torsion_divisibility_report(ab, q).has_p_torsion,
        ))
    return ClassifierReport(g.order, ab, True, rows)
