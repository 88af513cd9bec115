import pytest

from cohodim.abgroup import FgAbelianGroup
from cohodim.fpgroup import parse_presentation
from cohodim.permgroup import PermutationGroup, subgroup_series, to_permutation_group, todd_coxeter
from cohodim.reduction import (
    group_abelianization,
    lcs_tensor_epimorphism_check,
    property_propagation_check,
    solvable_reduction,
    torsion_condition_classifier,
    torsion_kill_step,
)

from conftest import FINITE_GROUPS, corpus_presentation


def realize(name):
    return to_permutation_group(todd_coxeter(corpus_presentation(name)))


def test_kill_step_examples():
    assert torsion_kill_step(realize("s3"), [2]).order == 1
    a4 = realize("a4")
    q = torsion_kill_step(a4, [2])
    assert q.order == 3 and group_abelianization(q) == FgAbelianGroup.from_cyclic([3])
    assert torsion_kill_step(realize("cyclic5"), [2, 3]).order == 5


def test_kill_step_errors():
    with pytest.raises(ValueError):
        torsion_kill_step(realize("s3"), [])
    with pytest.raises(ValueError):
        torsion_kill_step(realize("s3"), [4])


@pytest.mark.parametrize("name", FINITE_GROUPS)
@pytest.mark.parametrize("primes", [[2], [3], [2, 3], [5]])
def test_kill_step_order_divides(name, primes):
    g = realize(name)
    assert g.order % torsion_kill_step(g, primes).order == 0


def test_reduction_examples():
    s4 = solvable_reduction(realize("s4"))
    assert s4.terminal_order == 1
    trivial = solvable_reduction(realize("trivial"))
    assert len(trivial.steps) == 1 and trivial.terminal_order == 1
    a5 = solvable_reduction(realize("a5"))
    assert len(a5.steps) == 1 and a5.terminal_order == 60


@pytest.mark.parametrize("name", FINITE_GROUPS)
def test_reduction_trace_invariants(name):
    trace = solvable_reduction(realize(name))
    orders = [s.order for s in trace.steps]
    assert all(a > b for a, b in zip(orders, orders[1:]))
    assert trace.steps[-1].abelianization.is_trivial
    for s in trace.steps[:-1]:
        assert s.primes_used == tuple(s.abelianization.primes())
    text = trace.to_text()
    assert text.splitlines()[-1] == f"terminal order {trace.terminal_order}"
    js = trace.to_json()
    assert js["terminal_order"] == trace.terminal_order and len(js["steps"]) == len(orders)


def test_epimorphism_examples():
    r = lcs_tensor_epimorphism_check(realize("d4"), 1)
    assert r.surjective and r.well_defined and r.bilinear
    assert r.source_left == FgAbelianGroup.from_cyclic([2, 2])
    assert r.target == FgAbelianGroup.from_cyclic([2])
    ab = lcs_tensor_epimorphism_check(realize("cyclic5"), 1)
    assert ab.surjective and ab.target.is_trivial
    h = lcs_tensor_epimorphism_check(realize("heis27"), 1)
    assert h.surjective and h.target == FgAbelianGroup.from_cyclic([3])


def test_epimorphism_witness_table_covers_all_pairs():
    r = lcs_tensor_epimorphism_check(realize("q8"), 1)
    assert len(r.witness) == 4 * 4
    assert {v for _, _, v in r.witness} == {0, 1}


def test_epimorphism_rejects_bad_level():
    with pytest.raises(ValueError):
        lcs_tensor_epimorphism_check(realize("d4"), 0)


@pytest.mark.parametrize("name", ["d4", "q8", "heis27", "cyclic5"])
def test_epimorphism_at_every_level(name):
    g = realize(name)
    cls = subgroup_series(g).nilpotency_class
    for i in range(1, cls + 1):
        r = lcs_tensor_epimorphism_check(g, i)
        assert r.surjective and r.well_defined and r.bilinear


def test_propagation_examples():
    r = property_propagation_check(realize("d4"), 2)
    assert (r.ab_is_p_group, r.g_is_p_group, r.consistent) == (True, True, True)
    s = property_propagation_check(realize("s3"), 2)
    assert s.ab_is_p_group and not s.g_is_p_group and not s.nilpotent and s.consistent
    z3 = PermutationGroup.from_cycles(3, [(1, 2, 3)])
    t = property_propagation_check(z3, 3)
    assert (t.ab_is_p_group, t.g_is_p_group, t.consistent) == (True, True, True)
    with pytest.raises(ValueError):
        property_propagation_check(z3, 9)


@pytest.mark.parametrize("name", FINITE_GROUPS)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_propagation_always_consistent(name, p):
    assert property_propagation_check(realize(name), p).consistent


def test_classifier_examples():
    q8 = torsion_condition_classifier(corpus_presentation("q8"))
    assert q8.is_torsion
    (row,) = q8.per_prime
    assert (row.p, row.tor_p_nontrivial, row.p_divisible, row.tor_p_ab_nontrivial) == (2, True, False, True)
    c3 = torsion_condition_classifier(parse_presentation("< x | x^3 >"))
    assert [(r.p, r.p_divisible) for r in c3.per_prime] == [(3, False)]
    s3 = torsion_condition_classifier(corpus_presentation("s3"))
    three = next(r for r in s3.per_prime if r.p == 3)
    assert not three.tor_p_ab_nontrivial and not three.p_divisible and three.condition_met


def test_classifier_trivial_and_coprime():
    assert torsion_condition_classifier(corpus_presentation("trivial")).per_prime == []
    a5 = torsion_condition_classifier(corpus_presentation("a5"))
    assert [r.p for r in a5.per_prime] == [2, 3, 5]
    # A5 is perfect, so no prime meets the abelianized-torsion condition
    assert not any(r.tor_p_ab_nontrivial for r in a5.per_prime)
