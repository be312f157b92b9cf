import json
import random

import pytest

from moncurve.errors import BoundTooSmall, HypothesisNotVerified, LUndefined, NotStabilized
from moncurve.ideals import ideal_equal, make_ideal, saturate
from moncurve.invariants import (
    REPORT_KEYS,
    buchsbaum_level,
    check_level_hypothesis,
    check_strict_k_criterion,
    classify,
    macaulayfication_colon,
    macaulayfication_sections,
    rao_module,
    reduction_number,
    reduction_number_ring,
    reduction_number_rtilde,
    regularity,
    stabilization_degree,
)
from moncurve.semigroup import Monomial, from_bits, make_curve, parse_curve

from conftest import random_curve
from oracles import NaiveRing, naive_rtilde, naive_sumset

M = Monomial


# -- Macaulayfication ---------------------------------------------------------------

def test_sections_example_one(ex1):
    mac = macaulayfication_sections(ex1)
    assert mac.new_gens == (M(12, 30),)
    assert mac.l == 2
    assert mac.T == {2: (30,), 3: (51,)}
    assert mac.a_invariant == 3


def test_colon_example_two(ex2):
    mac = macaulayfication_colon(ex2, 13)
    assert mac.new_gens == (M(11, 15),)
    assert mac.l == 2
    assert mac.T == {2: (15,)}


def test_cm_examples(ex3):
    for curve in (ex3, parse_curve("4:0,1,2,3,4"), parse_curve("1:0,1")):
        for algo in (macaulayfication_sections, macaulayfication_colon):
            mac = algo(curve)
            assert mac.is_trivial and mac.new_gens == () and mac.a_invariant is None


def test_two_algorithms_agree_on_examples(ex1, ex2, ex3):
    for c in (ex1, ex2, ex3):
        assert macaulayfication_sections(c) == macaulayfication_colon(c)


def test_bound_below_stabilization(ex1):
    assert stabilization_degree(ex1) == 18
    with pytest.raises(BoundTooSmall):
        macaulayfication_sections(ex1, 17)
    assert macaulayfication_sections(ex1, 18).T == macaulayfication_sections(ex1).T


def test_definition_based_rtilde_agrees():
    # third route: z is kept when both z s^(pd) and z t^(qd) reach the ring
    # p, q <= n*d always suffice: each power adds one to the degree budget
    rng = random.Random(31)
    for _ in range(25):
        c = random_curve(rng, 14)
        ring = NaiveRing(c.d, c.G)
        mac = macaulayfication_sections(c)
        for n in range(min(c.d, 4) + 1):
            assert set(from_bits(mac.rtilde[n])) == naive_rtilde(c.d, c.G, n, max(1, n * c.d), ring)


def test_sparse_curve_needs_many_s_powers():
    # 18:0,13,18 has t-exponents that need many summands; the colon route must still agree
    c = make_curve(18, [0, 13, 18])
    assert macaulayfication_colon(c) == macaulayfication_sections(c)


def test_rtilde_is_a_ring():
    rng = random.Random(32)
    for _ in range(20):
        c = random_curve(rng, 20)
        mac = macaulayfication_sections(c)
        for n in range(4):
            for m in range(4):
                lhs = {a + b for a in from_bits(mac.level(n)) for b in from_bits(mac.level(m))}
                assert lhs <= set(from_bits(mac.level(n + m)))


# -- Buchsbaum level and criterion -------------------------------------------------

@pytest.mark.parametrize("name, k", [("ex1", 2), ("ex2", 1), ("ex3", 0)])
def test_buchsbaum_level(name, k, request):
    c = request.getfixturevalue(name)
    assert buchsbaum_level(c, macaulayfication_sections(c)) == k


def test_strict_criterion_example_one(ex1):
    mac = macaulayfication_sections(ex1)
    assert check_strict_k_criterion(ex1, mac, 2).holds
    below = check_strict_k_criterion(ex1, mac, 1)
    assert not below.holds and below.witness == 51


def test_strict_criterion_cm_is_trivial(ex3):
    mac = macaulayfication_sections(ex3)
    assert check_strict_k_criterion(ex3, mac, 0) == (True, None)


def test_level_hypothesis(ex1, ex2, ex3):
    assert 30 in naive_sumset(ex2.G, 4)
    assert 60 in naive_sumset(ex1.G, 4)
    for c in (ex1, ex2, ex3):
        assert check_level_hypothesis(c, macaulayfication_sections(c))


def test_several_new_generator_degrees():
    # 5:0,1,4,5 gains s^3t^2 and s^2t^3 in degree one and nothing new later
    c = parse_curve("5:0,1,4,5")
    mac = macaulayfication_sections(c)
    assert mac.new_gens == (M(3, 2), M(2, 3))
    assert mac.l == 1
    hunting = [c for c in (random_curve(random.Random(s), 30) for s in range(400))
               if macaulayfication_sections(c).new_gens and macaulayfication_sections(c).l is None]
    assert hunting, "expected a curve whose new generators span several degrees"
    c = hunting[0]
    mac = macaulayfication_sections(c)
    with pytest.raises(LUndefined):
        check_level_hypothesis(c, mac)
    with pytest.raises(LUndefined):
        check_strict_k_criterion(c, mac, 1)
    rep = classify(c)
    assert rep.l is None and rep.hypothesis_holds is None and rep.formula_branch == "a+1"


# -- Rao module, reduction numbers, regularity ----------------------------------------

def test_rao_module(ex1, ex2, ex3):
    assert rao_module(ex1, macaulayfication_sections(ex1)) == ((0, 0, 1, 1), 3)
    assert rao_module(ex2, macaulayfication_sections(ex2)) == ((0, 0, 1), 2)
    assert rao_module(ex3, macaulayfication_sections(ex3)) == ((), None)


def test_reduction_numbers(ex1, ex2, ex3):
    assert reduction_number_ring(ex1) == 4
    assert reduction_number_ring(ex2) == 3
    assert reduction_number_ring(ex3) == 3
    for d in (2, 3, 7):
        c = make_curve(d, range(d + 1))
        assert reduction_number_rtilde(c, macaulayfication_sections(c)) == 1


def test_reduction_number_needs_enough_levels(ex1):
    levels = [ex1.level_bits(n) for n in range(4)]
    with pytest.raises(NotStabilized):
        reduction_number(levels, ex1.d)


def test_regularity(ex1, ex2, ex3):
    for c, k, reg, branch in ((ex1, 2, 4, "k+l"), (ex2, 1, 3, "k+l"), (ex3, 0, 3, "cm")):
        mac = macaulayfication_sections(c)
        assert regularity(c, mac, k) == (reg, branch)
    with pytest.raises(HypothesisNotVerified):
        regularity(ex3, macaulayfication_sections(ex3), 0, force_kl=True)


def test_rational_quartic():
    # the smooth quartic in P^3 misses s^2t^2 in degree one and has reg 2
    rep = classify(parse_curve("4:0,1,3,4"))
    assert rep.rao_hilbert == (0, 1)
    assert (rep.k, rep.reg) == (1, 2)
    assert rep.new_generators == (M(2, 2),)


# -- classify -------------------------------------------------------------------------

def test_classify_example_one(ex1):
    rep = classify(ex1)
    assert (rep.k, rep.l, rep.a_invariant, rep.r_Q_R, rep.reg, rep.is_CM) == (2, 2, 3, 4, 4, False)
    assert rep.hypothesis_holds is True and rep.criterion_checked is True


def test_classify_example_two(ex2):
    rep = classify(ex2)
    assert (rep.k, rep.l, rep.a_invariant, rep.r_Q_R, rep.reg, rep.is_CM) == (1, 2, 2, 3, 3, False)


def test_report_dict_shape(ex3):
    d = classify(ex3).to_dict()
    assert tuple(d) == REPORT_KEYS
    assert d["a_invariant"] is None and d["rao_hilbert"] == [] and d["is_CM"] is True
    json.dumps(d)


def test_smooth_curves_reg_is_k_plus_one():
    rng = random.Random(33)
    for _ in range(30):
        c = random_curve(rng, 30, smooth=True)
        rep = classify(c)
        assert rep.reg == rep.k + 1


def test_cm_iff_principal_ideal_is_saturated():
    rng = random.Random(34)
    for c in [random_curve(rng, 20) for _ in range(25)]:
        rep = classify(c)
        I = make_ideal(c, [M(c.d, 0)])
        b = 6
        assert ideal_equal(saturate(I, M(0, c.d), b), I, b).holds == rep.is_CM
