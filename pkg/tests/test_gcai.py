import random

import pytest

from groupctl import (
    CapacityError,
    GcaiInstance,
    InputError,
    LinearOrder,
    Profile,
    Rule,
    apply_reduction_rule_csr,
    apply_reduction_rule_lsr,
    recognize_dqc,
    recognize_qc,
    solve_auto,
    solve_bruteforce,
    solve_csr_fpt,
    solve_csr_qc,
    solve_dqc,
    solve_lsr_fpt,
    verify,
)
from groupctl.cli import gen_dqc, gen_qc, gen_random

RULES = (Rule.CSR, Rule.LSR)

# one red vertex adjacent to two blues; reds qualify everything, blues
# qualify only the red
STAR = GcaiInstance(
    Profile([[1, 1, 1], [1, 0, 0], [1, 0, 0]]), (1, 2), (1, 2), 1
)


def _random_instance(rng, n):
    p = Profile([[1 if rng.random() < rng.choice((0.25, 0.5, 0.75)) else 0 for _ in range(n)] for _ in range(n)])
    tsize = rng.randint(1, n)
    T = sorted(rng.sample(range(n), tsize))
    S = sorted(rng.sample(T, rng.randint(1, tsize)))
    k = rng.randint(0, n - tsize)
    return GcaiInstance(p, S, T, k)


def test_instance_invariants():
    with pytest.raises(InputError):
        GcaiInstance(Profile([[1]]), (0,), (), 0)  # S not within T
    with pytest.raises(InputError):
        GcaiInstance(Profile([[1]]), (), (1,), 0)  # T out of range
    inst = GcaiInstance(Profile([[1, 0], [0, 1]]), (0,), (0,), 99)
    assert inst.k == 1  # clamped to |N\T|
    assert inst.pool == (1,)


def test_verify_cases():
    settled = GcaiInstance(Profile([[1, 1], [1, 1]]), (0,), (0, 1), 0)
    assert verify(settled, Rule.CSR, ())

    assert not verify(STAR, Rule.CSR, (1,))  # member of T
    assert not verify(STAR, Rule.CSR, (0, 1))
    assert not verify(STAR, Rule.CSR, (5,))
    assert verify(STAR, Rule.CSR, (0,))


def test_bruteforce_star():
    res = solve_bruteforce(STAR, Rule.CSR)
    assert res.certificate == (0,) and res.optimal_cost == 1

    tight = GcaiInstance(STAR.profile, STAR.S, STAR.T, 0)
    assert not solve_bruteforce(tight, Rule.CSR).feasible

    settled = GcaiInstance(Profile([[1, 1], [1, 1]]), (0,), (0, 1), 0)
    res = solve_bruteforce(settled, Rule.CSR)
    assert res.certificate == () and res.optimal_cost == 0


def test_bruteforce_cap():
    p = gen_random(30, 0.5, 1)
    inst = GcaiInstance(p, (0,), (0,), 29)
    with pytest.raises(CapacityError):
        solve_bruteforce(inst, Rule.CSR, cap=10)


def test_bruteforce_methods_agree():
    rng = random.Random(101)
    for _ in range(40):
        n = rng.randint(17, 22)
        p = gen_random(n, 0.3, rng.randrange(10**6))
        T = sorted(rng.sample(range(n), rng.randint(1, 4)))
        S = sorted(rng.sample(T, rng.randint(1, len(T))))
        inst = GcaiInstance(p, S, T, rng.randint(0, 3))
        for rule in RULES:
            a = solve_bruteforce(inst, rule, method="python")
            b = solve_bruteforce(inst, rule, method="vector")
            assert (a.certificate, a.optimal_cost) == (b.certificate, b.optimal_cost)


def test_reduction_rule_csr():
    quiet = GcaiInstance(Profile([[0, 0], [0, 0]]), (0, 1), (0, 1), 0)
    assert apply_reduction_rule_csr(quiet).S == (0, 1)

    one_way = GcaiInstance(Profile([[0, 1], [0, 0]]), (0, 1), (0, 1), 0)
    assert apply_reduction_rule_csr(one_way).S == (0,)

    mutual = GcaiInstance(Profile([[0, 1], [1, 0]]), (0, 1), (0, 1), 0)
    assert apply_reduction_rule_csr(mutual).S == (0,)

    # self-qualification alone never shrinks S under the CSR rule
    selfie = GcaiInstance(Profile([[1, 0], [0, 1]]), (0, 1), (0, 1), 0)
    assert apply_reduction_rule_csr(selfie).S == (0, 1)


def test_reduction_rule_lsr():
    selfie = GcaiInstance(Profile([[1, 0], [0, 0]]), (0, 1), (0, 1), 0)
    assert apply_reduction_rule_lsr(selfie).S == (1,)

    all_self = GcaiInstance(Profile([[1, 0], [0, 1]]), (0, 1), (0, 1), 0)
    reduced = apply_reduction_rule_lsr(all_self)
    assert reduced.S == ()
    res = solve_lsr_fpt(all_self)
    assert res.certificate == () and res.optimal_cost == 0


def test_reduction_rules_preserve_answers():
    rng = random.Random(103)
    for _ in range(150):
        inst = _random_instance(rng, rng.randint(2, 7))
        for rule, reducer in ((Rule.CSR, apply_reduction_rule_csr), (Rule.LSR, apply_reduction_rule_lsr)):
            before = solve_bruteforce(inst, rule)
            after = solve_bruteforce(reducer(inst), rule)
            assert before.feasible == after.feasible
            assert before.optimal_cost == after.optimal_cost


def test_csr_fpt_basics():
    settled = GcaiInstance(Profile([[1, 1], [1, 1]]), (0,), (0, 1), 0)
    res = solve_csr_fpt(settled)
    assert res.certificate == () and res.optimal_cost == 0

    res = solve_csr_fpt(STAR)
    assert res.certificate == (0,) and res.optimal_cost == 1

    # everyone is disqualified by someone in T, so no guess survives
    hopeless = GcaiInstance(Profile([[0, 0], [0, 0]]), (0,), (0, 1), 0)
    assert not solve_csr_fpt(hopeless).feasible


def test_lsr_fpt_basics():
    # r(0)=0, r(1)=1, r(2)=2, b1=3, b2=4
    m = [[0] * 5 for _ in range(5)]
    m[0][0] = m[0][1] = m[0][2] = 1
    m[1][3] = 1
    m[2][4] = 1
    gadget = GcaiInstance(Profile(m), (3, 4), (1, 2, 3, 4), 1)
    res = solve_lsr_fpt(gadget)
    assert res.certificate == (0,) and res.optimal_cost == 1

    no_self = GcaiInstance(Profile([[0, 1], [1, 0]]), (0,), (0, 1), 1)
    assert not solve_lsr_fpt(no_self).feasible


def test_fpt_vs_bruteforce_random():
    rng = random.Random(107)
    for _ in range(200):
        inst = _random_instance(rng, rng.randint(1, 7))
        for rule, fpt in ((Rule.CSR, solve_csr_fpt), (Rule.LSR, solve_lsr_fpt)):
            b = solve_bruteforce(inst, rule)
            f = fpt(inst)
            assert (b.feasible, b.optimal_cost) == (f.feasible, f.optimal_cost)


def test_monotone_in_k():
    rng = random.Random(109)
    for _ in range(80):
        inst = _random_instance(rng, rng.randint(2, 7))
        base = solve_csr_fpt(inst)
        if base.feasible and inst.k < len(inst.pool):
            wider = GcaiInstance(inst.profile, inst.S, inst.T, inst.k + 1)
            res = solve_csr_fpt(wider)
            assert res.feasible and res.optimal_cost == base.optimal_cost


def test_qc_solver_requires_witness():
    p = Profile([[1, 1, 0], [0, 1, 1], [1, 0, 1]])  # row 2 is not contiguous
    inst = GcaiInstance(p, (0,), (0,), 1)
    with pytest.raises(InputError):
        solve_csr_qc(inst, LinearOrder((0, 1, 2)))


def test_qc_solver_single_target():
    p, order = gen_qc(6, 12)
    T = (0, 1)
    inst = GcaiInstance(p, (0,), T, 2)
    a = solve_csr_qc(inst, order)
    b = solve_csr_fpt(inst)
    assert (a.feasible, a.optimal_cost) == (b.feasible, b.optimal_cost)
    assert a.strategy == "qc-csr"


def test_qc_solver_vs_bruteforce():
    rng = random.Random(113)
    for trial in range(120):
        n = rng.randint(2, 7)
        p, order = gen_qc(n, 9_000 + trial)
        tsize = rng.randint(1, n)
        T = sorted(rng.sample(range(n), tsize))
        S = sorted(rng.sample(T, rng.randint(1, tsize)))
        inst = GcaiInstance(p, S, T, rng.randint(0, n - tsize))
        b = solve_bruteforce(inst, Rule.CSR)
        q = solve_csr_qc(inst, order)
        assert (b.feasible, b.optimal_cost) == (q.feasible, q.optimal_cost)


def test_dqc_solver_requires_witness():
    p = Profile([[0, 1, 0], [1, 1, 1], [1, 1, 1]])  # row 0 has split 0s
    with pytest.raises(InputError):
        solve_dqc(GcaiInstance(p, (0,), (0,), 1), Rule.CSR, LinearOrder((0, 1, 2)))


def test_dqc_trivial_cases():
    ones = Profile([[1, 1], [1, 1]])
    inst = GcaiInstance(ones, (0, 1), (0, 1), 0)
    for rule in RULES:
        res = solve_dqc(inst, rule, LinearOrder((0, 1)))
        assert res.certificate == ()


def test_dqc_vs_bruteforce_decision():
    rng = random.Random(127)
    for trial in range(120):
        n = rng.randint(2, 7)
        p, order = gen_dqc(n, 8_000 + trial)
        tsize = rng.randint(1, n)
        T = sorted(rng.sample(range(n), tsize))
        S = sorted(rng.sample(T, rng.randint(1, tsize)))
        inst = GcaiInstance(p, S, T, rng.randint(0, n - tsize))
        for rule in RULES:
            b = solve_bruteforce(inst, rule)
            d = solve_dqc(inst, rule, order)
            assert b.feasible == d.feasible
            if d.feasible:
                assert verify(inst, rule, d.certificate)


def test_auto_dispatch_labels():
    p, _ = gen_qc(8, 1)  # QC but not DQC for this seed
    assert recognize_dqc(p) is None and recognize_qc(p) is not None
    inst = GcaiInstance(p, (0,), (0, 1, 2), 2)
    assert solve_auto(inst, Rule.CSR).strategy == "qc-csr"

    p2 = gen_random(13, 0.08, 3)  # neither QC nor DQC for this seed
    assert recognize_qc(p2) is None and recognize_dqc(p2) is None
    big_s = GcaiInstance(p2, list(range(10)), list(range(10)), 3)
    assert solve_auto(big_s, Rule.CSR).strategy == "bruteforce"
    assert solve_auto(big_s, Rule.LSR).strategy == "bruteforce"


def test_auto_agrees_with_bruteforce():
    rng = random.Random(131)
    for _ in range(100):
        inst = _random_instance(rng, rng.randint(2, 7))
        for rule in RULES:
            b = solve_bruteforce(inst, rule)
            a = solve_auto(inst, rule)
            assert b.feasible == a.feasible
            if a.feasible:
                assert verify(inst, rule, a.certificate)
