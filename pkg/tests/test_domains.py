import itertools
import random

import pytest

from groupctl import (
    InputError,
    LinearOrder,
    Profile,
    is_dqc_under,
    is_qc_under,
    recognize_dqc,
    recognize_qc,
)

NON_C1P = Profile([[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def test_linear_order_validation():
    o = LinearOrder((2, 0, 1))
    assert o.position == (1, 2, 0)
    with pytest.raises(InputError):
        LinearOrder((0, 0, 1))
    with pytest.raises(InputError):
        LinearOrder((0, 3))


def test_is_qc_under_examples():
    ident = Profile([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    for perm in itertools.permutations(range(3)):
        assert is_qc_under(ident, LinearOrder(perm))

    assert not is_qc_under(NON_C1P, LinearOrder((0, 1, 2)))

    p = Profile([[0, 1, 1], [1, 1, 0], [0, 1, 0]])
    assert is_qc_under(p, LinearOrder((0, 1, 2)))


def test_is_dqc_under_examples():
    ones = Profile([[1, 1], [1, 1]])
    assert is_dqc_under(ones, LinearOrder((0, 1)))
    assert is_dqc_under(ones, LinearOrder((1, 0)))

    p = Profile([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert is_dqc_under(p, LinearOrder((0, 1, 2)))

    gap = Profile([[0, 1, 0], [1, 1, 1], [1, 1, 1]])
    assert not is_dqc_under(gap, LinearOrder((0, 1, 2)))


def test_recognize_qc_identity():
    ident = Profile([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    w = recognize_qc(ident)
    assert w is not None and is_qc_under(ident, w)


def test_recognize_qc_rejects_non_c1p():
    # all three 2-subsets of the columns would have to be intervals
    assert recognize_qc(NON_C1P) is None
    for perm in itertools.permutations(range(3)):
        assert not is_qc_under(NON_C1P, LinearOrder(perm))


def test_recognize_dqc_trivial_and_dual():
    ones = Profile([[1, 1], [1, 1]])
    w = recognize_dqc(ones)
    assert w is not None and is_dqc_under(ones, w)

    zeros = Profile([[0, 0], [0, 0]])
    w = recognize_dqc(zeros)
    assert w is not None and is_dqc_under(zeros, w)

    assert recognize_dqc(NON_C1P.complement()) is None


def _qc_by_permutations(p):
    for perm in itertools.permutations(range(p.n)):
        if is_qc_under(p, LinearOrder(perm)):
            return True
    return False


def test_recognizer_vs_permutation_oracle_small():
    rng = random.Random(61)
    for _ in range(300):
        n = rng.randint(1, 6)
        p = Profile([[1 if rng.random() < 0.45 else 0 for _ in range(n)] for _ in range(n)])
        w = recognize_qc(p)
        assert (w is not None) == _qc_by_permutations(p)
        if w is not None:
            assert is_qc_under(p, w)


def test_duality_of_recognizers():
    rng = random.Random(67)
    for _ in range(200):
        n = rng.randint(1, 7)
        p = Profile([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        wq = recognize_qc(p.complement())
        wd = recognize_dqc(p)
        assert (wq is None) == (wd is None)
        if wd is not None:
            assert is_dqc_under(p, wd)
            assert is_qc_under(p.complement(), wd)


def test_column_permutation_invariance():
    rng = random.Random(71)
    for seed in range(100):
        n = rng.randint(2, 8)
        from groupctl.cli import gen_qc

        p, _ = gen_qc(n, seed)
        perm = rng.sample(range(n), n)
        m = p.matrix()
        relabeled = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                relabeled[perm[a]][perm[b]] = m[a][b]
        w = recognize_qc(Profile(relabeled))
        assert w is not None and is_qc_under(Profile(relabeled), w)


def test_trivial_rows_do_not_block():
    p = Profile([[1, 1, 1], [0, 0, 0], [0, 1, 1]])
    w = recognize_qc(p)
    assert w is not None and is_qc_under(p, w)
