import random

import pytest

from certoset.effort import EffortCeilingExceeded
from certoset.kleenean import (
    Kleenean,
    Side,
    Sierpinski,
    countable_or,
    countable_select,
    indicator_sequence,
    kleene_and,
    kleene_not,
    kleene_or,
    select_binary,
)


def test_constants():
    assert Kleenean.const(True).query(0) is True
    assert Kleenean.const(False).query(3) is False
    assert Kleenean.const(None).query(10**6) is None


def test_true_at_commits_then_stays():
    k = Kleenean.true_at(5)
    assert k.query(4) is None
    assert k.query(5) is True
    assert k.query(4) is True  # latched commitment


def test_kleene_tables():
    T, F, B = (Kleenean.const(v) for v in (True, False, None))
    assert kleene_or(B, T).query(0) is True
    assert kleene_or(Kleenean.const(False), Kleenean.true_at(0)).query(0) is True
    assert kleene_and(T, Kleenean.const(True)).query(0) is True
    assert kleene_and(F, B).query(0) is False
    assert kleene_and(Kleenean.const(None), Kleenean.const(False)).query(0) is False
    assert kleene_or(Kleenean.const(None), Kleenean.const(False)).query(7) is None
    assert kleene_not(Kleenean.const(None)).query(9) is None
    assert kleene_not(Kleenean.const(True)).query(0) is False


def test_countable_or_all_bottom():
    k = countable_or(lambda i: Kleenean.const(None))
    for e in (0, 3, 11):
        assert k.query(e) is None


def test_countable_or_finds_witness():
    # only index 5 fires, from effort 2 on: the dovetail needs effort
    # max(5, 2) to see it
    k = countable_or(lambda i: Kleenean.true_at(2) if i == 5 else Kleenean.const(None))
    assert k.query(4) is None
    assert k.query(5) is True


def test_countable_or_ignores_false():
    seq = {0: Kleenean.const(False), 1: Kleenean.const(True)}
    k = countable_or(lambda i: seq.get(i, Kleenean.const(None)))
    assert k.query(1) is True


def test_countable_or_soundness_replay():
    # whenever the disjunction fires at effort e, replaying the schedule
    # finds a witness index at effort <= e
    rng = random.Random(42)
    for _ in range(50):
        commits = {i: rng.randint(0, 8) for i in rng.sample(range(10), 3)}

        def seq(i, commits=commits):
            if i in commits:
                return Kleenean.true_at(commits[i])
            return Kleenean.const(None)

        k = countable_or(seq)
        e = next(e for e in range(20) if k.query(e) is True)
        assert any(i <= e and c <= e for i, c in commits.items())


def test_select_binary_sides():
    assert select_binary(Kleenean.const(True), Kleenean.const(None)) is Side.LEFT
    assert select_binary(Kleenean.const(None), Kleenean.true_at(7)) is Side.RIGHT
    # simultaneous truth: the schedule probes the left side first
    assert select_binary(Kleenean.true_at(3), Kleenean.true_at(2)) is Side.RIGHT
    assert select_binary(Kleenean.true_at(2), Kleenean.true_at(2)) is Side.LEFT


def test_select_binary_ceiling():
    with pytest.raises(EffortCeilingExceeded):
        select_binary(Kleenean.const(None), Kleenean.const(None), max_effort=20)


def test_countable_select_examples():
    assert countable_select(lambda i: Kleenean.const(True) if i == 0 else Kleenean.const(None)) == 0
    assert (
        countable_select(lambda i: Kleenean.true_at(0) if i == 42 else Kleenean.const(None)) == 42
    )
    # index 2 commits at effort 1, index 0 only at effort 100: the dovetail
    # reaches (2, effort 2) long before (0, effort 100)
    def seq(i):
        if i == 2:
            return Kleenean.true_at(1)
        if i == 0:
            return Kleenean.true_at(100)
        return Kleenean.const(None)

    assert countable_select(seq) == 2


def test_countable_select_deterministic():
    def make():
        return lambda i: Kleenean.true_at(3) if i in (4, 7) else Kleenean.const(None)

    first = countable_select(make())
    assert all(countable_select(make()) == first for _ in range(5))


def test_countable_select_ceiling():
    with pytest.raises(EffortCeilingExceeded):
        countable_select(lambda i: Kleenean.const(None), max_effort=15)


def test_indicator_sequence():
    f = indicator_sequence(Kleenean.const(True))
    assert f(0) == 1
    g = indicator_sequence(Kleenean.const(None))
    assert all(g(n) == 0 for n in range(10))
    h = indicator_sequence(Kleenean.true_at(5))
    assert h(4) == 0 and h(5) == 1


def test_sierpinski_never_false():
    s = Sierpinski.from_kleenean(Kleenean.const(False))
    assert all(s.query(e) is None for e in range(6))
    assert Sierpinski.from_kleenean(Kleenean.const(True)).query(0) is True
    assert Sierpinski.defined().holds_by(0)
    assert not Sierpinski.undefined().holds_by(12)


def test_monotone_commitment_random_pairs():
    rng = random.Random(7)
    for _ in range(200):
        commit = rng.randint(0, 12)
        value = rng.choice([True, False])
        k = Kleenean(lambda e, c=commit, v=value: v if e >= c else None)
        n = rng.randint(0, 15)
        m = rng.randint(n, 18)
        vn = k.query(n)
        vm = k.query(m)
        if vn is not None:
            assert vm == vn


def test_effort_validation():
    with pytest.raises(ValueError):
        Kleenean.const(True).query(-1)
