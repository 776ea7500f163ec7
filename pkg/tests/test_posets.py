import random

import pytest

from krull.errors import CapacityError, InputError
from krull.posets import FinPoset

from oracles import all_downsets_brute, longest_chain_brute, random_poset


def test_chain_downsets_are_prefixes():
    # downsets of a k-chain are its k+1 prefixes
    for k in range(5):
        p = FinPoset.chain(k)
        assert len(p.downsets()) == k + 1


def test_two_antichain_has_four_downsets():
    p = FinPoset.antichain(2)
    assert sorted(p.downsets()) == [0b00, 0b01, 0b10, 0b11]


def test_single_point():
    p = FinPoset.antichain(1)
    assert p.downsets() == [0, 1]


def test_downsets_match_brute_force():
    rng = random.Random(7)
    for _ in range(40):
        p = random_poset(rng, rng.randint(0, 6))
        assert set(p.downsets()) == all_downsets_brute(p)


def test_longest_chain_matches_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        p = random_poset(rng, rng.randint(0, 6))
        assert p.longest_chain() == longest_chain_brute(p)


def test_up_down_closures():
    p = FinPoset.from_covers(["a", "b", "c"], [("a", "b"), ("a", "c")])
    ia = p.index("a")
    assert p.up[ia] == p.full_mask
    assert p.down[ia] == 1 << ia
    assert p.maximal_mask() == (1 << p.index("b")) | (1 << p.index("c"))
    assert p.minimal_mask() == 1 << ia


def test_antisymmetry_rejected():
    with pytest.raises(InputError):
        FinPoset(["a", "b"], {(0, 1), (1, 0)})


def test_capacity_cap():
    with pytest.raises(CapacityError):
        FinPoset.antichain(25)


def test_opposite_is_involution():
    rng = random.Random(3)
    for _ in range(20):
        p = random_poset(rng, rng.randint(0, 6))
        q = p.opposite().opposite()
        assert all(p.le(i, j) == q.le(i, j)
                   for i in range(p.n) for j in range(p.n))


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(0, 6)
        p = random_poset(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        pairs = {(perm[i], perm[j]) for i in range(n) for j in range(n)
                 if i != j and p.le(i, j)}
        q = FinPoset([f"q{i}" for i in range(n)], pairs)
        assert p.isomorphic(q)


def test_canonical_key_separates_nonisomorphic():
    chain = FinPoset.chain(3)
    vee = FinPoset.from_covers(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert not chain.isomorphic(vee)
    assert not FinPoset.antichain(3).isomorphic(chain)


def test_json_round_trip():
    p = FinPoset.from_covers(["r", "s", "t"], [("r", "s"), ("s", "t")])
    q = FinPoset.from_json(p.to_json())
    assert q.names == p.names
    assert all(p.le(i, j) == q.le(i, j) for i in range(3) for j in range(3))


def test_covers_are_minimal_relations():
    p = FinPoset.chain(3)
    assert p.covers() == [("c0", "c1"), ("c1", "c2")]
