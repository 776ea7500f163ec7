import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from krull.errors import InputError
from krull.lattices import (FinDistLattice, GlueDiagram, LatIdeal,
                            boolean_closure, brouwer_minus, complement,
                            difference, downset_lattice, glue,
                            heitmann_lattice, heyting_implies,
                            is_weakly_jacobson, jacobson_preceq,
                            jacobson_radical, lattice_ops, negation, opposite,
                            opposite_elem, quotient, transporter)
from krull.posets import FinPoset

from oracles import jacobson_radical_brute, random_poset


def chain3():
    # the lattice 0 < x < 1 (downsets of a 2-point chain)
    T = downset_lattice(FinPoset.chain(2))
    return T, T.elem(0b01)


def bool4():
    T = downset_lattice(FinPoset.antichain(2))
    return T


def random_lattice(rng, max_points=6):
    return downset_lattice(random_poset(rng, rng.randint(0, max_points)))


# --- downset_lattice ---

def test_downset_lattice_sizes():
    assert downset_lattice(FinPoset.antichain(1)).size() == 2
    for k in range(1, 5):
        assert downset_lattice(FinPoset.chain(k)).size() == k + 1
    assert bool4().size() == 4


def test_spec_of_downset_lattice_is_the_poset():
    # prime ideals correspond to points: the quotient to a single point
    # is 2-element, one per point
    rng = random.Random(2)
    T = random_lattice(rng)
    assert T.base.n == len(T.join_irreducibles())


# --- lattice_ops ---

def test_lattice_ops_bounds_and_reflexivity():
    T, x = chain3()
    ops = lattice_ops(T, x, T.zero)
    assert ops["meet"] == T.zero and ops["join"] == x
    assert lattice_ops(T, x, x)["leq"]
    assert lattice_ops(T, x, T.one)["meet"] == x
    assert lattice_ops(T, x, T.zero)["join"] == x


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_distributivity(seed):
    rng = random.Random(seed)
    T = random_lattice(rng)
    elems = T.elements()
    if not elems:
        return
    a, b, c = (rng.choice(elems) for _ in range(3))
    assert (a & (b | c)) == ((a & b) | (a & c))


def test_distributivity_exhaustive_small():
    rng = random.Random(97)
    for _ in range(6):
        T = random_lattice(rng, 4)
        elems = T.elements()
        for a in elems:
            for b in elems:
                for c in elems:
                    assert (a & (b | c)) == ((a & b) | (a & c))
                    assert (a | (b & c)) == ((a | b) & (a | c))


# --- quotient and the Prop-1.2-style preorder oracle ---

def quotient_preorder_brute(T, zeros, ones, a, b):
    # a <= b in T/(J=0,U=1) iff some finite J0, U0 give a /\ meet(U0) <= b \/ join(J0)
    zmasks = [z.mask for z in zeros]
    umasks = [u.mask for u in ones]
    full = T.base.full_mask
    for jr in range(len(zmasks) + 1):
        for j0 in itertools.combinations(zmasks, jr):
            for ur in range(len(umasks) + 1):
                for u0 in itertools.combinations(umasks, ur):
                    lhs = a.mask
                    for u in u0:
                        lhs &= u
                    rhs = b.mask
                    for z in j0:
                        rhs |= z
                    if lhs & ~rhs == 0:
                        return True
    _ = full
    return False


def test_quotient_identity_and_trivial():
    T, x = chain3()
    q = quotient(T, [], [])
    assert q.target.base.n == T.base.n
    q = quotient(T, [T.one], [])
    assert q.target.is_trivial()


def test_quotient_bool4_by_atom():
    T = bool4()
    atom = T.elem(0b01)
    q = quotient(T, [atom], [])
    assert q.target.size() == 2


def test_quotient_preorder_matches_formula():
    rng = random.Random(9)
    for _ in range(25):
        T = random_lattice(rng, 5)
        elems = T.elements()
        if len(elems) < 2:
            continue
        zeros = [rng.choice(elems) for _ in range(rng.randint(0, 2))]
        ones = [rng.choice(elems) for _ in range(rng.randint(0, 2))]
        q = quotient(T, zeros, ones)
        for _ in range(20):
            a, b = rng.choice(elems), rng.choice(elems)
            assert q.preceq(a, b) == quotient_preorder_brute(T, zeros, ones, a, b)


# --- transporter / difference ---

def test_transporter_trivial_cases():
    rng = random.Random(4)
    T = random_lattice(rng)
    for b in T.elements():
        assert transporter(T, b, T.zero) == T.one
        assert transporter(T, b, b) == T.one


def test_transporter_is_largest():
    rng = random.Random(13)
    for _ in range(15):
        T = random_lattice(rng, 5)
        elems = T.elements()
        for _ in range(10):
            a, b = rng.choice(elems), rng.choice(elems)
            t = transporter(T, b, a)
            assert (t & a).leq(b)
            for x in elems:
                if (x & a).leq(b):
                    assert x.leq(t)


def test_difference_chain_example():
    T, x = chain3()
    # least z with 1 <= z \/ x, by scanning all elements
    want = min((z for z in T.elements() if (z | x) == T.one),
               key=lambda e: bin(e.mask).count("1"))
    assert difference(T, T.one, x) == want == T.one


def test_difference_is_least():
    rng = random.Random(17)
    for _ in range(15):
        T = random_lattice(rng, 5)
        elems = T.elements()
        for _ in range(10):
            a, b = rng.choice(elems), rng.choice(elems)
            d = difference(T, b, a)
            assert b.leq(d | a)
            for x in elems:
                if b.leq(x | a):
                    assert d.leq(x)


# --- Jacobson radical ---

def test_jacobson_radical_of_unit_ideal():
    T, _ = chain3()
    J = LatIdeal.generated(T, [T.one])
    assert jacobson_radical(T, J).members == J.members


def test_jacobson_radical_boolean_zero():
    T = bool4()
    J = LatIdeal.generated(T, [])
    assert jacobson_radical(T, J).members == {0}


def test_jacobson_radical_chain():
    T, x = chain3()
    J = LatIdeal.generated(T, [])
    assert jacobson_radical(T, J).members == {0, x.mask}


def test_jacobson_radical_matches_brute_force():
    rng = random.Random(23)
    for _ in range(12):
        T = random_lattice(rng, 4)
        elems = T.elements()
        gens = [rng.choice(elems) for _ in range(rng.randint(0, 2))] if elems else []
        J = LatIdeal.generated(T, gens)
        got = jacobson_radical(T, J)
        assert got.members == jacobson_radical_brute(T.base, set(J.members))


def test_jacobson_radical_unit_law():
    rng = random.Random(29)
    for _ in range(12):
        T = random_lattice(rng, 4)
        gens = [rng.choice(T.elements())] if T.base.n else []
        J = LatIdeal.generated(T, gens)
        R = jacobson_radical(T, J)
        assert (T.one in R) == (T.one in J)
        assert J.members <= R.members


def test_jacobson_intersection_law():
    # J(I cap J) = J(I) cap J(J)
    rng = random.Random(31)
    for _ in range(10):
        T = random_lattice(rng, 4)
        elems = T.elements()
        if not elems:
            continue
        I = LatIdeal.generated(T, [rng.choice(elems)])
        J = LatIdeal.generated(T, [rng.choice(elems)])
        lhs = jacobson_radical(T, I.intersect(J))
        rhs = jacobson_radical(T, I).intersect(jacobson_radical(T, J))
        assert lhs.members == rhs.members


# --- Heitmann lattice ---

def test_heitmann_boolean_is_identity():
    T = bool4()
    he = heitmann_lattice(T)
    assert he.target.base.n == T.base.n
    assert is_weakly_jacobson(T)


def test_heitmann_chain_collapses():
    T, x = chain3()
    he = heitmann_lattice(T)
    assert he.target.size() == 2
    assert he.push(x) == he.target.zero  # x identified with 0


def test_heitmann_trivial():
    T = downset_lattice(FinPoset.antichain(0))
    assert heitmann_lattice(T).target.is_trivial()


def test_heitmann_preorder_matches_jacobson_formula():
    rng = random.Random(37)
    for _ in range(15):
        T = random_lattice(rng, 5)
        he = heitmann_lattice(T)
        elems = T.elements()
        for _ in range(15):
            a, b = rng.choice(elems), rng.choice(elems)
            assert he.preceq(a, b) == jacobson_preceq(T, a, b)


def test_heitmann_fact_one_unit():
    rng = random.Random(41)
    for _ in range(15):
        T = random_lattice(rng, 5)
        he = heitmann_lattice(T)
        for a in T.elements():
            assert (he.push(a) == he.target.one) == (a == T.one)


def test_heitmann_idempotent():
    rng = random.Random(43)
    for _ in range(15):
        T = random_lattice(rng, 6)
        he = heitmann_lattice(T)
        he2 = heitmann_lattice(he.target)
        assert he2.target.base.isomorphic(he.target.base)
        # He(T/(J(0)=0)) = He(T)
        J0 = jacobson_radical(T, LatIdeal.generated(T, []))
        q = quotient(T, [T.elem(J0.top_mask)], [])
        assert heitmann_lattice(q.target).target.base.isomorphic(he.target.base)


# --- Heyting / Brouwer / Boolean ---

def test_heyting_axioms_from_text():
    rng = random.Random(47)
    for _ in range(10):
        T = random_lattice(rng, 5)
        elems = T.elements()
        if not elems:
            continue
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert heyting_implies(T, a, a) == T.one
        lhs = heyting_implies(T, a, b & c)
        rhs = heyting_implies(T, a, b) & heyting_implies(T, a, c)
        assert lhs == rhs


def test_heyting_adjunction_exhaustive_small():
    rng = random.Random(53)
    for _ in range(8):
        T = random_lattice(rng, 4)
        elems = T.elements()
        for a in elems:
            for b in elems:
                imp = heyting_implies(T, a, b)
                assert (imp & a) == (a & b)
                for x in elems:
                    assert x.leq(imp) == (x & a).leq(b)


def test_brouwer_minimality():
    rng = random.Random(59)
    for _ in range(8):
        T = random_lattice(rng, 4)
        elems = T.elements()
        for a in elems:
            for b in elems:
                d = brouwer_minus(T, a, b)
                assert a.leq(d | b)
                for x in elems:
                    assert d.leq(x) == a.leq(x | b)


def test_chain_negation_is_zero():
    T, x = chain3()
    assert negation(T, x) == T.zero
    assert complement(T, x) is None


def test_boolean_closure():
    T = bool4()
    B, emb = boolean_closure(T)
    assert B.size() == 4 and set(emb) == set(m for m in T.base.downsets())
    T2, x = chain3()
    B2, emb2 = boolean_closure(T2)
    assert B2.size() == 4
    # embedding preserves bounds and both operations
    for m1 in T2.base.downsets():
        for m2 in T2.base.downsets():
            assert emb2[m1 | m2] == emb2[m1] | emb2[m2]
            assert emb2[m1 & m2] == emb2[m1] & emb2[m2]
    T3 = downset_lattice(FinPoset.antichain(0))
    B3, _ = boolean_closure(T3)
    assert B3.is_trivial()


def test_opposite():
    T, x = chain3()
    assert opposite(T).base.isomorphic(T.base)  # chains are self-opposite
    B = bool4()
    assert opposite(B).base.isomorphic(B.base)
    rng = random.Random(61)
    for _ in range(10):
        L = random_lattice(rng, 5)
        Lo = opposite(L)
        assert opposite(Lo).base.isomorphic(L.base)
        # the anti-isomorphism swaps meet and join
        elems = L.elements()
        if not elems:
            continue
        a, b = rng.choice(elems), rng.choice(elems)
        assert opposite_elem(L, Lo, a | b) == (opposite_elem(L, Lo, a) & opposite_elem(L, Lo, b))


# --- gluing ---

def decompose(T, masks, mode):
    """Cut T along principal ideals (or filters) into a glue diagram."""
    base = T.base
    pieces, piece_points = [], []
    for m in masks:
        pts = base.full_mask & ~m if mode == "ideal" else m
        piece_points.append(pts)
        pieces.append(FinDistLattice(base.subposet(pts)))
    overlaps = {}
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            if i == j:
                continue
            # image of the j-th cut element inside piece i
            keep = [t for t in range(base.n) if piece_points[i] >> t & 1]
            s = 0
            for local, t in enumerate(keep):
                if mj >> t & 1:
                    s |= 1 << local
            overlaps[(i, j)] = s
    return GlueDiagram(pieces, overlaps, mode=mode)


def test_glue_single_lattice():
    T, _ = chain3()
    glued, _ = glue(GlueDiagram([T], {}, mode="ideal"))
    assert glued.base.isomorphic(T.base)


def test_glue_boolean_by_complements():
    T = bool4()
    a = T.elem(0b01)
    na = complement(T, a)
    diagram = decompose(T, [a.mask, na.mask], "ideal")
    glued, projections = glue(diagram)
    assert glued.base.isomorphic(T.base)
    assert len(projections) == 2


def test_glue_round_trip_random():
    rng = random.Random(67)
    done = 0
    while done < 30:
        T = random_lattice(rng, 6)
        elems = T.elements()
        k = rng.randint(1, 3)
        picks = [rng.choice(elems).mask for _ in range(k)]
        meet_all = T.base.full_mask
        for m in picks:
            meet_all &= m
        if meet_all != 0:
            picks.append(0)  # force a covering
        glued, _ = glue(decompose(T, picks, "ideal"))
        assert glued.base.isomorphic(T.base)
        done += 1


def test_glue_filter_mode_round_trip():
    rng = random.Random(71)
    for _ in range(15):
        T = random_lattice(rng, 6)
        elems = T.elements()
        picks = [rng.choice(elems).mask for _ in range(2)]
        join_all = 0
        for m in picks:
            join_all |= m
        if join_all != T.base.full_mask:
            picks.append(T.base.full_mask)
        glued, _ = glue(decompose(T, picks, "filter"))
        assert glued.base.isomorphic(T.base)


def test_glue_heitmann_example_diagram():
    # fan and chain overlapping at the shared minimal point (open gluing)
    fan = FinPoset.from_covers(["root", "f1", "f2", "f3"],
                               [("root", "f1"), ("root", "f2"), ("root", "f3")])
    chain = FinPoset.from_covers(["root", "c1", "c2"],
                                 [("root", "c1"), ("c1", "c2")])
    Tf, Tc = FinDistLattice(fan), FinDistLattice(chain)
    s = 0b0001  # the downset {root} in both
    glued, _ = glue(GlueDiagram([Tf, Tc], {(0, 1): s, (1, 0): s}, mode="filter"))
    from oracles import heitmann_poset
    assert glued.base.isomorphic(heitmann_poset(2))


def test_glue_triple_commutation_rejected():
    T1 = FinDistLattice(FinPoset.antichain(2, "s"))  # points s0, s1
    T2 = FinDistLattice(FinPoset(["s0", "s1"], set()))
    T3 = FinDistLattice(FinPoset(["s0"], set()))
    full2 = 0b11
    overlaps = {
        (0, 1): full2, (1, 0): full2,      # share both points
        (0, 2): 0b01, (2, 0): 0b01,        # share s0
        (1, 2): 0b00, (2, 1): 0b00,        # share nothing: contradicts the above
    }
    with pytest.raises(InputError, match="commutation"):
        glue(GlueDiagram([T1, T2, T3], overlaps, mode="filter"))


def test_glue_piece_must_be_upset_in_ideal_mode():
    T1 = FinDistLattice(FinPoset(["a"], set()))
    T2 = FinDistLattice(FinPoset.from_covers(["a", "b"], [("a", "b")]))
    # cut elements chosen so the pieces are {a} and {a,b}: {a} is not an
    # upset of the glued chain
    overlaps = {(0, 1): 0b0, (1, 0): 0b10}
    with pytest.raises(InputError, match="upset"):
        glue(GlueDiagram([T1, T2], overlaps, mode="ideal"))


def test_glue_incompatible_overlap_rejected():
    fan = FinDistLattice(FinPoset.from_covers(["root", "f1"], [("root", "f1")]))
    chain = FinDistLattice(FinPoset.from_covers(["c1", "root"], [("c1", "root")]))
    # shared point sets differ: {root} vs {c1, root}
    with pytest.raises(InputError):
        glue(GlueDiagram([fan, chain], {(0, 1): 0b01, (1, 0): 0b11}, mode="filter"))
