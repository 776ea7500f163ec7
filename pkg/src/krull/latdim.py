"""Boundary ideals and the three dimensions of a finite distributive lattice.

Kdim comes in three independent strategies (upper-boundary recursion,
lower-boundary recursion, longest prime chain), Jdim is the Krull
dimension of the Heitmann lattice, and Hdim recurses through Heitmann
boundaries.  The recursions run on point masks of the base poset with
memoization on the surviving-subposet mask.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, KrullError
from .lattices import (FinDistLattice, LatElem, LatIdeal, LatFilter,
                       LatQuotientMap, heitmann_lattice, heyting_implies,
                       brouwer_minus, brouwer_complement_of_one, negation,
                       subquotient)

KRULL_UPPER = "krull-upper"
KRULL_LOWER = "krull-lower"
HEITMANN = "heitmann"


@dataclass(frozen=True)
class BoundarySpec:
    kind: str  # one of KRULL_UPPER, KRULL_LOWER, HEITMANN
    x: LatElem

    def __post_init__(self):
        if self.kind not in (KRULL_UPPER, KRULL_LOWER, HEITMANN):
            raise InputError(f"unknown boundary kind {self.kind!r}")


def krull_upper_ideal(T: FinDistLattice, x: LatElem) -> LatIdeal:
    """The ideal (down x) \\/ (0:x); principal, so stored via its top."""
    return LatIdeal.generated(T, [T.elem(_upper_top(T.base, x.mask))])


def krull_lower_filter(T: FinDistLattice, x: LatElem) -> LatFilter:
    """The filter (up x) /\\ (1\\x)."""
    return LatFilter.generated(T, [T.elem(_lower_bottom(T.base, x.mask))])


def heitmann_ideal(T: FinDistLattice, x: LatElem) -> LatIdeal:
    """The ideal (down x) \\/ (J(0):x)."""
    return LatIdeal.generated(T, [T.elem(_heitmann_top(T.base, x.mask, T.base.maximal_mask()))])


def _upper_top(base, x: int, s: int | None = None) -> int:
    # top of down(x) v (0:x); within the subposet on mask s when given
    full = base.full_mask if s is None else s
    disjoint = 0
    for i in range(base.n):
        if full >> i & 1 and base.down[i] & full & x == 0:
            disjoint |= 1 << i
    return x | disjoint


def _lower_bottom(base, x: int, s: int | None = None) -> int:
    full = base.full_mask if s is None else s
    return x & (base.downclose(full & ~x) & full)


def _heitmann_top(base, x: int, maxmask: int, s: int | None = None) -> int:
    full = base.full_mask if s is None else s
    xmax = x & maxmask
    avoid = 0
    for i in range(base.n):
        if full >> i & 1 and base.down[i] & full & xmax == 0:
            avoid |= 1 << i
    return x | avoid


def _sub_maximal(base, s: int) -> int:
    out = 0
    for i in range(base.n):
        if s >> i & 1 and base.up[i] & s == 1 << i:
            out |= 1 << i
    return out


def boundary_quotient(T: FinDistLattice, spec: BoundarySpec) -> LatQuotientMap:
    """Quotient of T by the boundary ideal/filter of ``spec``.

    For the upper Krull boundary the regularity law (0 : K_T^x) = 0 is
    asserted before returning.
    """
    base = T.base
    x = spec.x.mask
    if spec.kind == KRULL_UPPER:
        top = _upper_top(base, x)
        ann = 0  # (0 : ideal) must be trivial
        for i in range(base.n):
            if base.down[i] & top == 0:
                ann |= 1 << i
        if ann:
            raise KrullError("upper Krull boundary ideal is not regular")
        survivors = base.full_mask & ~top
    elif spec.kind == KRULL_LOWER:
        survivors = _lower_bottom(base, x)
    else:
        survivors = base.full_mask & ~_heitmann_top(base, x, base.maximal_mask())
    return subquotient(T, survivors)


def kdim(T: FinDistLattice, strategy: str = KRULL_UPPER) -> int:
    """Krull dimension; all strategies agree (tested, not assumed)."""
    if strategy == "chain":
        return T.base.longest_chain() - 1
    if strategy not in (KRULL_UPPER, KRULL_LOWER):
        raise InputError(f"unknown kdim strategy {strategy!r}")
    base = T.base
    memo: dict[int, int] = {}

    def rec(s: int) -> int:
        if s == 0:
            return -1
        if s in memo:
            return memo[s]
        best = -1
        for i in range(base.n):
            if not s >> i & 1:
                continue
            x = base.down[i] & s  # join-irreducible of the subposet
            if strategy == KRULL_UPPER:
                nxt = s & ~_upper_top(base, x, s)
            else:
                nxt = _lower_bottom(base, x, s)
            best = max(best, rec(nxt))
        memo[s] = best + 1
        return best + 1

    return rec(base.full_mask)


def kdim_leq(T: FinDistLattice, ell: int, strategy: str = KRULL_UPPER) -> bool:
    """The constructive reading "Kdim T <= ell" as a predicate."""
    return kdim(T, strategy) <= ell


def kdim_global_check(T: FinDistLattice, xs: list[LatElem]) -> list[LatElem] | None:
    """Witnesses a_0..a_l with a_0 /\\ x_0 <= 0, ..., 1 <= a_l \\/ x_l.

    Exhaustive search over element tuples, memoized on the running bound
    a_i \\/ x_i, so refusals are definitive.
    """
    elems = T.base.downsets()
    one = T.base.full_mask
    memo: dict[tuple[int, int], tuple[int, ...] | None] = {}

    def rec(i: int, bound: int) -> tuple[int, ...] | None:
        # need a_i /\ x_i <= bound, then continue; at the end 1 <= a_l \/ x_l
        key = (i, bound)
        if key in memo:
            return memo[key]
        x = xs[i].mask
        out = None
        for a in sorted(elems, key=lambda m: -bin(m).count("1")):
            if a & x & ~bound:
                continue
            if i == len(xs) - 1:
                if a | x == one:
                    out = (a,)
                    break
            else:
                rest = rec(i + 1, a | x)
                if rest is not None:
                    out = (a,) + rest
                    break
        memo[key] = out
        return out

    found = rec(0, 0)
    if found is None:
        return None
    return [LatElem(T, m) for m in found]


def heyting_dim_formula(T: FinDistLattice, xs: list[LatElem]) -> LatElem:
    """x_l \\/ (x_l -> ( ... (x_1 \\/ (x_1 -> (x_0 \\/ -x_0))) ... )).

    Equals 1 for every sequence of length l+1 iff Kdim T <= l.
    """
    v = xs[0] | negation(T, xs[0])
    for x in xs[1:]:
        v = x | heyting_implies(T, x, v)
    return v


def brouwer_dim_formula(T: FinDistLattice, xs: list[LatElem]) -> LatElem:
    """Order-dual of the Heyting formula, via Brouwer differences.

    w_0 = x_0 /\\ (1 - x_0), then w_i = x_i /\\ (w_{i-1} - x_i); the result
    equals 0 for every sequence of length l+1 iff Kdim T <= l.  (This is
    the dual recursion through lower boundary quotients; each step lands
    in the principal ideal generated by the previous value.)
    """
    w = xs[0] & brouwer_complement_of_one(T, xs[0])
    for x in xs[1:]:
        w = x & brouwer_minus(T, w, x)
    return w


def jdim(T: FinDistLattice) -> int:
    """Krull dimension of the Heitmann lattice He(T)."""
    return kdim(heitmann_lattice(T).target, "chain")


def hdim(T: FinDistLattice) -> int:
    """Heitmann dimension: recursion through Heitmann boundary quotients.

    Boundaries are taken at join-irreducible elements only (sound for a
    generating set) and memoized on the surviving subposet mask.
    """
    base = T.base
    memo: dict[int, int] = {}

    def rec(s: int) -> int:
        if s == 0:
            return -1
        if s in memo:
            return memo[s]
        maxmask = _sub_maximal(base, s)
        best = -1
        for i in range(base.n):
            if not s >> i & 1:
                continue
            x = base.down[i] & s
            nxt = s & ~_heitmann_top(base, x, maxmask, s)
            best = max(best, rec(nxt))
        memo[s] = best + 1
        return best + 1

    return rec(base.full_mask)


def hdim_leq(T: FinDistLattice, ell: int) -> bool:
    return hdim(T) <= ell


def jdim_leq(T: FinDistLattice, ell: int) -> bool:
    return jdim(T) <= ell


def generator_restricted_dim_check(T: FinDistLattice, S: list[LatElem],
                                   kind: str = "kdim") -> int:
    """Dimension computed with boundaries drawn from ``S`` only.

    ``S`` must generate T as a lattice; agreement with the unrestricted
    recursion is a theorem, exercised by the test suite.
    """
    _check_generates(T, S)
    base = T.base
    if kind == "kdim":
        def top(x, s, _m):
            return _upper_top(base, x, s)
    elif kind == "hdim":
        def top(x, s, m):
            return _heitmann_top(base, x, m, s)
    else:
        raise InputError(f"unknown kind {kind!r}")

    first_masks = [e.mask for e in S]
    memo: dict[int, int] = {}

    def rec(s: int, gens: list[int]) -> int:
        if s == 0:
            return -1
        if s in memo:
            return memo[s]
        maxmask = _sub_maximal(base, s)
        best = -1
        for g in gens:
            x = g & s
            nxt = s & ~top(x, s, maxmask)
            sub_gens = [base.down[i] & nxt for i in range(base.n) if nxt >> i & 1]
            best = max(best, rec(nxt, sub_gens))
        memo[s] = best + 1
        return best + 1

    return rec(base.full_mask, first_masks)


def _check_generates(T: FinDistLattice, S: list[LatElem]) -> None:
    # the signature carries both constants, so 0 and 1 come for free
    masks = {0, T.base.full_mask, *[e.mask for e in S]}
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b in list(masks):
                for c in (a | b, a & b):
                    if c not in masks:
                        masks.add(c)
                        changed = True
    if masks != set(T.base.downsets()):
        raise InputError("S does not generate the lattice")
