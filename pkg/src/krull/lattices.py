"""Finite distributive lattices via Birkhoff duality.

A lattice is presented by its poset of prime points; elements are
downsets (bitmasks).  Quotients, transporters, the Jacobson radical, the
Heitmann lattice, Heyting/Brouwer operations and gluing all become point
manipulations on the base poset.

Everything is immutable and pure.
"""

from __future__ import annotations

from .errors import InputError
from .posets import FinPoset


class FinDistLattice:
    """Lattice of downsets of a finite poset."""

    __slots__ = ("base",)

    def __init__(self, base: FinPoset):
        self.base = base

    def elem(self, mask: int) -> "LatElem":
        if mask & ~self.base.full_mask or not self.base.is_downset(mask):
            raise InputError(f"mask {mask:#x} is not a downset")
        return LatElem(self, mask)

    def elem_from_points(self, names: list[str]) -> "LatElem":
        mask = 0
        for name in names:
            mask |= 1 << self.base.index(name)
        return self.elem(mask)

    @property
    def zero(self) -> "LatElem":
        return LatElem(self, 0)

    @property
    def one(self) -> "LatElem":
        return LatElem(self, self.base.full_mask)

    def is_trivial(self) -> bool:
        return self.base.n == 0

    def elements(self) -> list["LatElem"]:
        return [LatElem(self, m) for m in self.base.downsets()]

    def size(self) -> int:
        return len(self.base.downsets())

    def join_irreducibles(self) -> list["LatElem"]:
        return [LatElem(self, self.base.down[i]) for i in range(self.base.n)]

    def isomorphic(self, other: "FinDistLattice") -> bool:
        return self.base.isomorphic(other.base)

    def __repr__(self):
        return f"FinDistLattice(base={self.base!r})"


class LatElem:
    """A lattice element: a downset bitmask over the base points."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: FinDistLattice, mask: int):
        self.lattice = lattice
        self.mask = mask

    def __and__(self, other: "LatElem") -> "LatElem":
        return LatElem(self.lattice, self.mask & other.mask)

    def __or__(self, other: "LatElem") -> "LatElem":
        return LatElem(self.lattice, self.mask | other.mask)

    def leq(self, other: "LatElem") -> bool:
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        return (isinstance(other, LatElem) and other.lattice.base is self.lattice.base
                and other.mask == self.mask)

    def __hash__(self):
        return hash((id(self.lattice.base), self.mask))

    def points(self) -> list[str]:
        base = self.lattice.base
        return [base.names[i] for i in range(base.n) if self.mask >> i & 1]

    def __repr__(self):
        return f"<{'+'.join(self.points()) or '0'}>"


def downset_lattice(p: FinPoset) -> FinDistLattice:
    """Lattice of downsets of ``p``; Spec of the result is ``p`` itself."""
    return FinDistLattice(p)


def lattice_ops(T: FinDistLattice, a: LatElem, b: LatElem) -> dict:
    """Meet, join and order of two elements (mask intersection/union/inclusion)."""
    _same(T, a, b)
    return {"meet": a & b, "join": a | b, "leq": a.leq(b)}


class LatIdeal:
    """An ideal stored extensionally: downward closed, closed under join."""

    __slots__ = ("lattice", "members")

    def __init__(self, lattice: FinDistLattice, members: frozenset[int]):
        self.lattice = lattice
        self.members = members
        if 0 not in members:
            raise InputError("ideal must contain 0")

    @classmethod
    def generated(cls, lattice: FinDistLattice, gens: list[LatElem]) -> "LatIdeal":
        top = 0
        for g in gens:
            top |= g.mask
        members = frozenset(m for m in lattice.base.downsets() if m & ~top == 0)
        return cls(lattice, members)

    @classmethod
    def principal(cls, lattice: FinDistLattice, a: LatElem) -> "LatIdeal":
        return cls.generated(lattice, [a])

    @property
    def top_mask(self) -> int:
        out = 0
        for m in self.members:
            out |= m
        return out

    def __contains__(self, a: LatElem) -> bool:
        return a.mask in self.members

    def __eq__(self, other):
        return (isinstance(other, LatIdeal) and other.lattice.base is self.lattice.base
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.lattice.base), self.members))

    def intersect(self, other: "LatIdeal") -> "LatIdeal":
        return LatIdeal(self.lattice, self.members & other.members)


class LatFilter:
    """A filter stored extensionally: upward closed, closed under meet."""

    __slots__ = ("lattice", "members")

    def __init__(self, lattice: FinDistLattice, members: frozenset[int]):
        self.lattice = lattice
        self.members = members
        if lattice.base.full_mask not in members:
            raise InputError("filter must contain 1")

    @classmethod
    def generated(cls, lattice: FinDistLattice, gens: list[LatElem]) -> "LatFilter":
        bot = lattice.base.full_mask
        for g in gens:
            bot &= g.mask
        members = frozenset(m for m in lattice.base.downsets() if bot & ~m == 0)
        return cls(lattice, members)

    @classmethod
    def principal(cls, lattice: FinDistLattice, a: LatElem) -> "LatFilter":
        return cls.generated(lattice, [a])

    @property
    def bottom_mask(self) -> int:
        out = self.lattice.base.full_mask
        for m in self.members:
            out &= m
        return out

    def __contains__(self, a: LatElem) -> bool:
        return a.mask in self.members


class LatQuotientMap:
    """Surjective lattice morphism onto the downset lattice of a subposet.

    ``point_map[t]`` gives the source-poset index of target point ``t``;
    the element map is restriction of the downset to the embedded points.
    """

    __slots__ = ("source", "target", "point_map")

    def __init__(self, source: FinDistLattice, target: FinDistLattice,
                 point_map: tuple[int, ...]):
        self.source = source
        self.target = target
        self.point_map = point_map
        base_s = source.base
        for t, i in enumerate(point_map):
            for u, j in enumerate(point_map):
                if base_s.le(i, j) != target.base.le(t, u):
                    raise InputError("point embedding does not preserve/reflect order")

    def push(self, a: LatElem) -> LatElem:
        mask = 0
        for t, i in enumerate(self.point_map):
            if a.mask >> i & 1:
                mask |= 1 << t
        return LatElem(self.target, mask)

    def lift(self, b: LatElem) -> LatElem:
        """Smallest source downset mapping onto ``b``."""
        mask = 0
        for t, i in enumerate(self.point_map):
            if b.mask >> t & 1:
                mask |= 1 << i
        return LatElem(self.source, self.source.base.downclose(mask))

    def preceq(self, a: LatElem, b: LatElem) -> bool:
        """The induced preorder a <= b in the quotient."""
        return self.push(a).leq(self.push(b))

    def compose(self, then: "LatQuotientMap") -> "LatQuotientMap":
        if then.source.base is not self.target.base:
            raise InputError("quotient maps do not compose")
        pm = tuple(self.point_map[i] for i in then.point_map)
        return LatQuotientMap(self.source, then.target, pm)

    @classmethod
    def identity(cls, T: FinDistLattice) -> "LatQuotientMap":
        return cls(T, T, tuple(range(T.base.n)))


def subquotient(T: FinDistLattice, point_mask: int) -> LatQuotientMap:
    """Quotient of ``T`` whose surviving primes are the points in ``point_mask``."""
    base = T.base
    keep = [i for i in range(base.n) if point_mask >> i & 1]
    target = FinDistLattice(base.subposet(point_mask))
    return LatQuotientMap(T, target, tuple(keep))


def quotient(T: FinDistLattice, zeros: list[LatElem], ones: list[LatElem]) -> LatQuotientMap:
    """T/(J=0, U=1): kill the elements of ``zeros``, force ``ones`` to 1.

    A prime point survives iff it lies outside every element of ``zeros``
    and inside every element of ``ones``.
    """
    base = T.base
    z = base.full_mask
    for a in zeros:
        _same(T, a)
        z &= ~a.mask
    for u in ones:
        _same(T, u)
        z &= u.mask
    return subquotient(T, z)


def transporter(T: FinDistLattice, b: LatElem, a: LatElem) -> LatElem:
    """Largest x with x /\\ a <= b (the generator of the ideal b:a)."""
    _same(T, a, b)
    base = T.base
    mask = 0
    for i in range(base.n):
        if base.down[i] & a.mask & ~b.mask == 0:
            mask |= 1 << i
    return LatElem(T, mask)


def difference(T: FinDistLattice, b: LatElem, a: LatElem) -> LatElem:
    """Least x with b <= x \\/ a (the generator of the filter b\\a)."""
    _same(T, a, b)
    return LatElem(T, T.base.downclose(b.mask & ~a.mask))


def heyting_implies(T: FinDistLattice, a: LatElem, b: LatElem) -> LatElem:
    """a -> b, right adjoint of meet: x <= (a -> b) iff x /\\ a <= b."""
    return transporter(T, b, a)


def brouwer_minus(T: FinDistLattice, a: LatElem, b: LatElem) -> LatElem:
    """a - b, the Brouwer complement: least x with a <= x \\/ b."""
    return difference(T, a, b)


def negation(T: FinDistLattice, a: LatElem) -> LatElem:
    return heyting_implies(T, a, T.zero)


def brouwer_complement_of_one(T: FinDistLattice, a: LatElem) -> LatElem:
    """1 - a: least x with x \\/ a = 1."""
    return brouwer_minus(T, T.one, a)


def complement(T: FinDistLattice, a: LatElem) -> LatElem | None:
    """Boolean complement of ``a``, or None when it does not exist."""
    c = negation(T, a)
    if (a | c) == T.one:
        return c
    return None


def jacobson_radical(T: FinDistLattice, J: LatIdeal) -> LatIdeal:
    """J_T(J) = {a : for all x, a \\/ x = 1 implies some z in J has z \\/ x = 1}.

    Evaluated exhaustively over the elements of ``T``.
    """
    one = T.base.full_mask
    elems = T.base.downsets()
    members = set()
    for a in elems:
        ok = True
        for x in elems:
            if a | x == one and not any(z | x == one for z in J.members):
                ok = False
                break
        if ok:
            members.add(a)
    return LatIdeal(T, frozenset(members))


def jacobson_preceq(T: FinDistLattice, a: LatElem, b: LatElem) -> bool:
    """a in J_T(down b): for all x, a \\/ x = 1 implies b \\/ x = 1; exhaustive."""
    one = T.base.full_mask
    for x in T.base.downsets():
        if a.mask | x == one and b.mask | x != one:
            return False
    return True


def heitmann_lattice(T: FinDistLattice) -> LatQuotientMap:
    """He(T): the quotient identifying elements with equal Jacobson radicals.

    On a finite lattice the surviving primes are exactly the maximal
    points; tests cross-check the induced preorder against the exhaustive
    Jacobson formula.
    """
    return subquotient(T, T.base.maximal_mask())


def is_weakly_jacobson(T: FinDistLattice) -> bool:
    """Whether T equals its Heitmann lattice (every principal ideal J-radical)."""
    return heitmann_lattice(T).target.base.n == T.base.n


def boolean_closure(T: FinDistLattice) -> tuple[FinDistLattice, "dict[int, int]"]:
    """Boolean lattice of all subsets of Spec T, with the embedding a -> D(a).

    Returns the powerset lattice (downsets of the antichain on the same
    points) and the identity-on-masks embedding.
    """
    anti = FinPoset(list(T.base.names), set())
    B = FinDistLattice(anti)
    embedding = {m: m for m in T.base.downsets()}
    return B, embedding


def opposite(T: FinDistLattice) -> FinDistLattice:
    """The order-opposite lattice: downsets of the reversed base poset."""
    return FinDistLattice(T.base.opposite())


def opposite_elem(T: FinDistLattice, To: FinDistLattice, a: LatElem) -> LatElem:
    """Image of ``a`` under the canonical anti-isomorphism T -> opposite(T)."""
    return LatElem(To, T.base.full_mask & ~a.mask)


class GlueDiagram:
    """Gluing data: lattices T_i and overlap elements s_ij in T_i.

    ``mode="ideal"`` glues the quotients T_i = T/(s_i = 0) (pieces embed
    as upsets of the result); ``mode="filter"`` glues T_i = T/(s_i = 1)
    (pieces embed as downsets).  Points shared between pieces carry the
    same name.
    """

    def __init__(self, lattices: list[FinDistLattice],
                 overlaps: dict[tuple[int, int], int], mode: str = "ideal"):
        if mode not in ("ideal", "filter"):
            raise InputError(f"unknown glue mode {mode!r}")
        self.lattices = lattices
        self.overlaps = overlaps
        self.mode = mode

    def overlap_mask(self, i: int, j: int) -> int:
        s = self.overlaps.get((i, j), None)
        if s is None:
            # absent overlap = empty shared part
            return 0 if self.mode == "filter" else self.lattices[i].base.full_mask
        return s

    def shared_point_mask(self, i: int, j: int) -> int:
        s = self.overlap_mask(i, j)
        full = self.lattices[i].base.full_mask
        return s if self.mode == "filter" else full & ~s


def glue(diagram: GlueDiagram) -> tuple[FinDistLattice, list[LatQuotientMap]]:
    """Projective limit of a compatible family of principal quotients.

    Validates the overlap and commutation conditions, rebuilds the glued
    poset from the shared point names, and asserts that each projection
    is split by its canonical section.
    """
    pieces = diagram.lattices
    n = len(pieces)
    # pairwise overlap posets must agree by name
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            zi = diagram.shared_point_mask(i, j)
            zj = diagram.shared_point_mask(j, i)
            sub_i = pieces[i].base.subposet(zi)
            sub_j = pieces[j].base.subposet(zj)
            if set(sub_i.names) != set(sub_j.names):
                raise InputError(
                    f"overlap ({i},{j}): shared point sets differ: "
                    f"{sorted(sub_i.names)} vs {sorted(sub_j.names)}")
            for a in sub_i.names:
                for b in sub_i.names:
                    if (sub_i.le(sub_i.index(a), sub_i.index(b))
                            != sub_j.le(sub_j.index(a), sub_j.index(b))):
                        raise InputError(
                            f"overlap ({i},{j}): orders disagree on ({a},{b})")
    # triple commutation: pi_ij(s_ik) and pi_ji(s_jk) agree on the overlap
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                zi = diagram.shared_point_mask(i, j)
                zj = diagram.shared_point_mask(j, i)
                si_k = diagram.shared_point_mask(i, k)
                sj_k = diagram.shared_point_mask(j, k)
                base_i, base_j = pieces[i].base, pieces[j].base
                names_a = {base_i.names[t] for t in range(base_i.n)
                           if zi >> t & 1 and si_k >> t & 1}
                names_b = {base_j.names[t] for t in range(base_j.n)
                           if zj >> t & 1 and sj_k >> t & 1}
                if names_a != names_b:
                    raise InputError(
                        f"commutation fails on triple ({i},{j},{k}): "
                        f"{sorted(names_a)} vs {sorted(names_b)}")
    # build the glued poset
    all_names: list[str] = []
    for p in pieces:
        for name in p.base.names:
            if name not in all_names:
                all_names.append(name)
    index = {name: t for t, name in enumerate(all_names)}
    pairs = set()
    for p in pieces:
        for a, b in ((x, y) for x in range(p.base.n) for y in range(p.base.n)
                     if x != y and p.base.le(x, y)):
            pairs.add((index[p.base.names[a]], index[p.base.names[b]]))
    glued_base = FinPoset(all_names, pairs)
    T = FinDistLattice(glued_base)
    # each piece must sit inside with its own order, as an upset (ideal
    # mode) or downset (filter mode)
    projections = []
    for i, p in enumerate(pieces):
        piece_mask = 0
        for name in p.base.names:
            piece_mask |= 1 << index[name]
        want_upset = diagram.mode == "ideal"
        if want_upset and not glued_base.is_upset(piece_mask):
            raise InputError(f"piece {i} is not an upset of the glued poset")
        if not want_upset and not glued_base.is_downset(piece_mask):
            raise InputError(f"piece {i} is not a downset of the glued poset")
        sub = glued_base.subposet(piece_mask)
        for a in sub.names:
            for b in sub.names:
                if (sub.le(sub.index(a), sub.index(b))
                        != p.base.le(p.base.index(a), p.base.index(b))):
                    raise InputError(
                        f"piece {i}: glued order disagrees on ({a},{b})")
        pm = tuple(index[name] for name in sub.names)
        target = FinDistLattice(sub.relabel(list(sub.names)))
        proj = LatQuotientMap(T, target, pm)
        _assert_split(proj, diagram.mode)
        projections.append(proj)
    # the s_i must cover: every glued point lies in some piece (by construction)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            expected = diagram.shared_point_mask(i, j)
            got = 0
            pj_names = set(pieces[j].base.names)
            for t, name in enumerate(pieces[i].base.names):
                if name in pj_names:
                    got |= 1 << t
            if got != expected:
                raise InputError(
                    f"overlap ({i},{j}): piece intersection does not match s_ij")
    return T, projections


def _assert_split(proj: LatQuotientMap, mode: str) -> None:
    # principal quotients are always split; the section is checked, not trusted
    sample = proj.target.elements() if proj.target.base.n <= 12 \
        else proj.target.join_irreducibles() + [proj.target.zero, proj.target.one]
    piece = 0
    for i in proj.point_map:
        piece |= 1 << i
    src = proj.source.base
    s_i = src.full_mask & ~piece  # kernel generator (ideal mode: a downset)
    for y in sample:
        lifted = proj.lift(y)
        section = LatElem(proj.source, lifted.mask | s_i) if mode == "ideal" else lifted
        if proj.push(section) != y:
            raise InputError("principal quotient section failed to split")


def _same(T: FinDistLattice, *elems: LatElem) -> None:
    for e in elems:
        if e.lattice.base is not T.base:
            raise InputError("element belongs to a different lattice")
