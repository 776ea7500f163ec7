"""The Zariski lattice of a polynomial ring, boundary ideals, and
Krull-dimension collapse certificates.

A ``RadQuotientRing`` stands for A/sqrt(I) without ever computing the
radical: all semantics flow through radical membership.  The upper Krull
boundary of x is realized radically as I + <x> + (I : x^infinity); the
saturation exponents and membership cofactors recorded along an iterated
boundary unwind into the collapse identity

    x0^m0 (x1^m1 ( ... (xl^ml (1 + al xl) + ... ) + a1 x1) + a0 x0) = 0

which is re-verified exactly, together with the complementary-sequence
inequalities derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Budget, BudgetExceeded, InputError, KrullError, Refusal
from .groebner import (IdealRep, MembershipWitness, SatResult, ideal_member,
                       intersect, radical_member, saturation)
from .poly import Poly, Ring

JACOBSON_FG_ALGEBRA = "fg-algebra-over-field"


@dataclass(frozen=True)
class ZarElem:
    """An element D(gens) = sqrt(<gens>) of Zar A; order is semantic."""

    ring: Ring
    gens: tuple[Poly, ...]

    def join(self, other: "ZarElem") -> "ZarElem":
        _same_ring(self, other)
        return ZarElem(self.ring, self.gens + other.gens)

    def meet(self, other: "ZarElem") -> "ZarElem":
        _same_ring(self, other)
        prods = tuple(a * b for a in self.gens for b in other.gens)
        return ZarElem(self.ring, prods)


def _same_ring(u: ZarElem, v: ZarElem) -> None:
    if not u.ring.same(v.ring):
        raise InputError("Zariski elements from different rings")


def zar_leq(u: ZarElem, v: ZarElem,
            budget: Budget | None = None) -> tuple[bool, list[MembershipWitness]]:
    """D(u) <= D(v): every generator of u is in sqrt(<v>); witnesses kept."""
    _same_ring(u, v)
    budget = budget or Budget()
    I = IdealRep(u.ring, list(v.gens))
    witnesses = []
    for g in u.gens:
        w = radical_member(g, I, budget)
        if w is None:
            return False, []
        witnesses.append(w)
    return True, witnesses


def zar_eq(u: ZarElem, v: ZarElem, budget: Budget | None = None) -> bool:
    a, _ = zar_leq(u, v, budget)
    if not a:
        return False
    b, _ = zar_leq(v, u, budget)
    return b


class RadQuotientRing:
    """A/sqrt(modulus), with an explicit Jacobson policy.

    Rings in scope are finitely generated algebras over a field, which
    are Jacobson rings, so the Jacobson radical of the quotient is its
    nilradical; any other policy must bring its own J-membership oracle.
    """

    def __init__(self, ring: Ring, modulus: IdealRep | None = None,
                 jacobson_policy: str = JACOBSON_FG_ALGEBRA):
        self.ring = ring
        self.modulus = modulus if modulus is not None else IdealRep(ring, [])
        self.jacobson_policy = jacobson_policy

    def radical_member(self, f: Poly,
                       budget: Budget | None = None) -> MembershipWitness | None:
        return radical_member(f, self.modulus, budget)

    def member(self, f: Poly, budget: Budget | None = None) -> MembershipWitness | None:
        return ideal_member(f, self.modulus, budget)

    def is_trivial(self, budget: Budget | None = None) -> bool:
        return self.modulus.is_unit_ideal(budget)

    def plus(self, extra: list[Poly]) -> "RadQuotientRing":
        return RadQuotientRing(self.ring, self.modulus.plus(extra),
                               self.jacobson_policy)

    def unit_witness(self, gens: list[Poly],
                     budget: Budget | None = None) -> MembershipWitness | None:
        """Witness 1 in modulus + <gens>, or None."""
        return ideal_member(self.ring.one(), self.modulus.plus(gens), budget)

    def __repr__(self):
        return f"RadQuotientRing({self.ring!r} mod {self.modulus!r})"


@dataclass
class BoundaryStep:
    """One upper-boundary pass: modulus' = modulus + <x> + (modulus : x^inf)."""

    x: Poly
    base_gens: tuple[Poly, ...]      # generators of the incoming modulus
    sat: SatResult                   # saturation data with exponent witnesses
    result: RadQuotientRing


def krull_boundary_ideal(R: RadQuotientRing, js: list[Poly],
                         budget: Budget | None = None) -> RadQuotientRing:
    """Quotient by the Krull boundary ideal of the f.g. ideal <js>.

    Radically this is js + (D(0):js); the transporter is realized as the
    intersection of the saturations (modulus : j^infinity).
    """
    budget = budget or Budget()
    if not js:
        raise InputError("boundary of the empty generator list")
    transporter: IdealRep | None = None
    for j in js:
        s = saturation(R.modulus, j, budget).ideal
        transporter = s if transporter is None else intersect(transporter, s, budget)
    return R.plus(list(js) + list(transporter.gens))


def krull_boundary_step(R: RadQuotientRing, x: Poly,
                        budget: Budget | None = None) -> BoundaryStep:
    """Single-element boundary pass, keeping the unwinding data."""
    budget = budget or Budget()
    sat = saturation(R.modulus, x, budget)
    result = R.plus([x] + list(sat.ideal.gens))
    return BoundaryStep(x, R.modulus.gens, sat, result)


def heitmann_boundary_ideal(R: RadQuotientRing, js: list[Poly],
                            budget: Budget | None = None) -> RadQuotientRing:
    """Quotient by the Heitmann boundary js + (J(0):js).

    Under the Jacobson policy J(0) = D(0), so this is the Krull boundary;
    other policies are refused until they supply a J-membership oracle.
    """
    if R.jacobson_policy != JACOBSON_FG_ALGEBRA:
        raise Refusal(f"unsupported Jacobson policy {R.jacobson_policy!r}")
    return krull_boundary_ideal(R, js, budget)


def iterated_boundary(R: RadQuotientRing, xs: list[Poly],
                      budget: Budget | None = None) -> tuple[RadQuotientRing, list[BoundaryStep]]:
    """Left fold of single-element boundary passes, first element first."""
    budget = budget or Budget()
    steps = []
    cur = R
    for x in xs:
        step = krull_boundary_step(cur, x, budget)
        steps.append(step)
        cur = step.result
    return cur, steps


def lower_boundary_collapses(R: RadQuotientRing, x: Poly,
                             budget: Budget | None = None) -> bool:
    """0 in x^N (1 + xA) mod I, decided as 1 in (I : x^inf) + xA."""
    budget = budget or Budget()
    sat = saturation(R.modulus, x, budget)
    return sat.ideal.plus([x]).is_unit_ideal(budget)


@dataclass
class DimCert:
    """Collapse certificate for Kdim <= l along the sequence ``xs``.

    The identity
      xs[0]^ms[0] ( ... (xs[l]^ms[l] (1 + cofactors[l]*xs[l]) + ... )
                    + cofactors[0]*xs[0] ) = 0
    holds exactly modulo the ambient modulus (witness stored), and the
    derived complements satisfy the complementary-sequence inequalities.
    """

    xs: list[Poly]
    ms: list[int]
    cofactors: list[Poly]
    complements: list[Poly]
    identity_witness: MembershipWitness | None = None  # None for modulus <0>
    inequality_witnesses: list = field(default_factory=list)

    def identity_poly(self) -> Poly:
        ring = self.xs[0].ring
        acc = ring.one() + self.cofactors[-1] * self.xs[-1]
        acc = self.xs[-1] ** self.ms[-1] * acc
        for x, m, a in zip(reversed(self.xs[:-1]), reversed(self.ms[:-1]),
                           reversed(self.cofactors[:-1])):
            acc = x ** m * (acc + a * x)
        return acc


def dim_cert_search(R: RadQuotientRing, xs: list[Poly],
                    degree_bound: int = 30,
                    budget: Budget | None = None) -> DimCert | None:
    """Search for a collapse certificate along ``xs``.

    Folds the iterated boundary, then unwinds the stored saturation
    exponents and membership cofactors into the collapse identity.
    Returns None when the iterated boundary stays proper.
    """
    budget = budget or Budget()
    if not xs:
        raise InputError("empty sequence")
    final, steps = iterated_boundary(R, xs, budget)
    top = final.member(R.ring.one(), budget)
    if top is None:
        return None
    ring = R.ring
    ms: list[int] = [0] * len(xs)
    cofs: list[Poly] = [ring.zero()] * len(xs)
    # walking back: T carries cofactors over the current step's input gens
    target = ring.one()
    cof = list(top.cofactors)
    for k in range(len(xs) - 1, -1, -1):
        step = steps[k]
        nb = len(step.base_gens)
        base_part = cof[:nb]
        x_cof = cof[nb]
        sat_cofs = cof[nb + 1:]
        a_k = -x_cof
        m_k = step.sat.exponent
        ms[k], cofs[k] = m_k, a_k
        if a_k.total_degree() > degree_bound:
            raise BudgetExceeded(
                f"certificate cofactor degree {a_k.total_degree()} exceeds bound {degree_bound}")
        xm = step.x ** m_k
        new_target = xm * (target + a_k * step.x)
        new_cof = [xm * c for c in base_part]
        for c_r, w in zip(sat_cofs, step.sat.witnesses):
            # w proves s_r * x^exponent = sum(w.cofactors * base_gens)
            for t in range(nb):
                new_cof[t] = new_cof[t] + c_r * w.cofactors[t]
        acc = ring.zero()
        for c, g in zip(new_cof, step.base_gens):
            acc = acc + c * g
        if acc != new_target:
            raise KrullError("collapse-identity unwinding failed")
        if new_target.total_degree() > 4 * degree_bound:
            raise BudgetExceeded("collapse identity degree exceeds bound")
        target, cof = new_target, new_cof
    # target now lies in the original modulus, exactly
    identity_witness = None
    if R.modulus.gens:
        identity_witness = MembershipWitness(R.modulus.gens, target, tuple(cof))
    elif not target.is_zero():
        raise KrullError("collapse identity nonzero over the zero modulus")
    bs = _complements(xs, ms, cofs)
    check = verify_complementary(R, bs, xs, budget)
    if not check.ok:
        raise KrullError(f"derived complements failed: {check.detail}")
    return DimCert(list(xs), ms, cofs, bs, identity_witness, check.witnesses)


def _complements(xs, ms, cofs) -> list[Poly]:
    ring = xs[0].ring
    bs = [ring.zero()] * len(xs)
    bs[-1] = ring.one() + cofs[-1] * xs[-1]
    for k in range(len(xs) - 2, -1, -1):
        bs[k] = xs[k + 1] ** ms[k + 1] * bs[k + 1] + cofs[k] * xs[k]
    return bs


@dataclass
class ComplementaryCheck:
    ok: bool
    witnesses: list
    detail: str = ""


def verify_complementary(R: RadQuotientRing, bs: list[Poly], xs: list[Poly],
                         budget: Budget | None = None) -> ComplementaryCheck:
    """Check D(b0 x0) = D(0), D(bk xk) <= D(b(k-1), x(k-1)), 1 = D(bl, xl)."""
    budget = budget or Budget()
    if len(bs) != len(xs):
        raise InputError("sequences of different lengths")
    if not xs:
        # the top condition 1 = D(empty) degenerates to the trivial ring
        if R.is_trivial(budget):
            return ComplementaryCheck(True, [])
        return ComplementaryCheck(False, [], "empty sequences in a nontrivial ring")
    witnesses = []
    w = R.radical_member(bs[0] * xs[0], budget)
    if w is None:
        return ComplementaryCheck(False, [], "D(b0*x0) = D(0) fails")
    witnesses.append(w)
    for k in range(1, len(xs)):
        I = R.modulus.plus([bs[k - 1], xs[k - 1]])
        w = radical_member(bs[k] * xs[k], I, budget)
        if w is None:
            return ComplementaryCheck(
                False, [], f"D(b{k}*x{k}) <= D(b{k-1},x{k-1}) fails")
        witnesses.append(w)
    w = R.unit_witness([bs[-1], xs[-1]], budget)
    if w is None:
        return ComplementaryCheck(False, [], "1 = D(bl, xl) fails")
    witnesses.append(w)
    return ComplementaryCheck(True, witnesses)


def verify_dim_cert(R: RadQuotientRing, cert: DimCert,
                    budget: Budget | None = None) -> bool:
    """Re-verify a collapse certificate from scratch (pure arithmetic
    plus radical membership for the inequalities)."""
    budget = budget or Budget()
    identity = cert.identity_poly()
    if R.modulus.gens:
        if ideal_member(identity, R.modulus, budget) is None:
            return False
    elif not identity.is_zero():
        return False
    return verify_complementary(R, cert.complements, cert.xs, budget).ok
