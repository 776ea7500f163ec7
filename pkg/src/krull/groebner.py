"""Buchberger's algorithm with cofactor tracking, and the ideal calculus
built on it: membership, radical membership, colon ideals, saturation.

Every basis element carries its expression in the original generators,
so each positive membership answer is an exactly re-verifiable witness;
the witness is re-checked by plain arithmetic at construction time.
Budgets turn potential blow-ups into reported errors, never wrong
answers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import Budget, InputError, KrullError
from .poly import Poly, Ring


@dataclass(frozen=True)
class MembershipWitness:
    """f^exponent = sum(cofactors[i] * gens[i]), re-verified exactly."""

    gens: tuple[Poly, ...]
    target: Poly
    cofactors: tuple[Poly, ...]
    exponent: int = 1

    def __post_init__(self):
        if not self.verify():
            raise KrullError("membership witness failed exact re-verification")

    def verify(self) -> bool:
        ring = self.target.ring
        acc = ring.zero()
        for c, g in zip(self.cofactors, self.gens):
            acc = acc + c * g
        return acc == self.target ** self.exponent


class GBElem:
    """A monic basis element with its cofactor vector over the input."""

    __slots__ = ("poly", "cofactors")

    def __init__(self, poly: Poly, cofactors: list[Poly]):
        self.poly = poly
        self.cofactors = cofactors


def _divides(e: tuple, f: tuple) -> bool:
    return all(a <= b for a, b in zip(e, f))


def _lcm(e: tuple, f: tuple) -> tuple:
    return tuple(max(a, b) for a, b in zip(e, f))


def _quot(e: tuple, f: tuple) -> tuple:
    return tuple(a - b for a, b in zip(e, f))


def reduce_with_quotients(f: Poly, basis: list[Poly],
                          budget: Budget | None = None) -> tuple[Poly, list[Poly]]:
    """Full multivariate division: f = sum q_i b_i + r with r fully reduced."""
    ring = f.ring
    quotients = [ring.zero() for _ in basis]
    rem_terms: list[tuple] = []
    cur = f
    lms = [b.lm() for b in basis]
    while not cur.is_zero():
        if budget is not None:
            budget.check_degree(cur.total_degree())
        exp, c = cur.lt()
        hit = -1
        for i, lm in enumerate(lms):
            if _divides(lm, exp):
                hit = i
                break
        if hit >= 0:
            q = _quot(exp, lms[hit])
            qc = ring.coeff(c * ring.coeff_inv(basis[hit].lc()))
            quotients[hit] = quotients[hit] + ring.from_terms([(q, qc)])
            cur = cur - basis[hit].mul_term(q, qc)
        else:
            rem_terms.append((exp, c))
            cur = Poly(ring, cur.terms[1:])
    rem = ring.from_terms(rem_terms)
    return rem, quotients


def buchberger(gens: list[Poly], ring: Ring, budget: Budget) -> list[GBElem]:
    """Reduced Groebner basis with exact cofactor tracking.

    Uses the coprimality and chain criteria; the returned basis is
    auto-reduced, monic, and sorted by leading monomial.  Each element's
    cofactor identity is asserted before returning.
    """
    n = len(gens)
    G: list[GBElem] = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = [ring.zero()] * n
        inv = ring.coeff_inv(g.lc())
        cof[i] = ring.const(inv)
        G.append(GBElem(g.monic(), cof))
    pending: set[tuple[int, int]] = {(i, j) for i in range(len(G)) for j in range(i)}

    def spair_key(pair):
        i, j = pair
        l = _lcm(G[i].poly.lm(), G[j].poly.lm())
        return (sum(l), ring.order_key(l), pair)

    while pending:
        i, j = min(pending, key=spair_key)
        pending.discard((i, j))
        lm_i, lm_j = G[i].poly.lm(), G[j].poly.lm()
        lcm = _lcm(lm_i, lm_j)
        if lcm == tuple(a + b for a, b in zip(lm_i, lm_j)):
            continue  # coprime leading monomials
        chained = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (_divides(G[k].poly.lm(), lcm)
                    and (max(i, k), min(i, k)) not in pending
                    and (max(j, k), min(j, k)) not in pending):
                chained = True
                break
        if chained:
            continue
        budget.charge_spair()
        mi, mj = _quot(lcm, lm_i), _quot(lcm, lm_j)
        s = G[i].poly.mul_term(mi, 1) - G[j].poly.mul_term(mj, 1)
        r, quotients = reduce_with_quotients(s, [g.poly for g in G], budget)
        if r.is_zero():
            continue
        cof = [ring.zero()] * n
        for t in range(n):
            cof[t] = (G[i].cofactors[t].mul_term(mi, 1)
                      - G[j].cofactors[t].mul_term(mj, 1))
            for q, g in zip(quotients, G):
                cof[t] = cof[t] - q * g.cofactors[t]
        inv = ring.coeff_inv(r.lc())
        G.append(GBElem(r.monic(), [c.scale(inv) for c in cof]))
        new = len(G) - 1
        pending |= {(new, t) for t in range(new)}

    _autoreduce(G, ring, budget)
    G.sort(key=lambda g: ring.order_key(g.poly.lm()))
    for g in G:
        acc = ring.zero()
        for c, original in zip(g.cofactors, gens):
            acc = acc + c * original
        if acc != g.poly:
            raise KrullError("Groebner cofactor bookkeeping failed")
    return G


def _autoreduce(G: list[GBElem], ring: Ring, budget: Budget) -> None:
    # drop elements with redundant leading monomials, then tail-reduce
    changed = True
    while changed:
        changed = False
        for i in range(len(G) - 1, -1, -1):
            others = [g.poly for k, g in enumerate(G) if k != i]
            if not others:
                continue
            r, quotients = reduce_with_quotients(G[i].poly, others, budget)
            if r == G[i].poly:
                continue
            changed = True
            cof = list(G[i].cofactors)
            idx = [k for k in range(len(G)) if k != i]
            for t in range(len(cof)):
                for q, k in zip(quotients, idx):
                    cof[t] = cof[t] - q * G[k].cofactors[t]
            if r.is_zero():
                del G[i]
            else:
                inv = ring.coeff_inv(r.lc())
                G[i] = GBElem(r.monic(), [c.scale(inv) for c in cof])


class IdealRep:
    """A finitely generated ideal with a lazily computed Groebner basis.

    The basis cache is filled under a lock, so concurrent readers see
    either nothing or the finished basis.
    """

    def __init__(self, ring: Ring, gens: list[Poly]):
        for g in gens:
            if not g.ring.same(ring):
                raise InputError("generator from a different ring")
        self.ring = ring
        self.gens = tuple(gens)
        self._gb: list[GBElem] | None = None
        self._lock = threading.Lock()

    def groebner(self, budget: Budget | None = None) -> list[GBElem]:
        with self._lock:
            if self._gb is None:
                self._gb = buchberger(list(self.gens), self.ring,
                                      budget or Budget())
            return self._gb

    def basis_polys(self, budget: Budget | None = None) -> list[Poly]:
        return [g.poly for g in self.groebner(budget)]

    def normal_form(self, f: Poly, budget: Budget | None = None) -> Poly:
        gb = self.groebner(budget)
        r, _ = reduce_with_quotients(f, [g.poly for g in gb], budget)
        return r

    def conversion_witnesses(self, budget: Budget | None = None
                             ) -> tuple[list[MembershipWitness], list[MembershipWitness]]:
        """<basis> = <gens>, witnessed in both directions."""
        gb = self.groebner(budget)
        basis_over_gens = [MembershipWitness(self.gens, g.poly, tuple(g.cofactors))
                           for g in gb]
        basis_polys = tuple(g.poly for g in gb)
        gens_over_basis = []
        for f in self.gens:
            r, q = reduce_with_quotients(f, list(basis_polys), budget)
            if not r.is_zero():
                raise KrullError("generator does not reduce to zero by its own basis")
            gens_over_basis.append(MembershipWitness(basis_polys, f, tuple(q)))
        return basis_over_gens, gens_over_basis

    def is_unit_ideal(self, budget: Budget | None = None) -> bool:
        basis = self.basis_polys(budget)
        return len(basis) == 1 and basis[0].is_one()

    def plus(self, extra: list[Poly]) -> "IdealRep":
        return IdealRep(self.ring, list(self.gens) + list(extra))

    def __repr__(self):
        return f"IdealRep({[g.text() for g in self.gens]})"


def ideal_member(f: Poly, I: IdealRep,
                 budget: Budget | None = None) -> MembershipWitness | None:
    """Exact cofactors for f in <gens>, or None (normal form nonzero)."""
    budget = budget or Budget()
    gb = I.groebner(budget)
    r, quotients = reduce_with_quotients(f, [g.poly for g in gb], budget)
    if not r.is_zero():
        return None
    ring = I.ring
    cof = [ring.zero()] * len(I.gens)
    for q, g in zip(quotients, gb):
        for t in range(len(cof)):
            cof[t] = cof[t] + q * g.cofactors[t]
    return MembershipWitness(I.gens, f, tuple(cof))


def radical_member(f: Poly, I: IdealRep,
                   budget: Budget | None = None) -> MembershipWitness | None:
    """Decide f in sqrt(I) by the one-extra-variable trick.

    On success the smallest exponent k with f^k in I is located by
    normal-form walking and exact cofactors for f^k are extracted from
    the extended-ring certificate.
    """
    budget = budget or Budget()
    ring = I.ring
    if f.is_zero():
        return MembershipWitness(I.gens, f, tuple(ring.zero() for _ in I.gens))
    ext = ring.with_aux([_fresh_name(ring, "t")])
    t = ext.var(ext.vars[0])
    gens_ext = [ring.embed(g, ext) for g in I.gens]
    f_ext = ring.embed(f, ext)
    J = IdealRep(ext, gens_ext + [ext.one() - t * f_ext])
    if not J.is_unit_ideal(budget):
        return None
    w = ideal_member(ext.one(), J, budget)
    k = max((c.degree_in(0) for c in w.cofactors), default=0) + 1
    # walk the exponent down to the least k with f^k in I
    power = ring.one()
    best = None
    for j in range(1, k + 1):
        power = power * f
        if I.normal_form(power, budget).is_zero():
            best = j
            break
    if best is None:
        best = k
    witness = ideal_member(f ** best, I, budget)
    if witness is None:
        raise KrullError("radical membership certificate failed to land")
    return MembershipWitness(I.gens, f, witness.cofactors, exponent=best)


def divide_exact(p: Poly, f: Poly) -> Poly:
    """Exact division p / f; raises if f does not divide p."""
    ring = p.ring
    q = ring.zero()
    cur = p
    while not cur.is_zero():
        exp, c = cur.lt()
        if not _divides(f.lm(), exp):
            raise KrullError("exact division failed")
        qe = _quot(exp, f.lm())
        qc = ring.coeff(c * ring.coeff_inv(f.lc()))
        q = q + ring.from_terms([(qe, qc)])
        cur = cur - f.mul_term(qe, qc)
    return q


def intersect(I: IdealRep, J: IdealRep, budget: Budget | None = None) -> IdealRep:
    """I cap J by elimination: (t*I + (1-t)*J) cap A."""
    budget = budget or Budget()
    ring = I.ring
    ext = ring.with_aux([_fresh_name(ring, "t")])
    t = ext.var(ext.vars[0])
    one_minus_t = ext.one() - t
    gens_ext = [t * ring.embed(g, ext) for g in I.gens]
    gens_ext += [one_minus_t * ring.embed(g, ext) for g in J.gens]
    return IdealRep(ring, _eliminate(ext, gens_ext, ring, budget))


def ideal_quotient(I: IdealRep, f: Poly, budget: Budget | None = None) -> IdealRep:
    """(I : f) by intersection with <f> and exact division."""
    budget = budget or Budget()
    ring = I.ring
    if f.is_zero():
        return IdealRep(ring, [ring.one()])
    if f.is_constant():
        return I
    meet = intersect(I, IdealRep(ring, [f]), budget)
    return IdealRep(ring, [divide_exact(g, f) for g in meet.gens])


@dataclass
class SatResult:
    """Saturation (I : f^infinity) with its stabilization exponent.

    ``witnesses[i]`` proves gens[i] * f^exponent in I with exact
    cofactors over the generators of I.
    """

    ideal: IdealRep
    exponent: int
    witnesses: list[MembershipWitness] = field(default_factory=list)


def saturation(I: IdealRep, f: Poly, budget: Budget | None = None) -> SatResult:
    """(I : f^infinity) by the extra-variable elimination, with exponent."""
    budget = budget or Budget()
    ring = I.ring
    if f.is_zero():
        one = IdealRep(ring, [ring.one()])
        w = ideal_member(ring.zero(), I, budget)  # 1*0 = 0 in I
        return SatResult(one, 1, [MembershipWitness(I.gens, ring.zero(), w.cofactors)])
    if f.is_constant():
        return SatResult(I, 0, [
            MembershipWitness(I.gens, g,
                              tuple(ring.one() if t == i else ring.zero()
                                    for t in range(len(I.gens))), 1)
            for i, g in enumerate(I.gens)])
    ext = ring.with_aux([_fresh_name(ring, "t")])
    t = ext.var(ext.vars[0])
    gens_ext = [ring.embed(g, ext) for g in I.gens]
    gens_ext.append(ext.one() - t * ring.embed(f, ext))
    sat_gens = _eliminate(ext, gens_ext, ring, budget)
    if not sat_gens:
        sat_gens = [ring.zero()]
    exponent = 0
    staged: list[tuple[Poly, int]] = []
    for s in sat_gens:
        e_s, power = 0, s
        while not I.normal_form(power, budget).is_zero():
            e_s += 1
            power = power * f
            budget.check_degree(power.total_degree())
        staged.append((s, e_s))
        exponent = max(exponent, e_s)
    witnesses = []
    for s, _ in staged:
        w = ideal_member(s * f ** exponent, I, budget)
        if w is None:
            raise KrullError("saturation exponent bookkeeping failed")
        witnesses.append(w)
    return SatResult(IdealRep(ring, sat_gens), exponent, witnesses)


def _eliminate(ext: Ring, gens_ext: list[Poly], base: Ring,
               budget: Budget) -> list[Poly]:
    gb = buchberger(gens_ext, ext, budget)
    out = []
    for g in gb:
        back = base.contract(g.poly, ext)
        if back is not None:
            out.append(back)
    return out


def _fresh_name(ring: Ring, stem: str) -> str:
    name = stem
    while name in ring.vars:
        name += "_"
    return name
