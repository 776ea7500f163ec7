"""Finite spectral spaces as posets: distinguished subspaces and gluing.

The spectrum of a finite distributive lattice is its base poset; opens
are downsets, closure is upward closure, maximal ideals are maximal
points.  jspec is evaluated from the Jacobson-radical definition so that
its coincidence with Jspec on finite posets is a test, not an axiom.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .lattices import (FinDistLattice, GlueDiagram, LatIdeal, LatQuotientMap,
                       glue, heitmann_lattice, jacobson_radical, subquotient)
from .posets import FinPoset


@dataclass(frozen=True)
class SpectralSubset:
    space: FinPoset
    members: int  # point mask

    def names(self) -> list[str]:
        return [self.space.names[i] for i in range(self.space.n)
                if self.members >> i & 1]


def spec_subsets(T: FinDistLattice) -> dict[str, SpectralSubset]:
    """Max, Min, jspec and Jspec of Spec T.

    jspec collects the primes equal to their own Jacobson radical
    (evaluated exhaustively); Jspec is read off the Heitmann lattice.
    """
    base = T.base
    out = {
        "max": SpectralSubset(base, base.maximal_mask()),
        "min": SpectralSubset(base, base.minimal_mask()),
    }
    jmask = 0
    for i in range(base.n):
        prime = LatIdeal(T, frozenset(
            m for m in base.downsets() if not m >> i & 1))
        if jacobson_radical(T, prime) == prime:
            jmask |= 1 << i
    out["jspec"] = SpectralSubset(base, jmask)
    he = heitmann_lattice(T)
    hmask = 0
    for i in he.point_map:
        hmask |= 1 << i
    out["Jspec"] = SpectralSubset(base, hmask)
    return out


def subspace_lattice(T: FinDistLattice, Z: SpectralSubset) -> LatQuotientMap:
    """Quotient of T whose spectrum is exactly the subset Z."""
    if Z.space is not T.base:
        raise InputError("subset lives on a different space")
    return subquotient(T, Z.members)


def open_frontier(space: FinPoset, open_mask: int) -> int:
    """Topological boundary of the open ``open_mask``: closure minus interior."""
    if not space.is_downset(open_mask):
        raise InputError("open sets of a finite spectral space are downsets")
    return space.upclose(open_mask) & space.upclose(space.full_mask & ~open_mask)


def glue_spectra(spaces: list[FinPoset],
                 overlaps: dict[tuple[int, int], int]) -> FinPoset:
    """Glue finite spectral spaces along shared quasi-compact opens.

    ``overlaps[(i, j)]`` is the downset of ``spaces[i]`` shared with
    ``spaces[j]``; shared points carry equal names.  Each input embeds
    as a quasi-compact open (downset) of the result.
    """
    for (i, j), m in overlaps.items():
        if not spaces[i].is_downset(m):
            raise InputError(f"overlap ({i},{j}) is not an open (downset)")
    diagram = GlueDiagram([FinDistLattice(p) for p in spaces],
                          dict(overlaps), mode="filter")
    T, _ = glue(diagram)
    return T.base
