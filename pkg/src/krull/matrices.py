"""Exact matrices and vectors of polynomials.

Includes determinantal calculus (minors, adjugate), module-membership
testing by tag-variable flattening, and replay of elementary operation
scripts.  Everything stays in exact arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Budget, InputError
from .groebner import IdealRep, ideal_member
from .poly import Poly, Ring


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring: Ring, rows: list[list[Poly]]):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise InputError("ragged matrix")
        self.ncols = widths.pop() if widths else 0
        for r in self.rows:
            for e in r:
                if not e.ring.same(ring):
                    raise InputError("entry from a different ring")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_texts(cls, ring: Ring, rows: list[list[str]]) -> "PolyMatrix":
        return cls(ring, [[ring.parse(t) for t in r] for r in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero()
                           for j in range(n)] for i in range(n)])

    def col(self, j: int) -> list[Poly]:
        return [r[j] for r in self.rows]

    def cols(self) -> list[list[Poly]]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for i in range(self.nrows)]
                                      for j in range(self.ncols)])

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise InputError("dimension mismatch")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def apply(self, vec: list[Poly]) -> list[Poly]:
        if len(vec) != self.ncols:
            raise InputError("dimension mismatch")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            acc = z
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * vec[k]
            out.append(acc)
        return out

    def sub(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r1, r2)]
                                      for r1, r2 in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.rows == other.rows)

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def to_texts(self) -> list[list[str]]:
        return [[e.text() for e in r] for r in self.rows]


def determinant(ring: Ring, rows: list[list[Poly]]) -> Poly:
    """Cofactor expansion; matrices here are tiny."""
    n = len(rows)
    if n == 0:
        return ring.one()
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 1:
        return rows[0][0]
    acc = ring.zero()
    sign = 1
    for j in range(n):
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(ring, sub)
        acc = acc + term.scale(sign)
        sign = -sign
    return acc


def minor(M: PolyMatrix, row_idx: tuple[int, ...], col_idx: tuple[int, ...]) -> Poly:
    rows = [[M.rows[i][j] for j in col_idx] for i in row_idx]
    return determinant(M.ring, rows)


def minors(M: PolyMatrix, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...], Poly]]:
    """All k x k minors with their row/column index sets."""
    out = []
    for ri in itertools.combinations(range(M.nrows), k):
        for ci in itertools.combinations(range(M.ncols), k):
            out.append((ri, ci, minor(M, ri, ci)))
    return out


def minor_ideal_gens(M: PolyMatrix, k: int) -> list[Poly]:
    if k <= 0:
        return [M.ring.one()]
    if k > min(M.nrows, M.ncols):
        return []
    return [m for _, _, m in minors(M, k)]


def adjugate(ring: Ring, rows: list[list[Poly]]) -> list[list[Poly]]:
    n = len(rows)
    out = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[rows[a][b] for b in range(n) if b != j]
                   for a in range(n) if a != i]
            c = determinant(ring, sub)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return out


@dataclass(frozen=True)
class ModuleWitness:
    """vector = sum(col_cofactors[i] * cols[i]) + modulus contribution."""

    col_cofactors: tuple[Poly, ...]


def module_member(vec: list[Poly], cols: list[list[Poly]], ring: Ring,
                  modulus: IdealRep | None = None,
                  budget: Budget | None = None) -> ModuleWitness | None:
    """Decide vec in span_A(cols) + modulus*A^n by tag flattening.

    One fresh tag variable per coordinate, tag products killed; vectors
    become linear forms, so span membership reduces to ideal membership
    with tag-free cofactors.
    """
    budget = budget or Budget()
    n = len(vec)
    if any(len(c) != n for c in cols):
        raise InputError("dimension mismatch")
    tags = [f"e{i}_" for i in range(n)]
    while any(t in ring.vars for t in tags):
        tags = [t + "_" for t in tags]
    ext = ring.with_aux(tags)

    def linform(v: list[Poly]) -> Poly:
        acc = ext.zero()
        for i, entry in enumerate(v):
            acc = acc + ext.var(tags[i]) * ring.embed(entry, ext)
        return acc

    gens = [linform(c) for c in cols]
    ncols = len(gens)
    for i in range(n):
        for j in range(i, n):
            gens.append(ext.var(tags[i]) * ext.var(tags[j]))
    if modulus is not None:
        for g in modulus.gens:
            for i in range(n):
                gens.append(ext.var(tags[i]) * ring.embed(g, ext))
    J = IdealRep(ext, gens)
    w = ideal_member(linform(vec), J, budget)
    if w is None:
        return None
    out = []
    for c in w.cofactors[:ncols]:
        back = ring.contract(c, ext)
        if back is None:
            # strip tag-bearing part: it only feeds the killed tag products
            back = ring.contract(_tag_free_part(c, ext, n), ext)
        out.append(back)
    # re-verify coordinatewise modulo the modulus
    for i in range(n):
        acc = ring.zero()
        for cof, col in zip(out, cols):
            acc = acc + cof * col[i]
        diff = vec[i] - acc
        if modulus is None:
            if not diff.is_zero():
                return None
        else:
            if not diff.is_zero() and ideal_member(diff, modulus, budget) is None:
                return None
    return ModuleWitness(tuple(out))


def _tag_free_part(p: Poly, ext: Ring, ntags: int) -> Poly:
    terms = [(e, c) for e, c in p.terms if not any(e[:ntags])]
    return Poly(ext, tuple(terms))


@dataclass(frozen=True)
class ElementaryOp:
    """v[target] += coeff * v[source]; the only move scripts may use."""

    target: int
    source: int
    coeff: Poly


def replay_script(vec: list[Poly], script: list[ElementaryOp]) -> list[Poly]:
    out = list(vec)
    for op in script:
        if op.target == op.source:
            raise InputError("elementary op with equal target and source")
        out[op.target] = out[op.target] + op.coeff * out[op.source]
    return out
