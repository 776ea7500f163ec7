"""Finite posets as bitmask structures.

A finite poset doubles as a finite spectral space: its downsets are the
quasi-compact opens, upward closure is topological closure, and the
downset lattice is the dual finite distributive lattice.  Point count is
capped so every downset fits in a machine-word bitmask.

All values are immutable after construction; everything here is safe to
share across threads.
"""

from __future__ import annotations

from .errors import CapacityError, InputError

MAX_POINTS = 24


class FinPoset:
    """Finite partially ordered set over named points.

    ``down[i]`` is the bitmask of ``{j : p_j <= p_i}`` (principal downset),
    ``up[i]`` the principal upset.  The order is validated at construction.
    """

    __slots__ = ("names", "n", "down", "up", "_key")

    def __init__(self, names: list[str], leq_pairs: set[tuple[int, int]]):
        if len(names) > MAX_POINTS:
            raise CapacityError(
                f"poset has {len(names)} points, cap is {MAX_POINTS}")
        if len(set(names)) != len(names):
            raise InputError("duplicate point names")
        self.names = tuple(names)
        self.n = len(names)
        down = [1 << i for i in range(self.n)]
        for a, b in leq_pairs:  # a <= b
            down[b] |= 1 << a
        # transitive closure
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                acc = down[i]
                m = acc
                while m:
                    j = (m & -m).bit_length() - 1
                    acc |= down[j]
                    m &= m - 1
                if acc != down[i]:
                    down[i] = acc
                    changed = True
        for i in range(self.n):
            for j in range(self.n):
                if i != j and down[i] >> j & 1 and down[j] >> i & 1:
                    raise InputError(
                        f"antisymmetry fails: {names[i]} and {names[j]}")
        self.down = tuple(down)
        up = [0] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if down[j] >> i & 1:
                    up[i] |= 1 << j
        self.up = tuple(up)
        self._key = None

    @classmethod
    def from_covers(cls, points: list[str], covers: list[tuple[str, str]]) -> "FinPoset":
        index = {p: i for i, p in enumerate(points)}
        pairs = set()
        for a, b in covers:
            if a not in index or b not in index:
                raise InputError(f"cover ({a!r},{b!r}) uses unknown point")
            pairs.add((index[a], index[b]))
        return cls(list(points), pairs)

    @classmethod
    def chain(cls, k: int, prefix: str = "c") -> "FinPoset":
        names = [f"{prefix}{i}" for i in range(k)]
        return cls(names, {(i, i + 1) for i in range(k - 1)})

    @classmethod
    def antichain(cls, k: int, prefix: str = "a") -> "FinPoset":
        return cls([f"{prefix}{i}" for i in range(k)], set())

    def le(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown point {name!r}") from None

    # --- mask operations (masks are subsets of points) ---

    def downclose(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            out |= self.down[i]
            m &= m - 1
        return out

    def upclose(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            out |= self.up[i]
            m &= m - 1
        return out

    def is_downset(self, mask: int) -> bool:
        return self.downclose(mask) == mask

    def is_upset(self, mask: int) -> bool:
        return self.upclose(mask) == mask

    def maximal_mask(self) -> int:
        out = 0
        for i in range(self.n):
            if self.up[i] == 1 << i:
                out |= 1 << i
        return out

    def minimal_mask(self) -> int:
        out = 0
        for i in range(self.n):
            if self.down[i] == 1 << i:
                out |= 1 << i
        return out

    def downsets(self) -> list[int]:
        """All downsets, by incremental closure over a linear extension."""
        order = self.linear_extension()
        sets = {0}
        for i in order:
            sets |= {m | self.down[i] for m in sets}
        return sorted(sets)

    def linear_extension(self) -> list[int]:
        order, placed = [], 0
        while len(order) < self.n:
            for i in range(self.n):
                if not placed >> i & 1 and self.down[i] & ~placed == 1 << i:
                    order.append(i)
                    placed |= 1 << i
                    break
        return order

    def longest_chain(self) -> int:
        """Number of points in a longest chain (0 for the empty poset)."""
        order = self.linear_extension()
        height = [1] * self.n
        for i in order:
            below = self.down[i] & ~(1 << i)
            m = below
            while m:
                j = (m & -m).bit_length() - 1
                height[i] = max(height[i], height[j] + 1)
                m &= m - 1
        return max(height, default=0)

    def subposet(self, mask: int) -> "FinPoset":
        """Induced subposet on the points of ``mask``."""
        keep = [i for i in range(self.n) if mask >> i & 1]
        names = [self.names[i] for i in keep]
        pairs = {(a, b)
                 for a, i in enumerate(keep) for b, j in enumerate(keep)
                 if a != b and self.le(i, j)}
        return FinPoset(names, pairs)

    def opposite(self) -> "FinPoset":
        pairs = {(j, i)
                 for i in range(self.n) for j in range(self.n)
                 if i != j and self.le(i, j)}
        return FinPoset(list(self.names), pairs)

    def relabel(self, names: list[str]) -> "FinPoset":
        pairs = {(i, j)
                 for i in range(self.n) for j in range(self.n)
                 if i != j and self.le(i, j)}
        return FinPoset(names, pairs)

    # --- canonical form / isomorphism ---

    def canonical_key(self) -> tuple:
        """Isomorphism-invariant key: equal keys iff isomorphic posets.

        Decomposes into comparability components, shortcuts chains and
        antichains, and runs a pruned search over linear extensions for
        the connected leftovers (tiny at the scales this library allows).
        """
        if self._key is None:
            comps = sorted(_component_key(self, c) for c in _components(self))
            self._key = (self.n, tuple(comps))
        return self._key

    def isomorphic(self, other: "FinPoset") -> bool:
        return self.canonical_key() == other.canonical_key()

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for j in range(self.n):
            below = self.down[j] & ~(1 << j)
            m = below
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                strictly_between = False
                mm = below & self.up[i] & ~(1 << i)
                if mm:
                    strictly_between = True
                if not strictly_between:
                    out.append((self.names[i], self.names[j]))
        return sorted(out)

    def __repr__(self):
        return f"FinPoset({list(self.names)}, covers={self.covers()})"

    def to_json(self) -> dict:
        return {"points": list(self.names), "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_json(cls, data: dict) -> "FinPoset":
        if not isinstance(data, dict) or "points" not in data:
            raise InputError("poset JSON needs a 'points' list")
        covers = [tuple(c) for c in data.get("covers", [])]
        return cls.from_covers(list(data["points"]), covers)


def _components(p: FinPoset) -> list[int]:
    """Connected components of the comparability graph, as masks."""
    seen = 0
    comps = []
    for i in range(p.n):
        if seen >> i & 1:
            continue
        comp = 1 << i
        frontier = 1 << i
        while frontier:
            j = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nbrs = (p.down[j] | p.up[j]) & ~comp
            comp |= nbrs
            frontier |= nbrs
        comps.append(comp)
        seen |= comp
    return comps


def _component_key(p: FinPoset, mask: int) -> tuple:
    k = bin(mask).count("1")
    sub = p.subposet(mask)
    if all(sub.down[i] == 1 << i for i in range(k)):
        return ("a", k)
    if sub.longest_chain() == k:
        return ("c", k)
    return ("g", k, _min_extension_code(sub))


def _min_extension_code(p: FinPoset) -> tuple:
    """Lexicographically least relation-mask sequence over linear extensions.

    At step t the emitted integer records which already-placed points lie
    below the new one; the full sequence reconstructs the poset, so the
    minimum is a complete isomorphism invariant.
    """
    n = p.n
    best: list[int] | None = None

    def rec(placed: list[int], placed_mask: int, code: list[int]):
        nonlocal best
        if len(placed) == n:
            if best is None or code < best:
                best = list(code)
            return
        cands = [i for i in range(n)
                 if not placed_mask >> i & 1
                 and p.down[i] & ~placed_mask == 1 << i]
        step_codes = {}
        for i in cands:
            c = 0
            for t, j in enumerate(placed):
                if p.le(j, i):
                    c |= 1 << t
            step_codes.setdefault(c, []).append(i)
        t = len(placed)
        for c in sorted(step_codes):
            if best is not None and code + [c] > best[: t + 1]:
                break
            for i in step_codes[c]:
                rec(placed + [i], placed_mask | 1 << i, code + [c])

    rec([], 0, [])
    return tuple(best if best is not None else [])
