"""Exact multivariate polynomials over Q or F_p.

Terms are kept sorted in graded reverse lexicographic order (optionally
block-wise, for internal elimination rings).  Coefficients are
``fractions.Fraction`` in characteristic 0 and least residues mod p
otherwise; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

GREVLEX = "grevlex"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Ring:
    """Polynomial ring K[vars] with a fixed monomial order.

    ``elim_block`` marks how many leading variables form an elimination
    block (compared first); user-facing rings keep the default 0.
    """

    __slots__ = ("char", "vars", "elim_block")

    def __init__(self, char: int, variables: list[str], elim_block: int = 0):
        if char != 0 and not _is_prime(char):
            raise InputError(f"characteristic {char} is not 0 or prime")
        if len(set(variables)) != len(variables):
            raise InputError("duplicate variable names")
        for v in variables:
            if not v or not (v[0].isalpha() or v[0] == "_"):
                raise InputError(f"bad variable name {v!r}")
        self.char = char
        self.vars = tuple(variables)
        self.elim_block = elim_block

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def same(self, other: "Ring") -> bool:
        return (self.char == other.char and self.vars == other.vars
                and self.elim_block == other.elim_block)

    # --- coefficients ---

    def coeff(self, value) -> "Fraction | int":
        if self.char == 0:
            return value if isinstance(value, Fraction) else Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.char
            if den == 0:
                raise InputError("denominator vanishes mod p")
            return value.numerator * pow(den, -1, self.char) % self.char
        return int(value) % self.char

    def coeff_inv(self, c):
        if self.char == 0:
            return Fraction(1) / c
        return pow(c, -1, self.char)

    # --- monomial order ---

    def order_key(self, exp: tuple[int, ...]):
        if self.elim_block:
            k = self.elim_block
            return (_grevlex_key(exp[:k]), _grevlex_key(exp[k:]))
        return _grevlex_key(exp)

    # --- construction ---

    def zero(self) -> "Poly":
        return Poly(self, ())

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.coeff(c)
        if not c:
            return Poly(self, ())
        return Poly(self, (((0,) * self.nvars, c),))

    def var(self, name: str) -> "Poly":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, ((exp, self.coeff(1)),))

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in self.vars]

    def from_terms(self, items) -> "Poly":
        acc: dict[tuple[int, ...], object] = {}
        for exp, c in items:
            c = self.coeff(c)
            if exp in acc:
                c = self.coeff(acc[exp] + c)
            acc[exp] = c
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                             key=lambda t: self.order_key(t[0]), reverse=True))
        return Poly(self, terms)

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    # --- ring extension for internal eliminations ---

    def with_aux(self, aux_names: list[str]) -> "Ring":
        """Extension with ``aux_names`` prepended as an elimination block."""
        for a in aux_names:
            if a in self.vars:
                raise InputError(f"aux variable {a!r} already present")
        return Ring(self.char, list(aux_names) + list(self.vars),
                    elim_block=len(aux_names) + self.elim_block)

    def embed(self, f: "Poly", ext: "Ring") -> "Poly":
        pad = ext.nvars - self.nvars
        return Poly(ext, tuple((((0,) * pad) + e, c) for e, c in f.terms))

    def contract(self, f: "Poly", ext: "Ring") -> "Poly | None":
        """Pull a polynomial of ``ext`` back, or None if aux variables occur."""
        pad = ext.nvars - self.nvars
        terms = []
        for e, c in f.terms:
            if any(e[:pad]):
                return None
            terms.append((e[pad:], c))
        return self.from_terms(terms)

    def __repr__(self):
        k = "QQ" if self.char == 0 else f"GF({self.char})"
        return f"Ring({k}[{', '.join(self.vars)}])"

    def to_json(self) -> dict:
        return {"char": self.char, "vars": list(self.vars)}

    @classmethod
    def from_json(cls, data: dict) -> "Ring":
        if not isinstance(data, dict) or "vars" not in data:
            raise InputError("ring JSON needs 'char' and 'vars'")
        return cls(int(data.get("char", 0)), list(data["vars"]))


def _grevlex_key(exp: tuple[int, ...]):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Poly:
    """Immutable polynomial: term tuple sorted descending in the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms

    # --- queries ---

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return (len(self.terms) == 1 and not any(self.terms[0][0])
                and self.terms[0][1] == self.ring.coeff(1))

    def is_constant(self) -> bool:
        return not self.terms or not any(self.terms[0][0])

    def lt(self) -> tuple:
        return self.terms[0]

    def lm(self) -> tuple[int, ...]:
        return self.terms[0][0]

    def lc(self):
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=-1)

    def coeff_of(self, exp: tuple[int, ...]):
        for e, c in self.terms:
            if e == exp:
                return c
        return self.ring.coeff(0)

    # --- arithmetic ---

    def __add__(self, other: "Poly") -> "Poly":
        _check(self, other)
        return _merge(self, other, 1)

    def __sub__(self, other: "Poly") -> "Poly":
        _check(self, other)
        return _merge(self, other, -1)

    def __neg__(self) -> "Poly":
        return Poly(self.ring, tuple((e, self.ring.coeff(-c)) for e, c in self.terms))

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        _check(self, other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        acc: dict[tuple[int, ...], object] = {}
        coeff = self.ring.coeff
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = acc.get(e)
                acc[e] = coeff(c1 * c2) if prev is None else coeff(prev + c1 * c2)
        ring = self.ring
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                             key=lambda t: ring.order_key(t[0]), reverse=True))
        return Poly(ring, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, tuple((e, self.ring.coeff(k * c)) for e, k in self.terms))

    def mul_term(self, exp: tuple[int, ...], c) -> "Poly":
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring,
                    tuple((tuple(a + b for a, b in zip(e, exp)), self.ring.coeff(k * c))
                          for e, k in self.terms))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise InputError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.coeff_inv(self.lc()))

    def substitute(self, values: dict[int, "Poly"]) -> "Poly":
        """Replace variable indices by polynomials (tests and witnesses only)."""
        out = self.ring.zero()
        for e, c in self.terms:
            term = self.ring.const(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                base = values.get(i, self.ring.var(self.ring.vars[i]))
                term = term * base ** k
            out = out + term
        return out

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring.same(other.ring)
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring.char, self.ring.vars, self.terms))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.terms:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.ring.vars, e) if k)
            if not mono:
                body = _coeff_text(abs_coeff(c, self.ring.char))
            elif abs_coeff(c, self.ring.char) == 1:
                body = mono
            else:
                body = f"{_coeff_text(abs_coeff(c, self.ring.char))}*{mono}"
            sign = "-" if is_negative(c, self.ring.char) else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out


def abs_coeff(c, char):
    if char == 0:
        return -c if c < 0 else c
    return c


def is_negative(c, char) -> bool:
    return char == 0 and c < 0


def _coeff_text(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _merge(a: Poly, b: Poly, sign: int) -> Poly:
    ring = a.ring
    acc = dict(a.terms)
    coeff = ring.coeff
    for e, c in b.terms:
        prev = acc.get(e)
        c = c if sign > 0 else coeff(-c)
        acc[e] = c if prev is None else coeff(prev + c)
    terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                         key=lambda t: ring.order_key(t[0]), reverse=True))
    return Poly(ring, terms)


def _check(a: Poly, b: Poly) -> None:
    if not a.ring.same(b.ring):
        raise InputError("polynomials from different rings")


class _Parser:
    """Recursive-descent parser for ``3/2*x^2*y - y + 1``."""

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def parse(self) -> Poly:
        out = self._expr()
        self._skip()
        if self.pos != len(self.text):
            raise InputError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return out

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else "\0"

    def _expr(self) -> Poly:
        sign = 1
        while self._peek() in "+-":
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        out = self._term().scale(sign)
        while self._peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            nxt = self._term()
            out = out + nxt if op == "+" else out - nxt
        return out

    def _term(self) -> Poly:
        out = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                out = out * self._factor()
            else:
                return out

    def _factor(self) -> Poly:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise InputError("exponent expected after '^'")
            return base ** int(self.text[start:self.pos])
        return base

    def _atom(self) -> Poly:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise InputError("missing ')'")
            self.pos += 1
            return inner
        if ch == "-":
            self.pos += 1
            return -self._atom()
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            num = int(self.text[start:self.pos])
            if self._peek() == "/":
                save = self.pos
                self.pos += 1
                if self._peek().isdigit():
                    start = self.pos
                    while self.pos < len(self.text) and self.text[self.pos].isdigit():
                        self.pos += 1
                    den = int(self.text[start:self.pos])
                    if den == 0:
                        raise InputError("zero denominator")
                    return self.ring.const(Fraction(num, den))
                self.pos = save
            return self.ring.const(num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while (self.pos < len(self.text)
                   and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
                self.pos += 1
            return self.ring.var(self.text[start:self.pos])
        raise InputError(f"unexpected character {ch!r} at {self.pos}")
