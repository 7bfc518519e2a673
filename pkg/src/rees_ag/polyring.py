"""Exact sparse multivariate polynomials over Q and F_p.

Polynomials are immutable maps from exponent tuples to nonzero field
scalars.  Display order is graded lexicographic (descending) with respect
to the declared variable order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InputError, ParseError, RingMismatchError

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[int, ...], one exponent per variable

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals when ``p == 0``, else F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise InputError(f"F_p requires a prime, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, c: Scalar) -> Scalar:
        """Coerce an int or Fraction into this field."""
        if self.p == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise InputError(f"denominator {c.denominator} is not invertible mod {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def norm(self, c: Scalar) -> Scalar:
        """Cheap normalization of a result of field arithmetic."""
        return c % self.p if self.p else c

    def inv(self, c: Scalar) -> Scalar:
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(c)
        return pow(int(c), -1, self.p)

    def __str__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


@dataclass(frozen=True)
class RingDescriptor:
    field: Field
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise InputError("a ring needs at least one variable")
        for v in self.variables:
            if not isinstance(v, str) or not _IDENT.match(v):
                raise InputError(f"invalid variable name {v!r}")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("variable names must be distinct")

    @property
    def d(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def extend(self, names: Sequence[str]) -> "RingDescriptor":
        """The ring with ``names`` appended as new variables."""
        clash = set(names) & set(self.variables)
        if clash:
            raise InputError(f"variable names already in use: {sorted(clash)}")
        return RingDescriptor(self.field, self.variables + tuple(names))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.d: c})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.d
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.d)]

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def polynomial_ring(variables: Iterable[str], p: int = 0) -> RingDescriptor:
    return RingDescriptor(Field(p), tuple(variables))


def grlex_key(m: Monomial):
    return (sum(m), m)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to scalars."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Monomial, Scalar], *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms = dict(terms)
        else:
            F = ring.field
            d = ring.d
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != d or any(e < 0 for e in m):
                    raise InputError(f"bad exponent vector {m} for {d} variables")
                c = F(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            self._terms = {m: c for m, c in clean.items() if F(c)}
        self._hash = None

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return self._terms

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.ring.d, 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; -1 for zero."""
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def partial_degree(self, indices: Iterable[int]) -> set:
        """Set of degrees of the terms counted only in the given variables."""
        idx = list(indices)
        return {sum(m[i] for i in idx) for m in self._terms}

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if sum(m) == k}, _clean=True)

    def truncate(self, n: int) -> "Polynomial":
        """Drop every term of total degree >= n."""
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if sum(m) < n}, _clean=True)

    def variable_index(self):
        """Index of the variable if this polynomial is exactly that variable, else None."""
        if len(self._terms) != 1:
            return None
        (m, c), = self._terms.items()
        if c != 1 or sum(m) != 1:
            return None
        return m.index(1)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring.variables} vs {other.ring.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = F.norm(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.norm(-c) for m, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        out = {m: F.norm(c) for m, c in out.items()}
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.norm(v * c) for m, v in self._terms.items()}, _clean=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, mono: Monomial, truncate_at: int | None = None) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            mm = tuple(a + b for a, b in zip(m, mono))
            if truncate_at is None or sum(mm) < truncate_at:
                out[mm] = c
        return Polynomial(self.ring, out, _clean=True)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- ring changes -----------------------------------------------------
    def embed(self, target: RingDescriptor) -> "Polynomial":
        """Map into a ring whose variable list starts with this ring's variables."""
        n = self.ring.d
        if target.variables[:n] != self.ring.variables or target.field != self.ring.field:
            raise RingMismatchError("target ring does not extend the source ring")
        pad = (0,) * (target.d - n)
        return Polynomial(target, {m + pad: c for m, c in self._terms.items()}, _clean=True)

    def substitute(self, images: Mapping[int, "Polynomial"], target: RingDescriptor | None = None) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]``; other variables map to themselves.

        With ``target`` given, every variable must have an image in ``target``.
        """
        target = target or self.ring
        if target.field != self.ring.field:
            raise RingMismatchError("substitution across fields")
        imgs = []
        for i in range(self.ring.d):
            if i in images:
                imgs.append(images[i])
            elif target is self.ring:
                imgs.append(self.ring.var(i))
            else:
                raise InputError(f"no image for variable {self.ring.variables[i]}")
        result = target.zero()
        cache: dict = {}
        for m, c in self._terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = imgs[i] ** e
                    t = t * cache[key]
            result = result + t
        return result

    # -- display ----------------------------------------------------------
    def _mono_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.ring.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self:
            mono = self._mono_str(m)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    # expr  := term (('+'|'-') term)*
    # term  := unary (('*'|'/') unary)*
    # unary := ('+'|'-') unary | power
    # power := atom ('^' INT)?
    # atom  := INT | IDENT | '(' expr ')'

    def __init__(self, text: str, ring: RingDescriptor):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}, found {self._desc(tok)}", self.text, tok[2])
        self.i += 1
        return tok

    @staticmethod
    def _desc(tok):
        return "end of input" if tok[0] == "end" else repr(str(tok[1]))

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        value = self.expr()
        self.take("end")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", self.text, pos)
                try:
                    value = value.scale(self.ring.field.inv(rhs.constant_term()))
                except ZeroDivisionError:
                    raise ParseError("division by zero", self.text, pos) from None
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")[1]
            base = base ** exp
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(val)
        if kind == "ident":
            self.take()
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.var(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {self._desc(self.peek())}", self.text, pos)


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse an expression like ``"x*(1-x) + 3*y^2"`` into a polynomial.

    Multiplication must be explicit; ``/`` is accepted only with a nonzero
    constant divisor (needed to read back printed rational coefficients).
    """
    return _Parser(text, ring).parse()


# -- operations on lists / matrices ------------------------------------------

def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        if isinstance(g, Polynomial):
            f._coerce(g)
        return f * g
    if op == "scale":
        if isinstance(g, Polynomial):
            raise InputError("scale expects a scalar")
        return f.scale(g)
    raise InputError(f"unknown operation {op!r}")


def det_exact(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along the first row.

    Minors are memoized on their column sets, so an n x n matrix costs
    O(n 2^n) polynomial products.
    """
    n = len(M)
    if n == 0:
        raise InputError("empty matrix")
    if any(len(row) != n for row in M):
        raise InputError("determinant of a non-square matrix")
    ring = M[0][0].ring
    for row in M:
        for e in row:
            if e.ring != ring:
                raise RingMismatchError("matrix entries from different rings")

    memo = {}

    def minor(cols: tuple) -> Polynomial:
        # rows n-len(cols) .. n-1 against the given columns
        if not cols:
            return ring.one()
        if cols in memo:
            return memo[cols]
        row = n - len(cols)
        total = ring.zero()
        for k, c in enumerate(cols):
            entry = M[row][c]
            if entry:
                sub = minor(cols[:k] + cols[k + 1:])
                term = entry * sub
                total = total - term if k % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def minors2(top: Sequence[Polynomial], bottom: Sequence[Polynomial]) -> list:
    """All 2x2 minors of the 2 x r matrix with the given rows, in (i<j) order."""
    return [det_exact([[top[i], top[j]], [bottom[i], bottom[j]]])
            for i, j in combinations(range(len(top)), 2)]

