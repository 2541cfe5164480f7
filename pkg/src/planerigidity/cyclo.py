"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored on the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n),
fully reduced modulo the n-th cyclotomic polynomial, as a vector of integers
over one positive denominator.  Two values are equal when their images in
Q(zeta_lcm) have the same basis vector.  There is no floating point anywhere.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConductorError, ParseError

CONDUCTOR_CAP = 2520


# ---------------------------------------------------------------------------
# integer polynomials (dense, low degree first)

def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return out


def _poly_divmod_exact(num, den):
    """Quotient of two integer polynomials known to divide exactly."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c // lead
        if q[k]:
            for j, b in enumerate(den):
                num[k + j] -= q[k] * b
    if any(num):
        raise ArithmeticError("nonzero remainder in exact division")
    return q


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    m, k = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Coefficients of Phi_n, constant term first, computed by exact division
    of x^n - 1 by the product of Phi_d over proper divisors d of n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divmod_exact(num, den))


@lru_cache(maxsize=None)
def _zeta_power_table(n: int):
    """Integer basis vectors of z^e mod Phi_n for e = 0..n-1."""
    d = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z
        top = cur[d - 1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _norm_trace_row(n: int):
    """Fractions tr(z^j)/phi(n) for j = 0..phi(n)-1; tr(z^j) depends only on
    the order d of z^j and equals mu(d) * phi(n)/phi(d)."""
    out = []
    for j in range(euler_phi(n)):
        d = n // math.gcd(n, j)
        out.append(Fraction(moebius(d), euler_phi(d)))
    return tuple(out)


def _normalize(den, coeffs):
    g = den
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        den //= g
        coeffs = tuple(c // g for c in coeffs)
    return den, tuple(coeffs)


class CycloNum:
    """An element of Q(zeta_n); immutable and hashable.

    Equality is semantic: values declared at different conductors compare
    equal when they denote the same complex number.
    """

    __slots__ = ("n", "den", "coeffs", "_hash")

    def __init__(self, n: int, coeffs, den: int = 1):
        if n < 1 or n > CONDUCTOR_CAP:
            raise ConductorError(f"conductor {n} outside 1..{CONDUCTOR_CAP}")
        d = euler_phi(n)
        fracs = [Fraction(c) / den for c in coeffs]
        if len(fracs) > d:
            raise ValueError("coefficient vector longer than phi(n)")
        fracs += [Fraction(0)] * (d - len(fracs))
        common = 1
        for f in fracs:
            common = common * f.denominator // math.gcd(common, f.denominator)
        ints = tuple(f.numerator * (common // f.denominator) for f in fracs)
        self.n = n
        self.den, self.coeffs = _normalize(common, ints)
        self._hash = None

    # -- fast internal constructor -----------------------------------------
    @classmethod
    def _raw(cls, n, den, ints):
        self = object.__new__(cls)
        if den < 0:
            den, ints = -den, tuple(-c for c in ints)
        self.n = n
        self.den, self.coeffs = _normalize(den, tuple(ints))
        self._hash = None
        return self

    @classmethod
    def rational(cls, value, conductor: int = 1) -> "CycloNum":
        f = Fraction(value)
        ints = [f.numerator] + [0] * (euler_phi(conductor) - 1)
        return cls._raw(conductor, f.denominator, ints)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycloNum":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycloNum":
        return cls.rational(1, conductor)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    @property
    def fractions(self):
        """Coefficients on the power basis as Fractions."""
        return tuple(Fraction(c, self.den) for c in self.coeffs)

    # -- conductor handling ---------------------------------------------------
    def embed(self, m: int) -> "CycloNum":
        """The same field element expressed in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ConductorError(f"conductor {self.n} does not divide {m}")
        if m > CONDUCTOR_CAP:
            raise ConductorError(f"conductor {m} exceeds cap {CONDUCTOR_CAP}")
        table = _zeta_power_table(m)
        step = m // self.n
        out = [0] * euler_phi(m)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * step) % m]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloNum._raw(m, self.den, out)

    def twist(self, j: int) -> "CycloNum":
        """Apply the field symmetry z -> z^j (j coprime to the conductor)."""
        if math.gcd(j, self.n) != 1:
            raise ValueError("twist exponent must be coprime to the conductor")
        table = _zeta_power_table(self.n)
        out = [0] * euler_phi(self.n)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * j) % self.n]
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
        return CycloNum._raw(self.n, self.den, out)

    # -- ring operations ------------------------------------------------------
    def _common(self, other):
        if not isinstance(other, CycloNum):
            other = CycloNum.rational(other)
        if self.n == other.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        ints = tuple(x * b.den + y * a.den for x, y in zip(a.coeffs, b.coeffs))
        return CycloNum._raw(a.n, a.den * b.den, ints)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.n, self.den, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        ints = tuple(x * b.den - y * a.den for x, y in zip(a.coeffs, b.coeffs))
        return CycloNum._raw(a.n, a.den * b.den, ints)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        d = euler_phi(a.n)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        if any(conv[d:]):
            table = _zeta_power_table(a.n)
            for e in range(d, 2 * d - 1):
                c = conv[e]
                if c:
                    row = table[e % a.n]
                    for j, r in enumerate(row):
                        if r:
                            out[j] += c * r
        return CycloNum._raw(a.n, a.den * b.den, out)

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm against
        Phi_n over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            f = 1 / self.as_fraction()
            return CycloNum.rational(f, self.n)
        return _inv_cached(self)

    def __truediv__(self, other):
        if not isinstance(other, CycloNum):
            other = CycloNum.rational(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = CycloNum.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(other)
        elif not isinstance(other, CycloNum):
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.den == b.den and a.coeffs == b.coeffs

    def __hash__(self):
        # Conductor-independent: rationals hash like Fractions, everything
        # else by normalized traces of x and x^2 (Galois conjugates collide,
        # which only costs dict bucket length, never correctness).
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.coeffs[0], self.den))
            else:
                row = _norm_trace_row(self.n)
                t1 = sum(c * r for c, r in zip(self.coeffs, row) if c) / self.den
                sq = self * self
                row2 = _norm_trace_row(sq.n)
                t2 = sum(c * r for c, r in zip(sq.coeffs, row2) if c) / sq.den
                self._hash = hash((t1, t2))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- text form (the group-file expression grammar) ---------------------------
    def __str__(self):
        return format_cyclo(self)

    def __repr__(self):
        return f"CycloNum({self.n}, '{format_cyclo(self)}')"


def zeta(n: int, e: int = 1) -> CycloNum:
    """The root of unity z_n^e."""
    if n < 1 or n > CONDUCTOR_CAP:
        raise ConductorError(f"conductor {n} outside 1..{CONDUCTOR_CAP}")
    row = _zeta_power_table(n)[e % n]
    return CycloNum._raw(n, 1, row)


@lru_cache(maxsize=8192)
def _inv_cached(x: CycloNum) -> CycloNum:
    phi = [Fraction(c) for c in cyclotomic_polynomial(x.n)]
    a = [Fraction(c, x.den) for c in x.coeffs]
    while a and not a[-1]:
        a.pop()
    # extended Euclid: find u with u*a = gcd (mod Phi); gcd is a nonzero constant
    r0, r1 = phi, a
    s0, s1 = [Fraction(0)], [Fraction(1)]

    def pdivmod(num, den):
        num = list(num)
        q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        for k in range(len(q) - 1, -1, -1):
            c = num[k + len(den) - 1] / den[-1]
            q[k] = c
            if c:
                for j, b in enumerate(den):
                    num[k + j] -= c * b
        while num and not num[-1]:
            num.pop()
        return q, num

    def padd(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] += c
        while out and not out[-1]:
            out.pop()
        return out

    def pmulf(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, c in enumerate(p):
            if c:
                for j, d in enumerate(q):
                    if d:
                        out[i + j] += c * d
        while out and not out[-1]:
            out.pop()
        return out

    while len(r1) > 1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, padd(s0, [-c for c in pmulf(q, s1)])
    if not r1:
        raise ZeroDivisionError("element shares a factor with Phi_n")
    u = [c / r1[0] for c in s1]
    return CycloNum(x.n, u)


# ---------------------------------------------------------------------------
# square roots of monomial values (rational multiples of roots of unity)

def sqrt_candidates(x: CycloNum):
    """Both square roots of x when x is a positive rational times a root of
    unity reachable within the conductor cap; otherwise None."""
    if x.is_zero():
        return [CycloNum.zero(x.n)]
    n2 = 2 * x.n if x.n % 2 else x.n
    for f in range(n2):
        t = x * zeta(n2, (n2 - f) % n2)
        if t.is_rational():
            q = t.as_fraction()
            if q <= 0:
                continue
            a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
            if a * a != q.numerator or b * b != q.denominator:
                return None
            r = CycloNum.rational(Fraction(a, b))
            if f % 2 == 0:
                root = r * zeta(n2, f // 2)
            elif n2 % 2:  # odd conductor: z^((f+n2)/2) squares to z^f
                root = r * zeta(n2, (f + n2) // 2)
            else:
                if 2 * n2 > CONDUCTOR_CAP:
                    return None
                root = r * zeta(2 * n2, f)
            return [root, -root]
    return None


# ---------------------------------------------------------------------------
# expression grammar:  rationals p/q, the symbol z (= zeta_conductor), z^k,
# operators + - *, parentheses.

def format_cyclo(x: CycloNum) -> str:
    terms = []
    for e in range(euler_phi(x.n) - 1, -1, -1):
        c = Fraction(x.coeffs[e], x.den)
        if not c:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            z = "z" if e == 1 else f"z^{e}"
            body = z if abs(c) == 1 else f"{abs(c)}*{z}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(terms) if terms else "0"


class _ExprParser:
    def __init__(self, text, conductor, line=None, col0=0):
        self.text = text
        self.pos = 0
        self.n = conductor
        self.line = line
        self.col0 = col0

    def error(self, msg):
        raise ParseError(msg, self.line, self.col0 + self.pos + 1)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> CycloNum:
        v = self.expr()
        if self.peek():
            self.error(f"unexpected {self.text[self.pos]!r}")
        return v

    def expr(self):
        c = self.peek()
        if c == "-":
            self.pos += 1
            v = -self.term()
        else:
            v = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                v = v + self.term()
            elif c == "-":
                self.pos += 1
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.factor()
        while self.peek() == "*":
            self.pos += 1
            v = v * self.factor()
        return v

    def factor(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return v
        if c == "-":
            self.pos += 1
            return -self.factor()
        if c == "z":
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                e = self.integer()
            else:
                e = 1
            return zeta(self.n, e % self.n)
        if c.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
                return CycloNum.rational(Fraction(num, den), 1)
            return CycloNum.rational(num, 1)
        self.error(f"unexpected {c!r}" if c else "unexpected end of expression")

    def integer(self):
        c = self.peek()
        start = self.pos
        if c == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_cyclo(text: str, conductor: int, line=None, col0=0) -> CycloNum:
    """Parse one expression of the group-file grammar at the given conductor."""
    return _ExprParser(text, conductor, line, col0).parse()
