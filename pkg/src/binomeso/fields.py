"""Exact coefficient fields: rationals, prime fields GF(p), cyclotomics QQ(zeta_N).

Field elements are plain hashable values (Fraction, int, tuple of Fraction)
in a unique canonical form; all arithmetic goes through the owning Field
object, so equality of elements is plain ``==``.

Root extraction (`nth_roots`) is exact and complete for radicands that are
roots of unity or rationals with a rational d-th root of the absolute value.
Anything else (e.g. sqrt(2) inside QQ(zeta_8)) raises CapabilityError: the
decomposition pipeline only ever needs the supported cases, and guessing
silently would be worse than refusing.
"""

from fractions import Fraction
from math import gcd

from .errors import CapabilityError, InputError


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def int_nth_root(n, d):
    """Largest r >= 0 with r**d <= n, for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1) or d == 1:
        return n
    r = int(round(n ** (1.0 / d)))
    while r > 0 and r**d > n:
        r -= 1
    while (r + 1) ** d <= n:
        r += 1
    return r


def _rational_nth_root(c: Fraction, d: int):
    """The real rational r with r**d == c, or None."""
    if c == 0:
        return Fraction(0)
    neg = c < 0
    if neg and d % 2 == 0:
        return None
    a = abs(c.numerator)
    b = c.denominator
    ra, rb = int_nth_root(a, d), int_nth_root(b, d)
    if ra**d != a or rb**d != b:
        return None
    r = Fraction(ra, rb)
    return -r if neg else r


def _solve_unit_congruence(d, k, M):
    """All t mod M with d*t == k (mod M), as a sorted list."""
    g = gcd(d, M)
    if k % g:
        return []
    Mg = M // g
    t0 = (k // g) * pow(d // g, -1, Mg) % Mg
    return [t0 + j * Mg for j in range(g)]


class Field:
    """Common interface; subclasses define the element representation."""

    characteristic = 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero field element")
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        r = self.one
        base = a
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r

    def element_order(self, a):
        """Multiplicative order of a, or None if infinite."""
        if self.is_zero(a):
            raise ZeroDivisionError("zero has no multiplicative order")
        M = self.unity_order()
        x = a
        for k in range(1, M + 1):
            if self.is_one(x):
                return k
            x = self.mul(x, a)
        return None

    def unity_roots(self, d):
        """All d-th roots of unity present in the field."""
        return self.nth_roots(self.one, d)

    def __ne__(self, other):
        return not self.__eq__(other)


class Rationals(Field):
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero field element")
        return 1 / Fraction(a)

    def from_int(self, k):
        return Fraction(k)

    def from_fraction(self, q):
        return Fraction(q)

    def as_rational(self, a):
        return a

    def unity_order(self):
        return 2

    def unity_generator(self):
        return Fraction(-1)

    def nth_roots(self, c, d):
        if d == 1:
            return [c]
        r = _rational_nth_root(c, d)
        if r is None:
            return []
        if d % 2 == 0 and r != 0:
            return sorted({r, -r})
        return [r]

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """GF(p), elements are ints in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise InputError(f"GF({p}): modulus must be prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero field element")
        return pow(a, -1, self.p)

    def from_int(self, k):
        return k % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise InputError(f"{q} has no image in GF({self.p})")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def as_rational(self, a):
        return None

    def unity_order(self):
        return self.p - 1

    def unity_generator(self):
        for g in range(2, self.p):
            if self.element_order(g) == self.p - 1:
                return g
        return 1  # p == 2

    def nth_roots(self, c, d):
        c %= self.p
        return [x for x in range(1, self.p) if pow(x, d, self.p) == c]

    def format(self, a):
        return str(a % self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _poly_trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    inv_lead = 1 / Fraction(den[-1])
    while len(num) >= len(den) and _poly_trim(num):
        shift = len(num) - len(den)
        factor = num[-1] * inv_lead
        q[shift] = factor
        for i, dcoef in enumerate(den):
            num[shift + i] -= factor * dcoef
        _poly_trim(num)
    return _poly_trim(q), num


_cyclotomic_cache = {}


def cyclotomic_polynomial(N):
    """Coefficients of Phi_N, little-endian, exact integers as Fractions."""
    if N in _cyclotomic_cache:
        return _cyclotomic_cache[N]
    poly = [Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    _cyclotomic_cache[N] = poly
    return poly


class Cyclotomic(Field):
    """QQ(zeta_N) = QQ[x]/Phi_N(x); elements are coefficient tuples of length deg Phi_N."""

    def __init__(self, N):
        if N < 1:
            raise InputError("cyclotomic order must be >= 1")
        self.N = N
        self.modulus = cyclotomic_polynomial(N)
        self.degree = len(self.modulus) - 1
        self.name = f"QQ(zeta_{N})"
        self.zero = (Fraction(0),) * self.degree
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = tuple(one)

    @property
    def zeta(self):
        if self.degree == 1:
            # Phi_1 = x-1 or Phi_2 = x+1: zeta is rational
            return self.from_fraction(1 if self.N == 1 else -1)
        z = [Fraction(0)] * self.degree
        z[1] = Fraction(1)
        return tuple(z)

    def _reduce(self, coeffs):
        _, rem = _poly_divmod(list(coeffs), self.modulus)
        rem = rem + [Fraction(0)] * (self.degree - len(rem))
        return tuple(rem)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return self._reduce(_poly_mul(list(a), list(b)))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero field element")
        # extended Euclid in QQ[x] against the irreducible modulus
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            s = [x for x in s0]
            qs1 = _poly_mul(q, s1)
            n = max(len(s), len(qs1))
            s = [(s[i] if i < len(s) else 0) - (qs1[i] if i < len(qs1) else 0) for i in range(n)]
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s)
        c = r0[-1] if r0 else None
        assert r0 and len(r0) == 1, "modulus must be irreducible"
        return self._reduce([x / c for x in s0])

    def from_int(self, k):
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(k)
        return tuple(v)

    def from_fraction(self, q):
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(q)
        return tuple(v)

    def as_rational(self, a):
        if all(x == 0 for x in a[1:]):
            return a[0]
        return None

    def unity_order(self):
        return self.N if self.N % 2 == 0 else 2 * self.N

    def unity_generator(self):
        return self.zeta if self.N % 2 == 0 else self.neg(self.zeta)

    def _discrete_log(self, c):
        g = self.unity_generator()
        x = self.one
        for k in range(self.unity_order()):
            if x == c:
                return k
            x = self.mul(x, g)
        return None

    def nth_roots(self, c, d):
        if d == 1:
            return [c]
        M = self.unity_order()
        g = self.unity_generator()
        k = self._discrete_log(c)
        if k is not None:
            return [self.pow(g, t) for t in _solve_unit_congruence(d, k, M)]
        q = self.as_rational(c)
        if q is None:
            raise CapabilityError(
                f"cannot extract {d}-th roots of non-rational, non-root-of-unity "
                f"element in {self.name}"
            )
        r = _rational_nth_root(abs(q), d)
        if r is None:
            raise CapabilityError(
                f"{d}-th root of {q} is irrational; not representable in {self.name}"
            )
        if q > 0:
            y0 = self.from_fraction(r)
        else:
            ts = _solve_unit_congruence(d, M // 2, M)  # z^d = -1
            if not ts:
                return []
            y0 = self.mul(self.from_fraction(r), self.pow(g, ts[0]))
        return [self.mul(y0, w) for w in self.unity_roots(d)]

    def format(self, a):
        if self.is_zero(a):
            return "0"
        parts = []
        for i, coef in enumerate(a):
            if coef == 0:
                continue
            if i == 0:
                parts.append(str(coef))
            else:
                mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
                sym = "zeta" if i == 1 else f"zeta^{i}"
                parts.append(("-" if coef < 0 else "") + mag + sym)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Cyclotomic) and other.N == self.N

    def __hash__(self):
        return hash(("cyclo", self.N))


QQ = Rationals()


def parse_field(text):
    """Field from its textual spec: QQ, GF(p), QQ(zeta_N)."""
    t = text.strip()
    if t in ("QQ", "Q"):
        return QQ
    if t.startswith("GF(") and t.endswith(")"):
        return PrimeField(int(t[3:-1]))
    if t.startswith("QQ(zeta_") and t.endswith(")"):
        return Cyclotomic(int(t[8:-1]))
    raise InputError(f"unknown field spec {text!r}; use QQ, GF(p) or QQ(zeta_N)")


def scalar_arith(field, a, b, op):
    """Exact field arithmetic dispatch for +, -, *, /."""
    if op == "+":
        return field.add(a, b)
    if op == "-":
        return field.sub(a, b)
    if op == "*":
        return field.mul(a, b)
    if op == "/":
        return field.div(a, b)
    raise InputError(f"unknown scalar operation {op!r}")
