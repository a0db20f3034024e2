"""Polynomial rings with named variables over an exact field.

Monomials are plain exponent tuples; polynomials are immutable term maps
exponent-tuple -> nonzero coefficient. No zero coefficient is ever stored,
so support inspection is just the key set.
"""

from .errors import InputError
from .fields import QQ
from .orders import GREVLEX

# -- monomial helpers on exponent tuples ------------------------------------


def m_mul(u, v):
    return tuple(a + b for a, b in zip(u, v))

def m_div(u, v):
    w = tuple(a - b for a, b in zip(u, v))
    if any(a < 0 for a in w):
        raise ValueError(f"{v} does not divide {u}")
    return w

def m_divides(u, v):
    return all(a <= b for a, b in zip(u, v))

def m_lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))

def m_gcd(u, v):
    return tuple(min(a, b) for a, b in zip(u, v))

def m_deg(u):
    return sum(u)

def m_support(u):
    return tuple(i for i, e in enumerate(u) if e)


class Ring:
    """Variable names + coefficient field; declaration order fixes indices."""

    def __init__(self, names, field=QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        self.names = names
        self.field = field
        self.nvars = len(names)
        self.zero_exp = (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.monomial(self.zero_exp)

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def var_index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"undeclared variable {name!r}") from None

    def monomial(self, exps, coeff=None):
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise InputError(f"bad exponent vector {exps} for {self}")
        c = self.field.one if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c})

    def poly(self, terms):
        """Polynomial from {exponent tuple: coefficient}."""
        return Polynomial(self, dict(terms))

    def from_int(self, k):
        return self.monomial(self.zero_exp, self.field.from_int(k))

    def extended(self, name, front=True):
        """Ring with one extra variable; returns (ring, lift, project).

        lift maps a polynomial of self into the bigger ring; project drops
        the extra coordinate (which must be 0 in every term).
        """
        names = (name,) + self.names if front else self.names + (name,)
        big = Ring(names, self.field)
        pos = 0 if front else self.nvars

        def lift(p):
            return Polynomial(
                big,
                {e[:pos] + (0,) + e[pos:]: c for e, c in p.terms.items()},
                _trusted=True,
            )

        def project(p):
            out = {}
            for e, c in p.terms.items():
                if e[pos] != 0:
                    raise ValueError("term still involves the auxiliary variable")
                out[e[:pos] + e[pos + 1:]] = c
            return Polynomial(self, out, _trusted=True)

        return big, lift, project

    def subring(self, keep):
        """Ring on the variables indexed by ``keep`` (sorted), with mappings."""
        keep = tuple(sorted(keep))
        small = Ring(tuple(self.names[i] for i in keep), self.field)
        kept = set(keep)
        drop = [i for i in range(self.nvars) if i not in kept]

        def project(p):
            out = {}
            for e, c in p.terms.items():
                if any(e[i] for i in drop):
                    raise ValueError("term involves a dropped variable")
                out[tuple(e[i] for i in keep)] = c
            return Polynomial(small, out, _trusted=True)

        def embed(p):
            out = {}
            for e, c in p.terms.items():
                full = [0] * self.nvars
                for pos, i in enumerate(keep):
                    full[i] = e[pos]
                out[tuple(full)] = c
            return Polynomial(self, out, _trusted=True)

        return small, project, embed

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.names == self.names
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                if not ring.field.is_zero(c):
                    clean[tuple(e)] = c
            self.terms = clean
        self._hash = None

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        return set(self.terms)

    def num_terms(self):
        return len(self.terms)

    def is_binomial(self):
        """At most two terms (monomials and zero count as binomials)."""
        return len(self.terms) <= 2

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_part(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def leading(self, order=GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def total_degree(self):
        return max(m_deg(e) for e in self.terms) if self.terms else -1

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise InputError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.ring, out, _trusted=True)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(
            self.ring, {e: F.neg(c) for e, c in self.terms.items()}, _trusted=True
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = m_mul(e1, e2)
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.ring, out, _trusted=True)

    def scale(self, c):
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring, {e: F.mul(c, v) for e, v in self.terms.items()}, _trusted=True
        )

    def mul_term(self, exps, coeff=None):
        """Multiply by the term coeff * x^exps."""
        F = self.ring.field
        c = F.one if coeff is None else coeff
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {m_mul(e, exps): F.mul(c, v) for e, v in self.terms.items()},
            _trusted=True,
        )

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        _, lc = self.leading(order)
        if self.ring.field.is_one(lc):
            return self
        return self.scale(self.ring.field.inv(lc))

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def format(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for e in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                self.ring.names[i] + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            cs = F.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]) or (" " in cs):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return self.format()
