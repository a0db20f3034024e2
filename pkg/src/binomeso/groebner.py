"""Buchberger engine and Groebner-backed ideal operations.

Scale target is desk-size symbolic computation: plain Buchberger with the
product and (conservative) chain criteria, full normal forms, reduced bases.
Reduced bases of binomial input stay binomial; this is asserted on every run
with binomial generators.
"""

import heapq
from itertools import combinations

from .errors import InputError
from .orders import GREVLEX, Elimination
from .rings import Polynomial, m_div, m_divides, m_gcd, m_lcm, m_mul


def _nf_terms(terms, basis_data, order, ring):
    """Full normal form of a term dict against [(lead_exp, lead_coeff, poly)]."""
    F = ring.field
    key = order.key
    work = dict(terms)
    rem = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for lead_e, lead_c, g in basis_data:
            if m_divides(lead_e, e):
                mult = F.div(c, lead_c)
                shift = m_div(e, lead_e)
                for eg, cg in g.terms.items():
                    ee = m_mul(eg, shift)
                    s = F.sub(work.get(ee, F.zero), F.mul(mult, cg))
                    if F.is_zero(s):
                        work.pop(ee, None)
                    else:
                        work[ee] = s
                break
        else:
            rem[e] = c
            del work[e]
    return Polynomial(ring, rem, _trusted=True)


def _basis_data(polys, order):
    data = []
    for g in polys:
        e, c = g.leading(order)
        data.append((e, c, g))
    return data


def normal_form(p, basis, order=GREVLEX):
    """Remainder of multivariate division of p by a list of polynomials."""
    basis = [g for g in basis if g]
    if not basis or p.is_zero():
        return p
    return _nf_terms(p.terms, _basis_data(basis, order), order, p.ring)


def s_polynomial(f, g, order=GREVLEX):
    F = f.ring.field
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    L = m_lcm(ef, eg)
    return f.mul_term(m_div(L, ef), F.inv(cf)) - g.mul_term(m_div(L, eg), F.inv(cg))


def buchberger(gens, order=GREVLEX):
    """A (non-reduced) Groebner basis of the ideal generated by gens."""
    G = [g.monic(order) for g in gens if g]
    if not G:
        return []
    ring = G[0].ring
    leads = [g.leading(order)[0] for g in G]
    heap = []
    for i, j in combinations(range(len(G)), 2):
        heapq.heappush(heap, (order.key(m_lcm(leads[i], leads[j])), i, j))
    processed = set()
    while heap:
        _, i, j = heapq.heappop(heap)
        li, lj = leads[i], leads[j]
        L = m_lcm(li, lj)
        if m_mul(li, lj) == L:  # disjoint supports: S-poly reduces to zero
            processed.add((i, j))
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not m_divides(leads[k], L):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in processed and b in processed:
                chain = True
                break
        if chain:
            continue
        processed.add((i, j))
        r = _nf_terms(
            s_polynomial(G[i], G[j], order).terms, _basis_data(G, order), order, ring
        )
        if r:
            r = r.monic(order)
            G.append(r)
            leads.append(r.leading(order)[0])
            new = len(G) - 1
            for k in range(new):
                heapq.heappush(heap, (order.key(m_lcm(leads[k], leads[new])), k, new))
    return G


def reduce_basis(G, order=GREVLEX):
    """The reduced Groebner basis equivalent to G (assumed a Groebner basis)."""
    G = [g.monic(order) for g in G if g]
    if not G:
        return []
    G.sort(key=lambda g: order.key(g.leading(order)[0]))
    minimal = []
    for g in G:
        le = g.leading(order)[0]
        if not any(m_divides(h.leading(order)[0], le) for h in minimal):
            minimal.append(g)
    changed = True
    while changed:
        changed = False
        for idx in range(len(minimal)):
            others = minimal[:idx] + minimal[idx + 1:]
            if not others:
                continue
            r = _nf_terms(
                minimal[idx].terms, _basis_data(others, order), order, minimal[idx].ring
            )
            if r.terms != minimal[idx].terms:
                minimal[idx] = r.monic(order)
                changed = True
    minimal.sort(key=lambda g: order.key(g.leading(order)[0]))
    return minimal


class GroebnerBasis:
    """Reduced Groebner basis with a normal-form cache."""

    def __init__(self, ring, order, elements):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self._data = _basis_data(self.elements, order)
        self._mono_nf = {}

    @property
    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].num_terms() == 1 and \
            self.elements[0].leading(self.order)[0] == self.ring.zero_exp

    def leading_exponents(self):
        return [e for e, _, _ in self._data]

    def nf(self, p):
        if p.is_zero() or not self.elements:
            return p
        return _nf_terms(p.terms, self._data, self.order, self.ring)

    def nf_monomial(self, exps):
        """Normal form of x^exps, cached."""
        exps = tuple(exps)
        got = self._mono_nf.get(exps)
        if got is None:
            got = self.nf(self.ring.monomial(exps))
            self._mono_nf[exps] = got
        return got

    def class_rep(self, exps):
        """(coeff, monomial) with x^exps == coeff * x^monomial mod the ideal.

        Returns None when x^exps lies in the ideal. Only meaningful for
        binomial bases, where the normal form of a monomial is a term.
        """
        p = self.nf_monomial(exps)
        if p.is_zero():
            return None
        assert p.num_terms() == 1, "class_rep needs a binomial basis"
        e, c = next(iter(p.terms.items()))
        return c, e

    def contains(self, p):
        return self.nf(p).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GB<{self.order}>[{', '.join(g.format() for g in self.elements)}]"


def groebner_basis(gens, order=GREVLEX):
    gens = list(gens)
    if not gens:
        raise InputError("groebner_basis needs at least the ring context; pass Ideal")
    ring = gens[0].ring
    binomial_input = all(g.is_binomial() for g in gens)
    basis = reduce_basis(buchberger(gens, order), order)
    if binomial_input:
        bad = [g for g in basis if not g.is_binomial()]
        assert not bad, f"binomial input produced non-binomial basis element {bad[0]}"
    return GroebnerBasis(ring, order, basis)


class Ideal:
    """An ideal given by generators, with cached reduced Groebner bases."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        for g in self.gens:
            if g.ring != ring:
                raise InputError("generator from a different ring")
        self._gb = {}

    @classmethod
    def of(cls, *gens):
        if not gens:
            raise InputError("Ideal.of needs at least one polynomial")
        return cls(gens[0].ring, gens)

    def groebner(self, order=GREVLEX):
        sig = order.signature()
        gb = self._gb.get(sig)
        if gb is None:
            if self.gens:
                gb = groebner_basis(list(self.gens), order)
            else:
                gb = GroebnerBasis(self.ring, order, [])
            self._gb[sig] = gb
        return gb

    # -- predicates -----------------------------------------------------------

    def contains(self, p):
        return self.groebner().contains(p)

    def __contains__(self, p):
        return self.contains(p)

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        if self.ring != other.ring:
            return False
        a = self.groebner().elements
        b = other.groebner().elements
        return a == b

    def is_zero(self):
        return not self.groebner().elements

    def is_unit(self):
        return self.groebner().is_unit

    def is_proper(self):
        return not self.is_unit()

    @property
    def is_binomial_gens(self):
        return all(g.is_binomial() for g in self.gens)

    def is_binomial_ideal(self):
        """(flag, witness): reduced grevlex basis all binomial, or a violator.

        A binomial ideal has binomial reduced bases in every term order, so a
        non-binomial reduced basis element certifies non-binomiality.
        """
        for g in self.groebner().elements:
            if not g.is_binomial():
                return False, g
        return True, None

    # -- constructions ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        if self.ring != other.ring:
            raise InputError("ideals from different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def intersect(self, other):
        """I cap J by eliminating t from t*I + (1-t)*J."""
        if self.ring != other.ring:
            raise InputError("ideals from different rings")
        big, lift, project = self.ring.extended("@t")
        t = big.var(0)
        one = big.one()
        gens = [t * lift(f) for f in self.gens]
        gens += [(one - t) * lift(g) for g in other.gens]
        if not gens:
            return Ideal(self.ring, [])
        order = Elimination([0], big.nvars)
        basis = groebner_basis(gens, order) if gens else []
        kept = [project(g) for g in basis if all(e[0] == 0 for e in g.terms)]
        return Ideal(self.ring, kept)

    def quotient(self, f):
        """(I : f) for a single nonzero polynomial f."""
        if f.is_zero():
            raise InputError("quotient by the zero polynomial")
        inter = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring, [divide_exact(g, f) for g in inter.gens])

    def quotient_ideal(self, other):
        """(I : J) = cap of (I : g) over generators g of J."""
        gens = [g for g in other.gens if g]
        if not gens:
            raise InputError("quotient by the zero ideal")
        out = self.quotient(gens[0])
        for g in gens[1:]:
            out = out.intersect(self.quotient(g))
        return out

    def saturation(self, f):
        """(I : f^infty) via one auxiliary variable: eliminate t from I + <t*f - 1>.

        For monomial f every added generator is binomial, so the computation
        stays inside binomial-preserving territory.
        """
        if f.is_zero():
            raise InputError("saturation by the zero polynomial")
        big, lift, project = self.ring.extended("@t")
        t = big.var(0)
        gens = [lift(g) for g in self.gens]
        gens.append(t * lift(f) - big.one())
        order = Elimination([0], big.nvars)
        basis = groebner_basis(gens, order)
        kept = [project(g) for g in basis if all(e[0] == 0 for e in g.terms)]
        return Ideal(self.ring, kept)

    def saturation_vars(self, var_indices):
        """(I : (prod of the variables)^infty)."""
        idx = list(var_indices)
        if not idx:
            return self
        e = [0] * self.ring.nvars
        for i in idx:
            e[i] = 1
        return self.saturation(self.ring.monomial(tuple(e)))

    def eliminate(self, var_indices):
        """Generators of I cap k[variables not in var_indices], in the same ring."""
        block = sorted(set(var_indices))
        if not block:
            return self
        if not self.gens:
            return Ideal(self.ring, [])
        order = Elimination(block, self.ring.nvars)
        basis = groebner_basis(list(self.gens), order)
        kept = [g for g in basis if all(all(e[i] == 0 for i in block) for e in g.terms)]
        return Ideal(self.ring, kept)

    def dimension(self):
        """Krull dimension of ring/I via independent sets of the initial ideal."""
        gb = self.groebner()
        if gb.is_unit:
            raise InputError("dimension of the unit ideal is undefined")
        leads = [set(i for i, e in enumerate(le) if e) for le in gb.leading_exponents()]
        n = self.ring.nvars
        for size in range(n, -1, -1):
            for tau in combinations(range(n), size):
                tset = set(tau)
                if all(not s <= tset for s in leads):
                    return size
        return 0

    def __repr__(self):
        inside = ", ".join(g.format() for g in self.gens) if self.gens else "0"
        return f"<{inside}>"


def divide_exact(p, f, order=GREVLEX):
    """Quotient p/f when f divides p exactly."""
    ring = p.ring
    F = ring.field
    ef, cf = f.leading(order)
    q = {}
    r = p
    while r:
        e, c = r.leading(order)
        shift = m_div(e, ef)  # raises if not divisible, which certifies misuse
        coef = F.div(c, cf)
        q[shift] = coef
        r = r - f.mul_term(shift, coef)
    return Polynomial(ring, q)


def stabilization_exponent(I, var_index):
    """Smallest e with (I : x^e) = (I : x^(e+1)), plus that stable quotient.

    With this e one has I = (I : x^infty) cap (I + <x^e>).
    """
    x = I.ring.var(var_index)
    e = 0
    current = I
    while True:
        nxt = current.quotient(x)
        if nxt.equals(current):
            return e, current
        current = nxt
        e += 1


def monomials_of_ideal(I, box):
    """Minimal monomial members of I with exponents inside the given box.

    box is a per-variable inclusive exponent bound. Only sound as a full
    description when I contains x_i^(box_i+...) beyond the box; callers pick
    boxes from nilpotency orders.
    """
    gb = I.groebner()
    found = []
    def rec(prefix, i):
        for e in range(0, box[i] + 1):
            cur = prefix + (e,)
            if i == len(box) - 1:
                if any(m_divides(f, cur) for f in found):
                    continue
                if gb.nf_monomial(cur).is_zero():
                    found.append(cur)
            else:
                rec(cur, i + 1)
    if box:
        rec((), 0)
    minimal = [u for u in found if not any(v != u and m_divides(v, u) for v in found)]
    return sorted(minimal)
