"""Mesoprimes, monomial witnesses, coprincipal components, mesoprimary decomposition.

The witness engine runs in two modes. With a positive grading, witness and
partner searches are confined to (finite) graded fibers and the theory
guarantees completeness of the per-degree tests. Without a grading the same
searches run with degree caps (the weak-witness notion of the
dimension-reduction machinery); any resulting incompleteness is caught by the
final check that the components intersect back to the input.
"""

from dataclasses import dataclass, field, replace

from .cellular import cellular_data, cellular_decomposition, nilpotency_order
from .errors import BoundTooSmallError, InputError
from .groebner import Ideal
from .lattice import lattice_of_cellular
from .orders import GREVLEX
from .rings import m_deg, m_divides, m_mul


def _vars_ideal(ring, indices):
    return Ideal(ring, [ring.var(i) for i in indices])


def _complement(ring, sigma):
    s = set(sigma)
    return tuple(i for i in range(ring.nvars) if i not in s)


def mesoprime_at(I, sigma, m):
    """The mesoprime at x^m: ((I_sigma : x^m) cap k[N^sigma]) + m_(sigma^c).

    Returns (mesoprime, lattice_part); both live in the full ring, the
    lattice part having generators supported on sigma only.
    """
    ring = I.ring
    sigma = tuple(sorted(set(sigma)))
    sigma_c = _complement(ring, sigma)
    if I.contains(ring.monomial(m)):
        raise InputError(f"witness monomial {ring.monomial(m)} lies in the ideal")
    I_sigma = I.saturation_vars(sigma)
    Q = I_sigma.quotient(ring.monomial(m)) if any(m) else I_sigma
    part = Q.eliminate(sigma_c)
    return part + _vars_ideal(ring, sigma_c), part


def is_mesoprimary(I):
    """Mesoprimarity test with certificate.

    Checks sigma-cellularity, then that (I : x^m) cap k[N^sigma] agrees with
    I cap k[N^sigma] for every standard monomial x^m in the sigma^c variables
    (enough: nonzerodivisor variables do not change these quotients, and the
    sigma^c variables are nilpotent, so the standard set is finite).
    """
    data = cellular_data(I)
    if not data.cellular:
        return False, {"non_cellular_variable": data.witness_var}
    ring = I.ring
    sigma = data.sigma
    sigma_c = _complement(ring, sigma)
    base = I.eliminate(sigma_c)
    gb = I.groebner()
    ranges = [range(data.orders[j]) for j in sigma_c]

    def rec(idx, exps):
        if idx == len(sigma_c):
            if all(e == 0 for e in exps):
                return None
            m = [0] * ring.nvars
            for j, e in zip(sigma_c, exps):
                m[j] = e
            m = tuple(m)
            if gb.nf_monomial(m).is_zero():
                return None
            part = I.quotient(ring.monomial(m)).eliminate(sigma_c)
            if not part.equals(base):
                return m
            return None
        for e in ranges[idx]:
            bad = rec(idx + 1, exps + (e,))
            if bad is not None:
                return bad
        return None

    bad = rec(0, ())
    if bad is not None:
        return False, {"violating_monomial": bad, "sigma": sigma}
    return True, {"sigma": sigma, "orders": data.orders}


@dataclass
class WitnessRecord:
    sigma: tuple
    monomial: tuple          # class representative, supported on sigma^c
    aux: tuple               # the sigma-monomial x^m of the witness condition
    class_members: tuple     # witnesses merged into this record (equal mod I_sigma)
    certificates: dict       # var index -> {"q", "lam", "case"}
    essential: bool | None = None
    essential_certificate: dict | None = None


class WitnessSearch:
    """Monomial witness search for one ideal and one sigma."""

    def __init__(self, I, sigma, grading=None, bound=None):
        ring = I.ring
        self.ring = ring
        self.I = I
        self.sigma = tuple(sorted(set(sigma)))
        self.sigma_c = _complement(ring, self.sigma)
        self.grading = grading
        self.I_sigma = I.saturation_vars(self.sigma) if self.sigma else I
        self.gb = self.I_sigma.groebner()
        self.trivial = self.gb.is_unit
        self.nil = {}
        if not self.trivial:
            for j in self.sigma_c:
                self.nil[j] = nilpotency_order(self.I_sigma, j)
        self.bound = self._default_bound() if bound is None else bound
        self._quotient_gbs = {}
        self._annihilator = None
        self._partner_pool = {}

    # -- weights and enumeration ------------------------------------------------

    def _weight(self, exps):
        if self.grading is not None:
            return self.grading.weight(exps)
        return m_deg(exps)

    def _default_bound(self):
        if self.trivial:
            return 0
        gw = 0
        for g in self.gb:
            for e in g.terms:
                w = self._weight(e)
                gw = w if w > gw else gw
        nil_sum = sum(N for N in self.nil.values() if N is not None)
        base = gw + nil_sum
        return base if base > 2 else 2

    def _var_cap(self, j, nilpotent_cap):
        if nilpotent_cap is not None:
            return nilpotent_cap
        w = self._weight(tuple(1 if t == j else 0 for t in range(self.ring.nvars)))
        e = 1
        while self._weight(tuple(e + 1 if t == j else 0 for t in range(self.ring.nvars))) <= self.bound:
            e += 1
        return e if w <= self.bound else 0

    def _monomials_on(self, indices, caps, max_weight=None):
        """Exponent tuples supported on indices, capped per variable and by weight."""
        out = []
        base = [0] * self.ring.nvars

        def rec(pos):
            if pos == len(indices):
                out.append(tuple(base))
                return
            j = indices[pos]
            for e in range(caps[j] + 1):
                base[j] = e
                if max_weight is not None and self._weight(tuple(base)) > max_weight:
                    break
                rec(pos + 1)
            base[j] = 0

        rec(0)
        out.sort(key=lambda u: (self._weight(u), GREVLEX.key(u)))
        return out

    def witness_monomial_candidates(self):
        caps = {}
        for j in self.sigma_c:
            N = self.nil.get(j)
            caps[j] = self._var_cap(j, N - 1 if N is not None else None)
        return [
            u
            for u in self._monomials_on(self.sigma_c, caps, self.bound)
            if not self.gb.nf_monomial(u).is_zero()
        ]

    def sigma_monomial_candidates(self):
        caps = {j: self._var_cap(j, None) for j in self.sigma}
        return self._monomials_on(self.sigma, caps, self.bound)

    def _partners(self, u):
        if self.grading is not None:
            return self.grading.fiber(self.grading.degree(u))
        cap = m_deg(u) + int(self.bound)
        pool = self._partner_pool.get(cap)
        if pool is None:
            caps = {j: cap for j in range(self.ring.nvars)}
            pool = self._monomials_on(tuple(range(self.ring.nvars)), caps, cap)
            self._partner_pool[cap] = pool
        return pool

    # -- the per-variable witness condition --------------------------------------

    def variable_condition(self, i, u):
        """Certificate that multiplication by x_i merges the class of x^u.

        Returns {"q", "lam", "case"} such that x_i(x^u - lam x^q) lies in
        I_sigma while x^u - lam x^q does not, or None.
        """
        F = self.ring.field
        ei = tuple(1 if t == i else 0 for t in range(self.ring.nvars))
        xiu = m_mul(u, ei)
        nf_xiu = self.gb.nf_monomial(xiu)
        if nf_xiu.is_zero():
            # x_i x^u in I_sigma: the class merges into the ideal class
            minus_one = F.neg(F.one)
            if not F.is_one(minus_one):
                return {"q": u, "lam": minus_one, "case": "nilpotent"}
            return {"q": xiu, "lam": F.one, "case": "nilpotent"}
        cu = self.gb.class_rep(u)
        assert cu is not None
        _, su = cu
        lead_xiu, coeff_xiu = next(iter(nf_xiu.terms.items()))
        for t in self._partners(u):
            if t == u:
                continue
            ct = self.gb.class_rep(t)
            if ct is None or ct[1] == su:
                continue
            nf_xit = self.gb.nf_monomial(m_mul(t, ei))
            if nf_xit.is_zero():
                continue
            lead_xit, coeff_xit = next(iter(nf_xit.terms.items()))
            if lead_xit == lead_xiu:
                lam = F.div(coeff_xiu, coeff_xit)
                return {"q": t, "lam": lam, "case": "merge"}
        return None

    # -- witness enumeration ------------------------------------------------------

    def monomial_witnesses(self):
        """All witness records found within the bound, merged by congruence.

        Class representatives are the weight-then-grevlex-smallest members;
        witnesses equal modulo I_sigma count once.
        """
        if self.trivial:
            return []
        found = []
        sigma_monos = self.sigma_monomial_candidates()
        for w in self.witness_monomial_candidates():
            rec = None
            for m in sigma_monos:
                u = m_mul(w, m)
                if self.gb.nf_monomial(u).is_zero():
                    continue
                certs = {}
                for i in self.sigma_c:
                    c = self.variable_condition(i, u)
                    if c is None:
                        certs = None
                        break
                    certs[i] = c
                if certs is not None:
                    rec = WitnessRecord(
                        sigma=self.sigma, monomial=w, aux=m,
                        class_members=(w,), certificates=certs,
                    )
                    break
            if rec is not None:
                found.append(rec)
        # merge records whose witness monomials agree modulo I_sigma
        groups = {}
        for rec in found:
            _, key = self.gb.class_rep(rec.monomial)
            groups.setdefault(key, []).append(rec)
        merged = []
        for key in sorted(groups, key=GREVLEX.key):
            members = groups[key]
            members.sort(key=lambda r: (self._weight(r.monomial), GREVLEX.key(r.monomial)))
            rep = members[0]
            merged.append(replace(
                rep, class_members=tuple(r.monomial for r in members),
            ))
        merged.sort(key=lambda r: (self._weight(r.monomial), GREVLEX.key(r.monomial)))
        return merged

    # -- essential witnesses --------------------------------------------------------

    def _annihilator_gb(self):
        """Groebner basis of (I_sigma : m_(sigma^c))."""
        if self._annihilator is None:
            out = None
            for j in self.sigma_c:
                q = self.I_sigma.quotient(self.ring.var(j))
                out = q if out is None else out.intersect(q)
            self._annihilator = out.groebner() if out is not None else None
        return self._annihilator

    def _essential_from_pairs(self, pairs, target):
        """p with p not in I_sigma, x_j p in I_sigma for all j, target in supp(p).

        pairs: (image in R/I_sigma, polynomial in the annihilator quotient).
        A polynomial in the span works iff some member has nonzero image and
        some member involves the target; a two-term combination then realizes
        both at once (a vector space is never a union of two proper subspaces).
        """
        F = self.ring.field
        with_image = None
        with_target = None
        for img, prov in pairs:
            has_img = not img.is_zero()
            has_tgt = target in prov.terms
            if has_img and has_tgt:
                return prov
            if has_img and with_image is None:
                with_image = (img, prov)
            if has_tgt and with_target is None:
                with_target = (img, prov)
        if with_image is None or with_target is None:
            return None
        img1, p1 = with_image
        img2, p2 = with_target
        for c in self._scalar_choices():
            cand_img = img1 + img2.scale(c)
            cand = p1 + p2.scale(c)
            if not cand_img.is_zero() and target in cand.terms and \
                    not F.is_zero(cand.terms[target]):
                return cand
        return None

    def _scalar_choices(self):
        F = self.ring.field
        out = [F.one, F.neg(F.one), F.add(F.one, F.one)]
        return [c for c in out if not F.is_zero(c)]

    def essential_certificate(self, w):
        """Essentiality certificate for a witness monomial, or None."""
        if not self.sigma_c:
            return {"p": self.ring.one(), "v": self.ring.zero_exp}
        ann = self._annihilator_gb()
        for v in self.sigma_monomial_candidates():
            target = m_mul(w, v)
            pairs = []
            if self.grading is not None:
                beta = self.grading.degree(target)
                for g in ann:
                    gdeg = self.grading.degree(next(iter(g.terms)))
                    shift = tuple(b - d for b, d in zip(beta, gdeg))
                    for gamma in self.grading.fiber(shift):
                        prov = g.mul_term(gamma)
                        pairs.append((self.gb.nf(prov), prov))
            else:
                cap = m_deg(target) + int(self.bound)
                for g in ann:
                    gdeg = g.total_degree()
                    if gdeg > cap:
                        continue
                    caps = {j: cap - gdeg for j in range(self.ring.nvars)}
                    for gamma in self._monomials_on(
                        tuple(range(self.ring.nvars)), caps, cap - gdeg
                    ):
                        prov = g.mul_term(gamma)
                        pairs.append((self.gb.nf(prov), prov))
            p = self._essential_from_pairs(pairs, target)
            if p is not None:
                assert not self.gb.contains(p)
                for j in self.sigma_c:
                    assert self.gb.contains(self.ring.var(j) * p)
                return {"p": p, "v": v}
        return None

    def essential_witnesses(self):
        out = []
        for rec in self.monomial_witnesses():
            cert = None
            for member in rec.class_members:
                cert = self.essential_certificate(member)
                if cert is not None:
                    break
            if cert is not None:
                out.append(replace(rec, essential=True, essential_certificate=cert))
        return out


def monomial_witnesses(I, sigma, grading=None, bound=None):
    return WitnessSearch(I, sigma, grading, bound).monomial_witnesses()


def essential_witnesses(I, sigma, grading=None, bound=None):
    return WitnessSearch(I, sigma, grading, bound).essential_witnesses()


def monomial_part(I, sigma, m, grading=None, bound=None, search=None):
    """Minimal generators of M_(x^m)^sigma(I): monomials whose addition kills x^m.

    A sigma^c-monomial x^u qualifies iff x^m falls out of the sigma-saturation
    of I + <x^u>. Boxes: nilpotency orders where available (complete by the
    truncation argument); the congruence class of x^m for sigma = {} under a
    grading (complete: only class members divisible by x^u matter); otherwise
    the degree bound, with completeness restored by the decomposition's final
    verification.
    """
    ring = I.ring
    sigma = tuple(sorted(set(sigma)))
    if search is None:
        search = WitnessSearch(I, sigma, grading, bound)
    gb_sigma = search.gb
    if gb_sigma.nf_monomial(m).is_zero():
        raise InputError("cogenerator dies in the sigma-saturation")
    sigma_c = search.sigma_c
    caps = {}
    class_box = None
    if not sigma and grading is not None:
        rep = gb_sigma.class_rep(m)[1]
        members = [
            t for t in grading.fiber(grading.degree(m))
            if (cr := gb_sigma.class_rep(t)) is not None and cr[1] == rep
        ]
        class_box = {
            j: max(t[j] for t in members) + 1 for j in range(ring.nvars)
        }
    for j in sigma_c:
        N = search.nil.get(j)
        if N is not None:
            caps[j] = N
        elif class_box is not None:
            caps[j] = class_box[j]
        else:
            caps[j] = search._var_cap(j, None)
    candidates = search._monomials_on(sigma_c, caps)
    xm = ring.monomial(m)
    gens = []
    for u in candidates:
        if not any(u):
            continue
        if any(m_divides(q, u) for q in gens):
            continue
        if gb_sigma.nf_monomial(u).is_zero():
            gens.append(u)
            continue
        J = (I + Ideal(ring, [ring.monomial(u)])).saturation_vars(sigma)
        if not J.contains(xm):
            gens.append(u)
    return sorted(gens, key=GREVLEX.key)


@dataclass
class MesoComponent:
    ideal: Ideal
    sigma: tuple
    witnesses: tuple            # WitnessRecord(s) cogenerating the component
    mesoprime: Ideal
    lattice_part: Ideal         # generators supported on sigma
    monomial_part: tuple        # minimal generators of M
    binomial: bool = True
    mesoprimary: bool | None = None
    toral: str | None = None    # "toral" | "Andean" once classified
    _lattice: tuple = field(default=None, repr=False)

    def lattice_data(self):
        if self._lattice is None:
            self._lattice = lattice_of_cellular(self.ideal, self.sigma)
        return self._lattice

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


def coprincipal_component(I, sigma, witness, grading=None, bound=None, search=None):
    """W_(x^m)^sigma(I) = ((I + I_m^sigma) : (prod sigma)^infty) + M_(x^m)^sigma(I)."""
    ring = I.ring
    sigma = tuple(sorted(set(sigma)))
    if isinstance(witness, WitnessRecord):
        rec = witness
        m = rec.monomial
    else:
        m = tuple(witness)
        rec = WitnessRecord(sigma=sigma, monomial=m, aux=ring.zero_exp,
                            class_members=(m,), certificates={})
    mesoprime, lat_part = mesoprime_at(I, sigma, m)
    W0 = (I + lat_part).saturation_vars(sigma)
    M = monomial_part(I, sigma, m, grading=grading, bound=bound, search=search)
    W = W0 + Ideal(ring, [ring.monomial(u) for u in M])
    ok, _ = W.is_binomial_ideal()
    return MesoComponent(
        ideal=W, sigma=sigma, witnesses=(rec,), mesoprime=mesoprime,
        lattice_part=lat_part, monomial_part=tuple(M), binomial=ok,
    )


@dataclass
class MesoDecomposition:
    input_ideal: Ideal
    components: tuple           # coprincipal components, one per essential witness
    merged: tuple               # same-mesoprime components combined when still mesoprimary
    sigmas: tuple
    bound: object
    graded: bool


def _component_sort_key(comp):
    return (
        len(comp.sigma),
        comp.sigma,
        tuple(g.format() for g in comp.ideal.groebner()),
    )


def _merge_components(comps):
    groups = []
    for comp in comps:
        for group in groups:
            if group[0].mesoprime.equals(comp.mesoprime):
                group.append(comp)
                break
        else:
            groups.append([comp])
    merged = []
    for group in groups:
        if len(group) == 1:
            merged.append(group[0])
            continue
        inter = group[0].ideal
        for other in group[1:]:
            inter = inter.intersect(other.ideal)
        ok, _ = is_mesoprimary(inter)
        if ok:
            merged.append(MesoComponent(
                ideal=inter, sigma=group[0].sigma,
                witnesses=tuple(w for g in group for w in g.witnesses),
                mesoprime=group[0].mesoprime,
                lattice_part=group[0].lattice_part,
                monomial_part=tuple(sorted(
                    {u for g in group for u in g.monomial_part}, key=GREVLEX.key
                )),
                binomial=inter.is_binomial_ideal()[0],
                mesoprimary=True,
            ))
        else:
            merged.extend(group)
    merged.sort(key=_component_sort_key)
    return merged


def mesoprimary_decomposition(I, grading=None, bound=None, check_mesoprimary=True):
    """Thm-style mesoprimary decomposition via coprincipal components.

    sigma ranges over the cellular decomposition's cellular-variable sets plus
    the full set; essential witnesses of I at each sigma cogenerate the
    components. The intersection is verified to equal I; failure raises
    BoundTooSmallError naming the bound used.
    """
    ring = I.ring
    if I.is_unit():
        raise InputError("cannot decompose the unit ideal")
    if not I.is_binomial_gens:
        raise InputError("mesoprimary decomposition expects binomial generators")
    if grading is not None:
        from .grading import is_homogeneous

        if not is_homogeneous(I, grading):
            raise InputError("ideal is not homogeneous for the given grading")
    leaves = cellular_decomposition(I)
    sigmas = sorted({data.sigma for _, data in leaves} | {tuple(range(ring.nvars))})
    comps = []
    bounds_used = []
    for sig in sigmas:
        search = WitnessSearch(I, sig, grading, bound)
        bounds_used.append(search.bound)
        for rec in search.essential_witnesses():
            comp = coprincipal_component(I, sig, rec, grading=grading,
                                         bound=bound, search=search)
            if not any(comp.ideal.equals(c.ideal) for c in comps):
                comps.append(comp)
    inter = None
    for comp in comps:
        inter = comp.ideal if inter is None else inter.intersect(comp.ideal)
    if inter is None or not inter.equals(I):
        raise BoundTooSmallError(
            "intersection of coprincipal components does not recover the input; "
            f"the witness search bound(s) {bounds_used} are too small",
            bound=max(bounds_used, default=None),
        )
    if check_mesoprimary:
        for comp in comps:
            comp.mesoprimary = is_mesoprimary(comp.ideal)[0]
    comps.sort(key=_component_sort_key)
    merged = _merge_components(comps)
    return MesoDecomposition(
        input_ideal=I, components=tuple(comps), merged=tuple(merged),
        sigmas=tuple(sigmas), bound=max(bounds_used, default=None),
        graded=grading is not None,
    )


def congruence_classes(I, max_degree):
    """Partition of the monomials of total degree <= max_degree modulo I.

    Returns (classes, ideal_class): classes maps each normal-form key to the
    sorted list of its monomials; ideal_class collects the monomials lying in
    I. Needs a binomial ideal (monomial normal forms stay single terms).
    """
    gb = I.groebner()
    ring = I.ring
    classes = {}
    ideal_class = []

    def rec(prefix, left):
        if len(prefix) == ring.nvars:
            u = tuple(prefix)
            rep = gb.class_rep(u)
            if rep is None:
                ideal_class.append(u)
            else:
                classes.setdefault(rep[1], []).append(u)
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], max_degree)
    for v in classes.values():
        v.sort(key=GREVLEX.key)
    ideal_class.sort(key=GREVLEX.key)
    return classes, ideal_class
