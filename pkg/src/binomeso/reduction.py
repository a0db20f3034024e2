"""Dimension reduction: restriction to a point, lifting, weak witnesses,
witness transfer, and the corrected toral primary component formula.

Restriction sets the sigma variables to a zero nu of the sigma-part of the
ideal and works in k[N^(sigma^c)]. The lifting and transfer results are
implemented under the convention nu = (1,...,1); restriction itself accepts
any valid nu.
"""

from dataclasses import dataclass

from .errors import CapabilityError, InputError
from .cellular import nilpotency_order
from .groebner import Ideal, monomials_of_ideal
from .lattice import kernel_lattice, lattice_ideal, smith_normal_form
from .meso import (WitnessSearch, _complement, _vars_ideal,
                   coprincipal_component)
from .orders import GREVLEX
from .rings import Polynomial, m_deg, m_mul


@dataclass
class RestrictionContext:
    sigma: tuple
    nu: tuple                  # one scalar per sigma variable, in sigma order
    ring: object               # ambient ring
    restricted_ring: object    # k[N^(sigma^c)]
    project: object            # polynomial map, sigma-support must be zero
    embed: object              # restricted ring -> ambient ring

    @property
    def sigma_c(self):
        return _complement(self.ring, self.sigma)

    def is_ones(self):
        F = self.ring.field
        return all(F.is_one(v) for v in self.nu)


def _evaluate_sigma_part(p, sigma, nu):
    """Value of a polynomial supported on sigma at x_i = nu_i."""
    F = p.ring.field
    pos = {j: t for t, j in enumerate(sigma)}
    total = F.zero
    for e, c in p.terms.items():
        val = c
        for j, exp in enumerate(e):
            if exp:
                val = F.mul(val, F.pow(nu[pos[j]], exp))
        total = F.add(total, val)
    return total


def make_restriction(I, sigma, nu=None, grading=None, require_full_rank=False):
    """Validated restriction context; nu defaults to the all-ones point.

    nu must be a zero of I cap k[N^sigma]; otherwise the restriction would
    introduce constants, which is exactly the reported error.
    """
    ring = I.ring
    sigma = tuple(sorted(set(sigma)))
    sigma_c = _complement(ring, sigma)
    F = ring.field
    if nu is None:
        nu = (F.one,) * len(sigma)
    nu = tuple(nu)
    if len(nu) != len(sigma):
        raise InputError("need one coordinate of nu per sigma variable")
    if any(F.is_zero(v) for v in nu):
        raise InputError("nu must have coordinates in the torus (all nonzero)")
    if require_full_rank:
        if grading is None:
            raise InputError("full-rank check needs a grading")
        cols = grading.submatrix_columns(sigma)
        if len(sigma) != grading.d or smith_normal_form(cols).rank != grading.d:
            raise InputError(
                "convention requires |sigma| = d with A_sigma of full rank d"
            )
    sigma_part = I.eliminate(sigma_c)
    for g in sigma_part.gens:
        if not F.is_zero(_evaluate_sigma_part(g, sigma, nu)):
            raise InputError(
                "nu is not a zero of the sigma-part: restriction would "
                f"introduce constants (generator {g} evaluates to "
                f"{F.format(_evaluate_sigma_part(g, sigma, nu))})"
            )
    restricted, project, embed = ring.subring(sigma_c)
    return RestrictionContext(
        sigma=sigma, nu=nu, ring=ring, restricted_ring=restricted,
        project=project, embed=embed,
    )


def restrict_polynomial(p, ctx):
    """Image of p under x_i -> nu_i for i in sigma, in the restricted ring."""
    F = ctx.ring.field
    pos = {j: t for t, j in enumerate(ctx.sigma)}
    out = {}
    for e, c in p.terms.items():
        val = c
        stripped = list(e)
        for j in ctx.sigma:
            if e[j]:
                val = F.mul(val, F.pow(ctx.nu[pos[j]], e[j]))
                stripped[j] = 0
        key = tuple(stripped)
        s = F.add(out.get(key, F.zero), val)
        if F.is_zero(s):
            out.pop(key, None)
        else:
            out[key] = s
    return ctx.project(Polynomial(ctx.ring, out))


def restrict_ideal(I, ctx):
    """The restricted ideal, generated by the images of the generators."""
    gens = [restrict_polynomial(g, ctx) for g in I.gens]
    return Ideal(ctx.restricted_ring, [g for g in gens if g])


def weak_monomial_witnesses(J, tau, bound=None):
    """Weak monomial witnesses of J for m_tau: no grading assumed.

    tau indexes the witness variables; the saturating set is its complement
    inside J's ring.
    """
    sigma = _complement(J.ring, tau)
    return WitnessSearch(J, sigma, grading=None, bound=bound).monomial_witnesses()


def weak_essential_witnesses(J, tau, bound=None):
    sigma = _complement(J.ring, tau)
    return WitnessSearch(J, sigma, grading=None, bound=bound).essential_witnesses()


def _erase_sigma(p, ctx):
    return restrict_polynomial(p, ctx)


def _lift_binomial(gbar, I, ctx, cap):
    """A binomial (or monomial) of I whose sigma-erasure is a scalar of gbar.

    Searches sigma-monomial corrections of weight up to cap; existence is
    guaranteed by the lifting proposition under the all-ones convention.
    """
    ring = ctx.ring
    F = ring.field
    gb = I.groebner()
    terms = sorted(gbar.terms.items(), key=lambda t: GREVLEX.key(t[0]), reverse=True)
    sigma_monos = _sigma_monomials(ctx, cap)
    if len(terms) == 1:
        (u, cu), = terms
        u_full = ctx.embed(ctx.restricted_ring.monomial(u)).leading()[0]
        for a in sigma_monos:
            cand = ring.monomial(m_mul(u_full, a), cu)
            if gb.contains(cand):
                return cand
        raise CapabilityError(
            f"no lift of the monomial {gbar} found within weight {cap}"
        )
    (u, cu), (v, cv) = terms
    u_full = ctx.embed(ctx.restricted_ring.monomial(u)).leading()[0]
    v_full = ctx.embed(ctx.restricted_ring.monomial(v)).leading()[0]
    for a in sigma_monos:
        for b in sigma_monos:
            cand = ring.monomial(m_mul(u_full, a), cu) + ring.monomial(
                m_mul(v_full, b), cv
            )
            if gb.contains(cand):
                return cand
    raise CapabilityError(
        f"no lift of the binomial {gbar} found within weight {cap}"
    )


def _sigma_monomials(ctx, cap):
    out = []
    sigma = ctx.sigma
    base = [0] * ctx.ring.nvars

    def rec(pos, left):
        if pos == len(sigma):
            out.append(tuple(base))
            return
        for e in range(left + 1):
            base[sigma[pos]] = e
            rec(pos + 1, left - e)
        base[sigma[pos]] = 0

    rec(0, cap)
    out.sort(key=lambda u: (m_deg(u), GREVLEX.key(u)))
    return out


def lift_polynomial(g, I, ctx, cap=None):
    """f in I with sigma-erasure g, built by the support-merging procedure.

    Requires the all-ones convention and g in the restricted ideal. The
    result is verified: f in I, erasure(f) = g, and every term of g is the
    erasure of exactly one term of f.
    """
    if not ctx.is_ones():
        raise InputError("lifting is implemented for nu = (1,...,1) only")
    ring = ctx.ring
    F = ring.field
    Ibar = restrict_ideal(I, ctx)
    gb_bar = Ibar.groebner()
    if not gb_bar.contains(g):
        raise InputError("polynomial is not in the restricted ideal")
    if g.is_zero():
        return ring.zero()
    if cap is None:
        cap = max(4, 2 * max(m_deg(e) for gen in I.gens for e in gen.terms))
    # division of g by the restricted basis, tracking term-by-term quotients
    pieces = []  # (coeff, delta in sigma^c, lifted binomial, image binomial)
    rest = g
    while rest:
        e, c = rest.leading()
        for gbr in gb_bar:
            le, lc = gbr.leading()
            if all(a <= b for a, b in zip(le, e)):
                delta = tuple(b - a for a, b in zip(le, e))
                coef = F.div(c, lc)
                lifted = _lift_binomial(gbr, I, ctx, cap)
                pieces.append((coef, delta, lifted, gbr))
                rest = rest - gbr.mul_term(delta, coef)
                break
        else:
            raise AssertionError("member of the restricted ideal failed to reduce")
    # embed the sigma^c shifts and merge sigma-parts until the erasure is term-to-term
    delta_full = []
    for coef, delta, lifted, gbr in pieces:
        full = ctx.embed(ctx.restricted_ring.monomial(delta)).leading()[0]
        delta_full.append(full)
    parts = [
        lifted.mul_term(dfull, coef)
        for (coef, _, lifted, _), dfull in zip(pieces, delta_full)
    ]
    for _ in range(100):
        f = parts[0]
        for p in parts[1:]:
            f = f + p
        if _erasure_is_tight(f, g, ctx):
            gbI = I.groebner()
            assert gbI.contains(f)
            return f
        # find a sigma^c monomial appearing with two different sigma-parts
        groups = {}
        for idx, part in enumerate(parts):
            for e in part.terms:
                key = tuple(0 if j in set(ctx.sigma) else x for j, x in enumerate(e))
                spart = tuple(x if j in set(ctx.sigma) else 0 for j, x in enumerate(e))
                groups.setdefault(key, {}).setdefault(spart, set()).add(idx)
        target = None
        for key, spartmap in groups.items():
            if len(spartmap) > 1:
                target = (key, spartmap)
                break
        if target is None:
            break
        key, spartmap = target
        q = tuple(max(s[j] for s in spartmap) for j in range(ring.nvars))
        for spart, idxs in spartmap.items():
            shift = tuple(a - b for a, b in zip(q, spart))
            if any(shift):
                for idx in idxs:
                    parts[idx] = parts[idx].mul_term(shift)
    raise CapabilityError("lifting procedure did not stabilize")


def _erasure_is_tight(f, g, ctx):
    """Erasure of f equals g with a term-to-term correspondence."""
    if _erase_sigma(f, ctx) != g:
        return False
    seen = {}
    for e in f.terms:
        key = tuple(0 if j in set(ctx.sigma) else x for j, x in enumerate(e))
        seen[key] = seen.get(key, 0) + 1
    image_keys = set()
    for e in g.terms:
        full = ctx.embed(ctx.restricted_ring.monomial(e)).leading()[0]
        image_keys.add(full)
    return set(seen) == image_keys and all(v == 1 for v in seen.values())


def check_nonlifting(p, I, ctx):
    """One instance of the non-lifting implication.

    Returns (holds, detail) for: p not in I_sigma implies erasure(p) not in
    the restricted ideal. Vacuously true when p lies in I_sigma.
    """
    I_sigma = I.saturation_vars(ctx.sigma)
    in_sat = I_sigma.contains(p)
    pbar = restrict_polynomial(p, ctx)
    in_bar = restrict_ideal(I, ctx).contains(pbar)
    holds = in_sat or not in_bar
    return holds, {"in_sigma_saturation": in_sat, "image_in_restriction": in_bar}


def witness_transfer_check(I, sigma, grading=None, bound=None, nu=None):
    """Compare (essential) witnesses of I for m_(sigma^c) with weak witnesses
    of the restriction, per the transfer theorem.

    Returns a report dict; a mismatch indicates a too-small search bound (the
    theorem guarantees equality), so it is reported rather than raised.
    """
    ctx = make_restriction(I, sigma, nu=nu, grading=grading,
                           require_full_rank=False)
    if not ctx.is_ones():
        raise InputError("the transfer theorem is implemented at nu = (1,...,1)")
    full = WitnessSearch(I, sigma, grading=grading, bound=bound)
    full_wits = full.monomial_witnesses()
    full_ess = full.essential_witnesses()
    Ibar = restrict_ideal(I, ctx)
    tau = tuple(range(ctx.restricted_ring.nvars))
    weak = WitnessSearch(Ibar, (), grading=None, bound=bound)
    weak_wits = weak.monomial_witnesses()
    weak_ess = weak.essential_witnesses()

    def full_set(recs):
        out = set()
        for r in recs:
            out.update(r.class_members)
        return out

    def weak_set(recs):
        out = set()
        for r in recs:
            for m in r.class_members:
                out.add(ctx.embed(ctx.restricted_ring.monomial(m)).leading()[0])
        return out

    fw, ww = full_set(full_wits), weak_set(weak_wits)
    fe, we = full_set(full_ess), weak_set(weak_ess)
    return {
        "witnesses_match": fw == ww,
        "essential_match": fe == we,
        "only_full": sorted(fw - ww),
        "only_restricted": sorted(ww - fw),
        "only_full_essential": sorted(fe - we),
        "only_restricted_essential": sorted(we - fe),
        "full_witnesses": sorted(fw),
        "restricted_witnesses": sorted(ww),
    }


def toral_primary_component(I, chi, sigma, grading, K=None, bound=None, nu=None):
    """P-primary component of I for a toral prime P = I(chi) + m_(sigma^c).

    Uses ((I + I(chi) + K) : (prod sigma)^infty) + Mbar with Mbar produced by
    the weak-witness machinery on the restriction. K defaults to zero, the
    valid choice for minimal P; embedded P needs an explicit K.
    """
    ring = I.ring
    if ring.field.characteristic != 0:
        raise InputError("the toral component formula is implemented in characteristic 0")
    sigma = tuple(sorted(set(sigma)))
    sigma_c = _complement(ring, sigma)
    ker = kernel_lattice(
        [list(grading.column(j)) for j in sigma], ring.nvars, positions=list(sigma)
    )
    if not chi.lattice.saturation().equals(ker):
        raise InputError("the given prime is Andean; the formula needs a toral prime")
    base = I + lattice_ideal(chi, ring)
    if K is not None:
        base = base + K
    S = base.saturation_vars(sigma)
    if not sigma_c:
        return S
    ctx = make_restriction(I, sigma, nu=nu, grading=grading)
    Ibar = restrict_ideal(I, ctx)
    weak = WitnessSearch(Ibar, (), grading=None, bound=bound)
    comps = []
    for rec in weak.essential_witnesses():
        comps.append(coprincipal_component(Ibar, (), rec, search=weak))
    Mbar = None
    for c in comps:
        Mbar = c.ideal if Mbar is None else Mbar.intersect(c.ideal)
    mono_gens = []
    if Mbar is not None:
        box = []
        for j in range(ctx.restricted_ring.nvars):
            N = nilpotency_order(Mbar, j)
            box.append(N if N is not None else int(weak.bound))
        for u in monomials_of_ideal(Mbar, box):
            mono_gens.append(ctx.embed(ctx.restricted_ring.monomial(u)))
    return S + Ideal(ring, mono_gens)


def stabilized_artinian_closure(I, chi, sigma, grading, bound=None, start=1):
    """K for the embedded case by exponent doubling until the component stabilizes."""
    ring = I.ring
    sigma_c = _complement(ring, sigma)
    e = start
    prev = None
    while e <= 2 ** 12:
        K = Ideal(ring, [ring.monomial(tuple(
            e if j == i else 0 for j in range(ring.nvars)
        )) for i in sigma_c])
        comp = toral_primary_component(I, chi, sigma, grading, K=K, bound=bound)
        if prev is not None and comp.equals(prev):
            return K, comp
        prev = comp
        e *= 2
    raise CapabilityError("no stabilization of the artinian closure exponent")
