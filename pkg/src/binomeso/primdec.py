"""Primary decomposition of lattice ideals and of binomial ideals via the
mesoprimary route, plus hull and toral part.

Lattice ideals decompose through character extensions to the interrupted
saturations Sat'_p and Sat; a mesoprimary component refines by adding the
primary pieces of its own lattice part. The resulting components are grouped
by associated prime, conservatively pruned, and verified to intersect back to
the input.
"""

from dataclasses import dataclass

from .errors import BoundTooSmallError, InputError
from .groebner import Ideal
from .lattice import character_extensions, kernel_lattice, lattice_ideal
from .meso import _complement, _vars_ideal, mesoprimary_decomposition
from .orders import GREVLEX


def lattice_primary_decomposition(chi, ring):
    """Minimal primary decomposition of the lattice ideal I(chi).

    Returns [(primary, prime, chi_prime)]: the characters extending chi to
    Sat'_p give the primary ideals, their unique extensions to Sat give the
    associated primes. Requires the field to contain the needed roots of
    unity (CapabilityError names the cyclotomic order otherwise).
    """
    p = ring.field.characteristic
    L = chi.lattice
    inter = L.sat_p_prime(p)
    sat = L.saturation()
    out = []
    for rho in character_extensions(chi, inter):
        chis = character_extensions(rho, sat)
        assert len(chis) == 1, "extension to the saturation must be unique"
        out.append((lattice_ideal(rho, ring), lattice_ideal(chis[0], ring), chis[0]))
    g = L.index_in(inter)
    assert g == len(out), "component count must equal |Sat'_p(L)/L|"
    return out


@dataclass
class PrimaryComponent:
    ideal: Ideal
    prime: Ideal
    sigma: tuple
    prime_character: object = None   # character on Sat(L) cutting out the prime
    witnesses: tuple = ()
    minimal: bool | None = None
    toral: str | None = None

    def __repr__(self):
        return f"PrimaryComponent({self.ideal!r} primary to {self.prime!r})"


def mesoprimary_to_primary(comp):
    """Canonical primary decomposition of a mesoprimary component.

    Splits the component's own lattice part by characters and adds each piece;
    the intersection is verified to return the component.
    """
    ring = comp.ideal.ring
    sigma_c = _complement(ring, comp.sigma)
    L, chi = comp.lattice_data()
    out = []
    for primary_lat, prime_lat, chi_prime in lattice_primary_decomposition(chi, ring):
        out.append(PrimaryComponent(
            ideal=comp.ideal + primary_lat,
            prime=prime_lat + _vars_ideal(ring, sigma_c),
            sigma=comp.sigma,
            prime_character=chi_prime,
            witnesses=comp.witnesses,
        ))
    inter = None
    for c in out:
        inter = c.ideal if inter is None else inter.intersect(c.ideal)
    assert inter is not None and inter.equals(comp.ideal), (
        "refinement did not intersect back to the mesoprimary component"
    )
    return out


@dataclass
class PrimaryDecomposition:
    input_ideal: Ideal
    components: tuple
    meso: object
    graded: bool

    def primes(self):
        return [c.prime for c in self.components]


def _group_by_prime(comps):
    groups = []
    for c in comps:
        for g in groups:
            if g[0].prime.equals(c.prime):
                g.append(c)
                break
        else:
            groups.append([c])
    out = []
    for g in groups:
        if len(g) == 1:
            out.append(g[0])
            continue
        inter = g[0].ideal
        for c in g[1:]:
            inter = inter.intersect(c.ideal)
        out.append(PrimaryComponent(
            ideal=inter, prime=g[0].prime, sigma=g[0].sigma,
            prime_character=g[0].prime_character,
            witnesses=tuple(w for c in g for w in c.witnesses),
        ))
    return out


def _prune_redundant(comps, I):
    comps = list(comps)
    changed = True
    while changed and len(comps) > 1:
        changed = False
        for idx in range(len(comps)):
            others = comps[:idx] + comps[idx + 1:]
            inter = others[0].ideal
            for c in others[1:]:
                inter = inter.intersect(c.ideal)
            if inter.equals(I):
                comps.pop(idx)
                changed = True
                break
    return comps


def _mark_minimal(comps):
    for c in comps:
        c.minimal = not any(
            o is not c and not o.prime.equals(c.prime) and c.prime.contains_ideal(o.prime)
            for o in comps
        )
    return comps


def _mark_toral(comps, grading):
    if grading is None:
        return comps
    for c in comps:
        ker = kernel_lattice(
            [list(grading.column(j)) for j in c.sigma],
            c.ideal.ring.nvars, positions=list(c.sigma),
        )
        sat = c.prime_character.lattice.saturation()
        c.toral = "toral" if sat.equals(ker) else "Andean"
    return comps


def primary_decomposition(I, grading=None, bound=None):
    """Binomial primary decomposition by refining a mesoprimary decomposition.

    Components sharing an associated prime are intersected into one; provably
    redundant components are dropped; the intersection is verified to equal I.
    """
    meso = mesoprimary_decomposition(I, grading=grading, bound=bound)
    comps = []
    for mc in meso.merged:
        comps.extend(mesoprimary_to_primary(mc))
    # drop exact duplicates before grouping
    unique = []
    for c in comps:
        if not any(c.ideal.equals(u.ideal) and c.prime.equals(u.prime) for u in unique):
            unique.append(c)
    grouped = _group_by_prime(unique)
    pruned = _prune_redundant(grouped, I)
    inter = None
    for c in pruned:
        inter = c.ideal if inter is None else inter.intersect(c.ideal)
    if inter is None or not inter.equals(I):
        raise BoundTooSmallError(
            "primary components do not intersect to the input ideal",
            bound=meso.bound,
        )
    _mark_minimal(pruned)
    _mark_toral(pruned, grading)
    pruned.sort(key=lambda c: (
        len(c.sigma), c.sigma, tuple(g.format() for g in c.prime.groebner()),
        tuple(g.format() for g in c.ideal.groebner()),
    ))
    return PrimaryDecomposition(
        input_ideal=I, components=tuple(pruned), meso=meso,
        graded=grading is not None,
    )


def associated_primes(decomposition):
    """(prime, minimal flag) pairs of a primary decomposition."""
    return [(c.prime, c.minimal) for c in decomposition.components]


def hull(I, grading=None, bound=None, decomposition=None):
    """Intersection of the components at minimal primes, with binomiality report.

    Returns (ideal, is_binomial, witness, decomposition).
    """
    pd = decomposition or primary_decomposition(I, grading=grading, bound=bound)
    minimal = [c for c in pd.components if c.minimal]
    H = None
    for c in minimal:
        H = c.ideal if H is None else H.intersect(c.ideal)
    assert H is not None
    binom, witness = H.is_binomial_ideal()
    return H, binom, witness, pd


def toral_part(decomposition, grading=None):
    """Intersection of the toral primary components.

    Returns (ideal, info); info records whether every toral prime is minimal,
    in which case the result does not depend on the choice of decomposition.
    The empty intersection is the unit ideal.
    """
    comps = list(decomposition.components)
    if comps and comps[0].toral is None:
        if grading is None:
            raise InputError("toral part needs a grading")
        _mark_toral(comps, grading)
    toral = [c for c in comps if c.toral == "toral"]
    ring = decomposition.input_ideal.ring
    if not toral:
        return Ideal(ring, [ring.one()]), {
            "toral_components": 0, "decomposition_independent": True,
        }
    out = toral[0].ideal
    for c in toral[1:]:
        out = out.intersect(c.ideal)
    independent = all(c.minimal for c in toral)
    return out, {
        "toral_components": len(toral),
        "decomposition_independent": independent,
    }


def meso_toral_part(meso_decomposition, grading):
    """Intersection of the toral mesoprimary components (Lemma 6.2 object)."""
    from .grading import toral_classify

    ring = meso_decomposition.input_ideal.ring
    toral = []
    flags = []
    for comp in meso_decomposition.merged:
        report = toral_classify(comp.ideal, grading)
        comp.toral = report.kind
        flags.append(report.kind)
        if report.is_toral:
            toral.append(comp)
    if not toral:
        return Ideal(ring, [ring.one()]), flags
    out = toral[0].ideal
    for c in toral[1:]:
        out = out.intersect(c.ideal)
    return out, flags
