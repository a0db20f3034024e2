"""Cellularity: variable classification and the cellular decomposition.

A proper binomial ideal is cellular when every variable is nilpotent or a
nonzerodivisor modulo the ideal; the decomposition splits along any variable
that is neither, using the stabilized quotient exponent.
"""

from dataclasses import dataclass, field

from .errors import InputError
from .groebner import Ideal, stabilization_exponent


@dataclass
class CellularData:
    cellular: bool
    sigma: tuple = ()
    orders: dict = field(default_factory=dict)  # nilpotent var -> minimal power in I
    witness_var: int | None = None


def nilpotency_order(I, i):
    """Minimal N with x_i^N in I, or None when x_i is not nilpotent mod I."""
    ring = I.ring
    x = ring.var(i)
    if not I.saturation(x).is_unit():
        return None
    gb = I.groebner()

    def power_in(k):
        e = [0] * ring.nvars
        e[i] = k
        return gb.nf_monomial(tuple(e)).is_zero()

    hi = 1
    while not power_in(hi):
        hi *= 2
    lo = 1 if hi == 1 else hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if power_in(mid):
            hi = mid
        else:
            lo = mid + 1
    return hi


def cellular_data(I):
    """Classify every variable as nilpotent or nonzerodivisor mod I.

    Returns CellularData; when some variable is neither, ``cellular`` is False
    and ``witness_var`` names the first offender.
    """
    if I.is_unit():
        raise InputError("cellular classification of the unit ideal")
    sigma = []
    orders = {}
    for i in range(I.ring.nvars):
        N = nilpotency_order(I, i)
        if N is not None:
            orders[i] = N
            continue
        x = I.ring.var(i)
        if I.quotient(x).equals(I):
            sigma.append(i)
        else:
            return CellularData(False, tuple(sigma), orders, witness_var=i)
    return CellularData(True, tuple(sigma), orders)


def cellular_decomposition(I):
    """Express a proper binomial ideal as an intersection of cellular ideals.

    Returns [(ideal, CellularData)] whose intersection equals I; leaves whose
    ideal contains another leaf are dropped. Splitting always picks the lowest
    offending variable, so the output is deterministic.
    """
    if I.is_unit():
        raise InputError("cellular decomposition of the unit ideal")
    if not I.is_binomial_gens:
        raise InputError("cellular decomposition expects binomial generators")
    leaves = []

    def rec(J):
        if J.is_unit():
            return
        data = cellular_data(J)
        if data.cellular:
            leaves.append((J, data))
            return
        i = data.witness_var
        e, stable = stabilization_exponent(J, i)
        rec(stable)
        xe = [0] * J.ring.nvars
        xe[i] = e
        rec(J + Ideal(J.ring, [J.ring.monomial(tuple(xe))]))

    rec(I)
    # dedupe, then drop any leaf containing another leaf
    unique = []
    for leaf, data in leaves:
        if not any(leaf.equals(other) for other, _ in unique):
            unique.append((leaf, data))
    kept = []
    for idx, (leaf, data) in enumerate(unique):
        redundant = any(
            jdx != idx and leaf.contains_ideal(other)
            for jdx, (other, _) in enumerate(unique)
        )
        if not redundant:
            kept.append((leaf, data))
    inter = None
    for leaf, _ in kept:
        inter = leaf if inter is None else inter.intersect(leaf)
    assert inter is not None and inter.equals(I), (
        "cellular decomposition failed to intersect back to the input"
    )
    if I.is_binomial_gens:
        for leaf, _ in kept:
            ok, witness = leaf.is_binomial_ideal()
            assert ok, f"cellular leaf is not binomial: {witness}"
    return kept
