"""Positive multigradings, Hilbert functions, and the toral/Andean split.

A grading is a full-rank integer matrix A whose columns span Z^d; it is
positive when some rational row vector h has h*A strictly positive. The
certificate h is found by exact Fourier-Motzkin elimination and doubles as
the weight function that makes every graded fiber finite.
"""

from fractions import Fraction
from math import gcd

from .cellular import cellular_data
from .errors import InputError, ResourceLimitError
from .lattice import IntLattice, kernel_lattice, lattice_of_cellular, smith_normal_form


class NotPositiveError(InputError):
    pass


def _fm_eliminate(cons, k):
    """Eliminate variable k from constraints (coeffs, bound) meaning c.h >= b."""
    pos, neg, rest = [], [], []
    for c, b in cons:
        if c[k] > 0:
            pos.append((c, b))
        elif c[k] < 0:
            neg.append((c, b))
        else:
            rest.append((c, b))
    for cp, bp in pos:
        for cn, bn in neg:
            a, b = -cn[k], cp[k]  # both positive multipliers
            coeffs = tuple(a * x + b * y for x, y in zip(cp, cn))
            rest.append((coeffs, a * bp + b * bn))
    return rest


def _solve_positive_functional(A):
    """Rational h with h*A >= 1 componentwise, or None."""
    d = len(A)
    n = len(A[0])
    cons = [
        (tuple(Fraction(A[k][j]) for k in range(d)), Fraction(1)) for j in range(n)
    ]
    systems = [None] * d
    cur = cons
    for k in range(d - 1, 0, -1):
        systems[k] = cur
        cur = _fm_eliminate(cur, k)
    systems[0] = cur
    h = [Fraction(0)] * d
    for k in range(d):
        lo, hi = None, None
        for c, b in systems[k]:
            rest = b - sum(c[i] * h[i] for i in range(k))
            ck = c[k]
            if ck > 0:
                v = rest / ck
                lo = v if lo is None or v > lo else lo
            elif ck < 0:
                v = rest / ck
                hi = v if hi is None or v < hi else hi
            elif rest > 0:
                return None
        if lo is not None and hi is not None and lo > hi:
            return None
        if lo is not None:
            h[k] = lo
        elif hi is not None:
            h[k] = hi
        # else unconstrained: 0
    return tuple(h)


class Grading:
    """Positive A-grading with its positivity certificate h."""

    def __init__(self, rows, h):
        self.rows = tuple(tuple(r) for r in rows)
        self.h = tuple(h)
        self.d = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        self.weights = tuple(
            sum(self.h[k] * self.rows[k][j] for k in range(self.d))
            for j in range(self.n)
        )
        self._fibers = {}

    def degree(self, exps):
        return tuple(
            sum(self.rows[k][j] * exps[j] for j in range(self.n))
            for k in range(self.d)
        )

    def weight(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def column(self, j):
        return tuple(self.rows[k][j] for k in range(self.d))

    def submatrix_columns(self, indices):
        return [[self.rows[k][j] for j in indices] for k in range(self.d)]

    def fiber(self, beta, ceiling=10**6):
        """All u in N^n with A*u = beta; finite because weights are positive."""
        beta = tuple(beta)
        cached = self._fibers.get(beta)
        if cached is not None:
            return cached
        budget = sum(self.h[k] * beta[k] for k in range(self.d))
        out = []
        u = [0] * self.n
        count = 0

        def rec(j, remaining):
            nonlocal count
            count += 1
            if count > ceiling:
                raise ResourceLimitError(
                    f"fiber enumeration exceeded {ceiling} nodes at degree {beta}"
                )
            if j == self.n:
                if remaining == 0 and self.degree(u) == beta:
                    out.append(tuple(u))
                return
            w = self.weights[j]
            e = 0
            while e * w <= remaining:
                u[j] = e
                rec(j + 1, remaining - e * w)
                e += 1
            u[j] = 0

        if budget >= 0:
            rec(0, budget)
        self._fibers[beta] = out
        return out


def check_positive_grading(rows):
    """Validate a grading matrix and find its positivity certificate.

    Raises NotPositiveError (rank deficiency, lattice span failure, or no
    half-space) otherwise.
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        raise InputError("empty grading matrix")
    d = len(rows)
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("ragged grading matrix")
    s = smith_normal_form(rows)
    if s.rank != d:
        raise NotPositiveError(f"grading matrix does not have full rank {d}")
    if any(abs(x) != 1 for x in s.diag):
        raise NotPositiveError(
            "grading matrix columns do not span Z^d as a lattice "
            f"(elementary divisors {s.diag})"
        )
    h = _solve_positive_functional(rows)
    if h is None:
        raise NotPositiveError(
            "no positive functional: the columns do not lie in an open half-space"
        )
    return Grading(rows, h)


def degree(exps, grading):
    return grading.degree(exps)


def is_homogeneous(I, grading):
    """All terms of every reduced-basis element share an A-degree."""
    for g in I.groebner():
        degs = {grading.degree(e) for e in g.terms}
        if len(degs) > 1:
            return False
    return True


def hilbert_function(I, grading, beta, ceiling=10**6):
    """Number of standard monomials of I in the fiber of beta."""
    gb = I.groebner()
    if gb.is_unit:
        return 0
    leads = gb.leading_exponents()
    count = 0
    for u in grading.fiber(beta, ceiling=ceiling):
        if not any(all(a <= b for a, b in zip(le, u)) for le in leads):
            count += 1
    return count


class ToralReport:
    def __init__(self, kind, sigma, lattice, saturation, kernel, dim, rank,
                 growth_direction=None):
        self.kind = kind  # "toral" | "Andean"
        self.sigma = sigma
        self.lattice = lattice
        self.saturation = saturation
        self.kernel = kernel
        self.dim = dim
        self.rank = rank
        self.growth_direction = growth_direction

    @property
    def is_toral(self):
        return self.kind == "toral"

    def __repr__(self):
        return f"ToralReport({self.kind}, sigma={list(self.sigma)})"


def _rank_of_columns(grading, sigma):
    if not sigma:
        return 0
    return smith_normal_form(grading.submatrix_columns(sigma)).rank


def _lattice_toral_report(I, grading, sigma, lattice, check_dimension=True):
    sat = lattice.saturation()
    ker = kernel_lattice(
        [list(grading.column(j)) for j in sigma], I.ring.nvars, positions=list(sigma)
    )
    toral = sat.equals(ker)
    rank = _rank_of_columns(grading, sigma)
    dim = I.dimension() if check_dimension else None
    if check_dimension:
        agrees = (dim == rank) == toral
        assert agrees, (
            "lattice condition and dimension condition disagree: "
            f"dim={dim}, rank(A_sigma)={rank}, Sat(L)=ker? {toral}"
        )
    growth = None
    if not toral:
        for v in ker.basis:
            if not sat.contains(v):
                growth = v
                break
        assert growth is not None
    return ToralReport(
        "toral" if toral else "Andean", tuple(sigma), lattice, sat, ker, dim, rank,
        growth_direction=growth,
    )


def toral_classify(I, grading, check_dimension=True):
    """Toral/Andean classification of a mesoprimary (or cellular) ideal.

    Tests Sat(L) = ker_Z(A_sigma) on the lattice of the sigma-part and
    cross-checks against dim(R/I) = rank(A_sigma); a disagreement would be an
    internal error, not a classification.
    """
    data = cellular_data(I)
    if not data.cellular:
        raise InputError(
            f"toral classification needs cellular input; variable "
            f"{I.ring.names[data.witness_var]} is neither nilpotent nor a "
            "nonzerodivisor"
        )
    sigma = data.sigma
    lattice, _ = lattice_of_cellular(I, sigma)
    return _lattice_toral_report(I, grading, sigma, lattice,
                                 check_dimension=check_dimension)


def toral_prime_test(P, grading, check_dimension=True):
    """Toral/Andean for a prime of the form I(chi) + m_(sigma^c)."""
    report = toral_classify(P, grading, check_dimension=check_dimension)
    assert report.lattice.equals(report.saturation), (
        "prime input expected a saturated lattice"
    )
    return report


def hilbert_growth_sequence(I, grading, direction, steps=3, ceiling=10**6):
    """Hilbert values along degrees A((k*direction)^+), k = 1..steps.

    For an Andean ideal with direction in ker(A_sigma) - Sat(L) the values
    grow without bound (at least k+1 in step k).
    """
    out = []
    for k in range(1, steps + 1):
        plus = tuple(max(k * x, 0) for x in direction)
        out.append(hilbert_function(I, grading, grading.degree(plus), ceiling=ceiling))
    return out
