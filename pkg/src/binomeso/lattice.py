"""Integer lattices, Smith normal form, saturations, characters, lattice ideals.

Lattices live in the ambient Z^n of the ring they accompany; sublattices of
Z^sigma are represented as full-length vectors supported on sigma.
"""

from math import gcd, lcm

from .errors import CapabilityError, InputError, NonCellularError
from .groebner import Ideal
from .orders import GREVLEX


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _matmul(A, B):
    if not A or not B:
        return []
    cols = len(B[0])
    return [
        [sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(cols)]
        for i in range(len(A))
    ]


def det(M):
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


class SmithDecomposition:
    """U*B*V = D diagonal with d_1 | d_2 | ... ; U, V unimodular with inverses."""

    def __init__(self, U, V, diag, Uinv, Vinv):
        self.U = U
        self.V = V
        self.diag = diag
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.rank = len(diag)


def smith_normal_form(B):
    """Smith decomposition of an integer matrix given as a list of rows."""
    A = [list(r) for r in B]
    m = len(A)
    n = len(A[0]) if m else 0
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):  # row_i += q * row_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in Uinv:
            r[j] -= q * r[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(i, j, q):  # col_i += q * col_j
        for r in A:
            r[i] += q * r[j]
        for r in V:
            r[i] += q * r[j]
        Vinv[j] = [a - q * b for a, b in zip(Vinv[j], Vinv[i])]

    def col_neg(i):
        for r in A:
            r[i] = -r[i]
        for r in V:
            r[i] = -r[i]
        Vinv[i] = [-a for a in Vinv[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        if A[t][t] < 0:
            row_neg(t)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:
                        row_swap(t, i)
                        if A[t][t] < 0:
                            row_neg(t)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
                        if A[t][t] < 0:
                            col_neg(t)
                        dirty = True
        # enforce divisibility of the rest of the block by the pivot
        d = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1
    diag = [A[i][i] for i in range(min(m, n)) if A[i][i] != 0]
    return SmithDecomposition(U, V, diag, Uinv, Vinv)


def _lattice_basis_with_combos(rows, n):
    """Basis of the lattice spanned by rows, plus the combo matrix over rows.

    Returns (basis_rows, C) where basis_rows[i] = sum_j C[i][j] * rows[j].
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    snf = smith_normal_form(rows)
    basis = []
    combos = []
    for i in range(snf.rank):
        # row_i of U*M equals d_i * (row_i of V^{-1}); both expressions are used
        vec = [snf.diag[i] * snf.Vinv[i][j] for j in range(n)]
        basis.append(tuple(vec))
        combos.append(list(snf.U[i][: len(rows)]))
    return basis, combos


class IntLattice:
    """Sublattice of Z^n given by a basis of linearly independent rows."""

    def __init__(self, n, basis):
        self.n = n
        self.basis = tuple(tuple(b) for b in basis)
        for b in self.basis:
            if len(b) != n:
                raise InputError("basis vector of wrong length")
        self._snf = None

    @classmethod
    def from_rows(cls, n, rows):
        basis, _ = _lattice_basis_with_combos(rows, n)
        return cls(n, basis)

    @property
    def rank(self):
        return len(self.basis)

    def snf(self):
        if self._snf is None:
            self._snf = smith_normal_form([list(b) for b in self.basis])
        return self._snf

    def solve(self, v):
        """Integer coordinates of v in terms of the basis, or None."""
        if len(v) != self.n:
            raise InputError("vector of wrong length")
        if not self.basis:
            return [] if all(a == 0 for a in v) else None
        s = self.snf()
        w = [sum(v[t] * s.V[t][j] for t in range(self.n)) for j in range(self.n)]
        y = []
        for i in range(self.n):
            d = s.diag[i] if i < s.rank else 0
            if d:
                if w[i] % d:
                    return None
                y.append(w[i] // d)
            elif w[i]:
                return None
        x = [sum(y[t] * s.U[t][j] for t in range(s.rank)) for j in range(len(self.basis))]
        return x

    def contains(self, v):
        return self.solve(v) is not None

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis)

    def equals(self, other):
        return (
            self.n == other.n
            and self.rank == other.rank
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    def saturation(self):
        """Sat(L) = (Q tensor L) cap Z^n."""
        if not self.basis:
            return IntLattice(self.n, [])
        s = self.snf()
        rows = [tuple(s.Vinv[i]) for i in range(s.rank)]
        return IntLattice(self.n, rows)

    def _split_saturation(self, p, keep_p_part):
        if p == 0:
            return IntLattice(self.n, self.basis) if keep_p_part else self.saturation()
        if p < 2 or any(p % f == 0 for f in range(2, int(p**0.5) + 1)):
            raise InputError(f"saturation index must be prime or zero, got {p}")
        if not self.basis:
            return IntLattice(self.n, [])
        s = self.snf()
        rows = []
        for i in range(s.rank):
            d = s.diag[i]
            ppart = 1
            while d % p == 0:
                d //= p
                ppart *= p
            # d is now the prime-to-p part of diag[i]
            scale = d if keep_p_part else ppart
            rows.append(tuple(scale * x for x in s.Vinv[i]))
        return IntLattice(self.n, rows)

    def sat_p(self, p):
        """Largest intermediate lattice with p-power index over L (Sat_0 = L)."""
        return self._split_saturation(p, keep_p_part=True)

    def sat_p_prime(self, p):
        """Largest intermediate lattice with index prime to p (Sat'_0 = Sat)."""
        return self._split_saturation(p, keep_p_part=False)

    def index_in(self, super_lattice):
        """|super/L| for L of finite index in super_lattice, else None."""
        C = self._coords_matrix(super_lattice)
        if C is None or self.rank != super_lattice.rank:
            return None
        d = det(C)
        return abs(d) if d else None

    def _coords_matrix(self, super_lattice):
        C = []
        for b in self.basis:
            x = super_lattice.solve(b)
            if x is None:
                return None
            C.append(x)
        return C

    def __repr__(self):
        return f"Lattice(Z^{self.n}; {[list(b) for b in self.basis]})"


def kernel_lattice(columns, n, positions=None):
    """Integer kernel of the matrix with the given columns, as a lattice.

    columns: list of the matrix's columns (each a list of length d).
    positions: where to embed each kernel coordinate inside Z^n (defaults to
    0..len(columns)-1). The result is saturated by construction.
    """
    s = len(columns)
    if positions is None:
        positions = list(range(s))
    if s == 0:
        return IntLattice(n, [])
    d = len(columns[0])
    M = [[columns[j][i] for j in range(s)] for i in range(d)]
    snf = smith_normal_form(M)
    vecs = []
    for j in range(snf.rank, s):
        col = [snf.V[i][j] for i in range(s)]
        full = [0] * n
        for pos, val in zip(positions, col):
            full[pos] = val
        vecs.append(tuple(full))
    return IntLattice(n, vecs)


class LatticeCharacter:
    """Group homomorphism L -> k*, stored by its values on the basis."""

    def __init__(self, lattice, field, values):
        if len(values) != lattice.rank:
            raise InputError("need one value per basis vector")
        for v in values:
            if field.is_zero(v):
                raise InputError("character values must be nonzero")
        self.lattice = lattice
        self.field = field
        self.values = tuple(values)

    @classmethod
    def trivial(cls, lattice, field):
        return cls(lattice, field, (field.one,) * lattice.rank)

    def evaluate(self, v):
        x = self.lattice.solve(v)
        if x is None:
            raise InputError(f"{v} is not in the character's lattice")
        out = self.field.one
        for a, val in zip(x, self.values):
            out = self.field.mul(out, self.field.pow(val, a))
        return out

    def restricts_from(self, other):
        """Does self restrict to ``other`` on other's lattice?"""
        return all(
            self.evaluate(b) == other.evaluate(b) for b in other.lattice.basis
        )

    def __repr__(self):
        vals = ", ".join(self.field.format(v) for v in self.values)
        return f"Character({self.lattice!r}; [{vals}])"


def _required_cyclotomic(field, c, d):
    m = field.element_order(c)
    if m is not None:
        return lcm(d, d * m)
    q = field.as_rational(c)
    if q is not None:
        from .fields import _rational_nth_root

        if _rational_nth_root(abs(q), d) is not None:
            return d if q > 0 else 2 * d
    raise CapabilityError(
        f"cannot determine a cyclotomic field containing {d}-th roots of "
        f"{field.format(c)}"
    )


def character_extensions(chi, target):
    """All characters on ``target`` extending chi (chi.lattice of finite index).

    Raises CapabilityError naming the cyclotomic order N when the field lacks
    the necessary roots; rerunning over QQ(zeta_N) then succeeds (char 0).
    """
    L = chi.lattice
    field = chi.field
    if L.n != target.n:
        raise InputError("lattices in different ambient spaces")
    if L.rank != target.rank:
        raise InputError("character extension needs finite index")
    C = L._coords_matrix(target)
    if C is None:
        raise InputError("character's lattice is not contained in the target")
    if not L.basis:
        return [LatticeCharacter(target, field, ())]
    s = smith_normal_form(C)
    assert s.rank == L.rank
    # new basis g_i of target with {d_i g_i} a basis of L
    G = []
    for i in range(target.rank):
        vec = [0] * target.n
        for j in range(target.rank):
            coef = s.Vinv[i][j]
            for t in range(target.n):
                vec[t] += coef * target.basis[j][t]
        G.append(tuple(vec))
    new_target = IntLattice(target.n, G)
    p = field.characteristic
    root_lists = []
    needed = []
    for i in range(target.rank):
        d = s.diag[i]
        c = chi.evaluate(tuple(d * x for x in G[i]))
        roots = field.nth_roots(c, d)
        expected = d
        while p and expected % p == 0:
            expected //= p
        if len(roots) != expected:
            if p:
                raise CapabilityError(
                    f"extension of a character along index {d} is not realizable "
                    f"inside GF({p})"
                )
            needed.append(_required_cyclotomic(field, c, d))
            continue
        root_lists.append(sorted(roots))
    if needed:
        N = lcm(*needed) if len(needed) > 1 else needed[0]
        raise CapabilityError(
            f"field {field} lacks the roots of unity needed to extend the "
            f"character; rerun over QQ(zeta_{N})",
            required_cyclotomic=N,
        )
    out = []

    def rec(i, acc):
        if i == len(root_lists):
            out.append(LatticeCharacter(new_target, field, tuple(acc)))
            return
        for r in root_lists[i]:
            rec(i + 1, acc + [r])

    rec(0, [])
    for ext in out:
        assert ext.restricts_from(chi)
    return out


def _positive_part(v):
    return tuple(max(a, 0) for a in v)


def _negative_part(v):
    return tuple(max(-a, 0) for a in v)


def lattice_ideal(chi, ring):
    """I(rho): binomials x^(b+) - rho(b) x^(b-) over the basis, saturated.

    Saturation by the variables supporting the lattice makes the ideal contain
    x^u - rho(u-v) x^v for every difference u-v in the lattice.
    """
    L = chi.lattice
    if L.n != ring.nvars:
        raise InputError("lattice ambient dimension does not match the ring")
    gens = []
    touched = set()
    for b, val in zip(L.basis, chi.values):
        plus = _positive_part(b)
        minus = _negative_part(b)
        gens.append(ring.monomial(plus) - ring.monomial(minus, val))
        touched.update(i for i, e in enumerate(b) if e)
    I = Ideal(ring, gens)
    if touched:
        I = I.saturation_vars(sorted(touched))
    return I


def lattice_of_cellular(I, sigma, verify=True):
    """(L, chi) underlying I cap k[N^sigma], for sigma-cellular binomial I.

    Reads exponent differences and coefficients off the reduced basis of the
    eliminated ideal; inconsistent characters or monomials signal non-cellular
    (or non-binomial) input.
    """
    ring = I.ring
    sigma = sorted(set(sigma))
    sigma_c = [i for i in range(ring.nvars) if i not in set(sigma)]
    J = I.eliminate(sigma_c)
    gb = J.groebner(GREVLEX)
    vectors = []
    coeffs = []
    for g in gb:
        if g.num_terms() == 1:
            raise NonCellularError(
                f"sigma-part contains the monomial {g}; input is not cellular"
            )
        if g.num_terms() != 2:
            raise NonCellularError(
                f"sigma-part has the non-binomial element {g}"
            )
        (e1, c1), (e2, c2) = sorted(
            g.terms.items(), key=lambda t: GREVLEX.key(t[0]), reverse=True
        )
        lam = ring.field.neg(ring.field.div(c2, c1))
        vectors.append(tuple(a - b for a, b in zip(e1, e2)))
        coeffs.append(lam)
    basis, combos = _lattice_basis_with_combos(vectors, ring.nvars)
    L = IntLattice(ring.nvars, basis)
    values = []
    for combo in combos:
        val = ring.field.one
        for c, lam in zip(combo, coeffs):
            val = ring.field.mul(val, ring.field.pow(lam, c))
        values.append(val)
    chi = LatticeCharacter(L, ring.field, values)
    for vec, lam in zip(vectors, coeffs):
        if chi.evaluate(vec) != lam:
            raise NonCellularError(
                "inconsistent binomial coefficients; sigma-part is not a "
                "lattice ideal"
            )
    if verify and not lattice_ideal(chi, ring).equals(J):
        raise NonCellularError(
            "sigma-part is not saturated; input is not sigma-cellular"
        )
    return L, chi
