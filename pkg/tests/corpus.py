"""Ideal corpus used across the test suite.

Each constructor returns freshly built objects so tests cannot leak cached
state into one another through shared Ideal instances; session-scoped
fixtures in conftest.py hold the expensive decompositions.
"""

from binomeso import Ideal, QQ, Ring, check_positive_grading


def squares():
    """Two mesoprimary components at the maximal ideal plus a lattice part."""
    R = Ring(["x", "y"], QQ)
    x, y = R.var(0), R.var(1)
    I = Ideal(R, [x * x - y * y, x * x * y - x * y * y])
    A = check_positive_grading([[1, 1]])
    return R, I, A


def zw_squares():
    """<z^2-w^2, x(z-w), x^2>: one mesoprime, two coprincipal components."""
    R = Ring(["x", "z", "w"], QQ)
    x, z, w = (R.var(i) for i in range(3))
    I = Ideal(R, [z * z - w * w, x * (z - w), x * x])
    A = check_positive_grading([[1, 1, 1]])
    return R, I, A


def nonbinomial_hull():
    """The 8-generator ideal whose hull is not binomial (not gradable)."""
    R = Ring(["x1", "x2", "x3", "x4"], QQ)
    x1, x2, x3, x4 = (R.var(i) for i in range(4))
    one = R.one()
    I = Ideal(R, [
        x4 * x4 - one,
        x1 * x1 * (x4 - one),
        x3 * (x4 - one),
        x3 * (x1 - x2),
        x1 * x1 - x1 * x2,
        x1 * x2 - x2 * x2,
        x1 * x1 * x1,
        x1 * x1 * x3,
    ])
    return R, I


def toral_andean():
    """<xz-y, xw-y> with the rank-2 grading splitting toral/Andean."""
    R = Ring(["x", "y", "z", "w"], QQ)
    x, y, z, w = (R.var(i) for i in range(4))
    I = Ideal(R, [x * z - y, x * w - y])
    A = check_positive_grading([[1, 1, 0, 0], [0, 1, 1, 1]])
    return R, I, A


def cellular_embedded_toral():
    """Six-variable cellular ideal: Andean component, embedded toral mesoprime."""
    R = Ring(["a", "b", "c", "d", "x", "y"], QQ)
    a, b, c, d, x, y = (R.var(i) for i in range(6))
    tc1 = a * c - b * b
    tc2 = b * d - c * c
    I = Ideal(R, [
        a * d - b * c,
        x * tc1, x * tc2, y * tc1, y * tc2,
        x * x, x * y, y * y,
    ])
    A = check_positive_grading([[1, 1, 1, 1, 1, 1], [0, 1, 2, 3, 4, 5]])
    return R, I, A


def remark_3_3():
    """<x^3-1, y(x-1), y^3>: {x}-cellular but not mesoprimary."""
    R = Ring(["x", "y"], QQ)
    x, y = R.var(0), R.var(1)
    one = R.one()
    I = Ideal(R, [x * x * x - one, y * (x - one), y * y * y])
    return R, I


def mesoprimary_not_split():
    """<x^2y^2-1, xz-yw, z^2, zw, w^2>: mesoprimary but not lattice+artinian."""
    R = Ring(["x", "y", "z", "w"], QQ)
    x, y, z, w = (R.var(i) for i in range(4))
    one = R.one()
    I = Ideal(R, [x * x * y * y - one, x * z - y * w, z * z, z * w, w * w])
    return R, I


def lattice_basis_embedded_toral():
    """Lattice basis ideal with a toral embedded prime <x1,x2,x4>."""
    R = Ring(["x1", "x2", "x3", "x4", "x5"], QQ)
    x1, x2, x3, x4, x5 = (R.var(i) for i in range(5))
    I = Ideal(R, [
        x1 ** 3 if False else x1 * x1 * x1 - x2 * x2 * x3,
        x1 * x1 - x2 * x4 * x4 * x4 * x4 * x4,
        x1 * x1 - x2 * x2 * x5 * x5 * x5,
    ])
    A = check_positive_grading([[5, 5, 5, 1, 0], [-3, -6, 3, 0, 2]])
    return R, I, A


def nonbinomial_toral_part():
    """The six-variable ideal whose toral part is not binomial (stretch)."""
    R = Ring(["x1", "x2", "x3", "x4", "x5", "x6"], QQ)
    x1, x2, x3, x4, x5, x6 = (R.var(i) for i in range(6))

    def pw(v, k):
        out = R.one()
        for _ in range(k):
            out = out * v
        return out

    I = Ideal(R, [
        pw(x3, 4) * x5 - pw(x4, 3) * pw(x6, 3),
        pw(x3, 5) * x6 - pw(x4, 5) * pw(x5, 2),
        x1 * pw(x5, 3) - pw(x2, 4) * x6,
        pw(x1, 4) * pw(x6, 5) - pw(x2, 2) * pw(x5, 2),
    ])
    rows = [[5, 5, -11, -13, 5, 0], [60, 73, -130, -160, 82, 14]]
    return R, I, rows


def graded_corpus():
    """(name, ideal, grading) triples where the graded pipeline applies."""
    return [
        ("squares", *squares()[1:]),
        ("zw_squares", *zw_squares()[1:]),
        ("toral_andean", *toral_andean()[1:]),
        ("cellular_embedded_toral", *cellular_embedded_toral()[1:]),
    ]
