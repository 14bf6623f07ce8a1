import random
from fractions import Fraction

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from barneswall import linalg
from barneswall.qring import SQRT2, qs


def _rand(r, c, rng, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]


def test_hnf_is_unimodular_transform():
    rng = random.Random(1)
    for _ in range(30):
        a = _rand(4, 5, rng)
        h, u = linalg.hnf(a)
        assert linalg.matmul(u, a) == h
        assert abs(linalg.det(u)) == 1


def test_hnf_row_lattice_matches_sympy():
    # same row lattice <=> the HNFs have equal absolute determinant and mutual containment
    rng = random.Random(2)
    for _ in range(20):
        a = _rand(4, 4, rng)
        if sympy.Matrix(a).det() == 0:
            continue
        h, _ = linalg.hnf(a)
        ref = hermite_normal_form(sympy.Matrix(a).T).T  # sympy works with columns
        assert abs(sympy.Matrix(h).det()) == abs(ref.det())
        sol = sympy.Matrix(h).T.solve(ref.T)  # ref rows in terms of h rows
        assert all(x.is_integer for x in sol)


def test_integer_kernel():
    rng = random.Random(3)
    for _ in range(20):
        a = _rand(5, 3, rng)
        ker = linalg.integer_left_kernel(a)
        assert len(ker) == 5 - linalg.rank(a)
        for k in ker:
            assert all(x == 0 for x in linalg.matmul([k], a)[0])


def test_det_and_inverse_over_qsqrt2():
    a = [[SQRT2, qs(0)], [qs(1), qs(1)]]
    assert linalg.det(a) == SQRT2
    inv = linalg.inverse(a)
    assert linalg.matmul(a, inv) == [[1, 0], [0, 1]]


def test_charpoly_matches_sympy():
    rng = random.Random(4)
    t = sympy.Symbol("t")
    for _ in range(10):
        a = _rand(4, 4, rng)
        ours = linalg.charpoly(a)
        ref = sympy.Matrix(a).charpoly(t).all_coeffs()[::-1]
        assert [Fraction(x) for x in ours] == [Fraction(int(x)) for x in ref]
