import random

import pytest

from barneswall.blattice import (
    G1,
    BWLattice,
    LatticeError,
    MatQ2,
    ZLattice,
    balanced_bw,
    canonical_form,
    contains,
    galois_involution,
    index,
    irrational_part,
    irrational_part_by_coordinates,
    kron_power,
    rational_part,
    rational_part_by_coordinates,
)
from barneswall.qring import SQRT2, qs

r2 = SQRT2


def test_g1_and_gram():
    m1 = balanced_bw(1)
    assert m1.basis == MatQ2([[r2, 0], [1, 1]])
    assert m1.gram == MatQ2([[2, r2], [r2, 2]])


def test_g2_is_tensor_square():
    g2 = balanced_bw(2).basis
    assert g2 == MatQ2([[2, 0, 0, 0], [r2, r2, 0, 0], [r2, 0, r2, 0], [1, 1, 1, 1]])
    assert g2 == kron_power(G1, 2)


def test_m_out_of_range():
    for m in (0, -1, 7):
        with pytest.raises(LatticeError):
            balanced_bw(m)


def test_gram_totally_positive():
    for m in (1, 2, 3):
        assert balanced_bw(m).gram.is_totally_positive_definite()


def test_l1_and_lprime1():
    m1 = balanced_bw(1)
    assert rational_part(m1).basis == ((2, 0), (1, 1))
    assert irrational_part(m1) == ZLattice.from_rows([[1, 0], [0, 1]])


def test_l2_equivalent_forms():
    a = ZLattice.from_rows([[2, 0, 0, 0], [2, 2, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]])
    b = ZLattice.from_rows([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 1, 1, 1]])
    assert a == b == rational_part(balanced_bw(2))


def test_sqrt2_lprime2():
    lp = irrational_part(balanced_bw(2), divide=False)
    assert lp.sqrt2
    other = ZLattice.from_rows([[2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]], sqrt2=True)
    assert lp == other


@pytest.mark.parametrize("m", [1, 2, 3])
def test_phi_is_galois_conjugation(m):
    lat = balanced_bw(m)
    phi = galois_involution(m)
    rng = random.Random(m)
    for _ in range(10):
        z = [rng.randint(-3, 3) for _ in range(phi.size)]
        v = lat.from_module(z)
        assert lat.from_module(phi.apply(z)) == tuple(x.conjugate() for x in v)
        assert phi.apply(phi.apply(z)) == tuple(z)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_parts_by_two_routes(m):
    lat = balanced_bw(m)
    assert rational_part(lat) == rational_part_by_coordinates(lat)
    assert irrational_part(lat) == irrational_part_by_coordinates(lat)


@pytest.mark.parametrize("m,idx", [(1, 2), (2, 4), (3, 16)])
def test_index(m, idx):
    lat = balanced_bw(m)
    l, lp = rational_part(lat), irrational_part(lat)
    assert contains(lp, l)
    assert index(l, lp) == idx


def test_membership():
    lat = balanced_bw(2)
    assert lat.contains((qs(2), qs(0), qs(0), qs(0)))
    assert not lat.contains((qs(1), qs(0), qs(0), qs(0)))
    assert lat.contains(tuple(x * qs(1, 1) for x in lat.basis.rows[1]))


def test_canonical_form_basis_independent():
    rows = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 1, 1, 1]]
    shuffled = [[3, 1, 1, 1], rows[1], rows[2], [1, 1, 1, 1]]  # first row replaced by r0 + r3
    assert canonical_form(ZLattice.from_rows(rows, canonical=False)) == ZLattice.from_rows(shuffled)


def test_singular_basis():
    with pytest.raises(LatticeError):
        BWLattice.from_basis(MatQ2([[1, 1], [1, 1]]))


def test_json_shapes():
    js = balanced_bw(1).to_json()
    assert js["basis"] == [["√2", "0"], ["1", "1"]]
    assert js["gram"] == [["2", "√2"], ["√2", "2"]]
    assert rational_part(balanced_bw(1)).to_json(1)["basis"] == [["2", "0"], ["1", "1"]]


def test_gram_of_kronecker_is_kronecker_of_grams():
    from barneswall.blattice import kronecker

    a = MatQ2([[r2, 1], [0, 1]])
    b = MatQ2([[1, 2], [r2, 3]])
    k = kronecker(a, b)
    assert k @ k.T == kronecker(a @ a.T, b @ b.T)
    assert balanced_bw(2).gram == kronecker(balanced_bw(1).gram, balanced_bw(1).gram)
    assert balanced_bw(1).gram.det() == 2


def test_parts_split_twice_the_lattice():
    # 2v = (v + phi v) + (v - phi v), and the two halves land in L and sqrt2 L'
    lat = balanced_bw(2)
    l = rational_part(lat)
    lp = irrational_part(lat)

    def member(zl, v):
        return ZLattice.from_rows(list(zl.basis) + [v]) == zl

    for w in lat.module_basis():
        assert member(l, [x.a * 2 for x in w])  # v + conj(v)
        assert member(lp, [x.b * 2 for x in w])  # (v - conj(v)) / sqrt2
