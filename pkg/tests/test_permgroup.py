import random
from math import factorial

from sympy.combinatorics import Permutation, PermutationGroup

from barneswall.permgroup import identity, inv, mul, schreier_sims


def _random_perm(n, rng):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def _cycle(n, pts):
    p = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        p[a] = b
    return tuple(p)


def test_composition_convention():
    p, q = (1, 2, 0), (0, 2, 1)
    assert mul(p, q) == tuple(q[i] for i in p)
    assert mul(p, inv(p)) == identity(3)


def test_symmetric_and_cyclic():
    n = 7
    cyc = tuple((i + 1) % n for i in range(n))
    swap = (1, 0) + tuple(range(2, n))
    assert schreier_sims([cyc, swap]).order == factorial(n)
    assert schreier_sims([cyc]).order == n


def test_trivial_group():
    assert schreier_sims([identity(5)]).order == 1


def test_against_sympy():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(3, 10)
        gens = [_random_perm(n, rng) for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            # small-support generators give more interesting proper subgroups
            gens = [_cycle(n, rng.sample(range(n), rng.randint(2, 3))) for _ in range(2)]
        ref = PermutationGroup([Permutation(list(g)) for g in gens]).order()
        assert schreier_sims(gens, n).order == ref


def test_membership():
    rng = random.Random(3)
    n = 8
    gens = [(1, 0, 2, 3, 4, 5, 6, 7), (0, 1, 3, 2, 4, 5, 6, 7)]
    chain = schreier_sims(gens, n)
    assert chain.order == 4
    assert chain.contains(mul(gens[0], gens[1]))
    assert not chain.contains((0, 1, 2, 3, 5, 4, 6, 7))
    big = schreier_sims([_random_perm(n, rng) for _ in range(3)], n)
    for _ in range(5):
        g = _random_perm(n, rng)
        assert big.contains(g) == PermutationGroup(
            [Permutation(list(s)) for s in big.strong]).contains(Permutation(list(g)))
