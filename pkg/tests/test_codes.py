import itertools
import json
import random
from math import factorial

import pytest

from barneswall.codes import (
    BinaryCode,
    ClassificationError,
    automorphism_group_order,
    canonical_form,
    classify_self_dual,
    direct_sum,
    equivalent,
    hamming8,
    i2,
    mass_total,
    mass_total_exhaustive,
)


def _shuffle(code, seed):
    perm = list(range(code.n))
    random.Random(seed).shuffle(perm)
    return code.permuted(perm)


def test_hamming8_properties():
    h = hamming8()
    assert h.weight_distribution() == [1, 0, 0, 0, 14, 0, 0, 0, 1]
    assert h.is_self_dual()
    assert h.is_doubly_even()
    assert not h.weight2_generated()


def test_i2_power():
    c = direct_sum(*[i2()] * 4)
    assert c.is_self_dual()
    assert c.weight2_generated()
    assert not c.is_doubly_even()


def test_dual_of_dual():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(3, 10)
        c = BinaryCode.from_words([rng.getrandbits(n) for _ in range(rng.randint(1, n))], n)
        d = c.dual()
        assert c.k + d.k == n
        assert d.dual() == c
        assert all(bin(a & b).count("1") % 2 == 0 for a in c.rows for b in d.rows)


def test_rows_parse_and_json():
    c = BinaryCode.from_rows(["1100", "0011"])
    assert c.n == 4 and c.k == 2
    assert BinaryCode.from_json(json.loads(json.dumps(c.to_json()))) == c
    with pytest.raises(ValueError):
        BinaryCode.from_rows(["110", "01"])
    with pytest.raises(ValueError):
        BinaryCode.from_rows(["1a0"])


def test_load_text(tmp_path):
    p = tmp_path / "h8.txt"
    p.write_text("# Hamming code\n11110000\n00111100\n00001111\n01010101\n")
    assert BinaryCode.load(p) == hamming8()


def _aut_bruteforce(code):
    words = set(code.codewords())
    count = 0
    for perm in itertools.permutations(range(code.n)):
        if all(code.permuted(perm).contains(w) for w in code.rows):
            count += 1
    assert words
    return count


def test_aut_h8_bruteforce():
    assert _aut_bruteforce(hamming8()) == automorphism_group_order(hamming8()) == 1344


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_aut_i2_power(k):
    c = direct_sum(*[i2()] * k)
    assert automorphism_group_order(c) == 2**k * factorial(k)


def test_equivalence_under_permutation():
    h = hamming8()
    for seed in range(5):
        g = _shuffle(h, seed)
        assert equivalent(h, g)
        assert canonical_form(h)[0] == canonical_form(g)[0]
    assert not equivalent(h, direct_sum(*[i2()] * 4))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_mass_formula_against_exhaustive_count(n):
    assert mass_total(n) == mass_total_exhaustive(n)


@pytest.mark.parametrize("n,classes", [(2, 1), (4, 1), (6, 1), (8, 2), (10, 2)])
def test_classification(n, classes):
    cls = classify_self_dual(n)
    assert len(cls) == classes
    assert cls.certified
    for c in cls.representatives:
        assert c.is_self_dual()


def test_classification_is_idempotent():
    cls = classify_self_dual(10)
    for i, c in enumerate(cls.representatives):
        assert canonical_form(_shuffle(c, i))[0] == canonical_form(c)[0]
    forms = {canonical_form(c)[0] for c in cls.representatives}
    assert len(forms) == len(cls)


def test_length_8_classes():
    cls = classify_self_dual(8)
    flags = sorted(c.weight2_generated() for c in cls.representatives)
    assert flags == [False, True]
    for c in cls.representatives:
        target = direct_sum(*[i2()] * 4) if c.weight2_generated() else hamming8()
        assert equivalent(c, target)
    assert sorted(cls.aut_orders) == [384, 1344]


def test_classification_rejects_bad_length():
    with pytest.raises(ValueError):
        classify_self_dual(7)
    with pytest.raises(ValueError):
        classify_self_dual(14)


def test_certificate_failure(monkeypatch):
    import barneswall.codes as codes

    monkeypatch.setattr(codes, "mass_total", lambda n: 1)
    with pytest.raises(ClassificationError):
        codes.classify_self_dual(6)


def test_isomorphism_search_agrees_with_canonical_form():
    from barneswall.codes import _isomorphic, _Shape

    reps = classify_self_dual(10).representatives
    pool = [_shuffle(c, s) for c in reps for s in range(3)]
    for a in pool:
        for b in pool:
            same = canonical_form(a)[0] == canonical_form(b)[0]
            assert _isomorphic(_Shape(a), _Shape(b)) == same


def test_full_space_not_self_dual():
    assert not BinaryCode.from_rows(["10", "01"]).is_self_dual()
    assert i2().is_self_dual() and not i2().is_doubly_even()


def test_mass_total_values():
    assert [mass_total(n) for n in (2, 4, 8)] == [1, 3, 135]
    with pytest.raises(ValueError):
        mass_total(5)


def test_representatives_contain_all_ones():
    for n in (2, 4, 6, 8, 10):
        for c in classify_self_dual(n).representatives:
            assert c.contains((1 << n) - 1)


def test_self_duality_preserved_by_permutation():
    rng = random.Random(9)
    for c in classify_self_dual(10).representatives:
        for _ in range(5):
            perm = list(range(10))
            rng.shuffle(perm)
            assert c.permuted(perm).is_self_dual()
