"""Binary linear codes and the classification of self-dual codes.

A codeword of length n is an int whose bit i is coordinate i (character i
of the 0/1 string form).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial, prod
from pathlib import Path

__all__ = [
    "BinaryCode",
    "CodeClassification",
    "ClassificationError",
    "i2",
    "hamming8",
    "direct_sum",
    "mass_total",
    "mass_total_exhaustive",
    "classify_self_dual",
    "canonical_form",
    "automorphism_group_order",
    "equivalent",
]


class ClassificationError(RuntimeError):
    """A classification failed its mass-formula certificate."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _rref(rows, n):
    """Reduced row echelon basis over GF(2); pivot = lowest set bit."""
    basis = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    basis.sort(key=lambda b: b & -b)
    return tuple(basis)


def _span(rows):
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    return words


@dataclass(frozen=True)
class BinaryCode:
    n: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows, n=None) -> BinaryCode:
        ints = []
        for r in rows:
            if isinstance(r, str):
                if n is None:
                    n = len(r)
                if len(r) != n or set(r) - {"0", "1"}:
                    raise ValueError(f"bad codeword string {r!r}")
                ints.append(sum(1 << i for i, ch in enumerate(r) if ch == "1"))
            else:
                ints.append(int(r))
        if n is None:
            raise ValueError("length unknown")
        if any(x >> n for x in ints):
            raise ValueError("codeword longer than n")
        return cls(n, _rref(ints, n))

    @classmethod
    def from_words(cls, words, n) -> BinaryCode:
        return cls(n, _rref(words, n))

    @property
    def k(self) -> int:
        return len(self.rows)

    def codewords(self):
        return _span(self.rows)

    def word_str(self, w: int) -> str:
        return "".join("1" if w >> i & 1 else "0" for i in range(self.n))

    def row_strings(self):
        return [self.word_str(r) for r in self.rows]

    def weight_distribution(self):
        dist = [0] * (self.n + 1)
        for w in self.codewords():
            dist[_popcount(w)] += 1
        return dist

    def dual(self) -> BinaryCode:
        full = (1 << self.n) - 1
        pivots = [(r & -r).bit_length() - 1 for r in self.rows]
        free = [j for j in range(self.n) if j not in pivots]
        out = []
        for j in free:
            v = 1 << j
            for r, p in zip(self.rows, pivots):
                if r >> j & 1:
                    v |= 1 << p
            out.append(v & full)
        return BinaryCode.from_words(out, self.n)

    def contains(self, w: int) -> bool:
        for r in self.rows:
            if w & (r & -r):
                w ^= r
        return w == 0

    def is_self_orthogonal(self) -> bool:
        return all(_popcount(a & b) % 2 == 0 for a in self.rows for b in self.rows)

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    def is_doubly_even(self) -> bool:
        # weights of a self-orthogonal code with doubly-even generators are all 0 mod 4
        if not self.is_self_orthogonal():
            return False
        return all(_popcount(r) % 4 == 0 for r in self.rows)

    def weight2_generated(self) -> bool:
        w2 = [w for w in self.codewords() if _popcount(w) == 2]
        return len(_rref(w2, self.n)) == self.k

    def permuted(self, perm) -> BinaryCode:
        """Coordinate i moves to position perm[i]."""
        out = []
        for r in self.rows:
            v = 0
            for i in range(self.n):
                if r >> i & 1:
                    v |= 1 << perm[i]
            out.append(v)
        return BinaryCode.from_words(out, self.n)

    def to_json(self):
        return {"n": self.n, "k": self.k, "rows": self.row_strings()}

    @classmethod
    def from_json(cls, data) -> BinaryCode:
        return cls.from_rows(data["rows"], data["n"])

    @classmethod
    def load(cls, path) -> BinaryCode:
        """Read a code from JSON or plain text (one 0/1 row per line)."""
        text = Path(path).read_text()
        stripped = text.strip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(stripped))
        rows = [ln.strip() for ln in stripped.splitlines() if ln.strip() and not ln.startswith("#")]
        return cls.from_rows(rows)

    def __str__(self):
        return "\n".join(self.row_strings())


def i2() -> BinaryCode:
    return BinaryCode.from_rows(["11"])


def hamming8() -> BinaryCode:
    """The extended Hamming [8,4,4] code."""
    return BinaryCode.from_rows(["11110000", "00111100", "00001111", "01010101"])


def direct_sum(*codes) -> BinaryCode:
    rows = []
    shift = 0
    for c in codes:
        rows += [r << shift for r in c.rows]
        shift += c.n
    return BinaryCode.from_words(rows, shift)


# --- canonical form ---------------------------------------------------------------

def _column_profiles(n, words):
    """Per-coordinate invariant: weight distribution of the words through it."""
    profiles = []
    for j in range(n):
        dist = [0] * (n + 1)
        for w in words:
            if w >> j & 1:
                dist[_popcount(w)] += 1
        profiles.append(tuple(dist))
    return profiles


def canonical_form(code: BinaryCode):
    """Return (certificate, order) for permutation equivalence.

    Coordinates are first split into cells by a permutation-invariant profile;
    cells are filled in profile order and, within that constraint, the
    ordering minimizing the sorted word list is chosen.  ``order[p]`` is the
    original coordinate placed at position p.  Partial states with the same
    chosen set and the same per-word prefixes have identical futures and are
    merged; coordinates with identical columns are interchangeable, so only one
    per twin class is tried.
    """
    n = code.n
    words = code.codewords()
    profiles = _column_profiles(n, words)
    cell_seq = sorted(profiles)
    column = [tuple(b >> j & 1 for b in code.rows) for j in range(n)]
    twin_of = {}
    first_twin = [twin_of.setdefault(c, j) for j, c in enumerate(column)]
    frontier = {(frozenset(), tuple([0] * len(words))): ()}
    for depth in range(n):
        want = cell_seq[depth]
        best = None
        nxt = {}
        for (chosen, prefixes), order in frontier.items():
            tried = set()
            for r in range(n):
                if r in chosen or profiles[r] != want or first_twin[r] in tried:
                    continue
                tried.add(first_twin[r])
                new = tuple((p << 1) | (w >> r & 1) for p, w in zip(prefixes, words))
                cert = sorted(new)
                if best is None or cert < best:
                    best = cert
                    nxt = {}
                if cert == best:
                    key = (chosen | {r}, new)
                    if key not in nxt:
                        nxt[key] = order + (r,)
        frontier = nxt
    (_, prefixes), order = min(frontier.items(), key=lambda kv: kv[1])
    return (tuple(cell_seq), tuple(sorted(prefixes))), order


def canonical_code(code: BinaryCode) -> BinaryCode:
    _, order = canonical_form(code)
    perm = [0] * code.n
    for pos, orig in enumerate(order):
        perm[orig] = pos
    return code.permuted(perm)


def equivalent(a: BinaryCode, b: BinaryCode) -> bool:
    return a.n == b.n and a.k == b.k and canonical_form(a)[0] == canonical_form(b)[0]


# --- isomorphisms and automorphisms ----------------------------------------------------

class _Shape:
    """Words, per-coordinate profiles and a cheap permutation invariant of a code."""

    def __init__(self, code: BinaryCode):
        self.n = code.n
        self.words = code.codewords()
        self.profiles = _column_profiles(code.n, self.words)
        self.invariant = (code.n, code.k, tuple(sorted(self.profiles)))


def _search(a: _Shape, b: _Shape, fixed) -> bool:
    """Is there a coordinate bijection a -> b, extending ``fixed``, carrying code a onto b?"""
    n = a.n
    src = [s for s, _ in fixed]
    dst = [d for _, d in fixed]
    if any(a.profiles[s] != b.profiles[d] for s, d in fixed):
        return False
    used = set(dst)
    fixed_src = set(src)
    free_src = [i for i in range(n) if i not in fixed_src]

    def project(words, coords):
        return {tuple(w >> c & 1 for c in coords) for w in words}

    if project(a.words, src) != project(b.words, dst):
        return False

    def rec(k):
        if k == len(free_src):
            return True
        s = free_src[k]
        for d in range(n):
            if d in used or b.profiles[d] != a.profiles[s]:
                continue
            src.append(s)
            dst.append(d)
            if project(a.words, src) == project(b.words, dst):
                used.add(d)
                if rec(k + 1):
                    return True
                used.discard(d)
            src.pop()
            dst.pop()
        return False

    return rec(0)


def _isomorphic(a: _Shape, b: _Shape) -> bool:
    return a.invariant == b.invariant and _search(a, b, [])


def automorphism_group_order(code: BinaryCode) -> int:
    """|Aut(C)| as a product of orbit lengths along the base 0, 1, ..., n-1."""
    shape = _Shape(code)
    n = code.n
    order = 1
    fixed = []
    for i in range(n):
        orbit = sum(1 for y in range(i, n) if _search(shape, shape, fixed + [(i, y)]))
        order *= orbit
        fixed.append((i, i))
    return order


# --- mass formula -------------------------------------------------------------------------

def mass_total(n: int) -> int:
    """Number of distinct self-dual codes of length n: prod_{i=1}^{n/2-1} (2^i + 1)."""
    if n <= 0 or n % 2:
        raise ValueError("self-dual codes need even positive length")
    return prod(2**i + 1 for i in range(1, n // 2))


def mass_total_exhaustive(n: int) -> int:
    """Count self-dual codes of length n by exhaustive subspace search (n <= 10)."""
    if n <= 0 or n % 2:
        raise ValueError("self-dual codes need even positive length")
    if n > 10:
        raise ValueError("exhaustive count is limited to n <= 10")
    layer = {frozenset([0])}
    for _ in range(n // 2):
        nxt = set()
        for code in layer:
            rows = _rref(list(code), n)
            bc = BinaryCode(n, rows)
            dual_words = bc.dual().codewords()
            for v in dual_words:
                if v in code or _popcount(v) % 2:
                    continue
                nxt.add(frozenset(code | {w ^ v for w in code}))
        layer = nxt
    return len(layer)


# --- classification --------------------------------------------------------------------

@dataclass(frozen=True)
class CodeClassification:
    n: int
    representatives: tuple
    aut_orders: tuple
    mass: object  # Fraction-free integer sum of n!/|Aut|
    expected_mass: int

    @property
    def certified(self) -> bool:
        return self.mass == self.expected_mass

    def __len__(self):
        return len(self.representatives)

    def to_json(self):
        return {
            "n": self.n,
            "classes": len(self.representatives),
            "representatives": [
                {
                    "rows": c.row_strings(),
                    "aut_order": str(a),
                    "weight_distribution": c.weight_distribution(),
                    "weight2_generated": c.weight2_generated(),
                    "doubly_even": c.is_doubly_even(),
                }
                for c, a in zip(self.representatives, self.aut_orders)
            ],
            "mass": str(self.mass),
            "expected_mass": str(self.expected_mass),
            "certified": self.certified,
        }


def _coset_reps(code: BinaryCode, dual: BinaryCode):
    """Vectors of dual reduced modulo code (zero on the pivots of code)."""
    pivots = 0
    for r in code.rows:
        pivots |= r & -r
    reps = []
    for v in dual.codewords():
        if v & pivots == 0 and v != 0:
            reps.append(v)
    return reps


def classify_self_dual(n: int, allow_large: bool = False) -> CodeClassification:
    """Permutation-equivalence classes of self-dual codes of length n.

    Self-orthogonal codes containing the all-ones word are extended one
    dimension at a time, keeping one canonical representative per class.
    """
    if n <= 0 or n % 2:
        raise ValueError("self-dual codes need even positive length")
    if n > 12 and not allow_large:
        raise ValueError("lengths above 12 need allow_large=True")
    ones = (1 << n) - 1
    layer = [BinaryCode.from_words([ones], n)]
    for _ in range(1, n // 2):
        buckets = {}
        seen = set()
        for code in layer:
            dual = code.dual()
            for v in _coset_reps(code, dual):
                ext = BinaryCode.from_words(list(code.rows) + [v], n)
                if ext.rows in seen:
                    continue
                seen.add(ext.rows)
                shape = _Shape(ext)
                bucket = buckets.setdefault(shape.invariant, [])
                if not any(_isomorphic(shape, other) for other, _ in bucket):
                    bucket.append((shape, ext))
        layer = [code for bucket in buckets.values() for _, code in bucket]
    reps = sorted((canonical_code(c) for c in layer), key=lambda c: canonical_form(c)[0])
    auts = [automorphism_group_order(c) for c in reps]
    fact = factorial(n)
    mass = sum(fact // a for a in auts)
    result = CodeClassification(n, tuple(reps), tuple(auts), mass, mass_total(n))
    if not result.certified:
        raise ClassificationError(
            f"mass {mass} != {result.expected_mass} for n={n}: classification incomplete"
        )
    return result
