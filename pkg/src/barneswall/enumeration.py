"""Exact short-vector enumeration, theta prefixes, kissing numbers and designs.

The enumerator is Fincke-Pohst driven by an exact rational LDL^T
decomposition; no floating point is used for pruning (floats only seed the
integer interval bounds, which are then corrected by exact comparisons).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .blattice import (
    BWLattice,
    LatticeError,
    ZLattice,
    balanced_bw,
    irrational_part,
    rational_part,
)
from .qring import QSqrt2, ZSqrt2, format_scalar

__all__ = [
    "VectorSet",
    "ThetaPrefix",
    "short_vectors",
    "minimal_vectors",
    "theta_prefix",
    "short_vectors_bw",
    "minimal_vectors_bw",
    "design_moment_test",
    "sphere_moment",
    "kissing_number",
    "find_isometry",
    "similar",
]


class UnsupportedError(ValueError):
    """Request outside the supported size range."""


@dataclass(frozen=True)
class VectorSet:
    dim: int
    vectors: tuple
    coefficients: tuple = ()
    norm: object = None

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def is_antipodal(self) -> bool:
        s = set(self.vectors)
        return all(tuple(-x for x in v) in s for v in self.vectors)

    def to_json(self, with_vectors=True):
        out = {"dim": self.dim, "count": len(self.vectors)}
        if self.norm is not None:
            out["norm"] = format_scalar(self.norm)
        if with_vectors:
            out["vectors"] = [[format_scalar(x) for x in v] for v in self.vectors]
        return out


@dataclass(frozen=True)
class ThetaPrefix:
    counts: tuple  # ((norm, count), ...)
    bound: object

    def to_json(self):
        return {"norms": [[format_scalar(n), c] for n, c in self.counts]}

    def scaled(self, k) -> ThetaPrefix:
        return ThetaPrefix(tuple((n * k, c) for n, c in self.counts), self.bound * k)


# --- exact LDL^T and Fincke-Pohst --------------------------------------------

def ldl(gram):
    """Return (d, u) with Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = len(gram)
    g = [[Fraction(x) for x in r] for r in gram]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = g[i][i] - sum((d[k] * u[k][i] ** 2 for k in range(i)), Fraction(0))
        if d[i] <= 0:
            raise LatticeError("Gram matrix is not positive definite")
        u[i][i] = Fraction(1)
        for j in range(i + 1, n):
            s = g[i][j] - sum((d[k] * u[k][i] * u[k][j] for k in range(i)), Fraction(0))
            u[i][j] = s / d[i]
    return d, u


def _interval(c: Fraction, t: Fraction):
    """Integers x with (x - c)^2 <= t, as (lo, hi); empty when lo > hi."""
    if t < 0:
        return 1, 0
    r = math.sqrt(float(t))
    cf = float(c)
    hi = math.floor(cf + r)
    lo = math.ceil(cf - r)
    # exact corrections
    while (hi + 1 - c) ** 2 <= t:
        hi += 1
    while hi >= c and (hi - c) ** 2 > t:
        hi -= 1
    while (lo - 1 - c) ** 2 <= t:
        lo -= 1
    while lo <= c and (lo - c) ** 2 > t:
        lo += 1
    return lo, hi


def fincke_pohst(gram, bound, include_zero=False):
    """All integer x with x G x^T <= bound, as sorted list of (x, norm).

    Only one of each pair ±x is searched; negatives are added afterwards.
    """
    n = len(gram)
    bound = Fraction(bound)
    d, u = ldl(gram)
    # common denominators per row so that centers are one integer dot product
    dens = []
    nums = []
    for i in range(n):
        den = 1
        for j in range(i + 1, n):
            den = math.lcm(den, u[i][j].denominator)
        dens.append(den)
        nums.append([int(u[i][j] * den) for j in range(n)])
    x = [0] * n
    found = []

    def rec(i, remaining, top_zero):
        num = 0
        row = nums[i]
        for j in range(i + 1, n):
            if x[j]:
                num += row[j] * x[j]
        c = Fraction(-num, dens[i])
        lo, hi = _interval(c, remaining / d[i])
        if top_zero:
            lo = max(lo, 0)
        di = d[i]
        for xi in range(lo, hi + 1):
            x[i] = xi
            rem = remaining - di * (xi - c) ** 2
            if i == 0:
                if top_zero and xi == 0:
                    continue
                found.append((tuple(x), bound - rem))
            else:
                rec(i - 1, rem, top_zero and xi == 0)
        x[i] = 0

    if n:
        rec(n - 1, bound, True)
    out = []
    for v, nv in found:
        out.append((v, nv))
        out.append((tuple(-a for a in v), nv))
    if include_zero:
        out.append((tuple([0] * n), Fraction(0)))
    out.sort()
    return out


def _combine(coeffs, rows):
    dim = len(rows[0])
    return tuple(
        sum((c * r[k] for c, r in zip(coeffs, rows) if c), start=0 * rows[0][k])
        for k in range(dim)
    )


def short_vectors(lat: ZLattice, bound) -> VectorSet:
    """Nonzero vectors v of ``lat`` with v.v <= bound, lexicographic in coefficients."""
    pairs = fincke_pohst(lat.gram, bound)
    rows = lat.vectors()
    vecs = tuple(_combine(x, rows) for x, _ in pairs)
    return VectorSet(lat.dim, vecs, tuple(x for x, _ in pairs))


def minimal_vectors(lat: ZLattice) -> VectorSet:
    bound = min(lat.gram[i][i] for i in range(lat.rank))
    pairs = fincke_pohst(lat.gram, bound)
    mn = min(nv for _, nv in pairs)
    sel = [x for x, nv in pairs if nv == mn]
    rows = lat.vectors()
    return VectorSet(lat.dim, tuple(_combine(x, rows) for x in sel), tuple(sel), mn)


def theta_prefix(lat: ZLattice, max_norm) -> ThetaPrefix:
    pairs = fincke_pohst(lat.gram, max_norm, include_zero=True)
    cnt = Counter(nv for _, nv in pairs)
    return ThetaPrefix(tuple(sorted(cnt.items())), Fraction(max_norm))


def theta_shells(lat: ZLattice, shells: int) -> ThetaPrefix:
    """Theta prefix covering at least ``shells`` nonzero norms.

    The bound grows geometrically from the smallest diagonal Gram entry until
    enough distinct nonzero norms are present.
    """
    bound = min(lat.gram[i][i] for i in range(lat.rank))
    while True:
        th = theta_prefix(lat, bound)
        if len(th.counts) - 1 >= shells:
            norms = [nv for nv, _ in th.counts][: shells + 1]
            keep = tuple((nv, c) for nv, c in th.counts if nv <= norms[-1])
            return ThetaPrefix(keep, norms[-1])
        bound = bound * Fraction(3, 2)


# --- Z[√2]-lattices via the trace form ----------------------------------------

def _module_forms(lat: BWLattice):
    mb = lat.module_basis()
    k = len(mb)
    a_form = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            s = sum((x * y for x, y in zip(mb[i], mb[j])), start=ZSqrt2(0))
            a_form[i][j] = a_form[j][i] = s
    return a_form


def short_vectors_bw(lat: BWLattice, target) -> VectorSet:
    """All v in ``lat`` with <v, v> exactly equal to ``target`` (a + b√2)."""
    target = QSqrt2.coerce(target)
    if target.a <= 0:
        raise LatticeError("target norm must have positive rational part")
    if not lat.gram.is_totally_positive_definite():
        raise ArithmeticError("Gram matrix is not totally positive definite")
    a_form = _module_forms(lat)
    k = len(a_form)
    trace = [[a_form[i][j].trace() for j in range(k)] for i in range(k)]
    pairs = fincke_pohst(trace, 2 * target.a)
    ta, tb = target.a, target.b
    sel = []
    for z, tv in pairs:
        if tv != 2 * ta:
            continue
        s = 0
        for i in range(k):
            if z[i]:
                row = a_form[i]
                s += z[i] * sum(row[j].b * z[j] for j in range(k) if z[j])
        if s == tb:
            sel.append(z)
    vecs = tuple(lat.from_module(z) for z in sel)
    return VectorSet(lat.dim, vecs, tuple(sel), target)


def minimal_vectors_bw(lat: BWLattice) -> VectorSet:
    """Vectors minimizing the trace form <v,v> + conj(<v,v>).

    Inside a Z[√2]-lattice the real norm alone has infimum 0 (multiply by powers
    of the unit √2 - 1), so "minimal" is taken with respect to the trace form.
    For M_m these are exactly the vectors of norm 2^m.
    """
    a_form = _module_forms(lat)
    k = len(a_form)
    trace = [[a_form[i][j].trace() for j in range(k)] for i in range(k)]
    pairs = fincke_pohst(trace, min(trace[i][i] for i in range(k)))
    mn = min(tv for _, tv in pairs)
    sel = [z for z, tv in pairs if tv == mn]
    norms = set()
    for z in sel:
        norms.add(
            sum(
                (z[i] * z[j] * a_form[i][j] for i in range(k) if z[i] for j in range(k) if z[j]),
                start=ZSqrt2(0),
            )
        )
    norm = norms.pop() if len(norms) == 1 else None
    return VectorSet(lat.dim, tuple(lat.from_module(z) for z in sel), tuple(sel), norm)


# --- spherical designs ---------------------------------------------------------

def sphere_moment(n: int, t: int) -> Fraction:
    """Average of (x.y)^t over the unit sphere in R^n for fixed unit y."""
    if t % 2:
        return Fraction(0)
    num = 1
    for k in range(1, t, 2):
        num *= k
    den = 1
    for k in range(0, t, 2):
        den *= n + k
    return Fraction(num, den)


@dataclass(frozen=True)
class DesignReport:
    t: int
    discrepancies: tuple  # ((s, S_s - c_s), ...)

    @property
    def passed(self) -> bool:
        return all(d == 0 for _, d in self.discrepancies)

    @property
    def strength(self) -> int:
        """Largest t' such that the (antipodal) set is a t'-design, capped by t + 1."""
        best = 1
        for s, d in self.discrepancies:
            if d != 0:
                break
            best = s + 1
        return best


def design_moment_test(vs, t: int) -> DesignReport:
    """Exact even-moment test; an antipodal set passing at t is a (t+1)-design."""
    vectors = list(vs.vectors if isinstance(vs, VectorSet) else vs)
    if not vectors:
        raise ValueError("empty vector set")
    if t < 0 or t % 2:
        raise ValueError("t must be a non-negative even integer")
    n = len(vectors[0])

    def dot(x, y):
        return sum((a * b for a, b in zip(x, y)), start=0 * x[0])

    r2 = dot(vectors[0], vectors[0])
    if any(dot(v, v) != r2 for v in vectors):
        raise ValueError("vectors have mixed norms")
    vset = set(vectors)
    if any(tuple(-a for a in v) not in vset for v in vectors):
        raise ValueError("vector set is not antipodal")
    ip = Counter()
    for i, x in enumerate(vectors):
        for y in vectors:
            ip[dot(x, y)] += 1
    total = len(vectors) ** 2
    out = []
    for s in range(0, t + 1, 2):
        acc = sum((c * val**s for val, c in ip.items()), start=0 * r2)
        moment = acc / (total * r2**s) if not isinstance(acc, QSqrt2) else acc * QSqrt2.coerce(total * r2**s).invert()
        disc = moment - sphere_moment(n, s)
        out.append((s, disc))
    return DesignReport(t, tuple(out))


# --- named lattices -------------------------------------------------------------

def bw_pair(m: int):
    mm = balanced_bw(m)
    return rational_part(mm), irrational_part(mm)


def kissing_number(m: int, which: str = "L") -> int:
    if which in ("L", "Lprime"):
        if not 1 <= m <= 4:
            raise UnsupportedError("kissing numbers of L_m/L'_m are supported for m <= 4")
        lat = bw_pair(m)[0 if which == "L" else 1]
        return len(minimal_vectors(lat))
    if which == "M":
        if not 1 <= m <= 2:
            raise UnsupportedError("kissing numbers of M_m are supported for m <= 2")
        return len(minimal_vectors_bw(balanced_bw(m)))
    raise ValueError(f"unknown lattice {which!r}")


# --- similarity ---------------------------------------------------------------------

def _rational_root(x: Fraction, n: int):
    """Exact positive n-th root of a rational, or None."""
    x = Fraction(x)
    if x <= 0:
        return None
    p = round(x.numerator ** (1.0 / n)) if x.numerator < 2**1000 else None
    q = round(x.denominator ** (1.0 / n)) if x.denominator < 2**1000 else None
    for pp in (p - 1, p, p + 1):
        for qq in (q - 1, q, q + 1):
            if pp > 0 and qq > 0 and Fraction(pp, qq) ** n == x:
                return Fraction(pp, qq)
    return None


def similarity_scale(a: ZLattice, b: ZLattice):
    """λ with det(λ Gram_a) == det(Gram_b), if rational."""
    ratio = b.det() / a.det()
    return _rational_root(ratio, a.rank)


def _short_basis(lat: ZLattice):
    """A basis of ``lat`` made of short vectors (greedy over increasing norm)."""
    n = lat.rank
    target = abs(linalg.det([list(r) for r in lat.gram]))
    bound = min(lat.gram[i][i] for i in range(n))
    maxdiag = max(lat.gram[i][i] for i in range(n))
    while True:
        pairs = fincke_pohst(lat.gram, bound)
        pairs.sort(key=lambda p: (p[1], p[0]))
        chosen = []
        for x, _ in pairs:
            if linalg.rank(chosen + [list(x)]) > len(chosen):
                chosen.append(list(x))
                if len(chosen) == n:
                    break
        if len(chosen) == n:
            gram = linalg.matmul(linalg.matmul(chosen, [list(r) for r in lat.gram]), linalg.transpose(chosen))
            if abs(linalg.det(gram)) == target:
                return [list(r) for r in linalg.matmul(chosen, [list(r) for r in lat.basis])]
        if bound >= maxdiag:
            return [list(r) for r in lat.basis]
        bound = min(bound * 2, maxdiag)


def find_isometry(a: ZLattice, b: ZLattice, scale=1):
    """Backtracking search for an isometry from ``a`` (Gram scaled by ``scale``) onto ``b``.

    Returns the images of a short basis of ``a`` as vectors of ``b``, or None.
    """
    if a.rank != b.rank:
        return None
    basis_a = _short_basis(a)
    ga = [[scale * sum((x * y for x, y in zip(r, c)), Fraction(0)) * (2 if a.sqrt2 else 1) for c in basis_a] for r in basis_a]
    if b.det() != a.det() * Fraction(scale) ** a.rank:
        return None
    norms = sorted({ga[i][i] for i in range(len(ga))})
    pairs = fincke_pohst(b.gram, norms[-1])
    gb = [[Fraction(x) for x in r] for r in b.gram]
    cands = {nv: [] for nv in norms}
    for x, nv in pairs:
        if nv in cands:
            cands[nv].append(x)

    def ip(x, y):
        return sum(x[i] * sum(gb[i][j] * y[j] for j in range(len(y)) if y[j]) for i in range(len(x)) if x[i])

    n = len(ga)
    images = []

    def rec(i):
        if i == n:
            return True
        for x in cands[ga[i][i]]:
            if all(ip(images[j], x) == ga[j][i] for j in range(i)):
                images.append(x)
                if rec(i + 1):
                    return True
                images.pop()
        return False

    if rec(0):
        return [list(linalg.matmul([list(x)], [list(r) for r in b.vectors()])[0]) for x in images]
    return None


@dataclass(frozen=True)
class SimilarityReport:
    scale: object
    theta_a: ThetaPrefix
    theta_b: ThetaPrefix
    theta_agree: bool
    isometry: object  # list of image vectors, None, or "skipped"

    @property
    def similar(self) -> bool:
        """Theta agreement plus, when the search ran, an explicit isometry."""
        return self.theta_agree and self.isometry is not None


def similar(a: ZLattice, b: ZLattice, shells: int = 3, backtrack_max_rank: int = 8) -> SimilarityReport:
    """Scale a onto b's determinant, compare theta prefixes and (rank <= 8) search an isometry."""
    lam = similarity_scale(a, b)
    if lam is None:
        empty = ThetaPrefix((), 0)
        return SimilarityReport(None, empty, empty, False, None)
    th_b = theta_shells(b, shells)
    th_a = theta_prefix(a, th_b.bound / lam).scaled(lam)
    agree = th_a.counts == th_b.counts
    iso = "skipped"
    if agree and a.rank <= backtrack_max_rank:
        iso = find_isometry(a, b, lam)
    return SimilarityReport(lam, th_a, th_b, agree, iso)
