"""Polynomial invariants of the Clifford groups.

Polynomials live in 2^m variables ``x_v`` indexed by binary m-tuples ``v``;
the tuple ``(v_1, ..., v_m)`` is the variable with index ``sum v_j 2^(m-j)``.
Coefficients are exact elements of Q(√2).

Group elements act by the linear substitution ``x -> g^T x``, i.e.
``act(g, p)(x) = p(g^T x)``.  With this convention
``act(g @ h, p) == act(g, act(h, p))``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, lcm

from . import linalg
from .blattice import MatQ2
from .cgroup import (
    CapacityError,
    FiniteMatrixGroup,
    OrthogonalElement,
    clifford_group,
    standard_generators,
)
from .codes import BinaryCode, classify_self_dual, hamming8
from .qring import ONE, ZERO, QSqrt2, format_scalar

__all__ = [
    "MultiPoly",
    "StructuralError",
    "act",
    "cwe_tensor",
    "is_invariant",
    "reynolds",
    "invariant_basis",
    "invariant_dimension",
    "laplacian",
    "quadratic_form",
    "harmonic_invariant_dimension",
    "harmonic_invariant_degree8",
    "runge_span_check",
]

DEFAULT_BUDGET = 10**7


class StructuralError(ArithmeticError):
    """A computed object fails a structural property it must have."""


def _nz(c) -> bool:
    return bool(c.a or c.b)


class MultiPoly:
    """Polynomial in 2^m variables with Q(√2) coefficients; immutable."""

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms=None):
        self.m = m
        nv = 2**m
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} has wrong length for m={m}")
            c = QSqrt2.coerce(c)
            if _nz(c):
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, m, terms):
        p = cls.__new__(cls)
        p.m = m
        p.terms = terms
        p._hash = None
        return p

    @property
    def nvars(self) -> int:
        return 2**self.m

    @classmethod
    def constant(cls, m, c) -> MultiPoly:
        return cls(m, {(0,) * 2**m: c})

    @classmethod
    def variable(cls, m, i) -> MultiPoly:
        e = [0] * 2**m
        e[i] = 1
        return cls(m, {tuple(e): ONE})

    @classmethod
    def monomial(cls, m, exp, c=1) -> MultiPoly:
        return cls(m, {tuple(exp): c})

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({sum(e) for e in self.terms})

    def is_homogeneous(self, d=None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (d is None or ds[0] == d)

    def homogeneous_part(self, d) -> MultiPoly:
        return MultiPoly._raw(self.m, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), ZERO)

    def ordered_terms(self):
        """Terms in graded lexicographic order (highest degree first, then x_0 first)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def is_rational(self) -> bool:
        return all(c.b == 0 for c in self.terms.values())

    # arithmetic

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.m, other)
        if other.m != self.m:
            raise ValueError("polynomials in different numbers of variables")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if _nz(s):
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> MultiPoly:
        c = QSqrt2.coerce(c)
        if not _nz(c):
            return MultiPoly._raw(self.m, {})
        return MultiPoly._raw(self.m, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(self.m, {e: c for e, c in out.items() if _nz(c)})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.m, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, QSqrt2)):
                return self == MultiPoly.constant(self.m, other)
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, i) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.m, out)

    # text and JSON

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.ordered_terms():
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
            )
            cs = format_scalar(c)
            if c.b != 0 and c.a != 0:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MultiPoly(m={self.m}, {self})"

    def to_json(self):
        return {
            "m": self.m,
            "terms": [{"exp": list(e), "coef": format_scalar(c)} for e, c in self.ordered_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> MultiPoly:
        return cls(obj["m"], {tuple(t["exp"]): QSqrt2.coerce(t["coef"]) for t in obj["terms"]})


def quadratic_form(m: int) -> MultiPoly:
    """q_m = sum of the squares of all 2^m variables."""
    n = 2**m
    return MultiPoly(m, {tuple(2 if j == i else 0 for j in range(n)): 1 for i in range(n)})


def laplacian(p: MultiPoly) -> MultiPoly:
    out = MultiPoly._raw(p.m, {})
    for i in range(p.nvars):
        out = out + p.derivative(i).derivative(i)
    return out


# --- group action ----------------------------------------------------------------------

def _matrix(g) -> MatQ2:
    if isinstance(g, OrthogonalElement):
        return g.matrix
    return g if isinstance(g, MatQ2) else MatQ2(g)


def _signed_permutation(g: MatQ2):
    """(perm, signs) if g is a signed permutation matrix, else None; g[perm[i]][i] = signs[i]."""
    perm = []
    signs = []
    for col in range(g.shape[1]):
        nz = [(r, g.rows[r][col]) for r in range(g.shape[0]) if _nz(g.rows[r][col])]
        if len(nz) != 1 or nz[0][1] not in (ONE, -ONE):
            return None
        perm.append(nz[0][0])
        signs.append(1 if nz[0][1] == ONE else -1)
    return perm, signs


def _act_monomial_signed(sp, e, c):
    # x_i -> sum_j g[j][i] x_j = s_i x_{perm[i]}
    perm, signs = sp
    f = [0] * len(e)
    sgn = 1
    for i, k in enumerate(e):
        if k:
            f[perm[i]] = k
            if signs[i] < 0 and k & 1:
                sgn = -sgn
    return tuple(f), (c if sgn > 0 else -c)


def act(g, p: MultiPoly) -> MultiPoly:
    """The substitution ``x -> g^T x`` applied to p."""
    g = _matrix(g)
    n = p.nvars
    if g.shape != (n, n):
        raise ValueError(f"matrix of shape {g.shape} does not act on {n} variables")
    sp = _signed_permutation(g)
    if sp is not None:
        out = {}
        for e, c in p.terms.items():
            f, c2 = _act_monomial_signed(sp, e, c)
            out[f] = c2
        return MultiPoly._raw(p.m, out)
    return _act_dense(g, p)


def _denominator(values) -> int:
    d = 1
    for c in values:
        for x in (c.a, c.b):
            d = lcm(d, Fraction(x).denominator)
    return d


def _imul(p: dict, q: dict) -> dict:
    """Product of polynomials with Z[√2] coefficients stored as int pairs (a, b)."""
    out = {}
    for e1, (a1, b1) in p.items():
        for e2, (a2, b2) in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            a = a1 * a2 + 2 * b1 * b2
            b = a1 * b2 + a2 * b1
            s = out.get(e)
            out[e] = (a, b) if s is None else (s[0] + a, s[1] + b)
    return out


def _act_dense(g: MatQ2, p: MultiPoly) -> MultiPoly:
    n = p.nvars
    # scale g and p to integral coefficients; undo at the end
    dg = _denominator(x for row in g.rows for x in row)
    dp = _denominator(p.terms.values())
    zero = (0,) * n
    forms = []
    for i in range(n):
        form = {}
        for j in range(n):
            x = g.rows[j][i]
            if _nz(x):
                form[tuple(1 if k == j else 0 for k in range(n))] = (int(x.a * dg), int(x.b * dg))
        forms.append(form)
    powers = [[{zero: (1, 0)}] for _ in range(n)]

    def power(i, k):
        lst = powers[i]
        while len(lst) <= k:
            lst.append(_imul(lst[-1], forms[i]))
        return lst[k]

    # share partial products between terms with a common exponent prefix
    partial = {(): {zero: (1, 0)}}

    def prefix_product(e):
        if e in partial:
            return partial[e]
        val = _imul(prefix_product(e[:-1]), power(len(e) - 1, e[-1]))
        partial[e] = val
        return val

    acc = {}
    for e, c in p.terms.items():
        ca, cb = int(c.a * dp), int(c.b * dp)
        for f, (xa, xb) in prefix_product(e).items():
            a = ca * xa + 2 * cb * xb
            b = ca * xb + cb * xa
            s = acc.get(f)
            acc[f] = (a, b) if s is None else (s[0] + a, s[1] + b)
    out = {}
    for f, (a, b) in acc.items():
        if a or b:
            den = dp * dg ** sum(f)
            out[f] = QSqrt2(Fraction(a, den), Fraction(b, den))
    return MultiPoly._raw(p.m, out)


def is_invariant(p: MultiPoly, group) -> bool:
    """act(g, p) == p for every generator (or element) g."""
    gens = group.generators if isinstance(group, FiniteMatrixGroup) else group
    return all(act(g, p) == p for g in gens)


# --- complete weight enumerators -----------------------------------------------------

def cwe_tensor(code: BinaryCode, m: int) -> MultiPoly:
    """Complete weight enumerator of C ⊗ GF(2^m) in the m-tuple model."""
    if m < 1:
        raise ValueError("m must be positive")
    words = code.codewords()
    n = code.n
    counts = Counter()
    for tup in product(words, repeat=m):
        exp = [0] * 2**m
        for i in range(n):
            idx = 0
            for w in tup:
                idx = 2 * idx + (w >> i & 1)
            exp[idx] += 1
        counts[tuple(exp)] += 1
    return MultiPoly(m, dict(counts))


# --- Reynolds projection -------------------------------------------------------------

def _elements(group: FiniteMatrixGroup):
    if group.elements is None:
        raise CapacityError("Reynolds projection needs the full element list (m <= 2)")
    return group.elements


def reynolds_bruteforce(group: FiniteMatrixGroup, p: MultiPoly) -> MultiPoly:
    """(1/|G|) sum_g act(g, p), one element at a time."""
    els = _elements(group)
    total = MultiPoly._raw(p.m, {})
    for g in els:
        total = total + act(g, p)
    return total.scale(Fraction(1, len(els)))


@dataclass
class _CosetData:
    monomial: list  # signed-permutation data of the subgroup H
    reps: list  # left coset representatives t with G = union t H


_COSETS: dict = {}


def _coset_data(group: FiniteMatrixGroup) -> _CosetData:
    key = id(group)
    hit = _COSETS.get(key)
    if hit is not None and hit[0] is group:
        return hit[1]
    els = _elements(group)
    sub = [g for g in els if _signed_permutation(g) is not None]
    sub_set = set(sub)
    reps = []
    covered = set()
    for g in els:
        if g in covered:
            continue
        reps.append(g)
        covered.update(g @ h for h in sub)
    if len(reps) * len(sub) != len(els):
        raise StructuralError("signed permutation elements do not form a subgroup")
    assert len(sub_set) == len(sub)
    data = _CosetData([_signed_permutation(h) for h in sub], reps)
    _COSETS[key] = (group, data)
    return data


def _reynolds_sub(data: _CosetData, p: MultiPoly) -> MultiPoly:
    acc = {}
    for sp in data.monomial:
        for e, c in p.terms.items():
            f, c2 = _act_monomial_signed(sp, e, c)
            s = acc.get(f)
            acc[f] = c2 if s is None else s + c2
    k = Fraction(1, len(data.monomial))
    return MultiPoly._raw(p.m, {f: x * k for f, x in acc.items() if _nz(x)})


def reynolds(group: FiniteMatrixGroup, p: MultiPoly) -> MultiPoly:
    """Average of p over the group.

    Uses G = union of cosets t H, H the signed permutation matrices in G:
    the H-average is a cheap monomial computation, and only one dense
    substitution per coset representative is needed.
    """
    data = _coset_data(group)
    ph = _reynolds_sub(data, p)
    if ph.is_zero():
        return ph
    total = MultiPoly._raw(p.m, {})
    for t in data.reps:
        total = total + act(t, ph)
    return total.scale(Fraction(1, len(data.reps)))


def _monomials(nvars, d):
    if nvars == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _monomials(nvars - 1, d - k):
            yield (k,) + rest


def _basis_from(polys):
    """A linearly independent subset of ``polys`` (same span), by exact elimination."""
    keys = sorted({e for p in polys for e in p.terms}, reverse=True)
    if not keys:
        return []
    col = {e: j for j, e in enumerate(keys)}
    chosen = []
    rows = []
    for p in polys:
        row = [ZERO] * len(keys)
        for e, c in p.terms.items():
            row[col[e]] = c
        if linalg.rank(rows + [row]) > len(rows):
            rows.append(row)
            chosen.append(p)
    return chosen


def _rank(polys) -> int:
    keys = sorted({e for p in polys for e in p.terms})
    if not keys:
        return 0
    col = {e: j for j, e in enumerate(keys)}
    rows = []
    for p in polys:
        row = [ZERO] * len(keys)
        for e, c in p.terms.items():
            row[col[e]] = c
        rows.append(row)
    return linalg.rank(rows)


def invariant_basis(group: FiniteMatrixGroup, d: int, budget=DEFAULT_BUDGET):
    """Basis of the degree-d invariants: Reynolds images of monomials, reduced to a basis."""
    m = group.m
    nv = 2**m
    count = comb(d + nv - 1, nv - 1)
    if count * group.order > budget:
        raise CapacityError(f"{count} monomials x {group.order} elements exceeds budget {budget}")
    data = _coset_data(group)
    seen = set()
    images = []
    for e in _monomials(nv, d):
        ph = _reynolds_sub(data, MultiPoly.monomial(m, e))
        if ph.is_zero():
            continue
        # H-averages of monomials in one H-orbit are equal; skip repeats
        key = frozenset(ph.terms)
        if key in seen:
            continue
        seen.add(key)
        images.append(ph)
    basis = []
    for ph in _basis_from(images):
        total = MultiPoly._raw(m, {})
        for t in data.reps:
            total = total + act(t, ph)
        basis.append(total.scale(Fraction(1, len(data.reps))))
    return _basis_from([b for b in basis if not b.is_zero()])


def invariant_dimension(group: FiniteMatrixGroup, d: int, budget=DEFAULT_BUDGET) -> int:
    return len(invariant_basis(group, d, budget))


def harmonic_invariant_dimension(group: FiniteMatrixGroup, d: int, budget=DEFAULT_BUDGET) -> int:
    """dim of {p invariant of degree d : laplacian(p) = 0}."""
    basis = invariant_basis(group, d, budget)
    return len(basis) - _rank([laplacian(b) for b in basis])


def _solve_multiple(target: MultiPoly, base: MultiPoly):
    """The unique c with target == c * base, or None."""
    if base.is_zero():
        return None
    e, b = next(iter(base.terms.items()))
    c = target.coefficient(e) / b
    return c if target == base.scale(c) else None


def harmonic_invariant_degree8(m: int, group: FiniteMatrixGroup | None = None):
    """cwe_tensor(H_8, m) - c q_m^4 for the unique c making it harmonic.

    Returns (polynomial, c).
    """
    if not 1 <= m <= 2:
        raise CapacityError("the harmonic invariant check is limited to m <= 2")
    w = cwe_tensor(hamming8(), m)
    q4 = quadratic_form(m) ** 4
    dq = laplacian(q4)
    c = _solve_multiple(laplacian(w), dq)
    if c is None:
        raise StructuralError("no multiple of q^4 makes the H_8 enumerator harmonic")
    h = w - q4.scale(c)
    if h.is_zero() or not laplacian(h).is_zero():
        raise StructuralError("degree-8 harmonic invariant is zero or not harmonic")
    if not is_invariant(h, standard_generators(m)):
        raise StructuralError("degree-8 harmonic polynomial is not invariant")
    if group is not None and harmonic_invariant_dimension(group, 8) != 1:
        raise StructuralError("degree-8 harmonic invariant is not unique up to scale")
    return h, c


# --- spanning by weight enumerators -------------------------------------------------

@dataclass
class RungeReport:
    m: int
    length: int
    classes: int
    span_rank: int
    invariant_dim: int
    permuted_rank: int
    invariant: bool

    @property
    def spanning(self) -> bool:
        return self.span_rank == self.invariant_dim

    @property
    def basis_flag(self) -> bool:
        return self.spanning and self.classes == self.invariant_dim

    @property
    def basis_expected(self) -> bool:
        return self.m >= self.length // 2 - 1

    @property
    def consistent(self) -> bool:
        ok = self.spanning and self.invariant and self.permuted_rank == self.span_rank
        return ok and (self.basis_flag or not self.basis_expected)

    def to_json(self):
        return {
            "m": self.m,
            "length": self.length,
            "classes": self.classes,
            "span_rank": self.span_rank,
            "invariant_dim": self.invariant_dim,
            "spanning": self.spanning,
            "basis_flag": self.basis_flag,
            "basis_expected": self.basis_expected,
            "all_invariant": self.invariant,
            "consistent": self.consistent,
        }


def runge_span_check(m: int, k: int, group: FiniteMatrixGroup | None = None,
                     permutations: int = 3, seed: int = 0,
                     budget=DEFAULT_BUDGET) -> RungeReport:
    """Compare the span of cwe_tensor over self-dual codes of length 2k with the invariants."""
    if not 1 <= m <= 2:
        raise CapacityError("Runge checks are limited to m <= 2")
    n = 2 * k
    if not 2 <= n <= 12:
        raise CapacityError("Runge checks are limited to lengths 2..12")
    if group is None:
        group = clifford_group(m)
    cls = classify_self_dual(n)
    polys = [cwe_tensor(c, m) for c in cls.representatives]
    gens = group.generators
    invariant = all(is_invariant(p, gens) for p in polys)
    rng = random.Random(seed)
    permuted = []
    for c in cls.representatives:
        for _ in range(permutations):
            perm = list(range(n))
            rng.shuffle(perm)
            permuted.append(cwe_tensor(c.permuted(perm), m))
    return RungeReport(
        m=m,
        length=n,
        classes=len(cls.representatives),
        span_rank=_rank(polys),
        invariant_dim=invariant_dimension(group, n, budget),
        permuted_rank=_rank(polys + permuted),
        invariant=invariant,
    )
