"""The Clifford groups C_m = Aut(M_m).

Two independent routes to the group are provided: closure of an explicit
generator list, and a backtracking search for all automorphisms of M_m.
Group elements act on column vectors, ``v -> g v``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg, permgroup
from .blattice import BWLattice, MatQ2, balanced_bw, kronecker
from .enumeration import UnsupportedError, VectorSet, minimal_vectors_bw, short_vectors_bw
from .qring import ONE, SQRT2, ZERO, QSqrt2, ZSqrt2, format_scalar

__all__ = [
    "OrthogonalElement",
    "FiniteMatrixGroup",
    "CapacityError",
    "preserves_lattice",
    "standard_generators",
    "close_group",
    "order_via_permutation",
    "molien_series",
    "aut_backtrack",
    "clifford_group",
]

DEFAULT_CAP = 10**6
GENERATOR_MODEL_VERSION = 1


class CapacityError(RuntimeError):
    """Computation would exceed a configured size cap."""


class GroupError(ValueError):
    pass


def is_orthogonal(g: MatQ2) -> bool:
    n, k = g.shape
    return n == k and (g @ g.T).is_identity()


def _as_mat(g) -> MatQ2:
    if isinstance(g, OrthogonalElement):
        return g.matrix
    return g if isinstance(g, MatQ2) else MatQ2(g)


def apply(g: MatQ2, v):
    return tuple(
        sum((x * y for x, y in zip(row, v) if x.a or x.b), start=ZERO) for row in g.rows
    )


def preserves_lattice(g, lat: BWLattice) -> bool:
    """True iff g maps ``lat`` onto itself (integral, unimodular coefficient matrix)."""
    g = _as_mat(g)
    if not is_orthogonal(g):
        raise GroupError("matrix is not orthogonal")
    images = lat.basis @ g.T
    coeffs = images @ lat.basis.inverse()
    if not coeffs.is_integral():
        return False
    return coeffs.det().is_unit()


@dataclass(frozen=True)
class OrthogonalElement:
    m: int
    matrix: MatQ2

    def __post_init__(self):
        if not is_orthogonal(self.matrix):
            raise GroupError("matrix is not orthogonal")

    def __matmul__(self, other):
        return OrthogonalElement(self.m, self.matrix @ other.matrix)

    def to_json(self):
        return self.matrix.tolist(as_str=True)


# --- generators ------------------------------------------------------------------

_HALF_SQRT2 = QSqrt2(0, Fraction(1, 2))
H = MatQ2([[_HALF_SQRT2, _HALF_SQRT2], [_HALF_SQRT2, -_HALF_SQRT2]])
Z = MatQ2([[ONE, ZERO], [ZERO, -ONE]])
CZ = MatQ2([[ONE if i == j else ZERO for j in range(4)] for i in range(3)] + [[ZERO, ZERO, ZERO, -ONE]])


def _pad(g: MatQ2, m: int) -> MatQ2:
    k = g.shape[0].bit_length() - 1
    out = g
    for _ in range(m - k):
        out = kronecker(out, MatQ2.identity(2))
    return out


def factor_swap(m: int, j: int) -> MatQ2:
    """Permutation matrix exchanging tensor factors j and j+1 (0-based, factor 0 leftmost)."""
    n = 2**m
    rows = [[ZERO] * n for _ in range(n)]
    for idx in range(n):
        bits = [(idx >> (m - 1 - k)) & 1 for k in range(m)]
        bits[j], bits[j + 1] = bits[j + 1], bits[j]
        img = 0
        for b in bits:
            img = 2 * img + b
        rows[img][idx] = ONE
    return MatQ2(rows)


def standard_generators(m: int):
    """h, diag(1,-1), adjacent factor swaps and CZ, padded to 2^m dimensions."""
    if not 1 <= m <= 3:
        raise UnsupportedError("standard generators are provided for 1 <= m <= 3")
    mats = [_pad(H, m), _pad(Z, m)]
    mats += [factor_swap(m, j) for j in range(m - 1)]
    if m >= 2:
        mats.append(_pad(CZ, m))
    lat = balanced_bw(m)
    gens = []
    for g in mats:
        if not preserves_lattice(g, lat):
            raise GroupError("generator does not preserve M_m")
        gens.append(OrthogonalElement(m, g))
    return gens


# --- groups ----------------------------------------------------------------------------

@dataclass
class FiniteMatrixGroup:
    m: int
    generators: list
    order: int
    elements: list | None = None
    domain: VectorSet | None = None
    chain: object = None
    source: str = ""

    def element_set(self):
        if self.elements is None:
            raise CapacityError("element list not available")
        return set(self.elements)

    def to_json(self):
        return {
            "m": self.m,
            "order": str(self.order),
            "generators": [g.to_json() for g in self.generators],
        }


def dimino(mats, cap=DEFAULT_CAP, identity=None):
    """Dimino's algorithm: all elements of the group generated by ``mats``."""
    mats = list(mats)
    if identity is None:
        identity = MatQ2.identity(mats[0].shape[0])
    elements = [identity]
    seen = {identity}
    gens_used = []
    for s in mats:
        if s in seen:
            continue
        gens_used.append(s)
        prev = len(elements)
        if prev == 1:
            # cyclic group of the first generator
            x = s
            while x != identity:
                elements.append(x)
                seen.add(x)
                if len(elements) > cap:
                    raise CapacityError(f"group exceeds cap {cap}; use order_via_permutation")
                x = x @ s
            continue
        coset = [e @ s for e in elements[:prev]]
        elements.extend(coset)
        seen.update(coset)
        rep = prev
        while rep < len(elements):
            for t in gens_used:
                x = elements[rep] @ t
                if x not in seen:
                    coset = [e @ x for e in elements[:prev]]
                    elements.extend(coset)
                    seen.update(coset)
                    if len(elements) > cap:
                        raise CapacityError(f"group exceeds cap {cap}; use order_via_permutation")
            rep += prev
    return elements


def close_group(gens, cap=DEFAULT_CAP) -> FiniteMatrixGroup:
    gens = list(gens)
    m = gens[0].m if gens and isinstance(gens[0], OrthogonalElement) else None
    mats = [_as_mat(g) for g in gens]
    for g in mats:
        if not is_orthogonal(g):
            raise GroupError("generator is not orthogonal")
    elements = dimino(mats, cap)
    return FiniteMatrixGroup(m, gens, len(elements), elements, source="dimino")


def _permutation_of(g: MatQ2, vectors, index):
    perm = []
    for v in vectors:
        w = apply(g, v)
        j = index.get(w)
        if j is None:
            raise GroupError("generator does not permute the domain")
        perm.append(j)
    return tuple(perm)


def permutation_action(gens, domain):
    vectors = list(domain.vectors if isinstance(domain, VectorSet) else domain)
    if not vectors:
        raise GroupError("empty domain")
    if linalg.rank([list(v) for v in vectors]) != len(vectors[0]):
        raise GroupError("domain does not span; the action would not be faithful")
    index = {v: i for i, v in enumerate(vectors)}
    return [_permutation_of(_as_mat(g), vectors, index) for g in gens]


def order_via_permutation(gens, domain) -> int:
    """Group order from a stabilizer chain of the action on ``domain``."""
    perms = permutation_action(gens, domain)
    n = len(domain.vectors if isinstance(domain, VectorSet) else domain)
    return permgroup.schreier_sims(perms, n).order


def clifford_group(m: int, elements: bool = True, cap=DEFAULT_CAP) -> FiniteMatrixGroup:
    """C_m from the standard generators; full element list only when m <= 2."""
    gens = standard_generators(m)
    dom = minimal_vectors_bw(balanced_bw(m))
    if elements and m <= 2:
        grp = close_group(gens, cap)
        grp.domain = dom
        return grp
    perms = permutation_action(gens, dom)
    chain = permgroup.schreier_sims(perms, len(dom))
    return FiniteMatrixGroup(m, gens, chain.order, None, dom, chain, source="schreier-sims")


# --- Molien series -----------------------------------------------------------------

def _det_one_minus_tg(g: MatQ2):
    """Coefficients of det(I - t g), lowest degree first."""
    c = linalg.charpoly([list(r) for r in g.rows])
    n = len(c) - 1
    return tuple(QSqrt2.coerce(c[n - k]) for k in range(n + 1))


def _series_inverse(p, deg):
    s = [QSqrt2.coerce(0)] * (deg + 1)
    s[0] = p[0].invert()
    for k in range(1, deg + 1):
        acc = ZERO
        for j in range(1, min(k, len(p) - 1) + 1):
            acc = acc + p[j] * s[k - j]
        s[k] = -acc * s[0]
    return s


def molien_series(group: FiniteMatrixGroup, max_degree: int):
    """Coefficients c_0..c_max_degree of (1/|G|) sum_g 1/det(I - t g), as Fractions."""
    if group.elements is None:
        raise CapacityError("Molien series needs the full element list (m <= 2)")
    polys = Counter(_det_one_minus_tg(g) for g in group.elements)
    total = [ZERO] * (max_degree + 1)
    for p, cnt in polys.items():
        s = _series_inverse(p, max_degree)
        total = [a + cnt * b for a, b in zip(total, s)]
    out = []
    for x in total:
        x = x * QSqrt2(Fraction(1, len(group.elements)))
        if x.b != 0:
            raise ArithmeticError("Molien coefficient has an irrational part")
        out.append(Fraction(x.a))
    return out


# --- automorphism backtracking -------------------------------------------------------

def _ip(u, v):
    return sum((x * y for x, y in zip(u, v) if x.a or x.b), start=ZERO)


def aut_backtrack(lat: BWLattice, max_m: int = 2) -> FiniteMatrixGroup:
    """All orthogonal maps preserving ``lat``, by backtracking on basis images."""
    if lat.m > max_m:
        raise UnsupportedError("automorphism backtracking is limited to m <= 2")
    basis = lat.basis.rows
    r = len(basis)
    gram = lat.gram.rows
    cands = {}
    for i in range(r):
        nv = gram[i][i]
        if nv not in cands:
            cands[nv] = list(short_vectors_bw(lat, nv).vectors)
    binv = lat.basis.inverse()
    found = []
    images = []

    def rec(i):
        if i == r:
            gt = binv @ MatQ2(images)
            g = gt.T
            if is_orthogonal(g) and preserves_lattice(g, lat):
                found.append(g)
            return
        for v in cands[gram[i][i]]:
            if all(_ip(images[j], v) == gram[j][i] for j in range(i)):
                images.append(v)
                rec(i + 1)
                images.pop()

    rec(0)
    gens = [OrthogonalElement(lat.m, g) for g in _generating_subset(found)]
    return FiniteMatrixGroup(lat.m, gens, len(found), found, source="backtrack")


def _generating_subset(elements):
    """Greedy generating set: add elements not yet in the generated group."""
    if not elements:
        return []
    ident = MatQ2.identity(elements[0].shape[0])
    gens = []
    current = {ident}
    for g in elements:
        if g in current:
            continue
        gens.append(g)
        current = set(dimino(gens, identity=ident))
        if len(current) == len(elements):
            break
    return gens
