"""Balanced Barnes-Wall lattices M_m over Z[√2] and their rational pieces.

M_m is the Z[√2]-span of the rows of G_1^{⊗m} with G_1 = [[√2, 0], [1, 1]].
Restricting scalars to Z turns M_m into a free Z-module of rank 2^{m+1}
with basis {w_1, √2 w_1, ..., w_r, √2 w_r} (w_i the rows of G_m).  The Galois
involution is an integer matrix on these coordinates; its fixed module is
L_m and its negated module is √2 L'_m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import linalg
from .qring import ONE, SQRT2, ZERO, QSqrt2, format_scalar, parse, sign

__all__ = [
    "MatQ2",
    "BWLattice",
    "ZLattice",
    "GaloisInvolution",
    "G1",
    "kronecker",
    "balanced_bw",
    "galois_involution",
    "rational_part",
    "irrational_part",
    "rational_part_by_coordinates",
    "irrational_part_by_coordinates",
    "index",
    "canonical_form",
    "d4",
]


class LatticeError(ValueError):
    pass


class MatQ2:
    """Immutable matrix with entries in Q(√2)."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        self.rows = tuple(tuple(QSqrt2.coerce(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, rows):
        return cls([[parse(x) if isinstance(x, str) else x for x in r] for r in rows])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def T(self) -> MatQ2:
        return MatQ2(zip(*self.rows))

    def __matmul__(self, other: MatQ2) -> MatQ2:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = ZERO
                for x, y in zip(r, c):
                    if x.a or x.b:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return MatQ2(out)

    def __mul__(self, scalar) -> MatQ2:
        scalar = QSqrt2.coerce(scalar)
        return MatQ2([[x * scalar for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: MatQ2) -> MatQ2:
        return MatQ2([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: MatQ2) -> MatQ2:
        return MatQ2([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatQ2([[-x for x in r] for r in self.rows])

    def conjugate(self) -> MatQ2:
        return MatQ2([[x.conjugate() for x in r] for r in self.rows])

    def det(self) -> QSqrt2:
        return QSqrt2.coerce(linalg.det([list(r) for r in self.rows]))

    def inverse(self) -> MatQ2:
        return MatQ2(linalg.inverse([list(r) for r in self.rows]))

    def is_integral(self) -> bool:
        return all(x.is_integral() for r in self.rows for x in r)

    def is_identity(self) -> bool:
        n, k = self.shape
        return n == k and all(
            x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def is_symmetric(self) -> bool:
        return self.rows == tuple(zip(*self.rows))

    def leading_minors(self):
        n = self.shape[0]
        return [MatQ2([r[:k] for r in self.rows[:k]]).det() for k in range(1, n + 1)]

    def is_totally_positive_definite(self) -> bool:
        """Positive definite under both real embeddings of Q(√2)."""
        if not self.is_symmetric():
            return False
        for mat in (self, self.conjugate()):
            if any(sign(d) <= 0 for d in mat.leading_minors()):
                return False
        return True

    def key(self):
        """Canonical exact encoding; used for hashing and dedup."""
        return tuple(x.key() for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, MatQ2) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def tolist(self, as_str=False):
        if as_str:
            return [[format_scalar(x) for x in r] for r in self.rows]
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"MatQ2({self.tolist(as_str=True)})"


def kronecker(a: MatQ2, b: MatQ2) -> MatQ2:
    ra, ca = a.shape
    rb, cb = b.shape
    return MatQ2(
        [
            [a.rows[i][j] * b.rows[k][l] for j in range(ca) for l in range(cb)]
            for i in range(ra)
            for k in range(rb)
        ]
    )


G1 = MatQ2([[SQRT2, ZERO], [ONE, ONE]])


def kron_power(a: MatQ2, m: int) -> MatQ2:
    out = MatQ2.identity(1)
    for _ in range(m):
        out = kronecker(out, a)
    return out


@dataclass(frozen=True)
class BWLattice:
    """A Z[√2]-lattice given by a basis of generating rows."""

    m: int
    basis: MatQ2
    gram: MatQ2 = field(compare=False)

    @classmethod
    def from_basis(cls, basis, m=None) -> BWLattice:
        basis = basis if isinstance(basis, MatQ2) else MatQ2(basis)
        n = basis.shape[0]
        if m is None:
            m = max(n.bit_length() - 1, 0)
        lat = cls(m, basis, basis @ basis.T)
        if lat.basis.det() == 0:
            raise LatticeError("basis is singular")
        return lat

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def module_basis(self):
        """Ambient images of the Z-basis {w_1, √2 w_1, w_2, √2 w_2, ...}."""
        out = []
        for w in self.basis.rows:
            out.append(w)
            out.append(tuple(SQRT2 * x for x in w))
        return out

    def from_module(self, z):
        """Ambient vector for integer coordinates z on the module basis."""
        mb = self.module_basis()
        v = [ZERO] * self.dim
        for c, w in zip(z, mb):
            if c:
                v = [x + c * y for x, y in zip(v, w)]
        return tuple(v)

    def coefficients(self, v):
        """Q(√2)-coefficients c with v == c * basis (row vector)."""
        inv = self._basis_inverse
        n = self.rank
        return tuple(
            sum((QSqrt2.coerce(v[i]) * inv[i][j] for i in range(n)), start=ZERO)
            for j in range(n)
        )

    def contains(self, v) -> bool:
        return all(c.is_integral() for c in self.coefficients(v))

    @cached_property
    def _basis_inverse(self):
        return self.basis.inverse().rows

    def to_json(self):
        return {
            "m": self.m,
            "ring": "Zsqrt2",
            "basis": self.basis.tolist(as_str=True),
            "gram": self.gram.tolist(as_str=True),
        }


def balanced_bw(m: int) -> BWLattice:
    """M_m, with basis G_1^{⊗m} (rows in lexicographic order of tensor indices)."""
    if not isinstance(m, int) or m < 1:
        raise LatticeError(f"m must be an integer >= 1, got {m!r}")
    if m > 6:
        raise LatticeError("construction is limited to m <= 6")
    basis = kron_power(G1, m)
    return BWLattice(m, basis, basis @ basis.T)


@dataclass(frozen=True)
class GaloisInvolution:
    """φ on the integer coordinate module of M_m (row-vector convention)."""

    m: int
    matrix: tuple

    def apply(self, z):
        return tuple(sum(zi * self.matrix[i][j] for i, zi in enumerate(z)) for j in range(len(z)))

    @property
    def size(self):
        return len(self.matrix)


def basis_signs(m: int):
    """(-1)^{#u_1 factors} for each row u_{e_1} ⊗ ... ⊗ u_{e_m} of G_m."""
    return [(-1) ** sum(eps) for eps in product((1, 0), repeat=m)]


def galois_involution(m: int) -> GaloisInvolution:
    # rows of G_1 are (u_1, u_2); tensor index bit 1 marks a u_1 factor
    signs = basis_signs(m)
    size = 2 * len(signs)
    mat = [[0] * size for _ in range(size)]
    for i, s in enumerate(signs):
        mat[2 * i][2 * i] = s
        mat[2 * i + 1][2 * i + 1] = -s
    return GaloisInvolution(m, tuple(tuple(r) for r in mat))


@dataclass(frozen=True)
class ZLattice:
    """Integral span of rational rows; canonical HNF basis.

    When ``sqrt2`` is set the actual vectors are √2 times the stored rows.
    """

    basis: tuple
    sqrt2: bool = False

    @classmethod
    def from_rows(cls, rows, sqrt2=False, canonical=True) -> ZLattice:
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        lat = cls(rows, sqrt2)
        return canonical_form(lat) if canonical else lat

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    @cached_property
    def gram(self):
        s = 2 if self.sqrt2 else 1
        return tuple(
            tuple(s * sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in self.basis)
            for r in self.basis
        )

    def det(self):
        """Determinant of the Gram matrix."""
        return linalg.det([list(r) for r in self.gram])

    def vectors(self):
        """Basis rows as ambient vectors (QSqrt2 entries)."""
        if self.sqrt2:
            return [tuple(SQRT2 * x for x in r) for r in self.basis]
        return [tuple(QSqrt2.coerce(x) for x in r) for r in self.basis]

    def unscaled(self) -> ZLattice:
        """Drop the √2 factor (√2 L' -> L')."""
        return ZLattice(self.basis, False)

    def scaled(self, k) -> ZLattice:
        return ZLattice.from_rows([[k * x for x in r] for r in self.basis], self.sqrt2)

    def to_json(self, m=None):
        return {
            "m": m,
            "ring": "Z",
            "basis": [[format_scalar(x) for x in r] for r in self.vectors()],
            "gram": [[format_scalar(x) for x in r] for r in self.gram],
        }


def canonical_form(lat: ZLattice) -> ZLattice:
    """Lower-triangular HNF of the integer-scaled basis, denominator restored."""
    ints, d = linalg.scale_to_integers(lat.basis)
    h = linalg.lower_hnf(ints)
    rows = tuple(tuple(Fraction(x, d) for x in r) for r in h)
    return ZLattice(rows, lat.sqrt2)


def _eigen_module(lat: BWLattice, eps: int):
    phi = galois_involution(lat.m) if lat.rank == 2**lat.m else None
    if phi is None:
        raise LatticeError("φ is defined only for M_m")
    size = phi.size
    shifted = [[phi.matrix[i][j] - (eps if i == j else 0) for j in range(size)] for i in range(size)]
    return linalg.integer_left_kernel(shifted)


def _module_to_rows(lat: BWLattice, kernel, irrational: bool):
    rows = []
    for z in kernel:
        v = lat.from_module(z)
        if irrational:
            if any(x.a != 0 for x in v):
                raise LatticeError("negated module has a rational component")
            rows.append([x.b for x in v])
        else:
            if any(x.b != 0 for x in v):
                raise LatticeError("fixed module has an irrational component")
            rows.append([x.a for x in v])
    return rows


def rational_part(lat: BWLattice) -> ZLattice:
    """L_m: the fixed module of φ, mapped to ambient coordinates."""
    kernel = _eigen_module(lat, 1)
    return ZLattice.from_rows(_module_to_rows(lat, kernel, irrational=False))


def irrational_part(lat: BWLattice, divide: bool = True) -> ZLattice:
    """L'_m (default) or √2 L'_m (``divide=False``): the negated module of φ."""
    kernel = _eigen_module(lat, -1)
    return ZLattice.from_rows(_module_to_rows(lat, kernel, irrational=True), sqrt2=not divide)


def _coordinate_split(lat: BWLattice, keep_rational: bool):
    """Integer kernel of the map z -> (unwanted component of ambient coords)."""
    rows = []
    for w in lat.module_basis():
        comp = [x.b if keep_rational else x.a for x in w]
        rows.append(comp)
    ints, _ = linalg.scale_to_integers(rows)
    return linalg.integer_left_kernel(ints)


def rational_part_by_coordinates(lat: BWLattice) -> ZLattice:
    """Vectors of M with rational coordinates, found without φ."""
    kernel = _coordinate_split(lat, keep_rational=True)
    return ZLattice.from_rows(_module_to_rows(lat, kernel, irrational=False))


def irrational_part_by_coordinates(lat: BWLattice, divide: bool = True) -> ZLattice:
    kernel = _coordinate_split(lat, keep_rational=False)
    return ZLattice.from_rows(_module_to_rows(lat, kernel, irrational=True), sqrt2=not divide)


def _solve_rational(sub_rows, sup_rows):
    """X with X * sup == sub for a square, nonsingular sup."""
    inv = linalg.inverse([list(r) for r in sup_rows])
    return linalg.matmul([list(r) for r in sub_rows], inv)


def contains(sup: ZLattice, sub: ZLattice) -> bool:
    if sup.sqrt2 != sub.sqrt2 or sup.rank != sup.dim or sub.dim != sup.dim:
        raise LatticeError("containment needs full-rank lattices of equal scaling")
    x = _solve_rational(sub.basis, sup.basis)
    return all(Fraction(v).denominator == 1 for r in x for v in r)


def index(sub: ZLattice, sup: ZLattice) -> int:
    """[sup : sub] as a positive integer."""
    if not contains(sup, sub):
        raise LatticeError("sub is not contained in super")
    ratio = abs(linalg.det([list(r) for r in sub.basis])) / abs(
        linalg.det([list(r) for r in sup.basis])
    )
    if Fraction(ratio).denominator != 1:
        raise ArithmeticError(f"non-integral index {ratio}")
    return int(ratio)


def d4() -> ZLattice:
    """The root lattice D_4 = {x in Z^4 : sum(x) even}."""
    return ZLattice.from_rows([[-1, -1, 0, 0], [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]])


def integer_lattice(n: int) -> ZLattice:
    return ZLattice.from_rows(linalg.identity(n))
