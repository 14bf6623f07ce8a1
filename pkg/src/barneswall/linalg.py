"""Exact linear algebra over Z, Q and Q(√2).

Matrices are plain lists of rows.  Field routines work with any exact scalar
type supporting + - * / (``Fraction`` or :class:`~barneswall.qring.QSqrt2`).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col)), start=0 * row[0]) for col in bt])
    return out


# --- integer row operations ------------------------------------------------

def hnf(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular, ``U * rows == H``, nonzero rows
    of ``H`` first with positive pivots strictly increasing in column, entries
    above each pivot reduced into ``[0, pivot)`` and zero rows last.
    """
    a = [list(map(int, r)) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity(nr)
    r = 0
    for c in range(nc):
        if r == nr:
            break
        # euclid on column c among rows r..nr-1
        while True:
            nz = [i for i in range(r, nr) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if all(a[i][c] == 0 for i in range(r, nr)):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def integer_left_kernel(rows):
    """Z-basis (rows) of {x in Z^n : x * rows == 0}, saturated."""
    h, u = hnf(rows)
    return [u[i] for i in range(len(h)) if all(x == 0 for x in h[i])]


def lower_hnf(rows):
    """Lower-triangular HNF: pivots on the right, entries below pivots reduced.

    Obtained by reversing the column order, taking the row HNF, and reversing
    columns and rows back.  Zero rows are dropped.
    """
    rev = [list(reversed(r)) for r in rows]
    h, _ = hnf(rev)
    h = [list(reversed(r)) for r in h if any(r)]
    h.reverse()
    return h


def scale_to_integers(rows):
    """Return (integer rows, d) with rows == integer rows / d, d > 0 minimal."""
    d = 1
    for r in rows:
        for x in r:
            d = lcm(d, Fraction(x).denominator)
    return [[int(Fraction(x) * d) for x in r] for r in rows], d


# --- field elimination -----------------------------------------------------

def _is_zero(x):
    return x == 0


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def _inv(x):
    return x.invert() if hasattr(x, "invert") else 1 / Fraction(x)


def row_echelon(rows):
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    a = [[_field(x) for x in r] for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not _is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = _inv(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(row_echelon(rows)[1])


def det(a):
    """Determinant over a field by elimination."""
    n = len(a)
    m = [[_field(x) for x in r] for r in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return 0 * m[0][0] if n else 1
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        p = m[c][c]
        d = d * p
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * _inv(p)
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a):
    n = len(a)
    a = [[_field(x) for x in r] for r in a]
    one = a[0][0] ** 0 if hasattr(a[0][0], "invert") else Fraction(1)
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def charpoly(a):
    """Coefficients [c_0, ..., c_n] of det(t I - a) via Faddeev-LeVerrier."""
    n = len(a)
    a = [[_field(x) for x in r] for r in a]
    one = a[0][0] ** 0 if hasattr(a[0][0], "invert") else Fraction(1)
    zero = one - one
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            m = [[one if i == j else zero for j in range(n)] for i in range(n)]
        else:
            am = matmul(a, m)
            c = coeffs[n - k + 1]
            m = [[am[i][j] + (c if i == j else zero) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        tr = sum((am[i][i] for i in range(n)), start=zero)
        coeffs[n - k] = -tr * Fraction(1, k)
    return coeffs
