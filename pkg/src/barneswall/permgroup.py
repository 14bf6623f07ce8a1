"""Permutation groups: deterministic Schreier-Sims.

A permutation on ``range(n)`` is a tuple ``p`` with ``p[i]`` the image of
``i``.  Products apply left to right: ``mul(p, q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod


def identity(n):
    return tuple(range(n))


def mul(p, q):
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p):
    return all(i == j for i, j in enumerate(p))


def check_perm(p):
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")


@dataclass
class StabChain:
    degree: int
    base: list = field(default_factory=list)
    strong: list = field(default_factory=list)
    transversals: list = field(default_factory=list)  # per level: {point: perm}

    @property
    def order(self) -> int:
        return prod(len(t) for t in self.transversals)

    def level_gens(self, i):
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _orbit(self, i):
        b = self.base[i]
        gens = self.level_gens(i)
        trans = {b: identity(self.degree)}
        queue = [b]
        for pt in queue:
            u = trans[pt]
            for s in gens:
                q = s[pt]
                if q not in trans:
                    trans[q] = mul(u, s)
                    queue.append(q)
        return trans

    def strip(self, g, start=0):
        """Sift ``g`` from level ``start``; return (residue, failing level)."""
        for i in range(start, len(self.base)):
            pt = g[self.base[i]]
            u = self.transversals[i].get(pt)
            if u is None:
                return g, i
            g = mul(g, inv(u))
        return g, len(self.base)

    def contains(self, g) -> bool:
        h, j = self.strip(g)
        return j == len(self.base) and is_identity(h)


def _moved_point(g):
    return next(i for i, j in enumerate(g) if i != j)


def schreier_sims(gens, degree=None) -> StabChain:
    """Base and strong generating set for the group generated by ``gens``."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        check_perm(g)
    chain = StabChain(degree)
    gens = [g for g in gens if not is_identity(g)]
    if not gens:
        return chain
    for g in gens:
        if all(g[b] == b for b in chain.base):
            chain.base.append(_moved_point(g))
    chain.strong = list(gens)
    chain.transversals = [chain._orbit(i) for i in range(len(chain.base))]

    i = len(chain.base) - 1
    while i >= 0:
        restart = None
        trans = chain.transversals[i]
        gens_i = chain.level_gens(i)
        for alpha, u in list(trans.items()):
            for s in gens_i:
                beta = s[alpha]
                h = mul(mul(u, s), inv(trans[beta]))
                if is_identity(h):
                    continue
                res, j = chain.strip(h, i + 1)
                if j < len(chain.base) or not is_identity(res):
                    if j == len(chain.base):
                        chain.base.append(_moved_point(res))
                        chain.transversals.append(None)
                    chain.strong.append(res)
                    for lvl in range(i + 1, j + 1):
                        chain.transversals[lvl] = chain._orbit(lvl)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    return chain


def group_order(gens, degree=None) -> int:
    return schreier_sims(gens, degree).order
