"""Sublevel-set persistence of a PL function on the N-cycle graph.

The lower-star filtration puts vertex ``i`` at ``phi[i]`` and edge
``{i, i+1 mod N}`` at ``max(phi[i], phi[i+1])``.  Degree-0 pairs come from a
union-find sweep with the elder rule; the edge that closes the cycle births
the single essential degree-1 class.  Ties are broken by vertex index, and
pairs with zero persistence are dropped, so the reported diagram does not
depend on the tie-breaking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .core import CircularFunction
from .errors import InvalidLevelPair


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite degree-0 pairs plus essential births in degrees 0 and 1.

    Essential classes have an implicit infinite death; they are kept in
    their own fields and never stored as ``inf``.  All multisets are held
    as sorted tuples so that equality is multiset equality.
    """

    finite_pairs_deg0: tuple = ()
    essential_deg0_births: tuple = ()
    essential_deg1_births: tuple = ()

    def __post_init__(self):
        pairs = []
        for b, d in self.finite_pairs_deg0:
            b, d = float(b), float(d)
            if not b < d:
                raise ValueError(f"finite pair needs birth < death, got ({b}, {d})")
            pairs.append((b, d))
        object.__setattr__(self, "finite_pairs_deg0", tuple(sorted(pairs)))
        object.__setattr__(self, "essential_deg0_births",
                           tuple(sorted(float(b) for b in self.essential_deg0_births)))
        object.__setattr__(self, "essential_deg1_births",
                           tuple(sorted(float(b) for b in self.essential_deg1_births)))

    def essential_births(self, degree: int) -> tuple:
        if degree == 0:
            return self.essential_deg0_births
        if degree == 1:
            return self.essential_deg1_births
        return ()

    def shifted(self, offset: float) -> PersistenceDiagram:
        return PersistenceDiagram(
            [(b + offset, d + offset) for b, d in self.finite_pairs_deg0],
            [b + offset for b in self.essential_deg0_births],
            [b + offset for b in self.essential_deg1_births],
        )

    def to_dict(self) -> dict:
        return {
            "finite_deg0": [list(p) for p in self.finite_pairs_deg0],
            "essential_deg0": list(self.essential_deg0_births),
            "essential_deg1": list(self.essential_deg1_births),
        }

    @classmethod
    def from_dict(cls, data: dict) -> PersistenceDiagram:
        return cls(
            [tuple(p) for p in data.get("finite_deg0", [])],
            data.get("essential_deg0", []),
            data.get("essential_deg1", []),
        )


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root


def sublevel_diagram(phi: CircularFunction) -> PersistenceDiagram:
    values = phi.tolist()
    n = len(values)
    order = sorted(range(n), key=lambda i: (values[i], i))
    rank = [0] * n
    for r, i in enumerate(order):
        rank[i] = r

    uf = _UnionFind(n)
    # Each root remembers the rank of its oldest vertex; smaller rank is older.
    oldest = list(range(n))
    pairs = []
    essential_deg1 = []

    for i in order:
        oldest[i] = rank[i]
        level = values[i]
        for j in ((i - 1) % n, (i + 1) % n):
            if rank[j] > rank[i]:
                continue
            ri, rj = uf.find(i), uf.find(j)
            if ri == rj:
                # only possible on the last vertex of the cycle
                essential_deg1.append(level)
                continue
            if oldest[ri] < oldest[rj]:
                ri, rj = rj, ri
            # ri is the younger component and dies here
            birth = values[order[oldest[ri]]]
            if birth < level:
                pairs.append((birth, level))
            uf.parent[ri] = rj

    return PersistenceDiagram(pairs, [values[order[0]]], essential_deg1)


def _components(values, level) -> tuple[list[bool], _UnionFind]:
    n = len(values)
    uf = _UnionFind(n)
    present = [v <= level for v in values]
    for i in range(n):
        j = (i + 1) % n
        if present[i] and present[j]:
            ri, rj = uf.find(i), uf.find(j)
            if ri != rj:
                uf.parent[ri] = rj
    return present, uf


def persistent_betti(phi: CircularFunction, u: float, v: float) -> int:
    """Degree-0 persistent Betti number: components of ``{phi <= u}`` that
    are still distinct in ``{phi <= v}``.

    Computed directly from the two sublevel complexes, independently of
    :func:`sublevel_diagram`.
    """
    if u > v:
        raise InvalidLevelPair(u, v)
    values = phi.tolist()
    present_u, uf_u = _components(values, u)
    _, uf_v = _components(values, v)
    roots_u = {uf_u.find(i) for i in range(len(values)) if present_u[i]}
    return len({uf_v.find(r) for r in roots_u})


def betti_from_diagram(diagram: PersistenceDiagram, u: float, v: float) -> int:
    """Count degree-0 points born at or before ``u`` and dying after ``v``."""
    count = sum(1 for b, d in diagram.finite_pairs_deg0 if b <= u and d > v)
    return count + sum(1 for b in diagram.essential_deg0_births if b <= u)


def critical_values(phi: CircularFunction) -> list[float]:
    return sorted(set(phi.tolist()))


def avoiding_grid(values: Iterable[float], size: int) -> list[float]:
    """``size`` evenly spaced levels covering the range of ``values`` with a
    margin on both sides, none of them equal to any value."""
    crit = sorted(set(values))
    lo, hi = crit[0] - 1.0, crit[-1] + 1.0
    taken = set(crit)
    levels = []
    for k in range(size):
        t = lo + (hi - lo) * (k + 0.5) / size
        while t in taken:
            t = math.nextafter(t, math.inf)
        levels.append(t)
    return levels
