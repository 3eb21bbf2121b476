"""Matching (bottleneck) distance between persistence diagrams.

Finite points are matched on the diagonal-augmented bipartite graph: every
point of one diagram gets a private diagonal copy on the other side, and
diagonal copies match each other at no cost.  The optimal bottleneck value
is always one of the finitely many edge costs, so :func:`bottleneck` binary
searches that candidate set, testing each threshold for a perfect matching
with Hopcroft-Karp.  The result is exact, not a tolerance-limited bisection.

Essential classes are matched only within their homology degree, sorted by
birth.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import EssentialMismatch, TooLarge
from .persistence import PersistenceDiagram

BRUTEFORCE_CAP = 8
ESSENTIAL_DEGREES = (0, 1)

_UNMATCHED = -1


def hopcroft_karp(adj: list[list[int]], n_right: int) -> tuple[int, list[int]]:
    """Maximum matching of a bipartite graph given by left adjacency lists.

    Returns the matching size and ``match_left`` (right partner of every
    left vertex, ``-1`` when unmatched).  Runs in ``O(E sqrt(V))``; the
    augmenting DFS is iterative so large graphs do not hit the recursion
    limit.
    """
    n_left = len(adj)
    match_left = [_UNMATCHED] * n_left
    match_right = [_UNMATCHED] * n_right
    size = 0
    inf = n_left + 1

    while True:
        dist = [inf] * n_left
        queue = deque()
        for u in range(n_left):
            if match_left[u] == _UNMATCHED:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_right[v]
                if w == _UNMATCHED:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return size, match_left

        pos = [0] * n_left
        for root in range(n_left):
            if match_left[root] != _UNMATCHED:
                continue
            # path[k] is a left vertex; we try to extend from path[-1]
            path = [root]
            while path:
                u = path[-1]
                advanced = False
                while pos[u] < len(adj[u]):
                    v = adj[u][pos[u]]
                    pos[u] += 1
                    w = match_right[v]
                    if w == _UNMATCHED:
                        # augment along the path, taking each vertex's last tried edge
                        for x in reversed(path):
                            y = adj[x][pos[x] - 1]
                            nxt = match_left[x]
                            match_left[x] = y
                            match_right[y] = x
                            if nxt == _UNMATCHED:
                                break
                        size += 1
                        path = []
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        path.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    path.pop()


@dataclass(frozen=True)
class MatchingResult:
    """Outcome of :func:`bottleneck`.

    ``pairing`` lists the finite assignments; each side is a ``(birth,
    death)`` tuple or ``None`` for the diagonal.  Diagonal-to-diagonal
    filler pairs are omitted.  ``essential_pairing`` holds
    ``(degree, birth1, birth2)`` triples.
    """

    distance: float
    finite_cost: float
    essential_cost_deg0: float
    essential_cost_deg1: float
    pairing: tuple = ()
    essential_pairing: tuple = ()

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "finite_cost": self.finite_cost,
            "essential_cost_deg0": self.essential_cost_deg0,
            "essential_cost_deg1": self.essential_cost_deg1,
            "pairing": [[_side(a), _side(b)] for a, b in self.pairing],
            "essential_pairing": [list(t) for t in self.essential_pairing],
        }


def _side(p):
    return "diagonal" if p is None else list(p)


def _essential_costs(d1: PersistenceDiagram, d2: PersistenceDiagram):
    costs = {}
    pairing = []
    for degree in ESSENTIAL_DEGREES:
        a, b = d1.essential_births(degree), d2.essential_births(degree)
        if len(a) != len(b):
            raise EssentialMismatch(degree, len(a), len(b))
        # births are stored sorted, so in-order pairing is the optimal one
        costs[degree] = max((abs(x - y) for x, y in zip(a, b)), default=0.0)
        pairing.extend((degree, x, y) for x, y in zip(a, b))
    return costs[0], costs[1], tuple(pairing)


def _point_cost(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag_cost(p) -> float:
    return (p[1] - p[0]) / 2


def _finite_bottleneck(pts1, pts2):
    n1, n2 = len(pts1), len(pts2)
    if n1 == 0 and n2 == 0:
        return 0.0, ()
    diag1 = [_diag_cost(p) for p in pts1]
    diag2 = [_diag_cost(q) for q in pts2]
    if n1 and n2:
        a = np.asarray(pts1, dtype=float)
        b = np.asarray(pts2, dtype=float)
        cross = np.maximum(np.abs(a[:, None, 0] - b[None, :, 0]),
                           np.abs(a[:, None, 1] - b[None, :, 1]))
    else:
        cross = np.zeros((n1, n2))

    # Matching everything to the diagonal is always feasible.
    upper = max(diag1 + diag2)
    candidates = {0.0, *diag1, *diag2}
    candidates.update(float(c) for c in cross[cross <= upper].ravel())
    candidates = sorted(c for c in candidates if c <= upper)

    # Left: points of D1 (0..n1-1), then diagonal copies of D2 points.
    # Right: points of D2 (0..n2-1), then diagonal copies of D1 points.
    order = [np.argsort(cross[i], kind="stable") for i in range(n1)]
    sorted_cross = [cross[i][order[i]] for i in range(n1)]
    diag_right = list(range(n2, n2 + n1))
    n = n1 + n2

    def graph(eps):
        adj = []
        for i in range(n1):
            k = int(np.searchsorted(sorted_cross[i], eps, side="right"))
            nbrs = order[i][:k].tolist()
            if diag1[i] <= eps:
                nbrs.append(n2 + i)
            adj.append(nbrs)
        for j in range(n2):
            nbrs = [j] if diag2[j] <= eps else []
            adj.append(nbrs + diag_right)
        return adj

    lo, hi = 0, len(candidates) - 1
    best, best_at = None, None
    while lo < hi:
        mid = (lo + hi) // 2
        size, match = hopcroft_karp(graph(candidates[mid]), n)
        if size == n:
            hi = mid
            best, best_at = match, mid
        else:
            lo = mid + 1
    eps = candidates[lo]
    if best_at != lo:
        _, best = hopcroft_karp(graph(eps), n)

    pairing = []
    for i in range(n1):
        r = best[i]
        pairing.append((pts1[i], pts2[r] if r < n2 else None))
    for j in range(n2):
        if best[n1 + j] == j:
            pairing.append((None, pts2[j]))
    return eps, tuple(pairing)


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> MatchingResult:
    """Exact matching distance between two diagrams.

    Point-to-point cost is the sup-norm distance of the ``(birth, death)``
    pairs, point-to-diagonal cost is half the persistence.  Raises
    :class:`EssentialMismatch` when the essential multiplicities differ.
    """
    e0, e1, epairs = _essential_costs(d1, d2)
    finite, pairing = _finite_bottleneck(list(d1.finite_pairs_deg0), list(d2.finite_pairs_deg0))
    return MatchingResult(
        distance=max(finite, e0, e1),
        finite_cost=finite,
        essential_cost_deg0=e0,
        essential_cost_deg1=e1,
        pairing=pairing,
        essential_pairing=epairs,
    )


def bottleneck_bruteforce(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Matching distance by enumerating every partial injection between the
    finite point sets; unmatched points go to the diagonal.  Oracle for
    :func:`bottleneck`, limited to 8 finite points in total."""
    pts1, pts2 = list(d1.finite_pairs_deg0), list(d2.finite_pairs_deg0)
    total = len(pts1) + len(pts2)
    if total > BRUTEFORCE_CAP:
        raise TooLarge(total, BRUTEFORCE_CAP)
    e0, e1, _ = _essential_costs(d1, d2)

    best = float("inf")
    n1, n2 = len(pts1), len(pts2)
    # partner[i] in range(n2) or None (diagonal); injective on the matched part
    for partner in itertools.product([None, *range(n2)], repeat=n1):
        used = [j for j in partner if j is not None]
        if len(used) != len(set(used)):
            continue
        cost = 0.0
        for i, j in enumerate(partner):
            c = _diag_cost(pts1[i]) if j is None else _point_cost(pts1[i], pts2[j])
            cost = max(cost, c)
        for j in range(n2):
            if j not in used:
                cost = max(cost, _diag_cost(pts2[j]))
        best = min(best, cost)
    return max(best, e0, e1)
