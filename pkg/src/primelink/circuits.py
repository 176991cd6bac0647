"""Non-singular circuits and strict circularity.

An ordering q_1, ..., q_n of a diagram's primes passes when

  (a) q_1 -> q_2 -> ... -> q_n -> q_1 are all edges (forward direction),
  (b) no edge joins two primes sitting at odd (1-based) positions, and
  (c) the forward cyclic product of linking numbers differs from the
      backward one in F_p.

Orderings are tuples of indices into ``LinkingDiagram.primes``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import LinkingDiagram


@dataclass(frozen=True)
class CircuitVerdict:
    ordering: tuple[int, ...]
    cond_a: bool
    missing_edges: tuple[tuple[int, int], ...]
    cond_b_violations: tuple[tuple[int, int], ...]
    lhs: int
    rhs: int

    @property
    def cond_c(self) -> bool:
        return self.lhs != self.rhs

    @property
    def passed(self) -> bool:
        return self.cond_a and not self.cond_b_violations and self.cond_c

    def to_dict(self, d: Optional[LinkingDiagram] = None) -> dict:
        out = {
            "ordering": list(self.ordering),
            "cond_a": self.cond_a,
            "missing_edges": [list(e) for e in self.missing_edges],
            "cond_b_violations": [list(e) for e in self.cond_b_violations],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "cond_c": self.cond_c,
            "pass": self.passed,
            "circuit_direction": "forward",
        }
        if d is not None:
            out["ordering_primes"] = [d.primes[i] for i in self.ordering]
        return out


def _check_permutation(n: int, ordering: Sequence[int]) -> tuple[int, ...]:
    o = tuple(int(i) for i in ordering)
    if n < 1:
        raise ValueError("empty diagram has no orderings")
    if sorted(o) != list(range(n)):
        raise ValueError(f"{list(o)} is not a permutation of 0..{n - 1}")
    return o


def check_ordering(d: LinkingDiagram, ordering: Sequence[int]) -> CircuitVerdict:
    o = _check_permutation(d.n, ordering)
    n = len(o)
    if n == 1:
        # A single prime has no edges, and the products are empty in a way
        # that must not count as non-singular.
        return CircuitVerdict(o, False, ((o[0], o[0]),), (), 0, 0)

    missing = tuple(
        (o[k], o[(k + 1) % n]) for k in range(n) if not d.edge_at(o[k], o[(k + 1) % n])
    )
    odd = o[0::2]  # 1-based odd positions
    violations = tuple((i, j) for i in odd for j in odd if d.edge_at(i, j))
    p = d.p
    lhs = rhs = 1
    for k in range(n):
        i, j = o[k], o[(k + 1) % n]
        lhs = lhs * d.ell[i][j] % p
        rhs = rhs * d.ell[j][i] % p
    return CircuitVerdict(o, not missing, missing, violations, lhs, rhs)


def ordering_of(d: LinkingDiagram, primes: Sequence[int]) -> tuple[int, ...]:
    """Translate an ordering given as primes into diagram indices."""
    return tuple(d.index(q) for q in primes)


def find_nonsingular_circuit(d: LinkingDiagram) -> Optional[tuple[int, ...]]:
    """Lexicographically least passing ordering, or None.

    Depth-first over all permutations in lexicographic order, cutting a
    branch as soon as a forward edge is missing or two odd positions are
    joined by an edge. Fixing the first element is not sound here: rotating
    by one position swaps the odd and even classes, so condition (b) is only
    invariant under rotation by two.
    """
    n = d.n
    if n < 4 or n % 2:
        return None
    adj = [[d.edge_at(i, j) for j in range(n)] for i in range(n)]
    path: list[int] = []
    used = [False] * n
    odd: list[int] = []

    def extend() -> bool:
        k = len(path)  # 0-based slot to fill; slot k is odd 1-based when k even
        if k == n:
            if not adj[path[-1]][path[0]]:
                return False
            return check_ordering(d, path).passed
        for v in range(n):
            if used[v]:
                continue
            if k and not adj[path[-1]][v]:
                continue
            at_odd = k % 2 == 0
            if at_odd and any(adj[v][u] or adj[u][v] for u in odd):
                continue
            used[v] = True
            path.append(v)
            if at_odd:
                odd.append(v)
            if extend():
                return True
            if at_odd:
                odd.pop()
            path.pop()
            used[v] = False
        return False

    return tuple(path) if extend() else None


def is_strictly_circular(d: LinkingDiagram) -> bool:
    return find_nonsingular_circuit(d) is not None
