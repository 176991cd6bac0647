"""Certificates that a prime set S has cd G_S(p) = 2.

A certificate names a strictly circular subset T of S, a passing ordering
of T, and a chain adding the remaining primes one at a time.  Every added
prime carries a witness already present (in T or added earlier) satisfying
the step predicate of its mode:

* ``strong``: the added prime is not a p-th power modulo the witness,
* ``weak``:   p divides the order of the added prime modulo the witness.

Strong implies weak.  The conclusions block is a fixed literal; nothing
here computes cohomology.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .circuits import check_ordering, find_nonsingular_circuit
from .diagram import LinkingDiagram, PrimeSet, build_diagram, canonical_json
from .residue import (
    check_odd_prime,
    check_tame,
    is_primitive_root,
    is_pth_power,
    order_divisible_by,
    primitive_root,
)

CERTIFICATE_VERSION = 1


class EdgeMode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


def step_holds(q: int, witness: int, p: int, mode: EdgeMode | str) -> bool:
    """Chain-step predicate for adding ``q`` with ``witness`` already present."""
    mode = EdgeMode(mode)
    if q == witness:
        return False
    if mode is EdgeMode.STRONG:
        return not is_pth_power(q, witness, p)
    return order_divisible_by(q, witness, p)


def conclusions_for(primes: Sequence[int]) -> dict:
    return {
        "cd": 2,
        "scd": 3,
        "duality_group_dimension": 2,
        "k_pi_1": True,
        "local_realization": list(primes),
    }


@dataclass(frozen=True)
class ChainStep:
    prime: int
    witness: int
    mode: EdgeMode = EdgeMode.STRONG

    def to_dict(self) -> dict:
        return {"prime": self.prime, "witness": self.witness, "mode": EdgeMode(self.mode).value}


@dataclass(frozen=True)
class Certificate:
    p: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    ordering: tuple[int, ...]  # primes of T in circuit order
    roots: Mapping[int, int]
    chain: tuple[ChainStep, ...]
    conclusions: Mapping = field(default_factory=dict)
    version: int = CERTIFICATE_VERSION

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "S": list(self.S),
            "T": list(self.T),
            "ordering": list(self.ordering),
            "circuit_direction": "forward",
            "roots": {str(q): g for q, g in sorted(self.roots.items())},
            "chain": [s.to_dict() for s in self.chain],
            "conclusions": dict(self.conclusions),
            "version": self.version,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "Certificate":
        try:
            return cls(
                p=int(data["p"]),
                S=tuple(int(q) for q in data["S"]),
                T=tuple(int(q) for q in data["T"]),
                ordering=tuple(int(q) for q in data["ordering"]),
                roots={int(k): int(v) for k, v in data["roots"].items()},
                chain=tuple(
                    ChainStep(int(s["prime"]), int(s["witness"]), EdgeMode(s["mode"]))
                    for s in data["chain"]
                ),
                conclusions=dict(data["conclusions"]),
                version=int(data["version"]),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def with_mode(self, mode: EdgeMode | str) -> "Certificate":
        mode = EdgeMode(mode)
        return replace(self, chain=tuple(replace(s, mode=mode) for s in self.chain))


def _mode_adjacency(d: LinkingDiagram, mode: EdgeMode) -> list[list[int]]:
    """``out[i]`` lists j with an edge i -> j of the given mode."""
    n = d.n
    if mode is EdgeMode.STRONG:
        return [[j for j in range(n) if d.edge_at(i, j)] for i in range(n)]
    qs = d.primes
    return [
        [j for j in range(n) if j != i and order_divisible_by(qs[i], qs[j], d.p)]
        for i in range(n)
    ]


def _distances(d: LinkingDiagram, T: Iterable[int], mode: EdgeMode):
    targets = {d.index(q) for q in T}
    if not targets:
        raise ValueError("target subset T must be nonempty")
    out = _mode_adjacency(d, mode)
    into: list[list[int]] = [[] for _ in range(d.n)]
    for i, js in enumerate(out):
        for j in js:
            into[j].append(i)
    dist = {i: 0 for i in targets}
    queue = deque(sorted(targets))
    while queue:
        j = queue.popleft()
        for i in into[j]:
            if i not in dist:
                dist[i] = dist[j] + 1
                queue.append(i)
    return dist, out


def reachable_to(d: LinkingDiagram, T: Iterable[int], mode: EdgeMode | str = EdgeMode.STRONG) -> frozenset[int]:
    """Primes of ``d`` with a directed path (of the given mode) into ``T``."""
    dist, _ = _distances(d, T, EdgeMode(mode))
    return frozenset(d.primes[i] for i in dist)


def build_chain(
    d: LinkingDiagram, T: Iterable[int], mode: EdgeMode | str = EdgeMode.STRONG
) -> Optional[tuple[ChainStep, ...]]:
    """Steps adding every prime outside ``T``, nearest first; None if some prime cannot reach ``T``."""
    mode = EdgeMode(mode)
    dist, out = _distances(d, T, mode)
    if len(dist) < d.n:
        return None
    qs = d.primes
    pending = sorted((k, qs[i], i) for i, k in dist.items() if k > 0)
    steps = []
    for k, q, i in pending:
        witness = min(qs[j] for j in out[i] if dist.get(j) == k - 1)
        steps.append(ChainStep(q, witness, mode))
    return tuple(steps)


def unreachable(d: LinkingDiagram, T: Iterable[int], mode: EdgeMode | str = EdgeMode.STRONG) -> list[int]:
    reach = reachable_to(d, T, mode)
    return [q for q in d.primes if q not in reach]


def _certificate_for(d: LinkingDiagram, T: Sequence[int], mode: EdgeMode) -> Optional[Certificate]:
    sub = d.restrict(T)
    circuit = find_nonsingular_circuit(sub)
    if circuit is None:
        return None
    chain = build_chain(d, T, mode)
    if chain is None:
        return None
    return Certificate(
        p=d.p,
        S=d.primes,
        T=sub.primes,
        ordering=tuple(sub.primes[i] for i in circuit),
        roots=d.root_map,
        chain=chain,
        conclusions=conclusions_for(d.primes),
    )


def certify(
    p: int,
    S: PrimeSet | Iterable[int],
    mode: EdgeMode | str = EdgeMode.STRONG,
    roots: Optional[Mapping[int, int]] = None,
) -> Optional[Certificate]:
    """First certificate found scanning subsets T by even size from 4, then lexicographically."""
    mode = EdgeMode(mode)
    d = build_diagram(p, S, roots)
    for size in range(4, d.n + 1, 2):
        for T in combinations(d.primes, size):
            cert = _certificate_for(d, T, mode)
            if cert is not None:
                return cert
    return None


def certify_subset(
    p: int,
    S: PrimeSet | Iterable[int],
    T: Iterable[int],
    mode: EdgeMode | str = EdgeMode.STRONG,
    roots: Optional[Mapping[int, int]] = None,
) -> Optional[Certificate]:
    """Certificate built on the given ``T``, or None if ``T`` does not work."""
    d = build_diagram(p, S, roots)
    T = sorted(set(T))
    if not T:
        raise ValueError("T must be nonempty")
    missing = [q for q in T if q not in d.primes]
    if missing:
        raise ValueError(f"T is not a subset of S: {missing}")
    return _certificate_for(d, T, EdgeMode(mode))


def diagnose(p: int, S: PrimeSet | Iterable[int], mode: EdgeMode | str = EdgeMode.STRONG) -> dict:
    """Why ``certify`` failed: circular subsets found and the primes they cannot reach."""
    mode = EdgeMode(mode)
    d = build_diagram(p, S)
    circular = []
    for size in range(4, d.n + 1, 2):
        for T in combinations(d.primes, size):
            if find_nonsingular_circuit(d.restrict(T)) is not None:
                circular.append({"T": list(T), "unreachable": unreachable(d, T, mode)})
    reason = "unreachable primes" if circular else "no strictly circular subset"
    return {"p": p, "S": list(d.primes), "mode": mode.value, "reason": reason, "circular_subsets": circular}


def certificate_problems(c: Certificate) -> list[str]:
    """Independent re-check of every claim in ``c``; empty list means valid."""
    problems: list[str] = []
    try:
        check_odd_prime(c.p)
    except ValueError as exc:
        return [f"p: {exc}"]
    if c.version != CERTIFICATE_VERSION:
        problems.append(f"unsupported version {c.version}")
    if list(c.S) != sorted(set(c.S)) or not c.S:
        problems.append("S must be nonempty, distinct and ascending")
    for q in set(c.S):
        try:
            check_tame(q, c.p)
        except ValueError as exc:
            problems.append(f"S: {exc}")
    if problems:
        return problems

    S = set(c.S)
    T = set(c.T)
    if not T:
        problems.append("T is empty")
    if not T <= S:
        problems.append(f"T not contained in S: {sorted(T - S)}")
    if list(c.T) != sorted(T):
        problems.append("T must be distinct and ascending")
    if sorted(c.ordering) != sorted(T) or len(c.ordering) != len(T):
        problems.append("ordering is not a permutation of T")
    roots = {}
    for q in c.S:
        g = c.roots.get(q)
        if g is None:
            g = primitive_root(q)
        elif not is_primitive_root(g, q):
            problems.append(f"{g} is not a primitive root mod {q}")
            g = primitive_root(q)
        roots[q] = g
    if problems:
        return problems

    d = build_diagram(c.p, sorted(T), {q: roots[q] for q in T})
    verdict = check_ordering(d, [d.index(q) for q in c.ordering])
    if not verdict.cond_a:
        problems.append(f"circuit edges missing: {[(d.primes[i], d.primes[j]) for i, j in verdict.missing_edges]}")
    if verdict.cond_b_violations:
        problems.append(
            f"edges between odd positions: {[(d.primes[i], d.primes[j]) for i, j in verdict.cond_b_violations]}"
        )
    if not verdict.cond_c:
        problems.append(f"singular circuit: both cyclic products equal {verdict.lhs}")

    present = set(T)
    added = []
    for step in c.chain:
        if step.prime not in S or step.prime in present:
            problems.append(f"step adds {step.prime}, which is not a new member of S")
            continue
        if step.witness not in present:
            problems.append(f"witness {step.witness} for {step.prime} is not yet present")
        elif not step_holds(step.prime, step.witness, c.p, step.mode):
            problems.append(f"step ({step.prime}, {step.witness}) fails the {EdgeMode(step.mode).value} predicate")
        present.add(step.prime)
        added.append(step.prime)
    if present != S:
        problems.append(f"chain never adds {sorted(S - present)}")

    if dict(c.conclusions) != conclusions_for(c.S):
        problems.append("conclusions block does not match the fixed report")
    return problems


def verify_certificate(c: Certificate) -> bool:
    return not certificate_problems(c)


def going_up_ok(
    p: int, S: PrimeSet | Iterable[int], ell: int, mode: EdgeMode | str = EdgeMode.STRONG
) -> Optional[int]:
    """Smallest ``q`` in ``S`` that witnesses adding ``ell``, or None."""
    check_odd_prime(p)
    check_tame(ell, p)
    primes = S.primes if isinstance(S, PrimeSet) else sorted(S)
    if ell in primes:
        raise ValueError(f"{ell} is already in S")
    for q in primes:
        if step_holds(ell, q, p, mode):
            return q
    return None


def extend_certificate(c: Certificate, ell: int, witness: int, mode: EdgeMode | str) -> Certificate:
    """Append one going-up step; the caller is responsible for the predicate."""
    S = tuple(sorted(c.S + (ell,)))
    roots = dict(c.roots)
    roots[ell] = primitive_root(ell)
    return replace(
        c,
        S=S,
        roots=roots,
        chain=c.chain + (ChainStep(ell, witness, EdgeMode(mode)),),
        conclusions=conclusions_for(S),
    )
