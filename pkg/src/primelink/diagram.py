"""Linking diagrams of finite sets of primes congruent to 1 mod p."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .residue import (
    InvalidPrimeError,
    check_odd_prime,
    check_tame,
    is_primitive_root,
    linking_number,
    primitive_root,
)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class PrimeSet:
    """Sorted, validated set of tame primes for a fixed odd prime ``p``."""

    p: int
    primes: tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        if not self.primes:
            raise ValueError("prime set must be nonempty")
        for q in self.primes:
            check_tame(q, self.p)
        for a, b in zip(self.primes, self.primes[1:]):
            if a >= b:
                raise InvalidPrimeError(b, "primes must be distinct and ascending")

    @classmethod
    def of(cls, p: int, primes: Iterable[int]) -> "PrimeSet":
        primes = list(primes)
        seen = set()
        for q in primes:
            if q in seen:
                raise InvalidPrimeError(q, "duplicate prime")
            seen.add(q)
        return cls(p, tuple(sorted(primes)))

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, q) -> bool:
        return q in self.primes


@dataclass(frozen=True)
class LinkingDiagram:
    """Directed graph on ``primes`` with the matrix of linking numbers.

    ``ell[i][j]`` is the linking number of ``(primes[i], primes[j])`` for the
    recorded ``roots``; the diagonal holds ``None``.
    """

    p: int
    primes: tuple[int, ...]
    roots: tuple[int, ...]
    ell: tuple[tuple[Optional[int], ...], ...]

    @property
    def n(self) -> int:
        return len(self.primes)

    @property
    def prime_set(self) -> PrimeSet:
        return PrimeSet(self.p, self.primes)

    @property
    def root_map(self) -> dict[int, int]:
        return dict(zip(self.primes, self.roots))

    def index(self, q: int) -> int:
        try:
            return self.primes.index(q)
        except ValueError:
            raise KeyError(f"{q} is not in the diagram") from None

    def linking(self, r: int, s: int) -> int:
        if r == s:
            raise ValueError("linking number is undefined for r = s")
        return self.ell[self.index(r)][self.index(s)]

    def has_edge(self, r: int, s: int) -> bool:
        return self.linking(r, s) != 0

    def edge_at(self, i: int, j: int) -> bool:
        return i != j and self.ell[i][j] != 0

    def edges(self) -> list[tuple[int, int]]:
        """Edges as prime pairs in lexicographic order."""
        return [
            (self.primes[i], self.primes[j])
            for i in range(self.n)
            for j in range(self.n)
            if self.edge_at(i, j)
        ]

    def restrict(self, subset: Iterable[int]) -> "LinkingDiagram":
        """Sub-diagram on ``subset`` keeping the same primitive roots."""
        idx = sorted(self.index(q) for q in set(subset))
        return LinkingDiagram(
            self.p,
            tuple(self.primes[i] for i in idx),
            tuple(self.roots[i] for i in idx),
            tuple(tuple(self.ell[i][j] for j in idx) for i in idx),
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "primes": list(self.primes),
            "roots": {str(q): g for q, g in zip(self.primes, self.roots)},
            "matrix": [list(row) for row in self.ell],
            "edges": [list(e) for e in self.edges()],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "LinkingDiagram":
        primes = tuple(int(q) for q in data["primes"])
        roots = tuple(int(data["roots"][str(q)]) for q in primes)
        ell = tuple(
            tuple(None if v is None else int(v) for v in row) for row in data["matrix"]
        )
        if len(ell) != len(primes) or any(len(row) != len(primes) for row in ell):
            raise ValueError("matrix shape does not match the prime list")
        return cls(int(data["p"]), primes, roots, ell)

    @classmethod
    def from_json(cls, text: str) -> "LinkingDiagram":
        return cls.from_dict(json.loads(text))

    def to_dot(self) -> str:
        lines = [f'digraph "linking_p{self.p}" {{']
        for q in self.primes:
            lines.append(f'  "{q}" [label="{q}"];')
        for i in range(self.n):
            for j in range(self.n):
                if self.edge_at(i, j):
                    r, s = self.primes[i], self.primes[j]
                    lines.append(f'  "{r}" -> "{s}" [label="{self.ell[i][j]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_diagram(
    p: int,
    primes: PrimeSet | Iterable[int],
    roots: Optional[Mapping[int, int]] = None,
) -> LinkingDiagram:
    """Linking diagram of ``primes`` at ``p``.

    ``roots`` overrides the primitive root used for any member; the default
    is the smallest primitive root.
    """
    pset = primes if isinstance(primes, PrimeSet) else PrimeSet.of(p, primes)
    if pset.p != p:
        raise ValueError(f"prime set is for p = {pset.p}, not {p}")
    roots = dict(roots or {})
    chosen = []
    for s in pset.primes:
        g = roots.get(s)
        if g is None:
            g = primitive_root(s)
        elif not is_primitive_root(g, s):
            raise ValueError(f"{g} is not a primitive root mod {s}")
        chosen.append(g % s)
    qs = pset.primes
    ell = tuple(
        tuple(
            None if i == j else linking_number(qs[i], qs[j], p, chosen[j])
            for j in range(len(qs))
        )
        for i in range(len(qs))
    )
    return LinkingDiagram(p, qs, tuple(chosen), ell)


def has_edge(d: LinkingDiagram, r: int, s: int) -> bool:
    return d.has_edge(r, s)


def parse_prime_list(text: str | Sequence[int]) -> list[int]:
    """Parse ``"7,13,19"`` into integers."""
    if not isinstance(text, str):
        return [int(x) for x in text]
    parts = [t.strip() for t in text.split(",") if t.strip()]
    if not parts:
        raise ValueError("empty prime list")
    return [int(t) for t in parts]
