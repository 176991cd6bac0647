"""Searching the progression 1 mod p for primes with prescribed edges.

Candidates are scanned in ascending order and tested one by one; the
p-th power condition is a subgroup condition, so there is no single residue
class to sieve on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .certification import (
    EdgeMode,
    Certificate,
    certificate_problems,
    certify,
    extend_certificate,
    going_up_ok,
)
from .circuits import find_nonsingular_circuit
from .diagram import LinkingDiagram, PrimeSet
from .residue import check_odd_prime, is_prime, is_pth_power, linking_number, primitive_root

NEW_TO_OTHER = "new_to_other"
OTHER_TO_NEW = "other_to_new"


class SearchExhausted(RuntimeError):
    """The budget ran out. ``partial`` holds whatever was built so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SearchBudget:
    max_candidates: int = 100_000
    upper_bound: int = 1 << 32

    def __post_init__(self):
        if self.max_candidates <= 0 or self.upper_bound <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class EdgeConstraint:
    other: int
    direction: str  # NEW_TO_OTHER or OTHER_TO_NEW
    required: bool = True

    def __post_init__(self):
        if self.direction not in (NEW_TO_OTHER, OTHER_TO_NEW):
            raise ValueError(f"unknown direction {self.direction!r}")

    def holds(self, q: int, p: int) -> bool:
        if self.direction == NEW_TO_OTHER:
            edge = not is_pth_power(q, self.other, p)
        else:
            edge = not is_pth_power(self.other, q, p)
        return edge == self.required

    def __str__(self) -> str:
        body = f"q->{self.other}" if self.direction == NEW_TO_OTHER else f"{self.other}->q"
        return body if self.required else "!" + body


_CONSTRAINT_RE = re.compile(r"^\s*(!?)\s*(q|\d+)\s*->\s*(q|\d+)\s*$")


def parse_constraint(text: str) -> EdgeConstraint:
    """Parse ``"q->7"``, ``"19->q"`` or a ``!``-prefixed forbidden edge."""
    m = _CONSTRAINT_RE.match(text)
    if not m or (m.group(2) == "q") == (m.group(3) == "q"):
        raise ValueError(f"bad constraint {text!r}; expected 'q->s', 's->q' or '!'-prefixed")
    required = m.group(1) != "!"
    if m.group(2) == "q":
        return EdgeConstraint(int(m.group(3)), NEW_TO_OTHER, required)
    return EdgeConstraint(int(m.group(2)), OTHER_TO_NEW, required)


def _normalize_constraints(S: Sequence[int], constraints: Sequence[EdgeConstraint]) -> list[EdgeConstraint]:
    seen: dict[tuple[int, str], EdgeConstraint] = {}
    for c in constraints:
        if c.other not in S:
            raise ValueError(f"constraint references {c.other}, which is not in S")
        key = (c.other, c.direction)
        prev = seen.get(key)
        if prev is not None and prev.required != c.required:
            raise ValueError(f"contradictory constraints on {c.other} ({c.direction})")
        seen[key] = c
    return list(seen.values())


def progression_primes(p: int, start: int = 2, stop: Optional[int] = None) -> Iterator[int]:
    """Primes q = 1 mod p with start <= q <= stop, ascending."""
    q = start + (1 - start) % p
    if q % 2 == 0:
        q += p
    while stop is None or q <= stop:
        if q != p and is_prime(q):
            yield q
        q += 2 * p


def find_prime(
    p: int,
    S: PrimeSet | Sequence[int],
    constraints: Sequence[EdgeConstraint] = (),
    budget: SearchBudget = SearchBudget(),
    count: int = 1,
) -> list[int]:
    """Up to ``count`` smallest primes 1 mod p outside ``S`` meeting every constraint.

    Each progression prime outside ``S`` that gets tested counts against
    ``budget.max_candidates``; the result may be shorter (or empty) when the
    budget runs out.
    """
    check_odd_prime(p)
    primes = S.primes if isinstance(S, PrimeSet) else tuple(sorted(S))
    cons = _normalize_constraints(primes, constraints)
    members = set(primes)
    found: list[int] = []
    tested = 0
    for q in progression_primes(p, stop=budget.upper_bound):
        if q in members:
            continue
        if tested >= budget.max_candidates or len(found) >= count:
            break
        tested += 1
        if all(c.holds(q, p) for c in cons):
            found.append(q)
    return found


def _next_going_up(cert, mode, budget) -> Optional[tuple[int, int]]:
    members = set(cert.S)
    tested = 0
    for q in progression_primes(cert.p, stop=budget.upper_bound):
        if q in members:
            continue
        if tested >= budget.max_candidates:
            return None
        tested += 1
        witness = going_up_ok(cert.p, cert.S, q, mode)
        if witness is not None:
            return q, witness
    return None


def extend_set(
    cert: Certificate,
    count: int,
    mode: EdgeMode | str = EdgeMode.STRONG,
    budget: SearchBudget = SearchBudget(),
) -> Certificate:
    """Grow a certified set by ``count`` primes, smallest admissible first.

    Raises SearchExhausted (carrying the partially extended certificate) if
    some step finds nothing within ``budget``.
    """
    problems = certificate_problems(cert)
    if problems:
        raise ValueError(f"input certificate does not verify: {problems}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    mode = EdgeMode(mode)
    for k in range(count):
        step = _next_going_up(cert, mode, budget)
        if step is None:
            raise SearchExhausted(f"budget exhausted after adding {k} of {count} primes", partial=cert)
        cert = extend_certificate(cert, *step, mode)
    problems = certificate_problems(cert)
    if problems:  # pragma: no cover - each step is checked when chosen
        raise AssertionError(f"extended certificate failed verification: {problems}")
    return cert


def construct_circular_set(
    p: int,
    n: int,
    budget: SearchBudget = SearchBudget(),
    mode: EdgeMode | str = EdgeMode.STRONG,
) -> Certificate:
    """Certified set of size ``n``: first strictly circular 4-set, then going-up.

    4-subsets of the progression are scanned by ascending largest element,
    lexicographically among the rest.
    """
    check_odd_prime(p)
    if n < 4 or n % 2:
        raise ValueError(f"n must be even and at least 4, got {n}")
    pool: list[int] = []
    roots: dict[int, int] = {}
    ell: dict[tuple[int, int], int] = {}
    found: Optional[tuple[int, ...]] = None
    for q in progression_primes(p, stop=budget.upper_bound):
        if len(pool) >= budget.max_candidates:
            break
        roots[q] = primitive_root(q)
        for r in pool:
            ell[r, q] = linking_number(r, q, p, roots[q])
            ell[q, r] = linking_number(q, r, p, roots[r])
        for rest in combinations(pool, 3):
            quad = rest + (q,)
            d = LinkingDiagram(
                p,
                quad,
                tuple(roots[x] for x in quad),
                tuple(tuple(None if a == b else ell[a, b] for b in quad) for a in quad),
            )
            if find_nonsingular_circuit(d) is not None:
                found = quad
                break
        if found:
            break
        pool.append(q)
    if found is None:
        raise SearchExhausted(f"no strictly circular 4-set within budget for p = {p}")
    cert = certify(p, found, mode)
    assert cert is not None
    return extend_set(cert, n - 4, mode, budget)
