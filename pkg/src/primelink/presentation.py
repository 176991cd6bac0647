"""Koch presentations of G_S(p) read off a linking diagram.

Relation i is  x_i^(q_i - 1) * prod_{j != i} [x_i, x_j]^(l_ij)  modulo the
third step of the lower p-central series.  There are as many relations as
generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkingDiagram, canonical_json


@dataclass(frozen=True)
class Relation:
    index: int  # 1-based, matches the generator x_index
    exponent: int
    exponent_mod_p2: int
    commutators: tuple[tuple[int, int], ...]  # (j, l_ij), 1-based j, nonzero only

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "exponent": self.exponent,
            "exponent_mod_p2": self.exponent_mod_p2,
            "commutator_exponents": [list(c) for c in self.commutators],
        }


@dataclass(frozen=True)
class KochPresentation:
    p: int
    primes: tuple[int, ...]
    roots: tuple[int, ...]
    relations: tuple[Relation, ...]

    @property
    def n(self) -> int:
        return len(self.primes)

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.n + 1))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "generators": [
                {"name": g, "prime": q, "root": r}
                for g, q, r in zip(self.generators, self.primes, self.roots)
            ],
            "relations": [r.to_dict() for r in self.relations],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def koch_presentation(d: LinkingDiagram) -> KochPresentation:
    p2 = d.p * d.p
    rels = []
    for i, q in enumerate(d.primes):
        comms = tuple(
            (j + 1, d.ell[i][j]) for j in range(d.n) if j != i and d.ell[i][j] != 0
        )
        rels.append(Relation(i + 1, q - 1, (q - 1) % p2, comms))
    return KochPresentation(d.p, d.primes, d.roots, tuple(rels))


def render_presentation(pres: KochPresentation) -> str:
    """One line per relation, e.g. ``r1 = x1^6 [x1,x2]^1    (x1=7; x2=13)``."""
    lines = []
    for rel in pres.relations:
        i = rel.index
        terms = [f"x{i}^{rel.exponent}"]
        terms += [f"[x{i},x{j}]^{e}" for j, e in rel.commutators]
        used = [i] + [j for j, _ in rel.commutators]
        note = "; ".join(f"x{k}={pres.primes[k - 1]}" for k in sorted(used))
        lines.append(f"r{i} = {' '.join(terms)}    ({note})")
    return "\n".join(lines) + "\n"
