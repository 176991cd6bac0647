"""Modular arithmetic for small primes: primality, orders, primitive roots,
discrete logarithms, p-th power residues and linking numbers.

Python integers never overflow, so the products below are exact for any
64-bit modulus without split multiplication.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

# Deterministic below 3.18 * 10**23, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_LINEAR_DLOG_LIMIT = 1 << 16


class InvalidPrimeError(ValueError):
    """A prime (or would-be prime) failed a precondition.

    ``value`` holds the offending integer so callers can report it.
    """

    def __init__(self, value: int, reason: str):
        super().__init__(f"{value}: {reason}")
        self.value = value
        self.reason = reason


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise InvalidPrimeError(p, "not an odd prime")
    return p


def check_tame(q: int, p: int) -> int:
    """Validate that ``q`` is a prime congruent to 1 mod ``p`` and distinct from it."""
    if not isinstance(q, int) or not is_prime(q):
        raise InvalidPrimeError(q, "not prime")
    if q == p:
        raise InvalidPrimeError(q, f"equals p = {p}")
    if q % p != 1:
        raise InvalidPrimeError(q, f"not congruent to 1 mod {p}")
    return q


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def multiplicative_order(a: int, q: int) -> int:
    """Order of ``a`` in (Z/qZ)^x for prime ``q``."""
    a %= q
    if a == 0:
        raise ValueError(f"{q} divides the element; no multiplicative order")
    order = q - 1
    for f in prime_factors(q - 1):
        while order % f == 0 and pow(a, order // f, q) == 1:
            order //= f
    return order


def is_primitive_root(g: int, s: int) -> bool:
    g %= s
    if g == 0:
        return False
    return all(pow(g, (s - 1) // f, s) != 1 for f in prime_factors(s - 1))


@lru_cache(maxsize=4096)
def primitive_root(s: int) -> int:
    """Smallest primitive root modulo the odd prime ``s``."""
    if s < 3 or not is_prime(s):
        raise InvalidPrimeError(s, "not an odd prime")
    g = 2
    while not is_primitive_root(g, s):
        g += 1
    return g


def discrete_log(g: int, r: int, s: int) -> int:
    """The unique ``x`` in ``[0, s-1)`` with ``g**x == r (mod s)``.

    Raises ValueError when no solution exists, which for a unit ``r`` means
    ``g`` does not generate the group.
    """
    g %= s
    r %= s
    if r == 0:
        raise ValueError(f"{s} divides {r}; logarithm undefined")
    n = s - 1
    if s < _LINEAR_DLOG_LIMIT:
        x, y = 0, 1
        while x < n:
            if y == r:
                return x
            y = y * g % s
            x += 1
            if y == 1:
                break
        raise ValueError(f"{r} is not a power of {g} mod {s}")

    m = isqrt(n - 1) + 1  # ceil(sqrt(n))
    baby: dict[int, int] = {}
    e = 1
    for j in range(m):
        baby.setdefault(e, j)
        e = e * g % s
    step = pow(g, -m, s)
    y = r
    for i in range(m):
        j = baby.get(y)
        if j is not None:
            x = i * m + j
            if x < n:
                return x
        y = y * step % s
    raise ValueError(f"{r} is not a power of {g} mod {s}")


def _check_residue_args(r: int, s: int, p: int) -> None:
    if (s - 1) % p != 0:
        raise ValueError(f"{s} is not congruent to 1 mod {p}")
    if r % s == 0:
        raise ValueError(f"{s} divides {r}")


def is_pth_power(r: int, s: int, p: int) -> bool:
    """Euler criterion: ``r`` is a p-th power mod ``s`` iff r^((s-1)/p) = 1."""
    _check_residue_args(r, s, p)
    return pow(r, (s - 1) // p, s) == 1


def order_divisible_by(r: int, s: int, p: int) -> bool:
    """True when p divides the multiplicative order of ``r`` mod ``s``."""
    return multiplicative_order(r, s) % p == 0


def linking_number(r: int, s: int, p: int, g_s: int) -> int:
    """Class mod ``p`` of ``-c`` where ``r == g_s**(-c) (mod s)``."""
    _check_residue_args(r, s, p)
    return -discrete_log(g_s, r, s) % p


def rescale_root(g: int, a: int, s: int) -> int:
    """``g**a mod s``; a primitive root again whenever gcd(a, s-1) == 1."""
    if gcd(a, s - 1) != 1:
        raise ValueError(f"exponent {a} is not a unit mod {s - 1}")
    return pow(g, a, s)
