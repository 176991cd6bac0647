import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from primelink.residue import (
    InvalidPrimeError,
    check_tame,
    discrete_log,
    is_prime,
    is_primitive_root,
    is_pth_power,
    linking_number,
    multiplicative_order,
    primitive_root,
    rescale_root,
)
from oracles import brute_dlog, brute_order, brute_primitive_root, pth_powers, tame_primes, trial_is_prime


@pytest.mark.parametrize("n, expected", [(163, True), (1, False), (341, False), (0, False), (2, True), (3, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if trial_is_prime(n)]


@pytest.mark.parametrize(
    "n",
    [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
     341550071728321, 3825123056546413051],
)
def test_strong_pseudoprimes_rejected(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2**31 - 1, 2**61 - 1, 18446744073709551557, 4294967311])
def test_large_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("a, q, expected", [(13, 61, 3), (1, 19, 1), (2, 7, 3)])
def test_multiplicative_order_examples(a, q, expected):
    assert multiplicative_order(a, q) == expected


def test_multiplicative_order_rejects_multiple():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


@given(st.sampled_from(tame_primes(2, 3000)), st.integers(1, 10**6))
def test_order_divides_and_is_minimal(q, a):
    if a % q == 0:
        return
    d = multiplicative_order(a, q)
    assert (q - 1) % d == 0
    assert pow(a, d, q) == 1
    assert all(pow(a, e, q) != 1 for e in range(1, d) if d % e == 0)
    if q < 800:
        assert d == brute_order(a, q)


@pytest.mark.parametrize("s, g", [(7, 3), (13, 2), (5, 2)])
def test_primitive_root_examples(s, g):
    assert primitive_root(s) == g


@pytest.mark.parametrize("s", [q for q in range(3, 600) if trial_is_prime(q)])
def test_primitive_root_is_smallest(s):
    assert primitive_root(s) == brute_primitive_root(s)


@pytest.mark.parametrize("g, r, s, x", [(3, 5, 7, 5), (3, 1, 7, 0), (2, 6, 13, 5)])
def test_discrete_log_examples(g, r, s, x):
    assert discrete_log(g, r, s) == x


def test_discrete_log_non_generator_raises():
    # 2 has order 3 mod 7, so 3 is unreachable
    with pytest.raises(ValueError):
        discrete_log(2, 3, 7)


def test_discrete_log_agrees_with_enumeration_small():
    for s in (7, 13, 61, 163, 1009):
        g = primitive_root(s)
        for r in range(1, s):
            assert discrete_log(g, r, s) == brute_dlog(g, r, s)


@pytest.mark.parametrize("s", [65537, 1000003, 4294967311])
def test_bsgs_round_trip_large(s):
    rng = random.Random(s)
    g = primitive_root(s)
    for _ in range(50):
        x = rng.randrange(s - 1)
        assert discrete_log(g, pow(g, x, s), s) == x


def test_bsgs_non_generator_raises():
    s = 65537
    g = pow(primitive_root(s), 2, s)  # generates the squares only
    with pytest.raises(ValueError):
        discrete_log(g, primitive_root(s), s)


@pytest.mark.parametrize("r, s, p, expected", [(13, 7, 3, True), (19, 7, 3, False), (1, 7, 3, True)])
def test_is_pth_power_examples(r, s, p, expected):
    assert is_pth_power(r, s, p) is expected


def test_is_pth_power_errors():
    with pytest.raises(ValueError):
        is_pth_power(2, 11, 3)  # 11 is not 1 mod 3
    with pytest.raises(ValueError):
        is_pth_power(14, 7, 3)


@pytest.mark.parametrize(
    "r, s, p, g, expected", [(19, 7, 3, 3, 1), (13, 7, 3, 3, 0), (7, 13, 3, 2, 1)]
)
def test_linking_number_examples(r, s, p, g, expected):
    assert linking_number(r, s, p, g) == expected


@settings(max_examples=300)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_linking_zero_iff_pth_power(p, data):
    s = data.draw(st.sampled_from(tame_primes(p, 2000)))
    r = data.draw(st.integers(1, 10**5).filter(lambda r: r % s))
    zero = linking_number(r, s, p, primitive_root(s)) == 0
    assert zero == is_pth_power(r, s, p)
    if s < 400:
        assert zero == (r % s in pth_powers(s, p))


@settings(max_examples=200)
@given(st.sampled_from([3, 5]), st.data())
def test_root_change_law(p, data):
    s = data.draw(st.sampled_from(tame_primes(p, 3000)))
    r = data.draw(st.integers(1, s - 1))
    a = data.draw(st.integers(1, s - 2).filter(lambda a: gcd(a, s - 1) == 1))
    g = primitive_root(s)
    g2 = rescale_root(g, a, s)
    assert is_primitive_root(g2, s)
    lhs = linking_number(r, s, p, g2)
    rhs = pow(a, -1, p) * linking_number(r, s, p, g) % p
    assert lhs == rhs


def test_rescale_root_rejects_non_unit():
    with pytest.raises(ValueError):
        rescale_root(3, 2, 7)


def test_check_tame_reports_value():
    with pytest.raises(InvalidPrimeError) as info:
        check_tame(11, 3)
    assert info.value.value == 11
    with pytest.raises(InvalidPrimeError):
        check_tame(3, 3)
    with pytest.raises(InvalidPrimeError):
        check_tame(25, 3)
