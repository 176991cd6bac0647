import json
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from primelink import InvalidPrimeError, LinkingDiagram, PrimeSet, build_diagram, has_edge
from primelink.residue import is_pth_power, primitive_root, rescale_root
from conftest import EXAMPLE_EDGES, EXAMPLE_S, prime_sets
from oracles import brute_edge


def test_example_edges(example_diagram):
    assert set(example_diagram.edges()) == EXAMPLE_EDGES
    assert len(example_diagram.edges()) == 14
    assert example_diagram.roots == (3, 2, 2, 2, 2)


def test_subset_restriction():
    d = build_diagram(3, [7, 19, 61, 163])
    expected = {e for e in EXAMPLE_EDGES if 13 not in e}
    assert set(d.edges()) == expected and len(expected) == 8


def test_single_prime_has_no_edges():
    d = build_diagram(3, [7])
    assert d.edges() == [] and d.ell == ((None,),)


@pytest.mark.parametrize("r, s, expected", [(19, 7, True), (7, 19, False), (13, 7, False)])
def test_has_edge_examples(example_diagram, r, s, expected):
    assert has_edge(example_diagram, r, s) is expected


def test_has_edge_errors(example_diagram):
    with pytest.raises(KeyError):
        has_edge(example_diagram, 31, 7)
    with pytest.raises(ValueError):
        has_edge(example_diagram, 7, 7)


@pytest.mark.parametrize("bad", [[7, 11], [7, 7], [7, 9], [3, 7]])
def test_invalid_sets_rejected(bad):
    with pytest.raises(ValueError):
        build_diagram(3, bad)


def test_invalid_member_reported_by_value():
    with pytest.raises(InvalidPrimeError) as info:
        build_diagram(3, [7, 13, 11])
    assert info.value.value == 11


def test_primeset_must_be_sorted():
    with pytest.raises(ValueError):
        PrimeSet(3, (13, 7))
    assert PrimeSet.of(3, [13, 7]).primes == (7, 13)


def test_dot_output(example_diagram):
    dot = example_diagram.to_dot()
    lines = dot.splitlines()
    assert lines[0].startswith("digraph")
    assert sum("->" in ln for ln in lines) == 14
    assert sum("[label=" in ln and "->" not in ln for ln in lines) == 5
    assert '  "19" -> "7" [label="1"];' in lines
    assert dot == build_diagram(3, EXAMPLE_S).to_dot()


def test_dot_single_node():
    dot = build_diagram(3, [7]).to_dot()
    assert '"7"' in dot and "->" not in dot


def test_json_round_trip(example_diagram):
    text = example_diagram.to_json()
    assert LinkingDiagram.from_json(text) == example_diagram
    data = json.loads(text)
    assert set(data) == {"p", "primes", "roots", "matrix", "edges"}
    assert text == json.dumps(data, sort_keys=True, separators=(",", ":"))
    i7, i19 = EXAMPLE_S.index(7), EXAMPLE_S.index(19)
    assert data["matrix"][i19][i7] == 1
    assert all(data["matrix"][i][i] is None for i in range(5))
    assert len(data["edges"]) == 14


@settings(max_examples=100)
@given(prime_sets(min_size=2))
def test_edges_match_residue_oracle(ps):
    p, S = ps
    d = build_diagram(p, S)
    for r in S:
        for s in S:
            if r != s:
                assert d.has_edge(r, s) == (not is_pth_power(r, s, p))
                if s < 500:
                    assert d.has_edge(r, s) == brute_edge(r, s, p)


@settings(max_examples=100)
@given(prime_sets(min_size=2), st.data())
def test_root_change_scales_columns(ps, data):
    p, S = ps
    d = build_diagram(p, S)
    exps = {
        s: data.draw(st.integers(1, s - 2).filter(lambda a, s=s: gcd(a, s - 1) == 1))
        for s in S
    }
    roots = {s: rescale_root(primitive_root(s), exps[s], s) for s in S}
    d2 = build_diagram(p, S, roots)
    assert d2.edges() == d.edges()
    for j, s in enumerate(S):
        factor = pow(exps[s], -1, p)
        for i in range(len(S)):
            if i != j:
                assert d2.ell[i][j] == factor * d.ell[i][j] % p


def test_non_primitive_root_rejected():
    with pytest.raises(ValueError):
        build_diagram(3, [7, 13], roots={7: 2})
