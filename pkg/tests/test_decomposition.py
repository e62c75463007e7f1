from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from dagdepth import (
    Decomposition,
    MalformedDecompositionError,
    NotADagError,
    ParseError,
    build_decomposition,
    check_valid,
    dag_structure,
    is_optimal,
    parse_decomposition,
    parse_digraph,
    serialize_decomposition,
)
from conftest import load_graph
from dagdepth.generators import expo, fig1 as make_fig1
from oracles import cover_holds, longest_path_vertices, random_digraph, valid_naive
from test_digraph import digraphs


def shape(dec):
    """Decomposition up to copy-id renaming: root originals with their children's originals."""
    roots = dag_structure(dec.P).roots
    return sorted(
        (dec.org[r], tuple(sorted(dec.org[b] for a, b in dec.P.edges if a == r))) for r in roots
    )


def test_parse_and_serialize_round_trip(fig1_dec):
    text = serialize_decomposition(fig1_dec)
    assert parse_decomposition(text) == fig1_dec
    assert text.splitlines()[0] == "n 0 C"


def test_serialize_header(fig1_dec):
    assert serialize_decomposition(fig1_dec, header=True).startswith("# copies 8 depth 2\n")


def test_numeric_copy_ids_sort_numerically():
    dec = Decomposition.from_edges({str(i): "x" for i in range(12)})
    assert dec.copies[:3] == ("0", "1", "2")
    assert dec.copies[-1] == "11"


@pytest.mark.parametrize(
    "text",
    [
        "n 0 a\ne 0 1",
        "n 0 a\nn 0 b",
        "n 0",
        "n 0 a\ne 0 0",
        "n 0 a\nn 1 a\ne 0 1\ne 1 0",
        "",
        "x 0 a",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_decomposition(text)


def test_constructor_checks_dag():
    with pytest.raises(NotADagError):
        Decomposition.from_edges({"0": "a", "1": "b"}, [("0", "1"), ("1", "0")])


def test_build_single_vertex():
    dec = build_decomposition(parse_digraph("v A"))
    assert dict(dec.org) == {"0": "A"}
    assert not dec.P.edges


def test_build_figure1_matches_figure(fig1, fig1_dec):
    dec = build_decomposition(fig1)
    assert len(dec) == 8
    assert dec.depth == 2
    assert shape(dec) == [("C", ("A", "B", "D")), ("D", ("C", "E", "F"))]
    assert dec == fig1_dec


@pytest.mark.parametrize("n", range(1, 7))
def test_build_expo_size(n):
    dec = build_decomposition(expo(n))
    assert len(dec) == 2 ** (n + 1) - 2
    assert dec.depth == n


def test_build_is_deterministic(fig2):
    assert serialize_decomposition(build_decomposition(fig2)) == serialize_decomposition(
        build_decomposition(load_graph("fig2.dg"))
    )


def test_check_valid_figures(fig1, fig1_dec, fig2, fig2_dec):
    assert check_valid(fig1, fig1_dec) is None
    assert check_valid(fig2, fig2_dec) is None


def test_check_valid_broken_figure1(fig1, fig1_broken):
    v = check_valid(fig1, fig1_broken)
    assert (v.copy, v.original, v.neighbor, v.witness_path) == ("0", "C", "D", ("0",))
    assert str(v) == "VIOLATION copy=0 org=C neighbor=D path=0"


def test_check_valid_requires_surjective_org(fig1):
    partial = Decomposition.from_edges({"0": "C", "1": "A"}, [("0", "1")])
    with pytest.raises(MalformedDecompositionError):
        check_valid(fig1, partial)
    stray = Decomposition.from_edges({**{str(i): v for i, v in enumerate("ABCDEF")}, "9": "Z"})
    with pytest.raises(MalformedDecompositionError):
        check_valid(fig1, stray)


def test_is_optimal_examples(fig1, fig1_dec):
    assert is_optimal(fig1, fig1_dec)
    # merge the two C copies by hand: D-root now reaches A, B, D through C
    merged = Decomposition.from_edges(
        {"0": "C", "1": "A", "2": "B", "3": "D", "4": "D", "6": "E", "7": "F"},
        [("0", "1"), ("0", "2"), ("0", "3"), ("4", "0"), ("4", "6"), ("4", "7")],
    )
    assert merged.depth == 3
    assert not is_optimal(fig1, merged)
    single = parse_digraph("v x")
    assert is_optimal(single, build_decomposition(single))


@settings(max_examples=120, deadline=None)
@given(digraphs())
def test_builder_output_is_valid_and_optimal(g):
    from oracles import ddp_naive

    dec = build_decomposition(g)
    assert dag_structure(dec.P).is_dag
    assert check_valid(g, dec) is None
    assert valid_naive(g, dec)
    assert dec.depth == longest_path_vertices(dec) == ddp_naive(g)
    assert set(dec.org.values()) == set(g.vertices)


def test_check_valid_agrees_with_path_enumeration():
    rng = random.Random(11)
    for _ in range(150):
        g = random_digraph(rng, rng.randint(2, 6), rng.choice([0.2, 0.35, 0.5]))
        dec = build_decomposition(g)
        edges = sorted(dec.P.edges)
        for k in range(rng.randint(0, 2)):
            if edges:
                edges.pop(rng.randrange(len(edges)))
        mutated = Decomposition.from_edges(dict(dec.org), edges)
        v = check_valid(g, mutated)
        assert (v is None) == valid_naive(g, mutated)
        if v is not None:
            assert_violation_certified(mutated, v)


def assert_violation_certified(dec, v):
    path = v.witness_path
    assert path[0] in dag_structure(dec.P).roots
    assert path[-1] == v.copy
    assert all((a, b) in dec.P.edges for a, b in zip(path, path[1:]))
    assert all(dec.org[c] != v.neighbor for c in path)
    assert not cover_holds(dec, v.copy, v.neighbor)


def test_figure1_violation_is_certified(fig1_broken, fig1):
    assert_violation_certified(fig1_broken, check_valid(fig1, fig1_broken))


def test_fig1_generator_matches_fixture(fig1):
    assert make_fig1() == fig1
