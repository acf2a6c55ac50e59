from hypothesis import given, strategies as st

from preprojhh.pathalg import (PathVector, Quiver, bracket, double, enumerate_paths, path_count,
                               path_mul, preprojective_relation)
from preprojhh.rootdata import root_datum

from conftest import dq_of


def test_double_examples():
    a2 = dq_of("A2")
    assert [(a.name, a.source, a.target) for a in a2.arrows] == [("a1_2", 1, 2), ("a1_2*", 2, 1)]
    assert dq_of("A1").arrows == ()
    d4 = dq_of("D4")
    assert len(d4.arrows) == 6
    assert sum(a.target == 2 for a in d4.quiver.arrows) == 3


def test_double_invariants():
    for label in ("A4", "D5", "E6"):
        dq = dq_of(label)
        for a in dq.arrows:
            b = dq.star[a.name]
            assert dq.star[b] == a.name
            assert dq.eps[b] == -dq.eps[a.name]
            assert dq.eps[a.name] == (1 if a in dq.quiver.arrows else -1)


def test_path_mul_examples():
    dq = dq_of("A2")
    e1, e2 = PathVector.idempotent(dq, 1), PathVector.idempotent(dq, 2)
    a, b = PathVector.arrow(dq, "a1_2"), PathVector.arrow(dq, "a1_2*")
    assert e1 * e1 == e1 and not (e1 * e2).terms
    assert (a * b).terms == {(1, ("a1_2", "a1_2*")): 1}
    assert (a + b) * e2 == a


def test_relation_examples():
    dq = dq_of("A2")
    assert preprojective_relation(dq, 1).terms == {(1, ("a1_2", "a1_2*")): 1}
    assert preprojective_relation(dq, 2).terms == {(2, ("a1_2*", "a1_2")): -1}
    d4 = dq_of("D4")
    rho = preprojective_relation(d4, 2)
    assert len(rho.terms) == 3
    assert all(p[0] == 2 and len(p[1]) == 2 for p in rho.terms)


def test_sum_of_relations_is_commutator_sum():
    for label in ("A3", "D4", "E6"):
        dq = dq_of(label)
        lhs = PathVector(dq)
        for i in dq.vertices:
            lhs = lhs + preprojective_relation(dq, i)
        rhs = PathVector(dq)
        for a in dq.quiver.arrows:
            rhs = rhs + bracket(PathVector.arrow(dq, a.name), PathVector.arrow(dq, a.name + "*"))
        assert lhs == rhs


@st.composite
def path_vectors(draw, label="D4", max_len=3):
    dq = dq_of(label)
    paths = [p for L in range(max_len + 1) for p in enumerate_paths(dq, L)]
    chosen = draw(st.lists(st.sampled_from(paths), max_size=4))
    return PathVector(dq, {p: draw(st.integers(-3, 3)) for p in chosen})


@given(path_vectors(), path_vectors(), path_vectors())
def test_associative(x, y, z):
    assert path_mul(path_mul(x, y), z) == path_mul(x, path_mul(y, z))


@given(path_vectors(), path_vectors(), st.integers(-3, 3))
def test_bilinear_and_unit(x, y, c):
    one = PathVector.unit(x.dq)
    assert one * x == x == x * one
    assert (x.scale(c) + y) * y == (x * y).scale(c) + y * y


def test_path_count_matches_enumeration():
    rd = root_datum("D4")
    dq = double(Quiver.from_root_datum(rd))
    for L in range(6):
        assert path_count(rd.adjacency, L) == len(enumerate_paths(dq, L))
