import itertools

import pytest
from hypothesis import given, settings, strategies as st

from koszulhh.parser import PresentationError, parse_presentation
from koszulhh.presentation import (
    coproduct_check,
    confluent_rewriter,
    double_perp_check,
    intersection_coalgebra,
    NotConfluentError,
    pbw_confluence_check,
    validate,
)

from conftest import load

ALL = ["heisenberg", "weyl1", "weyl2", "aq", "aq_q2", "aq_qm1", "clifford", "skew", "kxy", "free1"]

COALGEBRA_DIMS = {
    "heisenberg": [1, 3, 3, 1, 0],
    "aq": [1, 3, 3, 1, 0],
    "skew": [1, 3, 3, 1, 0],
    "weyl1": [1, 2, 1, 0, 0],
    "weyl2": [1, 4, 6, 4, 1],
    "clifford": [1, 1, 1, 1, 1],
    "kxy": [1, 2, 1, 0, 0],
    "free1": [1, 1, 0, 0, 0],
}


@pytest.mark.parametrize("name", ALL)
def test_fixtures_validate_and_are_confluent(name):
    p = load(name)
    validate(p)
    assert pbw_confluence_check(p).passed


def test_broken_jacobi_overlap_witness():
    p = load("broken-jacobi")
    res = pbw_confluence_check(p)
    assert not res.passed
    w = res.witness
    assert len(w.word) == 3 and w.left_reduction != w.right_reduction
    with pytest.raises(NotConfluentError):
        confluent_rewriter(p)


def test_dependent_quadratic_parts_rejected():
    p = parse_presentation("generators: x y\nrelations:\n  x*y - y*x\n  2*x*y - 2*y*x - x\n")
    with pytest.raises(PresentationError):
        validate(p)


def test_bimodule_must_respect_relations():
    text = "generators: x y\nrelations:\n  x*y - y*x\nbimodule m dim 2\n  left x: 0, 1; 0, 0\n  left y: 0, 0; 1, 0\n"
    with pytest.raises(PresentationError):
        validate(parse_presentation(text))


@pytest.mark.parametrize("name", sorted(COALGEBRA_DIMS))
def test_coalgebra_dimensions(name):
    c = intersection_coalgebra(load(name), 4)
    assert c.dims() == COALGEBRA_DIMS[name]


@pytest.mark.parametrize("name", ALL)
def test_coproduct_closes(name):
    assert coproduct_check(intersection_coalgebra(load(name), 4)) is None


@pytest.mark.parametrize("name", ALL)
def test_double_perp(name):
    assert double_perp_check(load(name))


def test_heisenberg_normal_words_are_pbw():
    rw = confluent_rewriter(load("heisenberg"))
    # x1^a x2^b x3^c of weight 4
    words = rw.normal_words(4)
    assert len(words) == 9
    assert all(list(w) == sorted(w) for w in words)


def test_heisenberg_commutator():
    rw = confluent_rewriter(load("heisenberg"))
    assert rw.reduce_word((1, 0)) == {(0, 1): 1, (2,): -1}


def test_clifford_square():
    rw = confluent_rewriter(load("clifford"))
    assert rw.reduce_word((0, 0, 0)) == {(0,): 1}


words = st.lists(st.integers(0, 2), max_size=5).map(tuple)


@settings(max_examples=60, deadline=None)
@given(words)
def test_normal_form_idempotent(w):
    rw = confluent_rewriter(load("heisenberg"))
    nf = rw.reduce_word(w)
    assert all(rw.is_normal(u) for u in nf)
    again = {}
    for u, c in nf.items():
        for v, d in rw.reduce_word(u).items():
            again[v] = again.get(v, 0) + c * d
    assert {k: v for k, v in again.items() if v} == nf


@settings(max_examples=60, deadline=None)
@given(words, words, st.sampled_from(["heisenberg", "skew", "weyl1", "aq"]))
def test_normal_form_multiplicative(u, v, name):
    rw = confluent_rewriter(load(name))
    n = load(name).ngens
    u = tuple(a % n for a in u)
    v = tuple(a % n for a in v)
    assert rw.multiply(rw.reduce_word(u), rw.reduce_word(v)) == rw.reduce_word(u + v)


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_generator_order_does_not_change_dims(perm):
    p = load("heisenberg").with_generator_order(perm)
    assert pbw_confluence_check(p).passed
    assert intersection_coalgebra(p, 4).dims() == COALGEBRA_DIMS["heisenberg"]


def test_digest_is_stable_and_sensitive():
    p = load("heisenberg")
    assert p.digest() == load("heisenberg").digest()
    assert p.digest() != load("kxy").digest()
