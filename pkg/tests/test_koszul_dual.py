import pytest

from koszulhh.koszul_dual import (
    associativity_check,
    dual_report,
    e_identity_check,
    koszul_sign,
    leibniz_check,
    twisting_cochain_check,
    verify_curved,
)
from koszulhh.presentation import intersection_coalgebra

from conftest import CURVED_SUITE, dual, load

CHECKS = [verify_curved, leibniz_check, associativity_check]


@pytest.mark.parametrize("name", CURVED_SUITE + ["kxy", "free1"])
@pytest.mark.parametrize("check", CHECKS, ids=lambda f: f.__name__)
def test_structure_checks(name, check):
    res = check(dual(name))
    assert res.passed, res.witness


@pytest.mark.parametrize("name", CURVED_SUITE + ["kxy"])
def test_twisting_cochain_and_e_identity(name):
    p, t = load(name), dual(name)
    assert twisting_cochain_check(p, t).passed
    assert e_identity_check(p, t).passed


@pytest.mark.parametrize("name", CURVED_SUITE)
def test_dims_match_coalgebra(name):
    assert dual(name).dims() == intersection_coalgebra(load(name), 4).dims()


def test_koszul_sign():
    assert [koszul_sign(n) for n in range(6)] == [1, 1, -1, -1, 1, 1]


def summary(name):
    return dual_report(load(name), dual(name))


def test_heisenberg_dual():
    s = summary("heisenberg")
    assert s["d"] == {"l1": "0", "l2": "0", "l3": "l1*l2"}
    assert s["curvature"] == "0"


def test_weyl_curvature_is_sum_of_lambda_theta():
    assert summary("weyl1")["curvature"] == "l1*l2"
    # generators x1 x2 d1 d2, so theta_i = l3, l4
    s = summary("weyl2")
    assert s["curvature"] == "l1*l3 + l2*l4"
    assert set(s["d"].values()) == {"0"}


def test_clifford_dual():
    s = summary("clifford")
    assert s["dims"] == [1, 1, 1, 1, 1]
    assert s["curvature"] == "-l1*l1"
    assert s["d"] == {"l1": "0"}


def test_aq_differential_is_one_minus_q_cyclic():
    t = dual("aq")
    f = t.field
    q = f.gen()
    # d(l_i) = (1 - q) l_j l_k for cyclic (i, j, k)
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        expected = {key: (1 - q) * x for key, x in t.coords((j, k)).items()}
        assert t.d(1, t.generator(i)) == expected
    assert not t.curvature


def test_aq_at_q_minus_one_matches_formula():
    t = dual("aq_qm1")
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        expected = {key: 2 * x for key, x in t.coords((j, k)).items()}
        assert t.d(1, t.generator(i)) == expected


def test_anticommuting_generators_for_commutative_relations():
    t = dual("kxy")
    assert t.coords((1, 0)) == {k: -x for k, x in t.coords((0, 1)).items()}
    assert t.coords((0, 0)) == {}
