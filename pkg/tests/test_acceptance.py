"""Acceptance criteria, one test each. Every test records a PASS/FAIL summary line."""

import random
import time
from fractions import Fraction

from koszulhh.complexes import (
    HochschildComplex,
    RegularCoefficients,
    central_action,
    make_coefficients,
    resolution_report,
    truncated_estimate,
)
from koszulhh.cup_product import (
    class_vectors,
    compare_image_with_central_multiple,
    cup_surjectivity,
    differential,
    equal_in_cohomology,
    monomial,
    multiply,
)
from koszulhh.exact_linalg import Matrix, kernel_basis, rank
from koszulhh.heisenberg import check_table
from koszulhh.koszul_dual import (
    associativity_check,
    dual_report,
    e_identity_check,
    koszul_dual,
    leibniz_check,
    twisting_cochain_check,
    verify_curved,
)
from koszulhh.presentation import confluent_rewriter, double_perp_check, intersection_coalgebra
from koszulhh.cli import run

from conftest import CURVED_SUITE, kp, load
from oracles import heisenberg_enumeration as oracle

X3 = {(2,): Fraction(1)}


def fresh_heisenberg():
    p = load("heisenberg")
    return HochschildComplex(p, koszul_dual(p, 4), RegularCoefficients(p, confluent_rewriter(p)))


def test_criterion_1_aq_ext(criterion):
    start = time.perf_counter()
    got = {}
    for name in ("aq", "aq_q2", "aq_qm1"):
        p = load(name)
        hc = HochschildComplex(p, koszul_dual(p, 4), make_coefficients(p, "bimodule:p10"))
        got[name] = [hc.cohomology(n, None).dim for n in range(4)]
    elapsed = time.perf_counter() - start
    ok = got == {"aq": [0, 1, 1, 0], "aq_q2": [0, 0, 0, 0], "aq_qm1": [0, 0, 0, 0]} and elapsed < 1
    assert criterion(1, "A_q Ext dims", ok, f"{got}, {elapsed:.2f}s")


def test_criterion_2_heisenberg_dimensions(criterion):
    start = time.perf_counter()
    hc = fresh_heisenberg()
    weights = range(-4, 7)
    computed = {(n, w): hc.cohomology(n, w).dim for n in range(4) for w in weights}
    elapsed = time.perf_counter() - start
    expected = oracle.table(weights)
    mismatches = sorted(k for k in expected if expected[k] != computed[k])
    detail = f"{elapsed:.1f}s"
    if mismatches:
        detail += "; mismatches (degree, weight): computed vs stated " + ", ".join(
            f"{k}: {computed[k]} vs {expected[k]}" for k in mismatches
        )
    ok = not mismatches and elapsed < 30
    assert criterion(2, "Heisenberg HH dims vs stated bases", ok, detail)


def test_criterion_3_central_actions(criterion):
    hc = fresh_heisenberg()
    problems = []
    for w in range(-4, 5):
        if not central_action(X3, hc, 3, w).is_zero():
            problems.append(f"x3 nonzero on HH^3 at {w}")
        chain = central_action(X3, hc, 2, w + 2) @ central_action(X3, hc, 2, w)
        if not chain.is_zero():
            problems.append(f"x3^2 nonzero on HH^2 at {w}")
        h0 = hc.cohomology(0, w).dim
        if rank(central_action(X3, hc, 0, w)) != h0:
            problems.append(f"x3 not injective on HH^0 at {w}")
    assert criterion(3, "Heisenberg central actions", not problems, "; ".join(problems))


def test_criterion_4_cup_products(criterion):
    hc = fresh_heisenberg()
    stated, alt = check_table(hc, max_param=2)
    verified = [r.label for r in stated if r.passed] + [r.label for r in alt if r.passed]
    discrepancies = [f"{r.label}: {r.failures[0][1]} at {r.failures[0][0]}" for r in stated if not r.passed]
    image = [compare_image_with_central_multiple(hc, X3, w, -4).equal for w in range(-4, 3)]
    surj = [cup_surjectivity(hc, w, -4).surjective for w in range(-4, 3)]
    first_both = any("l3*l2 reading" in s for s in discrepancies) and any("l3*l1 reading" in v for v in verified)
    ok = len(verified) >= 10 and all(image) and all(surj) and first_both
    detail = f"{len(verified)} identities verified, image {sum(image)}/7, surjective {sum(surj)}/7; discrepancies: " + "; ".join(discrepancies)
    assert criterion(4, "cup product tables", ok, detail)


def test_criterion_5_curved_suite(criterion):
    problems = []
    for name in CURVED_SUITE:
        p = load(name)
        t = koszul_dual(p, 4)
        for res in (verify_curved(t), twisting_cochain_check(p, t), e_identity_check(p, t)):
            if not res.passed:
                problems.append(f"{name}: {res.name} {res.witness}")
    if dual_report(load("weyl1"), koszul_dual(load("weyl1"), 4))["curvature"] != "l1*l2":
        problems.append("weyl1 curvature")
    if dual_report(load("weyl2"), koszul_dual(load("weyl2"), 4))["curvature"] != "l1*l3 + l2*l4":
        problems.append("weyl2 curvature")
    assert criterion(5, "curved dg, twisting cochain, e-identity", not problems, "; ".join(problems))


def test_criterion_6_resolution(criterion):
    start = time.perf_counter()
    failed = []
    for name in ("heisenberg", "kxy"):
        p = load(name)
        t = koszul_dual(p, 4)
        rw = confluent_rewriter(p)
        failed += [f"{name}@{w}" for w in range(0, 9) if not resolution_report(p, t, w, rw).passed]
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 60
    assert criterion(6, "Koszul resolution slices w <= 8", ok, f"{elapsed:.1f}s" + (f"; failed {failed}" if failed else ""))


def _properties() -> list:
    rng = random.Random(20240601)
    problems = []
    # rank-nullity
    for _ in range(30):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = Matrix.from_dense([[Fraction(rng.randint(-2, 2)) for _ in range(c)] for _ in range(r)])
        if rank(m) + len(kernel_basis(m)) != c:
            problems.append("rank-nullity")
    # normal forms
    for name in ("heisenberg", "skew", "aq", "weyl2"):
        p = load(name)
        rw = confluent_rewriter(p)
        for _ in range(20):
            u = tuple(rng.randrange(p.ngens) for _ in range(rng.randint(0, 4)))
            v = tuple(rng.randrange(p.ngens) for _ in range(rng.randint(0, 3)))
            nf = rw.reduce_word(u)
            if not all(rw.is_normal(x) for x in nf) or rw.normal_form(nf) != nf:
                problems.append(f"idempotence {name}")
            if rw.multiply(nf, rw.reduce_word(v)) != rw.reduce_word(u + v):
                problems.append(f"multiplicativity {name}")
    # dual structure
    for name in CURVED_SUITE + ["kxy"]:
        p = load(name)
        t = koszul_dual(p, 4)
        if not leibniz_check(t).passed or not associativity_check(t).passed:
            problems.append(f"Lambda structure {name}")
        if not double_perp_check(p):
            problems.append(f"double perp {name}")
        if t.dims() != intersection_coalgebra(p, 4).dims():
            problems.append(f"dim Lambda {name}")
    # cochain product
    hc = fresh_heisenberg()
    t, rw = hc.t, hc.coeff.rw
    for _ in range(25):
        a, b = rng.randint(0, 1), rng.randint(0, 1)
        u = monomial(t, rw, [rng.randrange(3) for _ in range(a)], [rng.randrange(3) for _ in range(rng.randint(0, 3))])
        v = monomial(t, rw, [rng.randrange(3) for _ in range(b)], [rng.randrange(3) for _ in range(rng.randint(0, 3))])
        lhs = differential(multiply(u, v, t, rw), hc)
        rhs = multiply(differential(u, hc), v, t, rw) + multiply(u, differential(v, hc), t, rw).scale(-1 if a % 2 else 1)
        if (lhs - rhs).terms:
            problems.append("cochain Leibniz")
    for (n1, w1), (n2, w2) in [((1, -1), (1, 0)), ((1, 0), (2, -1)), ((1, 1), (1, -1))]:
        sign = -1 if (n1 * n2) % 2 else 1
        for u in class_vectors(hc, n1, w1):
            for v in class_vectors(hc, n2, w2):
                if not equal_in_cohomology(multiply(u, v, t, rw), multiply(v, u, t, rw).scale(sign), hc)[0]:
                    problems.append("graded commutativity")
                for x in class_vectors(hc, 1, -1):
                    if n1 + n2 + 1 <= 3:
                        left = multiply(multiply(u, v, t, rw), x, t, rw)
                        right = multiply(u, multiply(v, x, t, rw), t, rw)
                        if not equal_in_cohomology(left, right, hc)[0]:
                            problems.append("associativity up to boundary")
    for w in range(-4, 7):
        if not hc.slice(w).check_d_squared().passed:
            problems.append(f"d^2 at {w}")
    # determinism of reports
    import io

    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run(["hh", str(kp("heisenberg")), "--weights", "-2..2", "--json"], stdout=buf)
        outs.append(buf.getvalue())
    if outs[0] != outs[1]:
        problems.append("determinism")
    return sorted(set(problems))


def test_criterion_7_property_suite(criterion):
    problems = _properties()
    assert criterion(7, "property suite", not problems, "; ".join(problems))


def test_criterion_8_truncation(criterion):
    p = load("clifford")
    cl = truncated_estimate(p, koszul_dual(p, 5), RegularCoefficients(p, confluent_rewriter(p)), 6, range(4))
    q = load("weyl1")
    wy = truncated_estimate(q, koszul_dual(q, 4), RegularCoefficients(q, confluent_rewriter(q)), 6, range(3))
    import io

    buf = io.StringIO()
    run(["hh", str(kp("clifford")), "--truncate", "6", "--degrees", "0..3"], stdout=buf)
    labelled = cl.estimate and "ESTIMATE" in buf.getvalue()
    ok = cl.dims_at_bound == [2, 0, 0, 0] and all(cl.stable) and wy.dims_at_bound[0] == 1 and wy.stable[0] and labelled
    detail = f"clifford {cl.dims_at_bound} stable {cl.stable}; weyl1 degree 0 = {wy.dims_at_bound[0]} stable {wy.stable[0]}"
    assert criterion(8, "truncation estimates", ok, detail)
