"""Multiplication table of HH(U(h)) for the Heisenberg Lie algebra h.

Generators x1, x2, x3 = [x1, x2] with weights 1, 1, 2. Monomials x^N mean
x1^n1 x2^n2 in the PBW basis; a negative exponent makes the term vanish.
Every identity is checked up to a boundary. C denotes the cocycle
l1 (x) x1 + l3 (x) x3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable

from .complexes import HochschildComplex, RegularCoefficients
from .cup_product import CochainElement, differential, equal_in_cohomology, monomial, multiply, zero
from .koszul_dual import koszul_dual
from .presentation import Presentation, confluent_rewriter

L1, L2, L3 = 0, 1, 2


class Classes:
    """Cochain builders for the named classes, bound to one complex."""

    def __init__(self, hc: HochschildComplex):
        self.hc = hc
        self.t, self.rw = hc.t, hc.coeff.rw

    def term(self, lword, n1, n2, n3=0, coeff=1) -> CochainElement:
        if min(n1, n2, n3) < 0 or not coeff:
            return zero(len(lword))
        xw = (0,) * n1 + (1,) * n2 + (2,) * n3
        return monomial(self.t, self.rw, lword, xw, Fraction(coeff))

    def mul(self, u, v):
        return multiply(u, v, self.t, self.rw)

    # degree 1
    def a(self, n2):
        return self.term((L1,), 0, n2)

    def b(self, n1):
        return self.term((L2,), n1, 0)

    def c(self):
        # the Euler-type cocycle; with a minus sign on l3 (x) x3 it is not closed
        return self.term((L1,), 1, 0) + self.term((L3,), 0, 0, 1)

    def tt(self, m1, m2):
        return self.term((L1,), m1 + 1, m2, 0, Fraction(1, m1 + 1)) - self.term((L2,), m1, m2 + 1, 0, Fraction(1, m2 + 1))

    # degree 2
    def p(self, l):
        return self.term((L2, L3), l, 0)

    def q(self, m):
        return self.term((L3, L1), 0, m)

    def r(self, m1, m2):
        return self.term((L2, L3), m1, m2 + 1, 0, Fraction(1, m2 + 1)) + self.term((L3, L1), m1 + 1, m2, 0, Fraction(1, m1 + 1))

    def top(self, n1, n2, coeff=1):
        return self.term((L1, L2, L3), n1, n2, 0, coeff)


@dataclass
class Identity:
    label: str
    params: tuple  # parameter names
    lhs: Callable
    rhs: Callable
    note: str = ""


def identities(alt_reading: bool = False) -> list:
    """The degree 1x1 and 1x2 products as stated.

    Three degree-1 products carry a ``lambda3*lambda2`` term where the basis
    suggests ``lambda3*lambda1``; ``alt_reading`` swaps it in those three.
    """
    F = Fraction
    mid = (L3, L1) if alt_reading else (L3, L2)
    tag = " [l3*l1 reading]" if alt_reading else " [l3*l2 reading]"
    first = Identity(
        "l1(x)x2^n2 . l2(x)x1^n1" + tag,
        ("n1", "n2"),
        lambda k, n1, n2: k.mul(k.a(n2), k.b(n1)),
        lambda k, n1, n2: (k.term((L2, L3), n1 - 1, n2, 1, n1) + k.term(mid, n1, n2 - 1, 1, n2)).scale(-1),
        "first degree-1 bullet",
    )
    rest = [
        Identity(
            "l1(x)x2^n2 . C",
            ("n2",),
            lambda k, n2: k.mul(k.a(n2), k.c()),
            lambda k, n2: k.term((L3, L1), 0, n2, 1),
        ),
        Identity(
            "l1(x)x2^n2 . T(M)" + tag,
            ("n2", "m1", "m2"),
            lambda k, n2, m1, m2: k.mul(k.a(n2), k.tt(m1, m2)),
            lambda k, n2, m1, m2: k.term((L2, L3), m1 - 1, m2 + n2 + 1, 1, F(m1, m2 + 1))
            + k.term(mid, m1, m2 + n2, 1, F(m2 + n2 + 1, m2 + 1)),
        ),
        Identity(
            "l2(x)x1^n1 . C",
            ("n1",),
            lambda k, n1: k.mul(k.b(n1), k.c()),
            lambda k, n1: k.term((L2, L3), n1, 0, 1, -1),
        ),
        Identity(
            "l2(x)x1^n1 . T(M)" + tag,
            ("n1", "m1", "m2"),
            lambda k, n1, m1, m2: k.mul(k.b(n1), k.tt(m1, m2)),
            lambda k, n1, m1, m2: k.term((L2, L3), m1 + n1, m2, 1, F(m1 + n1 + 1, m1 + 1))
            + k.term(mid, m1 + n1 + 1, m2 - 1, 1, F(m2, m1 + 1)),
        ),
        Identity(
            "C . T(M)",
            ("m1", "m2"),
            lambda k, m1, m2: k.mul(k.c(), k.tt(m1, m2)),
            lambda k, m1, m2: k.term((L2, L3), m1, m2 + 1, 1, F(m1, m2 + 1)) + k.term((L3, L1), m1 + 1, m2, 1, F(m1, m1 + 1)),
        ),
        Identity(
            "l1(x)x2^n2 . l2l3(x)x1^n1",
            ("n1", "n2"),
            lambda k, n1, n2: k.mul(k.a(n2), k.p(n1)),
            lambda k, n1, n2: k.top(n1, n2),
        ),
        Identity(
            "l1(x)x2^n2 . l3l1(x)x2^n2",
            ("n2",),
            lambda k, n2: k.mul(k.a(n2), k.q(n2)),
            lambda k, n2: zero(3),
        ),
        Identity(
            "l1(x)x2^n2 . R(M)",
            ("n2", "m1", "m2"),
            lambda k, n2, m1, m2: k.mul(k.a(n2), k.r(m1, m2)),
            lambda k, n2, m1, m2: k.top(m1, m2 + n2 + 1, F(1, m2 + 1)),
        ),
        Identity(
            "l2(x)x1^n1 . l2l3(x)x1^n1",
            ("n1",),
            lambda k, n1: k.mul(k.b(n1), k.p(n1)),
            lambda k, n1: zero(3),
        ),
        Identity(
            "l2(x)x1^n1 . l3l1(x)x2^n2",
            ("n1", "n2"),
            lambda k, n1, n2: k.mul(k.b(n1), k.q(n2)),
            lambda k, n1, n2: k.top(n1, n2),
        ),
        Identity(
            "l2(x)x1^n1 . R(M)",
            ("n1", "m1", "m2"),
            lambda k, n1, m1, m2: k.mul(k.b(n1), k.r(m1, m2)),
            lambda k, n1, m1, m2: k.top(m1 + n1 + 1, m2, F(1, m1 + 1)),
        ),
        Identity(
            "C . l2l3(x)x1^n1",
            ("n1",),
            lambda k, n1: k.mul(k.c(), k.p(n1)),
            lambda k, n1: k.top(n1 + 1, 0),
        ),
        Identity(
            "C . l3l1(x)x2^n2",
            ("n2",),
            lambda k, n2: k.mul(k.c(), k.q(n2)),
            lambda k, n2: zero(3),
        ),
        Identity(
            "C . R(M)",
            ("m1", "m2"),
            lambda k, m1, m2: k.mul(k.c(), k.r(m1, m2)),
            lambda k, m1, m2: k.top(m1 + 1, m2 + 1, F(1, m2 + 1)),
        ),
        Identity(
            "T(L) . l2l3(x)x1^n1",
            ("l1", "l2", "n1"),
            lambda k, l1, l2, n1: k.mul(k.tt(l1, l2), k.p(n1)),
            lambda k, l1, l2, n1: k.top(l1 + n1 + 1, l2, F(1, l1 + 1)),
        ),
        Identity(
            "T(L) . l3l1(x)x2^n2",
            ("l1", "l2", "n2"),
            lambda k, l1, l2, n2: k.mul(k.tt(l1, l2), k.q(n2)),
            lambda k, l1, l2, n2: k.top(l1, l2 + n2 + 1, F(-1, l2 + 1)),
        ),
        Identity(
            "T(L) . R(M)",
            ("l1", "l2", "m1", "m2"),
            lambda k, l1, l2, m1, m2: k.mul(k.tt(l1, l2), k.r(m1, m2)),
            lambda k, l1, l2, m1, m2: k.top(
                l1 + m1 + 1, l2 + m2 + 1, F(1, (l1 + 1) * (m2 + 1)) - F(1, (m1 + 1) * (l2 + 1))
            ),
        ),
    ]
    return [first] + rest


@dataclass
class IdentityResult:
    label: str
    instances: int
    failures: list  # (parameters, reason) where the identity fails

    @property
    def passed(self) -> bool:
        return not self.failures


def check_identity(k: Classes, ident: Identity, max_param: int = 2) -> IdentityResult:
    failures = []
    count = 0
    for params in iproduct(range(max_param + 1), repeat=len(ident.params)):
        lhs = ident.lhs(k, *params)
        rhs = ident.rhs(k, *params)
        count += 1
        if lhs and differential(lhs, k.hc):
            failures.append((params, "product is not a cocycle"))
            continue
        if rhs and differential(rhs, k.hc):
            failures.append((params, "stated value is not a cocycle"))
            continue
        ok, _ = equal_in_cohomology(lhs, rhs, k.hc)
        if not ok:
            failures.append((params, "differs by a nonzero class"))
    return IdentityResult(ident.label, count, failures)


def heisenberg_complex(p: Presentation) -> HochschildComplex:
    t = koszul_dual(p, 4)
    return HochschildComplex(p, t, RegularCoefficients(p, confluent_rewriter(p)))


ALT_READING_LABELS = ("l1(x)x2^n2 . l2(x)x1^n1", "l1(x)x2^n2 . T(M)", "l2(x)x1^n1 . T(M)")


def check_table(hc: HochschildComplex, max_param: int = 2) -> tuple:
    """(results for the identities as stated, results for the alternative reading)."""
    k = Classes(hc)
    stated = [check_identity(k, i, max_param) for i in identities(False)]
    alt = [check_identity(k, i, max_param) for i in identities(True) if i.label.startswith(ALT_READING_LABELS) and "reading" in i.label]
    return stated, alt
