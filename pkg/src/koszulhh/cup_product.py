"""Products in the dg algebra Lambda (x) A and their reduction to cohomology classes.

The product is (f (x) a)(g (x) b) = fg (x) ab with no extra sign, since A
sits in degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ComplexError, HochschildComplex, RegularCoefficients
from .exact_linalg import Echelon, Matrix, span_equal, vec_iadd
from .koszul_dual import CurvedDualTable
from .parser import PresentationError, parse_expression
from .presentation import Presentation, Rewriter


@dataclass(frozen=True, eq=False)
class CochainElement:
    """Homogeneous element of Lambda^degree (x) A as {(lambda index, normal word): coeff}."""

    degree: int
    terms: dict

    def __add__(self, other: "CochainElement") -> "CochainElement":
        return self.combine(other, 1)

    def __sub__(self, other: "CochainElement") -> "CochainElement":
        return self.combine(other, -1)

    def combine(self, other, scale) -> "CochainElement":
        if other.terms and self.terms and other.degree != self.degree:
            raise ValueError("adding cochains of different degrees")
        out = dict(self.terms)
        vec_iadd(out, other.terms, scale)
        return CochainElement(self.degree if self.terms else other.degree, out)

    def scale(self, c) -> "CochainElement":
        return CochainElement(self.degree, {k: c * x for k, x in self.terms.items() if c * x})

    def __bool__(self):
        return bool(self.terms)

    def weight(self, t: CurvedDualTable, p: Presentation) -> int | None:
        ws = {t.weight(self.degree, k) + p.word_weight(m) for k, m in self.terms}
        if len(ws) > 1:
            raise ValueError("cochain is not weight-homogeneous")
        return ws.pop() if ws else None


def zero(degree: int) -> CochainElement:
    return CochainElement(degree, {})


def monomial(t: CurvedDualTable, rw: Rewriter, lword, xword, coeff=1) -> CochainElement:
    """coeff * lambda^{lword} (x) x^{xword}, reduced on both sides."""
    out: dict = {}
    lam = t.coords(tuple(lword))
    for m, y in rw.reduce_word(tuple(xword)).items():
        for k, x in lam.items():
            vec_iadd(out, {(k, m): coeff * x * y})
    return CochainElement(len(lword), out)


def multiply(u: CochainElement, v: CochainElement, t: CurvedDualTable, rw: Rewriter) -> CochainElement:
    out: dict = {}
    for (i, a), x in u.terms.items():
        for (j, b), y in v.terms.items():
            prod = t.basis_product(u.degree, i, v.degree, j)
            if not prod:
                continue
            for m, z in rw.reduce_word(a + b).items():
                for k, c in prod.items():
                    vec_iadd(out, {(k, m): x * y * z * c})
    return CochainElement(u.degree + v.degree, out)


def differential(u: CochainElement, hc: HochschildComplex) -> CochainElement:
    from .complexes import _hochschild_image

    out: dict = {}
    for (k, m), x in u.terms.items():
        vec_iadd(out, _hochschild_image(hc.t, hc.coeff, u.degree, k, m), x)
    return CochainElement(u.degree + 1, out)


def parse_cochain(text: str, p: Presentation, t: CurvedDualTable, rw: Rewriter) -> CochainElement:
    """Parse ``l1*l2 (x) x1^2*x3 - 1/2*l3 (x) x3``; lambda_i is written ``l<i>``."""
    n = p.ngens
    names = {g: i for i, g in enumerate(p.names)}
    for i in range(n):
        lname = f"l{i + 1}"
        if lname in names:
            raise PresentationError(f"generator name {lname!r} clashes with the lambda notation")
        names[lname] = n + i
    poly = parse_expression(text.replace("(x)", "*"), p.field, names)
    degree = None
    out: dict = {}
    for w, c in poly.items():
        lw = tuple(a - n for a in w if a >= n)
        xw = tuple(a for a in w if a < n)
        if degree is None:
            degree = len(lw)
        elif degree != len(lw):
            raise PresentationError("cochain terms have different lambda degrees")
        vec_iadd(out, monomial(t, rw, lw, xw, c).terms)
    return CochainElement(degree or 0, out)


# ---------- classes ----------


@dataclass
class ClassReduction:
    degree: int
    weight: int
    coefficients: list
    preimage: CochainElement

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _regular(hc: HochschildComplex):
    if not isinstance(hc.coeff, RegularCoefficients):
        raise ComplexError("cup product requires algebra coefficients")


def reduce_class(u: CochainElement, hc: HochschildComplex, weight=None) -> ClassReduction:
    """Coordinates of [u] in the computed cohomology basis, plus a boundary witness."""
    _regular(hc)
    n = u.degree
    w = weight if weight is not None else u.weight(hc.t, hc.p)
    if w is None:  # the zero cochain
        return ClassReduction(n, weight, [], zero(n - 1))
    cb = hc.cohomology(n, w)
    vec = hc.vector(n, w, u.terms)
    coeffs, pre = cb.reduce(vec)
    pre_terms = hc.cochain(n - 1, w, pre) if pre else {}
    return ClassReduction(n, w, coeffs, CochainElement(n - 1, pre_terms))


def equal_in_cohomology(u: CochainElement, v: CochainElement, hc: HochschildComplex) -> tuple:
    """(equal?, boundary preimage of u - v or None)."""
    diff = u - v
    if not diff:
        return True, zero(u.degree - 1)
    red = reduce_class(diff, hc)
    return red.is_zero, (red.preimage if red.is_zero else None)


def class_vectors(hc: HochschildComplex, n: int, w: int) -> list:
    cb = hc.cohomology(n, w)
    return [CochainElement(n, hc.cochain(n, w, r)) for r in cb.representatives]


def product_classes(hc: HochschildComplex, n1: int, w1: int, n2: int, w2: int) -> list:
    """Reduced coordinates of all pairwise products of basis classes."""
    _regular(hc)
    out = []
    for u in class_vectors(hc, n1, w1):
        for v in class_vectors(hc, n2, w2):
            out.append(reduce_class(multiply(u, v, hc.t, hc.coeff.rw), hc, w1 + w2).coefficients)
    return out


def weights_with_classes(hc: HochschildComplex, n: int, lo: int, hi: int) -> list:
    return [w for w in range(lo, hi + 1) if hc.cohomology(n, w).dim]


@dataclass
class ImageComparison:
    weight: int
    image_rank: int
    expected_rank: int
    equal: bool


def cup_image(hc: HochschildComplex, w: int, min_weight: int) -> list:
    """Span (as coordinate vectors in H^2 at w) of H^1_{w1} . H^1_{w-w1} over all splits."""
    vecs = []
    for w1 in range(min_weight, w - min_weight + 1):
        w2 = w - w1
        if not hc.cohomology(1, w1).dim or not hc.cohomology(1, w2).dim:
            continue
        for c in product_classes(hc, 1, w1, 1, w2):
            vecs.append({i: x for i, x in enumerate(c) if x})
    return vecs


def compare_image_with_central_multiple(hc: HochschildComplex, z: dict, w: int, min_weight: int) -> ImageComparison:
    """Does H^1 . H^1 at weight w equal z . H^2 at weight w - wt(z)?"""
    from .complexes import central_action, poly_weight

    img = cup_image(hc, w, min_weight)
    wz = poly_weight(hc.p, z)
    m = central_action(z, hc, 2, w - wz)
    expected = [c for c in m.columns() if c]
    e1, e2 = Echelon(), Echelon()
    for v in img:
        e1.add(v)
    for v in expected:
        e2.add(v)
    return ImageComparison(w, len(e1), len(e2), span_equal(img, expected))


@dataclass
class SurjectivityRow:
    weight: int
    rank: int
    target_dim: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def cup_surjectivity(hc: HochschildComplex, target_weight: int, min_weight: int, degrees=(1, 2)) -> SurjectivityRow:
    """Rank of H^a (x) H^b -> H^{a+b} at one target weight, over all weight splits."""
    _regular(hc)
    a, b = degrees
    tgt = hc.cohomology(a + b, target_weight)
    e = Echelon()
    lo_b = min_weight
    for w1 in range(min_weight, target_weight - lo_b + 1):
        w2 = target_weight - w1
        if not hc.cohomology(a, w1).dim or not hc.cohomology(b, w2).dim:
            continue
        for c in product_classes(hc, a, w1, b, w2):
            e.add({i: x for i, x in enumerate(c) if x})
    return SurjectivityRow(target_weight, len(e), tgt.dim)


def product_matrix(hc: HochschildComplex, n1: int, w1: int, n2: int, w2: int) -> Matrix:
    """Rows index pairs (i, j) of basis classes; columns the target basis."""
    rows = [{k: x for k, x in enumerate(c) if x} for c in product_classes(hc, n1, w1, n2, w2)]
    return Matrix(len(rows), hc.cohomology(n1 + n2, w1 + w2).dim, rows)
