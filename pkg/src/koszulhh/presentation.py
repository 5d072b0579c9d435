"""Filtered quadratic presentations, PBW rewriting and the intersection coalgebra.

Words are tuples of generator indices. Noncommutative polynomials are sparse
dicts ``{word: coefficient}``. Words of equal length are compared
lexicographically on the declared generator order, so deg-lex is just
``(len(w), w)``.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .exact_linalg import Echelon, Field, Matrix, format_scalar, kernel_basis, reduce_mod_span, span_equal, vec_iadd
from .parser import PresentationError, parse_presentation


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int | None = None

    @property
    def effective_weight(self) -> int:
        return 1 if self.weight is None else self.weight


@dataclass(frozen=True)
class FilteredRelation:
    """``quadratic + linear + constant``; the linear part is alpha_1 and the constant alpha_0."""

    quadratic: dict
    linear: dict
    constant: object

    @classmethod
    def from_poly(cls, poly: dict, field: Field) -> "FilteredRelation":
        quad = {w: c for w, c in poly.items() if len(w) == 2}
        lin = {w[0]: c for w, c in poly.items() if len(w) == 1}
        const = poly.get((), field.zero)
        if not quad:
            raise PresentationError("relation has no quadratic part")
        return cls(dict(sorted(quad.items())), dict(sorted(lin.items())), const)

    def as_poly(self) -> dict:
        out = dict(self.quadratic)
        out.update({(a,): c for a, c in self.linear.items()})
        if self.constant:
            out[()] = self.constant
        return out

    def __hash__(self):
        return hash((tuple(self.quadratic.items()), tuple(self.linear.items()), self.constant))


@dataclass(frozen=True)
class FiniteBimoduleSpec:
    """Finite-dimensional bimodule; matrices act on column coordinate vectors.

    ``left[i][r][c]`` is the r-th coordinate of ``x_i . m_c`` and
    ``right[i][r][c]`` that of ``m_c . x_i``.
    """

    name: str
    dim: int
    left: tuple
    right: tuple


@dataclass(frozen=True, eq=False)
class Presentation:
    field: Field
    generators: tuple
    relations: tuple
    attest_koszul: bool = False
    bimodules: dict = dc_field(default_factory=dict)
    source: str = ""

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list:
        return [g.name for g in self.generators]

    @property
    def weights(self) -> list:
        return [g.effective_weight for g in self.generators]

    def word_weight(self, word) -> int:
        ws = self.weights
        return sum(ws[a] for a in word)

    @property
    def is_weighted(self) -> bool:
        """Every relation is homogeneous for the generator weights."""
        for r in self.relations:
            if len({self.word_weight(w) for w in r.as_poly()}) > 1:
                return False
        return True

    @property
    def is_curved(self) -> bool:
        return any(r.constant for r in self.relations)

    def digest(self) -> str:
        return hashlib.sha256(canonical_text(self).encode()).hexdigest()[:16]

    def format_poly(self, poly: dict) -> str:
        return format_polynomial(poly, self.names)

    def with_generator_order(self, perm) -> "Presentation":
        """Same algebra with generators listed in order ``perm`` (new i = old perm[i])."""
        inv = {old: new for new, old in enumerate(perm)}
        rels = []
        for r in self.relations:
            poly = {tuple(inv[a] for a in w): c for w, c in r.as_poly().items()}
            rels.append(FilteredRelation.from_poly(poly, self.field))
        bims = {
            k: FiniteBimoduleSpec(b.name, b.dim, tuple(b.left[p] for p in perm), tuple(b.right[p] for p in perm))
            for k, b in self.bimodules.items()
        }
        return Presentation(self.field, tuple(self.generators[p] for p in perm), tuple(rels), self.attest_koszul, bims)


def load_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def format_word(word, names, power=True) -> str:
    if not word:
        return "1"
    parts = []
    for a, grp in itertools.groupby(word):
        n = len(list(grp))
        if power and n > 1:
            parts.append(f"{names[a]}^{n}")
        else:
            parts.extend([names[a]] * n)
    return "*".join(parts)


def format_polynomial(poly: dict, names, power=True) -> str:
    if not poly:
        return "0"
    out = []
    for w in sorted(poly, key=lambda w: (len(w), w)):
        c = poly[w]
        s = format_scalar(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = format_word(w, names, power)
        if body == "1":
            term = mag
        elif mag == "1":
            term = body
        else:
            term = f"{mag}*{body}"
        out.append(("-" if neg else "+", term))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, term in out[1:]:
        text += f" {sign} {term}"
    return text


def canonical_text(p: Presentation) -> str:
    lines = [f"field {p.field!r}", "generators: " + " ".join(f"{g.name}:{g.effective_weight}" for g in p.generators)]
    lines.append("relations:")
    lines += ["  " + p.format_poly(r.as_poly()) for r in p.relations]
    if p.attest_koszul:
        lines.append("attest koszul")
    for name in sorted(p.bimodules):
        b = p.bimodules[name]
        lines.append(f"bimodule {name} dim {b.dim}")
        for side in ("left", "right"):
            for i, mat in enumerate(getattr(b, side)):
                rows = "; ".join(", ".join(format_scalar(x) for x in row) for row in mat)
                lines.append(f"  {side} {p.generators[i].name}: {rows}")
    return "\n".join(lines) + "\n"


# ---------- validation ----------


@dataclass(frozen=True)
class ValidationReport:
    dim_r: int
    weighted: bool
    curved: bool
    ngens: int
    field: str

    def as_dict(self) -> dict:
        return {"dim_R": self.dim_r, "weighted": self.weighted, "curved": self.curved, "generators": self.ngens, "field": self.field}


def validate(p: Presentation) -> ValidationReport:
    names = p.names
    if len(set(names)) != len(names):
        raise PresentationError("generator names are not unique")
    e = Echelon()
    for k, r in enumerate(p.relations):
        if not r.quadratic:
            raise PresentationError(f"relation {k + 1} has zero quadratic part")
        if not e.add(r.quadratic):
            raise PresentationError(f"quadratic parts are linearly dependent (relation {k + 1})")
    for b in p.bimodules.values():
        validate_bimodule(p, b)
    return ValidationReport(len(p.relations), p.is_weighted, p.is_curved, p.ngens, repr(p.field))


def _mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), 0) for j in range(n)] for i in range(n)]


def validate_bimodule(p: Presentation, b: FiniteBimoduleSpec) -> None:
    """Both actions satisfy every relation and the two actions commute."""
    n = b.dim
    zero = [[0] * n for _ in range(n)]
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def relation_image(mats, right):
        for k, r in enumerate(p.relations):
            acc = [row[:] for row in zero]
            for (x, y), c in r.quadratic.items():
                # on column vectors, m.(x y) = (m.x).y is R_y R_x
                prod = _mat_mul(mats[y], mats[x]) if right else _mat_mul(mats[x], mats[y])
                acc = [[acc[i][j] + c * prod[i][j] for j in range(n)] for i in range(n)]
            for x, c in r.linear.items():
                acc = [[acc[i][j] + c * mats[x][i][j] for j in range(n)] for i in range(n)]
            acc = [[acc[i][j] + r.constant * ident[i][j] for j in range(n)] for i in range(n)]
            if any(v for row in acc for v in row):
                side = "right" if right else "left"
                raise PresentationError(f"bimodule {b.name}: {side} action violates relation {k + 1}")

    relation_image(b.left, False)
    relation_image(b.right, True)
    for i in range(p.ngens):
        for j in range(p.ngens):
            if _mat_mul(b.left[i], b.right[j]) != _mat_mul(b.right[j], b.left[i]):
                raise PresentationError(
                    f"bimodule {b.name}: left {p.names[i]} and right {p.names[j]} do not commute"
                )


# ---------- rewriting ----------


class NotConfluentError(ValueError):
    pass


@dataclass(frozen=True)
class OverlapWitness:
    word: tuple
    left_reduction: dict
    right_reduction: dict


@dataclass(frozen=True)
class ConfluenceResult:
    passed: bool
    witness: OverlapWitness | None = None
    overlaps_checked: int = 0


class Rewriter:
    """Quadratic-leading rewriting system for a presentation.

    The relations are interreduced with quadratic words ordered from the
    largest down, so each row has a distinct deg-lex leading word L and the
    rule is L -> L - row (every other term is strictly smaller).
    """

    def __init__(self, p: Presentation):
        self.p = p
        self.field = p.field
        words = sorted({w for r in p.relations for w in r.quadratic}, reverse=True)
        rank_of = {w: i for i, w in enumerate(words)}
        e = Echelon()
        for r in p.relations:
            # encode relation so the pivot (min key) is the largest quadratic word
            vec = {}
            for w, c in r.as_poly().items():
                key = (0, rank_of[w]) if len(w) == 2 else (1, w)
                vec[key] = c
            if not e.add(vec):
                raise PresentationError("quadratic parts are linearly dependent")
        self.rules: dict = {}
        for key, row in e.pivots.items():
            if key[0] != 0:
                raise PresentationError("relation set is not orientable: a relation has no quadratic leading word")
            lead = words[key[1]]
            rhs = {}
            for k, c in row.items():
                if k == key:
                    continue
                w = words[k[1]] if k[0] == 0 else k[1]
                rhs[w] = -c
            self.rules[lead] = rhs
        self._memo: dict = {}

    @property
    def leading_words(self) -> list:
        return sorted(self.rules)

    def is_normal(self, word) -> bool:
        return all(word[i : i + 2] not in self.rules for i in range(len(word) - 1))

    def reduce_word(self, word: tuple) -> dict:
        """Normal form of a single word (leftmost reduction, memoized)."""
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        for i in range(len(word) - 1):
            rhs = self.rules.get(word[i : i + 2])
            if rhs is not None:
                out: dict = {}
                pre, post = word[:i], word[i + 2 :]
                for w, c in rhs.items():
                    vec_iadd(out, self.reduce_word(pre + w + post), c)
                break
        else:
            out = {word: self.field.one}
        self._memo[word] = out
        return out

    def normal_form(self, poly: dict) -> dict:
        out: dict = {}
        for w, c in poly.items():
            if c:
                vec_iadd(out, self.reduce_word(tuple(w)), c)
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of two normal forms, returned in normal form."""
        out: dict = {}
        for u, x in a.items():
            for v, y in b.items():
                vec_iadd(out, self.reduce_word(u + v), x * y)
        return out

    def confluence(self) -> ConfluenceResult:
        checked = 0
        for (a, b) in self.leading_words:
            for (b2, c) in self.leading_words:
                if b2 != b:
                    continue
                checked += 1
                left: dict = {}
                for w, x in self.rules[(a, b)].items():
                    vec_iadd(left, self.reduce_word(w + (c,)), x)
                right: dict = {}
                for w, x in self.rules[(b, c)].items():
                    vec_iadd(right, self.reduce_word((a,) + w), x)
                if left != right:
                    return ConfluenceResult(False, OverlapWitness((a, b, c), left, right), checked)
        return ConfluenceResult(True, None, checked)

    def normal_words(self, weight: int) -> list:
        """All normal words of the given total weight, deg-lex sorted."""
        ws = self.p.weights
        out = []
        stack = [()]
        while stack:
            w = stack.pop()
            wt = sum(ws[a] for a in w)
            if wt == weight:
                out.append(w)
                continue
            for a in range(self.p.ngens):
                if wt + ws[a] <= weight and (not w or (w[-1], a) not in self.rules):
                    stack.append(w + (a,))
        return sorted(out, key=lambda w: (len(w), w))

    def normal_words_up_to_length(self, n: int) -> list:
        out = [()]
        frontier = [()]
        for _ in range(n):
            nxt = []
            for w in frontier:
                for a in range(self.p.ngens):
                    if not w or (w[-1], a) not in self.rules:
                        nxt.append(w + (a,))
            out += nxt
            frontier = nxt
        return sorted(out, key=lambda w: (len(w), w))


def rewriter(p: Presentation) -> Rewriter:
    return Rewriter(p)


def pbw_confluence_check(p: Presentation) -> ConfluenceResult:
    return Rewriter(p).confluence()


def confluent_rewriter(p: Presentation) -> Rewriter:
    """Rewriter that refuses non-confluent presentations."""
    rw = Rewriter(p)
    res = rw.confluence()
    if not res.passed:
        w = res.witness
        raise NotConfluentError(
            f"presentation is not PBW-confluent: overlap {format_word(w.word, p.names, power=False)} "
            f"reduces to {p.format_poly(w.left_reduction)} and {p.format_poly(w.right_reduction)}"
        )
    return rw


def normal_form(poly, p: Presentation) -> dict:
    """Normal form of a polynomial (or a single word) in the algebra presented by p."""
    if isinstance(poly, tuple):
        poly = {poly: p.field.one}
    return confluent_rewriter(p).normal_form(poly)


# ---------- intersection coalgebra ----------


def r_perp(p: Presentation) -> list:
    """Basis of the annihilator of R in V*(x)V*, as vectors over words (a, b)."""
    n = p.ngens
    cols = [(a, b) for a in range(n) for b in range(n)]
    m = Matrix(len(p.relations), len(cols), [{cols.index(w): c for w, c in r.quadratic.items()} for r in p.relations])
    return [{cols[j]: c for j, c in v.items()} for v in kernel_basis(m, p.field.one)]


def annihilator(vectors: list, n: int, one) -> list:
    cols = [(a, b) for a in range(n) for b in range(n)]
    idx = {w: j for j, w in enumerate(cols)}
    m = Matrix(len(vectors), len(cols), [{idx[w]: c for w, c in v.items()} for v in vectors])
    return [{cols[j]: c for j, c in v.items()} for v in kernel_basis(m, one)]


@dataclass(frozen=True, eq=False)
class IntersectionCoalgebra:
    """Bases of C^{-i} inside V^{(x)i}, each in reduced echelon form over ascending words.

    ``alpha1[l]`` and ``alpha0[l]`` are the linear and constant parts attached to
    the l-th basis element of C^{-2}: the restrictions of d_C and f_C.
    """

    field: Field
    ngens: int
    components: tuple
    alpha1: tuple
    alpha0: tuple
    max_degree: int

    def dims(self) -> list:
        return [len(c) for c in self.components]

    @property
    def top_degree(self) -> int:
        nz = [i for i, c in enumerate(self.components) if c]
        return nz[-1] if nz else 0

    def contains(self, i: int, v: dict) -> bool:
        e = Echelon()
        for b in self.components[i]:
            e.add(b)
        return e.contains(v)


def _next_component(prev: list, perp: list, n: int, one) -> list:
    """(C^{-(i-1)} (x) V) meet (V^{i-2} (x) R), as an RREF basis."""
    cand = [(bi, a) for bi in range(len(prev)) for a in range(n)]
    rows: dict = {}
    for j, (bi, a) in enumerate(cand):
        for w, x in prev[bi].items():
            u, last = w[:-1], w[-1]
            for pi, rho in enumerate(perp):
                y = rho.get((last, a))
                if y:
                    key = (u, pi)
                    rows.setdefault(key, {})
                    vec_iadd(rows[key], {j: x * y})
    m = Matrix(len(rows), len(cand), [rows[k] for k in sorted(rows)])
    e = Echelon()
    for v in kernel_basis(m, one):
        vec = {}
        for j, y in v.items():
            bi, a = cand[j]
            for w, x in prev[bi].items():
                vec_iadd(vec, {w + (a,): x * y})
        e.add(vec)
    return e.basis()


def intersection_coalgebra(p: Presentation, max_degree: int) -> IntersectionCoalgebra:
    n, one = p.ngens, p.field.one
    comps = [[{(): one}]]
    if max_degree >= 1:
        comps.append([{(a,): one} for a in range(n)])
    perp = r_perp(p)
    for i in range(2, max_degree + 1):
        if not comps[-1]:
            comps.append([])
            continue
        comps.append(_next_component(comps[-1], perp, n, one))
    alpha1, alpha0 = [], []
    if max_degree >= 2:
        quads = [r.quadratic for r in p.relations]
        for c in comps[2]:
            res = reduce_mod_span(c, quads)
            if not res.in_span:
                raise PresentationError("intersection coalgebra degree 2 does not match R")
            lin: dict = {}
            const = p.field.zero
            for coef, r in zip(res.coefficients, p.relations):
                if coef:
                    vec_iadd(lin, r.linear, coef)
                    const = const + coef * r.constant
            alpha1.append(lin)
            alpha0.append(const)
    return IntersectionCoalgebra(p.field, n, tuple(tuple(c) for c in comps), tuple(alpha1), tuple(alpha0), max_degree)


def coproduct_check(c: IntersectionCoalgebra) -> tuple | None:
    """Check that every split of every basis element lies in C^{-p} (x) C^{-q}.

    Returns ``None`` on success, else ``(degree, basis index, split)``.
    """
    echelons = []
    for comp in c.components:
        e = Echelon()
        for b in comp:
            e.add(b)
        echelons.append(e)
    for i, comp in enumerate(c.components):
        for k, vec in enumerate(comp):
            for s in range(1, i):
                left: dict = {}
                right: dict = {}
                for w, x in vec.items():
                    left.setdefault(w[s:], {})[w[:s]] = x
                    right.setdefault(w[:s], {})[w[s:]] = x
                if not all(echelons[s].contains(v) for v in left.values()):
                    return (i, k, s)
                if not all(echelons[i - s].contains(v) for v in right.values()):
                    return (i, k, s)
    return None


def double_perp_check(p: Presentation) -> bool:
    """(R^perp)^perp equals R inside V (x) V."""
    back = annihilator(r_perp(p), p.ngens, p.field.one)
    return span_equal(back, [r.quadratic for r in p.relations])
