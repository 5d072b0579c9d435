"""Slices of the small Hochschild complex (Lambda (x) M, d - [e, -]) and of the
Koszul bimodule resolution K = A (x) Lambda* (x) A, with their cohomology.

A cochain basis element is a pair ``(k, m)``: the k-th basis vector of
Lambda^n tensored with the module basis element m.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact_linalg import Echelon, Matrix, kernel_basis, rank, vec_iadd
from .koszul_dual import CheckResult, CurvedDualTable
from .presentation import FiniteBimoduleSpec, Presentation, Rewriter, confluent_rewriter, format_word


class ComplexError(ValueError):
    pass


# ---------- coefficients ----------


class Coefficients:
    kind = "abstract"
    is_algebra = False
    weighted = False

    def basis(self, weight):
        raise NotImplementedError

    def left(self, a: int, m) -> dict:
        raise NotImplementedError

    def right(self, m, a: int) -> dict:
        raise NotImplementedError

    def format(self, m) -> str:
        return str(m)

    def sort_key(self, m):
        return m


class RegularCoefficients(Coefficients):
    """M = A with basis the normal words."""

    kind = "regular"
    is_algebra = True

    def __init__(self, p: Presentation, rw: Rewriter):
        self.p, self.rw = p, rw
        self.weighted = p.is_weighted

    def basis(self, weight):
        return self.rw.normal_words(weight)

    def basis_up_to_length(self, n):
        return self.rw.normal_words_up_to_length(n)

    def left(self, a, m):
        return self.rw.reduce_word((a,) + m)

    def right(self, m, a):
        return self.rw.reduce_word(m + (a,))

    def format(self, m):
        return format_word(m, self.p.names)

    def sort_key(self, m):
        return (len(m), m)


class FiniteBimodule(Coefficients):
    """Finite-dimensional bimodule with basis 0..dim-1 (weights ignored)."""

    kind = "finite-bimodule"

    def __init__(self, p: Presentation, spec: FiniteBimoduleSpec):
        self.p, self.spec = p, spec
        self.name = spec.name
        field = p.field
        self._left = [[{r: field(row[c]) for r, row in enumerate(mat) if row[c]} for c in range(spec.dim)] for mat in spec.left]
        self._right = [[{r: field(row[c]) for r, row in enumerate(mat) if row[c]} for c in range(spec.dim)] for mat in spec.right]

    def basis(self, weight=None):
        return list(range(self.spec.dim))

    def left(self, a, m):
        return self._left[a][m]

    def right(self, m, a):
        return self._right[a][m]

    def format(self, m):
        return f"m{m + 1}"


class EnvelopingCoefficients(Coefficients):
    """M = A (x) A with the outer bimodule structure x.(u (x) v).y = xu (x) vy."""

    kind = "enveloping"

    def __init__(self, p: Presentation, rw: Rewriter):
        self.p, self.rw = p, rw
        self.weighted = p.is_weighted

    def basis(self, weight):
        out = []
        for wu in range(weight + 1):
            for u in self.rw.normal_words(wu):
                for v in self.rw.normal_words(weight - wu):
                    out.append((u, v))
        return out

    def left(self, a, m):
        u, v = m
        return {(w, v): c for w, c in self.rw.reduce_word((a,) + u).items()}

    def right(self, m, a):
        u, v = m
        return {(u, w): c for w, c in self.rw.reduce_word(v + (a,)).items()}

    def format(self, m):
        return f"{format_word(m[0], self.p.names)} | {format_word(m[1], self.p.names)}"

    def sort_key(self, m):
        return (len(m[0]) + len(m[1]), m)


def make_coefficients(p: Presentation, spec: str, rw: Rewriter | None = None) -> Coefficients:
    """``regular``, ``enveloping`` or ``bimodule:<name>``."""
    if spec.startswith("bimodule:"):
        name = spec.split(":", 1)[1]
        if name not in p.bimodules:
            raise ComplexError(f"unknown bimodule {name!r}; declared: {sorted(p.bimodules) or 'none'}")
        return FiniteBimodule(p, p.bimodules[name])
    rw = rw or confluent_rewriter(p)
    if spec == "regular":
        return RegularCoefficients(p, rw)
    if spec == "enveloping":
        return EnvelopingCoefficients(p, rw)
    raise ComplexError(f"unknown coefficients {spec!r}")


# ---------- slices ----------


@dataclass
class ComplexSlice:
    """Bases per cohomological degree and the differential matrices d^n: C^n -> C^{n+1}."""

    weight: object
    bases: dict
    matrices: dict
    one: object = 1
    index: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.index = {n: {b: i for i, b in enumerate(bs)} for n, bs in self.bases.items()}

    @property
    def degrees(self) -> list:
        return sorted(self.bases)

    def dim(self, n) -> int:
        return len(self.bases.get(n, ()))

    def check_d_squared(self) -> CheckResult:
        for n in sorted(self.matrices):
            if n + 1 in self.matrices:
                if not (self.matrices[n + 1] @ self.matrices[n]).is_zero():
                    return CheckResult("d^2 = 0", False, f"degree {n} at weight {self.weight}")
        return CheckResult("d^2 = 0", True)


def _hochschild_image(t: CurvedDualTable, coeff: Coefficients, n: int, k: int, m) -> dict:
    """D(eps_k (x) m) = d(eps_k) (x) m - sum_i (lambda_i eps_k (x) x_i m - (-1)^n eps_k lambda_i (x) m x_i)."""
    out: dict = {}
    for j, x in t.differential[n][k].items():
        vec_iadd(out, {(j, m): x})
    w = t.words[n][k]
    sign = -1 if n % 2 else 1
    for a in range(t.ngens):
        lm = coeff.left(a, m)
        if lm:
            for j, x in t.coords((a,) + w).items():
                for mm, y in lm.items():
                    vec_iadd(out, {(j, mm): -x * y})
        rm = coeff.right(m, a)
        if rm:
            for j, x in t.coords(w + (a,)).items():
                for mm, y in rm.items():
                    vec_iadd(out, {(j, mm): sign * x * y})
    return out


def _assemble(t, coeff, bases: dict, weight, image_fn) -> ComplexSlice:
    s = ComplexSlice(weight, bases, {}, t.field.one)
    for n in sorted(bases):
        if n + 1 not in bases:
            continue
        tgt = s.index[n + 1]
        cols = []
        for key in bases[n]:
            col = {}
            for tk, x in image_fn(n, key).items():
                i = tgt.get(tk)
                if i is None:
                    raise ComplexError(f"differential leaves the slice at degree {n}, weight {weight}: {tk}")
                col[i] = x
            cols.append(col)
        s.matrices[n] = Matrix.from_columns(cols, len(bases[n + 1]))
    return s


def hochschild_bases(t: CurvedDualTable, coeff: Coefficients, w, degrees) -> dict:
    bases = {}
    for n in degrees:
        bs = []
        for k in range(t.dim(n)):
            if coeff.weighted:
                ms = coeff.basis(w - t.weight(n, k))
            else:
                ms = coeff.basis(None)
            bs.extend((k, m) for m in ms)
        bases[n] = bs
    return bases


def build_hochschild_slice(p: Presentation, t: CurvedDualTable, coeff: Coefficients, w, degrees) -> ComplexSlice:
    """Slice at weight w (``None`` for finite coefficients) on the given degrees.

    The highest degree listed only serves as a target; its outgoing map is not built.
    """
    degrees = sorted(degrees)
    if isinstance(coeff, (RegularCoefficients, EnvelopingCoefficients)) and not coeff.weighted:
        raise ComplexError("presentation is not weighted; infinite coefficients need --truncate D")
    if degrees and degrees[-1] > t.max_degree:
        raise ComplexError(f"Lambda computed only up to degree {t.max_degree}")
    bases = hochschild_bases(t, coeff, w, degrees)
    return _assemble(t, coeff, bases, w, lambda n, key: _hochschild_image(t, coeff, n, key[0], key[1]))


# ---------- cohomology ----------


@dataclass
class CohomologyBasis:
    """H^n of a slice: kernel-basis representatives modulo boundaries."""

    degree: int
    weight: object
    slice: ComplexSlice
    representatives: list
    boundary_rank: int
    cocycle_dim: int
    _boundaries: Echelon
    _reps: Echelon

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def is_cocycle(self, v: dict) -> bool:
        m = self.slice.matrices.get(self.degree)
        return m is None or not m.apply(v)

    def is_boundary(self, v: dict) -> bool:
        return self._boundaries.contains(v)

    def reduce(self, v: dict):
        """Coefficients c with v - sum c_i rep_i = d(preimage); returns (c, preimage)."""
        if not self.is_cocycle(v):
            raise ComplexError(f"not a cocycle (degree {self.degree}, weight {self.weight})")
        r, _ = self._boundaries.reduce(v)
        rest, combo = self._reps.reduce(r)
        if rest:
            raise ComplexError("cocycle not expressible in the cohomology basis")
        coeffs = [combo.get(i, 0) for i in range(self.dim)]
        diff = dict(v)
        for i, c in enumerate(coeffs):
            if c:
                vec_iadd(diff, self.representatives[i], -c)
        r2, pre = self._boundaries.reduce(diff)
        assert not r2
        return coeffs, pre


def cohomology_at(s: ComplexSlice, n: int) -> CohomologyBasis:
    if n not in s.bases:
        raise ComplexError(f"degree {n} not in slice")
    dn = s.matrices.get(n)
    if dn is None and n + 1 in s.bases:
        raise ComplexError("missing differential")
    if dn is None:
        raise ComplexError(f"degree {n} is the top of the slice; build one degree higher")
    prev = s.matrices.get(n - 1)
    if prev is not None and not (dn @ prev).is_zero():
        raise ComplexError(f"d^2 != 0 at degree {n}, weight {s.weight}")
    bnd = Echelon(track=True)
    if prev is not None:
        for j, col in enumerate(prev.columns()):
            bnd.add(col, label=j)
    kern = kernel_basis(dn, s.one)
    reps_e = Echelon(track=True)
    reps = []
    for z in kern:
        r, _ = bnd.reduce(z)
        if reps_e.add(r, label=len(reps)):
            reps.append(z)
    return CohomologyBasis(n, s.weight, s, reps, len(bnd), len(kern), bnd, reps_e)


def homology(s: ComplexSlice, degrees=None) -> dict:
    """Cohomology bases for every degree of the slice that has an outgoing map."""
    chk = s.check_d_squared()
    if not chk.passed:
        raise ComplexError(chk.witness)
    degs = [n for n in (degrees if degrees is not None else s.degrees) if n in s.matrices]
    return {n: cohomology_at(s, n) for n in degs}


class HochschildComplex:
    """Cached access to slices and cohomology of (Lambda (x) M, d - [e, -])."""

    def __init__(self, p: Presentation, t: CurvedDualTable, coeff: Coefficients):
        self.p, self.t, self.coeff = p, t, coeff
        self.top = t.max_degree - 1  # highest degree whose differential can be built
        self._slices: dict = {}
        self._coh: dict = {}

    def slice(self, w) -> ComplexSlice:
        key = w if self.coeff.weighted else None
        if key not in self._slices:
            self._slices[key] = build_hochschild_slice(self.p, self.t, self.coeff, key, range(self.t.max_degree + 1))
        return self._slices[key]

    def cohomology(self, n: int, w) -> CohomologyBasis:
        key = (n, w if self.coeff.weighted else None)
        if key not in self._coh:
            if n < 0 or n > self.top:
                raise ComplexError(f"degree {n} outside the computed range 0..{self.top}")
            self._coh[key] = cohomology_at(self.slice(w), n)
        return self._coh[key]

    def vector(self, n: int, w, cochain: dict) -> dict:
        idx = self.slice(w).index[n]
        out = {}
        for key, x in cochain.items():
            if key not in idx:
                raise ComplexError(f"cochain term {key} is not in the slice (degree {n}, weight {w})")
            out[idx[key]] = x
        return out

    def cochain(self, n: int, w, vec: dict) -> dict:
        basis = self.slice(w).bases[n]
        return {basis[i]: x for i, x in vec.items()}

    def format_cochain(self, n: int, cochain: dict) -> str:
        return format_cochain(self.t, self.coeff, n, cochain)


def format_cochain(t: CurvedDualTable, coeff: Coefficients, n: int, cochain: dict) -> str:
    """Canonical text ``c*l1*l2 (x) x1^2*x3 + ...`` with deterministic term order."""
    from .exact_linalg import format_scalar

    if not cochain:
        return "0"

    parts = []
    for key in sorted(cochain, key=lambda kk: (kk[0], coeff.sort_key(kk[1]))):
        k, m = key
        s = format_scalar(cochain[key])
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = f"{t.format(n, k)} (x) {coeff.format(m)}"
        parts.append(("-" if neg else "+", body if mag == "1" else f"{mag}*{body}"))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


@dataclass
class HHTable:
    entries: dict  # (degree, weight) -> CohomologyBasis
    complex: HochschildComplex

    def dims(self) -> dict:
        return {k: v.dim for k, v in self.entries.items()}

    def representatives(self, n, w) -> list:
        cb = self.entries[(n, w)]
        return [self.complex.format_cochain(n, self.complex.cochain(n, w, r)) for r in cb.representatives]


def hh_report(p: Presentation, t: CurvedDualTable, m: Coefficients, weights, degrees) -> HHTable:
    hc = HochschildComplex(p, t, m)
    entries = {}
    ws = list(weights) if m.weighted else [None]
    for n in degrees:
        for w in ws:
            entries[(n, w)] = hc.cohomology(n, w)
    return HHTable(entries, hc)


# ---------- central action ----------


def check_central(p: Presentation, rw: Rewriter, z: dict) -> bool:
    for a in range(p.ngens):
        comm = rw.multiply({(a,): p.field.one}, z)
        vec_iadd(comm, rw.multiply(z, {(a,): p.field.one}), -1)
        if comm:
            return False
    return True


def poly_weight(p: Presentation, z: dict) -> int:
    ws = {p.word_weight(w) for w in z}
    if len(ws) != 1:
        raise ComplexError("central element must be weight-homogeneous")
    return ws.pop()


def central_action(z: dict, hc: HochschildComplex, n: int, w) -> Matrix:
    """Matrix of [u] -> [(1 (x) z) u] from H^n at weight w to H^n at weight w + wt(z)."""
    p, rw = hc.p, hc.coeff.rw
    if not isinstance(hc.coeff, RegularCoefficients):
        raise ComplexError("central action needs regular coefficients")
    z = rw.normal_form(z)
    if not check_central(p, rw, z):
        raise ComplexError(f"{p.format_poly(z)} is not central")
    wz = poly_weight(p, z)
    src = hc.cohomology(n, w)
    tgt = hc.cohomology(n, w + wz)
    cols = []
    for r in src.representatives:
        prod: dict = {}
        for (k, m), x in hc.cochain(n, w, r).items():
            for mm, y in rw.multiply(z, {m: p.field.one}).items():
                vec_iadd(prod, {(k, mm): x * y})
        coeffs, _ = tgt.reduce(hc.vector(n, w + wz, prod))
        cols.append({i: c for i, c in enumerate(coeffs) if c})
    return Matrix.from_columns(cols, tgt.dim)


# ---------- resolution ----------


@dataclass
class ResolutionSlice:
    weight: int
    slice: ComplexSlice  # degrees stored as n >= 0 meaning cohomological degree -n


def _dual_actions(t: CurvedDualTable, n: int):
    """For phi_k in (Lambda^n)*: d phi_k, lambda_i phi_k, phi_k lambda_i in (Lambda^{n-1})*."""
    dphi = [dict() for _ in range(t.dim(n))]
    lphi = [[dict() for _ in range(t.ngens)] for _ in range(t.dim(n))]
    rphi = [[dict() for _ in range(t.ngens)] for _ in range(t.dim(n))]
    s = 1 if n % 2 else -1  # -(-1)^n
    for j in range(t.dim(n - 1)):
        for k, x in t.differential[n - 1][j].items():
            vec_iadd(dphi[k], {j: s * x})
        wj = t.words[n - 1][j]
        for i in range(t.ngens):
            for k, x in t.coords(wj + (i,)).items():
                vec_iadd(lphi[k][i], {j: -x})
            for k, x in t.coords((i,) + wj).items():
                vec_iadd(rphi[k][i], {j: x})
    return dphi, lphi, rphi


def build_resolution_slice(p: Presentation, t: CurvedDualTable, w: int, degrees=None, rw: Rewriter | None = None) -> ResolutionSlice:
    if not p.is_weighted:
        raise ComplexError("resolution slices need a weighted presentation")
    rw = rw or confluent_rewriter(p)
    top = t.top_degree if degrees is None else max(degrees)
    if top > t.max_degree:
        raise ComplexError(f"Lambda computed only up to degree {t.max_degree}")
    bases = {}
    for n in range(top + 1):
        bs = []
        for k in range(t.dim(n)):
            rest = w + t.weight(n, k)
            for wx in range(rest + 1):
                for x in rw.normal_words(wx):
                    for y in rw.normal_words(rest - wx):
                        bs.append((x, k, y))
        bases[n] = bs
    actions = {n: _dual_actions(t, n) for n in range(1, top + 1)}
    sign_of = lambda n: 1 if n % 2 == 0 else -1  # (-1)^{|phi|} with |phi| = -n

    # store maps as "degree index" d: index n-1 <- n, so reverse the role via a relabelled slice
    s = ComplexSlice(w, {top - n: bases[n] for n in bases}, {}, t.field.one)
    for n in range(1, top + 1):
        dphi, lphi, rphi = actions[n]
        tgt = s.index[top - n + 1]
        cols = []
        for (x, k, y) in bases[n]:
            out: dict = {}
            for j, c in dphi[k].items():
                vec_iadd(out, {(x, j, y): c})
            for i in range(t.ngens):
                if lphi[k][i]:
                    for yy, c2 in rw.reduce_word((i,) + y).items():
                        for j, c in lphi[k][i].items():
                            vec_iadd(out, {(x, j, yy): -c * c2})
                if rphi[k][i]:
                    for xx, c2 in rw.reduce_word(x + (i,)).items():
                        for j, c in rphi[k][i].items():
                            vec_iadd(out, {(xx, j, y): sign_of(n) * c * c2})
            col = {}
            for key, c in out.items():
                if key not in tgt:
                    raise ComplexError(f"resolution differential leaves the weight-{w} slice")
                col[tgt[key]] = c
            cols.append(col)
        s.matrices[top - n] = Matrix.from_columns(cols, len(bases[n - 1]))
    return ResolutionSlice(w, s)


@dataclass
class ResolutionReport:
    weight: int
    d_squared_zero: bool
    h0: int
    dim_a: int
    negative_homology: dict  # n -> dim H^{-n}

    @property
    def passed(self) -> bool:
        return self.d_squared_zero and self.h0 == self.dim_a and not any(self.negative_homology.values())


def resolution_report(p: Presentation, t: CurvedDualTable, w: int, rw: Rewriter | None = None) -> ResolutionReport:
    rw = rw or confluent_rewriter(p)
    rs = build_resolution_slice(p, t, w, rw=rw)
    s = rs.slice
    top = max(s.bases)
    dsq = s.check_d_squared().passed
    ranks = {i: rank(m) for i, m in s.matrices.items()}
    h = {}
    for i in s.bases:  # stored index i is cohomological degree -(top - i)
        dim = s.dim(i)
        out_rank = ranks.get(i, 0)
        in_rank = ranks.get(i - 1, 0)
        h[top - i] = dim - out_rank - in_rank
    dim_a = len(rw.normal_words(w))
    return ResolutionReport(w, dsq, h[0], dim_a, {n: h[n] for n in h if n > 0})


def verify_resolution(p: Presentation, t: CurvedDualTable, max_weight: int, min_weight: int = 0) -> list:
    rw = confluent_rewriter(p)
    return [resolution_report(p, t, w, rw) for w in range(min_weight, max_weight + 1)]


# ---------- truncation ----------


@dataclass
class TruncatedEstimate:
    bound: int
    degrees: list
    dims_at_bound: list
    dims_at_next: list
    stable: list
    estimate: bool = True

    def as_dict(self) -> dict:
        return {
            "estimate": True,
            "bound": self.bound,
            "degrees": self.degrees,
            "dims": self.dims_at_bound,
            "dims_next": self.dims_at_next,
            "stable": self.stable,
        }


def truncated_slice(p: Presentation, t: CurvedDualTable, coeff: RegularCoefficients, bound: int, degrees) -> ComplexSlice:
    """Subcomplex spanned by eps (x) m with len(m) - n <= bound (normal forms never lengthen words)."""
    degrees = sorted(degrees)
    bases = {}
    for n in degrees:
        ms = coeff.basis_up_to_length(bound + n) if bound + n >= 0 else []
        bases[n] = [(k, m) for k in range(t.dim(n)) for m in ms]
    return _assemble(t, coeff, bases, f"F_{bound}", lambda n, key: _hochschild_image(t, coeff, n, key[0], key[1]))


def truncated_estimate(p: Presentation, t: CurvedDualTable, m: Coefficients, bound: int, degrees) -> TruncatedEstimate:
    if not isinstance(m, RegularCoefficients):
        raise ComplexError("truncation is implemented for regular coefficients")
    degrees = sorted(degrees)
    if degrees[-1] + 1 > t.max_degree:
        raise ComplexError(f"need Lambda up to degree {degrees[-1] + 1}")
    span = list(range(degrees[0], degrees[-1] + 2))

    def dims(D):
        s = truncated_slice(p, t, m, D, span)
        h = homology(s, degrees)
        return [h[n].dim for n in degrees]

    a, b = dims(bound), dims(bound + 1)
    return TruncatedEstimate(bound, degrees, a, b, [x == y for x, y in zip(a, b)])
