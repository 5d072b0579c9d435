"""The curved Koszul dual (Lambda, d, c) of a filtered quadratic presentation.

Lambda^n is the linear dual of C^{-n}. Each basis vector c_k of C^{-n} is in
reduced echelon form with pivot word w_k, and we take eps_k = lambda^{w_k}.
With the signed pairing <lambda^u, c> = (-1)^{n(n-1)/2} c[u], the eps_k are
the dual basis up to that global sign, and an arbitrary lambda-word u has
coordinates (c_k[u])_k. Products are therefore plain coordinate lookups.

Cochains in Lambda (x) M are dicts keyed by ``(k, m)`` with the degree kept
alongside; this module handles Lambda itself and the element e.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .exact_linalg import Field, vec_iadd
from .presentation import IntersectionCoalgebra, Presentation, Rewriter, confluent_rewriter, intersection_coalgebra


def koszul_sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True, eq=False)
class CurvedDualTable:
    field: Field
    ngens: int
    gen_weights: tuple
    coalgebra: IntersectionCoalgebra
    words: tuple  # words[n][k] is the pivot word of the k-th basis vector of Lambda^n
    columns: tuple  # columns[n][u] = coordinates of lambda^u
    differential: tuple | None = None  # differential[n][k] = d(eps_k) in Lambda^{n+1}
    curvature: dict | None = None

    @property
    def max_degree(self) -> int:
        return len(self.words) - 1

    def dims(self) -> list:
        return [len(w) for w in self.words]

    def dim(self, n: int) -> int:
        return len(self.words[n]) if 0 <= n <= self.max_degree else 0

    @property
    def top_degree(self) -> int:
        nz = [n for n, w in enumerate(self.words) if w]
        return nz[-1]

    def weight(self, n: int, k: int) -> int:
        return -sum(self.gen_weights[a] for a in self.words[n][k])

    def coords(self, word: tuple) -> dict:
        n = len(word)
        if n > self.max_degree:
            raise ValueError(f"Lambda computed only up to degree {self.max_degree}; need {n}")
        return self.columns[n].get(tuple(word), {})

    def basis_product(self, n: int, i: int, m: int, j: int) -> dict:
        return self.coords(self.words[n][i] + self.words[m][j])

    def multiply(self, n: int, u: dict, m: int, v: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                vec_iadd(out, self.basis_product(n, i, m, j), x * y)
        return out

    def d(self, n: int, u: dict) -> dict:
        if self.differential is None:
            raise ValueError("curved structure not built")
        if n >= len(self.differential):
            raise ValueError(f"d is available only on degrees < {len(self.differential)}")
        out: dict = {}
        for k, x in u.items():
            vec_iadd(out, self.differential[n][k], x)
        return out

    def generator(self, a: int) -> dict:
        return self.coords((a,))

    def format(self, n: int, k: int, names=None) -> str:
        w = self.words[n][k]
        if not w:
            return "1"
        return "*".join(f"l{a + 1}" if names is None else names[a] for a in w)

    def format_element(self, n: int, u: dict) -> str:
        from .exact_linalg import format_scalar

        if not u:
            return "0"
        parts = []
        for k in sorted(u):
            s = format_scalar(u[k])
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            body = self.format(n, k)
            term = body if mag == "1" else (mag if body == "1" else f"{mag}*{body}")
            parts.append(("-" if neg else "+", term))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def compute_dual(c: IntersectionCoalgebra, gen_weights=None) -> CurvedDualTable:
    """Bases of Lambda^n dual to C^{-n} and the lookup tables for products."""
    words, columns = [], []
    for comp in c.components:
        ws = []
        cols: dict = {}
        for k, vec in enumerate(comp):
            ws.append(min(vec))
            for u, x in vec.items():
                cols.setdefault(u, {})[k] = x
        words.append(tuple(ws))
        columns.append(cols)
    gw = tuple(gen_weights) if gen_weights is not None else (1,) * c.ngens
    return CurvedDualTable(c.field, c.ngens, gw, c, tuple(words), tuple(columns))


def _d_generator(t: CurvedDualTable, a: int) -> dict:
    """d(lambda_a) = lambda_a composed with alpha_1, read through the signed identification."""
    out = {}
    for l, lin in enumerate(t.coalgebra.alpha1):
        x = lin.get(a)
        if x:
            out[l] = -x
    return out


def build_curved_structure(p: Presentation, t: CurvedDualTable) -> CurvedDualTable:
    if t.dim(1) != p.ngens or (t.max_degree >= 2 and t.dim(2) != len(p.relations)):
        raise ValueError("Lambda^1 and Lambda^2 do not match the generators and relations")
    dgen = [_d_generator(t, a) for a in range(p.ngens)] if t.max_degree >= 2 else []
    diffs = []
    for n in range(t.max_degree):
        row = []
        for w in t.words[n]:
            acc: dict = {}
            for pos, a in enumerate(w):
                sign = -1 if pos % 2 else 1
                pre, post = w[:pos], w[pos + 1 :]
                for l, x in dgen[a].items():
                    vec_iadd(acc, t.coords(pre + t.words[2][l] + post), sign * x)
            row.append(acc)
        diffs.append(tuple(row))
    curv = {}
    if t.max_degree >= 2:
        curv = {l: x for l, x in enumerate(t.coalgebra.alpha0) if x}
    return replace(t, differential=tuple(diffs), curvature=curv)


def koszul_dual(p: Presentation, max_degree: int) -> CurvedDualTable:
    c = intersection_coalgebra(p, max_degree)
    return build_curved_structure(p, compute_dual(c, p.weights))


# ---------- checks ----------


def verify_curved(t: CurvedDualTable) -> CheckResult:
    """d^2 = [c, -] on every basis element in range and d(c) = 0."""
    c = t.curvature or {}
    for n in range(t.max_degree - 1):
        for k in range(t.dim(n)):
            dd = t.d(n + 1, t.d(n, {k: t.field.one}))
            comm = t.multiply(2, c, n, {k: t.field.one})
            vec_iadd(comm, t.multiply(n, {k: t.field.one}, 2, c), -1)
            if dd != comm:
                return CheckResult("curved: d^2 = [c,-]", False, f"basis {t.format(n, k)} in degree {n}")
    if t.max_degree >= 3 and t.d(2, c):
        return CheckResult("curved: d^2 = [c,-]", False, "d(c) != 0")
    return CheckResult("curved: d^2 = [c,-], d(c) = 0", True)


def leibniz_check(t: CurvedDualTable) -> CheckResult:
    one = t.field.one
    for n in range(t.max_degree):
        for m in range(t.max_degree - n):
            for i in range(t.dim(n)):
                for j in range(t.dim(m)):
                    a, b = {i: one}, {j: one}
                    lhs = t.d(n + m, t.multiply(n, a, m, b))
                    rhs = t.multiply(n + 1, t.d(n, a), m, b)
                    vec_iadd(rhs, t.multiply(n, a, m + 1, t.d(m, b)), -1 if n % 2 else 1)
                    if lhs != rhs:
                        return CheckResult("Leibniz for d", False, f"{t.format(n, i)} * {t.format(m, j)}")
    return CheckResult("Leibniz for d", True)


def associativity_check(t: CurvedDualTable) -> CheckResult:
    one = t.field.one
    top = t.max_degree
    for n in range(top + 1):
        for m in range(top + 1 - n):
            for r in range(top + 1 - n - m):
                for i in range(t.dim(n)):
                    for j in range(t.dim(m)):
                        for k in range(t.dim(r)):
                            a, b, c = {i: one}, {j: one}, {k: one}
                            lhs = t.multiply(n + m, t.multiply(n, a, m, b), r, c)
                            rhs = t.multiply(n, a, m + r, t.multiply(m, b, r, c))
                            if lhs != rhs:
                                return CheckResult(
                                    "associativity of Lambda", False, f"({t.format(n, i)}, {t.format(m, j)}, {t.format(r, k)})"
                                )
    return CheckResult("associativity of Lambda", True)


def twisting_cochain_check(p: Presentation, t: CurvedDualTable, rw: Rewriter | None = None) -> CheckResult:
    """-f_C(r) - pi(d_C r) + mu(pi (x) pi)Delta(r) vanishes in A for every basis r of C^{-2}.

    The Koszul sign of (pi (x) pi) on V (x) V is -1, so the last term is -r read in A.
    """
    rw = rw or confluent_rewriter(p)
    for l, r in enumerate(t.coalgebra.components[2] if t.max_degree >= 2 else ()):
        val: dict = {(): -t.coalgebra.alpha0[l]} if t.coalgebra.alpha0[l] else {}
        vec_iadd(val, {(a,): x for a, x in t.coalgebra.alpha1[l].items()}, -1)
        vec_iadd(val, rw.normal_form(r), -1)
        if val:
            return CheckResult("twisting cochain", False, f"relation {p.format_poly(r)} gives {p.format_poly(val)}")
    return CheckResult("twisting cochain", True)


def identity_element(t: CurvedDualTable) -> dict:
    """e = sum_i lambda_i (x) x_i as a degree-1 cochain {(k, word): coeff}."""
    one = t.field.one
    out: dict = {}
    for a in range(t.ngens):
        for k, x in t.generator(a).items():
            vec_iadd(out, {(k, (a,)): x * one})
    return out


def e_identity_check(p: Presentation, t: CurvedDualTable, rw: Rewriter | None = None) -> CheckResult:
    """d(e) = e^2 + c (x) 1 in Lambda (x) A."""
    rw = rw or confluent_rewriter(p)
    e = identity_element(t)
    de: dict = {}
    for (k, m), x in e.items():
        for j, y in t.d(1, {k: x}).items():
            vec_iadd(de, {(j, m): y})
    e2: dict = {}
    for (i, u), x in e.items():
        for (j, v), y in e.items():
            prod = t.basis_product(1, i, 1, j)
            for m, z in rw.reduce_word(u + v).items():
                for k, w in prod.items():
                    vec_iadd(e2, {(k, m): x * y * z * w})
    for k, x in (t.curvature or {}).items():
        vec_iadd(e2, {(k, ()): x})
    if de != e2:
        diff = dict(de)
        vec_iadd(diff, e2, -1)
        return CheckResult("e-identity d(e) = e^2 + c", False, f"difference has {len(diff)} terms")
    return CheckResult("e-identity d(e) = e^2 + c", True)


def dual_report(p: Presentation, t: CurvedDualTable) -> dict:
    """Readable summary of Lambda: bases, d on generators, curvature."""
    out = {"dims": t.dims(), "basis": [[t.format(n, k) for k in range(t.dim(n))] for n in range(t.max_degree + 1)]}
    if t.max_degree >= 2:
        out["d"] = {f"l{a + 1}": t.format_element(2, t.d(1, t.generator(a))) for a in range(p.ngens)}
        out["curvature"] = t.format_element(2, t.curvature or {})
    return out
