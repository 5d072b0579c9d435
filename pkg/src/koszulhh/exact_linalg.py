"""Exact linear algebra over Q and number fields Q[t]/(m(t)).

Vectors are sparse dicts ``{index: value}`` with no stored zeros. Matrices
keep sparse rows. Elimination is plain Gauss-Jordan with canonical
fractions; pivots are the first nonzero column, so every output is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

Scalar = Any
Vector = dict


# ---------- univariate polynomials over Q (coefficient tuples, low degree first) ----------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
    return _trim(q), _trim(a)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the field polynomial")
    c = r0[0]
    _, inv = _poly_divmod([x / c for x in s0], m)
    return inv


# ---------- fields ----------


class Field:
    """Q (``modulus=None``) or Q[t]/(m) for a monic m of degree >= 1.

    Irreducibility of m is the caller's responsibility; it is not checked.
    """

    def __init__(self, modulus: Sequence | None = None):
        if modulus is None:
            self.modulus = None
        else:
            m = _trim([Fraction(c) for c in modulus])
            if len(m) < 2:
                raise ValueError("field polynomial must have degree >= 1")
            if m[-1] != 1:
                raise ValueError("field polynomial must be monic")
            self.modulus = tuple(m)

    @property
    def kind(self) -> str:
        return "rationals" if self.modulus is None else "number-field"

    @property
    def degree(self) -> int:
        return 1 if self.modulus is None else len(self.modulus) - 1

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def gen(self):
        if self.modulus is None:
            raise ValueError("Q has no generator t")
        return NumberFieldElement(self, (Fraction(0), Fraction(1)))

    def __call__(self, x) -> Scalar:
        if self.modulus is None:
            if isinstance(x, NumberFieldElement):
                raise TypeError("cannot coerce a number-field element into Q")
            return Fraction(x)
        if isinstance(x, NumberFieldElement):
            if x.field != self:
                raise TypeError("elements of different fields")
            return x
        return NumberFieldElement(self, (Fraction(x),))

    def __eq__(self, other):
        return isinstance(other, Field) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return "Q"
        return f"Q[t]/({format_poly(self.modulus)})"


def format_poly(coeffs, var="t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = (str(a) if a != 1 or not mono else "") + (("*" if a != 1 and mono else "") + mono)
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class NumberFieldElement:
    """Element of Q[t]/(m), stored reduced: degree < deg m."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(field.modulus):
            _, c = _poly_divmod(c, field.modulus)
        self.coeffs = tuple(_trim(c))

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, (Fraction(other),))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return NumberFieldElement(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NumberFieldElement(self.field, _poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("division by zero in number field")
        return NumberFieldElement(self.field, _poly_inverse_mod(list(self.coeffs), list(self.field.modulus)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = NumberFieldElement(self.field, (Fraction(1),))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NumberFieldElement(self.field, (Fraction(other),))
        if not isinstance(other, NumberFieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def __repr__(self):
        return format_poly(self.coeffs)

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1


def format_scalar(c) -> str:
    """Canonical text for a scalar; compound number-field values get parentheses."""
    if isinstance(c, NumberFieldElement):
        if c.is_rational():
            return str(c.coeffs[0] if c.coeffs else 0)
        return f"({c!r})"
    return str(Fraction(c))


# ---------- sparse vectors ----------


def vec_add(u: Vector, v: Vector, scale=1) -> Vector:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + scale * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_iadd(u: Vector, v: Vector, scale=1) -> None:
    for k, x in v.items():
        y = u.get(k, 0) + scale * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vec_scale(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def as_sparse(v) -> Vector:
    if isinstance(v, dict):
        return {k: x for k, x in v.items() if x}
    return {i: x for i, x in enumerate(v) if x}


def to_dense(v: Vector, n: int, zero=0) -> list:
    out = [zero] * n
    for i, x in v.items():
        out[i] = x
    return out


# ---------- matrices ----------


@dataclass
class Matrix:
    """Sparse matrix: ``rows[i]`` maps column index to a nonzero entry."""

    nrows: int
    ncols: int
    rows: list

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], field: Field | None = None):
        conv = field if field is not None else (lambda x: x)
        ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: conv(x) for j, x in enumerate(r) if x})
        return cls(len(entries), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int):
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    rows[i][j] = x
        return cls(nrows, len(columns), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int):
        return cls(nrows, ncols, [dict() for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int, one=Fraction(1)):
        return cls(n, n, [{i: one} for i in range(n)])

    def columns(self) -> list:
        cols = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.columns())

    def to_dense(self, zero=0) -> list:
        return [to_dense(r, self.ncols, zero) for r in self.rows]

    def apply(self, v) -> Vector:
        v = as_sparse(v)
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for j, x in row.items():
                y = v.get(j)
                if y:
                    s = s + x * y
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        rows = []
        for row in self.rows:
            acc = {}
            for k, x in row.items():
                vec_iadd(acc, other.rows[k], x)
            rows.append(acc)
        return Matrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not any(self.rows)


# ---------- elimination ----------


class Echelon:
    """Incremental reduced row echelon form.

    Every stored pivot row has entry 1 at its pivot column and 0 at all other
    pivot columns. With ``track=True`` each row carries the combination of
    inserted labels that produced it.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}  # pivot column -> row
        self.combos: dict = {}  # pivot column -> {label: coeff}
        self.order: list = []  # pivot columns in insertion order

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: Vector):
        """Return (residual, combo) with v = residual + sum combo[l] * inserted[l]."""
        r = dict(v)
        combo: dict = {}
        hits = sorted(c for c in r if c in self.pivots)
        for c in hits:
            x = r.get(c)
            if not x:
                continue
            vec_iadd(r, self.pivots[c], -x)
            if self.track:
                vec_iadd(combo, self.combos[c], x)
        return r, combo

    def add(self, v, label=None) -> bool:
        """Insert v; return True if it enlarged the span."""
        v = as_sparse(v)
        r, combo = self.reduce(v)
        if not r:
            return False
        if self.track:
            # residual = v - combo, so its label combination is {label: 1} - combo
            combo = vec_add({label: 1}, combo, -1)
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        if self.track:
            combo = {k: x * inv for k, x in combo.items()}
        for c, row in self.pivots.items():
            x = row.get(p)
            if x:
                vec_iadd(row, r, -x)
                if self.track:
                    vec_iadd(self.combos[c], combo, -x)
        self.pivots[p] = r
        if self.track:
            self.combos[p] = combo
        self.order.append(p)
        return True

    def contains(self, v) -> bool:
        r, _ = self.reduce(as_sparse(v))
        return not r

    def basis(self) -> list:
        """Pivot rows sorted by pivot column (the RREF rows)."""
        return [self.pivots[c] for c in sorted(self.pivots)]


def rank(m: Matrix) -> int:
    e = Echelon()
    for row in m.rows:
        e.add(row)
    return len(e)


def rref(m: Matrix) -> tuple[list, list]:
    """Reduced row echelon form: (nonzero rows in pivot order, pivot columns)."""
    e = Echelon()
    for row in m.rows:
        e.add(row)
    cols = sorted(e.pivots)
    return [e.pivots[c] for c in cols], cols


def kernel_basis(m: Matrix, one=Fraction(1)) -> list:
    """Basis of {v : m v = 0}, one vector per free column, in column order."""
    e = Echelon()
    for row in m.rows:
        e.add(row)
    out = []
    for f in range(m.ncols):
        if f in e.pivots:
            continue
        v = {f: one}
        for c, row in e.pivots.items():
            x = row.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


def image_basis(m: Matrix) -> list:
    """RREF basis of the column space of m."""
    e = Echelon()
    for col in m.columns():
        e.add(col)
    return e.basis()


@dataclass
class SpanResult:
    in_span: bool
    coefficients: list | None
    residual: Vector


def reduce_mod_span(v, basis: Sequence) -> SpanResult:
    """Express v in terms of ``basis`` or return a residual outside the span.

    ``basis`` need not be independent; coefficients then come from the first
    independent subfamily in the given order.
    """
    dims = {len(b) for b in basis if isinstance(b, (list, tuple))}
    if isinstance(v, (list, tuple)):
        dims.add(len(v))
    if len(dims) > 1:
        raise ValueError("dimension mismatch between vector and basis")
    e = Echelon(track=True)
    for i, b in enumerate(basis):
        e.add(as_sparse(b), label=i)
    r, combo = e.reduce(as_sparse(v))
    if r:
        return SpanResult(False, None, r)
    coeffs = [combo.get(i, 0) for i in range(len(basis))]
    return SpanResult(True, coeffs, {})


def solve(m: Matrix, b) -> Vector | None:
    """Some x with m x = b, or None when b is outside the column space."""
    e = Echelon(track=True)
    for j, col in enumerate(m.columns()):
        e.add(col, label=j)
    r, combo = e.reduce(as_sparse(b))
    if r:
        return None
    return combo


def span_equal(a: Iterable[Vector], b: Iterable[Vector]) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    if len(ea) != len(eb):
        return False
    return all(eb.contains(v) for v in ea.basis())


def span_rank(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)
