"""Text frontend for presentation files and noncommutative expressions.

File grammar (line oriented, ``#`` starts a comment)::

    field Q                       |  field Q[t]/(t^2 - t + 1)
    generators: x1:1 x2:1 x3:2    (weight defaults to 1)
    relations:
      x1*x2 - x2*x1 - x3          (one relation per line)
    attest koszul                 (optional)
    bimodule p10 dim 1            (optional, repeatable)
      left x1: 1                  (rows separated by ';', entries by ',')
      right x1: 0
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact_linalg import Field, vec_iadd


class PresentationError(ValueError):
    """Parse or validation failure, with an optional 1-based line/column."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) and not m.group(3).isspace():
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _ExprParser:
    """Recursive descent over ``+ - * / ^ ( )``; values are {word: scalar}."""

    def __init__(self, text, field: Field, names: dict, line=None, col0=0, scalar_var="t"):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.names = names
        self.line = line
        self.col0 = col0
        self.scalar_var = scalar_var if field.modulus is not None else None

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise PresentationError(msg, self.line, self.col0 + tok[2] + 1 if self.line is not None else None)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            s = -1 if self.take()[1] == "-" else 1
            vec_iadd(acc, self.term(), s)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            tok = self.peek()
            rhs = self.factor()
            if op == "*":
                acc = _mul(acc, rhs)
            else:
                if set(rhs) - {()} or not rhs:
                    self.error("division only by nonzero scalars", tok)
                acc = _scale(acc, 1 / rhs[()])
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer", tok)
            out = {(): self.field.one}
            for _ in range(int(tok[1])):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return {(): self.field(int(val))}
        if kind == "name":
            if val in self.names:
                return {(self.names[val],): self.field.one}
            if val == self.scalar_var:
                return {(): self.field.gen()}
            self.i -= 1
            self.error(f"unknown generator {val!r}")
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return v
        self.i -= 1
        self.error(f"unexpected {val!r}" if kind != "end" else "unexpected end of expression")


def _scale(p: dict, c):
    return {w: c * x for w, x in p.items() if c * x}


def _mul(a: dict, b: dict):
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            vec_iadd(out, {u + v: x * y})
    return out


def parse_expression(text: str, field: Field, names: dict, line=None, col0=0) -> dict:
    """Parse a noncommutative polynomial into {word: coefficient}."""
    return _ExprParser(text, field, names, line, col0).parse()


def parse_scalar(text: str, field: Field, line=None, col0=0):
    v = parse_expression(text, field, {}, line, col0)
    if set(v) - {()}:
        raise PresentationError("expected a scalar", line, col0 + 1)
    return v.get((), field.zero)


def parse_field(spec: str, line=None) -> Field:
    s = spec.strip()
    if s in ("Q", "QQ"):
        return Field()
    m = re.fullmatch(r"Q\[t\]\s*/\s*\((.*)\)", s)
    if not m:
        raise PresentationError(f"unsupported field {s!r}; use Q or Q[t]/(poly)", line, 1)
    # the modulus is a polynomial in t with integer coefficients; parse it in Q[t] as a word polynomial
    poly = parse_expression(m.group(1), Field(), {"t": 0}, line)
    deg = max((len(w) for w in poly), default=0)
    coeffs = [Fraction(0)] * (deg + 1)
    for w, c in poly.items():
        coeffs[len(w)] += c
    if any(c.denominator != 1 for c in coeffs):
        raise PresentationError("field polynomial must have integer coefficients", line)
    try:
        return Field(coeffs)
    except ValueError as exc:
        raise PresentationError(str(exc), line) from None


def parse_matrix(text: str, field: Field, dim: int, line=None, col0=0) -> list:
    rows = [r for r in text.split(";")]
    if len(rows) != dim:
        raise PresentationError(f"expected {dim} matrix rows, got {len(rows)}", line, col0 + 1)
    out = []
    for r in rows:
        entries = [e for e in (r.split(",") if "," in r else r.split())]
        if len(entries) != dim:
            raise PresentationError(f"expected {dim} entries per row", line, col0 + 1)
        out.append([parse_scalar(e, field, line, col0) for e in entries])
    return out


_SECTION = re.compile(r"^(field|generators|relations|bimodule|attest|left|right)\b")


def parse_presentation(text: str):
    """Parse presentation-file text into a :class:`~koszulhh.presentation.Presentation`."""
    from .presentation import FiniteBimoduleSpec, Generator, Presentation

    field = None
    gens: list = []
    names: dict = {}
    relations = []
    attest = False
    bimodules: dict = {}
    section = None
    current_bimod = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = len(line) - len(line.lstrip())
        m = _SECTION.match(stripped)
        key = m.group(1) if m else None

        if key == "field":
            field = parse_field(stripped[len("field"):].lstrip(": "), lineno)
            section = None
        elif key == "generators":
            if field is None:
                field = Field()
            body = stripped[len("generators"):].lstrip().lstrip(":")
            for tok in body.split():
                nm, _, wt = tok.partition(":")
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", nm):
                    raise PresentationError(f"bad generator name {nm!r}", lineno, line.find(tok) + 1)
                if nm in names:
                    raise PresentationError(f"duplicate generator {nm!r}", lineno, line.find(tok) + 1)
                if field.modulus is not None and nm == "t":
                    raise PresentationError("'t' is reserved for the field generator", lineno)
                weight = None
                if wt:
                    if not wt.isdigit() or int(wt) < 1:
                        raise PresentationError(f"weight of {nm!r} must be a positive integer", lineno)
                    weight = int(wt)
                names[nm] = len(gens)
                gens.append(Generator(nm, weight))
            section = None
        elif key == "relations":
            if not gens:
                raise PresentationError("relations before generators", lineno, col0 + 1)
            section = "relations"
            rest = stripped[len("relations"):].lstrip().lstrip(":").strip()
            if rest:
                relations.append(_relation(rest, field, names, lineno, line.find(rest)))
        elif key == "attest":
            if stripped.split()[1:] != ["koszul"]:
                raise PresentationError("expected 'attest koszul'", lineno, col0 + 1)
            attest = True
            section = None
        elif key == "bimodule":
            mm = re.fullmatch(r"bimodule\s+([A-Za-z_][A-Za-z0-9_]*)\s+dim\s+(\d+)", stripped)
            if not mm:
                raise PresentationError("expected 'bimodule <name> dim <n>'", lineno, col0 + 1)
            current_bimod = mm.group(1)
            if current_bimod in bimodules:
                raise PresentationError(f"duplicate bimodule {current_bimod!r}", lineno)
            bimodules[current_bimod] = {"dim": int(mm.group(2)), "left": {}, "right": {}}
            section = "bimodule"
        elif key in ("left", "right"):
            if section != "bimodule":
                raise PresentationError(f"'{key}' outside a bimodule block", lineno, col0 + 1)
            mm = re.fullmatch(r"(left|right)\s+([A-Za-z_][A-Za-z0-9_']*)\s*:(.*)", stripped)
            if not mm:
                raise PresentationError(f"expected '{key} <generator>: <rows>'", lineno, col0 + 1)
            g = mm.group(2)
            if g not in names:
                raise PresentationError(f"unknown generator {g!r}", lineno, line.find(g) + 1)
            blk = bimodules[current_bimod]
            blk[key][names[g]] = parse_matrix(mm.group(3), field, blk["dim"], lineno, line.find(mm.group(3)))
        elif section == "relations":
            relations.append(_relation(stripped, field, names, lineno, col0))
        else:
            raise PresentationError(f"unrecognized line {stripped!r}", lineno, col0 + 1)

    if field is None:
        field = Field()
    if not gens:
        raise PresentationError("no generators declared")
    n = len(gens)
    bims = {}
    for name, blk in bimodules.items():
        d = blk["dim"]
        zero = [[field.zero] * d for _ in range(d)]
        bims[name] = FiniteBimoduleSpec(
            name,
            d,
            tuple(tuple(map(tuple, blk["left"].get(i, zero))) for i in range(n)),
            tuple(tuple(map(tuple, blk["right"].get(i, zero))) for i in range(n)),
        )
    return Presentation(
        field=field,
        generators=tuple(gens),
        relations=tuple(relations),
        attest_koszul=attest,
        bimodules=bims,
        source=text,
    )


def _relation(text, field, names, lineno, col0):
    from .presentation import FilteredRelation

    poly = parse_expression(text, field, names, lineno, col0)
    long_words = [w for w in poly if len(w) > 2]
    if long_words:
        raise PresentationError("word length > 2 in relation", lineno, col0 + 1)
    return FilteredRelation.from_poly(poly, field)
