"""Ext_{A_q}(p0, p1) as the homology of Lambda (x) p10, for several values of q."""

import argparse
from dataclasses import dataclass, field

from koszulhh.complexes import HochschildComplex, make_coefficients
from koszulhh.koszul_dual import koszul_dual
from koszulhh.parser import parse_presentation

TEMPLATE = """field {field}
generators: x1 x2 x3
relations:
  x1*x2 - {q}*x2*x1 - (1 - {q})*x3
  x2*x3 - {q}*x3*x2 - (1 - {q})*x1
  x3*x1 - {q}*x1*x3 - (1 - {q})*x2
bimodule p10 dim 1
  left x1: 1
  left x2: 1
  left x3: 1
"""


@dataclass
class Config:
    rational_q: list = field(default_factory=lambda: ["2", "-1", "1/2", "3"])
    number_fields: list = field(default_factory=lambda: ["t^2 - t + 1", "t^2 + t + 1", "t^2 + 1"])


def ext_dims(text: str) -> list:
    p = parse_presentation(text)
    hc = HochschildComplex(p, koszul_dual(p, 4), make_coefficients(p, "bimodule:p10"))
    return [hc.cohomology(n, None).dim for n in range(4)]


def main(cfg: Config) -> None:
    for q in cfg.rational_q:
        print(f"q = {q:>12} over Q:             {ext_dims(TEMPLATE.format(field='Q', q=f'({q})'))}")
    for m in cfg.number_fields:
        print(f"q = t, t root of {m:<12}: {ext_dims(TEMPLATE.format(field=f'Q[t]/({m})', q='t'))}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", nargs="*", default=None, help="rational values of q")
    a = ap.parse_args()
    main(Config(rational_q=a.q) if a.q else Config())
