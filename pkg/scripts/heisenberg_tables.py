"""Print HH^n(U(h)) dimensions per weight next to the basis counts, and the x3 action ranks."""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from koszulhh.complexes import HochschildComplex, RegularCoefficients, central_action
from koszulhh.exact_linalg import rank
from koszulhh.koszul_dual import koszul_dual
from koszulhh.presentation import confluent_rewriter, load_presentation

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))
from oracles import heisenberg_enumeration as oracle  # noqa: E402


@dataclass
class Config:
    presentation: Path = ROOT / "presentations" / "heisenberg.kp"
    min_weight: int = -4
    max_weight: int = 6


def main(cfg: Config) -> None:
    p = load_presentation(cfg.presentation)
    hc = HochschildComplex(p, koszul_dual(p, 4), RegularCoefficients(p, confluent_rewriter(p)))
    weights = range(cfg.min_weight, cfg.max_weight + 1)
    print("weight " + " ".join(f"{w:>4}" for w in weights))
    counts = [oracle.hh0, oracle.hh1, oracle.hh2, oracle.hh3]
    for n in range(4):
        print(f"HH^{n}   " + " ".join(f"{hc.cohomology(n, w).dim:>4}" for w in weights))
        print(" basis " + " ".join(f"{counts[n](w):>4}" for w in weights))
    print("HH^1 with x3-torsion: " + " ".join(str(oracle.hh1_torsion_corrected(w)) for w in weights))
    x3 = {(2,): Fraction(1)}
    for n in range(4):
        ranks = [rank(central_action(x3, hc, n, w)) for w in weights]
        print(f"rank of x3 on HH^{n}: {ranks}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-weight", type=int, default=Config.min_weight)
    ap.add_argument("--max-weight", type=int, default=Config.max_weight)
    a = ap.parse_args()
    main(Config(min_weight=a.min_weight, max_weight=a.max_weight))
