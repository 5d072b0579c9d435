"""Check the listed degree 1x1 and 1x2 cup products of HH(U(h)) up to boundary."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from koszulhh.heisenberg import check_table, heisenberg_complex
from koszulhh.presentation import load_presentation

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    presentation: Path = ROOT / "presentations" / "heisenberg.kp"
    max_param: int = 2


def main(cfg: Config) -> None:
    hc = heisenberg_complex(load_presentation(cfg.presentation))
    stated, alt = check_table(hc, cfg.max_param)
    for title, rows in (("as listed", stated), ("alternative reading", alt)):
        print(f"-- {title}")
        for r in rows:
            mark = "ok  " if r.passed else "FAIL"
            extra = "" if r.passed else f"  first failure {r.failures[0][0]}: {r.failures[0][1]}"
            print(f"{mark} {r.label}  [{r.instances} instances]{extra}")
    print(f"{sum(r.passed for r in stated)}/{len(stated)} hold as listed, {sum(r.passed for r in alt)}/{len(alt)} under the alternative reading")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-param", type=int, default=Config.max_param)
    main(Config(max_param=ap.parse_args().max_param))
