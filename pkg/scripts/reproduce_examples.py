"""Rebuild every worked example and write one JSON report per example.

    python3 scripts/reproduce_examples.py --out results/ [--include-slow]
"""
import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from lcd_agc import cli, constructions as cons
from lcd_agc._kernels import configure_threads


@dataclass
class Config:
    out: Path = Path("results")
    keys: tuple = ("all",)
    include_slow: bool = False
    budget: int = 10 ** 9


def main(cfg: Config) -> int:
    configure_threads()
    cfg.out.mkdir(parents=True, exist_ok=True)
    ok = cli.reproduce(list(cfg.keys), cfg.include_slow, cfg.budget)
    for ex in cli.EXAMPLES:
        if "all" not in cfg.keys and ex.key not in cfg.keys:
            continue
        rep = cli.build_example(ex)
        cons.attach_distances(rep, "auto", budget=10 ** 7)
        doc = {"example": ex.key, "title": ex.title, "field": ex.field, "curve": ex.curve,
               "note": ex.note, "cited": ex.cited, **rep.to_json()}
        (cfg.out / f"{ex.key}.json").write_text(json.dumps(doc, indent=2) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("keys", nargs="*", default=["all"])
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--include-slow", action="store_true")
    ap.add_argument("--budget", type=int, default=Config.budget)
    a = ap.parse_args()
    sys.exit(main(Config(a.out, tuple(a.keys), a.include_slow, a.budget)))
