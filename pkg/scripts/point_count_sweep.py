"""Compare the tabulated closed-form point counts with enumeration over GF(2^m)."""
import argparse
import time
from dataclasses import dataclass

from lcd_agc import curve as cv


@dataclass
class Config:
    max_m: int = 10


def main(cfg: Config) -> int:
    bad = 0
    print(f"{'curve':36s} {'m':>3s} {'closed':>8s} {'counted':>8s}  HW")
    t0 = time.perf_counter()
    for row in cv.COUNT_TABLE:
        for m in range(1, cfg.max_m + 1):
            got = cv.tabulated_count_check(row, m)
            if got is None:
                continue
            closed, counted = got
            hw = cv.hasse_weil_ok(counted, 2 ** m, 1)
            bad += closed != counted or not hw
            flag = "" if closed == counted else "  MISMATCH"
            print(f"{row.label:36s} {m:3d} {closed:8d} {counted:8d}  {'ok' if hw else 'VIOLATED'}{flag}")
    print(f"{bad} problem(s), {time.perf_counter() - t0:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    raise SystemExit(main(Config(ap.parse_args().max_m)))
