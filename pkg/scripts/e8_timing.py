"""Stage timings for the largest type (default E8)."""

import argparse
import time

from preprojhh.hochschild import hochschild_homology, homology_complex
from preprojhh.pathalg import Quiver, double
from preprojhh.preproj import build_preprojective, check_frobenius, frobenius_data
from preprojhh.rootdata import root_datum


def timed(name, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{name:22s}{time.perf_counter() - t0:9.2f} s")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="E8")
    args = ap.parse_args()
    rd = root_datum(args.type)
    dq = double(Quiver.from_root_datum(rd))
    A = timed("build", lambda: build_preprojective(dq, rd))
    print(f"dim A = {A.dim}, top degree {A.top_degree}")
    F = timed("frobenius data", lambda: frobenius_data(A, rd.nu))
    rep = timed("frobenius checks", lambda: check_frobenius(F))
    print("frobenius ok" if rep.ok else f"frobenius FAILED: {rep.failed()}")
    HH = timed("hochschild homology", lambda: hochschild_homology(homology_complex(F, rd.h, dq)))
    for i in sorted(HH):
        print(f"  HH_{i}: {dict(sorted(HH[i].items()))}")


if __name__ == "__main__":
    main()
