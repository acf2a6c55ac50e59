"""Per-type summary table: dimensions, homology totals and timings.

    python scripts/run_suite.py            # small suite
    python scripts/run_suite.py --full     # adds E7, E8
"""

import argparse
import time

from preprojhh.closed_forms import expected_tables
from preprojhh.hochschild import (cohomology_complex, hochschild_cohomology, hochschild_homology,
                                  homology_complex)
from preprojhh.pathalg import Quiver, double
from preprojhh.preproj import frobenius_data, preprojective_algebra
from preprojhh.rootdata import FULL_EXTRA, SMALL_SUITE, root_datum


def total(table):
    return [sum(table[i].values()) for i in sorted(table)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args()
    labels = SMALL_SUITE + (FULL_EXTRA if args.full else ())
    print(f"{'type':5s}{'h':>4s}{'dim':>6s}  {'HH_i totals':24s}{'HH^i totals':24s}{'ok':>4s}{'sec':>8s}")
    for lab in labels:
        t0 = time.perf_counter()
        rd = root_datum(lab)
        dq = double(Quiver.from_root_datum(rd))
        A = preprojective_algebra(rd)
        F = frobenius_data(A, rd.nu)
        HH = hochschild_homology(homology_complex(F, rd.h, dq))
        HHc = hochschild_cohomology(cohomology_complex(F, rd.h, dq))
        ex = expected_tables(rd)
        ok = HH == ex.HH and HHc == ex.HHc
        dt = time.perf_counter() - t0
        print(f"{lab:5s}{rd.h:4d}{A.dim:6d}  {str(total(HH)):24s}{str(total(HHc)):24s}"
              f"{'yes' if ok else 'NO':>4s}{dt:8.2f}")


if __name__ == "__main__":
    main()
