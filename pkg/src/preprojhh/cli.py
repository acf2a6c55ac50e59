"""Batch command-line frontend.

    preprojhh analyze --type D4 --compute hh,hhc,hc,center --format json
    preprojhh deform --type A3 --lambda 1,0,-1
    preprojhh selftest small

Exit status: 0 when every requested check passes, 1 on any mismatch,
2 on usage errors (bad flags, unknown type, guarded computation, unwritable
output). Reports carry no timestamps, so equal configs give equal bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from . import closed_forms as cf
from .cyclic import (WindowError, connes_consistency, cyclic_tables, default_order,
                     euler_series_closed, euler_series_product)
from .deformed import (check_flatness, deformed_dimension, parse_weight, random_generic_weight,
                       rigidity_check, typeA_dimension_identity, zero_weight)
from .hochschild import (RESOLUTION_DIM_LIMIT, center_direct, check_resolution_exact,
                         check_self_duality, cohomology_complex, euler_check, hochschild_cohomology,
                         hochschild_homology, homology_complex)
from .pathalg import Quiver, double
from .preproj import (AlgebraInconsistency, check_frobenius, frobenius_data,
                      preprojective_algebra)
from .rootdata import FULL_EXTRA, SMALL_SUITE, RootDatum, root_datum
from .series import MatrixSeries, TruncatedSeries, fmt_rational, matrix_series_det

COMPUTATIONS = ("hilbert", "hh", "hhc", "hc", "center", "duality", "resolution", "deform", "selftest")
FORMATS = ("text", "json", "csv")
SCHEMA = 1
DEFORM_SAMPLES = 3
# the homogenized deformation check costs about as much as a fresh build of a
# 2h-degree algebra; E8 (dim 1240) takes minutes, everything else seconds
DEFORM_DIM_LIMIT = 400


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    type_label: str
    computations: tuple = ("hilbert", "hh", "hhc", "hc", "center", "duality")
    fmt: str = "text"
    output: str | None = None
    seed: int = 0
    order: int | None = None
    dmax: int | None = None
    cache_dir: str | None = None
    lam: str | None = None
    inject_fault: str | None = None

    def validate(self) -> RootDatum:
        if not self.computations:
            raise UsageError("at least one computation is required")
        bad = [c for c in self.computations if c not in COMPUTATIONS]
        if bad:
            raise UsageError(f"unknown computation(s): {', '.join(bad)}")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.lam is not None and "deform" not in self.computations:
            raise UsageError("--lambda needs 'deform' among the computations")
        if self.inject_fault not in (None, "eta"):
            raise UsageError(f"unknown fault {self.inject_fault!r}")
        try:
            rd = root_datum(self.type_label)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if self.order is not None and self.order < 2 * rd.h:
            raise UsageError(f"--order must be at least 2h = {2 * rd.h}")
        if self.dmax is not None and self.dmax < rd.h - 2:
            raise UsageError(f"--dmax must be at least h-2 = {rd.h - 2}")
        if "resolution" in self.computations and rd.dim_algebra() > RESOLUTION_DIM_LIMIT:
            raise UsageError(f"resolution check is limited to dim A <= {RESOLUTION_DIM_LIMIT} "
                             f"({rd.type.label} has dim {rd.dim_algebra()})")
        return rd


# serialization helpers

def graded_json(t: dict) -> dict:
    return {str(d): v for d, v in sorted(t.items())}


def rat(q) -> str:
    return fmt_rational(Fraction(q))


def root_datum_json(rd: RootDatum) -> dict:
    return {
        "type": rd.type.label, "rank": rd.r, "h": rd.h, "exponents": list(rd.exponents),
        "nu": {str(i): rd.nu[i] for i in rd.vertices}, "r_plus": rd.r_plus,
        "r_minus": rd.r_minus, "dim": rd.dim_algebra(),
        "adjacency": [[rat(x) for x in row] for row in rd.adjacency.entries],
    }


def _corrupt_eta(F) -> None:
    """Test hook: scale eta on one generator so eta^2 != id."""
    A = F.A
    k = A.degrees[1][0] if len(A.degrees) > 1 and A.degrees[1] else A.degrees[0][0]
    F.eta[k] = {m: 2 * c for m, c in F.eta[k].items()}


class Analysis:
    """Lazily built objects for one type, shared by the requested sections."""

    def __init__(self, rd: RootDatum, cfg: RunConfig):
        self.rd, self.cfg = rd, cfg
        self.expected = cf.expected_tables(rd)
        self._A = self._F = self._hom = self._coh = None
        self._HH = self._HHc = None
        self.dq = double(Quiver.from_root_datum(rd))

    @property
    def A(self):
        if self._A is None:
            self._A = preprojective_algebra(self.rd, self.cfg.cache_dir)
        return self._A

    @property
    def F(self):
        if self._F is None:
            self._F = frobenius_data(self.A, self.rd.nu)
            if self.cfg.inject_fault == "eta":
                _corrupt_eta(self._F)
        return self._F

    @property
    def hom(self):
        if self._hom is None:
            self._hom = homology_complex(self.F, self.rd.h, self.dq)
        return self._hom

    @property
    def coh(self):
        if self._coh is None:
            self._coh = cohomology_complex(self.F, self.rd.h, self.dq)
        return self._coh

    @property
    def HH(self):
        if self._HH is None:
            self._HH = hochschild_homology(self.hom)
        return self._HH

    @property
    def HHc(self):
        if self._HHc is None:
            self._HHc = hochschild_cohomology(self.coh)
        return self._HHc

    # sections: each returns (data, checks)

    def hilbert(self):
        rd, A = self.rd, self.A
        N = 2 * rd.h
        H = A.hilbert_matrix(N)
        E = cf.expected_hilbert_matrix(rd, N)
        # det H = (1 + t^h)^r+ (1 - t^h)^r- / det(1 - Ct + t^2)
        denom = matrix_series_det(MatrixSeries.from_terms(
            {0: rd.adjacency.identity(rd.r), 1: rd.adjacency.scale(-1), 2: rd.adjacency.identity(rd.r)},
            rd.r, N))
        det_rhs = (TruncatedSeries.from_dict({0: 1, rd.h: 1}, N) ** rd.r_plus
                   * TruncatedSeries.from_dict({0: 1, rd.h: -1}, N) ** rd.r_minus)
        det_lhs = matrix_series_det(H)
        checks = {
            "hilbert.dimension": A.dim == rd.dim_algebra(),
            "hilbert.top_degree": A.top_degree == rd.h - 2,
            "hilbert.matrix": (H - E).is_zero(),
            "hilbert.determinant": det_lhs * denom == det_rhs,
        }
        data = {"dim": A.dim, "graded_dims": A.graded_dims(), "order": N,
                "matrix": H.to_json(), "expected_matrix": E.to_json()}
        return data, checks

    def hh(self):
        rep = cf.compare(cf.labelled(self.HH, "HH_"), cf.labelled(self.expected.HH, "HH_"))
        viol = cf.window_violations(self.HH, cf.homology_windows(self.rd.h))
        checks = {
            "hh.closed_form": rep.ok,
            "hh.windows": not viol,
            "hh.d_squared": not self.hom.composites_vanish(),
            "hh.euler": not euler_check(self.hom, self.HH),
        }
        data = {"computed": cf.table_json(self.HH, "HH_"),
                "expected": cf.table_json(self.expected.HH, "HH_"),
                "comparison": rep.to_json(),
                "window_violations": [[i, d] for i, d in viol]}
        return data, checks

    def hhc(self):
        rep = cf.compare(cf.labelled(self.HHc, "HH^"), cf.labelled(self.expected.HHc, "HH^"))
        checks = {"hhc.closed_form": rep.ok, "hhc.d_squared": not self.coh.composites_vanish()}
        data = {"computed": cf.table_json(self.HHc, "HH^"),
                "expected": cf.table_json(self.expected.HHc, "HH^"),
                "comparison": rep.to_json()}
        return data, checks

    def center(self):
        Z = center_direct(self.A)
        checks = {
            "center.direct_vs_hh0": cf.clean(Z) == cf.clean(self.HHc[0]),
            "center.closed_form": cf.clean(Z) == cf.clean(self.expected.h_Z),
        }
        data = {"direct": graded_json(Z), "hh0": graded_json(self.HHc[0]),
                "expected": graded_json(self.expected.h_Z),
                "series": cf.graded_to_text(Z)}
        return data, checks

    def hc(self):
        rd = self.rd
        N = self.cfg.order or default_order(rd.h)
        closed = euler_series_closed(rd, N)
        product = euler_series_product(self.A.hilbert_matrix(N), N)
        checks = {"hc.euler_closed_vs_product": closed == product}
        data = {"order": N, "euler_closed": closed.to_json(), "euler_product": product.to_json(),
                "euler_text": str(closed)}
        try:
            tab = cyclic_tables(rd, closed)
        except WindowError as e:
            checks["hc.windows"] = False
            data["error"] = str(e)
            return data, checks
        rep = cf.compare(cf.labelled(tab.HC, "HC_"), cf.labelled(self.expected.HC, "HC_"))
        checks["hc.windows"] = not cf.window_violations(
            {i: t for i, t in tab.HC.items() if i}, cf.cyclic_windows(rd.h))
        checks["hc.closed_form"] = rep.ok
        data.update({"computed": cf.table_json(tab.HC, "HC_"),
                     "expected": cf.table_json(self.expected.HC, "HC_"),
                     "comparison": rep.to_json(), "notes": list(tab.notes)})
        if "hh" in self.cfg.computations:
            conn = connes_consistency(self.HH, tab)
            checks["hc.connes"] = conn.ok
            data["connes_mismatches"] = [list(m) for m in conn.mismatches]
        return data, checks

    def duality(self):
        rep = check_self_duality(self.hom, self.rd.h)
        labels = sorted({e[0] for e in rep.entries})
        data = {"identities": {lab: all(e[2] for e in rep.entries if e[0] == lab) for lab in labels},
                "failures": [[e[0], e[1]] for e in rep.failures()]}
        return data, {"duality.identities": rep.ok}

    def resolution(self):
        rep = check_resolution_exact(self.F, self.rd.h, self.dq)
        nonzero = {node: {f"{k[0]}@{k[1]}": v for k, v in sorted(spots.items())}
                   for node, spots in rep.homology.items() if spots}
        data = {"composites_zero": rep.composites_zero, "homology": nonzero}
        return data, {"resolution.exact": rep.exact}

    def deform(self):
        rd = self.rd
        dmax = self.cfg.dmax or 2 * rd.h
        if self.cfg.lam is not None:
            try:
                weights = [("given", parse_weight(self.cfg.lam, rd))]
            except ValueError as e:
                raise UsageError(str(e)) from None
        else:
            weights = [("zero", zero_weight(rd))]
            if rd.r_minus:
                weights += [(f"seed{self.cfg.seed + k}", random_generic_weight(rd, self.cfg.seed + k))
                            for k in range(DEFORM_SAMPLES)]
        data, checks = {"dmax": dmax, "status": "verified (heuristic stabilization)", "samples": {}}, {}
        for name, w in weights:
            tr = deformed_dimension(self.dq, w, rd.h, dmax)
            flat = check_flatness(rd, w, tr)
            data["samples"][name] = {
                "lambda": {str(i): rat(w[i]) for i in rd.vertices},
                "trace": graded_json(tr.values), "stabilized": tr.stabilized,
                "stabilized_at": tr.stabilized_at, "flat": flat,
            }
            checks[f"deform.{name}.flat"] = flat
            checks[f"deform.{name}.non_increasing"] = tr.non_increasing
        if self.cfg.lam is None:
            checks["deform.rigidity"] = rigidity_check(rd, self.HHc[2])
            data["hh2"] = graded_json(self.HHc[2])
        if rd.type.family == "A":
            checks["deform.typeA_identity"] = typeA_dimension_identity(rd.r)
        return data, checks

    def selftest(self):
        rep = check_frobenius(self.F, self.cfg.seed)
        data = {"frobenius": {k: rep.checks[k] for k in sorted(rep.checks)},
                "c": {str(j): rat(self.F.c[j]) for j in sorted(self.F.c)}}
        return data, {f"frobenius.{k}": v for k, v in rep.checks.items()}


def analyze(rd: RootDatum, cfg: RunConfig) -> dict:
    an = Analysis(rd, cfg)
    report = {"schema": SCHEMA, "command": "analyze", "root_datum": root_datum_json(rd),
              "computations": list(cfg.computations), "seed": cfg.seed, "results": {}, "checks": {}}
    for comp in COMPUTATIONS:
        if comp not in cfg.computations:
            continue
        try:
            data, checks = getattr(an, comp)()
        except AlgebraInconsistency as e:
            data, checks = {"error": str(e)}, {f"{comp}.consistent": False}
        report["results"][comp] = data
        report["checks"].update(checks)
    if an._F is not None:
        report["frobenius_c"] = {str(j): rat(an.F.c[j]) for j in sorted(an.F.c)}
    report["pass"] = all(report["checks"].values())
    return report


def selftest_report(suite: str, cfg: RunConfig) -> dict:
    labels = SMALL_SUITE if suite == "small" else SMALL_SUITE + FULL_EXTRA
    out = {"schema": SCHEMA, "command": "selftest", "suite": suite, "types": {}}
    for lab in labels:
        rd = root_datum(lab)
        comps = ["hilbert", "hh", "hhc", "hc", "center", "duality", "selftest"]
        if rd.dim_algebra() <= RESOLUTION_DIM_LIMIT:
            comps.append("resolution")
        if rd.dim_algebra() <= DEFORM_DIM_LIMIT:
            comps.append("deform")
        sub = RunConfig(lab, tuple(comps), cfg.fmt, None, cfg.seed, None, None, cfg.cache_dir,
                        None, cfg.inject_fault)
        rep = analyze(rd, sub)
        out["types"][lab] = {"checks": rep["checks"], "pass": rep["pass"],
                             "computations": rep["computations"]}
    out["typeA_identity"] = {str(n): typeA_dimension_identity(n) for n in range(1, 13)}
    out["pass"] = all(t["pass"] for t in out["types"].values()) and all(out["typeA_identity"].values())
    return out


# rendering

def _nested(t) -> bool:
    """True for a {group: {degree: dim}} table."""
    return isinstance(t, dict) and all(isinstance(v, dict) for v in t.values())

def to_json_text(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_text(report: dict) -> str:
    lines = []
    if report["command"] == "selftest":
        lines.append(f"selftest {report['suite']}")
        for lab, t in report["types"].items():
            bad = [k for k, v in sorted(t["checks"].items()) if not v]
            lines.append(f"  {lab:4s} {'PASS' if t['pass'] else 'FAIL'}  "
                         f"{len(t['checks'])} checks" + (f"  failed: {', '.join(bad)}" if bad else ""))
    else:
        rd = report["root_datum"]
        lines.append(f"{rd['type']}: rank {rd['rank']}, h = {rd['h']}, exponents {rd['exponents']}, "
                     f"r+ = {rd['r_plus']}, r- = {rd['r_minus']}, dim A = {rd['dim']}")
        res = report.get("results", {})
        for comp, data in res.items():
            lines.append(f"[{comp}]")
            for key in ("computed", "expected"):
                if _nested(data.get(key)):
                    lines.append(f"  {key}:")
                    for g, t in data[key].items():
                        lines.append(f"    {g} = {cf.graded_to_text({int(d): v for d, v in t.items()})}")
            if "comparison" in data:
                for m in data["comparison"]["mismatches"]:
                    lines.append(f"  mismatch {m['group']} degree {m['degree']}: "
                                 f"computed {m['computed']}, expected {m['expected']}")
            if comp == "center":
                lines.append(f"  center series: {data['series']}")
            if comp == "hc":
                lines.append(f"  euler characteristic: {data['euler_text']}")
            if comp == "deform":
                for name, s in data["samples"].items():
                    lam = ",".join(s["lambda"][k] for k in sorted(s["lambda"], key=int))
                    lines.append(f"  lambda = ({lam}): stabilized {s['stabilized']} "
                                 f"at D = {s['stabilized_at']}, flat {s['flat']}")
                lines.append(f"  status: {data['status']}")
        lines.append("checks:")
        for k, v in sorted(report["checks"].items()):
            lines.append(f"  {'PASS' if v else 'FAIL'} {k}")
    lines.append("PASS" if report["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "item", "degree", "computed", "expected"])
    if report["command"] == "selftest":
        for lab, t in report["types"].items():
            for k, v in sorted(t["checks"].items()):
                w.writerow([lab, k, "", int(v), 1])
        return buf.getvalue()
    for comp, data in report.get("results", {}).items():
        comp_t, exp_t = data.get("computed"), data.get("expected")
        if _nested(comp_t) and _nested(exp_t):
            for g in sorted(set(comp_t) | set(exp_t)):
                a, b = comp_t.get(g, {}), exp_t.get(g, {})
                for d in sorted(set(a) | set(b), key=int):
                    w.writerow([comp, g, d, a.get(d, 0), b.get(d, 0)])
    for k, v in sorted(report["checks"].items()):
        w.writerow(["check", k, "", int(v), 1])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    return {"text": to_text, "json": to_json_text, "csv": to_csv}[fmt](report)


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".out")
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}") from None
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as e:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise UsageError(f"cannot write {path}: {e}") from None


def emit(report: dict, cfg: RunConfig) -> None:
    text = render(report, cfg.fmt)
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    rd = cfg.validate()
    report = analyze(rd, cfg)
    emit(report, cfg)
    return 0 if report["pass"] else 1


def selftest(suite: str, cfg: RunConfig | None = None) -> int:
    cfg = cfg or RunConfig("A1")
    report = selftest_report(suite, cfg)
    emit(report, cfg)
    return 0 if report["pass"] else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="preprojhh", description="Hochschild and cyclic homology of ADE preprojective algebras")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cache-dir", default=None, help="algebra cache (default: $PREPROJHH_CACHE)")
        sp.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)

    a = sub.add_parser("analyze", help="run computations for one type")
    a.add_argument("--type", required=True)
    a.add_argument("--compute", default="hilbert,hh,hhc,hc,center,duality",
                   help="comma-separated subset of " + ",".join(COMPUTATIONS))
    a.add_argument("--order", type=int, default=None, help="series truncation order (default 3h+1)")
    a.add_argument("--dmax", type=int, default=None, help="deformation truncation level (default 2h)")
    a.add_argument("--lambda", dest="lam", default=None)
    common(a)

    d = sub.add_parser("deform", help="filtered dimension of the deformed algebra")
    d.add_argument("--type", required=True)
    d.add_argument("--lambda", dest="lam", default=None,
                   help="comma-separated rationals; default: seeded generic weights")
    d.add_argument("--dmax", type=int, default=None)
    common(d)

    s = sub.add_parser("selftest", help="all checks on the small or full suite")
    s.add_argument("suite", choices=("small", "full"), nargs="?", default="small")
    common(s)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cache = args.cache_dir
        if args.command == "selftest":
            cfg = RunConfig("A1", ("selftest",), args.format, args.output, args.seed,
                            cache_dir=cache, inject_fault=args.inject_fault)
            if cfg.fmt not in FORMATS or cfg.inject_fault not in (None, "eta"):
                raise UsageError("bad selftest options")
            return selftest(args.suite, cfg)
        if args.command == "deform":
            comps = ("deform",)
            order = None
        else:
            comps = tuple(c.strip() for c in args.compute.split(",") if c.strip())
            order = args.order
        cfg = RunConfig(args.type, comps, args.format, args.output, args.seed, order,
                        args.dmax, cache, args.lam, args.inject_fault)
        return run(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
