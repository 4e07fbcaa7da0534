"""slavnov-lab: compute determinant forms, solve Bethe systems and run the
verification suites.  Parameters travel as JSON (a file or stdin) so that
rationals stay exact; every result is one JSON document on stdout."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import detforms as df
from . import identities as ids
from . import vertexlat as vl
from .bethe import solve_bethe
from .errors import (CardinalityMismatch, DegenerateParams, DivisionByNonUnit, NoSolutionFound,
                     NonFinite, NotConverged, NotOnShell, SingularWeight, ZeroDenominator)
from .gvmap import gv_casoratian_closed
from .numkernel import format_scalar, is_exact, parse_scalar
from .symcaso import CasoratianSpec, casoratian

log = logging.getLogger("slavnov_lab")

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PARAMS = 3
EXIT_CONVERGENCE = 4

EXACT, FLOAT = "exact", "float"
MAX_L = 16
UINT64 = 2 ** 64

# errors that mean the inputs are unusable rather than malformed
PARAM_ERRORS = (DegenerateParams, NotOnShell, SingularWeight, CardinalityMismatch, NonFinite,
                ZeroDenominator, DivisionByNonUnit)
CONVERGENCE_ERRORS = (NotConverged, NoSolutionFound)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    backend: str = EXACT
    tolerance: float | None = None
    seed: int = 0
    max_L: int = MAX_L

    def __post_init__(self):
        if self.backend not in (EXACT, FLOAT):
            raise UsageError(f"unknown backend {self.backend!r}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if not 0 <= self.seed < UINT64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if self.max_L < 1:
            raise UsageError("--max-L must be positive")

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def tol(self, default):
        return default if self.tolerance is None else self.tolerance


# ---------------------------------------------------------------------------
# input


def read_params(path):
    """JSON object from ``path``; stdin when path is None or '-'."""
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read parameters: {e}") from e
    if not isinstance(doc, dict):
        raise UsageError("parameters must be a JSON object")
    return doc


def _scalars(doc, key, cfg):
    vals = doc.get(key, [])
    if not isinstance(vals, list):
        raise UsageError(f"{key!r} must be a list")
    try:
        return [parse_scalar(v, cfg.exact) for v in vals]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad entry in {key!r}: {e}") from e


def load_sets(doc, cfg):
    x, b, t, y = (_scalars(doc, k, cfg) for k in ("x", "b", "t", "y"))
    if len(y) > cfg.max_L:
        raise UsageError(f"L = {len(y)} exceeds --max-L {cfg.max_L}")
    return x, b, t, y


def load_spec(doc, cfg):
    if "c" not in doc or not isinstance(doc["c"], list):
        raise UsageError("a Casoratian spec needs a coefficient matrix 'c'")
    rows = doc["c"]
    if any(not isinstance(r, list) for r in rows):
        raise UsageError("'c' must be a list of rows")
    try:
        c = [[parse_scalar(v, cfg.exact) for v in row] for row in rows]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad entry in 'c': {e}") from e
    y = _scalars(doc, "y", cfg) if "y" in doc else [0 * (row[0] if row else 0) for row in c]
    if len(y) > cfg.max_L:
        raise UsageError(f"L = {len(y)} exceeds --max-L {cfg.max_L}")
    return CasoratianSpec(c, y)


# ---------------------------------------------------------------------------
# output


def emit(doc):
    sys.stdout.write(json.dumps(doc, sort_keys=True, allow_nan=False) + "\n")


def encode(v):
    if isinstance(v, dict):
        return {k: encode(w) for k, w in v.items()}
    if not is_exact(v):
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise NonFinite("result is not finite")
    return format_scalar(v)


def _finite(x):
    return x if x is None or math.isfinite(x) else None


def clean_checks(checks):
    # JSON has no inf/nan; such deviations are reported as null
    out = []
    for c in checks:
        c = dict(c)
        if isinstance(c.get("deviation"), float):
            c["deviation"] = _finite(c["deviation"])
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# compute


def _gv(spec):
    if any(v != 0 for v in spec.y):
        raise UsageError("the GV image is taken at variables 0; 'y' must be all zeros")
    img = gv_casoratian_closed(spec)
    return {"order0": img.order0, "g2": img.order_g2}


def compute(formula, doc, cfg):
    tol = cfg.tol(df.DEFAULT_TOL)
    if formula in ("casoratian", "gv-casoratian"):
        spec = load_spec(doc, cfg)
        if formula == "gv-casoratian":
            return _gv(spec)
        return casoratian(spec, doc.get("form", "symfunc"))
    x, b, t, y = load_sets(doc, cfg)
    table = {
        "izergin-uniform": lambda: df.izergin_uniform(x + b + t, y),
        "izergin-mixed": lambda: df.izergin_mixed(x, b, t, y),
        "kostov": lambda: df.kostov_dwpf(x + b + t, y),
        "pdwpf-lxl": lambda: df.pdwpf_LxL(x, b, y),
        "pdwpf-2nx2n": lambda: df.pdwpf_2Nx2N(x, b, y),
        "slavnov": lambda: df.slavnov(x, b, y, tol=tol),
        "restricted-slavnov": lambda: df.restricted_slavnov(x, b, y, tol=tol),
        "restricted-pdwpf-ize": lambda: df.restricted_pdwpf_ize(x, b, y),
        "restricted-pdwpf-kos": lambda: df.restricted_pdwpf_kos(x, b, y),
        "oracle-dwpf": lambda: vl.dwpf_oracle(x, b, t, y),
        "oracle-pdwpf": lambda: vl.pdwpf_oracle(x, b, y),
        "oracle-sp": lambda: vl.scalar_product_oracle(x, b, y),
        "extended-limit": lambda: df.extended_limit(x, b, y, "exact" if cfg.exact else "numeric"),
    }
    return table[formula]()


FORMULAS = ("izergin-uniform", "izergin-mixed", "kostov", "pdwpf-lxl", "pdwpf-2nx2n", "slavnov",
            "restricted-slavnov", "restricted-pdwpf-ize", "restricted-pdwpf-kos", "oracle-dwpf",
            "oracle-pdwpf", "oracle-sp", "extended-limit", "casoratian", "gv-casoratian")


# ---------------------------------------------------------------------------
# verify


SUITE_CHOICES = ("oracles", "lemma1", "lemma2", "initcond", "properties", "props", "d1d2",
                 "casoratian", "gv", "all")

FLOAT_NOTE = "uses floating-point Bethe roots from the Newton solver"


def run_suite(name, seed, tol, max_L, inject):
    kw = {"tol": tol, "max_L": max_L}
    if name == "lemma2":
        kw["inject_off_shell"] = inject
    if name == "oracles":
        kw["max_L"] = min(max_L, 5)
    return ids.SUITES[name](seed, **kw)


def _instance_checks(suite, doc, cfg, tol):
    x, b, _, y = load_sets(doc, cfg)
    if suite in ("lemma1", "lemma2"):
        return ids.verify_lemma(suite, x, b, y, tol)
    if suite == "initcond":
        return ids.verify_initial_condition(b, y, tol)
    if suite in ("props", "properties"):
        s = ids.Sampler(cfg.seed)
        return ids.property_checks("S", x, b, y, s, tol) + ids.property_checks("Z", x, b, y, s, tol)
    if suite == "d1d2":
        kv = ids.KappaVector(_scalars(doc, "kappa", cfg), b)
        grid = ids.d1_d2_grid(b)
        out = [{"name": f"D1 = D2 on kappa grid N={kv.N}", "formula": "D1 = D2",
                "pass": grid == 0, "deviation": float(abs(grid))},
               ids.check("D1 = D2 at kappa", "D1 = D2", ids.D1(kv), ids.D2(kv), tol)]
        if kv.N >= 2:
            for name, D in (("D1", ids.D1), ("D2", ids.D2)):
                out.append(ids.check(f"{name} kappa_N = 0 recursion", "rec1",
                                     *ids.recursion_kappa_zero(D, kv), tol))
                out.append(ids.check(f"{name} kappa_N slope recursion", "rec2",
                                     *ids.recursion_kappa_slope(D, kv), tol))
        return out
    raise UsageError(f"suite {suite!r} does not take --params")


def _threads():
    raw = os.environ.get("SLAVNOV_LAB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as e:
        raise UsageError("SLAVNOV_LAB_THREADS must be an integer") from e
    return max(1, n)


def verify(suite, cfg, params=None, inject=False):
    tol = cfg.tol(ids.DEFAULT_TOL)
    names = list(ids.ALL_ORDER) if suite == "all" else [suite]
    header = {"suite": suite, "backend": cfg.backend, "seed": cfg.seed, "tol": tol,
              "max_L": cfg.max_L, "float_dependency": {}}
    if inject:
        header["injected_off_shell"] = "off-shell roots are injected; these checks are expected to fail"
    if params is not None:
        checks = [dict(c, suite=suite) for c in _instance_checks(suite, params, cfg, tol)]
        header["float_dependency"][suite] = "float inputs" if not cfg.exact else "none"
    else:
        workers = min(_threads(), len(names))
        args = [(n, cfg.seed, tol, cfg.max_L, inject) for n in names]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run_suite, *zip(*args)))
        else:
            results = [run_suite(*a) for a in args]
        checks = []
        for n, res in zip(names, results):
            key = "properties" if n == "props" else n
            header["float_dependency"][n] = FLOAT_NOTE if key in ids.FLOAT_SUITES else "none"
            checks += [dict(c, suite=n) for c in res]
    checks = clean_checks(checks)
    failed = sum(1 for c in checks if not c["pass"])
    report = {"header": header, "checks": checks,
              "summary": {"total": len(checks), "failed": failed, "all_pass": failed == 0}}
    return report, failed == 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-L", dest="max_L", type=int, default=MAX_L,
                   help=f"largest accepted L (default {MAX_L})")
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")


def build_parser():
    parser = _Parser(prog="slavnov-lab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate one formula")
    p.add_argument("formula", choices=FORMULAS)
    p.add_argument("--params", default=None, help="JSON file, '-' or omitted for stdin")
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_CHOICES)
    p.add_argument("--params", default=None, help="check one instance instead of the seeded grid")
    p.add_argument("--inject-off-shell", action="store_true",
                   help="lemma2 only: evaluate perturbed, off-shell roots (expected to fail)")
    _common(p)

    p = sub.add_parser("bethe", help="Bethe equations")
    bsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = bsub.add_parser("solve", help="multi-start Newton search")
    q.add_argument("--L", dest="L", type=int, required=True)
    q.add_argument("--N", dest="N", type=int, required=True)
    q.add_argument("--y", required=True, help="JSON list of inhomogeneities")
    q.add_argument("--seeds", type=int, default=32)
    _common(q)

    p = sub.add_parser("gv", help="GV mapping")
    gsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = gsub.add_parser("casoratian", help="closed-form GV image of a Casoratian spec")
    q.add_argument("--spec", required=True, help="JSON file with 'c' (and optionally 'y')")
    _common(q)
    return parser


def _dispatch(args):
    cfg = RunConfig(args.backend, args.tol, args.seed, args.max_L)
    if args.command == "compute":
        emit({"value": encode(compute(args.formula, read_params(args.params), cfg))})
        return 0
    if args.command == "verify":
        if args.inject_off_shell and args.suite != "lemma2":
            raise UsageError("--inject-off-shell applies to the lemma2 suite only")
        params = read_params(args.params) if args.params is not None else None
        report, ok = verify(args.suite, cfg, params, args.inject_off_shell)
        emit(report)
        return 0 if ok else EXIT_FAIL
    if args.command == "bethe":
        try:
            y = [parse_scalar(v, cfg.exact) for v in json.loads(args.y)]
        except (json.JSONDecodeError, TypeError, ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad --y: {e}") from e
        if args.L > cfg.max_L:
            raise UsageError(f"L = {args.L} exceeds --max-L {cfg.max_L}")
        if args.seeds < 1:
            raise UsageError("--seeds must be positive")
        sols = solve_bethe(args.L, args.N, y, seeds=args.seeds, tol=cfg.tol(1e-10),
                           rng_seed=cfg.seed)
        emit({"solutions": [s.to_json() for s in sols]})
        return 0
    spec = load_spec(read_params(args.spec), cfg)
    emit(encode(_gv(spec)))
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"slavnov-lab: {e}", file=sys.stderr)
        return EXIT_PARSE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except UsageError as e:
        print(f"slavnov-lab: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PARAM_ERRORS as e:
        print(f"slavnov-lab: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except CONVERGENCE_ERRORS as e:
        print(f"slavnov-lab: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as e:
        print(f"slavnov-lab: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
