"""Command line harness: ``bnineq sweep|verify|extremal|hardy|report``.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 numerical-accuracy failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AccuracyError, BNError, DomainError, PreconditionError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3

CSV_COLUMNS = ["witness", "n", "s", "p", "q", "numerator", "denominator", "ratio",
               "normalized", "grid_M", "seed"]
BAND_COLUMNS = ["witness", "p", "q", "count", "min_norm_ratio", "max_norm_ratio", "spread"]
SCAN_COLUMNS = ["witness", "s", "p", "q", "n", "scan_value"]
SWEEP_WITNESSES = ("exponential", "modulated_jackson", "concave_tnl", "entire_bump",
                   "extremal", "estimate")
CONFIG_FIELDS = {"command", "witnesses", "n_list", "s_list", "pq_pairs", "seed",
                 "grid_overrides", "output_dir"}
GRID_KEYS = {"extremal_M", "bump_xi_max", "bump_rel_tol", "estimate_starts"}


class ConfigError(BNError):
    pass


# -- number formatting -------------------------------------------------------

def fmt(x) -> str:
    """Round-trip decimal; infinity is the literal ``inf``."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def parse_exponent(v, where: str) -> float:
    """``inf``, a number, or a fraction string such as ``"1/3"``."""
    if isinstance(v, bool):
        raise ConfigError(f"{where}: expected a number or 'inf', got {v!r}")
    if isinstance(v, (int, float)):
        x = float(v)
    elif isinstance(v, str):
        if v.strip().lower() == "inf":
            return math.inf
        try:
            x = float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{where}: cannot parse {v!r} as an exponent") from None
    else:
        raise ConfigError(f"{where}: expected a number or 'inf', got {v!r}")
    if not x > 0:
        raise ConfigError(f"{where}: exponent must be positive, got {v!r}")
    return x


# -- config ------------------------------------------------------------------

@dataclass
class SweepConfig:
    witnesses: list
    n_list: list
    s_list: list
    pq_pairs: list
    seed: int = 0
    grid_overrides: dict = field(default_factory=dict)
    output_dir: str = "."


def _int_list(raw, name):
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"field '{name}': expected a non-empty list")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v or v < 0:
            raise ConfigError(f"field '{name}[{i}]': expected a nonnegative integer, got {v!r}")
        out.append(int(v))
    return out


def load_config(path: str) -> SweepConfig:
    """Parse and validate a JSON sweep config; unknown fields are rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = sorted(set(raw) - CONFIG_FIELDS)
    if unknown:
        raise ConfigError(f"{path}: unknown field(s): {', '.join(unknown)}")
    missing = [f for f in ("witnesses", "n_list", "s_list", "pq_pairs") if f not in raw]
    if missing:
        raise ConfigError(f"{path}: missing field(s): {', '.join(missing)}")
    if raw.get("command", "sweep") != "sweep":
        raise ConfigError(f"field 'command': only 'sweep' is supported, got {raw['command']!r}")
    wit = raw["witnesses"]
    if not isinstance(wit, list) or not wit:
        raise ConfigError("field 'witnesses': expected a non-empty list")
    for i, w in enumerate(wit):
        if w not in SWEEP_WITNESSES:
            raise ConfigError(f"field 'witnesses[{i}]': unknown witness {w!r}; "
                              f"choose from {', '.join(SWEEP_WITNESSES)}")
    pairs = raw["pq_pairs"]
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError("field 'pq_pairs': expected a non-empty list of [p, q]")
    pq = []
    for i, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"field 'pq_pairs[{i}]': expected [p, q]")
        p = parse_exponent(pair[0], f"field 'pq_pairs[{i}][0]'")
        q = parse_exponent(pair[1], f"field 'pq_pairs[{i}][1]'")
        if not p < q:
            raise ConfigError(f"field 'pq_pairs[{i}]': need p < q")
        pq.append((p, q))
    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"field 'seed': expected an integer, got {seed!r}")
    go = raw.get("grid_overrides", {})
    if not isinstance(go, dict):
        raise ConfigError("field 'grid_overrides': expected an object")
    bad = sorted(set(go) - GRID_KEYS)
    if bad:
        raise ConfigError(f"field 'grid_overrides': unknown key(s): {', '.join(bad)}")
    out_dir = raw.get("output_dir", ".")
    if not isinstance(out_dir, str):
        raise ConfigError("field 'output_dir': expected a string")
    return SweepConfig(list(wit), _int_list(raw["n_list"], "n_list"),
                       _int_list(raw["s_list"], "s_list"), pq, seed, dict(go), out_dir)


# -- sweep -------------------------------------------------------------------

def _cells(cfg: SweepConfig):
    """Work items ``(witness, n, s, p, q)``; the bump ignores ``n`` and is computed once."""
    seen = set()
    for w in cfg.witnesses:
        for p, q in cfg.pq_pairs:
            for s in cfg.s_list:
                for n in ([0] if w == "entire_bump" else cfg.n_list):
                    key = (w, n, s, p, q)
                    if key not in seen:
                        seen.add(key)
                        yield key


def _run_cell(args):
    """Evaluate one cell; returns ``(key, row or None, note, accuracy_failed)``."""
    (w, n, s, p, q), seed, go = args
    from . import witnesses as W
    try:
        if w == "exponential":
            rep = W.exponential_witness(n, s, p, q)
        elif w == "modulated_jackson":
            rep = W.modulated_jackson_witness(n, s, p, q)
        elif w == "concave_tnl":
            if not (p == 1.0 and math.isinf(q)):
                raise PreconditionError("concave witness is defined at p = 1, q = inf only")
            rep = W.concave_witness(n, s)
        elif w == "entire_bump":
            opts = W.QuadOptions(xi_max=float(go.get("bump_xi_max", 4096.0)),
                                 rel_tol=float(go.get("bump_rel_tol", 1e-8)))
            rep = W.entire_bump_witness(s, p, q, opts)
        elif w == "extremal":
            from .extremal import solve_extremal
            if not (p == 1.0 and math.isinf(q)):
                raise PreconditionError("extremal constant is defined at p = 1, q = inf only")
            sol = solve_extremal(n, s, go.get("extremal_M"))
            env = W.trig_envelope(n, s, p, q) if s > 0 else 2.0 * (n or 1)
            row = [w, n, s, p, q, 1.0, sol.l1_norm, sol.constant, sol.constant / env,
                   sol.M, seed]
            return (w, n, s, p, q), row, None, False
        elif w == "estimate":
            from .sharp import EstimateOptions, estimate_constant
            est = estimate_constant(n, s, p, q, EstimateOptions(
                starts=int(go.get("estimate_starts", 8)), seed=seed))
            env = W.trig_envelope(n, s, p, q) if s > 0 else 1.0
            row = [w, n, s, p, q, est.value, 1.0, est.value, est.value / env, 0, seed]
            return (w, n, s, p, q), row, None, False
        else:  # pragma: no cover - validated in load_config
            raise DomainError(f"unknown witness {w}")
    except (PreconditionError, DomainError) as exc:
        return (w, n, s, p, q), None, f"skip {w} n={n} s={s} p={fmt(p)} q={fmt(q)}: {exc}", False
    except AccuracyError as exc:
        return (w, n, s, p, q), None, f"accuracy failure {w} n={n} s={s} p={fmt(p)} q={fmt(q)}: {exc}", True
    row = [w, rep.n, rep.s, rep.p, rep.q, rep.numerator, rep.denominator, rep.ratio,
           rep.normalized, rep.grid_M, seed]
    return (w, n, s, p, q), row, None, False


def run_sweep(cfg: SweepConfig, workers: int = 1, out=None) -> tuple[str, list[str], bool]:
    """Run every cell; returns the CSV text, stderr notes and an accuracy-failure flag.

    Rows are sorted by ``(witness, n, s, p, q)``, so the output does not
    depend on the worker count or on completion order.
    """
    items = [(key, cfg.seed, cfg.grid_overrides) for key in _cells(cfg)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_cell, items, chunksize=1))
    else:
        results = [_run_cell(it) for it in items]
    results.sort(key=lambda r: r[0])
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    notes, failed = [], False
    for _, row, note, acc in results:
        if row is not None:
            wr.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
        if note:
            notes.append(note)
        failed |= acc
    return buf.getvalue(), notes, failed


# -- report ------------------------------------------------------------------

def _read_sweep_csv(path: str) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        rd = csv.reader(fh)
        try:
            header = next(rd)
        except StopIteration:
            raise ConfigError(f"{path}: empty file") from None
        for i, col in enumerate(CSV_COLUMNS):
            if i >= len(header):
                raise ConfigError(f"{path}: missing column '{col}'")
            if header[i] != col:
                raise ConfigError(f"{path}: column {i + 1} is '{header[i]}', expected '{col}'")
        if len(header) > len(CSV_COLUMNS):
            raise ConfigError(f"{path}: unexpected column '{header[len(CSV_COLUMNS)]}'")
        rows = []
        for ln, rec in enumerate(rd, start=2):
            if len(rec) != len(CSV_COLUMNS):
                raise ConfigError(f"{path}:{ln}: expected {len(CSV_COLUMNS)} fields, got {len(rec)}")
            row = dict(zip(CSV_COLUMNS, rec))
            for col in ("p", "q", "ratio", "normalized", "s"):
                try:
                    row[col + "_f"] = float(row[col])
                except ValueError:
                    raise ConfigError(f"{path}:{ln}: column '{col}' is not numeric: {row[col]!r}") from None
            rows.append(row)
    return rows


def band_summary(paths) -> str:
    groups: dict = {}
    for path in paths:
        for r in _read_sweep_csv(path):
            key = (r["witness"], r["p_f"], r["q_f"])
            groups.setdefault(key, []).append(r["normalized_f"])
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(BAND_COLUMNS)
    for (w, p, q) in sorted(groups):
        v = groups[(w, p, q)]
        lo, hi = min(v), max(v)
        spread = hi / lo if lo > 0 else math.inf
        wr.writerow([w, fmt(p), fmt(q), len(v), fmt(lo), fmt(hi), fmt(spread)])
    return buf.getvalue()


def scan_table(paths) -> str:
    """Long-form ``n^{-s-1/p+1/q}`` times the ratio for each row."""
    rows = []
    for path in paths:
        for r in _read_sweep_csv(path):
            n = int(r["n"])
            if n < 1:
                continue
            s, p, q = r["s_f"], r["p_f"], r["q_f"]
            val = n ** (-s - 1.0 / p + 1.0 / q) * r["ratio_f"]
            rows.append((r["witness"], s, p, q, n, val))
    rows.sort()
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(SCAN_COLUMNS)
    for w, s, p, q, n, v in rows:
        wr.writerow([w, fmt(s), fmt(p), fmt(q), n, fmt(v)])
    return buf.getvalue()


# -- entry point -------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bnineq", description="Bernstein-Nikolskii experiments")
    sub = ap.add_subparsers(dest="cmd", required=True)
    sw = sub.add_parser("sweep", help="run a witness sweep from a JSON config")
    sw.add_argument("config")
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--output", help="CSV path (default: <output_dir>/sweep.csv)")
    ve = sub.add_parser("verify", help="run an invariant suite")
    ve.add_argument("suite", choices=["trig", "entire", "concave", "extremal", "hardy", "all"])
    ex = sub.add_parser("extremal", help="solve the L1 extremal problem")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--s", type=int, required=True)
    ex.add_argument("--grid", type=int, default=None)
    hd = sub.add_parser("hardy", help="discrete Hardy space tools")
    hsub = hd.add_subparsers(dest="hcmd", required=True)
    at = hsub.add_parser("atoms", help="generate and certify random atoms")
    at.add_argument("--p", required=True)
    at.add_argument("--count", type=int, required=True)
    at.add_argument("--seed", type=int, default=0)
    rp = sub.add_parser("report", help="summarize sweep CSVs")
    rp.add_argument("kind", choices=["band-summary", "scan-table"])
    rp.add_argument("csv", nargs="+")
    rp.add_argument("--output")
    return ap


def _emit(text: str, path: str | None):
    if path:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.workers < 1:
        raise ConfigError("--workers must be at least 1")
    text, notes, failed = run_sweep(cfg, args.workers)
    for note in notes:
        print(note, file=sys.stderr)
    path = args.output or os.path.join(cfg.output_dir, "sweep.csv")
    _emit(text, path)
    return EXIT_ACCURACY if failed else EXIT_OK


def _cmd_extremal(args) -> int:
    from .extremal import solve_extremal, zeros_of_extremal
    sol = solve_extremal(args.n, args.s, args.grid)
    zs = zeros_of_extremal(sol)
    out = {
        "n": sol.n, "s": sol.s, "basis": sol.basis, "M": sol.M,
        "l1_norm": sol.l1_norm, "constant": sol.constant,
        "coeffs": [float(c) for c in sol.coeffs],
        "zeros": [float(z) for z in zs.locations],
        "zeros_simple": bool(zs.simple.all()) if zs.count else True,
        "polished": bool(sol.diagnostics.get("polished", False)),
        "alternatives": len(sol.diagnostics.get("alternatives", [])),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _cmd_atoms(args) -> int:
    from .hardy import hp_quasinorm, random_atom, validate_atom
    p = parse_exponent(args.p, "--p")
    if not p <= 1:
        raise ConfigError("--p must lie in (0, 1]")
    if args.count < 1:
        raise ConfigError("--count must be positive")
    rng = np.random.default_rng(args.seed)
    wr = csv.writer(sys.stdout, lineterminator="\n")
    wr.writerow(["index", "offset", "length", "valid", "lp_norm", "hp_norm", "hp_norm_shifted"])
    ok = True
    for i in range(args.count):
        a, I = random_atom(p, rng)
        cert = validate_atom(a, I, p)
        ok &= cert.valid
        h = hp_quasinorm(a, p)
        hc = hp_quasinorm(a, p, "half")
        wr.writerow([i, I[0], cert.length, int(cert.valid), fmt(h.lp), fmt(h.value), fmt(hc.value)])
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_verify(args) -> int:
    from .suites import run_suite
    results = run_suite(args.suite)
    worst = EXIT_OK
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.suite:<9} {r.name}: {r.detail}")
        if not r.ok:
            worst = max(worst, EXIT_ACCURACY if r.accuracy else EXIT_VERIFY)
    return worst


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.cmd == "sweep":
            return _cmd_sweep(args)
        if args.cmd == "verify":
            return _cmd_verify(args)
        if args.cmd == "extremal":
            return _cmd_extremal(args)
        if args.cmd == "hardy":
            return _cmd_atoms(args)
        if args.cmd == "report":
            text = band_summary(args.csv) if args.kind == "band-summary" else scan_table(args.csv)
            _emit(text, args.output)
            return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except BNError as exc:
        # inadmissible parameters (domain, precondition, infeasible input)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
