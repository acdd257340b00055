"""Command-line interface.

Every subcommand builds one payload ``{command, inputs, result, error_bound,
elapsed_ms}`` and renders it as JSON, CSV or plain text. Exit status is 0 on
success, 1 when a verification fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import congruence, counting, cycloform, geometry, symmetry
from .config import FORMATS, RunConfig, load_config
from .kernels import BACKENDS
from .numtheory import euler_phi, is_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Outcome:
    inputs: dict
    result: Any
    error_bound: float | None = None
    rows: list[dict] = field(default_factory=list)
    text: list[str] = field(default_factory=list)
    failed: bool = False


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _decimals(tol: float) -> int:
    return max(0, math.ceil(-math.log10(tol)))


def _format_form(coeffs) -> str:
    d = len(coeffs) - 1
    out = []
    for j in range(d, -1, -1):
        c = coeffs[j]
        if not c:
            continue
        mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in (("X", j), ("Y", d - j)) if e)
        coef = str(abs(c)) if abs(c) != 1 or not mono else ""
        term = "*".join(t for t in (coef, mono) if t)
        out.append(("- " if c < 0 else "+ ") + term)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---- subcommands -----------------------------------------------------------


def cmd_form(a, cfg: RunConfig) -> Outcome:
    n = a.n
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = cycloform.cyclotomic_coeffs(n)
    holds, (L, bound) = cycloform.bateman_check(n)
    res = {
        "index": n,
        "degree": euler_phi(n),
        "coefficients": list(coeffs),
        "length": L,
        "bateman_bound": bound,
        "bateman_holds": holds,
        "value_at_1": cycloform.value_at_one(n),
        "value_at_minus_1": cycloform.value_at_minus_one(n),
    }
    rows = [{"power_of_x": j, "coefficient": c} for j, c in enumerate(coeffs)]
    terms = _format_form(coeffs)
    text = [
        f"Phi_{n}(X, Y) = {terms}",
        f"degree {res['degree']}, length {L}, bound n^(d(n)/2) = {bound} ({'holds' if holds else 'fails'})",
        f"phi_{n}(1) = {res['value_at_1']}, phi_{n}(-1) = {res['value_at_minus_1']}",
    ]
    return Outcome({"n": n}, res, None, rows, text)


def cmd_eval(a, cfg: RunConfig) -> Outcome:
    if a.n < 1:
        raise ValueError("n must be positive")
    v = cycloform.evaluate(cycloform.cyclotomic_poly(a.n), a.x, a.y)
    return Outcome({"n": a.n, "x": a.x, "y": a.y}, {"value": v}, None, [{"value": v}], [str(v)])


def cmd_represented(a, cfg: RunConfig) -> Outcome:
    t = counting.represented_by_form(
        a.n, a.limit, a.height2, workers=cfg.workers, backend=a.backend,
        with_witnesses=a.witnesses, memory_cap=cfg.memory_cap,
    )
    members = [int(v) for v in t.members]
    res = {"index": a.n, "limit": a.limit, "height2": a.height2, "count": t.count, "members": members}
    rows = []
    for v in members:
        row = {"value": v}
        if t.witnesses is not None:
            _, x, y = t.witnesses[v]
            row.update(x=x, y=y)
        rows.append(row)
    if t.witnesses is not None:
        res["witnesses"] = {str(v): list(t.witnesses[v][1:]) for v in members}
    text = [f"{t.count} integers in [1, {a.limit}] represented by Phi_{a.n}", " ".join(map(str, members))]
    return Outcome({"n": a.n, "limit": a.limit, "height2": a.height2}, res, None, rows, text)


def cmd_count(a, cfg: RunConfig) -> Outcome:
    c, table = counting.count_Ad(a.d, a.limit, workers=cfg.workers, backend=a.backend, memory_cap=cfg.memory_cap)
    bundle = geometry.constant_Cd(a.d, cfg.tol)
    pred = geometry.predicted_Ad(a.d, a.limit, bundle)
    scale = a.limit ** (2.0 / a.d)
    res = {
        "d": a.d,
        "limit": a.limit,
        "count": c,
        "predicted": pred,
        "ratio": c / pred,
        "indices": list(table.indices),
    }
    err = bundle.error * scale
    row = {k: res[k] for k in ("d", "limit", "count", "predicted", "ratio")}
    text = [f"A_{a.d}({a.limit}) = {c}", f"C_d N^(2/d) = {pred:.6f} (+- {err:.1e}), ratio {c / pred:.6f}"]
    return Outcome({"d": a.d, "limit": a.limit}, res, err, [row], text)


def cmd_constants(a, cfg: RunConfig) -> Outcome:
    tol = a.tol or cfg.tol
    b = geometry.constant_Cd(a.d, tol)
    contrib = [{"n": n, "w": w, "area": r.value, "abs_error": r.abs_error} for n, w, r in b.contributions]
    res = {
        "d": a.d,
        "C_d": b.C_d,
        "contributions": contrib,
        "eta": b.eta_d,
        "beta_star": b.beta_star_d,
        "next_totient": b.next_totient,
    }
    k = _decimals(tol)
    text = [f"C_{a.d} = {b.C_d:.{k}f} +- {b.error:.1e}"]
    text += [f"  n = {c['n']}: w = {c['w']}, A = {c['area']:.{k}f} +- {c['abs_error']:.1e}" for c in contrib]
    text.append(f"eta = {b.eta_d:.10f}, beta* = {b.beta_star_d:.10f}, next totient {b.next_totient}")
    return Outcome({"d": a.d, "tol": tol}, res, b.error, contrib, text)


def cmd_area(a, cfg: RunConfig) -> Outcome:
    tol = a.tol or cfg.tol
    # half the budget goes to quadrature, half to rounding the printed digits
    s = geometry.square_sandwich(a.n, tol / 2)
    r = s.area
    res = {
        "index": a.n,
        "value": r.value,
        "abs_error": r.abs_error,
        "evaluations": r.evaluations,
        "inner_side": s.inner_side,
        "outer_side": s.outer_side,
        "area_lower": s.area_lower,
        "area_upper": s.area_upper,
        "sandwich_holds": s.holds,
    }
    text = [
        f"{r.value:.{_decimals(tol)}f} ± {tol:g}",
        f"squares: inner side {s.inner_side:.10f}, outer side {s.outer_side:.10f}; "
        f"{s.area_lower:.6f} <= A <= {s.area_upper:.6f} ({'holds' if s.holds else 'FAILS'})",
    ]
    return Outcome({"n": a.n, "tol": tol}, res, r.abs_error, [res], text, failed=not s.holds)


def _confinement_claim(n: int, M: int) -> set[int] | None:
    if is_prime(M) and n % M == 0:
        return {0, 1}
    # n divides a high enough power of 3 exactly when n is itself a power of 3
    if M == 9 and n >= 9 and 3 ** n.bit_length() % n == 0:
        return {0, 1, 3}
    if M == 4 and n % 4 == 0:
        return {0, 1, 2}
    return None


def cmd_congruence(a, cfg: RunConfig) -> Outcome:
    prof = congruence.residues_attained(a.n, a.mod, backend=a.backend)
    allowed = _confinement_claim(a.n, a.mod)
    if allowed is None:
        verdict = "NO CLAIM"
    else:
        verdict = "PASS" if prof.within(allowed) else "FAIL"
    res = {"index": a.n, "modulus": a.mod, "attained": sorted(prof.attained),
           "allowed": sorted(allowed) if allowed else None, "verdict": verdict}
    rows = [{"residue": r} for r in sorted(prof.attained)]
    text = [f"Phi_{a.n} mod {a.mod} attains {sorted(prof.attained)}",
            f"allowed {sorted(allowed) if allowed else '-'}: {verdict}"]
    return Outcome({"n": a.n, "mod": a.mod}, res, None, rows, text, failed=verdict == "FAIL")


def cmd_confinement_classes(a, cfg: RunConfig) -> Outcome:
    cc = congruence.confinement_classes(a.d, a.m)
    per = [
        {"n": r.index, "varpi": r.varpi, "local_a": r.local_a, "local_b": r.local_b,
         "value_residue": r.value_residue, "attained": sorted(r.attained), "obstructed": r.obstructed}
        for r in cc.per_factor
    ]
    res = {"d": a.d, "m": a.m, "D": cc.D, "a0": cc.a0, "b0": cc.b0, "per_factor": per}
    rows = [{k: v for k, v in p.items() if k != "attained"} for p in per]
    text = [f"D = {cc.D}, (a0, b0) = ({cc.a0}, {cc.b0})"]
    text += [
        f"  n = {p['n']}: mod {p['varpi']} local ({p['local_a']}, {p['local_b']}), "
        f"Phi_{a.m} = {p['value_residue']} not in {p['attained']}"
        for p in per
    ]
    return Outcome({"d": a.d, "m": a.m}, res, None, rows, text)


def cmd_common(a, cfg: RunConfig) -> Outcome:
    R = counting.common_represented(a.n1, a.n2, a.limit, workers=cfg.workers, backend=a.backend)
    res = {"n1": a.n1, "n2": a.n2, "limit": a.limit, "common": R}
    return Outcome({"n1": a.n1, "n2": a.n2, "limit": a.limit}, res, None, [res], [str(R)])


def cmd_common_lattice(a, cfg: RunConfig) -> Outcome:
    f1, f2 = cycloform.cyclotomic_poly(a.n1), cycloform.cyclotomic_poly(a.n2)
    cnt = counting.common_values_count(f1, f2, a.B)
    res = {"n1": a.n1, "n2": a.n2, "B": a.B, "quadruples": cnt}
    return Outcome({"n1": a.n1, "n2": a.n2, "B": a.B}, res, None, [res], [str(cnt)])


def cmd_automorphisms(a, cfg: RunConfig) -> Outcome:
    g = symmetry.automorphism_group(a.n)
    mats = [[list(r) for r in m] for m in g.elements]
    res = {
        "index": a.n,
        "kind": g.kind,
        "order": len(g.elements),
        "matrices": mats,
        "w_n": symmetry.w_weight(a.n),
        "lattice_weight": symmetry.group_weight(g),
        "verified": symmetry.verify_group(a.n),
    }
    rows = [{"u1": m[0][0], "u2": m[0][1], "u3": m[1][0], "u4": m[1][1]} for m in mats]
    text = [f"{g.kind} of order {len(g.elements)}, w_n = {res['w_n']}, weight from lattices {res['lattice_weight']}"]
    text += [f"  {m}" for m in mats]
    return Outcome({"n": a.n}, res, None, rows, text, failed=not res["verified"])


def cmd_containment(a, cfg: RunConfig) -> Outcome:
    rep = geometry.containment_check(a.n, a.epsilon, a.grid, dps=cfg.precision, assert_from=a.assert_from)
    counts = rep.counts()
    samples = [s.__dict__ for s in rep.samples]
    res = {
        "index": a.n,
        "epsilon": a.epsilon,
        "inner_side": rep.inner_side,
        "outer_side": rep.outer_side,
        "counts": counts,
        "asserted": rep.asserted,
        "all_pass": rep.all_pass,
        "samples": samples,
    }
    mode = "asserted" if rep.asserted else "reported only"
    text = [
        f"inner side {rep.inner_side:.10f}, outer side {rep.outer_side:.10f}",
        f"pass {counts['pass']}, fail {counts['fail']}, indeterminate {counts['indeterminate']} ({mode})",
    ]
    failed = rep.asserted and not rep.all_pass
    return Outcome({"n": a.n, "epsilon": a.epsilon, "grid": a.grid}, res, None, samples, text, failed=failed)


def cmd_verify_all(a, cfg: RunConfig) -> Outcome:
    from .verify import run_all

    def progress(r):
        print(f"[{'PASS' if r.ok else 'FAIL'}] {r.name} ({r.seconds:.2f}s): {r.detail}", file=sys.stderr, flush=True)

    results = run_all(fast=a.fast, progress=progress)
    checks = [{"name": r.name, "passed": r.ok, "detail": r.detail} for r in results]
    failed = [r.name for r in results if not r.ok]
    res = {"checks": checks, "all_pass": not failed}
    text = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in checks]
    text.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return Outcome({"fast": a.fast}, res, None, checks, text, failed=bool(failed))


# ---- plumbing --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--config", default=None, help="key = value config file")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--precision", type=int, default=None, help="decimal digits for high-precision checks")
    common.add_argument("--memory-cap", type=int, default=None, help="largest sieve bitmap, in values")
    common.add_argument("--backend", choices=sorted(BACKENDS), default=None)
    common.add_argument("--timing", action="store_true", help="report elapsed_ms (breaks byte-identical output)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = _Parser(prog="cyclorep", description="Integers represented by cyclotomic binary forms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("form", cmd_form, "coefficients and invariants of Phi_n")
    s.add_argument("n", type=int)
    s = add("eval", cmd_eval, "exact value Phi_n(x, y)")
    s.add_argument("n", type=int)
    s.add_argument("x", type=int)
    s.add_argument("y", type=int)
    s = add("represented", cmd_represented, "integers up to N represented by Phi_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--limit", type=int, required=True)
    s.add_argument("--height2", action="store_true", help="require max(|x|, |y|) >= 2")
    s.add_argument("--witnesses", action="store_true", help="include one (x, y) per value")
    s = add("count", cmd_count, "exact A_d(N) against the predicted main term")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--limit", type=int, required=True)
    s = add("constants", cmd_constants, "C_d with its contributions, eta_d, beta*_d")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--tol", type=float, default=None)
    s = add("area", cmd_area, "area of Phi_n(x, y) <= 1 and its square bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--tol", type=float, default=None)
    s = add("congruence", cmd_congruence, "residues attained by Phi_n modulo M")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s = add("confinement-classes", cmd_confinement_classes, "classes (a0, b0) mod D avoiding degree-d values")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s = add("common", cmd_common, "count of 0 <= m <= N represented by both forms")
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.add_argument("--limit", type=int, required=True)
    s = add("common-lattice", cmd_common_lattice, "quadruples with Phi_n1(x1, x2) = Phi_n2(x3, x4)")
    s.add_argument("--B", type=int, required=True)
    s.add_argument("--n1", type=int, default=4)
    s.add_argument("--n2", type=int, default=4)
    s = add("automorphisms", cmd_automorphisms, "signed-permutation automorphisms and weights")
    s.add_argument("--n", type=int, required=True)
    s = add("containment", cmd_containment, "sample the squares of side 2 -+ n^(-1+eps)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--grid", type=int, default=64)
    s.add_argument("--assert-from", type=int, default=None, help="treat failures as errors when n >= this")
    s = add("verify-all", cmd_verify_all, "run the full verification suite")
    s.add_argument("--fast", action="store_true")
    return p


def render(fmt: str, command: str, out: Outcome, elapsed_ms: float | None) -> str:
    if fmt == "json":
        payload = {
            "command": command,
            "inputs": out.inputs,
            "result": out.result,
            "error_bound": out.error_bound,
            "elapsed_ms": elapsed_ms,
        }
        return json.dumps(payload, default=_jsonable, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        header = list(dict.fromkeys(k for row in out.rows for k in row))
        w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        w.writeheader()
        for row in out.rows:
            w.writerow({k: (str(v) if isinstance(v, Fraction) else v) for k, v in row.items()})
        return buf.getvalue()
    lines = list(out.text)
    if elapsed_ms is not None:
        lines.append(f"elapsed {elapsed_ms:.1f} ms")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config).updated(
            format=args.format, workers=args.workers, precision=args.precision, memory_cap=args.memory_cap
        )
    except (OSError, ValueError) as exc:
        print(f"cyclorep: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    pkg_log = logging.getLogger("cyclorep")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    if args.verbose:
        pkg_log.addHandler(handler)
        pkg_log.setLevel(logging.DEBUG)
    t0 = time.perf_counter()
    try:
        out = args.func(args, cfg)
    except (ValueError, MemoryError) as exc:
        print(f"cyclorep {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        pkg_log.removeHandler(handler)
    elapsed = (time.perf_counter() - t0) * 1000 if args.timing else None
    sys.stdout.write(render(cfg.format, args.command, out, elapsed))
    return EXIT_FAIL if out.failed else EXIT_OK
