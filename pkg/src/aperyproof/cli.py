"""Command line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import analytic, apery_form, ball_form
from .exact_core import dn

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE_COLUMNS = ["n", "u_num", "v_num", "v_den", "D_n", "F_decimal", "F_error_bound", "lemma4_bound"]


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_max: int = 5
    digits: int = 40
    q: int = 1
    format: str = "text"
    output_path: Optional[Path] = None
    n: Optional[int] = None


# ---------------------------------------------------------------------------
# commands: each returns (records, passed)
# ---------------------------------------------------------------------------

def _table(cfg: RunConfig):
    rows = []
    for n in range(cfg.n_max + 1):
        form = apery_form.apery_uv(n)
        F = analytic.eval_form("apery", n, cfg.digits, cross_check=False)
        bound = ball_form.growth_bound(n, cfg.digits)
        rows.append({
            "n": n,
            "u_num": str(form.u.numerator),
            "v_num": str(form.v.numerator),
            "v_den": str(form.v.denominator),
            "D_n": str(dn(n)),
            "F_decimal": F.digits_str(cfg.digits),
            "F_error_bound": F.error_str(),
            "lemma4_bound": bound.digits_str(cfg.digits),
        })
    return {"command": "table", "columns": TABLE_COLUMNS, "rows": rows}, True


def _check(checks: list, anchor: str, name: str, n, fn: Callable[[], bool]) -> None:
    try:
        ok = bool(fn())
        detail = ""
    except ArithmeticError as exc:
        ok, detail = False, str(exc)
    entry = {"anchor": anchor, "name": name, "n": n, "passed": ok}
    if detail:
        entry["detail"] = detail
    checks.append(entry)


def _verify(cfg: RunConfig):
    checks: list = []
    N = cfg.n_max
    for n in range(N + 1):
        _check(checks, "Lemma1", "u_integral_Dn3v_integral", n,
               lambda n=n: all(apery_form.apery_uv(n).integrality().values()))
        _check(checks, "Eq2", "apery_coefficients", n,
               lambda n=n: all(apery_form.apery_coeffs(n).check().values()))
        _check(checks, "Ball", "vanishing_sums", n,
               lambda n=n: not any(ball_form.ball_coeffs(n).vanishing_sums().values()))
        _check(checks, "Ball", "Dn_u_Dn4_v_integral", n,
               lambda n=n: all(ball_form.ball_uv(n).integrality()[k]
                               for k in ("Dn_u_integral", "Dn4_v_integral")))
    for n in range(1, N + 1):
        _check(checks, "Eq6", "apery_telescoping", n,
               lambda n=n: apery_form.verify_apery_telescoping(n).identity_ok)
        _check(checks, "Lemma3", "S_prime_at_1_zero", n,
               lambda n=n: (lambda v: v.s_prime_at_1_is_zero and v.double_zero_at_1)(
                   apery_form.verify_apery_telescoping(n)))
        _check(checks, "Eq5", "fit_matches_s_n", n,
               lambda n=n: apery_form.fit_certificate(n, "apery_deg2").prefactor_num
               == apery_form.certificate_s(n).prefactor_num)
        _check(checks, "Eq13", "fit_matches_transcription", n,
               lambda n=n: ball_form.ball_certificate(n, cross_check=True) is not None)
        _check(checks, "Eq14", "ball_telescoping", n,
               lambda n=n: ball_form.verify_ball_telescoping(n).identity_ok)
        _check(checks, "Lemma6", "S_tilde_at_1_zero", n,
               lambda n=n: ball_form.verify_ball_telescoping(n).S_at_1_is_zero)
    if N >= 2:
        seqs = {
            "u": [apery_form.apery_uv(n).u for n in range(N + 1)],
            "v": [apery_form.apery_uv(n).v for n in range(N + 1)],
            "u_ball": [ball_form.ball_uv(n).u for n in range(N + 1)],
            "v_ball": [ball_form.ball_uv(n).v for n in range(N + 1)],
        }
        for name, seq in seqs.items():
            for w in apery_form.recurrence_check(seq):
                checks.append({"anchor": "Eq7", "name": f"recurrence_{name}", "n": w.n, "passed": w.ok})
    for n in range(N + 1):
        _check(checks, "Eq10", "growth_bound", n,
               lambda n=n: (lambda b: b.lower_ok and b.upper_ok)(ball_form.ball_bound(n, cfg.digits)))
    if N >= 1:
        rep = analytic.coincidence_check(N, cfg.digits)
        checks.append({"anchor": "Lemma7", "name": "seeds", "n": None, "passed": rep.seeds_ok})
        for v in rep.verdicts:
            checks.append({"anchor": "Lemma7", "name": "coincidence", "n": v.n, "passed": v.ok})
    passed = all(c["passed"] for c in checks)
    return {"command": "verify", "n_max": N, "digits": cfg.digits, "passed": passed,
            "checks": checks}, passed


def _eval(cfg: RunConfig):
    n = cfg.n if cfg.n is not None else cfg.n_max
    rows, values = [], []
    for kind in ("apery", "ball"):
        for path, fn in (("linear", analytic.form_via_linear), ("series", analytic.form_via_series)):
            v = fn(kind, n, cfg.digits)
            values.append(v)
            rows.append({"kind": kind, "path": path, "n": n,
                         "value": v.digits_str(cfg.digits), "error_bound": v.error_str()})
    agree = all(a.overlaps(b) for a in values for b in values)
    return {"command": "eval", "n": n, "digits": cfg.digits, "agree": agree, "rows": rows}, agree


def _gate(cfg: RunConfig):
    s = analytic.irrationality_gate(max(cfg.n_max, 2), cfg.q)
    rows = [{
        "n": r.n, "q": r.q, "D_n": str(r.D_n),
        "gate_value": r.gate_value.digits_str(), "gate_error": r.gate_value.error_str(),
        "bound15": r.bound15.digits_str(), "positivity": r.positivity,
        "below_bound": r.below_bound, "bound_below_one": r.below_one, "Dn_below_3n": r.dn_below_3n,
    } for r in s.reports]
    out = {
        "command": "gate",
        "constant": s.constant.digits_str(20),
        "constant_below_one": s.constant_below_one,
        "first_n_bound_below_one": s.first_bound_below_one,
        "first_n_value_below_one": s.first_value_below_one,
        "monotone_from": s.monotone_from,
        "rows": rows,
        "ratios": [{"n": n, "ratio": f"{float(r):.10f}", "relative_deviation": f"{float(d):.6f}"}
                   for n, r, d in s.ratios],
    }
    return out, s.constant_below_one and s.chain_ok


def _fit(cfg: RunConfig):
    rows = []
    passed = True
    for n in range(1, max(cfg.n_max, 1) + 1):
        fa = apery_form.fit_certificate(n, "apery_deg2")
        ta = apery_form.certificate_s(n)
        fb = apery_form.fit_certificate(n, "ball_deg6")
        tb = ball_form.ball_certificate(n)
        for kind, fitted, given in (("apery", fa, ta), ("ball", fb, tb)):
            same = fitted.prefactor_num == given.prefactor_num
            passed &= same
            rows.append({"n": n, "kind": kind, "match": same,
                         "fitted": [str(c) for c in fitted.prefactor_num.coeffs],
                         "transcribed": [str(c) for c in given.prefactor_num.coeffs]})
    return {"command": "fit", "rows": rows}, passed


COMMANDS = {"table": _table, "verify": _verify, "eval": _eval, "gate": _gate, "fit": _fit}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _json_default(o):
    return str(o)


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_json_default) + "\n"
    cmd = report["command"]
    if fmt == "csv":
        buf = io.StringIO()
        rows = report.get("rows") or report.get("checks") or []
        if cmd == "table":
            fields = TABLE_COLUMNS
        else:
            fields = list(rows[0].keys()) if rows else []
            for r in rows:
                fields += [k for k in r if k not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, list) else v) for k, v in r.items()})
        return buf.getvalue()
    return _render_text(report)


def _render_text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if cmd == "table":
        for r in report["rows"]:
            v = r["v_num"] if r["v_den"] == "1" else f"{r['v_num']}/{r['v_den']}"
            lines.append(f"n={r['n']}  u={r['u_num']}  v={v}  D={r['D_n']}  "
                         f"F={r['F_decimal']} (+/- {r['F_error_bound']})  bound={r['lemma4_bound']}")
    elif cmd == "verify":
        for c in report["checks"]:
            tag = "PASS" if c["passed"] else "FAIL"
            n = "" if c["n"] is None else f" n={c['n']}"
            lines.append(f"{tag} {c['anchor']} {c['name']}{n}")
        lines.append(f"overall: {'PASS' if report['passed'] else 'FAIL'}")
    elif cmd == "eval":
        for r in report["rows"]:
            lines.append(f"{r['kind']:5s} {r['path']:6s} n={r['n']}  {r['value']} +/- {r['error_bound']}")
        lines.append(f"paths agree: {report['agree']}")
    elif cmd == "gate":
        rel = "<" if report["constant_below_one"] else ">="
        lines.append(f"gate constant 27*(sqrt(2)-1)^4 = {report['constant']}... {rel} 1")
        for r in report["rows"]:
            lines.append(f"n={r['n']}  q*D_n^3*F_n={r['gate_value']}  bound={r['bound15']}  "
                         f"positive={r['positivity']}  below_bound={r['below_bound']}")
        lines.append(f"first n with bound < 1: {report['first_n_bound_below_one']}")
        lines.append(f"first n with q*D_n^3*F_n < 1: {report['first_n_value_below_one']}")
        lines.append(f"q*D_n^3*F_n decreasing from n = {report['monotone_from']}")
        for r in report["ratios"]:
            lines.append(f"F_{r['n'] + 1}/F_{r['n']} = {r['ratio']}  deviation {r['relative_deviation']}")
    elif cmd == "fit":
        for r in report["rows"]:
            lines.append(f"n={r['n']} {r['kind']:5s} match={r['match']}  fitted={r['fitted']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def run(cfg: RunConfig) -> tuple[int, str]:
    report, passed = COMMANDS[cfg.command](cfg)
    return (EXIT_OK if passed else EXIT_FAIL), _render(report, cfg.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aperyproof",
                                description="Exact checks and certified numerics for the irrationality of zeta(3).")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json", "text"], default="text")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--n", type=int, default=None, help="index for the eval command")
    return p


def parse_config(argv=None) -> RunConfig:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.n_max < 0:
        parser.error("--n-max must be nonnegative")
    if a.digits < 1:
        parser.error("--digits must be positive")
    if a.q < 1:
        parser.error("--q must be positive")
    if a.n is not None and a.n < 0:
        parser.error("--n must be nonnegative")
    return RunConfig(a.command, a.n_max, a.digits, a.q, a.format, a.out, a.n)


def main(argv=None) -> int:
    cfg = parse_config(argv)
    code, text = run(cfg)
    if cfg.output_path is not None:
        cfg.output_path.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
