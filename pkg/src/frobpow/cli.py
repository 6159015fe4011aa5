"""Problem-file parsing, subcommands, and report serialization.

One subcommand per bound/experiment family: bounds, koszul, kq, member,
tight, frobenius.  Reports serialize deterministically (stable key order, no
timestamps in the payload); timings live in a separate envelope field.

Exit codes: 0 success, 1 computation refusal (missing assumption flag or
matrix-size guard), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds as bounds_mod
from .engine import (
    IdealSpec,
    MembershipEngine,
    containment_table,
    frobenius_closure_test,
    tight_closure_witness_test,
)
from .polynomials import (
    MonomialOrder,
    PolyError,
    check_prime,
    poly_format,
    poly_parse,
)
from .rings import KNOWN_FLAGS, AssumptionMissing, RingPresentation

MAX_MATRIX_ENTRIES = 4_000_000


class InputError(ValueError):
    pass


class Refusal(RuntimeError):
    pass


@dataclass
class ProblemFile:
    ring: RingPresentation
    ideal: IdealSpec
    options: dict = field(default_factory=dict)


@dataclass
class Report:
    kind: str
    payload: dict
    assumptions: tuple
    timings: dict


# -- problem files ---------------------------------------------------------

_SECTIONS = ("ring", "ideal", "assumptions", "options")


def parse_problem_file(text):
    """Parse the INI-like problem format (sections [ring], [ideal],
    [assumptions], [options]) with per-line diagnostics."""
    data = {s: {} for s in _SECTIONS}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise InputError(f"line {lineno}: unknown section [{name}]")
            section = name
            continue
        if section is None:
            raise InputError(f"line {lineno}: content before any section header")
        if "=" not in line:
            raise InputError(f"line {lineno} in [{section}]: expected 'key = value'")
        key, _, value = line.partition("=")
        data[section][key.strip()] = (value.strip(), lineno)

    def take(section, key, required=False):
        if key in data[section]:
            return data[section].pop(key)
        if required:
            raise InputError(f"missing required key {key!r} in [{section}]")
        return None, None

    char_s, ln = take("ring", "char", required=True)
    try:
        p = int(char_s)
    except ValueError:
        raise InputError(f"line {ln} in [ring]: char must be an integer")
    try:
        check_prime(p)
    except PolyError:
        raise InputError(f"line {ln} in [ring]: characteristic must be prime")

    vars_s, ln = take("ring", "vars", required=True)
    var_names = tuple(vars_s.split())
    if not var_names:
        raise InputError(f"line {ln} in [ring]: no variables declared")
    if len(set(var_names)) != len(var_names):
        raise InputError(f"line {ln} in [ring]: duplicate variable names")

    order_s, ln = take("options", "order")
    order_kind = order_s or "grevlex"
    if order_kind not in MonomialOrder.KINDS:
        raise InputError(f"line {ln} in [options]: unknown order {order_kind!r}")

    flags_s, ln = take("assumptions", "flags")
    flags = tuple(flags_s.split()) if flags_s else ()
    for f in flags:
        if f not in KNOWN_FLAGS:
            raise InputError(
                f"line {ln} in [assumptions]: unknown flag {f!r} "
                f"(known: {' '.join(sorted(KNOWN_FLAGS))})"
            )

    def parse_polys(section, key, required):
        raw, ln = take(section, key, required=required)
        if raw is None:
            return []
        out = []
        for chunk in raw.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                f = poly_parse(chunk, var_names, p)
            except PolyError as exc:
                raise InputError(f"line {ln} in [{section}]: {exc}")
            out.append(f)
        return out

    relations = parse_polys("ring", "relations", required=False)
    for h in relations:
        if h.is_zero() or not h.is_homogeneous():
            raise InputError("[ring]: relation not homogeneous (or zero)")
    gens = parse_polys("ideal", "gens", required=True)
    if not gens:
        raise InputError("[ideal]: gens is empty")
    for g in gens:
        if g.is_zero() or not g.is_homogeneous():
            raise InputError("[ideal]: generator not homogeneous (or zero)")

    for section in _SECTIONS:
        for key, (_, ln) in data[section].items():
            raise InputError(f"line {ln} in [{section}]: unknown key {key!r}")

    try:
        ring = RingPresentation(
            p, var_names, relations, flags=flags, order_kind=order_kind
        )
    except ValueError as exc:
        raise InputError(f"[ring]: {exc}")
    ideal = IdealSpec(tuple(gens))
    return ProblemFile(ring, ideal, options={"order": order_kind})


def format_problem_file(pf):
    """Inverse of parse_problem_file, up to whitespace and comments."""
    ring = pf.ring
    lines = ["[ring]", f"char = {ring.p}", f"vars = {' '.join(ring.var_names)}"]
    if ring.relations:
        rels = " ; ".join(poly_format(h, ring.var_names) for h in ring.relations)
        lines.append(f"relations = {rels}")
    lines.append("[ideal]")
    gens = " ; ".join(poly_format(g, ring.var_names) for g in pf.ideal.generators)
    lines.append(f"gens = {gens}")
    if ring.flags:
        lines += ["[assumptions]", f"flags = {' '.join(sorted(ring.flags))}"]
    lines += ["[options]", f"order = {pf.options.get('order', 'grevlex')}"]
    return "\n".join(lines) + "\n"


# -- serialization ---------------------------------------------------------


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def emit_report(report, fmt="text", include_timings=True):
    """Deterministic serialization of a Report as text, json, or csv."""
    if fmt == "json":
        doc = {
            "kind": report.kind,
            "assumptions": list(report.assumptions),
            "payload": _jsonable(report.payload),
        }
        if include_timings:
            doc["timings"] = report.timings
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if report.kind != "kq":
            raise InputError("csv output is only defined for kq tables")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["e", "q", "k_empirical", "k_threshold", "tight"])
        for row in report.payload["rows"]:
            writer.writerow(
                [row["e"], row["q"], row["k_empirical"], row["k_threshold"],
                 row["tight"]]
            )
        return buf.getvalue()
    if fmt == "text":
        lines = [f"report: {report.kind}"]
        if report.assumptions:
            lines.append("assumptions: " + " ".join(report.assumptions))
        lines.extend(_text_lines(report.payload, indent="  "))
        if include_timings:
            for k, v in report.timings.items():
                lines.append(f"[{k}: {v}]")
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown output format {fmt!r}")


def _text_lines(value, indent=""):
    lines = []
    if isinstance(value, dict):
        for k in value:
            v = value[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.extend(_text_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}{k} = {_jsonable(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.extend(_text_lines(v, indent))
            else:
                lines.append(f"{indent}- {_jsonable(v)}")
    return lines


# -- guards ----------------------------------------------------------------


def _guard_matrix(engine, q, m, allow_large):
    rows, cols = engine.matrix_shape(q, m)
    if rows * cols > MAX_MATRIX_ENTRIES and not allow_large:
        raise Refusal(
            f"membership matrix in degree {m} for q={q} has "
            f"{rows}x{cols} = {rows * cols} entries "
            f"(cap {MAX_MATRIX_ENTRIES}); pass --allow-large to proceed"
        )


# -- subcommands -----------------------------------------------------------


def _q_list(p, emax):
    return [p**e for e in range(emax + 1)]


def _cmd_bounds(pf, args):
    ring = pf.ring
    report = bounds_mod.compute_bound_report(
        ring, pf.ideal.degrees, _q_list(ring.p, args.emax)
    )
    payload = {
        "nu": report.nu,
        "nu_provenance": report.nu_provenance,
        "smith_bound": report.smith,
        "parameter_bound": report.parameter,
        "inclusion_threshold": report.inclusion_thresholds,
        "frobenius_closure_threshold": report.frobenius_closure_threshold,
        "C1": report.c1,
        "C0": report.c0,
        "C1prime": report.chardin_c1prime,
        "citations": report.citations,
    }
    return Report("bounds", payload, report.assumptions, {})


def _cmd_koszul(pf, args):
    degrees = pf.ideal.degrees
    n = len(degrees)
    entries = []
    for j in range(1, n):
        ki = bounds_mod.koszul_invariants(degrees, j, pf.ring.dim)
        entries.append(
            {
                "j": ki.j,
                "rank": ki.rank,
                "degree_coeff": ki.degree_coeff,
                "slope_over_deg": ki.slope_over_deg,
                "shift_degrees": list(ki.shift_degrees),
            }
        )
    payload = {
        "generator_degrees": list(degrees),
        "syzygies": entries,
        "citations": {
            "rank": "alternating sum of Koszul term ranks C(n, i)",
            "degree_coeff": "alternating sum of Koszul term degrees "
            "-C(n-1, i-1) * sum(d)",
        },
    }
    return Report("koszul", payload, tuple(sorted(pf.ring.flags)), {})


def _nu_for(pf):
    return bounds_mod.compute_nu(pf.ideal.degrees, pf.ring.dim, pf.ring.flags)


def _cmd_kq(pf, args):
    ring = pf.ring
    nu, provenance = _nu_for(pf)
    engine = MembershipEngine(ring, pf.ideal)
    e_list = list(range(1, args.emax + 1))
    for e in e_list:
        q = ring.p**e
        cap = args.cap if args.cap else engine.default_cap(q, nu)
        _guard_matrix(engine, q, cap, args.allow_large)
    table = containment_table(engine, e_list, nu=nu, cap=args.cap or None)
    payload = {
        "nu": nu,
        "nu_provenance": provenance,
        "rows": [
            {
                "e": r.e,
                "q": r.q,
                "k_empirical": r.k_empirical,
                "k_threshold": r.k_threshold,
                "tight": r.tight,
                **({"cap_exceeded": r.cap_exceeded} if r.cap_exceeded else {}),
            }
            for r in table
        ],
        "citations": {
            "k_threshold": "smallest m with m > q*nu + a",
            "k_empirical": "minimal k with rank of the degree-k membership "
            "matrix equal to dim R_k",
        },
    }
    return Report("kq", payload, tuple(sorted(ring.flags)), {})


def _parse_elem(pf, text, what):
    try:
        f = pf.ring.parse(text)
    except PolyError as exc:
        raise InputError(f"{what}: {exc}")
    if f.is_zero() or not f.is_homogeneous():
        raise InputError(f"{what} must be nonzero and homogeneous")
    return f


def _cmd_member(pf, args):
    if not args.q:
        raise InputError("member requires --q")
    if not args.elem:
        raise InputError("member requires --elem")
    h = _parse_elem(pf, args.elem, "--elem")
    engine = MembershipEngine(pf.ring, pf.ideal)
    engine._check_q(args.q)
    _guard_matrix(engine, args.q, h.degree(), args.allow_large)
    cert = engine.membership(args.q, h)
    payload = {
        "q": args.q,
        "element": poly_format(h, pf.ring.var_names),
        "degree": h.degree(),
        "member": cert.member,
        "certificate": (
            [poly_format(c, pf.ring.var_names) for c in cert.coefficients]
            if cert.member
            else None
        ),
        "citations": {
            "member": "rank/solve of the graded membership matrix over F_p; "
            "certificate re-verified by normal-form reduction"
        },
    }
    return Report("member", payload, tuple(sorted(pf.ring.flags)), {})


def _cmd_tight(pf, args):
    if not args.f:
        raise InputError("tight requires --f")
    if not args.c:
        raise InputError("tight requires --c")
    f = _parse_elem(pf, args.f, "--f")
    c = _parse_elem(pf, args.c, "--c")
    try:
        nu, _ = _nu_for(pf)
    except (AssumptionMissing, ValueError):
        nu = None
    engine = MembershipEngine(pf.ring, pf.ideal)
    for e in range(1, args.emax + 1):
        q = pf.ring.p**e
        _guard_matrix(engine, q, c.degree() + q * f.degree(), args.allow_large)
    rep = tight_closure_witness_test(
        engine, f, c, range(1, args.emax + 1), nu=nu
    )
    payload = {
        "f": poly_format(f, pf.ring.var_names),
        "c": poly_format(c, pf.ring.var_names),
        "nu": nu,
        "rows": [{"e": r.e, "q": r.q, "member": r.member} for r in rep.rows],
        "notes": list(rep.notes),
        "citations": {
            "rows": "membership of c*f^q in I^[q] per tested q"
        },
    }
    return Report("tight", payload, tuple(sorted(pf.ring.flags)), {})


def _cmd_frobenius(pf, args):
    if not args.f:
        raise InputError("frobenius requires --f")
    f = _parse_elem(pf, args.f, "--f")
    try:
        nu, _ = _nu_for(pf)
    except (AssumptionMissing, ValueError):
        nu = None
    engine = MembershipEngine(pf.ring, pf.ideal)
    for e in range(args.emax + 1):
        q = pf.ring.p**e
        _guard_matrix(engine, q, q * f.degree(), args.allow_large)
    rep = frobenius_closure_test(engine, f, args.emax, nu=nu)
    payload = {
        "f": poly_format(f, pf.ring.var_names),
        "nu": nu,
        "rows": [{"e": r.e, "q": r.q, "member": r.member} for r in rep.rows],
        "found_e": rep.found_e,
        "predicted_sufficient_q": rep.predicted_sufficient_q,
        "citations": {
            "found_e": "smallest e <= emax with f^(p^e) in I^[p^e], if any",
            "predicted_sufficient_q": "smallest q with q*(deg f - nu) > a, "
            "valid when deg f > nu",
        },
    }
    return Report("frobenius", payload, tuple(sorted(pf.ring.flags)), {})


_COMMANDS = {
    "bounds": _cmd_bounds,
    "koszul": _cmd_koszul,
    "kq": _cmd_kq,
    "member": _cmd_member,
    "tight": _cmd_tight,
    "frobenius": _cmd_frobenius,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="frobpow",
        description="Degree bounds and exact membership experiments for "
        "Frobenius powers of homogeneous ideals in characteristic p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("problem_file")
        sp.add_argument("--emax", type=int, default=2)
        sp.add_argument("--q", type=int, default=None)
        sp.add_argument("--elem", default=None)
        sp.add_argument("--f", default=None)
        sp.add_argument("--c", default=None)
        sp.add_argument("--cap", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", dest="fmt", default="text",
                        choices=("text", "json", "csv"))
        sp.add_argument("--allow-large", action="store_true")
        sp.add_argument("--no-timings", action="store_true",
                        help="omit the timing envelope for byte-identical runs")
    return parser


def run_command(argv):
    """Entry point used by tests; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        with open(args.problem_file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    started = time.perf_counter()
    try:
        pf = parse_problem_file(text)
        report = _COMMANDS[args.command](pf, args)
    except (InputError, PolyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (AssumptionMissing, Refusal) as exc:
        print(f"refusal: {exc}", file=sys.stderr)
        return 1
    report.timings["seconds"] = round(time.perf_counter() - started, 3)
    try:
        out = emit_report(report, args.fmt, include_timings=not args.no_timings)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def main():
    raise SystemExit(run_command(sys.argv[1:]))
