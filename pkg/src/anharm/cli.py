"""Command-line frontend.

Subcommands: solve, compare, scan, convergence, figure.  Outputs are
decimal strings at the working precision throughout, so high-precision
results survive serialization.  Exit codes: 0 success, 2 configuration
error, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import lengths, reference, sinc, trigbasis
from .eigen import (
    JacobiNonConvergence,
    SpectrumReport,
    convergence_series,
    jacobi_eigen,
    relative_errors,
    timed_solve,
)
from .hobasis import HOBasisSpec, assemble_ho, op_frequency, pms_frequency
from .mp import big_to_str, to_big, workprec
from .potentials import Potential


class ConfigError(Exception):
    """Invalid flag combination or value; maps to exit code 2."""


def default_precision(n: int) -> int:
    """Documented heuristic: 128 bits up to N=15, 256 up to N=40, else 384."""
    if n <= 15:
        return 128
    if n <= 40:
        return 256
    return 384


def _max_sweeps() -> int:
    return int(os.environ.get("ANHARM_MAX_SWEEPS", "100"))


def _parse_potential(args) -> Potential:
    if getattr(args, "potential", None):
        if getattr(args, "k", None) is not None:
            raise ConfigError("give either --k or --potential, not both")
        try:
            return Potential.parse(args.potential)
        except Exception as exc:
            raise ConfigError(f"bad potential spec: {exc}") from exc
    if getattr(args, "k", None) is not None:
        try:
            return Potential.monomial(args.k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError("a potential is required: --k <even int> or --potential <spec>")


def _physical_level(parity: str, index: int) -> int:
    return 2 * index if parity == "even" else 2 * index + 1


def _attach_errors(report: SpectrumReport, pot: Potential, parity: str, precision: int):
    refs = reference.reference_levels(pot, parity)
    if refs is None:
        return
    computed, ref_vals, levels = [], [], []
    for i, ev in enumerate(report.eigenvalues):
        n = _physical_level(parity, i)
        if n in refs:
            computed.append(ev)
            ref_vals.append(to_big(refs[n], precision))
            levels.append(n)
    if not computed:
        return
    errs, _ = relative_errors(computed, ref_vals, precision)
    report.relative_errors = errs
    report.meta["error_levels"] = levels


def _solve_trig(pot: Potential, n_basis: int, parity: str, precision: int, rule: str | None,
                explicit_length, levels: int) -> SpectrumReport:
    if explicit_length is not None:
        length_value = to_big(explicit_length, precision)
        rule_tag = "explicit"
    else:
        res = lengths.length_for_rule(rule or "op2", pot, n_basis, precision)
        length_value = res.L
        rule_tag = res.rule
    assemble = trigbasis.assemble_even if parity == "even" else trigbasis.assemble_odd
    ham = assemble(pot, n_basis, length_value, precision)
    report = timed_solve(ham.matrix, max_sweeps=_max_sweeps())
    report.eigenvalues = report.eigenvalues[:levels]
    report.meta.update({"rule": rule_tag, "method": "trig"})
    _attach_errors(report, pot, parity, precision)
    return report


def _solve_sinc(pot: Potential, n_mesh: int, precision: int, h, levels: int) -> SpectrumReport:
    report = sinc.collocation_solve(pot, n_mesh, h=h, precision=precision, max_sweeps=_max_sweeps())
    report.eigenvalues = report.eigenvalues[:levels]
    report.meta["rule"] = "schwartz-h" if h is None else "explicit-h"
    # the symmetric mesh carries both parities; report errors against the
    # merged reference spectrum when every needed level is stored
    even = reference.reference_levels(pot, "even") or {}
    odd = reference.reference_levels(pot, "odd") or {}
    merged = dict(even)
    merged.update(odd)
    if merged:
        wanted = list(range(len(report.eigenvalues)))
        if all(n in merged for n in wanted):
            refs = [to_big(merged[n], precision) for n in wanted]
            errs, _ = relative_errors(report.eigenvalues, refs, precision)
            report.relative_errors = errs
            report.meta["error_levels"] = wanted
    return report


def _solve_ho(args, precision: int, levels: int) -> SpectrumReport:
    lam = args.lam if args.lam is not None else "1"
    omega2 = args.omega2 if args.omega2 is not None else "0"
    n_basis = args.N
    rule = args.freq_rule or "pms"
    if rule == "pms":
        omega = pms_frequency(omega2, lam, n_basis, precision)
    elif rule == "op":
        omega = op_frequency(omega2, lam, n_basis, precision)
    elif rule == "value":
        if args.omega is None:
            raise ConfigError("--freq-rule value requires --omega")
        omega = to_big(args.omega, precision)
    else:
        raise ConfigError(f"unknown frequency rule {rule!r}")
    spec = HOBasisSpec(Omega=omega, N=n_basis, omega2=omega2, lam=lam)
    even_m, odd_m = assemble_ho(spec, precision)
    parity = args.parity
    if parity == "both":
        r_even = jacobi_eigen(even_m, max_sweeps=_max_sweeps())
        r_odd = jacobi_eigen(odd_m, max_sweeps=_max_sweeps())
        with workprec(precision):
            vals = sorted(r_even.eigenvalues + r_odd.eigenvalues)
        sweeps = max(r_even.sweeps, r_odd.sweeps)
    else:
        res = jacobi_eigen(even_m if parity == "even" else odd_m, max_sweeps=_max_sweeps())
        vals, sweeps = res.eigenvalues, res.sweeps
    meta = dict(even_m.meta)
    meta.update({
        "method": "ho", "parity": parity, "rule": rule, "precision": precision,
        "sweeps": sweeps, "Omega": omega,
    })
    return SpectrumReport(eigenvalues=vals[:levels], meta=meta)


def _emit_report(report: SpectrumReport, parity: str, args):
    fmt = args.format
    out_lines = []
    if fmt == "json":
        out_lines.append(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    elif fmt == "csv":
        out_lines.append("level,energy,relative_error")
        levels = report.meta.get("error_levels")
        for i, ev in enumerate(report.eigenvalues):
            n = levels[i] if levels and i < len(levels) else _physical_level(parity, i)
            err = big_to_str(report.relative_errors[i]) if report.relative_errors and i < len(report.relative_errors) else ""
            out_lines.append(f"{n},{big_to_str(ev)},{err}")
    else:
        meta = report.meta
        head = [f"method={meta.get('method', 'trig')}", f"potential={meta.get('potential', '')}"]
        for key in ("parity", "N", "rule", "precision"):
            if key in meta:
                head.append(f"{key}={meta[key]}")
        if "L" in meta:
            head.append(f"L={_short(meta['L'])}")
        if "Omega" in meta:
            head.append(f"Omega={_short(meta['Omega'])}")
        out_lines.append("  ".join(head))
        for i, ev in enumerate(report.eigenvalues):
            n = _physical_level(parity, i) if parity in ("even", "odd") else i
            line = f"n={n:<3d} E={_short(ev, 45)}"
            if report.relative_errors and i < len(report.relative_errors):
                line += f"  eps={_short(report.relative_errors[i], 10)}"
            out_lines.append(line)
    _write_output(out_lines, args.output)


def _short(value, digits: int = 20) -> str:
    s = big_to_str(value) if not isinstance(value, str) else value
    if "e" in s:
        mant, exp = s.split("e")
        if len(mant) > digits:
            mant = mant[: digits + 1]
        return f"{mant}e{exp}"
    return s[: digits + 2]


def _write_output(lines, path):
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_matrix(matrix, path: str):
    meta = matrix.meta
    parity = meta.get("parity", "full")
    k = meta.get("k", "")
    n = meta.get("N", matrix.n)
    length = meta.get("L", meta.get("h", ""))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {parity} {k} {n} {big_to_str(length) if length != '' else ''} {matrix.precision}\n")
        for i in range(matrix.n):
            fh.write(" ".join(big_to_str(matrix.get(i, j)) for j in range(matrix.n)) + "\n")


def cmd_solve(args) -> int:
    method = args.method
    if method == "ho":
        if args.length_rule or args.length:
            raise ConfigError("length rules apply to trig/sinc, not the ho method")
        if args.N is None:
            raise ConfigError("--N is required")
        precision = args.precision or default_precision(args.N)
        levels = args.levels or min(8, 2 * args.N)
        report = _solve_ho(args, precision, levels)
        _emit_report(report, args.parity, args)
        return 0

    pot = _parse_potential(args)
    if method == "sinc":
        if args.freq_rule:
            raise ConfigError("frequency rules apply to the ho method only")
        if args.length_rule and args.length_rule != "schwartz":
            raise ConfigError("the sinc mesh uses the schwartz spacing; use --h to override")
        n_mesh = args.mesh_N or args.N
        if n_mesh is None:
            raise ConfigError("--mesh-N (or --N) is required")
        precision = args.precision or default_precision(n_mesh)
        levels = args.levels or min(8, 2 * n_mesh + 1)
        report = _solve_sinc(pot, n_mesh, precision, args.h, levels)
        if args.dump_matrix:
            mesh = sinc.build_mesh(pot, n_mesh, h=args.h, precision=precision)
            _dump_matrix(sinc.collocation_matrix(pot, mesh, precision), args.dump_matrix)
        _emit_report(report, "mesh", args)
        return 0

    if args.freq_rule:
        raise ConfigError("frequency rules apply to the ho method only")
    if args.N is None:
        raise ConfigError("--N is required")
    precision = args.precision or default_precision(args.N)
    levels = args.levels or min(8, args.N)
    parities = ["even", "odd"] if args.parity == "both" else [args.parity]
    reports = []
    for parity in parities:
        rep = _solve_trig(pot, args.N, parity, precision, args.length_rule, args.length, levels)
        reports.append((parity, rep))
        if args.dump_matrix:
            assemble = trigbasis.assemble_even if parity == "even" else trigbasis.assemble_odd
            res = (to_big(args.length, precision) if args.length
                   else lengths.length_for_rule(args.length_rule or "op2", pot, args.N, precision).L)
            suffix = f".{parity}" if args.parity == "both" else ""
            _dump_matrix(assemble(pot, args.N, res, precision).matrix, args.dump_matrix + suffix)
    for parity, rep in reports:
        _emit_report(rep, parity, args)
    return 0


def cmd_compare(args) -> int:
    pot = _parse_potential(args)
    rules = [r.strip() for r in args.rules.split(",") if r.strip()]
    if len(rules) < 2:
        raise ConfigError("compare needs at least two rules (comma separated)")
    for rule in rules:
        if rule not in lengths.RULES:
            raise ConfigError(f"unknown rule {rule!r}; choose from {lengths.RULES}")
    if args.N is None:
        raise ConfigError("--N is required")
    precision = args.precision or default_precision(args.N)
    level_count = args.levels or 4
    parity = args.parity if args.parity != "both" else "even"

    columns = {}
    for rule in rules:
        res = lengths.length_for_rule(rule, pot, args.N, precision)
        assemble = trigbasis.assemble_even if parity == "even" else trigbasis.assemble_odd
        ham = assemble(pot, args.N, res.L, precision)
        sol = jacobi_eigen(ham.matrix, max_sweeps=_max_sweeps())
        refs = reference.reference_levels(pot, parity)
        errs = []
        for i in range(min(level_count, len(sol.eigenvalues))):
            n = _physical_level(parity, i)
            if refs and n in refs:
                e, _ = relative_errors([sol.eigenvalues[i]], [to_big(refs[n], precision)], precision)
                errs.append(e[0])
            else:
                errs.append(None)
        columns[rule] = errs

    lines = ["level," + ",".join(rules)]
    for i in range(level_count):
        n = _physical_level(parity, i)
        cells = [big_to_str(columns[r][i]) if columns[r][i] is not None else "" for r in rules]
        lines.append(f"{n}," + ",".join(cells))
    _write_output(lines, args.output)
    return 0


def cmd_scan(args) -> int:
    pot = _parse_potential(args)
    if args.N is None:
        raise ConfigError("--N is required")
    precision = args.precision or default_precision(args.N)
    bracket = None
    if args.bracket:
        try:
            lo, hi = args.bracket.split(":")
            bracket = (lo, hi)
        except ValueError as exc:
            raise ConfigError("--bracket expects LO:HI") from exc
    try:
        res = lengths.length_scan(
            pot, args.N, precision,
            objective=args.objective, bracket=bracket, tolerance=args.tolerance,
        )
    except lengths.ScanBracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {
        "L": big_to_str(res.L),
        "alpha": big_to_str(res.alpha),
        "rule": "scan",
        "objective": args.objective,
        "N": args.N,
        "k": res.k,
        "closed_rules": {},
    }
    for rule in ("schwartz", "op", "op1", "op2", "trace", "trace-asym"):
        payload["closed_rules"][rule] = big_to_str(lengths.length_for_rule(rule, pot, args.N, precision).L)
    _write_output([json.dumps(payload, indent=2, sort_keys=True)], args.output)
    return 0


def cmd_convergence(args) -> int:
    pot = _parse_potential(args)
    if args.N_list:
        try:
            n_list = [int(x) for x in args.N_list.split(",")]
        except ValueError as exc:
            raise ConfigError("--N-list expects comma-separated integers") from exc
    elif args.N_range:
        parts = args.N_range.split(":")
        if len(parts) not in (2, 3):
            raise ConfigError("--N-range expects LO:HI[:STEP]")
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        n_list = list(range(lo, hi + 1, step))
    else:
        raise ConfigError("convergence needs --N-list or --N-range")
    if not n_list or sorted(n_list) != n_list:
        raise ConfigError("N values must be ascending")
    rule = args.rule or "op2"
    if rule not in lengths.RULES:
        raise ConfigError(f"unknown rule {rule!r}")
    precision = args.precision or default_precision(max(n_list))
    rows, slope = convergence_series(pot, rule, n_list, precision, level=args.level)
    lines = ["N,energy,eps"]
    for n, energy, eps in rows:
        lines.append(f"{n},{big_to_str(energy)},{big_to_str(eps) if eps is not None else ''}")
    if slope is not None:
        lines.append(f"# slope_log10_eps_per_N = {slope:.6f}")
    _write_output(lines, args.output)
    return 0


def cmd_figure(args) -> int:
    name = args.name
    precision = args.precision or 53
    lines: list[str] = []
    if name == "fig1":
        lines.append("k,N,L_scan,L_op")
        for k in (2, 4, 6, 8):
            for n in range(1, 21):
                scan = lengths.length_scan(k, n, 53)
                op = lengths.length_op(k, n, 53)
                lines.append(f"{k},{n},{big_to_str(scan.L)},{big_to_str(op.L)}")
    elif name in ("fig2", "fig3"):
        ks = (2, 4) if name == "fig2" else (6, 16)
        lines.append("k,N,L_schwartz,L_op,L_op1,L_op2,L_trace,L_trace_asym")
        for k in ks:
            for n in range(1, 41):
                cells = [
                    lengths.length_schwartz(k, n, precision).L,
                    lengths.length_op(k, n, precision).L,
                    lengths.length_op1(k, n, precision).L,
                    lengths.length_op2(k, n, precision).L,
                    lengths.length_trace(k, n, precision, mode="exact").L,
                    lengths.length_trace(k, n, precision, mode="asymptotic").L,
                ]
                lines.append(f"{k},{n}," + ",".join(big_to_str(c) for c in cells))
    elif name == "fig5":
        lines.append("k,alpha_schwartz,alpha_op,alpha_op1,alpha_op2,alpha_trace")
        for k in range(2, 41, 2):
            cells = [
                lengths.alpha_schwartz(k, precision),
                lengths.alpha_op(k, precision),
                lengths.alpha_op1(k, precision),
                lengths.alpha_op2(k, precision),
                lengths.alpha_trace_asym(k, precision),
            ]
            lines.append(f"{k}," + ",".join(big_to_str(c) for c in cells))
    elif name == "fig8":
        # Omega_PMS / (2 lambda^(1/3)) vs 2N for omega^2 in {0, 12, 20} * lambda^(2/3); lambda = 1
        lines.append("twoN,omega2_0,omega2_12,omega2_20")
        with workprec(precision):
            for n in range(1, 31):
                row = [str(2 * n)]
                for w2 in (0, 12, 20):
                    om = pms_frequency(w2, 1, n, precision)
                    with workprec(precision):
                        row.append(big_to_str(om / 2))
                lines.append(",".join(row))
    else:
        raise ConfigError(f"unknown figure {name!r}; known: fig1 fig2 fig3 fig5 fig8")
    _write_output(lines, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anharm",
        description="Spectral solver for one-dimensional anharmonic oscillators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_rules=True):
        p.add_argument("--k", type=int, help="monomial potential exponent (even, >= 2)")
        p.add_argument("--potential", help="potential spec: 'x^4' or JSON [[2,-2],[4,2],[6,1]]")
        p.add_argument("--N", type=int, help="basis size (per parity for trig/ho; per half-axis for sinc)")
        p.add_argument("--precision", type=int, help="working precision in bits (default by N: 128/256/384)")
        p.add_argument("--parity", choices=("even", "odd", "both"), default="even")
        p.add_argument("--levels", type=int, help="number of levels to report")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--output", help="write output to this path instead of stdout")
        if with_rules:
            p.add_argument("--length-rule", choices=lengths.RULES, help="box length rule (trig)")
            p.add_argument("--length", help="explicit box half-width L (overrides the rule)")

    ps = sub.add_parser("solve", help="diagonalize one configuration")
    common(ps)
    ps.add_argument("--method", "--basis", dest="method", choices=("trig", "ho", "sinc"), default="trig")
    ps.add_argument("--mesh-N", dest="mesh_N", type=int, help="sinc mesh points per half-axis")
    ps.add_argument("--h", help="explicit sinc mesh spacing")
    ps.add_argument("--omega2", help="physical omega^2 for the ho method")
    ps.add_argument("--lambda", dest="lam", help="quartic coupling for the ho method")
    ps.add_argument("--freq-rule", choices=("pms", "op", "value"), help="ho frequency rule")
    ps.add_argument("--omega", help="explicit basis frequency for --freq-rule value")
    ps.add_argument("--dump-matrix", help="write the assembled matrix to this path")
    ps.set_defaults(func=cmd_solve)

    pc = sub.add_parser("compare", help="relative errors across length rules")
    common(pc)
    pc.add_argument("--rules", required=True, help="comma-separated rule list (>= 2)")
    pc.set_defaults(func=cmd_compare)

    pn = sub.add_parser("scan", help="empirical optimal length by golden-section search")
    common(pn)
    pn.add_argument("--objective", choices=("ground", "trace"), default="ground")
    pn.add_argument("--bracket", help="search bracket LO:HI (default: around the schwartz length)")
    pn.add_argument("--tolerance", type=float, default=1e-8)
    pn.set_defaults(func=cmd_scan)

    pv = sub.add_parser("convergence", help="error versus N series")
    common(pv)
    pv.add_argument("--rule", help="length rule (default op2)")
    pv.add_argument("--N-list", dest="N_list", help="comma-separated N values")
    pv.add_argument("--N-range", dest="N_range", help="LO:HI[:STEP]")
    pv.add_argument("--level", type=int, default=0, help="even-sector level index (0 = ground)")
    pv.set_defaults(func=cmd_convergence)

    pf = sub.add_parser("figure", help="emit plot-ready CSV data")
    pf.add_argument("name", help="one of: fig1 fig2 fig3 fig5 fig8")
    pf.add_argument("--precision", type=int)
    pf.add_argument("--output")
    pf.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, lengths.ScanBracketError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JacobiNonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
