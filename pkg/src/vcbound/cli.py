"""Command-line front end.

Exit codes: 0 success, 1 an empirical quantity exceeded its bound (or a
certificate failed to replay), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .architecture import DEFAULT_SYMBOLIC_CAP, NetworkArchitecture, effective_degrees, probability_vectors
from .bounds import (
    LOG2_E,
    BoundReport,
    build_report,
    eq43_vc_bound,
    gj_vc_bound,
    relative_entropy,
)
from .polytope import DEFAULT_HULL_CAP
from .suites import VerifyConfig, run_all
from .verifier import ShatterCertificate

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _fmt_vec(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


def _opt(x: float | None, spec: str = ".6f") -> str:
    return "absent" if x is None else format(x, spec)


def format_report_text(arch: NetworkArchitecture, rep: BoundReport) -> str:
    lines = [
        f"layers: {arch.num_layers}  input_dim N = {arch.input_dim}  s = {rep.s}",
        f"weights k_i = {_fmt_vec(rep.block_sizes)}  k = {rep.k}",
        f"alpha = {_fmt_vec(l.alpha for l in arch.layers)}  beta = {_fmt_vec(l.beta for l in arch.layers)}",
        f"degree profile d_i = {_fmt_vec(rep.degree_profile)}  d = {rep.d}",
        f"v = {_fmt_vec(rep.v)}",
        f"u = {_fmt_vec(rep.u)}",
        f"H(v|u) = {rep.entropy.value:.6g}",
        f"guard (all k_i >= 2): {'satisfied' if rep.guard_satisfied else 'VIOLATED'}",
        "component bounds (log2):",
        f"  Milnor d(2d)^(k-1)           = {rep.milnor_B_log2:.6f}",
        f"  adjusted Milnor (2d)^k       = {rep.adjusted_milnor_B_log2:.6f}",
        f"  block simplex (eq41)         = {rep.eq41_B_log2:.6f}",
        f"  entropy form (2d)^k 2^(-kH)  = {rep.entropy_B_log2:.6f}",
        f"  Stirling-relaxed (eq42)      = {_opt(rep.eq42_B_log2)}",
        f"eq41 B (exact) = {rep.eq41_B}",
        "VC-dimension upper bounds:",
        f"  Goldberg-Jerrum 2k lg(4eds)  = {rep.gj_vc:.6f}",
        f"  Karpinski-Macintyre w/ eq41  = {rep.km_vc_from_eq41:.6f}",
        f"  entropy bound (eq43)         = {_opt(rep.eq43_vc)}",
        f"  reduction gj - eq43 = 2kH    = {_opt(rep.gj_minus_eq43)}",
    ]
    for key, why in sorted(rep.absent.items()):
        lines.append(f"note: {key} absent: {why}")
    return "\n".join(lines) + "\n"


def _load_architecture(path: str) -> NetworkArchitecture:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return NetworkArchitecture.from_dict(doc)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: invalid architecture: {exc}") from exc


def cmd_bound(args, out) -> int:
    arch = _load_architecture(args.input)
    rep = build_report(arch)
    if not rep.guard_satisfied:
        print("warning: some k_i < 2; eq42/eq43 omitted, use the eq41 route", file=sys.stderr)
    if args.format == "json":
        out.write(json.dumps({"architecture": arch.to_dict(), "report": rep.to_dict()}, indent=2) + "\n")
    else:
        out.write(format_report_text(arch, rep))
    return EXIT_OK


EXAMPLE_ARCHITECTURE = NetworkArchitecture.from_dict({
    "input_dim": 4,
    "predicate_count": 1,
    "layers": [
        {"neurons": 5, "weight_count": 50, "alpha": 1, "beta": 2},
        {"neurons": 1, "weight_count": 20, "alpha": 1, "beta": 3},
    ],
})


def example_paper_values() -> dict:
    """Numbers for the four-input, 5-hidden-neuron worked example.

    ``u`` follows u_i = d_i / d; the example's printed u lists the same
    entries in reverse, and only that ordering gives H ~ 0.684033, so both
    are reported.
    """
    arch = EXAMPLE_ARCHITECTURE
    prof = effective_degrees(arch)
    v, u = probability_vectors(arch)
    u_printed = tuple(reversed(u))
    h_def = relative_entropy(v, u).value
    h_printed = relative_entropy(v, u_printed).value
    k, d = arch.k, prof.total
    lg4ed = 2 + LOG2_E + math.log2(d)
    return {
        "architecture": arch.to_dict(),
        "degree_profile": list(prof.per_level),
        "d": d,
        "k": k,
        "v": [str(x) for x in v],
        "u_definition_order": [str(x) for x in u],
        "u_printed_order": [str(x) for x in u_printed],
        "H_definition_order": h_def,
        "H_printed_order": h_printed,
        "lg_4ed": lg4ed,
        "ratio_printed_order": h_printed / lg4ed,
        "ratio_definition_order": h_def / lg4ed,
        "gj_vc": gj_vc_bound(k, d, 1),
        "eq43_vc_printed_order": eq43_vc_bound(k, d, h_printed, arch.block_sizes),
        "eq43_vc_definition_order": eq43_vc_bound(k, d, h_def, arch.block_sizes),
    }


def cmd_example_paper(args, out) -> int:
    vals = example_paper_values()
    if args.format == "json":
        out.write(json.dumps(vals, indent=2) + "\n")
        return EXIT_OK
    arch = EXAMPLE_ARCHITECTURE
    lines = [
        "worked example: N = 4 inputs, 5 quadratic hidden neurons, 1 cubic output neuron",
        f"k_i = {_fmt_vec(arch.block_sizes)}  alpha = (1, 1)  beta = (2, 3)",
        f"degree profile d_i = {_fmt_vec(vals['degree_profile'])}  d = {vals['d']}",
        f"v = {_fmt_vec(vals['v'])}",
        f"u (u_i = d_i/d)      = {_fmt_vec(vals['u_definition_order'])}",
        f"u (printed ordering) = {_fmt_vec(vals['u_printed_order'])}",
        f"H(v|u) = {vals['H_printed_order']:.6g}   [printed ordering]",
        f"H(v|u) = {vals['H_definition_order']:.6g}   [u_i = d_i/d ordering]",
        f"lg(4ed) = {vals['lg_4ed']:.4f}",
        f"ratio H/lg(4ed) = {vals['ratio_printed_order']:.6g}   [printed ordering]",
        f"ratio H/lg(4ed) = {vals['ratio_definition_order']:.6g}   [u_i = d_i/d ordering]",
        f"GJ VC bound 2k lg(4ed)           = {vals['gj_vc']:.6f}",
        f"entropy VC bound 2k(lg(4ed) - H) = {vals['eq43_vc_printed_order']:.6f}   [printed ordering]",
        f"entropy VC bound 2k(lg(4ed) - H) = {vals['eq43_vc_definition_order']:.6f}   [u_i = d_i/d ordering]",
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = VerifyConfig(seed=args.seed, budget=args.budget, symbolic_cap=args.symbolic_cap,
                       hull_cap=args.hull_cap, eq41_divisor=args.tamper_eq41_divisor)
    certs: list = []
    checks = run_all(cfg, certs)
    failed = [c for c in checks if not c.ok]
    if args.cert_dir:
        cert_dir = Path(args.cert_dir)
        cert_dir.mkdir(parents=True, exist_ok=True)
        for name, cert in certs:
            (cert_dir / (name.replace(" ", "_") + ".json")).write_text(json.dumps(cert.to_dict(), indent=2) + "\n")
    if args.format == "json":
        out.write(json.dumps({"seed": cfg.seed, "checks": [c.to_dict() for c in checks],
                              "violations": len(failed)}, indent=2) + "\n")
    else:
        suites: dict[str, list] = {}
        for c in checks:
            suites.setdefault(c.suite, []).append(c)
        for suite, cs in suites.items():
            bad = sum(not c.ok for c in cs)
            out.write(f"suite {suite}: {len(cs)} checks, {bad} violations\n")
            if suite == "grid":
                for c in cs:
                    rel = "≤" if c.ok else ">"
                    out.write(f"  {c.name}: components={c.observed} {rel} bound {c.bound} [{c.method}]\n")
            elif suite == "shatter":
                for c in cs:
                    out.write(f"  {c.line()}\n")
        for c in failed:
            out.write(f"VIOLATION {c.line()}\n  reproducer: {c.reproducer}\n")
        out.write("all bounds respected\n" if not failed else f"{len(failed)} bound violations\n")
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_verify_cert(args, out) -> int:
    try:
        doc = json.loads(Path(args.cert).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.cert}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        cert = ShatterCertificate.from_dict(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"{args.cert}: malformed certificate: {exc}") from exc
    ok = cert.verify()
    bad = cert.failures()
    if args.format == "json":
        out.write(json.dumps({"valid": ok, "n": cert.n, "failed_labelings": bad}) + "\n")
    else:
        status = "valid" if ok else "INVALID"
        out.write(f"certificate {status}: n = {cert.n}, {2 ** cert.n} labelings, {len(bad)} failed\n")
        for bits in bad:
            out.write(f"  labeling {bits} not reproduced\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound report for an architecture JSON file")
    p.add_argument("input")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("example-paper", help="reproduce the worked two-layer example")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_example_paper)

    p = sub.add_parser("verify", help="run the empirical suites against the bounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_positive, default=2000, help="weight samples per labeling")
    p.add_argument("--symbolic-cap", type=_positive, default=DEFAULT_SYMBOLIC_CAP)
    p.add_argument("--hull-cap", type=_positive, default=DEFAULT_HULL_CAP)
    p.add_argument("--cert-dir", help="write shattering certificates here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tamper-eq41-divisor", type=_positive, default=1, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-cert", help="replay a shattering certificate exactly")
    p.add_argument("cert")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify_cert)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
