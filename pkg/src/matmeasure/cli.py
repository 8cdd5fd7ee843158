"""``matmeasure`` command line.

Every command reads JSON (or a set / symbol string), prints a JSON report to
stdout or ``--output``, and exits 0 on success, 2 on bad input and 3 when a
checked property fails.
"""
from __future__ import annotations

import argparse
import sys

from . import accont, cyclic, io, measure, multop
from .borel import BorelSet, parse_set, to_text
from .errors import MatMeasureError, NotCyclic, TrivialSpace
from .verify import SUITES, Config, all_passed, run_suite

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 2, 3


def _spectra(M: measure.MatrixMeasure) -> dict:
    T = multop.MultOp.identity(M)
    try:
        sigma = multop.spectrum(T)
    except TrivialSpace:
        sigma = BorelSet.empty()
    return {
        "sigma": to_text(sigma),
        "sigma_p": to_text(multop.point_spectrum(T)),
        "sigma_ac": to_text(accont.ac_spectrum(M)),
    }


def cmd_analyze(obj: dict, cfg: Config) -> tuple[dict, int]:
    A, phi = io.operator_from_json(obj)
    if phi is None:
        report = {"measure": {"d": 0, "atoms": [], "segments": []}, "cyclicity_rank": 0,
                  "cyclic": False, "flags": ["NotCyclic"], "xmue": None,
                  "sigma": "{}", "sigma_p": "{}", "sigma_ac": "{}"}
        return report, EXIT_OK
    M = cyclic.spectral_matrix_measure(A, phi)
    rank = cyclic.cyclicity_rank(A, phi)
    report = {"measure": io.measure_to_json(M), "cyclicity_rank": rank, "cyclic": rank == A.N,
              "flags": [] if rank == A.N else ["NotCyclic"], "xmue": None}
    code = EXIT_OK
    if rank == A.N:
        xr = cyclic.verify_xmue(A, phi, tol=cfg.tol, seed=cfg.seed)
        report["xmue"] = xr.to_dict()
        code = EXIT_OK if xr.ok else EXIT_PROPERTY
    report.update(_spectra(M))
    return report, code


def cmd_verify_xmue(obj: dict, cfg: Config) -> tuple[dict, int]:
    A, phi = io.operator_from_json(obj)
    if phi is None:
        raise NotCyclic("no vectors given")
    xr = cyclic.verify_xmue(A, phi, tol=cfg.tol, seed=cfg.seed)
    return xr.to_dict(), EXIT_OK if xr.ok else EXIT_PROPERTY


def cmd_spectrum(M: measure.MatrixMeasure, symbol: str, omega: BorelSet | None) -> dict:
    T = multop.MultOp(M, multop.parse_symbol(symbol))
    out = {
        "symbol": symbol,
        "sigma": to_text(multop.spectrum(T)),
        "sigma_p": to_text(multop.point_spectrum(T)),
        "norm": multop.op_norm(T),
    }
    if omega is not None:
        out["set"] = to_text(omega)
        out["spectral_domain"] = to_text(multop.spectral_domain(T, omega))
    return out


def cmd_restrict(M: measure.MatrixMeasure, omega: BorelSet) -> dict:
    R = measure.restrict(M, omega)
    return {"set": to_text(omega), "measure": io.measure_to_json(R), **_spectra(R)}


def cmd_acdecomp(M: measure.MatrixMeasure, G: BorelSet) -> dict:
    return {"set": to_text(G), **accont.theorem_c7_report(M, G).to_dict()}


def cmd_verify(suite: str, cfg: Config) -> tuple[dict, int]:
    result = run_suite(suite, cfg)
    ok = all_passed(result)
    report = {"suite": suite, "seed": cfg.seed, "fuzz_cases": cfg.fuzz_cases, "passed": ok, "properties": result}
    return report, EXIT_OK if ok else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matmeasure", description="Spectral theory of matrix measures, executable.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance (default 1e-10)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        return p

    common(sub.add_parser("analyze", help="spectral measure, cyclicity and spectra of an operator")) \
        .add_argument("--input", required=True, help="operator JSON")
    common(sub.add_parser("verify-xmue", help="residuals of A = U T_x U^-1")) \
        .add_argument("--input", required=True, help="operator JSON")

    p = common(sub.add_parser("spectrum", help="spectral data of T_F on L^2(M)"))
    p.add_argument("--measure", required=True)
    p.add_argument("--symbol", default="x")
    p.add_argument("--set", help="also report the spectral preimage of this set")

    for name, text in (("restrict", "restriction of a measure to a set"),
                       ("acdecomp", "absolute continuity report for a set G")):
        p = common(sub.add_parser(name, help=text))
        p.add_argument("--measure", required=True)
        p.add_argument("--set", required=True)

    p = common(sub.add_parser("verify", help="run a property suite"))
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--fuzz-cases", type=int, default=200)
    return parser


def run(args: argparse.Namespace) -> tuple[dict, int]:
    cfg = Config(tol=args.tol, seed=args.seed, fuzz_cases=getattr(args, "fuzz_cases", 200))
    if args.command == "analyze":
        return cmd_analyze(io.load_path(args.input), cfg)
    if args.command == "verify-xmue":
        return cmd_verify_xmue(io.load_path(args.input), cfg)
    if args.command == "verify":
        return cmd_verify(args.suite, cfg)
    M = io.measure_from_json(io.load_path(args.measure))
    omega = parse_set(args.set) if args.set is not None else None
    if args.command == "spectrum":
        return cmd_spectrum(M, args.symbol, omega), EXIT_OK
    if args.command == "restrict":
        return cmd_restrict(M, omega), EXIT_OK
    return cmd_acdecomp(M, omega), EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = run(args)
    except (MatMeasureError, ValueError, OSError) as exc:
        print(f"matmeasure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = io.dumps(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
