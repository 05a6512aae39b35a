"""Command-line interface.

Subcommands:
  derive-eta   reconstruct the eight-qubit state and write it as JSON
  verify       check the four probability claims under random rotations
  lhv-check    exhaustive local-hidden-variable contradiction certificate
  sample       finite-shot Monte-Carlo experiment

Exit codes: 0 success, 1 scientific failure, 2 ambiguous solution,
64 usage error, 65 data validation error, 66 missing/unreadable input.

Reports are deterministic given flags and seed (no wall-clock fields) and
embed a run manifest; files are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .config import ARTIFACT_VERSION, DEFAULT_NULLSPACE_TOL, SCHEMA_VERSION
from .errors import AmbiguousSolution, InsufficientConditioningEvents, NoSolution
from .eta import EtaSolution, certify, solution_from_dict, solve_eta
from .lhv import enumerate_contradiction, lhv_best_model
from .montecarlo import ROTATION_POLICIES, ExperimentConfig, run_experiment

EXIT_OK = 0
EXIT_SCIENTIFIC_FAILURE = 1
EXIT_AMBIGUOUS = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_out(filename: str) -> str:
    return os.path.join(os.environ.get("ETA_HOME", "."), filename)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _manifest(command: str, args_dict: dict, outputs: list[str]) -> dict:
    return {
        "command": command,
        "config": args_dict,
        "artifact_version": ARTIFACT_VERSION,
        "schema_version": SCHEMA_VERSION,
        "outputs": outputs,
    }


def _load_solution(path: str) -> EtaSolution:
    with open(path) as handle:
        return solution_from_dict(json.load(handle))


def cmd_derive_eta(args) -> int:
    out = args.out or _default_out("eta_solution.json")
    config = {"tol": args.tol, "format": args.format}
    try:
        solution = solve_eta(tol=args.tol)
    except NoSolution as exc:
        print(f"derive-eta: no solution: {exc}", file=sys.stderr)
        return EXIT_SCIENTIFIC_FAILURE
    except AmbiguousSolution as exc:
        report = {
            "manifest": _manifest("derive-eta", config, [out]),
            "error": "ambiguous_solution",
            "candidate_coefficients": [
                [[z.real, z.imag] for z in row] for row in exc.basis_coefficients
            ],
        }
        _atomic_write(out, json.dumps(report, indent=2) + "\n")
        print(f"derive-eta: {exc}; candidates written to {out}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    document = solution.to_dict()
    document["manifest"] = _manifest("derive-eta", config, [out])
    _atomic_write(out, json.dumps(document, indent=2) + "\n")
    print(f"derive-eta: p_gagb = {solution.p_gagb!r} written to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    out = args.out or _default_out("verify_report.json")
    try:
        solution = _load_solution(args.eta)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"verify: cannot read {args.eta}: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    norm = float(np.linalg.norm(solution.state))
    if abs(norm - 1.0) > 1e-8:
        print(f"verify: state norm {norm} is not 1; corrupted input", file=sys.stderr)
        return EXIT_DATA
    rng = np.random.Generator(np.random.PCG64(args.seed))
    report = certify(solution, args.rotations, rng)
    report["manifest"] = _manifest(
        "verify",
        {"eta": args.eta, "rotations": args.rotations, "seed": args.seed},
        [out],
    )
    _atomic_write(out, json.dumps(report, indent=2) + "\n")
    status = "pass" if report["pass"] else "FAIL"
    print(f"verify: {status}, max deviations {report['max_deviations']}")
    return EXIT_OK if report["pass"] else EXIT_SCIENTIFIC_FAILURE


def cmd_lhv_check(args) -> int:
    out = args.out or _default_out("lhv_certificate.json")
    certificate = enumerate_contradiction(mutate_classification=args.mutate_classification)
    max_gg, best = lhv_best_model()
    report = certificate.to_dict()
    report["lhv_best_model"] = best
    report["manifest"] = _manifest(
        "lhv-check", {"mutate_classification": args.mutate_classification}, [out]
    )
    _atomic_write(out, json.dumps(report, indent=2) + "\n")
    if certificate.valid:
        print(f"lhv-check: no LHV model; bound {max_gg} vs quantum {best['quantum_value']}")
        return EXIT_OK
    print(f"lhv-check: witness found: {certificate.witnesses[0]}", file=sys.stderr)
    return EXIT_SCIENTIFIC_FAILURE


def cmd_sample(args) -> int:
    out = args.out or _default_out("sample_report.json")
    try:
        solution = _load_solution(args.eta)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"sample: cannot read {args.eta}: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    norm = float(np.linalg.norm(solution.state))
    if abs(norm - 1.0) > 1e-8:
        print(f"sample: state norm {norm} is not 1; corrupted input", file=sys.stderr)
        return EXIT_DATA
    try:
        config = ExperimentConfig(
            shots_per_setting_pair=args.shots,
            rotation_policy=args.policy,
            block_size=args.block,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"sample: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_experiment(
        solution.state, config, events_path=args.events, on_insufficient="note"
    )
    report["manifest"] = _manifest(
        "sample",
        {**config.to_dict(), "eta": args.eta, "events": args.events},
        [out] + ([args.events] if args.events else []),
    )
    insufficient = [
        name
        for name, q in report["quantities"].items()
        if q.get("insufficient_conditioning_events")
    ]
    z_ok = all(
        abs(q["z"]) <= 4.0
        for q in report["quantities"].values()
        if "z" in q
    )
    zeros_ok = all(v == 0 for v in report["zero_cell_violations"].values())
    report["pass"] = bool(z_ok and zeros_ok)
    _atomic_write(out, json.dumps(report, indent=2) + "\n")
    for name in insufficient:
        print(f"sample: warning: no conditioning events for {name}", file=sys.stderr)
    print(f"sample: {'pass' if report['pass'] else 'FAIL'} written to {out}")
    return EXIT_OK if report["pass"] else EXIT_SCIENTIFIC_FAILURE


def build_parser() -> _Parser:
    parser = _Parser(prog="alignfree-bell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive-eta", help="reconstruct the eight-qubit state")
    p.add_argument("--tol", type=float, default=DEFAULT_NULLSPACE_TOL,
                   help="relative nullspace threshold")
    p.add_argument("--out", default=None, help="output JSON path")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_derive_eta)

    p = sub.add_parser("verify", help="verify the four probability claims")
    p.add_argument("--eta", required=True, help="EtaSolution JSON path")
    p.add_argument("--rotations", type=int, default=100,
                   help="number of Haar-random rotation quadruples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lhv-check", help="exhaustive LHV contradiction certificate")
    p.add_argument("--out", default=None)
    p.add_argument("--mutate-classification", action="store_true",
                   help=argparse.SUPPRESS)  # self-test: inject a transcription bug
    p.set_defaults(func=cmd_lhv_check)

    p = sub.add_parser("sample", help="finite-shot Monte-Carlo experiment")
    p.add_argument("--eta", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--policy", choices=ROTATION_POLICIES, default="identity")
    p.add_argument("--block", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--events", default=None, help="optional CSV event log path")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "shots", None) is not None and args.shots < 1:
        print("sample: --shots must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
