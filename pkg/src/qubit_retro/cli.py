"""Command line front end: invert, verify, classify, and scan.

Exit codes: 0 success, 1 malformed input or failed verification,
2 no Bayesian inverse exists, 3 candidate channel is not CPTP.
The environment variable QUBIT_RETRO_THREADS caps scan parallelism
(default 1; cell results are assembled row-major either way, so output
bytes do not depend on it).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bayes import (
    InverseRecord,
    NoInverse,
    bayesian_inverse,
    is_unscathed,
    two_time_projector,
    unscathed_residuals,
)
from .channels import ChannelRep, PauliChannel, apply, is_cptp
from .errors import NotCPTPError, NotPSDError, NotUnitalError, QubitRetroError
from .scans import (
    ScanGrid,
    boundary_chi,
    emit_csv,
    emit_svg,
    scan_bb84,
    scan_depolarizing,
    scan_three_entry,
)
from .serialize import (
    channel_to_json,
    dump_json,
    load_channel,
    load_state,
    matrix_to_pairs,
)

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_INVERSE = 2
EXIT_NOT_CPTP = 3

_COMMANDS = ("invert", "unscathed", "verify", "scan", "kraus", "three-entry")
_FAMILIES = ("depolarizing", "bb84", "three-entry")


@dataclass
class RunConfig:
    """Validated bag of CLI options for a single run."""

    command: str
    channel: str | None = None
    state: str | None = None
    inverse: str | None = None
    family: str | None = None
    resolution: int | None = None
    tol: float | None = None
    seed: int = 0
    out: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol is not None and not self.tol > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        if self.resolution is not None and self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")
        if self.family is not None and self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _g(x) -> str:
    return format(float(x), ".17g")


def _vec(v) -> str:
    return "[" + ", ".join(_g(x) for x in v) + "]"


def _print_real_matrix(m) -> None:
    for row in np.asarray(m, dtype=float):
        print("  " + "  ".join(_g(x) for x in row))


def _print_complex_matrix(m) -> None:
    for row in np.asarray(m, dtype=complex):
        print("  " + "  ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))


def _report_doc(report) -> dict:
    return {
        "v": [float(x) for x in report.v],
        "R": [[float(x) for x in row] for row in report.R],
        "eta": float(report.eta),
        "detR": float(report.detR),
        "normRv2": float(report.normRv2),
        "normAdjR2": float(report.normAdjR2),
        "slack": [float(x) for x in report.slack],
        "feasible": bool(report.feasible),
        "S": float(report.S),
    }


# === Commands ===

def cmd_invert(cfg: RunConfig) -> int:
    channel = load_channel(cfg.channel)
    state = load_state(cfg.state)
    tol = 1e-9 if cfg.tol is None else cfg.tol
    try:
        outcome = bayesian_inverse(channel, state, tol)
    except (NotUnitalError, NotCPTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if isinstance(outcome, NoInverse):
        print("verdict: no Bayesian inverse exists")
        print(f"reason: {outcome.reason}")
        doc = {"verdict": "no-inverse", "reason": outcome.reason, "tol": tol}
        if outcome.report is not None:
            print(f"feasibility slacks: {_vec(outcome.report.slack)}")
            doc["report"] = _report_doc(outcome.report)
        if outcome.residuals is not None:
            print(f"conjugation residuals (sigma_0..sigma_3): {_vec(outcome.residuals)}")
            doc["residuals"] = [float(x) for x in outcome.residuals]
        if cfg.out:
            outdir = Path(cfg.out)
            outdir.mkdir(parents=True, exist_ok=True)
            dump_json(outdir / "invert_report.json", doc)
            print(f"wrote {outdir / 'invert_report.json'}")
        return EXIT_NO_INVERSE

    rec: InverseRecord = outcome
    print("verdict: inverse exists")
    print(f"S = {_g(rec.S)}   unique: {rec.unique}   residual: {_g(rec.residual)}")
    print("coefficients a (a00-normalized, Pauli frame):")
    _print_real_matrix(rec.a)
    print(
        f"feasibility slacks: {_vec(rec.report.slack)}   "
        f"eta = {_g(rec.report.eta)}   detR = {_g(rec.report.detR)}"
    )
    print(f"kraus operators ({len(rec.kraus)}):")
    for k in rec.kraus:
        _print_complex_matrix(k)
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        inverse_doc = {"kind": "kraus", "ops": [matrix_to_pairs(k) for k in rec.kraus]}
        dump_json(outdir / "inverse.json", inverse_doc)
        doc = {
            "verdict": "inverse",
            "tol": tol,
            "a": [[float(x) for x in row] for row in rec.a],
            "S": float(rec.S),
            "unique": bool(rec.unique),
            "residual": float(rec.residual),
            "report": _report_doc(rec.report),
            "inverse": inverse_doc,
        }
        dump_json(outdir / "invert_report.json", doc)
        print(f"wrote {outdir / 'inverse.json'} and {outdir / 'invert_report.json'}")
    return EXIT_OK


def cmd_unscathed(cfg: RunConfig) -> int:
    channel = load_channel(cfg.channel)
    if not isinstance(channel, PauliChannel):
        print("error: the unscathed test needs a pauli-kind channel file", file=sys.stderr)
        return EXIT_INPUT
    state = load_state(cfg.state)
    tol = 1e-10 if cfg.tol is None else cfg.tol
    residuals = unscathed_residuals(channel, state)
    index = is_unscathed(channel, state, tol)
    print(f"conjugation residuals (sigma_0..sigma_3): {_vec(residuals)}")
    if index is None:
        print("verdict: state is not unscathed (adjoint is not an inverse here)")
        return EXIT_NO_INVERSE
    print(f"verdict: unscathed with sigma_{index}; the adjoint map is a Bayesian inverse")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    channel = load_channel(cfg.channel)
    state = load_state(cfg.state)
    candidate = load_channel(cfg.inverse)
    tol = 1e-9 if cfg.tol is None else cfg.tol
    if not is_cptp(candidate, max(tol, 1e-9)):
        print("error: candidate inverse is not CPTP", file=sys.stderr)
        return EXIT_NOT_CPTP
    forward = np.array(
        [[two_time_projector(channel, state, i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]
    )
    pushed = apply(channel, state)
    reverse = np.array(
        [[two_time_projector(candidate, pushed, i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]
    )
    discrepancy = float(np.abs(forward - reverse.T).max())
    print("forward two-time expectations <sigma_i, sigma_j>:")
    _print_real_matrix(forward)
    print("time-reversed two-time expectations (transposed for comparison):")
    _print_real_matrix(reverse.T)
    print(f"max discrepancy: {_g(discrepancy)}   tol: {_g(tol)}")
    symmetric = discrepancy <= tol
    print(f"verdict: {'symmetric' if symmetric else 'NOT symmetric'}")
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        doc = {
            "forward": [[float(x) for x in row] for row in forward],
            "reversed": [[float(x) for x in row] for row in reverse],
            "discrepancy": discrepancy,
            "tol": tol,
            "symmetric": bool(symmetric),
        }
        dump_json(outdir / "verify_report.json", doc)
        print(f"wrote {outdir / 'verify_report.json'}")
    return EXIT_OK if symmetric else EXIT_INPUT


def _run_region_scan(cfg: RunConfig) -> int:
    if not cfg.out:
        print("error: scan needs --out DIR for its CSV/SVG files", file=sys.stderr)
        return EXIT_INPUT
    resolution = 201 if cfg.resolution is None else cfg.resolution
    tol = 1e-9 if cfg.tol is None else cfg.tol
    if cfg.family == "bb84":
        grid = ScanGrid.uniform(resolution, direction=np.ones(3) / np.sqrt(3.0))
        cells = scan_bb84(grid, tol, cfg.workers)
    else:
        grid = ScanGrid.uniform(resolution)
        cells = scan_depolarizing(grid, tol, cfg.workers)
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    base = outdir / f"{cfg.family}_{resolution}"
    base.with_suffix(".csv").write_bytes(emit_csv(cells))
    base.with_suffix(".svg").write_bytes(emit_svg(cells, title=cfg.family))
    fraction = sum(c.feasible for c in cells) / len(cells)
    print(f"family {cfg.family}, resolution {resolution}")
    print(f"feasible cells: {sum(c.feasible for c in cells)}/{len(cells)} ({fraction:.6f})")
    print(f"wrote {base.with_suffix('.csv')} and {base.with_suffix('.svg')}")
    if cfg.family == "depolarizing":
        print("largest feasible t by bisection:")
        for p in np.linspace(0.0, 1.0, 11):
            print(f"  p = {p:.2f}   chi = {boundary_chi(float(p), 1e-6):.8f}")
    return EXIT_OK


def _run_three_entry(cfg: RunConfig) -> int:
    resolution = 8 if cfg.resolution is None else cfg.resolution
    tol = 1e-9 if cfg.tol is None else cfg.tol
    summary = scan_three_entry(resolution, samples=1000, seed=cfg.seed, tol=tol)
    print(f"three-entry channels scanned: {summary.channels} (simplex resolution {resolution})")
    print(f"bloch samples per channel: {summary.samples_per_channel} (seed {summary.seed})")
    print(f"maximally mixed prior feasible: {summary.mu_feasible}/{summary.channels}")
    print(f"feasible cells with |r| > 1e-6: {summary.hits} (confirmed {summary.hits_confirmed})")
    if summary.examples:
        print("confirmed examples:")
        for p, r in summary.examples:
            print(f"  p = {_vec(p)}   r = {_vec(r)}")
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        doc = {
            "resolution": summary.resolution,
            "seed": summary.seed,
            "channels": summary.channels,
            "samples_per_channel": summary.samples_per_channel,
            "queries": summary.queries,
            "mu_feasible": summary.mu_feasible,
            "hits": summary.hits,
            "hits_confirmed": summary.hits_confirmed,
            "examples": [
                {"p": [float(x) for x in p], "r": [float(x) for x in r]}
                for p, r in summary.examples
            ],
        }
        path = outdir / f"three-entry_{resolution}.json"
        dump_json(path, doc)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_scan(cfg: RunConfig) -> int:
    if cfg.family == "three-entry":
        return _run_three_entry(cfg)
    return _run_region_scan(cfg)


def cmd_kraus(cfg: RunConfig) -> int:
    channel = load_channel(cfg.channel)
    rep = ChannelRep.from_pauli(channel) if isinstance(channel, PauliChannel) else channel
    ops = rep.kraus  # raises NotPSDError for a non-CP map
    print(f"kraus operators ({len(ops)}):")
    for k in ops:
        _print_complex_matrix(k)
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        dump_json(outdir / "kraus.json", {"kind": "kraus", "ops": [matrix_to_pairs(k) for k in ops]})
        print(f"wrote {outdir / 'kraus.json'}")
    return EXIT_OK


# === Argument parsing ===

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubit-retro",
        description="Bayesian inverses of unital qubit channels: decide, construct, verify, scan.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, channel=False, state=False, inverse=False, family=False,
            resolution=False, seed=False, out=False):
        sp = sub.add_parser(name, help=help_text)
        if channel:
            sp.add_argument("--channel", required=True, help="channel JSON file")
        if state:
            sp.add_argument("--state", required=True, help="state JSON file")
        if inverse:
            sp.add_argument("--inverse", required=True, help="candidate inverse channel JSON file")
        if family:
            sp.add_argument("--family", required=True, choices=_FAMILIES)
        if resolution:
            sp.add_argument("--resolution", type=int, default=None)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=None)
        if out:
            sp.add_argument("--out", default=None, help="output directory")
        return sp

    add("invert", "construct the Bayesian inverse for (channel, state)",
        channel=True, state=True, out=True)
    add("unscathed", "test whether some sigma_k conjugation reproduces the channel output",
        channel=True, state=True)
    add("verify", "check two-time expectation symmetry of a candidate inverse",
        channel=True, state=True, inverse=True, out=True)
    add("scan", "sweep a channel family's feasibility region",
        family=True, resolution=True, seed=True, out=True)
    add("kraus", "extract Kraus operators from a channel file", channel=True, out=True)
    add("three-entry", "search three-entry channels for feasible non-central priors",
        resolution=True, seed=True, out=True)
    return parser


_DISPATCH = {
    "invert": cmd_invert,
    "unscathed": cmd_unscathed,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "kraus": cmd_kraus,
    "three-entry": _run_three_entry,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        workers = int(os.environ.get("QUBIT_RETRO_THREADS", "1"))
    except ValueError:
        workers = 1
    try:
        cfg = RunConfig(workers=max(1, workers), **vars(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _DISPATCH[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPSDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CPTP
    except QubitRetroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
