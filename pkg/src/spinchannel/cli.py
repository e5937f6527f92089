"""Command-line front end.

Subcommands: design, scan, verify, entangle, table.  Reports go to stdout
as JSON or CSV (LF line endings, full double precision via shortest
round-trip float formatting); diagnostics go to stderr.  Exit codes:
0 success, 2 usage or validation error, 3 numerical failure.

Numeric option values accept a ``pi`` suffix meaning multiplication by pi,
e.g. ``--tp 0.5pi`` or ``--tmax 29pi``.  An optional config file
(``key = value`` lines, ``#`` comments) can set default ``tol``,
``samples`` and ``format``; command-line flags override it.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .chains import ChainSpec, Model, hamiltonian_single_excitation
from .design import (
    DesignRequest,
    design_closed_form,
    design_general,
    reconstruct_from_spectrum,
)
from .dynamics import (
    DEFAULT_PST_TOL,
    DEFAULT_SCAN_SAMPLES,
    fidelity_scan,
    peak_fidelity,
    transition_amplitude,
    verify_perfect_transfer,
)
from .entanglement import concurrence_pure_boundary, concurrence_thermal_xxx4
from .errors import NumericalError, ValidationError
from .tridiag import eigen_decompose

# Scan-window centers (units of pi) of the near-perfect fidelity maxima of
# the 4-site XXX chain with bonds (1, J, 1); the `table --which 2` report
# refines the maximum within +-pi of each center.
XXX4_PEAK_CENTERS = (
    (1, 29),
    (2, 17),
    (3, 6),
    (4, 8),
    (5, 10),
    (6, 12),
    (7, 14),
    (8, 16),
    (9, 18),
    (10, 20),
)

_CLOSED_FORM_PARAM_COUNTS = {3: 0, 4: 2, 5: 1, 6: 1, 7: 3, 8: 1}


def parse_number(text: str) -> float:
    """Base-10 float with optional 'pi' suffix (``0.5pi`` -> 0.5 * pi)."""
    s = text.strip()
    try:
        if s.endswith("pi"):
            head = s[:-2].strip()
            return math.pi * (float(head) if head else 1.0)
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_number_list(text: str) -> tuple[float, ...]:
    return tuple(parse_number(tok) for tok in text.split(",") if tok.strip())


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None


def load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    cfg: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"bad config line: {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key] = value
    unknown = set(cfg) - {"tol", "samples", "format"}
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _fmt(x: float) -> str:
    return repr(float(x))


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(x) if isinstance(x, float) else str(x) for x in row)
                 for row in rows)
    _emit("\n".join(lines) + "\n")


def _resolve(args, cfg, key, builtin):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in cfg:
        if key == "samples":
            return int(cfg[key])
        if key == "tol":
            return parse_number(cfg[key])
        return cfg[key]
    return builtin


def _chain_from_args(args) -> ChainSpec:
    couplings = args.couplings
    n = args.n if args.n is not None else len(couplings) + 1
    if n != len(couplings) + 1:
        raise ValidationError(
            f"--n {n} inconsistent with {len(couplings)} couplings"
        )
    return ChainSpec(n_sites=n, model=Model(args.model), couplings=couplings)


def _cmd_design(args, cfg) -> int:
    fmt = _resolve(args, cfg, "format", "json")
    if fmt != "json":
        raise ValidationError("design reports are JSON only")
    if Model(args.model) is not Model.XX:
        raise ValidationError("only XX chains admit perfect-transfer designs")
    if args.spectrum is not None:
        if args.param is not None:
            raise ValidationError("--param and --spectrum are mutually exclusive")
        solution = reconstruct_from_spectrum(args.spectrum, args.tp)
    else:
        params = args.param if args.param is not None else ()
        req = DesignRequest(n_sites=args.n, t_p=args.tp, params=params)
        method = args.method
        if method == "auto":
            closed_count = _CLOSED_FORM_PARAM_COUNTS.get(args.n)
            method = "closed" if closed_count == len(params) else "general"
        solution = (
            design_closed_form(req) if method == "closed" else design_general(req)
        )
    fidelity = abs(transition_amplitude(solution.chain(), solution.t_p))
    _emit_json(
        {
            "couplings": list(solution.couplings),
            "target_spectrum": list(solution.target_spectrum),
            "achieved_spectrum": list(solution.achieved_spectrum),
            "spectral_residual": solution.spectral_residual,
            "t_p": solution.t_p,
            "fidelity_at_tp": fidelity,
        }
    )
    return 0


def _cmd_scan(args, cfg) -> int:
    fmt = _resolve(args, cfg, "format", "csv")
    samples = int(_resolve(args, cfg, "samples", DEFAULT_SCAN_SAMPLES))
    tol = float(_resolve(args, cfg, "tol", DEFAULT_PST_TOL))
    report = fidelity_scan(_chain_from_args(args), args.tmax, samples=samples, tol=tol)
    if fmt == "json":
        _emit_json(
            {
                "max_fidelity": report.max_fidelity,
                "argmax_time": report.argmax_time,
                "is_perfect": report.is_perfect,
                "tolerance_used": report.tolerance_used,
                "samples": [[t, f] for t, f in report.samples],
            }
        )
        return 0
    # grid rows plus the refined peak, kept in time order
    rows = [(float(t), float(f)) for t, f in report.samples]
    peak = (report.argmax_time, report.max_fidelity)
    if all(abs(t - peak[0]) > 0.0 for t, _ in rows):
        rows.append(peak)
        rows.sort(key=lambda r: r[0])
    _emit_csv("t,fidelity", rows)
    return 0


def _cmd_verify(args, cfg) -> int:
    fmt = _resolve(args, cfg, "format", "json")
    if fmt != "json":
        raise ValidationError("verify reports are JSON only")
    tol = float(_resolve(args, cfg, "tol", DEFAULT_PST_TOL))
    report = verify_perfect_transfer(_chain_from_args(args), args.tp, tol=tol)
    _emit_json(
        {
            "t_p": report.argmax_time,
            "fidelity_at_tp": report.max_fidelity,
            "probability_at_tp": report.max_probability,
            "is_perfect": report.is_perfect,
            "tolerance_used": report.tolerance_used,
            "max_phase_misalignment": max(report.phase_misalignments),
            "phase_misalignments": list(report.phase_misalignments),
        }
    )
    return 0


def _cmd_entangle(args, cfg) -> int:
    fmt = _resolve(args, cfg, "format", "json")
    if fmt != "json":
        raise ValidationError("entangle reports are JSON only")
    if args.kind == "thermal4":
        if args.j is None or args.temp is None:
            raise ValidationError("thermal4 needs --j and --temp")
        value = concurrence_thermal_xxx4(args.j, args.temp)
        _emit_json(
            {"kind": "thermal4", "j": args.j, "temperature": args.temp,
             "concurrence": value}
        )
        return 0
    if args.couplings is None:
        raise ValidationError("pure needs --couplings")
    spec = _chain_from_args(args)
    value = concurrence_pure_boundary(spec, args.index)
    _emit_json(
        {"kind": "pure", "model": spec.model.value,
         "couplings": list(spec.couplings), "eigenstate_index": args.index,
         "concurrence": value}
    )
    return 0


def _xxx4_chain(j: float) -> ChainSpec:
    return ChainSpec(n_sites=4, model=Model.XXX, couplings=(1.0, j, 1.0))


def _cmd_table(args, cfg) -> int:
    fmt = _resolve(args, cfg, "format", "csv")
    if args.which == 2:
        rows = []
        for j, center in XXX4_PEAK_CENTERS:
            t_star, f_star = peak_fidelity(
                _xxx4_chain(float(j)), (center - 1) * math.pi, (center + 1) * math.pi
            )
            rows.append((j, t_star, f_star))
        if fmt == "json":
            _emit_json(
                [{"j": j, "t": t, "max_fidelity": f} for j, t, f in rows]
            )
        else:
            _emit_csv("J,t,max_fidelity", rows)
        return 0
    rows = []
    for j in (1.0, 2.0, 5.0):
        decomp = eigen_decompose(hamiltonian_single_excitation(_xxx4_chain(j)))
        for m in range(4):
            v = decomp.eigenvectors[:, m]
            rows.append(
                (int(j), m + 1, float(decomp.eigenvalues[m]), float(abs(v[0])),
                 int(np.sign(v[0] * v[-1])))
            )
    if fmt == "json":
        _emit_json(
            [
                {"j": j, "m": m, "energy": e, "c1": c, "relative_sign": s}
                for j, m, e, c, s in rows
            ]
        )
    else:
        _emit_csv("J,m,energy,c1,relative_sign", rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinchannel",
        description="Design and verify spin-chain channels for perfect state transfer.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="output format")
        p.add_argument("--config", default=None, help="config file path")

    p = sub.add_parser("design", help="synthesize couplings for perfect transfer")
    p.add_argument("--n", type=int, required=True, help="number of sites")
    p.add_argument("--model", default="xx", choices=("xx", "xxx"))
    p.add_argument("--tp", type=parse_number, required=True,
                   help="requested transfer time (pi suffix allowed)")
    p.add_argument("--param", type=parse_int_list, default=None,
                   help="comma-separated integer family parameters")
    p.add_argument("--spectrum", type=parse_number_list, default=None,
                   help="explicit antisymmetric target spectrum")
    p.add_argument("--method", choices=("auto", "closed", "general"),
                   default="auto")
    common(p)

    p = sub.add_parser("scan", help="scan transfer fidelity over a time window")
    p.add_argument("--model", default="xx", choices=("xx", "xxx"))
    p.add_argument("--couplings", type=parse_number_list, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tmax", type=parse_number, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--tol", type=parse_number, default=None)
    common(p)

    p = sub.add_parser("verify", help="check perfect transfer at a given time")
    p.add_argument("--model", default="xx", choices=("xx", "xxx"))
    p.add_argument("--couplings", type=parse_number_list, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tp", type=parse_number, required=True)
    p.add_argument("--tol", type=parse_number, default=None)
    common(p)

    p = sub.add_parser("entangle", help="boundary-pair concurrence")
    p.add_argument("--kind", choices=("thermal4", "pure"), required=True)
    p.add_argument("--j", type=parse_number, default=None,
                   help="middle coupling of the 4-site XXX chain")
    p.add_argument("--temp", type=parse_number, default=None)
    p.add_argument("--model", default="xx", choices=("xx", "xxx"))
    p.add_argument("--couplings", type=parse_number_list, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--index", type=int, default=1,
                   help="1-based eigenstate index (1 = sector ground state)")
    common(p)

    p = sub.add_parser("table", help="reference reports for the 4-site XXX chain")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    common(p)

    return parser


_COMMANDS = {
    "design": _cmd_design,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
    "entangle": _cmd_entangle,
    "table": _cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.subcommand](args, cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
