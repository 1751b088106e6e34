"""Command-line front end.

Subcommands: ``index``, ``verify``, ``lens``, ``tree-validate``, ``sigma``,
``return-map``.  Exit codes: 0 success, 1 usage or configuration error,
2 degenerate input, 3 verification failure.  All floating point output is
rounded to 12 significant digits and reports are byte-stable for a fixed
seed and configuration.  The ``REEBKIT_LOG`` environment variable sets the
logging level.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys as _sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .bookkeeping import PeriodCatalog, sigma_gap, tree_from_json, validate_tree, violations_json
from .errors import DegenerateInput, PreconditionViolation, ReebkitError, StructuralError
from .geometry import ContactSystem, system_from_json, system_to_json
from .knots import classification_tables
from .orbits import catalog, index_table, principal_orbits
from .section import build_page, return_map, verify_gss_conditions

log = logging.getLogger("reebkit")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_VERIFICATION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(_sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every subcommand."""

    command: str
    config: Optional[str]
    out: Optional[str]
    seed: int
    tol: float
    jobs: int

    def __post_init__(self):
        if self.tol <= 0:
            raise PreconditionViolation("--tol must be positive")
        if self.jobs < 1:
            raise PreconditionViolation("--jobs must be >= 1")
        if self.config and not self.config.strip().startswith("{"):
            if not Path(self.config).is_file():
                raise FileNotFoundError(f"config file not found: {self.config}")


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(obj, out: str | None) -> None:
    text = json.dumps(_round_floats(obj), indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        _sys.stdout.write(text)


def _load_system(spec: str) -> ContactSystem:
    if spec.strip().startswith("{"):
        return system_from_json(spec)
    path = Path(spec)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {spec}")
    return system_from_json(path.read_text(encoding="utf-8"))


def _select_orbit(sys_: ContactSystem, name: str):
    K, Kp = principal_orbits(sys_)
    table = {"K": K, "k": K, "K'": Kp, "Kprime": Kp, "kprime": Kp}
    if name not in table:
        raise PreconditionViolation(f"unknown orbit selector {name!r}; use K or Kprime")
    return table[name]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_index(args) -> int:
    sys_ = _load_system(args.config)
    orbit = _select_orbit(sys_, args.orbit)
    rows = index_table(orbit, args.k)
    payload = {
        "system": system_to_json(sys_),
        "orbit": orbit.label,
        "prime_period": orbit.prime_period,
        "seed": args.seed,
        "rows": rows,
    }
    if args.format == "csv":
        lines = ["k,mu_cz,rho,degenerate,convention"]
        for r in rows:
            lines.append(
                f"{r['k']},{r['mu_cz']},{r['rho']:.12g},{int(r['degenerate'])},{r['convention']}"
            )
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            _sys.stdout.write(text)
    else:
        _emit(payload, args.out)
    return EXIT_OK


def write_svg_scatter(path: str, samples: list[dict]) -> None:
    """Hand-rolled scatter plot of (start, forward image) pairs in page coordinates."""
    size = 500
    c = size / 2
    scale = 0.46 * size

    def xy(r, th):
        return c + scale * r * math.cos(th), c - scale * r * math.sin(th)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<circle cx="{c}" cy="{c}" r="{scale}" fill="none" stroke="#444" stroke-width="1"/>',
    ]
    for rec in samples:
        x0, y0 = xy(*rec["start"])
        x1, y1 = xy(*rec["forward_image"])
        parts.append(
            f'<circle cx="{x0:.2f}" cy="{y0:.2f}" r="2.4" fill="#1f77b4" fill-opacity="0.8"/>'
        )
        parts.append(
            f'<circle cx="{x1:.2f}" cy="{y1:.2f}" r="2.4" fill="#d62728" fill-opacity="0.8"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def write_samples_csv(path: str, samples: list[dict]) -> None:
    lines = [
        "start_r,start_theta,forward_time,forward_r,forward_theta,"
        "backward_time,backward_r,backward_theta"
    ]
    for s in samples:
        lines.append(
            ",".join(
                f"{v:.12g}"
                for v in (
                    s["start"][0],
                    s["start"][1],
                    s["forward_time"],
                    s["forward_image"][0],
                    s["forward_image"][1],
                    s["backward_time"],
                    s["backward_image"][0],
                    s["backward_image"][1],
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cmd_verify(args) -> int:
    sys_ = _load_system(args.config)
    if sys_.lens is None:
        raise PreconditionViolation("verify needs a quotient system (a 'lens' block)")
    report, samples = verify_gss_conditions(
        sys_,
        C=args.action_bound,
        n_samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        jobs=args.jobs,
        progress=log.info,
    )
    _emit(report, args.out)
    if args.csv:
        write_samples_csv(args.csv, samples)
    if args.svg:
        write_svg_scatter(args.svg, samples)
    return EXIT_OK if report["all_pass"] else EXIT_VERIFICATION


def _cmd_lens(args) -> int:
    if args.p < 2:
        raise PreconditionViolation("lens classification needs p >= 2")
    payload = classification_tables(args.p)
    payload["seed"] = args.seed
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_tree_validate(args) -> int:
    path = Path(args.tree)
    if not path.is_file():
        raise FileNotFoundError(f"tree file not found: {args.tree}")
    tree = tree_from_json(json.loads(path.read_text(encoding="utf-8")))
    ok, violations = validate_tree(tree, args.sigma)
    _emit(
        {
            "pass": ok,
            "sigma": args.sigma,
            "violations": violations_json(violations),
            "seed": args.seed,
        },
        args.out,
    )
    return EXIT_OK if ok else EXIT_VERIFICATION


def _cmd_sigma(args) -> int:
    if args.catalog:
        path = Path(args.catalog)
        if not path.is_file():
            raise FileNotFoundError(f"catalog file not found: {args.catalog}")
        data = json.loads(path.read_text(encoding="utf-8"))
        cat = PeriodCatalog(entries=data["entries"], bound=float(data["bound"]))
    elif args.config:
        sys_ = _load_system(args.config)
        orbits = catalog(sys_, args.action_bound)
        cat = PeriodCatalog(
            entries=[(f"{o.label}^{o.multiplicity}", o.period) for o in orbits],
            bound=args.action_bound,
        )
    else:
        raise PreconditionViolation("sigma needs --catalog or --config")
    _emit(
        {
            "sigma": sigma_gap(cat),
            "bound": cat.bound,
            "periods": [{"label": l, "period": p} for l, p in cat.entries],
            "seed": args.seed,
        },
        args.out,
    )
    return EXIT_OK


def _cmd_return_map(args) -> int:
    sys_ = _load_system(args.config)
    page = build_page(sys_, args.phase)
    try:
        r_str, th_str = args.start.split(",")
        start = (float(r_str), float(th_str))
    except ValueError as exc:
        raise PreconditionViolation("--start must be 'r,theta'") from exc
    rec = return_map(page, start, args.direction, tol=args.tol)
    _emit(
        {
            "system": system_to_json(sys_),
            "phase": args.phase,
            "start": list(rec.start),
            "direction": rec.direction,
            "return_time": rec.return_time,
            "image": list(rec.image),
            "seed": args.seed,
        },
        args.out,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(prog="reebkit", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="system JSON path or inline JSON")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("index", help="Conley-Zehnder index table of a principal orbit")
    common(p)
    p.add_argument("--orbit", default="K", help="K or Kprime")
    p.add_argument("--k", type=int, default=3, help="largest iterate")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_index)

    p = sub.add_parser("verify", help="verify the global surface of section conditions")
    common(p)
    p.add_argument("--action-bound", type=float, default=5.0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--svg", default=None, help="write a scatter plot of the return samples")
    p.add_argument("--csv", default=None, help="write the return samples as CSV")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("lens", help="lens-space classification tables")
    common(p, config_required=False)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=_cmd_lens)

    p = sub.add_parser("tree-validate", help="validate a bubbling-off tree")
    common(p, config_required=False)
    p.add_argument("--tree", required=True, help="tree JSON file")
    p.add_argument("--sigma", type=float, required=True)
    p.set_defaults(fn=_cmd_tree_validate)

    p = sub.add_parser("sigma", help="period-gap constant of a catalog")
    common(p, config_required=False)
    p.add_argument("--catalog", default=None, help="period catalog JSON file")
    p.add_argument("--action-bound", type=float, default=5.0)
    p.set_defaults(fn=_cmd_sigma)

    p = sub.add_parser("return-map", help="one application of the page return map")
    common(p)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--start", required=True, help="page coordinates 'r,theta'")
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.set_defaults(fn=_cmd_return_map)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("REEBKIT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not getattr(args, "command", None):
        parser.print_usage(_sys.stderr)
        return EXIT_USAGE
    try:
        RunConfig(
            command=args.command,
            config=getattr(args, "config", None),
            out=args.out,
            seed=args.seed,
            tol=args.tol,
            jobs=args.jobs,
        )
        return args.fn(args)
    except DegenerateInput as exc:
        _sys.stderr.write(f"degenerate: {exc}\n")
        return EXIT_DEGENERATE
    except (FileNotFoundError, OSError) as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (PreconditionViolation, StructuralError, ReebkitError) as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
