"""``boundent`` command-line entry point.

Exit codes: 0 when every check passed or was skipped for budget, 1 when a
numerical check failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, commands
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import BoundentError, ContractViolation

log = logging.getLogger("boundent")

COMMANDS = ("reproduce", "alpha1", "cost-bound", "negativity", "induction", "certificate", "upb-verify")

# flag dest -> ToleranceConfig field
_CONFIG_FLAGS = {
    "seed": "seed",
    "restarts": "restarts_n1",
    "restarts_n2": "restarts_n2",
    "tol": "seesaw_tol",
    "dim_limit": "dim_limit",
    "eig_method": "eig_method",
    "grid_resolution": "grid_resolution",
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--seed", type=int, default=None, help="RNG seed (unsigned 64-bit)")
    g.add_argument("--restarts", type=int, default=None, help="see-saw restarts for one copy")
    g.add_argument("--restarts-n2", type=int, default=None, help="see-saw restarts for two copies")
    g.add_argument("--tol", type=float, default=None, help="see-saw convergence tolerance")
    g.add_argument("--dim-limit", type=int, default=None, help="largest operator dimension to build")
    g.add_argument("--grid-resolution", type=int, default=None)
    g.add_argument("--eig-method", choices=("jacobi", "lapack"), default=None)
    g.add_argument("--skip-n2", action="store_true", help="skip the two-copy checks")
    g.add_argument("--config", type=Path, default=None, help="JSON config file; explicit flags win")
    g.add_argument("--out", type=Path, default=None, help="write the JSON report here instead of stdout")
    g.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="boundent",
        description="Cost lower bound and negativity checks for the Tiles bound entangled state.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("reproduce", parents=[common], help="run every check and aggregate pass/fail")
    sub.add_parser("alpha1", parents=[common], help="see-saw estimate of the product-overlap maximum")
    sub.add_parser("cost-bound", parents=[common], help="entanglement-cost lower bound pipeline")
    neg = sub.add_parser("negativity", parents=[common], help="negativity of rho_b^N ⊗ singlet^L")
    neg.add_argument("--copies", type=int, default=1, help="copies N of rho_b")
    neg.add_argument("--singlets", type=int, default=1, help="singlets L")
    ind = sub.add_parser("induction", parents=[common], help="induction-step operator inequality")
    ind.add_argument("--n", type=int, default=1, help="number of copies in the hypothesis (1 or 2)")
    ind.add_argument("--beta", type=float, default=None, help="base; default (1 + alpha1_hat)/2")
    sub.add_parser("certificate", parents=[common], help="separability certificate for 1 + P_b")
    sub.add_parser("upb-verify", parents=[common], help="Tiles basis, projector and PPT checks")
    return parser


def resolve_config(args: argparse.Namespace) -> ToleranceConfig:
    base = ToleranceConfig.from_json(args.config) if args.config else DEFAULT_CONFIG
    changes = {
        field: getattr(args, flag)
        for flag, field in _CONFIG_FLAGS.items()
        if getattr(args, flag) is not None
    }
    if args.skip_n2:
        changes["include_n2"] = False
    return base.replace(**changes)


def run(args: argparse.Namespace):
    config = resolve_config(args)
    if args.command == "reproduce":
        return commands.cmd_reproduce(config)
    if args.command == "alpha1":
        return commands.cmd_alpha1(config)
    if args.command == "cost-bound":
        return commands.cmd_cost_bound(config)
    if args.command == "negativity":
        return commands.cmd_negativity(args.copies, args.singlets, config)
    if args.command == "induction":
        return commands.cmd_induction(args.n, args.beta, config)
    if args.command == "certificate":
        return commands.cmd_certificate(config)
    if args.command == "upb-verify":
        return commands.cmd_upb_verify(config)
    raise ContractViolation(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        report = run(args)
    except (ContractViolation, ValueError) as exc:
        print(f"boundent: error: {exc}", file=sys.stderr)
        return 2
    except BoundentError as exc:
        print(f"boundent: {exc}", file=sys.stderr)
        return 1

    text = report.to_json() + "\n"
    if args.out is not None:
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"boundent: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    for name in report.failed:
        log.warning("check failed: %s", name)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
