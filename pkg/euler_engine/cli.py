# euler_engine/cli.py
"""
Command-line front end.

    python -m euler_engine.cli siginfo "0;2,3,7"
    python -m euler_engine.cli construct --genus 2 --euler 1 -o rep.json
    python -m euler_engine.cli euler rep.json

Every report goes to stdout as JSON with the effective config and version.
Errors go to stderr as {"error": ..., "message": ...}; exit code 2 for bad
input, 3 for failed verification.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from euler_engine import __version__
from euler_engine.config import configure_logging, load_config
from euler_engine.construct import deform
from euler_engine.errors import EulerEngineError
from euler_engine.lift import parity
from euler_engine.reports import (
    construct_report,
    enumerate_report,
    euler_report,
    oracle_report,
    realize_report,
    signature_info,
    snap_report,
    verify_report,
)
from euler_engine.serialization import RepresentationModel, dumps, envelope, load_representation, save_json
from euler_engine.signature import parse_signature

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="euler_engine", description="Euler classes of surface group representations")
    parser.add_argument("--config", help="JSON file with tolerance overrides")
    parser.add_argument("--verbose", "-v", action="store_true", help="log at INFO level")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euler", help="Euler class and parity of a representation file")
    p.add_argument("rep")

    p = sub.add_parser("parity", help="sign of the SL(2,R) relation product")
    p.add_argument("rep")

    p = sub.add_parser("siginfo", help="coarea, e(Gamma), 2-adic data and genus bounds")
    p.add_argument("signature")
    p.add_argument("--multiple", type=int, default=1, help="n in the genus bounds")

    p = sub.add_parser("enumerate", help="signatures with 0 < e(Gamma) <= K")
    p.add_argument("--euler-max", type=int, required=True)

    for name in ("oracle-z", "oracle-h"):
        p = sub.add_parser(name, help="order of the central generator in H^1")
        p.add_argument("signature")

    p = sub.add_parser("realize", help="generators and certificate for a cocompact signature")
    p.add_argument("signature")
    p.add_argument("-o", "--output")

    p = sub.add_parser("construct", help="representation with a prescribed Euler class")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--conjugate", action="store_true", help="conjugate by an isometry drawn from the config seed")
    p.add_argument("-o", "--output")

    p = sub.add_parser("perturb", help="deform a representation, optionally snapping to a non-faithful one")
    p.add_argument("rep")
    p.add_argument("--snap", action="store_true")
    p.add_argument("--qmax", type=int, default=16)
    p.add_argument("--deform", type=float, default=None, help="deformation time t")
    p.add_argument("--witness", help="file for the witness word")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="residual, Euler class, parity and Jorgensen scan")
    p.add_argument("rep")
    p.add_argument("--jorgensen-depth", type=int, default=None)
    return parser


def _emit(payload: Dict[str, Any], output: Optional[str] = None) -> None:
    if output:
        save_json(output, payload)
        logger.info("wrote %s", output)
    print(dumps(payload))


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    command = args.command

    if command == "euler":
        payload = euler_report(load_representation(args.rep, cfg), cfg)
    elif command == "parity":
        payload = {"parity": parity(load_representation(args.rep, cfg), cfg)}
    elif command == "siginfo":
        payload = signature_info(parse_signature(args.signature), args.multiple)
    elif command == "enumerate":
        payload = enumerate_report(args.euler_max)
    elif command in ("oracle-z", "oracle-h"):
        payload = oracle_report(parse_signature(args.signature), command[-1])
    elif command == "realize":
        payload = realize_report(parse_signature(args.signature), cfg)
    elif command == "construct":
        payload = construct_report(args.genus, args.euler, cfg, args.conjugate)
    elif command == "perturb":
        rho = load_representation(args.rep, cfg)
        if args.deform is not None:
            rho = deform(rho, args.deform, cfg)
        if args.snap:
            payload = snap_report(rho, args.qmax, cfg)
            if args.witness:
                save_json(args.witness, envelope(payload["witness"], cfg))
            payload = dict(payload["representation"], witness=payload["witness"], euler=payload["euler"])
        else:
            payload = RepresentationModel.from_domain(rho).model_dump()
    elif command == "verify":
        payload = verify_report(load_representation(args.rep, cfg), cfg, args.jorgensen_depth)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise ValueError(f"unknown command {command}")

    _emit(envelope(payload, cfg), getattr(args, "output", None))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("INFO" if args.verbose else None)
    try:
        return run(args)
    except EulerEngineError as exc:
        return _error(type(exc).__name__, str(exc), exc.exit_code)
    except ValidationError as exc:
        return _error("ValidationError", str(exc), EXIT_INVALID)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
