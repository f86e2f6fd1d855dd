"""Command-line front end: build algebras, report structure, check the
derivation lemmas, and run the certification pipeline.

Exit codes: 0 success / certified, 1 check failure or internal error,
2 input error (bad family spec, unreadable or malformed model file),
3 inconclusive certification.

Every flag has an environment override with prefix CARTANSUPER_
(e.g. CARTANSUPER_SEED=7); explicit flags win over the environment.
JSON output is the stable contract (reports carry schema_version and are
byte-identical for a fixed seed and configuration); text output is a human
summary.  Timings are printed only with --timings so that default reports
stay reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from .derivations import derivation_report
from .families import FamilyError, FamilySpec, attach_derived, build, build_lprime
from .liesuper import (
    AlgebraModel,
    ModelFormatError,
    check_axioms,
    model_from_json,
    model_to_json,
)
from .localcert import certify, certify_2local

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3

# full Jacobi scan up to this many triples, seeded sampling beyond
FULL_TRIPLE_LIMIT = 300_000
SAMPLED_TRIPLES = 100_000


def _env_default(name: str, fallback=None):
    return os.environ.get(f"CARTANSUPER_{name}", fallback)


def _int_env(name: str, fallback=None):
    raw = _env_default(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        print(
            f"error: CARTANSUPER_{name} must be an integer, got {raw!r}",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_INPUT_ERROR) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartansuper",
        description="Exact kernel for Cartan type Lie superalgebras: "
        "construction, derivations, local-superderivation certification.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_model: bool) -> None:
        p.add_argument(
            "--family",
            choices=["W", "S", "Stilde", "H"],
            default=_env_default("FAMILY"),
            help="algebra family",
        )
        p.add_argument("--n", type=int, default=_int_env("N"))
        if with_model:
            p.add_argument(
                "--model",
                default=_env_default("MODEL"),
                help="read the algebra from a serialized model file instead "
                "of building it",
            )
        p.add_argument("--out", default=_env_default("OUT"), help="output path (default stdout)")
        p.add_argument(
            "--format",
            choices=["text", "json"],
            default=_env_default("FORMAT", "text"),
        )
        p.add_argument("--seed", type=int, default=_int_env("SEED", 0))
        p.add_argument("--jobs", type=int, default=_int_env("JOBS", 1))

    p_build = sub.add_parser("build", help="construct an algebra and emit its model")
    common(p_build, with_model=False)

    p_info = sub.add_parser("info", help="structural summary of an algebra")
    common(p_info, with_model=True)

    p_check = sub.add_parser(
        "check", help="axioms, derivation cross-check and transitivity"
    )
    common(p_check, with_model=True)

    p_cert = sub.add_parser(
        "certify", help="certify the local and 2-local superderivation theorems"
    )
    common(p_cert, with_model=True)
    p_cert.add_argument("--budget", type=int, default=_int_env("BUDGET"))
    p_cert.add_argument(
        "--timings",
        action="store_true",
        help="include elapsed_ms in the report (breaks byte-reproducibility)",
    )
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _load_or_build(args) -> AlgebraModel:
    model_path = getattr(args, "model", None)
    if model_path:
        try:
            with open(model_path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ModelFormatError(f"cannot read {model_path}: {exc}") from exc
        model = model_from_json(text)
        attach_derived(model)
        return model
    if args.family is None or args.n is None:
        raise FamilyError("missing --family/--n (or --model)")
    return build(FamilySpec(args.family, args.n))


def _report_json(payload: dict) -> str:
    return json.dumps(payload, separators=(",", ":"))


def cmd_build(args) -> int:
    model = build(FamilySpec(args.family, args.n))
    if args.format == "json":
        _emit(model_to_json(model), args.out)
    else:
        lines = [f"# {model.family}({model.n})  dim={model.dim}"]
        for i, desc in enumerate(model.basis):
            lines.append(
                f"{i}\t{desc}\tparity={model.parity[i]}\t"
                f"degree={model.degree[i]}\tweight={list(model.weight[i])}"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_info(args) -> int:
    model = _load_or_build(args)
    P = build_lprime(model)
    roots = sorted({w for w in model.weight if any(w)})
    payload = {
        "schema_version": SCHEMA_VERSION,
        "family": model.family,
        "n": model.n,
        "dim_L": model.dim,
        "dim_Lprime": P.dim_lprime,
        "depth_min": min(model.degree),
        "depth_max": max(model.degree),
        "dim_L0": sum(1 for d in model.degree if d == 0),
        "root_count": len(roots),
        "cartan_rank": len(model.cartan_chain),
    }
    if args.format == "json":
        _emit(_report_json(payload), args.out)
    else:
        lines = [
            f"{model.family}({model.n})",
            f"  dim L       = {payload['dim_L']}",
            f"  dim L'      = {payload['dim_Lprime']}",
            f"  depth range = [{payload['depth_min']}, {payload['depth_max']}]",
            f"  dim L_0     = {payload['dim_L0']}",
            f"  roots       = {payload['root_count']}",
            f"  Cartan rank = {payload['cartan_rank']}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    model = _load_or_build(args)
    if model.dim**3 <= FULL_TRIPLE_LIMIT:
        axioms = check_axioms(model)
    else:
        axioms = check_axioms(model, jacobi_triples=SAMPLED_TRIPLES, seed=args.seed)
    P = build_lprime(model)
    report = derivation_report(P)
    ok = axioms.ok and report.lemma_der_holds and report.transitive
    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(report.as_dict())
    payload["axioms_ok"] = axioms.ok
    payload["axioms_first_violation"] = axioms.first_violation
    if args.format == "json":
        _emit(_report_json(payload), args.out)
    else:
        lines = [
            f"{model.family}({model.n})",
            f"  axioms          : {'pass' if axioms.ok else 'FAIL ' + str(axioms.first_violation)}",
            f"  Der L = ad L'   : {'pass' if report.lemma_der_holds else 'FAIL'}"
            f"  (dim Der = {report.dim_der}, dim L' = {report.dim_lprime})",
            f"  transitivity    : {'pass' if report.transitive else 'FAIL'}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_certify(args) -> int:
    model = _load_or_build(args)
    P = build_lprime(model)
    cert = certify(P, budget=args.budget, seed=args.seed)
    cert = certify_2local(P, cert, seed=args.seed)
    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(cert.as_dict(with_timing=args.timings))
    if args.format == "json":
        _emit(_report_json(payload), args.out)
    else:
        lines = [
            f"{model.family}({model.n})  separating t = {cert.t}",
            f"  probes used     : {len(cert.probe_labels)}",
            f"  dim constrained : {cert.dim_constrained}",
            f"  dim ad L'       : {cert.dim_ad}",
            f"  local verdict   : {cert.verdict}",
            f"  2-local verdict : {cert.twolocal_verdict}",
        ]
        if args.timings:
            lines.append(f"  elapsed_ms      : {cert.elapsed_ms}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if cert.verdict == "CERTIFIED" else EXIT_INCONCLUSIVE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    handlers = {
        "build": cmd_build,
        "info": cmd_info,
        "check": cmd_check,
        "certify": cmd_certify,
    }
    try:
        return handlers[args.command](args)
    except (FamilyError, ModelFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as exc:  # internal failure, distinct from input errors
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
