"""Command-line front end.

Subcommands: enumerate, check, catalog, render, solve, probe,
verify-groebner.  Machine-readable output is JSON with sorted keys, so a
fixed invocation produces byte-identical reports.  Exit codes: 0 success
or valid, 1 domain-negative result (invalid diagram, infeasible ledger,
no convergence), 2 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import atlas, lemmas, numeric, quadrilateral
from .diagram import Diagram, canonical_key, stroke_count_C, validate
from .vorticity import decide


def _dump(data, out=None) -> None:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_diagram(path: str) -> Diagram:
    with open(path) as fh:
        return Diagram.from_json(json.load(fh))


def _cmd_enumerate(args) -> int:
    try:
        report = atlas.enumerate_diagrams(
            args.n, workers=args.workers, max_raw_candidates=args.max_raw_candidates
        )
    except atlas.EnumerationBudgetError as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return 1
    payload = report.to_json()
    _dump(payload, args.out)
    hist = " ".join(f"C={k}:{v}" for k, v in sorted(report.histogram.items()))
    print(f"survivors: {len(report.survivors)}   {hist}", file=sys.stderr)
    if report.diff_vs_catalog is not None:
        diff = report.diff_vs_catalog
        if diff["missing"] or diff["extra"]:
            print(f"catalog diff: {diff}", file=sys.stderr)
            return 1
        print("catalog diff: empty", file=sys.stderr)
    return 0


def _infeasibility_reason(analysis, verdict) -> str:
    cert = verdict.certificate
    text = cert.polynomial.to_text()
    if cert.kind == "direct-disequality":
        eq_src = ", ".join(analysis.provenance.get(text + " = 0", ["ledger"]))
        nz_src = ", ".join(analysis.provenance.get(text + " != 0", ["ledger"]))
        return f"{eq_src} {text}=0 vs {nz_src} nonzero"
    return f"{cert.kind}: {text} = 0 forced"


def _cmd_check(args) -> int:
    d = _load_diagram(args.diagram)
    report = validate(d)
    result: dict = {
        "diagram": d.to_json(),
        "canonical_key": canonical_key(d).decode(),
        "c_class": stroke_count_C(d),
        "valid": report.valid,
        "rule_failures": list(report.failures),
    }
    if not report.valid:
        result["outcome"] = "invalid"
        _dump(result, args.out)
        return 1
    analysis = lemmas.analyze(d)
    result["findings"] = [f.to_json() for f in analysis.findings]
    result["ledger"] = analysis.base_ledger.to_json()
    if analysis.exclusion is not None:
        result["outcome"] = "excluded"
        result["excluded_by"] = analysis.exclusion.lemma
        result["reason"] = analysis.exclusion.reason
        _dump(result, args.out)
        return 1
    verdict = decide(analysis.base_ledger, seed=atlas.LEDGER_SEED)
    result["verdict"] = verdict.to_json()
    if verdict.infeasible:
        result["outcome"] = "excluded"
        result["excluded_by"] = "constraint-infeasibility"
        result["reason"] = _infeasibility_reason(analysis, verdict)
        _dump(result, args.out)
        return 1
    branches = {}
    for cls, led in sorted(analysis.branch_ledgers.items()):
        branches[cls] = {"ledger": led.to_json(), "verdict": decide(led, seed=atlas.LEDGER_SEED).to_json()}
    if branches:
        result["branches"] = branches
        if all(b["verdict"]["verdict"] == "Infeasible" for b in branches.values()):
            result["outcome"] = "excluded"
            result["excluded_by"] = "branch-infeasibility"
            _dump(result, args.out)
            return 1
    result["outcome"] = "retained"
    _dump(result, args.out)
    return 0


def _cmd_catalog(args) -> int:
    entries = atlas.load_catalog()
    if args.diff:
        with open(args.diff) as fh:
            report = json.load(fh)
        enumerated = {s["key"] for s in report["survivors"]}
        curated = {e.key for e in entries if e.status == "possible"}
        diff = {
            "missing": sorted(curated - enumerated),
            "extra": sorted(enumerated - curated),
        }
        _dump(diff, args.out)
        return 0 if not diff["missing"] and not diff["extra"] else 1
    payload = {
        "entries": [dict(e.to_json(), key=e.key) for e in entries],
        "possible": sum(e.status == "possible" for e in entries),
        "excluded": sum(e.status == "excluded" for e in entries),
    }
    _dump(payload, args.out)
    return 0


def _cmd_render(args) -> int:
    d = _load_diagram(args.diagram)
    text = atlas.render(d, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parse_lambda(text: str) -> complex:
    lam = complex(text.replace("i", "j"))
    if abs(abs(lam) - 1.0) > 1e-9:
        raise argparse.ArgumentTypeError("the multiplier must have unit modulus")
    return lam / abs(lam)


def _cmd_solve(args) -> int:
    gamma = [float(x) for x in args.gamma.split(",")]
    try:
        config = numeric.solve(gamma, args.lam, seed=args.seed)
    except numeric.NoConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return 1
    ident = numeric.check_identities(config)
    payload = {
        "configuration": config.to_json(),
        "residual": numeric.residual(config),
        "classification": numeric.classify(config.z_array(), config.gamma),
        "identities": {
            "moment_z": ident.moment_z,
            "moment_w": ident.moment_w,
            "angular": ident.angular,
            "passed": ident.passed,
        },
    }
    _dump(payload, args.out)
    return 0


def _cmd_probe(args) -> int:
    with open(args.samples) as fh:
        sample = numeric.SingularSequenceSample.from_jsonl(fh.read())
    try:
        d = numeric.probe(sample, tol=args.tol)
    except (numeric.AmbiguousExponentError, ValueError) as exc:
        print(f"probe failed: {exc}", file=sys.stderr)
        return 1
    _dump({"diagram": d.to_json(), "canonical_key": canonical_key(d).decode()}, args.out)
    return 0


def _cmd_verify_groebner(args) -> int:
    result = quadrilateral.verify_membership()
    _dump(result.to_json(), args.out)
    return 0 if result.verified else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexdiagrams",
        description="Two-colored diagram pipelines for planar five-vortex configurations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="exhaustively enumerate valid diagram classes")
    p.add_argument("--n", type=int, default=5)
    p.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("VORTEXDIAGRAMS_WORKERS", "1")),
    )
    p.add_argument("--max-raw-candidates", type=int, default=None,
                   help="refuse (rather than truncate) beyond this raw candidate count")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("check", help="validate a diagram, apply lemmas, decide its ledger")
    p.add_argument("diagram")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("catalog", help="dump the curated catalog or diff a report against it")
    p.add_argument("--diff")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("render", help="render a diagram")
    p.add_argument("diagram")
    p.add_argument("--format", choices=("dot", "svg", "tikz"), default="svg")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("solve", help="solve the balance system for given strengths")
    p.add_argument("--gamma", required=True, help="comma-separated strengths, e.g. 1,1,1,-2,0.5")
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=1.0 + 0.0j)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("probe", help="classify a singular-sequence sample onto a diagram")
    p.add_argument("samples")
    p.add_argument("--tol", type=float, default=0.15)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("verify-groebner", help="certify the quadrilateral ideal membership")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_groebner)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
