"""crossed-kernel: build and check free crossed resolutions from the shell.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
Reports are JSON lines sorted by check id, followed by one summary line.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chains import exactness_check, homology_over_Z, to_chain_complex
from .crossed import ComplexError, CrossedComplex, validate_axioms
from .extensions import ExtensionError, enumerate_extensions
from .groups import GroupError, named_group
from .report import Report
from .resolutions import (cyclic_resolution, infinite_cyclic_resolution, resolution_for_group,
                          standard_resolution)
from .serialize import dump_complex, load_complex, load_graph
from .tensor import graph_tensor, raw_boundary, tensor_complex
from .words import AlphabetError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# complex sources


def source_complex(text: str, maxdim: int | None) -> CrossedComplex:
    """A file path, or ``cyclic:P``, ``standard:NAME``, ``infinite:GEN``."""
    kind, sep, arg = text.partition(":")
    if sep and kind in ("cyclic", "standard", "infinite"):
        if kind == "cyclic":
            return cyclic_resolution(int(arg), maxdim or 4)
        if kind == "standard":
            return standard_resolution(named_group(arg), maxdim or 3)
        return infinite_cyclic_resolution(arg or "x", maxdim or 2)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"no such complex file: {text}")
    C = load_complex(path)
    return C


def _from_flags(args) -> CrossedComplex:
    picked = [f for f in ("complex", "cyclic", "standard", "infinite") if getattr(args, f, None)]
    if len(picked) != 1:
        raise UsageError("give exactly one of --complex, --cyclic, --standard, --infinite")
    f = picked[0]
    if f == "complex":
        C = source_complex(args.complex, args.maxdim)
        if args.maxdim is not None and args.maxdim > C.maxdim:
            raise UsageError(f"complex only reaches dimension {C.maxdim}")
        return C
    if f == "cyclic":
        return cyclic_resolution(args.cyclic, args.maxdim or 4)
    if f == "standard":
        return standard_resolution(named_group(args.standard), args.maxdim or 3)
    return infinite_cyclic_resolution(args.infinite, args.maxdim or 2)


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--complex", help="complex JSON file or cyclic:P / standard:NAME / infinite:GEN")
    p.add_argument("--cyclic", type=int, metavar="P", help="periodic resolution of C_P")
    p.add_argument("--standard", metavar="GROUP", help="standard resolution of a named group")
    p.add_argument("--infinite", metavar="GEN", help="the infinite cyclic group on GEN")
    p.add_argument("--maxdim", type=int)


def _add_report_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--output", help="write the report here instead of stdout")


# ---------------------------------------------------------------------------
# output


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _summary(report: Report, seed: int, extra: dict | None = None) -> dict:
    s = {"ok": report.ok, "checks": len(report.checks), "failed": len(report.failed()),
         "seed": seed, "digest": report.digest()}
    s.update(extra or {})
    return {"summary": s}


def _render(report: Report, args, extra: dict | None = None) -> str:
    summary = _summary(report, args.seed, extra)
    if args.pretty:
        tail = ", ".join(f"{k}={v}" for k, v in summary["summary"].items())
        return f"{report}\n{tail}" if report.checks else tail
    return "\n".join(report.lines() + [json.dumps(summary, sort_keys=True)])


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(args) -> int:
    C = _from_flags(args)
    if args.maxdim is not None and args.maxdim < 2:
        raise UsageError("maxdim must be at least 2")
    _emit(dump_complex(C), args.output)
    return EXIT_OK


def cmd_boundary(args) -> int:
    C = _from_flags(args)
    n = C.dim_of(args.gen)
    if n == 1:
        print("*")
        return EXIT_OK
    print(C.boundary(args.gen))
    raw = raw_boundary(C, args.gen)
    if raw is not None:
        print(f"raw: {raw}")
    return EXIT_OK


def cmd_verify(args) -> int:
    C = _from_flags(args)
    report = validate_axioms(C, samples=args.samples, seed=args.seed)
    if args.exact and C.group.is_finite:
        chain = to_chain_complex(C)
        for n in range(1, C.maxdim):
            res = exactness_check(chain, n)
            report.add("exact", n, [] if res.exact else [{"homology": res.homology}])
    _emit(_render(report, args, {"counts": C.counts()}), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_dims(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        return list(range(int(lo), int(hi) + 1)) if sep else [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad dimension range {text!r}") from None


def cmd_homology(args) -> int:
    dims = _parse_dims(args.dims)
    if args.maxdim is None:
        args.maxdim = max(dims) + 1
    C = _from_flags(args)
    if not C.group.is_finite:
        raise UsageError("homology needs a finite coefficient group")
    if max(dims) > C.maxdim - 1:
        raise UsageError(f"dimension {max(dims)} needs a complex through dimension {max(dims) + 1}")
    chain = to_chain_complex(C)
    groups = [homology_over_Z(chain, n) for n in dims]
    if args.json:
        print(json.dumps({str(n): g for n, g in zip(dims, groups)}))
    else:
        print(" ".join(json.dumps(g) for g in groups))
    return EXIT_OK


def cmd_tensor(args) -> int:
    A = source_complex(args.left, args.left_maxdim)
    B = source_complex(args.right, args.right_maxdim)
    T = tensor_complex(A, B, args.maxdim)
    return _finish_built(T, args)


def cmd_graph_product(args) -> int:
    graph, groups, names = load_graph(args.graph)
    top = args.maxdim if args.maxdim is not None else 3
    if top < 2:
        raise UsageError("maxdim must be at least 2")
    complexes = {v: resolution_for_group(groups[v], top, names[v]) for v in graph.vertices}
    T = graph_tensor(graph, complexes, top)
    return _finish_built(T, args)


def _finish_built(T: CrossedComplex, args) -> int:
    if args.save:
        dump_complex(T, args.save)
    report = validate_axioms(T, samples=args.samples, seed=args.seed)
    counts = T.counts()
    extra = {"counts": counts}
    if args.pretty:
        extra = {"counts": "/".join(str(c) for c in counts)}
    _emit(_render(report, args, extra), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_extensions(args) -> int:
    K = named_group(args.k)
    result = enumerate_extensions(args.p, K)
    lines = [json.dumps({"record": r.to_json(K)}, sort_keys=True) for r in result.records]
    summary = {"p": args.p, "K": args.k, "classes": len(result.names), "names": result.names,
               "records": len(result.records)}
    if args.pretty:
        text = f"{len(result.names)} classes: " + ", ".join(result.names)
    else:
        text = "\n".join(lines + [json.dumps({"summary": summary}, sort_keys=True)])
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossed-kernel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="emit a resolution as JSON")
    _add_source(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("boundary", help="print the boundary of a named generator")
    _add_source(p)
    p.add_argument("--gen", required=True)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("verify", help="run the axiom checks on a complex")
    _add_source(p)
    _add_report_flags(p)
    p.add_argument("--exact", action="store_true", help="also check exactness (finite groups)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", help="integral homology of the augmented complex")
    _add_source(p)
    p.add_argument("--dims", default="0..2", help="range like 1..3 or list like 1,3")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("tensor", help="tensor product of two complexes")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--left-maxdim", type=int)
    p.add_argument("--right-maxdim", type=int)
    p.add_argument("--maxdim", type=int)
    p.add_argument("--save", help="write the built complex JSON here")
    _add_report_flags(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("graph-product", help="graph tensor product of vertex resolutions")
    p.add_argument("--graph", required=True)
    p.add_argument("--maxdim", type=int)
    p.add_argument("--save", help="write the built complex JSON here")
    _add_report_flags(p)
    p.set_defaults(func=cmd_graph_product)

    p = sub.add_parser("extensions", help="classify extensions of C_p by K")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", required=True, help="group name, e.g. C2, C3, C2xC2, S3, Q8")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_extensions)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ComplexError, GroupError, AlphabetError, ExtensionError,
            ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"crossed-kernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
