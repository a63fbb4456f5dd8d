"""Command-line front end.

    hochquiv validate FILE
    hochquiv basis FILE
    hochquiv cycles FILE [--m M] [--max-length L]
    hochquiv hh FILE [--max-degree Q]
    hochquiv certify FILE [--repetitions M] [--cycle a*b]
    hochquiv gldim FILE [--cutoff C]
    hochquiv pd FILE --vertex V [--cutoff C]
    hochquiv compare FILE [--m M] [--cycle a*b] [--max-degree Q]
    hochquiv corpus [--seed S] [--count N] [--check all]

Exit codes: 0 success, 1 validation error, 2 resource limit (partial report).
A FILE that does not exist is looked up among the bundled examples by name.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib.resources import files
from pathlib import Path

from . import __version__
from .algebra import Algebra, compute_basis
from .corpus import CHECKS, CorpusParams, auto_degree, check_corpus
from .cycles import OrientedCycle, default_max_len, find_truncated_cycles, is_m_truncated, minimal_two_truncated
from .errors import HochError, NotTwoTruncated, ResourceLimit
from .hochschild import DEFAULT_CHAIN_CAP, certify_nonvanishing, hh_compare_summand, hh_dimensions
from .linalg import FieldDescriptor
from .presentation import parse_presentation
from .resolutions import gldim_cutoff, gldim_monomial, pd_simple_cutoff, pd_simple_monomial

VERBS = ("validate", "basis", "cycles", "hh", "certify", "gldim", "pd", "compare", "corpus")
MAX_AUTO_DEGREE = 12


def bundled_example(name: str) -> Path | None:
    base = files("hochquiv").joinpath("examples")
    for cand in (name, f"{name}.quiver", Path(name).name):
        p = base.joinpath(cand)
        if p.is_file():
            return Path(str(p))
    return None


def resolve_input(name: str) -> Path:
    p = Path(name)
    if p.is_file():
        return p
    found = bundled_example(name)
    if found is None:
        raise FileNotFoundError(f"no such file: {name}")
    return found


def normalized_source(text: str) -> str:
    lines = []
    for raw in text.splitlines():
        line = " ".join(raw.split("#", 1)[0].split())
        if line:
            lines.append(line)
    return "\n".join(lines) + "\n"


def input_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(normalized_source(text).encode()).hexdigest()


def _parse_field(text: str) -> FieldDescriptor:
    try:
        return FieldDescriptor.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hochquiv",
        description="Hochschild homology, truncated oriented cycles and global dimension "
                    "of bounded quiver algebras.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"hochquiv {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument("input", help="a .quiver file (or the name of a bundled example)")
            p.add_argument("--field", type=_parse_field, default=None,
                           help="q or fp:<prime>; overrides the file's field line")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--cap", type=int, default=DEFAULT_CHAIN_CAP,
                       help="maximum chain-space dimension (default %(default)s)")
        p.add_argument("--time-budget", type=float, default=None,
                       help="elimination time budget in seconds")

    for verb in ("validate", "basis"):
        common(sub.add_parser(verb))
    p = sub.add_parser("cycles")
    common(p)
    p.add_argument("--m", type=int, default=2, help="truncation length (default 2)")
    p.add_argument("--max-length", type=int, default=None)
    p = sub.add_parser("hh")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p = sub.add_parser("certify")
    common(p)
    p.add_argument("--repetitions", "--m", dest="repetitions", type=int, default=1,
                   help="how many times the cycle is repeated in the chain")
    p.add_argument("--cycle", default=None, help="arrow word such as a*b (default: a shortest one)")
    p = sub.add_parser("gldim")
    common(p)
    p.add_argument("--cutoff", type=int, default=None)
    p = sub.add_parser("pd")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--cutoff", type=int, default=None)
    p = sub.add_parser("compare")
    common(p)
    p.add_argument("--m", type=int, default=2, help="truncation length of the witness")
    p.add_argument("--cycle", default=None)
    p.add_argument("--max-degree", type=int, default=6)
    p = sub.add_parser("corpus")
    common(p, with_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--check", default="all",
                   help="comma-separated subset of: " + ", ".join(CHECKS) + " (default all)")
    p.add_argument("--max-degree", type=int, default=6)
    return parser


def _echo(args: argparse.Namespace) -> dict:
    out = {"verb": args.verb}
    for k, v in sorted(vars(args).items()):
        if k in ("verb", "output", "format"):
            continue
        out[k] = str(v) if isinstance(v, FieldDescriptor) else v
    return out


def _verb_results(args: argparse.Namespace, A: Algebra, partial: dict) -> dict:
    q = A.quiver
    verb = args.verb
    if verb == "validate":
        return {"ok": True, "dim": A.dim, "radical_dim": len(A.radical),
                "nilpotency": A.nilpotency, "monomial": A.monomial}
    if verb == "basis":
        return {"dim": A.dim, "basis": [A.name(i) for i in range(A.dim)]}
    if verb == "cycles":
        max_len = args.max_length if args.max_length is not None else default_max_len(A, args.m)
        ws = find_truncated_cycles(A, args.m, max_len)
        return {"m": args.m, "max_length": max_len, "witnesses": [w.as_dict(A) for w in ws]}
    if verb == "hh":
        Q = args.max_degree
        if Q is None:
            Q = auto_degree(A, MAX_AUTO_DEGREE, args.cap)
        partial["max_degree"] = Q
        try:
            dims = hh_dimensions(A, Q, args.cap, args.time_budget)
        except ResourceLimit as exc:
            partial["hh_dimensions"] = exc.partial
            raise
        return {"max_degree": Q, "hh_dimensions": dims}
    if verb == "certify":
        if args.cycle:
            cyc = OrientedCycle.parse(A, args.cycle)
        else:
            cyc = minimal_two_truncated(A)
            if cyc is None:
                raise NotTwoTruncated("the algebra has no 2-truncated oriented cycle")
        cert = certify_nonvanishing(A, cyc, args.repetitions, args.cap)
        return cert.as_dict(A)
    if verb == "gldim":
        res: dict = {}
        if A.monomial:
            res["monomial_exact"] = gldim_monomial(A).as_dict(A)
            if args.cutoff is not None:
                res["cutoff"] = gldim_cutoff(A, args.cutoff).as_dict(A)
        else:
            res["cutoff"] = gldim_cutoff(A, args.cutoff).as_dict(A)
        return res
    if verb == "pd":
        if args.vertex not in q.vertices:
            raise HochError(f"unknown vertex {args.vertex}")
        v = q.vertices.index(args.vertex)
        res = {"vertex": args.vertex}
        if A.monomial:
            res["monomial_exact"] = pd_simple_monomial(A, v).as_dict(A)
        cutoff = args.cutoff if args.cutoff is not None else 2 * A.dim
        res["cutoff"] = {"cutoff": cutoff, **pd_simple_cutoff(A, v, cutoff).as_dict()}
        return res
    if verb == "compare":
        if args.cycle:
            cyc = OrientedCycle.parse(A, args.cycle)
            _, witness = is_m_truncated(cyc, args.m, A)
        else:
            found = find_truncated_cycles(A, args.m)
            if not found:
                return {"m": args.m, "witness": None, "comparison": None}
            witness = found[0]
        cmp = hh_compare_summand(A, witness, args.max_degree, args.cap)
        return {"m": args.m, "witness": witness.as_dict(A), "comparison": cmp.as_dict()}
    raise ValueError(verb)


def run(args: argparse.Namespace) -> tuple[dict, int]:
    """Execute a parsed command; returns (report, exit code)."""
    start = time.perf_counter()
    report: dict = {"version": __version__, "input_digest": None, "algebra": None,
                    "command": _echo(args), "results": None}
    code = 0
    partial: dict = {}
    try:
        if args.verb == "corpus":
            checks = [c.strip() for c in args.check.split(",") if c.strip()]
            rep = check_corpus(args.count, args.seed, CorpusParams(), checks,
                               args.max_degree, min(args.cap, 20_000))
            report["results"] = rep.as_dict()
            code = 0 if rep.total_violations == 0 else 1
        else:
            path = resolve_input(args.input)
            text = path.read_text()
            report["input_digest"] = input_digest(text)
            P = parse_presentation(text)
            if args.field is not None:
                report["command"]["field_override"] = {"file": str(P.field), "used": str(args.field)}
                P = P.with_field(args.field)
            A = compute_basis(P)
            report["algebra"] = A.summary()
            report["command"]["field"] = str(A.field)
            report["results"] = _verb_results(args, A, partial)
    except ResourceLimit as exc:
        report["results"] = partial or None
        report["error"] = {"code": exc.code, "message": str(exc)}
        code = exc.exit_code
    except HochError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        code = exc.exit_code
    except FileNotFoundError as exc:
        report["error"] = {"code": "file_not_found", "message": str(exc)}
        code = 1
    except ValueError as exc:
        report["error"] = {"code": "invalid_argument", "message": str(exc)}
        code = 1
    report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return report, code


def _text_lines(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [pad + "[" + ", ".join(_scalar(v) for v in value) + "]"]
        out = []
        for v in value:
            sub = _text_lines(v, indent + 1)
            out.append(pad + "- " + sub[0].strip())
            out.extend(sub[1:])
        return out
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and not v:
        return "[]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2, default=str) + "\n").encode()
    return ("\n".join(_text_lines(report)) + "\n").encode()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report, code = run(args)
    data = emit_report(report, args.format)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
