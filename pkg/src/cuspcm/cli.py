"""Command-line surface for classification, verification and quiver export.

One subcommand per invocation; results go to stdout as compact JSON (or
DOT for the quiver subcommands, or a plain table).  Identical invocations
produce byte-identical output.  Commands that take a triple also run in
batch mode: one JSON object per stdin line, one result line each, input
order preserved, with per-record error objects instead of aborts.

Exit codes: 0 on success, 2 on a validation or usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cohomology import (
    BundleTriple,
    CohomReport,
    KahnViolation,
    cohom_dims,
)
from .cusp import (
    CMModuleLabel,
    FamilyDescriptor,
    classify_label,
    enumerate_rank,
    family_counts,
    free_label,
    validate_cusp,
)
from .oracle import verify_formula, verify_grid
from .quiver import cusp_quiver, export_dot, quiver_to_dict, tpq_quiver
from .sequences import SSeq, canonical_form, is_aperiodic
from .tpq import (
    TpqKind,
    TpqModuleLabel,
    apply_sigma,
    descend,
    geometry_of,
    is_sigma_symmetric,
)

_SEQ_RE = re.compile(r"-?\d+(,-?\d+)*")
_LAMBDA_RE = re.compile(r"(-?\d+)(/(-?\d+))?")
_RANGE_RE = re.compile(r"(-?\d+)\.\.(-?\d+)")


def parse_seq(text: str) -> tuple[int, ...]:
    """Comma-separated integers, e.g. '2,-1,0'."""
    if not _SEQ_RE.fullmatch(text):
        raise ValueError(
            f"malformed sequence literal {text!r}: expected comma-separated integers"
        )
    return tuple(int(tok) for tok in text.split(","))


def parse_lambda(text: str) -> Fraction:
    """Exact scalar literal: an integer or integer/integer, nonzero."""
    match = _LAMBDA_RE.fullmatch(text)
    if not match:
        raise ValueError(
            f"malformed lambda literal {text!r}: expected an integer or a/b"
        )
    num = int(match.group(1))
    den = int(match.group(3)) if match.group(3) is not None else 1
    if den == 0:
        raise ValueError(f"lambda literal {text!r} has a zero denominator")
    value = Fraction(num, den)
    if value == 0:
        raise ValueError("lambda must be nonzero")
    return value


def _emit(obj: dict) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _error_payload(exc: Exception) -> dict:
    kind = "kahn_violation" if isinstance(exc, KahnViolation) else "invalid_input"
    return {"error": {"kind": kind, "message": str(exc)}}


def _print_table(rows: Iterable[tuple[str, str]]) -> None:
    rows = list(rows)
    width = max((len(k) for k, _ in rows), default=0)
    for key, value in rows:
        print(f"{key.ljust(width)}  {value}")


def _report_dict(report: CohomReport) -> dict:
    return {
        "theta": report.theta,
        "delta": report.delta,
        "h0": report.h0,
        "h1": report.h1,
    }


def _label_dict(label: CMModuleLabel) -> dict:
    if label.is_free:
        return {"kind": "free", "rank": label.rank}
    t = label.triple
    return {
        "kind": "module",
        "seq": list(t.seq.entries),
        "m": t.m,
        "lam": str(t.lam),
        "rank": label.rank,
    }


def _family_dict(family: FamilyDescriptor) -> dict:
    return {
        "seq": list(family.seq.entries),
        "m": family.m,
        "base": family.base.value,
        "rank": family.rank,
    }


def _tpq_label_dict(label: TpqModuleLabel) -> dict:
    if label.kind is TpqKind.FREE:
        return {"kind": "free"}
    if label.kind is TpqKind.SINGLE:
        return {
            "kind": "single",
            "seq": list(label.seq.entries),
            "m": label.m,
            "lam": str(label.lam),
        }
    return {
        "kind": "split",
        "seq": list(label.seq.entries),
        "m": label.m,
        "sign": label.sign,
        "branch": label.branch,
    }


def _record_seq(record: dict, s: int) -> SSeq:
    if "seq" not in record:
        raise ValueError("missing field 'seq'")
    value = record["seq"]
    if not isinstance(value, list) or not value or any(
        isinstance(v, bool) or not isinstance(v, int) for v in value
    ):
        raise ValueError("field 'seq' must be a nonempty list of integers")
    return SSeq(s, tuple(value))


def _record_m(record: dict) -> int:
    if "m" not in record:
        raise ValueError("missing field 'm'")
    value = record["m"]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError("field 'm' must be an integer")
    return value


def _record_lambda(record: dict) -> Fraction:
    if "lambda" not in record:
        raise ValueError("missing field 'lambda'")
    value = record["lambda"]
    if isinstance(value, bool):
        raise ValueError("field 'lambda' must be an integer or 'a/b' string")
    if isinstance(value, int):
        value = str(value)
    if not isinstance(value, str):
        raise ValueError("field 'lambda' must be an integer or 'a/b' string")
    return parse_lambda(value)


def _batch(stream, handler: Callable[[dict], dict]) -> int:
    for line in stream:
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            if not isinstance(record, dict):
                raise ValueError("batch record must be a JSON object")
            _emit(handler(record))
        except (ValueError, KeyError) as exc:
            _emit(_error_payload(exc))
    return 0


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            flag = "--" + name.replace("_", "-")
            raise ValueError(f"{flag} is required")


# ---------------------------------------------------------------- commands


def cmd_canon(args: argparse.Namespace) -> int:
    def run(seq: SSeq) -> dict:
        return {
            "canonical": list(canonical_form(seq).entries),
            "aperiodic": is_aperiodic(seq),
        }

    if args.batch:
        return _batch(sys.stdin, lambda rec: run(_record_seq(rec, args.s)))
    _require(args, "seq")
    result = run(SSeq(args.s, parse_seq(args.seq)))
    if args.format == "table":
        _print_table(
            [
                ("canonical", ",".join(str(v) for v in result["canonical"])),
                ("aperiodic", "yes" if result["aperiodic"] else "no"),
            ]
        )
    else:
        _emit(result)
    return 0


def cmd_cohom(args: argparse.Namespace) -> int:
    def run(triple: BundleTriple) -> dict:
        return _report_dict(cohom_dims(triple))

    if args.batch:
        return _batch(
            sys.stdin,
            lambda rec: run(
                BundleTriple(
                    _record_seq(rec, args.s), _record_m(rec), _record_lambda(rec)
                )
            ),
        )
    _require(args, "seq", "m", "lam")
    result = run(
        BundleTriple(SSeq(args.s, parse_seq(args.seq)), args.m, parse_lambda(args.lam))
    )
    if args.format == "table":
        _print_table([(k, str(v)) for k, v in result.items()])
    else:
        _emit(result)
    return 0


def _parse_grid_spec(tokens: Sequence[str]) -> dict:
    spec = {
        "rs_max": 4,
        "lo": -2,
        "hi": 2,
        "m_max": 2,
        "lambdas": (Fraction(1), Fraction(-1), Fraction(2)),
        "s_values": None,
    }
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"malformed grid setting {token!r}: expected key=value")
        if key == "rs_max":
            spec["rs_max"] = int(value)
        elif key == "entries":
            match = _RANGE_RE.fullmatch(value)
            if not match:
                raise ValueError(
                    f"malformed entries range {value!r}: expected lo..hi"
                )
            spec["lo"], spec["hi"] = int(match.group(1)), int(match.group(2))
        elif key == "m_max":
            spec["m_max"] = int(value)
        elif key == "lambdas":
            spec["lambdas"] = tuple(parse_lambda(tok) for tok in value.split(","))
        elif key == "s":
            spec["s_values"] = tuple(int(tok) for tok in value.split(","))
        else:
            raise ValueError(f"unknown grid setting {key!r}")
    if spec["s_values"] is None:
        spec["s_values"] = tuple(
            s for s in (1, 2, 3) if s <= spec["rs_max"]
        )
    return spec


def cmd_verify(args: argparse.Namespace) -> int:
    if args.grid is not None:
        spec = _parse_grid_spec(args.grid)
        report = verify_grid(
            s_values=spec["s_values"],
            rs_max=spec["rs_max"],
            lo=spec["lo"],
            hi=spec["hi"],
            m_values=tuple(range(1, spec["m_max"] + 1)),
            lambdas=spec["lambdas"],
        )
        result = {
            "cases": report.cases,
            "formula_mismatches": len(report.formula_mismatches),
            "euler_failures": len(report.euler_failures),
            "rank_identity_failures": len(report.rank_identity_failures),
            "ok": report.ok,
        }
        failures = (
            report.formula_mismatches
            + report.euler_failures
            + report.rank_identity_failures
        )
        if failures:
            result["failures"] = list(failures[:20])
        if args.format == "table":
            _print_table([(k, str(v)) for k, v in result.items() if k != "failures"])
        else:
            _emit(result)
        return 0 if report.ok else 2
    _require(args, "seq", "m", "lam")
    triple = BundleTriple(
        SSeq(args.s, parse_seq(args.seq)), args.m, parse_lambda(args.lam)
    )
    report = verify_formula(triple)
    result = {
        "agree": report.agree,
        "formula": _report_dict(report.formula),
        "oracle": _report_dict(report.oracle),
    }
    if args.format == "table":
        _print_table(
            [
                ("agree", "yes" if report.agree else "no"),
                ("formula", str(_report_dict(report.formula))),
                ("oracle", str(_report_dict(report.oracle))),
            ]
        )
    else:
        _emit(result)
    return 0 if report.agree else 2


def cmd_classify(args: argparse.Namespace) -> int:
    geom = validate_cusp(args.s, parse_seq(args.b))

    def run(triple: BundleTriple) -> dict:
        return _label_dict(classify_label(triple, geom))

    if args.batch:
        return _batch(
            sys.stdin,
            lambda rec: run(
                BundleTriple(
                    _record_seq(rec, geom.s), _record_m(rec), _record_lambda(rec)
                )
            ),
        )
    _require(args, "seq", "m", "lam")
    result = run(
        BundleTriple(SSeq(geom.s, parse_seq(args.seq)), args.m, parse_lambda(args.lam))
    )
    if args.format == "table":
        _print_table([(k, str(v)) for k, v in result.items()])
    else:
        _emit(result)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    geom = validate_cusp(args.s, parse_seq(args.b))
    piece = enumerate_rank(geom, args.rank)
    result = {
        "rank": piece.rank,
        "free": piece.free,
        "families": [_family_dict(f) for f in piece.families],
        "exceptional": [_label_dict(lab) for lab in piece.exceptional],
    }
    if args.format == "table":
        rows = [("rank", str(piece.rank)), ("free", "yes" if piece.free else "no")]
        for f in piece.families:
            rows.append(
                ("family", f"M({f.seq},{f.m},-) base={f.base.value} rank={f.rank}")
            )
        for lab in piece.exceptional:
            rows.append(("exceptional", f"{lab} rank={lab.rank}"))
        _print_table(rows)
    else:
        _emit(result)
    return 0


def cmd_growth(args: argparse.Namespace) -> int:
    geom = validate_cusp(args.s, parse_seq(args.b))
    table = family_counts(geom, args.r_max)
    counts = [
        {"rank": rank, "families": table.counts[rank]}
        for rank in sorted(table.counts)
    ]
    exceptional = [
        {"rank": rank, "labels": [_label_dict(lab) for lab in labs]}
        for rank, labs in sorted(table.exceptional.items())
        if labs
    ]
    if args.format == "table":
        _print_table(
            [("rank", "families")]
            + [(str(c["rank"]), str(c["families"])) for c in counts]
        )
    else:
        _emit({"counts": counts, "exceptional": exceptional})
    return 0


def cmd_quiver(args: argparse.Namespace) -> int:
    geom = validate_cusp(args.s, parse_seq(args.b))
    lambdas = tuple(parse_lambda(tok) for tok in args.lambdas.split(","))
    quiver = cusp_quiver(geom, args.max_base_rank, args.depth, lambdas)
    if args.format == "json":
        _emit(quiver_to_dict(quiver))
    else:
        sys.stdout.write(export_dot(quiver))
    return 0


def cmd_tpq_geometry(args: argparse.Namespace) -> int:
    geom = geometry_of(args.p, args.q)
    result = {
        "p": geom.p,
        "q": geom.q,
        "s": geom.cusp.s,
        "b": list(geom.cusp.b),
        "t": geom.t,
        "case": geom.case_tag.value,
    }
    if args.format == "table":
        _print_table([(k, str(v)) for k, v in result.items()])
    else:
        _emit(result)
    return 0


def cmd_tpq_sigma(args: argparse.Namespace) -> int:
    geom = geometry_of(args.p, args.q)

    def run(seq: SSeq) -> dict:
        return {
            "sigma": list(apply_sigma(geom, seq).entries),
            "sigma_symmetric": is_sigma_symmetric(geom, seq),
        }

    if args.batch:
        return _batch(sys.stdin, lambda rec: run(_record_seq(rec, geom.cusp.s)))
    _require(args, "seq")
    result = run(SSeq(geom.cusp.s, parse_seq(args.seq)))
    if args.format == "table":
        _print_table(
            [
                ("sigma", ",".join(str(v) for v in result["sigma"])),
                ("sigma_symmetric", "yes" if result["sigma_symmetric"] else "no"),
            ]
        )
    else:
        _emit(result)
    return 0


def cmd_tpq_descend(args: argparse.Namespace) -> int:
    geom = geometry_of(args.p, args.q)

    def run_free() -> dict:
        labels = descend(geom, free_label(geom.cusp))
        return {"labels": [_tpq_label_dict(lab) for lab in labels]}

    def run(triple: BundleTriple) -> dict:
        label = classify_label(triple, geom.cusp)
        return {"labels": [_tpq_label_dict(lab) for lab in descend(geom, label)]}

    if args.batch:

        def handle(rec: dict) -> dict:
            if rec.get("free"):
                return run_free()
            return run(
                BundleTriple(
                    _record_seq(rec, geom.cusp.s),
                    _record_m(rec),
                    _record_lambda(rec),
                )
            )

        return _batch(sys.stdin, handle)
    if args.free:
        result = run_free()
    else:
        _require(args, "seq", "m", "lam")
        result = run(
            BundleTriple(
                SSeq(geom.cusp.s, parse_seq(args.seq)), args.m, parse_lambda(args.lam)
            )
        )
    if args.format == "table":
        _print_table([("label", str(d)) for d in result["labels"]])
    else:
        _emit(result)
    return 0


def cmd_tpq_quiver(args: argparse.Namespace) -> int:
    geom = geometry_of(args.p, args.q)
    if (args.seq is None) == (args.max_base_rank is None):
        raise ValueError("give exactly one of --max-base-rank or --seq with --lambda")
    if args.seq is not None:
        _require(args, "lam")
        bases = [(SSeq(geom.cusp.s, parse_seq(args.seq)), parse_lambda(args.lam))]
        quiver = tpq_quiver(geom, args.depth, bases=bases)
    else:
        lambdas = tuple(parse_lambda(tok) for tok in args.lambdas.split(","))
        quiver = tpq_quiver(
            geom, args.depth, max_base_rank=args.max_base_rank, lambdas=lambdas
        )
    if args.format == "json":
        _emit(quiver_to_dict(quiver))
    else:
        sys.stdout.write(export_dot(quiver))
    return 0


# ----------------------------------------------------------------- parser


def _add_format(parser: argparse.ArgumentParser, choices=("json", "table")) -> None:
    parser.add_argument(
        "--format", choices=choices, default=choices[0], help="output format"
    )


def _add_cusp_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=int, required=True, help="cycle component count")
    parser.add_argument(
        "--b", required=True, help="cycle weights, comma-separated (length s)"
    )


def _add_triple_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seq", help="degree sequence, comma-separated integers")
    parser.add_argument("--m", type=int, help="multiplicity (positive)")
    parser.add_argument(
        "--lambda", dest="lam", help="scalar: integer or integer/integer, nonzero"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspcm",
        description=(
            "Cohen-Macaulay modules over degenerate cusps and T_pq curves: "
            "canonical sequence forms, cohomology with an exact oracle, "
            "classification, enumeration and AR quivers."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("canon", help="canonical rotation and aperiodicity")
    p.add_argument("--s", type=int, required=True, help="cycle component count")
    p.add_argument("--seq", help="degree sequence, comma-separated integers")
    p.add_argument("--batch", action="store_true", help="read JSON lines from stdin")
    _add_format(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("cohom", help="closed-form h0/h1 of a bundle triple")
    p.add_argument("--s", type=int, required=True, help="cycle component count")
    _add_triple_flags(p)
    p.add_argument("--batch", action="store_true", help="read JSON lines from stdin")
    _add_format(p)
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("verify", help="check the formulas against the oracle")
    p.add_argument("--s", type=int, default=1, help="cycle component count")
    _add_triple_flags(p)
    p.add_argument(
        "--grid",
        nargs="*",
        metavar="KEY=VALUE",
        help=(
            "sweep a whole box instead of one triple; settings: rs_max=N "
            "entries=lo..hi m_max=N lambdas=a,b,... s=1,2,..."
        ),
    )
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="label the CM module of a triple")
    _add_cusp_flags(p)
    _add_triple_flags(p)
    p.add_argument("--batch", action="store_true", help="read JSON lines from stdin")
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="all indecomposables of one rank")
    _add_cusp_flags(p)
    p.add_argument("--rank", type=int, required=True, help="module rank (positive)")
    _add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("growth", help="family counts per rank")
    _add_cusp_flags(p)
    p.add_argument("--r-max", type=int, required=True, help="largest rank to count")
    _add_format(p)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("quiver", help="cusp AR quiver as DOT or JSON")
    _add_cusp_flags(p)
    p.add_argument(
        "--max-base-rank", type=int, required=True, help="largest tube base rank"
    )
    p.add_argument("--depth", type=int, required=True, help="levels per tube")
    p.add_argument(
        "--lambdas", default="1,2", help="scalar sample for tube bases (default 1,2)"
    )
    _add_format(p, choices=("dot", "json"))
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("tpq-geometry", help="cycle weights of the T_pq double cover")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_tpq_geometry)

    p = sub.add_parser("tpq-sigma", help="reflect a sequence by the deck involution")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seq", help="degree sequence, comma-separated integers")
    p.add_argument("--batch", action="store_true", help="read JSON lines from stdin")
    _add_format(p)
    p.set_defaults(func=cmd_tpq_sigma)

    p = sub.add_parser("tpq-descend", help="CM modules over the curve below a label")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--free", action="store_true", help="descend the free module")
    _add_triple_flags(p)
    p.add_argument("--batch", action="store_true", help="read JSON lines from stdin")
    _add_format(p)
    p.set_defaults(func=cmd_tpq_descend)

    p = sub.add_parser("tpq-quiver", help="curve-side AR quiver as DOT or JSON")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--depth", type=int, required=True, help="levels per tube")
    p.add_argument(
        "--max-base-rank", type=int, help="largest cusp tube base rank to descend"
    )
    p.add_argument(
        "--lambdas", default="1,2", help="scalar sample for tube bases (default 1,2)"
    )
    p.add_argument("--seq", help="single tube base: degree sequence upstairs")
    p.add_argument("--lambda", dest="lam", help="single tube base: scalar upstairs")
    _add_format(p, choices=("dot", "json"))
    p.set_defaults(func=cmd_tpq_quiver)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except ValueError as exc:
        if getattr(args, "format", "json") == "json":
            _emit(_error_payload(exc))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
