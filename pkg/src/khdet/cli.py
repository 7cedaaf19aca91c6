"""``khdet`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 the
requested complex exceeds the generator cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from khdet.diagram import PlanarDiagram, braid_closure, hopf_cable, parse_pd, serialize_pd
from khdet.homalg import BigradedTable, complex_homology
from khdet.invariants import format_jones, invariant_report, jones, to_t_polynomial
from khdet.khovanov import ResourceLimitError, khovanov_homology, lee_complex, max_generators
from khdet.torusbundle import classify_hopf_cable
from khdet.verify import PaperConstants, Session, run_suite

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
RINGS = {"z": "Z", "f2": "F2", "q": "Q"}


class InputError(ValueError):
    pass


def _parse_braid(text: str) -> list[int]:
    try:
        word = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise InputError(f"braid word must be comma-separated nonzero integers, got {text!r}") from None
    if any(x == 0 for x in word):
        raise InputError("braid letters must be nonzero")
    return word


def _link(args) -> tuple[PlanarDiagram, dict]:
    given = [x for x in (args.pd, args.braid, args.hopf_cable) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --pd, --braid or --hopf-cable")
    if args.pd is not None:
        d = parse_pd(args.pd)
        return d, {"pd": serialize_pd(d)}
    if args.braid is not None:
        word = _parse_braid(args.braid)
        strands = args.strands or (max((abs(x) for x in word), default=0) + 1)
        d = braid_closure(word, strands)
        return d, {"braid": word, "strands": strands, "pd": serialize_pd(d)}
    m, n = args.hopf_cable
    d = hopf_cable(m, n)
    return d, {"hopf_cable": [m, n], "pd": serialize_pd(d)}


def _add_link_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pd", help='PD code, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"; append " + k" for k unknotted circles')
    p.add_argument("--braid", help='braid word, e.g. "1,1,-2"')
    p.add_argument("--strands", type=int, help="number of braid strands (default: largest letter + 1)")
    p.add_argument("--hopf-cable", nargs=2, type=int, metavar=("M", "N"), help="the link H_{M,N}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--max-generators", type=int, help="generator cap (env KHDET_MAX_GENERATORS)")


def _table_text(table: BigradedTable) -> str:
    lines = [f"{'i':>4} {'j':>4}  group"]
    for row in table.to_rows():
        parts = [f"Z^{row['free_rank']}" if row["free_rank"] > 1 else "Z"] if row["free_rank"] else []
        if table.ring == "F2" and parts:
            parts = [p.replace("Z", "F2") for p in parts]
        elif table.ring == "Q" and parts:
            parts = [p.replace("Z", "Q") for p in parts]
        parts += [f"Z/{t}" for t in row["torsion"]]
        lines.append(f"{row['i']:>4} {row['j']:>4}  {' + '.join(parts)}")
    lines.append(f"total rank {table.total_rank()}")
    return "\n".join(lines)


def cmd_invariants(args) -> tuple[dict, str, int]:
    d, inp = _link(args)
    rings = (RINGS[args.ring],) if args.ring else ("Z", "F2")
    report = invariant_report(d, rings, args.max_generators)
    res = report.to_dict()
    text = "\n".join(
        [
            f"jones        {res['jones']['display']}",
            f"determinant  {res['determinant']}",
            f"branched H1  {res['branched_h1']['display']}",
        ]
        + [f"rank Kh/{r:<3}  {v}" for r, v in res["kh_ranks"].items()]
    )
    return {"input": inp, "results": res}, text, EXIT_OK


def cmd_kh(args) -> tuple[dict, str, int]:
    d, inp = _link(args)
    ring = RINGS[args.ring or "z"]
    inp.update({"ring": ring, "reduced": args.reduced, "lee": args.lee})
    if args.lee:
        table = complex_homology(lee_complex(d, args.max_generators))
    else:
        table = khovanov_homology(d, ring, args.reduced, args.max_generators)
    res = {"ring": table.ring, "table": table.to_rows(), "total_rank": table.total_rank()}
    return {"input": inp, "results": res}, _table_text(table), EXIT_OK


def cmd_jones(args) -> tuple[dict, str, int]:
    d, inp = _link(args)
    j = jones(d)
    res = {
        "q": {str(k): v for k, v in sorted(j.coeffs.items())},
        "t_half": {str(k): v for k, v in sorted(to_t_polynomial(j).coeffs.items())},
        "display": format_jones(j),
    }
    return {"input": inp, "results": res}, res["display"], EXIT_OK


def cmd_classify_bundle(args) -> tuple[dict, str, int]:
    m, n = args.m, args.n
    res = classify_hopf_cable(m, n).to_dict()
    text = "\n".join(
        [
            f"monodromy     {res['monodromy']}",
            f"trace         {res['trace']}",
            f"det(A - I)    {res['det_a_minus_i']}",
            f"H1            {res['h1']['display']}",
            f"order         {res['order']}",
            f"trace one     {res['trefoil_surgery_type']}",
        ]
    )
    return {"input": {"hopf_cable": [m, n]}, "results": res}, text, EXIT_OK


def cmd_paper_verify(args) -> tuple[dict, str, int]:
    constants = PaperConstants()
    outcomes = run_suite(Session(constants, args.seed, args.max_generators))
    failed = [o.name for o in outcomes if not o.passed]
    res = {
        "constants": constants.to_dict(),
        "checks": [o.to_dict() for o in outcomes],
        "passed": len(outcomes) - len(failed),
        "failed": failed,
    }
    text = "\n".join(f"{o.status.upper():<5} {o.name}" for o in outcomes)
    text += f"\n{res['passed']}/{len(outcomes)} checks passed"
    inp = {"seed": args.seed, "max_generators": max_generators(args.max_generators)}
    return {"input": inp, "results": res}, text, EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khdet", description="Khovanov homology and determinant-zero link checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="Jones polynomial, determinant, branched H1 and Kh ranks")
    _add_link_args(p)
    _add_common(p)
    p.add_argument("--ring", choices=sorted(RINGS), help="report the Kh rank over this ring only")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("kh", help="bigraded Khovanov homology table")
    _add_link_args(p)
    _add_common(p)
    p.add_argument("--ring", choices=sorted(RINGS), default="z")
    p.add_argument("--reduced", action="store_true", help="reduced homology (F2 only)")
    p.add_argument("--lee", action="store_true", help="Lee homology over Q instead (j taken mod 4)")
    p.set_defaults(func=cmd_kh)

    p = sub.add_parser("jones", help="Jones polynomial")
    _add_link_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("classify-bundle", help="monodromy data of the torus bundle covering H_{M,N}")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_classify_bundle)

    p = sub.add_parser("paper-verify", help="run the reference-claim verification suite")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0, help="seed for the random SNF matrices")
    p.set_defaults(func=cmd_paper_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, text, code = args.func(args)
    except ResourceLimitError as exc:
        print(f"khdet: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:  # parse errors, bad diagrams, InputError
        print(f"khdet: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "input": payload["input"], "results": payload["results"]}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
