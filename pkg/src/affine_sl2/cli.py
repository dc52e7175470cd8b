"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 indeterminate or failed
hypothesis, 3 usage error, 4 basis-size cap exceeded.
"""

import argparse
import csv
import io
import json
import logging
import sys

from .gvm import CAP_ENV, ResourceLimitError
from .intertwiner import (INDETERMINATE, DescentObstruction, HypothesisFailure, InconsistentRecursion,
                          TruncationTooShallow, build_components, descend_to_irreducible, fusion_gvm,
                          fusion_irr, verify_component_commutators, verify_jacobi_truncated,
                          verify_order_independence, verify_quotient_commutators)
from .invariant_pairing import JNotIrreducible, pairing_for
from .weyl import euler_dims, resolution_weights

OK, VERIFY_FAILED, INDETERMINATE_STATUS, USAGE, RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE)


def emit(rows, fmt, out):
    if not rows:
        return
    cols = list(rows[0])
    for row in rows[1:]:
        cols.extend(c for c in row if c not in cols)
    if fmt == "json-lines":
        for row in rows:
            out.write(json.dumps(row, sort_keys=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        out.write(buf.getvalue())
    else:
        cells = [[str(row.get(c, "")) for c in cols] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for r in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _nonneg(name, value):
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < 0:
        raise UsageError(f"--{name} must be non-negative")
    return value


def _weight_level(args):
    n, lv = _nonneg("n", args.n), _nonneg("level", args.level)
    if n > lv:
        raise UsageError("need 0 <= n <= level")
    return n, lv


def cmd_fusion(args, out):
    p, q, r, lv = (_nonneg(k, getattr(args, k)) for k in ("p", "q", "r", "level"))
    value = (fusion_irr if args.irreducible else fusion_gvm)(p, q, r, lv)
    out.write(f"{value}\n")
    return INDETERMINATE_STATUS if value == INDETERMINATE else OK


def cmd_resolve(args, out):
    n, lv = _weight_level(args)
    rows = [{"j": j, "weight": a, "shift": s}
            for j, (a, s) in enumerate(resolution_weights(n, lv, _nonneg("jmax", args.jmax)))]
    emit(rows, args.format, out)
    return OK


def _gram_rows(args, per_block):
    n, lv = _nonneg("n", args.n), _nonneg("level", args.level)
    N = _nonneg("grade", args.grade)
    P = pairing_for(n, lv, N)
    rows = []
    for d in range(N + 1):
        total = {"dim": 0, "rank": 0}
        for w in P.V.weights(d):
            dim = len(P.V.block(d, w))
            rank = P.block_rank(d, w)
            total["dim"] += dim
            total["rank"] += rank
            if per_block:
                rows.append({"grade": d, "weight": w, "dim": dim, "rank": rank, "corank": dim - rank})
        if not per_block:
            rows.append({"grade": d, "weight": "all", "dim": total["dim"], "rank": total["rank"],
                         "corank": total["dim"] - total["rank"]})
    return rows


def cmd_radical(args, out):
    emit(_gram_rows(args, per_block=False), args.format, out)
    return OK


def cmd_gram(args, out):
    emit(_gram_rows(args, per_block=True), args.format, out)
    return OK


def cmd_character(args, out):
    n, lv = _weight_level(args)
    N = _nonneg("grade", args.grade)
    P = pairing_for(n, lv, N)
    rows = []
    status = OK
    for d in range(N + 1):
        dim = P.V.dim(d)
        corank = len(P.radical_basis(d))
        euler = euler_dims(n, lv, d)
        match = euler == dim - corank
        if not match:
            status = VERIFY_FAILED
        rows.append({"grade": d, "dim": dim, "euler_dim": euler, "gram_corank_dim": corank,
                     "irreducible_dim": dim - corank, "match": match})
    emit(rows, args.format, out)
    return status


def _triple(args):
    vals = [_nonneg(k, getattr(args, k)) for k in ("p", "q", "r", "level", "grade")]
    return vals


def cmd_intertwine(args, out):
    p, q, r, lv, N = _triple(args)
    try:
        T = build_components(p, q, r, lv, N, override_conditions=args.override_conditions)
    except (InconsistentRecursion, HypothesisFailure, TruncationTooShallow, JNotIrreducible) as exc:
        emit([{"operation": args.action, "status": "error", "message": str(exc)}], args.format, out)
        sys.stderr.write(f"error: {exc}\n")
        return INDETERMINATE_STATUS
    rows = []
    status = OK
    if args.action == "build":
        for k in range(N + 1):
            rows.append({"operation": "build", "depth": k,
                         "nonzero": sum(1 for v in T.full[k].values() if v),
                         "k_terms": sum(len(v) for v in T.k_part[k].values()),
                         "j_terms": sum(len(v) for v in T.j_part[k].values())})
    elif args.action == "verify":
        reports = [verify_component_commutators(T), *verify_jacobi_truncated(T),
                   verify_order_independence(T)]
        rebuilt = build_components(p, q, r, lv, N, override_conditions=args.override_conditions,
                                   shuffle_seed=args.seed)
        same = rebuilt.to_json() == T.to_json()
        for rep in reports:
            rows.append({"operation": "verify", **rep.as_dict()})
        rows.append({"operation": "verify", "check": "permuted rebuild", "checked": 1,
                     "failures": 0 if same else 1})
        if not same or any(not rep.ok for rep in reports):
            status = VERIFY_FAILED
    else:
        try:
            rep, Q = descend_to_irreducible(T, override_conditions=args.override_conditions)
        except HypothesisFailure as exc:
            emit([{"operation": "descend", "status": "error", "message": str(exc)}], args.format, out)
            sys.stderr.write(f"error: {exc}\n")
            return INDETERMINATE_STATUS
        except DescentObstruction as exc:
            emit([{"operation": "descend", "status": "error", "message": str(exc)}], args.format, out)
            sys.stderr.write(f"error: {exc}\n")
            return VERIFY_FAILED
        quot = verify_quotient_commutators(Q)
        rows.append({"operation": "descend", **rep.as_dict()})
        rows.append({"operation": "descend", **quot.as_dict()})
        if not (rep.ok and quot.ok):
            status = VERIFY_FAILED
    rows.append({"operation": args.action, "check": "table checksum", "sha256": T.checksum()})
    emit(rows, args.format, out)
    return status


def make_parser():
    parser = _Parser(prog="affine-sl2", description=__doc__.splitlines()[0],
                     epilog=f"The basis-size cap is read from ${CAP_ENV}.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json-lines", "csv"), default="table")
    common.add_argument("--seed", type=int, default=0)
    for name in ("p", "q", "r", "n", "level", "grade"):
        common.add_argument(f"--{name}", type=int)
    common.add_argument("--jmax", type=int, default=3)
    common.add_argument("--override-conditions", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fusion = sub.add_parser("fusion", parents=[common], help="fusion rule closed forms")
    fusion.add_argument("--irreducible", action="store_true")
    fusion.set_defaults(run=cmd_fusion)
    sub.add_parser("resolve", parents=[common], help="resolution weights and shifts").set_defaults(run=cmd_resolve)
    sub.add_parser("radical", parents=[common], help="radical dimension per grade").set_defaults(run=cmd_radical)
    sub.add_parser("gram", parents=[common], help="Gram ranks per block").set_defaults(run=cmd_gram)
    sub.add_parser("character", parents=[common],
                   help="Euler characteristic against the radical").set_defaults(run=cmd_character)
    inter = sub.add_parser("intertwine", parents=[common], help="build and check intertwiners")
    inter.add_argument("action", choices=("build", "verify", "descend"))
    inter.set_defaults(run=cmd_intertwine)
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    logging.basicConfig(level=logging.ERROR, stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.run(args, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return RESOURCE
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
