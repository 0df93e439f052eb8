"""Command line front end: root systems, r-matrices, the classification
sweep, and the quantized sl2 constructions.

Output is JSON with sorted keys (expressions from the qsl2 subcommands are
printed as plain lines), exact scalars rendered as strings, and byte-wise
deterministic regardless of the thread count. Exit codes: 0 on success, 2
when --diff-paper finds a mismatch, 1 for usage and mathematical errors.
"""

import argparse
import json
import os
import sys
from fractions import Fraction as Q

from . import qsl2
from .bialg import (bd_r_matrix, check_cybe, cobracket_from_r, drinfeld_double,
                    enumerate_bd_triples, standard_r)
from .classify import classification_table, classify_pair, paper_diff
from .liealg import chevalley_basis, highest_weight_module
from .poisson import jacobi_oracle
from .rootsys import (build_root_system, cominuscule_nodes, normalize_type,
                      weight_multiplicities, weyl_dim)
from .scalars import QRat


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract reserves 2 for the
    list mismatch, so rewire usage failures to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        sys.exit(1)


def _scalar(v):
    if isinstance(v, QRat):
        return v.to_str()
    if isinstance(v, Q):
        return str(v)
    return v


def _type_rank(args):
    if getattr(args, "rank", None) is not None:
        return args.type.strip().upper(), args.rank
    return normalize_type(args.type)


def _parse_weight(text, rank):
    parts = [p.strip() for p in text.split(",")]
    try:
        lam = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError("weight must be comma-separated integers, got %r" % text)
    if len(lam) != rank:
        raise ValueError("weight has %d coordinates, rank is %d" % (len(lam), rank))
    return lam


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommand handlers, each returning (text, exit_code) -------------------

def _cmd_roots(args):
    letter, rank = _type_rank(args)
    rs = build_root_system(letter, rank)
    out = {
        "type": "%s%d" % (letter, rank),
        "rank": rs.rank,
        "cartan": rs.cartan,
        "norms": [_scalar(x) for x in rs.norms],
        "positive_roots": len(rs.positive_roots),
        "highest_root": list(rs.highest_root),
        "cominuscule_nodes": cominuscule_nodes(rs),
    }
    return _dumps(out), 0


def _cmd_module(args):
    letter, rank = _type_rank(args)
    rs = build_root_system(letter, rank)
    lam = _parse_weight(args.weight, rs.rank)
    mults = weight_multiplicities(rs, lam)
    out = {
        "type": "%s%d" % (letter, rank),
        "weight": list(lam),
        "dim": weyl_dim(rs, lam),
        "weights": {",".join(_scalar(c) if not isinstance(c, int) else str(c)
                             for c in k): m
                    for k, m in sorted(mults.items())},
    }
    return _dumps(out), 0


def _cmd_rmatrix(args):
    letter, rank = _type_rank(args)
    alg = chevalley_basis(build_root_system(letter, rank))
    r = standard_r(alg)
    module = None
    if args.module:
        module = highest_weight_module(alg, _parse_weight(args.module, rank))
    report = check_cybe(alg, r, module=module)
    entries = {"%s⊗%s" % (alg.names[i], alg.names[j]): _scalar(v)
               for (i, j), v in sorted(r.items())}
    out = {
        "type": "%s%d" % (letter, rank),
        "cybe_holds": report["cybe_holds"],
        "symmetric_part_invariant": report["symmetric_part_invariant"],
        "entries": entries,
    }
    return _dumps(out), 0


def _cmd_bd(args):
    letter, rank = _type_rank(args)
    rs = build_root_system(letter, rank)
    alg = chevalley_basis(rs) if args.check else None
    triples = []
    for t in enumerate_bd_triples(rs):
        item = {
            "delta1": list(t.delta1),
            "delta2": list(t.delta2),
            "tau": [[i, j] for i, j in sorted(t.tau.items())],
        }
        if args.check:
            r, _ = bd_r_matrix(alg, t)
            item["cybe_holds"] = check_cybe(alg, r)["cybe_holds"]
        triples.append(item)
    out = {"type": "%s%d" % (letter, rank), "count": len(triples),
           "triples": triples}
    return _dumps(out), 0


def _cmd_double(args):
    letter, rank = _type_rank(args)
    alg = chevalley_basis(build_root_system(letter, rank))
    cob = cobracket_from_r(alg, standard_r(alg))
    double, _, report = drinfeld_double(alg, cob)
    out = {
        "type": "%s%d" % (letter, rank),
        "dim": double.dim,
        "jacobi_holds": report["jacobi_holds"],
        "canonical_r_cybe": report["canonical_r_cybe"],
        "manin_triple": report["manin_triple"],
    }
    return _dumps(out), 0


def _row_json(row):
    d = row.as_dict()
    d["passing"] = row.passing
    d["oracle_ok"] = row.oracle_ok
    if row.bd_verdicts is not None:
        d["bd_verdicts"] = {"%r" % (k,): v for k, v in sorted(row.bd_verdicts.items())}
    return d


def _cmd_classify(args):
    letter, rank = _type_rank(args)
    lam = _parse_weight(args.weight, build_root_system(letter, rank).rank)
    row = classify_pair((letter, rank), lam, dim_budget=args.dim_budget,
                        all_bd=args.all_bd, extended=args.extended)
    return _dumps(_row_json(row)), 0


def _cmd_table(args):
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("QSYM_THREADS", "1"))
    rows = classification_table(args.max_rank, args.dim_budget,
                                all_bd=args.all_bd, extended=args.extended,
                                threads=threads)
    out = {"count": len(rows), "rows": [_row_json(r) for r in rows]}
    code = 0
    if args.diff_paper:
        diff = paper_diff(rows)
        out["diff"] = {
            "missing": ["%s %s" % (r.label, ",".join(map(str, r.lam)))
                        for r in diff["missing"]],
            "extra": ["%s %s" % (r.label, ",".join(map(str, r.lam)))
                      for r in diff["extra"]],
        }
        if out["diff"]["missing"] or out["diff"]["extra"]:
            code = 2
    return _dumps(out), code


def _qsl2_element(name):
    gens, _ = qsl2.locally_finite_generators()
    if name in gens:
        return gens[name]
    basic = qsl2.generators()
    if name in basic:
        return basic[name]
    raise qsl2.NotInSpan("unknown element %r; use X+, X-, X0, C, E, F, K, K^-1 or 1" % name)


def _cmd_qsl2(args):
    if args.qsl2_cmd == "sigma":
        t = qsl2.sigma(args.left, args.right, variant=args.variant)
        return qsl2.x_tensor_str(qsl2.x_basis_tensor(t)) + "\n", 0
    if args.qsl2_cmd == "copoisson":
        elem = _qsl2_element(args.element)
        for _ in range(args.power - 1):
            elem = elem * _qsl2_element(args.element)
        return qsl2.copoisson_limit(elem).pretty() + "\n", 0
    if args.qsl2_cmd == "donin":
        relations, table = qsl2.donin_graded_relations()
        names = ("X+", "X-", "X0")
        rels = []
        for rel in relations:
            rels.append({
                "pair": list(rel["pair"]),
                "lead": {"%s*%s" % k: _scalar(v) for k, v in sorted(rel["lead"].items())},
                "lower": {k: _scalar(v) for k, v in sorted(rel["lower"].items())},
            })
        brackets = {}
        for (i, j), poly in sorted(table.table.items()):
            key = "{%s,%s}" % (names[i], names[j])
            brackets[key] = {
                " ".join(names[a] for a in mono): _scalar(c)
                for mono, c in sorted(poly.items())
            }
        out = {
            "relations": rels,
            "poisson_brackets": brackets,
            "normalization_vs_classical": "-2",
            "jacobi_holds": jacobi_oracle(table),
            "identity": qsl2.sigma_identity_report(),
        }
        return _dumps(out), 0
    if args.qsl2_cmd == "braided":
        report = qsl2.braided_flatness(args.l, max_degree=args.max_degree)
        return _dumps(report), 0
    raise ValueError("unknown qsl2 subcommand %r" % args.qsl2_cmd)


def _add_type_args(p):
    p.add_argument("--type", required=True,
                   help="series letter (with --rank) or a name like so10, sl3, A2")
    p.add_argument("--rank", type=int)


def build_parser():
    parser = _Parser(prog="qsym", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the output to this path instead of stdout")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("roots", parents=[common], help="root system summary")
    _add_type_args(p)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("module", parents=[common], help="highest weight module data")
    _add_type_args(p)
    p.add_argument("--weight", required=True, help="fundamental coordinates, e.g. 1,0")
    p.set_defaults(func=_cmd_module)

    p = sub.add_parser("rmatrix", parents=[common], help="standard r-matrix and CYBE check")
    _add_type_args(p)
    p.add_argument("--module", help="certify through this module instead of the adjoint")
    p.set_defaults(func=_cmd_rmatrix)

    p = sub.add_parser("bd", parents=[common], help="Belavin-Drinfeld triples")
    _add_type_args(p)
    p.add_argument("--check", action="store_true", help="also run the CYBE check per triple")
    p.set_defaults(func=_cmd_bd)

    p = sub.add_parser("double", parents=[common], help="Drinfeld double report")
    _add_type_args(p)
    p.set_defaults(func=_cmd_double)

    p = sub.add_parser("classify", parents=[common], help="verdicts for one pair")
    _add_type_args(p)
    p.add_argument("--weight", required=True)
    p.add_argument("--dim-budget", type=int, default=128)
    p.add_argument("--all-bd", action="store_true")
    p.add_argument("--extended", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table", parents=[common], help="full classification sweep")
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--dim-budget", type=int, required=True)
    p.add_argument("--diff-paper", action="store_true")
    p.add_argument("--all-bd", action="store_true")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default QSYM_THREADS or 1); output is identical")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("qsl2", parents=[common], help="quantized sl2 constructions")
    qsub = p.add_subparsers(dest="qsl2_cmd", required=True)
    ps = qsub.add_parser("sigma", parents=[common])
    ps.add_argument("--left", required=True, choices=["X+", "X-", "X0"])
    ps.add_argument("--right", required=True, choices=["X+", "X-", "X0"])
    ps.add_argument("--variant", default="+", choices=["+", "-"])
    ps.set_defaults(func=_cmd_qsl2)
    pc = qsub.add_parser("copoisson", parents=[common])
    pc.add_argument("--element", required=True)
    pc.add_argument("--power", type=int, default=1)
    pc.set_defaults(func=_cmd_qsl2)
    pd = qsub.add_parser("donin", parents=[common])
    pd.set_defaults(func=_cmd_qsl2)
    pb = qsub.add_parser("braided", parents=[common])
    pb.add_argument("--l", type=int, required=True)
    pb.add_argument("--max-degree", type=int, default=3)
    pb.set_defaults(func=_cmd_qsl2)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (ValueError, ArithmeticError) as exc:
        sys.stdout.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
