"""Batch command line: normal forms, dimension tables, identity verification.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 out-of-scope request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .amalgam import Letter, NormalForm
from .gl2 import mat_from_json, parse_gen, parse_matrix
from .homology import (
    GROUP_IDS,
    UnsupportedGroupError,
    coinvariant_dims,
    dim_table,
    h_dims,
    mv_ledger_check,
)
from .nagao import (
    CrossValidationError,
    e2zt_structure,
    letters_from_gens,
    nagao_normal_form,
    nagao_structure,
)
from .ring import PolyParseError, SearchCapExceeded, is_prime, sn_witness_search
from .witnesses import verify_witness_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_OUT_OF_SCOPE = 3

DEFAULT_MAX_DEG_CAP = 16


def _read_input(arg: str) -> str:
    return sys.stdin.read() if arg == "-" else arg


def _word_from_json(items, mod):
    letters = []
    for item in items:
        if isinstance(item, str):
            letters.extend(letters_from_gens([parse_gen(item, mod)], mod))
        elif isinstance(item, dict) and "factor" in item and "matrix" in item:
            mat = item["matrix"]
            mat = parse_matrix(mat, mod) if isinstance(mat, str) else mat_from_json(mat, mod)
            letters.append(Letter(int(item["factor"]), mat))
        else:
            raise ValueError(f"word items must be shorthand strings or factor/matrix objects, got {item!r}")
    return letters


def _nf_from_json(obj, mod):
    head = mat_from_json(obj["head"], mod)
    tags = obj["tags"]
    tail = [mat_from_json(m, mod) for m in obj["tail"]]
    letters = [] if head.is_identity else [Letter(1, head)]
    letters += [Letter(int(t), m) for t, m in zip(tags, tail)]
    return letters


def _nf_payload(struct, nf: NormalForm) -> dict:
    return {
        "length": nf.length,
        "head": nf.head.to_json(),
        "tail": [letter.mat.to_json() for letter in nf.tail],
        "tags": list(nf.tags),
        "matrix": struct.nf_evaluate(nf).to_json(),
    }


def _print_nf(struct, nf: NormalForm, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_nf_payload(struct, nf), indent=2))
        return
    print(f"length: {nf.length}")
    print(f"head:   {nf.head}")
    for idx, letter in enumerate(nf.tail, 1):
        print(f"tail {idx}: factor {letter.factor}  {letter.mat}")
    print(f"matrix: {struct.nf_evaluate(nf)}")


def _is_matrix_json(payload) -> bool:
    return (
        isinstance(payload, list)
        and len(payload) == 2
        and all(isinstance(row, list) and len(row) == 2 for row in payload)
    )


def _cmd_nf(args) -> int:
    text = _read_input(args.input).strip()
    try:
        payload = json.loads(text)
        is_json = isinstance(payload, (list, dict))
    except json.JSONDecodeError:
        payload, is_json = None, False
    is_word = is_json and not _is_matrix_json(payload)

    if args.ring == "e2zt":
        struct = e2zt_structure()
        if not is_word:
            print(
                "out of scope: a bare matrix over Z[t] cannot be decomposed; "
                "membership in the elementary subgroup is not decidable by "
                "these methods, so supply a word in SL2(Z) and B(Z[t]) letters",
                file=sys.stderr,
            )
            return EXIT_OUT_OF_SCOPE
        letters = (
            _nf_from_json(payload, None)
            if isinstance(payload, dict)
            else _word_from_json(payload, None)
        )
        nf = struct.normalize(letters)
    else:
        if args.mod is None:
            print("nf needs --mod p (or --ring e2zt)", file=sys.stderr)
            return EXIT_USAGE
        p = args.mod
        struct = nagao_structure(p)
        if is_word and isinstance(payload, dict):
            nf = struct.normalize(_nf_from_json(payload, p))
        elif is_word:
            nf = struct.normalize(_word_from_json(payload, p))
        elif is_json:
            nf = nagao_normal_form(p, mat_from_json(payload, p))
        else:
            nf = nagao_normal_form(p, parse_matrix(text, p))
    _print_nf(struct, nf, args.format)
    return EXIT_OK


def _table_rows(args):
    p, d = args.mod, args.max_deg
    if args.coinv:
        if args.group != "bfpt":
            raise ValueError("--coinv applies to --group bfpt")
        flags = "wedge-part coinvariants of t*F_p[t]"
        for i in range(args.max_i + 1):
            dim = coinvariant_dims(p, i, d, basis="tpart", wedge_only=True)
            yield {"group": args.group, "p": p, "d": d, "i": i, "dim": dim, "flags": flags}
    else:
        yield from dim_table(args.group, p, args.max_i, d).rows()


def _cmd_hdim(args) -> int:
    cap = int(os.environ.get("NAGAOLAB_MAX_DEG", DEFAULT_MAX_DEG_CAP))
    if args.max_deg > cap:
        print(
            f"truncation degree {args.max_deg} exceeds the cap {cap} "
            "(set NAGAOLAB_MAX_DEG to raise it)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.ledger and args.group != "e2zt":
        print("--ledger applies to --group e2zt", file=sys.stderr)
        return EXIT_USAGE

    rows = list(_table_rows(args))
    ledger = None
    if args.ledger:
        ledger = [mv_ledger_check(args.mod, i, args.max_deg) for i in range(args.max_i + 1)]

    if args.format == "json":
        obj = {"rows": rows}
        if ledger is not None:
            obj["ledger"] = [rep.as_dict() for rep in ledger]
        print(json.dumps(obj, indent=2))
    elif args.format == "csv":
        print("group,p,d,i,dim,flags")
        for r in rows:
            print(f"{r['group']},{r['p']},{r['d']},{r['i']},{r['dim']},{r['flags']}")
        if ledger is not None:
            print("ledger: p,i,d,e2zt,bzt,sl2z,bz,ok")
            for rep in ledger:
                r = rep.as_dict()
                print(
                    f"{r['p']},{r['i']},{r['d']},{r['e2zt']},{r['bzt']},"
                    f"{r['sl2z']},{r['bz']},{r['ok']}"
                )
    else:
        print(f"{'group':<14}{'p':>3}{'d':>4}{'i':>4}{'dim':>8}  flags")
        for r in rows:
            print(
                f"{r['group']:<14}{r['p']:>3}{r['d']:>4}{r['i']:>4}"
                f"{r['dim']:>8}  {r['flags']}"
            )
        if ledger is not None:
            for rep in ledger:
                r = rep.as_dict()
                mark = "OK" if r["ok"] else "MISMATCH"
                print(
                    f"ledger i={r['i']}: e2zt={r['e2zt']} vs "
                    f"{r['bzt']} + {r['sl2z']} - {r['bz']} ... {mark}"
                )
    if ledger is not None and not all(rep.ok for rep in ledger):
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _cmd_verify(args) -> int:
    if args.witness:
        ps = [p for p in _parse_range(args.witness[0]) if is_prime(p)]
        ks = [k for k in _parse_range(args.witness[1]) if k >= 1]
        if not ps or not ks:
            print("witness ranges contain no usable values", file=sys.stderr)
            return EXIT_USAGE
        report = verify_witness_suite(ps, ks)
        if args.format == "json":
            print(report.to_json())
        else:
            for c in report.checks:
                print(f"{c.status.upper():<5} {c.id}: {c.statement}")
                if c.status == "fail":
                    print(f"      lhs = {c.lhs}")
                    print(f"      rhs = {c.rhs}")
            n_fail = len(report.failures())
            print(f"checks: {len(report.checks)}, failures: {n_fail}")
        return EXIT_OK if report.all_asserted_pass else EXIT_VERIFY_FAIL

    p, n = args.sn
    witness = sn_witness_search(p, n)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "p": witness.p,
                    "n": witness.n,
                    "witness": list(witness.residues) if witness.exists else None,
                },
                indent=2,
            )
        )
    elif witness.exists:
        print(f"witness for p={p}, n={n}: {witness.residues}")
    else:
        print(f"none exists: no {n} nonzero residues mod {p} avoid a zero subset sum")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nagaolab",
        description="exact SL2 amalgam normal forms, homology dimension "
        "tables, and witness identity verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_nf = sub.add_parser("nf", help="normal form of a matrix or word")
    p_nf.add_argument("input", help="matrix text, word JSON, or - for stdin")
    p_nf.add_argument("--mod", type=int, help="prime p for the F_p[t] side")
    p_nf.add_argument("--ring", choices=["e2zt"], help="decompose a word over E2(Z[t])")
    p_nf.add_argument("--format", choices=["text", "json"], default="text")

    p_hd = sub.add_parser("hdim", help="homology dimension table")
    p_hd.add_argument("--group", required=True, choices=list(GROUP_IDS))
    p_hd.add_argument("--mod", type=int, required=True, help="coefficient prime p")
    p_hd.add_argument("--max-i", type=int, default=4, dest="max_i")
    p_hd.add_argument("--max-deg", type=int, default=4, dest="max_deg")
    p_hd.add_argument("--coinv", action="store_true", help="wedge-part coinvariant dims")
    p_hd.add_argument("--ledger", action="store_true", help="check the amalgam dimension identity per degree")
    p_hd.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p_vf = sub.add_parser("verify", help="run identity or witness searches")
    group = p_vf.add_mutually_exclusive_group(required=True)
    group.add_argument("--witness", nargs=2, metavar=("P_RANGE", "K_RANGE"),
                       help="e.g. --witness 2..3 1..2")
    group.add_argument("--sn", nargs=2, type=int, metavar=("P", "N"),
                       help="unit subset-sum witness search")
    p_vf.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    handlers = {"nf": _cmd_nf, "hdim": _cmd_hdim, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except UnsupportedGroupError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    except CrossValidationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PolyParseError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
