"""Command-line interface.

Exit codes: 0 success, 1 a verification or conjecture check failed,
2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import delorme, hc, kl
from .coxeter import (DEFAULT_ORDER_CAP, CoxeterError, CoxeterSystem, OrderCapExceeded,
                      format_word, parse_word)
from .findim import (AlgebraPresentation, NotFiniteDimensional, PresentationError,
                     ResolutionTruncated, build_algebra, check_conjectures, preset)
from .poly import IntPoly, LaurentPoly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _poly_json(p):
    if isinstance(p, LaurentPoly):
        return p.to_json()
    return list(p.coeffs)


def _system(args) -> CoxeterSystem:
    if not args.type:
        raise InputError("--type is required for this command")
    return CoxeterSystem(args.type, order_cap=args.max_order)


def _element(system: CoxeterSystem, text: str, flag: str):
    if text is None:
        raise InputError(f"{flag} is required")
    return system.from_word(parse_word(text))


def _index(system: CoxeterSystem) -> list[list[int]]:
    return [list(w) for w in system.canonical_words()]


# -- commands ---------------------------------------------------------------

def cmd_group_enumerate(args):
    system = _system(args)
    elems = system.enumerate()
    words = system.canonical_words()
    payload = {"order": len(elems), "elements": [
        {"word": list(w), "length": e.length, "matrix": [list(r) for r in e.matrix]}
        for w, e in zip(words, elems)]}
    return {"index": _index(system), "payload": payload}


def cmd_kl_pair(args):
    system = _system(args)
    x = _element(system, args.x, "--x")
    y = _element(system, args.y, "--y")
    p = kl.kl_polynomial(system, x, y)
    payload = {"x": list(system.reduced_word(x)), "y": list(system.reduced_word(y)),
               "variable": "q", "P": list(p.coeffs), "mu": kl.mu(system, x, y),
               "R": list(kl.r_polynomial(system, x, y).coeffs), "pretty": p.format("q")}
    return {"payload": payload}


def cmd_kl_table(args):
    system = _system(args)
    table = kl.kl_table(system, threads=args.threads)
    return {"index": _index(system),
            "payload": {"variable": "q",
                        "table": [[list(p.coeffs) for p in row] for row in table.matrix()]}}


def cmd_delorme_table(args):
    system = _system(args)
    dt = delorme.delorme_table(system, threads=args.threads)
    return {"index": _index(system),
            "payload": {"variable": "t", "table": [[list(p.coeffs) for p in row]
                                                    for row in dt.a]}}


def cmd_characters(args):
    system = _system(args)
    m = delorme.characters_matrix(system, threads=args.threads)
    if args.inverse:
        m = m.inverse()
        meaning = "column x: coordinates of M_x in the simple basis L_y"
    else:
        meaning = "column y: coordinates of L_y in the Verma basis M_x"
    return {"index": _index(system), "payload": {"meaning": meaning, "table": m.entries}}


def cmd_ext_ll(args):
    system = _system(args)
    if args.x is not None or args.y is not None:
        x = _element(system, args.x, "--x")
        y = _element(system, args.y, "--y")
        p = delorme.ext_series_ll(system, x, y)
        return {"payload": {"x": list(system.reduced_word(x)), "y": list(system.reduced_word(y)),
                            "variable": "t", "series": list(p.coeffs)}}
    table = delorme.ext_ll_table(system, threads=args.threads)
    return {"index": _index(system),
            "payload": {"variable": "t", "table": [[list(p.coeffs) for p in row]
                                                    for row in table]}}


def _suite_oracle(system):
    table = kl.kl_table(system)
    mismatches = []
    words = system.canonical_words()
    for y in table.elements:
        oracle = kl.kl_oracle(system, y)
        for x in table.elements:
            if table[x, y] != oracle.get(x, IntPoly()):
                mismatches.append([list(words[table._ix(x)]), list(words[table._ix(y)])])
    n = len(table)
    return {"pass": not mismatches, "mismatches": mismatches[:20], "pairs": n * n}


def _suite_inversion(system):
    chars = delorme.characters_matrix(system)
    inv = chars.inverse()
    ident = delorme.TransitionMatrix.identity(chars.elements)
    kl_inv = delorme.kl_inversion_matrix(system)
    checks = {"unitriangular": chars.is_unitriangular(),
              "productIsIdentity": (chars @ inv) == ident and (inv @ chars) == ident,
              "doubleInverse": inv.inverse() == chars,
              "matchesKLInversion": inv == kl_inv}
    return {"pass": all(checks.values()), "checks": checks}


def _suite_choice(system):
    a = kl.kl_table(system, policy="smallest").matrix()
    b = kl.kl_table(system, policy="largest").matrix()
    return {"pass": a == b}


SUITES = {
    "oracle": _suite_oracle,
    "thm4": delorme.verify_kl_structure,
    "inversion": _suite_inversion,
    "choice": _suite_choice,
}


def cmd_verify(args):
    system = _system(args)
    system.check_cap("verification suites")
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown or not names:
        raise InputError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    results = {name: SUITES[name](system) for name in names}
    verdicts = {name: bool(r["pass"]) for name, r in results.items()}
    return {"index": _index(system), "payload": {"suites": results}, "verdicts": verdicts}


def cmd_algebra_analyze(args):
    if args.file:
        pres = AlgebraPresentation.load(args.file)
    elif args.preset:
        pres = preset(args.preset)
    else:
        raise InputError("--file or --preset is required")
    alg = build_algebra(pres)
    which = [int(c) for c in args.conjectures.split(",") if c.strip()]
    if any(c not in (1, 2, 3, 4, 5) for c in which):
        raise InputError("conjectures are numbered 1 to 5")
    report = check_conjectures(alg, which, cap=args.max_resolution)
    payload = {"dimension": alg.dimension, "degreeDims": list(alg.degree_dims),
               "report": report}
    verdicts = {k: v["pass"] for k, v in report["conjectures"].items()}
    out = {"index": list(pres.vertices), "payload": payload, "verdicts": verdicts}
    if not report["applicable"]:
        out["warnings"] = [report["reason"]]
        out["exit"] = EXIT_CAP
    return out


def cmd_hc_eval(args):
    if not args.file:
        raise InputError("--file is required")
    ds = hc.load_klv(args.file)
    res = hc.weighted_ext_table(ds)
    table = [[_poly_json(p) for p in row] for row in res.matrix()]
    return {"index": res.ids, "payload": {"variable": "t", "table": table},
            "warnings": res.warnings, "verdicts": {"noNegativity": not res.warnings}}


# -- output -----------------------------------------------------------------

def _label(entry) -> str:
    if isinstance(entry, list):
        return format_word(entry)
    return str(entry)


def to_csv(envelope: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    payload = envelope.get("payload", {})
    if "table" in payload:
        labels = [_label(e) for e in envelope.get("index", [])]
        writer.writerow([""] + labels)
        for label, row in zip(labels, payload["table"]):
            writer.writerow([label] + [json.dumps(cell, sort_keys=True) for cell in row])
    for key, value in payload.items():
        if key != "table":
            writer.writerow(["@" + key, json.dumps(value, sort_keys=True)])
    return buf.getvalue()


def payload_from_csv(text: str) -> dict:
    """Inverse of :func:`to_csv` for the payload part."""
    payload: dict = {}
    table = []
    for row in csv.reader(io.StringIO(text)):
        if not row:
            continue
        if row[0].startswith("@"):
            payload[row[0][1:]] = json.loads(row[1])
        elif row[0] == "" and not table and "table" not in payload:
            payload["table"] = table
        else:
            table.append([json.loads(c) for c in row[1:]])
    return payload


def _emit(envelope: dict, args) -> str:
    if args.format == "csv":
        return to_csv(envelope)
    return json.dumps(envelope, indent=2, sort_keys=True) + "\n"


COMMANDS = {
    ("group", "enumerate"): cmd_group_enumerate,
    ("kl", "pair"): cmd_kl_pair,
    ("kl", "table"): cmd_kl_table,
    ("delorme", "table"): cmd_delorme_table,
    ("characters",): cmd_characters,
    ("ext-ll",): cmd_ext_ll,
    ("verify",): cmd_verify,
    ("algebra", "analyze"): cmd_algebra_analyze,
    ("hc", "eval"): cmd_hc_eval,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help='Cartan type, e.g. "A3" or "A1xA1"')
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP,
                        help="largest group order allowed for whole-group operations")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock timing to the output (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="klkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(parent, name, key, **kw):
        p = parent.add_parser(name, parents=[common], **kw)
        p.set_defaults(key=key)
        return p

    group = sub.add_parser("group").add_subparsers(dest="sub", required=True)
    leaf(group, "enumerate", ("group", "enumerate"))

    klp = sub.add_parser("kl").add_subparsers(dest="sub", required=True)
    p = leaf(klp, "pair", ("kl", "pair"))
    p.add_argument("--x")
    p.add_argument("--y")
    leaf(klp, "table", ("kl", "table"))

    dl = sub.add_parser("delorme").add_subparsers(dest="sub", required=True)
    leaf(dl, "table", ("delorme", "table"))

    p = leaf(sub, "characters", ("characters",))
    p.add_argument("--inverse", action="store_true")

    p = leaf(sub, "ext-ll", ("ext-ll",))
    p.add_argument("--x")
    p.add_argument("--y")

    p = leaf(sub, "verify", ("verify",))
    p.add_argument("--suite", default="oracle,thm4,inversion,choice")

    alg = sub.add_parser("algebra").add_subparsers(dest="sub", required=True)
    p = leaf(alg, "analyze", ("algebra", "analyze"))
    p.add_argument("--file")
    p.add_argument("--preset", choices=["sl2", "loop_x2", "semisimple2"])
    p.add_argument("--conjectures", default="1,2,3,4,5")
    p.add_argument("--max-resolution", type=int, default=20)

    hcp = sub.add_parser("hc").add_subparsers(dest="sub", required=True)
    p = leaf(hcp, "eval", ("hc", "eval"))
    p.add_argument("--file")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        result = COMMANDS[args.key](args)
    except (InputError, CoxeterError, PresentationError, hc.KLVError, OSError,
            json.JSONDecodeError) as exc:
        if isinstance(exc, NotFiniteDimensional):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OrderCapExceeded, ResolutionTruncated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    code = result.pop("exit", None)
    verdicts = result.get("verdicts", {})
    envelope = {
        "command": " ".join(args.key),
        "type": args.type,
        "index": result.get("index", []),
        "payload": result.get("payload", {}),
        "verdicts": verdicts,
        "warnings": result.get("warnings", []),
    }
    if args.timing:
        envelope["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    text = _emit(envelope, args)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if code is None:
        code = EXIT_OK if all(verdicts.values()) else EXIT_FAIL
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
