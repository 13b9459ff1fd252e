"""Command-line surface: seeds, mutation, minors, roots, and certificates.

Exit codes: 0 success or expected verdict, 1 verification regression,
2 usage error.  Data goes to stdout; progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bfz, certify, clustercore, groupfun, repcore, rootweyl

GUARD_ENV = "MINORLAB_DIM_GUARD"


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_word(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse word {text!r}: {exc}")


class UsageError(Exception):
    pass


def _datum(type_label: str):
    try:
        return rootweyl.cartan_matrix(type_label)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_roots(args) -> int:
    datum = _datum(args.type)
    if args.format == "json":
        print(json.dumps({"type": datum.kind, "positive_roots": [list(r) for r in datum.positive_roots]}))
    else:
        print(f"{datum.kind}: {len(datum.positive_roots)} positive roots (simple-root coordinates)")
        for r in datum.positive_roots:
            print("  " + " ".join(f"{x:2d}" for x in r))
    return 0


def cmd_weyl(args) -> int:
    datum = _datum(args.type)
    if args.word is None:
        w = rootweyl.longest_element(datum)
        name = "w0"
    else:
        w = rootweyl.from_word(datum, _parse_word(args.word))
        name = "w"
    images = {s: list(w.apply(datum.fundamental_weight(s)).coords) for s in range(1, datum.n + 1)}
    if args.format == "json":
        print(json.dumps({"type": datum.kind, "element": name, "word": list(w.word),
                          "length": w.length, "fundamental_images": images}))
    else:
        print(f"{name} = {','.join(map(str, w.word)) or 'e'}  (length {w.length})")
        for s, img in images.items():
            print(f"  w(w{s}) = {img}")
    return 0


def _seed_payload(datum, dw, seed, sequence=()) -> dict:
    payload = clustercore.seed_to_json(seed)
    payload["type"] = datum.kind
    payload["word"] = list(dw.entries)
    if sequence:
        payload["sequence_applied"] = list(sequence)
        for k in seed.labels:
            entry = payload["variables"][str(k)]
            if "laurent" in entry:
                p = seed.variables[k]
                entry["terms"] = [[list(exp), str(c)] for exp, c in sorted(p.terms.items())]
    return payload


def _print_seed(datum, dw, seed, fmt: str, sequence=()) -> None:
    if fmt == "json":
        print(json.dumps(_seed_payload(datum, dw, seed, sequence)))
        return
    print(f"seed for {datum.kind}, word {list(dw.entries)}")
    print(f"  exchangeable: {list(seed.exchangeable)}")
    print(f"  frozen:       {list(seed.frozen)}")
    print("  B (row, col, value):")
    for (i, k), v in sorted(seed.b.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        print(f"    {i:3d} {k:3d} {v:3d}")
    print("  variables:")
    for k in seed.labels:
        fn = seed.functions.get(k) if seed.functions else None
        if fn is not None and clustercore._is_initial_var(seed, k):
            lab = fn.label
            lw = ",".join(map(str, lab.left.word)) or "e"
            rw = ",".join(map(str, lab.right.word)) or "e"
            print(f"    x[{k}] = Delta(w={lw} | pi_{lab.s} | w'={rw})")
        else:
            print(f"    x[{k}] = {seed.variables[k].canonical_str()}")


def cmd_seed(args) -> int:
    datum = _datum(args.type)
    word = _parse_word(args.word)
    try:
        dw = bfz.DoubleWord(datum, word)
    except ValueError as exc:
        raise UsageError(f"not a double reduced word: {exc}")
    regularity = None if not args.no_validate else False
    _progress(f"building seed on {datum.kind} ({len(word)} letters)")
    seed = bfz.build_seed(dw, regularity=regularity)
    _print_seed(datum, dw, seed, args.format)
    return 0


def cmd_mutate(args) -> int:
    with open(args.seed_file) as fh:
        data = json.load(fh)
    datum = _datum(data["type"])
    dw = bfz.double_word_from_json(datum, data["word"])
    seed = bfz.build_seed(dw, regularity=False)
    prior = tuple(data.get("sequence_applied", ()))
    sequence = prior + _parse_word(args.sequence)
    cur = seed
    for k in sequence:
        if k not in set(cur.exchangeable):
            raise UsageError(f"vertex {k} is frozen or absent")
        cur = clustercore.mutate(cur, k)
    _print_seed(datum, dw, cur, args.format, sequence=sequence)
    return 0


def cmd_minor(args) -> int:
    datum = _datum(args.type)
    label = groupfun.MinorLabel(
        args.s,
        rootweyl.from_word(datum, _parse_word(args.left or "")),
        rootweyl.from_word(datum, _parse_word(args.right or "")),
    )
    fn = groupfun.minor(datum, label)
    lw, rw = label.weight_pair()
    out = {
        "type": datum.kind,
        "label": groupfun.minor_label_to_json(label),
        "weights": {"left": list(lw), "right": list(rw)},
    }
    if args.at:
        gw = groupfun.group_word_from_json(datum, json.loads(args.at))
        out["value"] = str(fn.eval_at(gw))
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(label.pretty(), f"weights {lw} | {rw}")
        if "value" in out:
            print("value:", out["value"])
    return 0


def cmd_realize_minor(args) -> int:
    datum = _datum(args.type)
    w = rootweyl.from_word(datum, _parse_word(args.left or ""))
    wp = rootweyl.from_word(datum, _parse_word(args.right or ""))
    dw, k = bfz.realize_minor(datum, w, wp, args.s)
    got = bfz.minor_label(dw, k)
    out = {
        "type": datum.kind,
        "word": list(dw.entries),
        "k": k,
        "label": groupfun.minor_label_to_json(got),
    }
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(f"word {list(dw.entries)}  k = {k}")
        print("  realizes", got.pretty())
    return 0


def cmd_verify(args) -> int:
    kwargs = {}
    if args.case.startswith("generation") and args.points:
        kwargs["points"] = args.points
    if args.case.startswith("seeds") and args.depth:
        kwargs["depth"] = args.depth
    _progress(f"verifying case {args.case} (seed {args.rng_seed})")
    cert = certify.run_case(args.case, rng_seed=args.rng_seed, **kwargs)
    text = json.dumps(cert, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        _progress(f"certificate written to {args.out}")
    else:
        print(text)
    expected = cert.get("expected_verdict", "pass")
    summary = "obstruction reproduced" if expected == "obstruction" else "pass"
    if cert.get("inconclusive"):
        summary += f" (inconclusive: {', '.join(cert['inconclusive'])})"
    if cert["passed"]:
        _progress(f"{args.case}: {summary}")
        return 0
    _progress(f"{args.case}: VERDICT MISMATCH (regression)")
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minorlab",
        description="exact cluster seeds and generalized minors on simple groups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("roots", help="positive roots of a type")
    p.add_argument("--type", required=True)
    add_common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("weyl", help="Weyl element info (default: w0)")
    p.add_argument("--type", required=True)
    p.add_argument("--word")
    add_common(p)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("seed", help="build the seed of a double reduced word")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True, help="comma-separated signed letters")
    p.add_argument("--no-validate", action="store_true", help="skip the symbolic regularity check")
    add_common(p)
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("mutate", help="mutate a seed file along a vertex sequence")
    p.add_argument("--seed-file", required=True)
    p.add_argument("--sequence", required=True)
    add_common(p)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("minor", help="print (and optionally evaluate) a generalized minor")
    p.add_argument("--type", required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--at", help="group word as JSON to evaluate at")
    add_common(p)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("realize-minor", help="double word and index realizing a minor")
    p.add_argument("--type", required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--left")
    p.add_argument("--right")
    add_common(p)
    p.set_defaults(func=cmd_realize_minor)

    p = sub.add_parser("verify", help="run a verification case and emit its certificate")
    p.add_argument("case", choices=list(certify.ALL_CASES))
    p.add_argument("--rng-seed", type=int, default=2024)
    p.add_argument("--points", type=int, default=None, help="sample count for probabilistic checks")
    p.add_argument("--depth", type=int, default=None, help="mutation search depth")
    p.add_argument("--out", help="write the certificate JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP API for the explorer")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=cmd_serve)
    return ap


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    guard = os.environ.get(GUARD_ENV)
    if guard:
        repcore.DIM_GUARD_DEFAULT = int(guard)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
