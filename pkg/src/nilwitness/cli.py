"""Command-line driver with machine-readable JSON reports.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage
error, 3 resource or I/O error.  Reports are deterministic byte-for-byte for
a fixed configuration (timings go to stderr, never into the JSON).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import coinv, freelie, magnus, series, witness
from .lamplighter import gamma_weight_lamp, phi_word, variant_from_tag
from .words import parse_word_expr

SCHEMA = "1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(ValueError):
    pass


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_q(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad sequence {text!r}: {exc}") from None


def cmd_identities(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    results = []
    ok = True
    for n in range(1, args.max_n + 1):
        lie_ok = freelie.check_identity(n)
        group_ok = magnus.check_group_identity(n)
        ok &= lie_ok and group_ok
        results.append({"n": n, "lie": lie_ok, "group": group_ok})
    report = {
        "schema": SCHEMA,
        "command": "identities",
        "config": {"max_n": args.max_n},
        "results": results,
        "ok": ok,
    }
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_construct(args) -> int:
    if args.weight < 3:
        raise UsageError("--weight must be >= 3")
    pair = witness.build_witness(_parse_q(args.q), args.weight)
    payload = {"schema": SCHEMA, "command": "construct", **pair.to_json()}
    _emit(payload, args.out)
    return EXIT_OK if pair.report.ok else EXIT_CHECK_FAILED


def cmd_verify(args) -> int:
    try:
        with open(args.infile) as fh:
            data = json.load(fh)
        pair = witness.WitnessPair.from_json(data)
    except (OSError, json.JSONDecodeError) as exc:
        raise OSError(f"cannot read witness file: {exc}") from exc
    report = witness.verify_witness(pair)
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "q": list(pair.q),
        "K": pair.K,
        "report": report.to_json(),
        "ok": report.ok,
    }
    _emit(payload, args.out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_phi(args) -> int:
    variant = variant_from_tag(args.ring)
    expr = parse_word_expr(args.word)
    img = phi_word(expr, variant, args.weight)
    weight = gamma_weight_lamp(img)
    payload = {
        "schema": SCHEMA,
        "command": "phi",
        "config": {"word": args.word, "ring": args.ring, "K": args.weight},
        "image": img.to_json(),
        "weight": "inf" if weight == float("inf") else weight,
        "ok": True,
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_coinv(args) -> int:
    ring = series.ring_from_tag(args.ring)
    if isinstance(ring, series.IntegerRing):
        raise UsageError("coinvariants are computed over Q or Z/p")
    exponents = None
    if isinstance(ring, series.PrimeField):
        exponents = (1,)
    space = coinv.build_coinvariants(ring, args.weight, exponents)
    classes = {}
    if args.infile:
        with open(args.infile) as fh:
            data = json.load(fh)
        for name, coeff_list in data.get("series", {}).items():
            f = series.TruncatedSeries.from_coeffs(
                ring, args.weight, [Fraction(c) for c in coeff_list]
            )
            classes[name] = [str(c) for c in coinv.theta(f, space)]
    oracle = coinv.coinvariant_rank_oracle(ring, args.weight, exponents)
    payload = {
        "schema": SCHEMA,
        "command": "coinv",
        **space.to_json(),
        "oracle_rank": oracle,
        "theta_classes": classes,
        "ok": oracle == space.rank,
    }
    _emit(payload, args.out)
    return EXIT_OK if payload["ok"] else EXIT_CHECK_FAILED


def cmd_involution(args) -> int:
    instances = [(-1, 2), (2, 2), (5, 3)]
    results = [
        coinv.involution_exactness_report(
            coinv.InvolutiveField(d, dim), trials=args.trials, seed=args.seed
        )
        for d, dim in instances
    ]
    ok = all(r["ok"] for r in results)
    payload = {
        "schema": SCHEMA,
        "command": "involution",
        "config": {"trials": args.trials, "seed": args.seed},
        "results": results,
        "ok": ok,
    }
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_report(args) -> int:
    rng = random.Random(args.seed)
    t0 = time.monotonic()
    sections = {}

    counts = [len(freelie.hall_basis(args.weight).words_of_weight(w)) for w in range(1, args.weight + 1)]
    witt = [freelie.witt_number(w) for w in range(1, args.weight + 1)]
    sections["basis_counts"] = {"counts": counts, "witt": witt, "ok": counts == witt}

    ids = {
        "lie": [freelie.check_identity(n) for n in (1, 2)],
        "group": [magnus.check_group_identity(n) for n in (1, 2)],
    }
    sections["identities"] = {**ids, "ok": all(ids["lie"]) and all(ids["group"])}

    filt = [
        series.check_augmentation_iso(series.ring_from_tag(tag), n)
        for tag in ("Z", "Q", "Zp:5")
        for n in (1, 3)
    ]
    sections["filtration_iso"] = {"checks": filt, "ok": all(filt)}

    anchors = []
    for k in range(1, args.weight):
        img = phi_word(f"[a,_{k} b]" if k > 1 else "[a,b]", "Z", args.weight)
        want = [0] * args.weight
        want[k] = 1
        anchors.append(list(img.f.coeffs) == want and img.e == 0)
    sections["shift_anchor"] = {"ok": all(anchors)}

    powers_ok = True
    for _ in range(10):
        r1 = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
        r2 = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
        f = series.TruncatedSeries.from_coeffs(
            series.QQ, 8, [1] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(7)]
        )
        lhs = series.rat_pow(f, r1 + r2)
        rhs = series.rat_pow(f, r1) * series.rat_pow(f, r2)
        powers_ok &= lhs == rhs
    sections["rational_powers"] = {"ok": powers_ok}

    q = tuple(rng.randint(0, 1) for _ in range(3))
    pair = witness.build_witness(q, 7)
    sections["witness"] = {"q": list(q), "K": 7, "report": pair.report.to_json(), "ok": pair.report.ok}

    # witness series pushed into the coinvariant quotient: classes recorded,
    # compared pairwise, with no claim beyond the truncated computation
    space = coinv.build_coinvariants(series.QQ, 8)
    classes = {}
    for probe in ((0, 0, 0), q, tuple(1 - v for v in q)):
        wp = witness.build_witness(probe, 8)
        f = witness.witness_series(wp)
        fq = series.TruncatedSeries.from_coeffs(series.QQ, 8, f.coeffs)
        classes[",".join(map(str, probe))] = [str(c) for c in coinv.theta(fq, space)]
    names = sorted(classes)
    sections["witness_classes"] = {
        "rank": space.rank,
        "classes": classes,
        "pairwise_equal": {
            f"{u}|{v}": classes[u] == classes[v]
            for i, u in enumerate(names)
            for v in names[i + 1 :]
        },
        "ok": True,
    }

    ok = all(s["ok"] for s in sections.values())
    payload = {
        "schema": SCHEMA,
        "command": "report",
        "config": {"seed": args.seed, "weight": args.weight},
        "sections": sections,
        "ok": ok,
    }
    _emit(payload, args.out)
    print(f"report completed in {time.monotonic() - t0:.1f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilwitness",
        description="exact checks for free nilpotent quotients, completed "
        "lamplighter groups, and truncated coinvariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="bracket identity suites")
    p.add_argument("--max-n", type=int, default=2)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("construct", help="build and verify a witness pair")
    p.add_argument("--q", required=True, help='sequence, e.g. "1,0,1,1"')
    p.add_argument("--weight", "-K", type=int, default=9)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-verify a witness JSON file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("phi", help="lamplighter image of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--ring", default="Z", help="Z, Q, or Zp:<p>")
    p.add_argument("--weight", "-K", type=int, default=8)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("coinv", help="exterior-square coinvariant ranks")
    p.add_argument("--ring", default="Q", help="Q or Zp:<p>")
    p.add_argument("--weight", "-K", type=int, default=6)
    p.add_argument("--in", dest="infile", default=None, help="JSON with series to classify")
    p.set_defaults(func=cmd_coinv)

    p = sub.add_parser("involution", help="involutive-field exactness suite")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser("report", help="aggregate verification report")
    p.add_argument("--weight", "-K", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)

    for p in sub.choices.values():
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="JSON output (always on)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MemoryError:
        print("resource limit exceeded", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
