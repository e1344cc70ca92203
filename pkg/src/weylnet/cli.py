"""Command-line harness.

Suite runs:

    weylnet --suite all --seed 7 --out report.json
    weylnet --suite nets --registry my.registry --grid-points 1024 --window 16

Ad-hoc subcommands (same global flags apply):

    weylnet state eval --kind field_f --element "1+0i * W[aC] - W[0]"
    weylnet state gram --kind fock_a --count 6
    weylnet chiral roundtrip --combo "aC + 3/2 c0"
    weylnet chiral decompose --combo "q0"
    weylnet net locality --kind C --i1=-17/8:-7/8 --i2=7/8:17/8
    weylnet net sector --element q0 --interval=-9/8:9/8 --apply "W[c1]"
    weylnet net gauge --n 0.3 --r=-1.2 --apply "W[T]"
    weylnet net diagram --regularizer T0 --interval=-9/8:9/8

Interval endpoints are rationals p/q separated by a colon; use the
--flag=value form for values that begin with a minus sign.  Exit status: 0 on
success with all checks passing, 1 when a suite or report check fails, 2 on
registry/element/argument parse failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .chiral import dalembert, dalembert_inverse, make_regularizers
from .errors import WeylnetError
from .funcspace import Grid, Interval
from .registry import load_registry
from .states import (
    chiral_vacuum,
    eval_state,
    field_f,
    fock_a,
    gram_psd,
    nonregular_elementary,
    product_p,
)
from .suites import SUITES, run_suite, serialize_report
from .nets import GaugeElement, diagram_check, gauge_apply, locality_report, make_sector, sector_apply
from .weyl import IDENTITY, parse_element, weyl_add, weyl_word
from .symplectic import ZERO


def _parse_interval(text: str) -> Interval:
    try:
        a, b = text.split(":")
        return Interval(Fraction(a), Fraction(b))
    except (ValueError, ZeroDivisionError) as e:
        raise WeylnetError(f"bad interval {text!r}: {e}") from None


def _state_spec(space, kind: str):
    if kind == "fock_a":
        return fock_a()
    if kind == "nonregular_elementary":
        return nonregular_elementary()
    if kind == "field_f":
        return field_f(space.generator("T"))
    if kind == "product_p":
        return product_p(space.generator("T"))
    if kind == "chiral_vacuum":
        return chiral_vacuum(make_regularizers(space, space.generator("T")))
    raise WeylnetError(f"unknown state kind {kind!r}")


def _gram_pool(space, kind: str):
    names = [n for n in space.generator_names() if not n.startswith("__")]
    if kind == "fock_a":
        return [n for n in names if space.in_space(space.generator(n), "Va")]
    if kind == "nonregular_elementary":
        out = []
        for n in names:
            _, f1 = space.assemble(space.generator(n))
            if np.ptp(f1.samples) == 0 and f1.left_limit == f1.right_limit:
                out.append(n)
        return out
    return names


def _rand_words(space, seed: int, count: int, names):
    rng = np.random.default_rng(seed)
    words = [IDENTITY]
    for _ in range(count - 1):
        v = ZERO
        for name in rng.choice(names, size=2, replace=False):
            v = v + space.generator(str(name)).scale(
                Fraction(int(rng.integers(-2, 3)), int(rng.integers(1, 3)))
            )
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        words.append(weyl_add(weyl_word(v, coeff), IDENTITY))
    return words


def _combo_vector(space, text: str):
    element = parse_element(space, f"W[{text}]")
    return element.terms()[0][0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylnet",
        description="verification harness for the Weyl-algebra toolkit",
    )
    parser.add_argument("--registry", metavar="PATH", default=None)
    parser.add_argument("--suite", metavar="NAME", choices=sorted(SUITES) + ["all"])
    parser.add_argument("--seed", metavar="N", type=int, default=1)
    parser.add_argument("--out", metavar="PATH", default=None)
    parser.add_argument("--grid-points", metavar="N", type=int, default=4096)
    parser.add_argument("--window", metavar="X", default="32")

    sub = parser.add_subparsers(dest="command")

    state = sub.add_parser("state", help="evaluate states and Gram matrices")
    state_sub = state.add_subparsers(dest="action", required=True)
    ev = state_sub.add_parser("eval")
    ev.add_argument("--kind", required=True)
    ev.add_argument("--element", required=True)
    gram = state_sub.add_parser("gram")
    gram.add_argument("--kind", required=True)
    gram.add_argument("--count", type=int, default=6)

    chiral = sub.add_parser("chiral", help="mover decomposition checks")
    chiral_sub = chiral.add_subparsers(dest="action", required=True)
    rt = chiral_sub.add_parser("roundtrip")
    rt.add_argument("--combo", required=True)
    dec = chiral_sub.add_parser("decompose")
    dec.add_argument("--combo", required=True)

    net = sub.add_parser("net", help="interval nets, sectors, gauge action")
    net_sub = net.add_subparsers(dest="action", required=True)
    loc = net_sub.add_parser("locality")
    loc.add_argument("--kind", required=True, choices=list("ABCQEF"))
    loc.add_argument("--i1", required=True)
    loc.add_argument("--i2", required=True)
    sec = net_sub.add_parser("sector")
    sec.add_argument("--element", required=True, help="generator name of the localized charge")
    sec.add_argument("--interval", required=True)
    sec.add_argument("--apply", required=True)
    gauge = net_sub.add_parser("gauge")
    gauge.add_argument("--n", type=float, default=0.0)
    gauge.add_argument("--r", type=float, default=0.0)
    gauge.add_argument("--apply", required=True)
    diag = net_sub.add_parser("diagram")
    diag.add_argument("--regularizer", required=True)
    diag.add_argument("--interval", required=True)
    return parser


def _run_suite_command(args) -> int:
    grid = Grid(
        -Fraction(args.window), Fraction(args.window), args.grid_points
    )
    report = run_suite(args.suite, args.seed, registry_path=args.registry, grid=grid)
    text = serialize_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    counts = report["counts"]
    print(
        f"suite {args.suite}: {counts['pass']}/{counts['total']} checks passed "
        f"in {report['_duration']:.2f}s"
    )
    return 0 if report["passed"] else 1


def _run_subcommand(args) -> int:
    grid = Grid(-Fraction(args.window), Fraction(args.window), args.grid_points)
    space = load_registry(args.registry, grid)
    if args.command == "state":
        spec = _state_spec(space, args.kind)
        if args.action == "eval":
            val = eval_state(space, spec, parse_element(space, args.element))
            print(f"{val.real:.12g}{val.imag:+.12g}i")
            return 0
        words = _rand_words(space, args.seed, args.count, _gram_pool(space, args.kind))
        M, min_eig = gram_psd(space, spec, words)
        norm = float(np.linalg.norm(M, 2))
        ok = min_eig >= -1e-8 * max(1.0, norm)
        print(f"gram {len(words)}x{len(words)} min eigenvalue {min_eig:.6g} "
              f"norm {norm:.6g} {'PSD' if ok else 'NOT PSD'}")
        return 0 if ok else 1
    if args.command == "chiral":
        v = _combo_vector(space, args.combo)
        pair = dalembert(space, v)
        if args.action == "decompose":
            print(f"c_plus {pair.c_plus}  c_minus {pair.c_minus}")
            print(
                f"theta_plus limits {pair.theta_plus.left_limit} .. "
                f"{pair.theta_plus.right_limit}"
            )
            print(
                f"theta_minus limits {pair.theta_minus.left_limit} .. "
                f"{pair.theta_minus.right_limit}"
            )
            return 0
        w = dalembert_inverse(space, pair)
        f0a, f1a = space.assemble(v)
        f0b, f1b = space.assemble(w)
        err = max(
            float(np.max(np.abs(f0a.samples - f0b.samples))),
            float(np.max(np.abs(f1a.samples - f1b.samples))),
        )
        print(f"roundtrip max pointwise error {err:.3e}")
        return 0 if err < 1e-8 else 1
    if args.command == "net":
        if args.action == "locality":
            rep = locality_report(
                space, args.kind, _parse_interval(args.i1), _parse_interval(args.i2)
            )
            value = rep.get("max_sigma", rep.get("max_defect"))
            print(f"kind {args.kind} defect {value:.3e} {'PASS' if rep['passed'] else 'FAIL'}")
            return 0 if rep["passed"] else 1
        if args.action == "sector":
            rho = make_sector(
                space, space.generator(args.element), _parse_interval(args.interval)
            )
            print(sector_apply(space, rho, parse_element(space, getattr(args, "apply"))))
            return 0
        if args.action == "gauge":
            out = gauge_apply(
                space, GaugeElement(n=args.n, r=args.r), parse_element(space, getattr(args, "apply"))
            )
            print(out)
            return 0
        rep = diagram_check(
            space, space.generator(args.regularizer), _parse_interval(args.interval)
        )
        for name, clause in rep.items():
            if isinstance(clause, dict):
                print(f"{name}: {'PASS' if clause['passed'] else 'FAIL'}")
        print(f"diagram: {'PASS' if rep['passed'] else 'FAIL'}")
        return 0 if rep["passed"] else 1
    raise WeylnetError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None and args.suite is None:
        parser.print_usage(sys.stderr)
        print("error: give --suite NAME or a subcommand", file=sys.stderr)
        return 2
    try:
        if args.command is None:
            return _run_suite_command(args)
        return _run_subcommand(args)
    except (WeylnetError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
