"""Command line interface: ``planesep solve|gen|verify|bench``.

Exit codes: 0 found / success, 1 not found (``solve``) or mismatches above
epsilon (``verify``), 2 on errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from ..quantum import CHARGED, SAMPLING, CostLedger, ExecMode
from ..solvers import SolverConfig, choose_parameters
from .generators import gen_instance
from .instances import POINT_ON_3_LINES, PROBLEMS, InstanceFormatError, dump, dumps, load
from .runner import cost_ratios, describe, run_bench, solve_instance, to_csv, verify

EXIT_FOUND, EXIT_NONE, EXIT_ERROR = 0, 1, 2


def _eps(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return v


def _sizes(text: str) -> list[int]:
    try:
        out = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be comma-separated integers") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return out


def _config(args) -> SolverConfig:
    kw = {}
    if getattr(args, "k_scale", None) is not None:
        kw["k_scale"] = args.k_scale
    if getattr(args, "base_cutoff", None) is not None:
        kw["base_cutoff"] = args.base_cutoff
    return SolverConfig(mode=ExecMode(args.mode), **kw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planesep", description="Plane-separation solvers with a query-cost ledger.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, mode=True):
        p.add_argument("problem", choices=PROBLEMS)
        p.add_argument("--epsilon", type=_eps, default=0.1)
        p.add_argument("--seed", type=int, default=0)
        if mode:
            p.add_argument("--mode", choices=(CHARGED, SAMPLING), default=CHARGED)
            p.add_argument("--k-scale", type=float, default=None, help="sample-size multiplier")
            p.add_argument("--base-cutoff", type=int, default=None)

    s = sub.add_parser("solve", help="solve one instance file")
    common(s)
    s.add_argument("--input", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("problem", choices=PROBLEMS)
    g.add_argument("--n", type=int, required=True)
    grp = g.add_mutually_exclusive_group()
    grp.add_argument("--planted", dest="planted", action="store_true", default=True)
    grp.add_argument("--unplanted", dest="planted", action="store_false")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")

    v = sub.add_parser("verify", help="oracle-equivalence sweep")
    common(v)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--trials", type=int, default=20)

    b = sub.add_parser("bench", help="cost-scaling sweep to CSV")
    common(b)
    b.add_argument("--sizes", type=_sizes, required=True)
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--out", default="-")
    b.add_argument("--no-wall", action="store_true", help="omit wall_seconds for byte-stable output")
    return ap


def _solve(args) -> int:
    inst = load(args.input)
    if inst.problem != args.problem:
        raise InstanceFormatError(f"file holds a {inst.problem} instance, not {args.problem}")
    cfg = _config(args)
    led = CostLedger()
    t0 = time.perf_counter()
    ans = solve_instance(inst, args.epsilon, cfg.mode, led, rng=args.seed, config=cfg)
    wall = time.perf_counter() - t0
    k = alpha = None
    if inst.problem == POINT_ON_3_LINES and inst.n >= 2:
        prm = choose_parameters(inst.n, args.epsilon, cfg.c2, config=cfg)
        k, alpha = prm.k, prm.alpha
    print(f"answer: {'found' if ans.positive else 'none'}")
    print(f"witness: {describe(ans.witness)}")
    for key, val in led.to_row(inst.n, k, alpha, cfg.mode.kind, wall).items():
        print(f"{key}: {val}")
    return EXIT_FOUND if ans.positive else EXIT_NONE


def _gen(args) -> int:
    inst = gen_instance(args.problem, args.n, args.planted, args.seed)
    if args.out == "-":
        sys.stdout.write(dumps(inst))
    else:
        dump(inst, args.out)
    return EXIT_FOUND


def _verify(args) -> int:
    cfg = _config(args)
    rep = verify(args.problem, args.n, args.trials, args.epsilon, args.seed, cfg.mode, cfg)
    print(f"problem: {rep.problem}")
    print(f"n: {rep.n}")
    print(f"trials: {rep.trials}")
    print(f"mismatches: {rep.mismatches} (false negatives {rep.false_negatives}, "
          f"false positives {rep.false_positives})")
    print(f"errors: {rep.errors}")
    print(f"failure_rate: {rep.failure_rate:.4f}")
    return EXIT_FOUND if rep.failure_rate <= args.epsilon else EXIT_NONE


def _bench(args) -> int:
    cfg = _config(args)
    recs = run_bench(args.problem, args.sizes, args.trials, args.epsilon, cfg.mode, args.seed, config=cfg)
    text = to_csv(recs, wall=not args.no_wall)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        for n, r in cost_ratios(recs).items():
            if r is not None:
                print(f"ratio cost({n})/cost({n // 2}) = {r:.3f}")
    return EXIT_FOUND


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return {"solve": _solve, "gen": _gen, "verify": _verify, "bench": _bench}[args.cmd](args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
