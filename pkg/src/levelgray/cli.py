"""levelgray command line: generate, verify, stats, bench.

Exit codes: 0 success, 1 verification failed, 2 invalid parameters,
3 interval only covered conditionally (conjecture-gated).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from itertools import islice

from . import midlevels
from .bits import to_str
from .modes import MODES, ConjectureGated, InvalidParameters, classify, resolve
from .satcycle import GlueCursor
from .trim import TrimCursor
from .verify import check_sequence, render_kv, render_text, v_delta

EXIT_OK, EXIT_INVALID_RESULT, EXIT_BAD_PARAMS, EXIT_GATED = 0, 1, 2, 3


def _add_common(p: argparse.ArgumentParser, mode_default: str | None = None) -> None:
    p.add_argument("--mode", choices=MODES, default=mode_default, required=mode_default is None)
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-l", type=int)
    p.add_argument("-c", type=int)
    p.add_argument("--cache", default=None,
                   help=f"middle-levels path cache file (default: ${midlevels.CACHE_ENV})")
    p.add_argument("--timeout", type=float, default=None, help="provider search timeout in seconds")
    p.add_argument("--kp-cap", type=int, default=midlevels.DEFAULT_KP_CAP)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="levelgray", description="Gray codes for consecutive levels of the cube")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="stream a cycle or enumeration to stdout")
    _add_common(g)
    g.add_argument("--format", choices=("bits", "flips", "ints"), default="bits")
    g.add_argument("--limit", type=int, default=0, help="records to emit; 0 = one full period")

    v = sub.add_parser("verify", help="generate one period and check it")
    _add_common(v)
    v.add_argument("--kv", action="store_true", help="key=value report instead of text")

    s = sub.add_parser("stats", help="counts and case for an interval")
    _add_common(s, mode_default="saturating")

    b = sub.add_parser("bench", help="throughput and operation counters")
    _add_common(b, mode_default="trim")
    b.add_argument("--limit", type=int, default=1_000_000, help="visits for trim/tight modes")
    return ap


def _cache(args) -> midlevels.ProviderCache:
    path = args.cache or os.environ.get(midlevels.CACHE_ENV) or None
    cache = midlevels.ProviderCache(path=path, kp_cap=args.kp_cap, timeout=args.timeout)
    midlevels.set_default_cache(cache)
    return cache


def _plan(args, cache):
    return resolve(args.mode, n=args.n, k=args.k, l=args.l, c=args.c, cache=cache)


def _signed(prev: int, step) -> str:
    return " ".join(f"{'-' if (prev >> (q - 1)) & 1 else '+'}{q}" for q in step)


def cmd_generate(args, out=None) -> int:
    out = out or sys.stdout
    plan = _plan(args, _cache(args))
    count = plan.period if args.limit == 0 else args.limit
    if count < 0:
        raise InvalidParameters("--limit must be >= 0")
    start, steps = plan.stream()
    n = plan.n
    write = out.write
    if args.format == "flips":
        v = start
        for step in islice(steps, count):
            write(_signed(v, step) + "\n")
            for q in step:
                v ^= 1 << (q - 1)
        return EXIT_OK
    render = (lambda x: to_str(x, n)) if args.format == "bits" else str
    if count == 0:
        return EXIT_OK
    v = start
    write(render(v) + "\n")
    for step in islice(steps, count - 1):
        for q in step:
            v ^= 1 << (q - 1)
        write(render(v) + "\n")
    return EXIT_OK


def cmd_verify(args, err=None) -> int:
    err = err or sys.stderr
    plan = _plan(args, _cache(args))
    start, steps = plan.stream()
    rep = check_sequence(start, islice(steps, plan.period), plan.n, plan.k, plan.l, plan.kind)
    rep.substructures["case"] = plan.case
    err.write((render_kv(rep) if args.kv else render_text(rep)) + "\n")
    return EXIT_OK if rep.valid else EXIT_INVALID_RESULT


def cmd_stats(args, out=None) -> int:
    out = out or sys.stdout
    if args.mode == "long":
        plan = _plan(args, _cache(args))
        n, k, l = plan.n, plan.k, plan.l
        v, delta = v_delta(n, k, l)
        lc_missed = v - plan.period
        out.write(f"n={n} k={k} l={l} v={v} delta={delta} case=Thm7 "
                  f"cycle_length={plan.period} missed={lc_missed}\n")
        return EXIT_OK
    n, k, l = args.n, args.k, args.l
    if n is None or k is None or l is None:
        raise InvalidParameters("stats needs -n, -k and -l")
    v, delta = v_delta(n, k, l) if 0 <= k <= l <= n else (None, None)
    if v is None:
        raise InvalidParameters(f"need 0 <= k <= l <= n, got n={n}, k={k}, l={l}")
    fields = [f"n={n}", f"k={k}", f"l={l}", f"v={v}", f"delta={delta}"]
    mode = args.mode if args.mode in ("saturating", "tight") else "saturating"
    try:
        case = classify(mode, n, k, l)
    except ConjectureGated:
        case = "Thm5(iv)" if mode == "saturating" else "Thm6(iv)"
    fields.append(f"case={case}")
    fields.append(f"cycle_length={v - delta}")
    fields.append(f"td={v + delta}")
    out.write(" ".join(fields) + "\n")
    if case.endswith("(iv)"):
        return EXIT_GATED
    return EXIT_OK


def cmd_bench(args, out=None) -> int:
    out = out or sys.stdout
    mode = args.mode
    if mode in ("trim", "tight") or (mode == "saturating" and args.l is not None and args.k is not None
                                     and args.l - args.k >= 2):
        n, k, l = args.n, args.k, args.l
        if n is None or k is None or l is None:
            raise InvalidParameters("bench needs -n, -k and -l")
        try:
            cur = TrimCursor(n, k, l, tight=(mode == "tight"))
        except ValueError as exc:
            raise InvalidParameters(str(exc)) from None
        t0 = time.perf_counter()
        visits = 0
        adv = cur.advance
        limit = args.limit
        while visits < limit:
            visits += len(adv())
        dt = time.perf_counter() - t0
        out.write(f"algorithm=T n={n} k={k} l={l} visits={visits} seconds={dt:.3f} "
                  f"visits_per_second={visits / dt:.0f} max_ops_per_visit={cur.max_ops}\n")
        return EXIT_OK
    if mode == "saturating":
        n, k = args.n, args.k
        if n is None or k is None:
            raise InvalidParameters("bench needs -n and -k")
        if args.l is not None and args.l != k + 1:
            raise InvalidParameters("saturating bench covers level pairs (l = k+1) or trimmed intervals")
        if not 1 <= k <= (n - 1) // 2:
            raise InvalidParameters(f"Thm3 bench needs 1 <= k <= floor((n-1)/2), got n={n}, k={k}")
        cache = _cache(args)
        t0 = time.perf_counter()
        for kp in range(1, k + 1):
            if 2 * kp + 1 <= n:
                cache.get(kp)
        cold = time.perf_counter() - t0
        cur = GlueCursor(n, k, cache=cache)
        t0 = time.perf_counter()
        for _ in cur:
            pass
        dt = time.perf_counter() - t0
        out.write(f"algorithm=S n={n} k={k} visits={cur.visits} seconds={dt:.3f} "
                  f"visits_per_second={cur.visits / dt:.0f} amortized_ops_per_visit={cur.amortized_ops:.3f} "
                  f"cold_start_seconds={cold:.3f}\n")
        return EXIT_OK
    raise InvalidParameters(f"bench supports trim, tight and saturating modes, not {mode!r}")


COMMANDS = {"generate": cmd_generate, "verify": cmd_verify, "stats": cmd_stats, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConjectureGated as exc:
        print(f"levelgray: conjecture-gated: {exc}", file=sys.stderr)
        return EXIT_GATED
    except (InvalidParameters, ValueError) as exc:
        print(f"levelgray: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except midlevels.ProviderError as exc:
        print(f"levelgray: provider: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
