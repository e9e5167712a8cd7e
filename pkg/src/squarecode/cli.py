"""squarecode command-line entry point."""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from .distinguisher import BoundInputs, bound_for, format_rate, mceliece_table
from .errors import ParamDomain, SquareCodeError, UnknownSuite
from .experiments import bound_report, expected_dual_dim, is_sound, run_trials
from .families import FAMILIES, FamilyParams
from .poly import GOPPA_FLAVORS
from .reports import csv_header_line, to_csv_row
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_INVARIANT, EXIT_DOMAIN = 0, 1, 2


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _family_args(p: argparse.ArgumentParser, with_r: bool = True):
    p.add_argument("--family", choices=FAMILIES, default="goppa")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    if with_r:
        p.add_argument("--r", type=int, required=True)
    p.add_argument("--goppa-flavor", choices=GOPPA_FLAVORS + ("unrestricted",), default="irreducible")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=_positive, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write reports here instead of stdout")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for trials")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="squarecode", description="Square-code distinguisher experiments.")
    sp = ap.add_subparsers(dest="command", required=True)

    d = sp.add_parser("distinguish", help="measure dim (C^⊥)^2 on sampled instances")
    _family_args(d)
    d.add_argument("--with-lp", action="store_true", help="also solve L_p and report its kernel dimension")

    s = sp.add_parser("sweep", help="bound (and optionally measure) over a range of r")
    _family_args(s, with_r=False)
    s.add_argument("--r-min", type=int, required=True)
    s.add_argument("--r-max", type=int, required=True)
    s.add_argument("--measure", action="store_true", help="build and measure codes for every r")
    s.add_argument("--with-lp", action="store_true")

    t = sp.add_parser("mceliece-table", help="largest distinguishable r for the Classic McEliece parameter sets")
    t.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    v = sp.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", required=True, help="one of: " + ", ".join(SUITES) + ", all")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--trials", type=_positive, default=None)
    return ap


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


class _Writer:
    def __init__(self, fh, fmt: str):
        self.fh, self.fmt = fh, fmt
        if fmt == "csv":
            fh.write(csv_header_line())
            fh.flush()

    def emit(self, rep):
        self.fh.write(rep.to_json() + "\n" if self.fmt == "json" else to_csv_row(rep))
        self.fh.flush()


def _params(a, r: int) -> FamilyParams:
    flavor = "any" if a.goppa_flavor == "unrestricted" else a.goppa_flavor
    fp = FamilyParams(a.family, a.q, a.m, a.n, r, a.seed, flavor).validate()
    bound_for(BoundInputs(fp.q, fp.m, fp.r, fp.n, fp.family))  # rejects r outside the bound's domain
    return fp


def _measure(fp: FamilyParams, a, writer, tally: dict) -> None:
    for rep in run_trials(fp, a.trials, a.with_lp, a.jobs):
        writer.emit(rep)
        tally["trials"] += 1
        if not is_sound(rep):
            tally["unsound"] += 1
        if rep.dual_dim == expected_dual_dim(fp):
            tally["generic"] += 1
            tally["tight"] += rep.measured_dim == rep.predicted_dim


def cmd_distinguish(a) -> int:
    fp = _params(a, a.r)
    tally = dict(trials=0, unsound=0, generic=0, tight=0)
    with _output(a.out) as fh:
        _measure(fp, a, _Writer(fh, a.format), tally)
    print(
        f"{tally['trials']} trials, {tally['generic']} generic, {tally['tight']} tight, "
        f"{tally['unsound']} soundness violations",
        file=sys.stderr,
    )
    return EXIT_INVARIANT if tally["unsound"] else EXIT_OK


def cmd_sweep(a) -> int:
    params = [_params(a, r) for r in range(a.r_min, a.r_max + 1)]
    tally = dict(trials=0, unsound=0, generic=0, tight=0)
    best = None
    with _output(a.out) as fh:
        w = _Writer(fh, a.format)
        for fp in params:
            if a.measure:
                _measure(fp, a, w, tally)
            else:
                w.emit(bound_report(fp))
            if bound_for(BoundInputs(fp.q, fp.m, fp.r, fp.n, fp.family)).raw < fp.n:
                best = fp.r
    if best is None:
        print("r*=none", file=sys.stderr)
    else:
        print(f"r*={best} R={format_rate(1 - best * a.m / a.n)}", file=sys.stderr)
    if a.measure:
        print(f"{tally['trials']} trials, {tally['unsound']} soundness violations", file=sys.stderr)
    return EXIT_INVARIANT if tally["unsound"] else EXIT_OK


def cmd_mceliece_table(a) -> int:
    rows = mceliece_table()
    out = sys.stdout
    if a.format == "csv":
        out.write("name,n,m,r,R\n")
        for row in rows:
            out.write(",".join(map(str, row)) + "\n")
    elif a.format == "json":
        for name, n, m, r, R in rows:
            out.write(json.dumps({"name": name, "n": n, "m": m, "r": r, "R": R}, separators=(",", ":")) + "\n")
    else:
        out.write(f"{'name':<16} {'n':>5} {'m':>3} {'r':>3} {'R':>8}\n")
        for name, n, m, r, R in rows:
            out.write(f"{name:<16} {n:>5} {m:>3} {r:>3} {R:>8}\n")
    return EXIT_OK


def cmd_verify(a) -> int:
    names = list(SUITES) if a.suite == "all" else [a.suite]
    failed = False
    for name in names:
        for res in run_suite(name, a.seed, a.trials):
            print(res.line(), flush=True)
            failed |= res.hard and not res.ok
    return EXIT_INVARIANT if failed else EXIT_OK


COMMANDS = {
    "distinguish": cmd_distinguish,
    "sweep": cmd_sweep,
    "mceliece-table": cmd_mceliece_table,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return COMMANDS[a.command](a)
    except (ParamDomain, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SquareCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
