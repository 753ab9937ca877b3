"""Command line front end: ``itx <subcommand> <file> [options]``.

Every subcommand writes ``gen[i][k]: <poly>`` lines per batch (plus a few
keyed report lines) and ends with ``status: <status> iterations=<i>``.
Exit code 0 means terminated, 2 capped, 1 error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import colonalg, freeness, invariants
from .groebner import groebner_basis
from .idealops import SubIdeal
from .polycore import MonomialOrder, ParseError
from .problem import load_problem

SUBCOMMANDS = (
    "gb", "colon", "saturate", "quasi-affine", "fgli", "codim2", "generic-freeness",
    "field-intersect", "ga-invariants", "unipotent-invariants", "factorial-qa",
)
EXIT = {"terminated": 0, "capped": 2, "error": 1, "incomplete": 1}


class RunReport:
    def __init__(self, subcommand):
        self.subcommand = subcommand
        self.status = "error"
        self.iterations = 0
        self.emitted = 0
        self.wall_time = 0.0

    @property
    def exit_code(self):
        return EXIT[self.status]


class Writer:
    """Line or JSON-lines output; flushes after every record."""

    def __init__(self, out, as_json, report):
        self.out = out
        self.as_json = as_json
        self.report = report

    def _emit(self, lines, record):
        if self.as_json:
            self.out.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            self.out.write("".join(l + "\n" for l in lines))
        self.out.flush()

    def gen(self, i, polys):
        polys = [str(p) for p in polys]
        self.report.emitted += len(polys)
        self._emit([f"gen[{i}][{k}]: {p}" for k, p in enumerate(polys, 1)],
                   {"kind": "gen", "iteration": i, "polys": polys})

    def info(self, name, polys, index=None):
        polys = [str(p) for p in polys]
        pre = name if index is None else f"{name}[{index}]"
        self._emit([f"{pre}[{k}]: {p}" for k, p in enumerate(polys, 1)],
                   {"kind": "info", "name": name, "index": index, "polys": polys})

    def value(self, name, value):
        self._emit([f"{name}: {value}"], {"kind": "value", "name": name, "value": str(value)})

    def status(self, status, iterations):
        self.report.status = status
        self.report.iterations = iterations
        self._emit([f"status: {status} iterations={iterations}"],
                   {"kind": "status", "status": status, "iterations": iterations})


def _stream(w, stream):
    for i, batch in stream:
        w.gen(i, batch)
    w.status(stream.status, stream.iteration)


def _ring_and_algebra(pf, args):
    S = pf.presented(args.order)
    return S, pf.subalgebra(S)


def cmd_gb(pf, args, w):
    S = pf.presented(args.order)
    gb = groebner_basis(S.ideal, order=MonomialOrder(args.order, len(S.names)), ring=S.ring)
    w.gen(1, gb.gens)
    w.status("terminated", 1)


def cmd_colon(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    res = colonalg.colon_step(S, R, SubIdeal(R, pf.saturating_in(R)))
    w.gen(1, res.H)
    w.status("terminated", 1)


def cmd_saturate(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    _stream(w, colonalg.colon_saturation(S, R, pf.saturating_in(R), args.max_iter))


def cmd_quasi_affine(pf, args, w):
    X, R = _ring_and_algebra(pf, args)
    a = [R.image(g) for g in pf.saturating_in(R)]
    stream = colonalg.quasi_affine_ring(X, a, args.max_iter)
    S = stream.localized
    w.value("localized", f"{S.inverse_name} = 1/({S.localized_at})")
    _stream(w, stream)


def cmd_fgli(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    fg = colonalg.fgli_stream(S, R, pf.saturating_in(R), args.max_iter)
    for i, batch in fg.stream:
        w.gen(i, batch)
        w.info("ideal", fg.steps[-1]["ideal"], i)
    w.status(fg.stream.status, fg.stream.iteration)


def _codim2_report(w, out):
    w.value("stop", out["reason"] or "none")
    w.value("dim_S", out["dim_S"])
    w.value("dim_quotient", out["dim_quotient"])
    w.value("codim", "unit" if out["codim"] is None else out["codim"])
    w.status(out["status"], out["iteration"])


def _on_batch(w):
    def hook(i, batch, step):
        w.gen(i, batch)
        w.info("ideal", step["ideal"], i)
    return hook


def cmd_codim2(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    out = colonalg.codim2_presentation(S, R, pf.saturating_in(R), args.max_iter,
                                       on_batch=_on_batch(w))
    _codim2_report(w, out)


def cmd_generic_freeness(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    fr = freeness.generic_freeness(S, R, order=args.order)
    w.value("witness", fr.f_in_ambient)
    w.value("witness_tags", fr.f_in_tags)
    w.info("basis", fr.monic_basis)
    w.status("terminated", 1)


def cmd_field_intersect(pf, args, w):
    S, R = _ring_and_algebra(pf, args)
    stream = freeness.field_intersection(S, R, args.max_iter)
    w.value("witness", stream.freeness.f_in_ambient)
    _stream(w, stream)


def cmd_ga_invariants(pf, args, w):
    S = pf.presented(args.order)
    action = pf.ga_action(S)
    action.verify()
    try:
        stream = invariants.ga_invariant_stream(action, args.max_iter, args.strict_char0)
    except invariants.SliceUnavailable as e:
        md, polys, gens = invariants.resultant_subalgebra(action)
        w.value("slice", "unavailable")
        w.value("monic", md.f)
        for n, cp in zip(S.names, polys):
            w.value(f"charpoly({n})", cp)
        w.info("resultant", gens)
        w.status("incomplete", 0)
        print(f"error: {e}; reported resultant coefficients only", file=sys.stderr)
        return
    loc = stream.local
    if loc is not None:
        w.value("slice", f"f={loc.moving.f} r={loc.moving.r} f_r={loc.f_r}")
    _stream(w, stream)


def _presentation(w, S):
    def hook(pres):
        w.info("T", pres.T)
        w.info("d", pres.d_images(S))
    return hook


def cmd_unipotent_invariants(pf, args, w):
    S = pf.presented(args.order)
    action = pf.unipotent_action(S)
    stream = invariants.unipotent_stream(action, args.max_iter, strict_char0=args.strict_char0)
    _presentation(w, S)(stream.presentation)
    _stream(w, stream)


def cmd_factorial_qa(pf, args, w):
    S = pf.presented(args.order)
    action = pf.unipotent_action(S)
    out = invariants.factorial_invariants(action, args.max_iter, strict_char0=args.strict_char0,
                                          on_batch=_on_batch(w),
                                          on_presentation=_presentation(w, S))
    _codim2_report(w, out)


COMMANDS = {
    "gb": cmd_gb, "colon": cmd_colon, "saturate": cmd_saturate,
    "quasi-affine": cmd_quasi_affine, "fgli": cmd_fgli, "codim2": cmd_codim2,
    "generic-freeness": cmd_generic_freeness, "field-intersect": cmd_field_intersect,
    "ga-invariants": cmd_ga_invariants, "unipotent-invariants": cmd_unipotent_invariants,
    "factorial-qa": cmd_factorial_qa,
}


def build_parser():
    p = argparse.ArgumentParser(prog="itx", description="Invariant rings, colon algebras and saturation streams.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("file")
    p.add_argument("--max-iter", type=int, default=colonalg.DEFAULT_CAP, metavar="N")
    p.add_argument("--order", choices=("grevlex", "lex"), default=None,
                   help="monomial order; overrides the file (default grevlex)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict-char0", action="store_true",
                   help="never use the local slice in positive characteristic")
    return p


def run(subcommand, pf, args, out=None):
    report = RunReport(subcommand)
    if getattr(args, "order", None) is None:
        args.order = pf.order
    w = Writer(out or sys.stdout, args.json, report)
    start = time.perf_counter()
    try:
        COMMANDS[subcommand](pf, args, w)
    except (ValueError, ArithmeticError, RuntimeError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        w.status("error", report.iterations)
    report.wall_time = time.perf_counter() - start
    return report


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.max_iter < 1:
        print("error: --max-iter must be positive", file=sys.stderr)
        return 1
    try:
        pf = load_problem(args.file)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return run(args.subcommand, pf, args).exit_code


if __name__ == "__main__":
    sys.exit(main())
