"""Command-line front end: ``kummerbreak verify | invariants | pairing``.

Reports are JSON lines: a header object, one object per spec and a final
summary object, all carrying ``schema: 1``.  Exit codes: 0 ok, 1 theorem
violation, 2 configuration error, 3 precision failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from contextlib import contextmanager

from . import __version__
from .errors import FieldSpecError, PrecisionError, SpecError
from .field import Field
from .fieldspec import load_fieldspec
from .invariants import (FAILED, HOLDS, NOT_APPLICABLE, enumerate_specs, spec_from_digits,
                         verify_main_theorem)

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_PRECISION = 0, 1, 2, 3
SCHEMA = 1


class ConfigError(Exception):
    pass


def _parser():
    ap = argparse.ArgumentParser(prog="kummerbreak", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", required=True, help="field-spec file")
        p.add_argument("--precision", type=int, help="override the field's precision N")
        p.add_argument("--out", help="write the report here instead of stdout")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--pretty", dest="fmt", action="store_const", const="pretty")
        p.set_defaults(fmt="json")

    v = sub.add_parser("verify", help="enumerate extensions and check the b_* formula")
    common(v)
    v.add_argument("--break", dest="brk", default="all", help="break b, or 'all'")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="canonical enumeration (default)")
    mode.add_argument("--samples", type=int, help="number of random specs per break")
    v.add_argument("--seed", type=int, default=0, help="seed for --samples (default 0)")
    v.add_argument("--oracle", action="store_true", help="cross-check with the tower oracle")
    v.add_argument("--nep", action="store_true", help="with --oracle, also check norm congruences")

    i = sub.add_parser("invariants", help="invariants of one extension")
    common(i)
    i.add_argument("--rho1", required=True, help="digits of rho_1 as JSON [[code, level], ...]")
    i.add_argument("--rho2", required=True, help="digits of rho_2 as JSON [[code, level], ...]")
    i.add_argument("--oracle", action="store_true")

    q = sub.add_parser("pairing", help="Kummer pairing of two principal units")
    common(q)
    q.add_argument("--alpha", required=True, help="digits of alpha - 1 as JSON [[code, level], ...]")
    q.add_argument("--beta", required=True, help="digits of beta - 1 as JSON [[code, level], ...]")
    return ap


def _load_field(args) -> Field:
    spec = load_fieldspec(args.field)
    if args.precision is not None:
        spec = spec.with_precision(args.precision)
    return Field(spec)


def _digits(text, what):
    try:
        val = json.loads(text)
    except json.JSONDecodeError:
        raise ConfigError(f"{what}: not valid JSON") from None
    if not isinstance(val, list) or not all(isinstance(x, list) and len(x) == 2 for x in val):
        raise ConfigError(f"{what}: expected [[code, level], ...]")
    return val


def _breaks(field, text):
    p, d = field.p, field.d
    valid = [b for b in range(1, d) if b % p and (d - b) % p]
    if text == "all":
        return valid
    try:
        b = int(text)
    except ValueError:
        raise ConfigError(f"--break must be an integer or 'all', got {text!r}") from None
    if b not in valid:
        raise ConfigError(f"break {b} is not admissible for this field (choose from {valid})")
    return [b]


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(out, fmt, obj, pretty_line):
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    else:
        out.write(pretty_line + "\n")


def _oracle_verdict(rec, oracle):
    """Fold the oracle's values into the verdict."""
    notes = rec.setdefault("notes", [])
    ok = oracle["breaks"] == [rec["b"]] and oracle["i1"] == rec["i1"] == oracle["i1_eq"] \
        == oracle["i1_apj"]
    if not ok:
        notes.append("oracle disagrees on breaks or i1")
    if not rec["degenerate"] and oracle["b_star"] != rec["b_star"]:
        ok = False
        notes.append("oracle b_* differs from the pipeline")
    if oracle.get("nep_failures"):
        ok = False
        notes.append("norm congruence failed")
    if not ok:
        rec["verdict"] = FAILED
    if not notes:
        del rec["notes"]


def _describe(rec):
    head = f"b={rec['b']} theta={rec['theta']} k={rec['k']} i1={rec['i1']} b_*={rec['b_star']}"
    if rec.get("label"):
        head = f"{rec['label']}: {head}"
    if rec["verdict"] == NOT_APPLICABLE and rec["degenerate"]:
        return head + "  main theorem not applicable (i1 = p^2 b - p b)"
    tail = f"  {rec['verdict']}"
    if "oracle" in rec:
        tail += f"  oracle: i1={rec['oracle']['i1']} b_*={rec['oracle']['b_star']}"
    for n in rec.get("notes", []):
        tail += f"  [{n}]"
    return head + tail


def _report(spec, oracle: bool, nep: bool = False) -> dict:
    rec = {"type": "spec", **verify_main_theorem(spec).to_record()}
    if oracle:
        from .oracle import run_oracle
        rec["oracle"] = run_oracle(spec, nep=nep)
        _oracle_verdict(rec, rec["oracle"])
    return rec


def _summary(records, field):
    cells = Counter((r["b"], r["k"], r["i1"], r["b_star"]) for r in records)
    verdicts = Counter(r["verdict"] for r in records)
    return {
        "schema": SCHEMA,
        "type": "summary",
        "field": field.spec.name,
        "total": len(records),
        "verdicts": {v: verdicts.get(v, 0) for v in (HOLDS, NOT_APPLICABLE, FAILED)},
        "cells": [{"b": b, "k": k, "i1": i1, "b_star": bs, "count": n}
                  for (b, k, i1, bs), n in sorted(cells.items())],
    }


def _pretty_summary(s):
    lines = [f"total {s['total']}: " + ", ".join(f"{k} {v}" for k, v in s["verdicts"].items())]
    lines.append("   b   k   i1  b_*  count")
    for c in s["cells"]:
        lines.append(f"{c['b']:4d}{c['k']:4d}{c['i1']:5d}{c['b_star']:5d}{c['count']:7d}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    field = _load_field(args)
    breaks = _breaks(field, args.brk)
    exhaustive = args.samples is None
    if not exhaustive and args.samples < 1:
        raise ConfigError("--samples must be positive")
    records = []
    with _output(args.out) as out:
        header = {"schema": SCHEMA, "type": "header", "command": "verify",
                  "field": field.spec.name, "p": field.p, "f": field.f, "e": field.e,
                  "precision": field.N, "breaks": breaks,
                  "mode": "exhaustive" if exhaustive else "random",
                  "seed": None if exhaustive else args.seed, "oracle": args.oracle}
        _emit(out, args.fmt, header,
              f"# {field.spec.name}: p={field.p} f={field.f} e={field.e} N={field.N} "
              f"breaks={breaks} mode={header['mode']} seed={header['seed']}")
        for b in breaks:
            seed = None if exhaustive else (args.seed << 8) + b
            for spec in enumerate_specs(field, b, exhaustive, args.samples, seed):
                rec = _report(spec, args.oracle, args.nep)
                records.append(rec)
                _emit(out, args.fmt, rec, _describe(rec))
        s = _summary(records, field)
        _emit(out, args.fmt, s, _pretty_summary(s))
    return EXIT_VIOLATION if s["verdicts"][FAILED] else EXIT_OK


def cmd_invariants(args) -> int:
    field = _load_field(args)
    spec = spec_from_digits(field, _digits(args.rho1, "--rho1"), _digits(args.rho2, "--rho2"))
    rec = _report(spec, args.oracle)
    with _output(args.out) as out:
        _emit(out, args.fmt, rec, _describe(rec))
    return EXIT_VIOLATION if rec["verdict"] == FAILED else EXIT_OK


def _unit(field, digits, what):
    for c, h in digits:
        if not 0 <= int(c) < field.q or int(h) < 1:
            raise ConfigError(f"{what}: not a principal unit (digit {c} at level {h})")
    return field.one() + field.from_digits([(int(c), int(h)) for c, h in digits])


def cmd_pairing(args) -> int:
    from .vostokov import pairing
    field = _load_field(args)
    a = _unit(field, _digits(args.alpha, "--alpha"), "--alpha")
    b = _unit(field, _digits(args.beta, "--beta"), "--beta")
    val = pairing(a, b, field)
    rec = {"schema": SCHEMA, "type": "pairing", "field": field.spec.name,
           "alpha_digits": json.loads(args.alpha), "beta_digits": json.loads(args.beta),
           "exponent": val.exponent, "p": field.p}
    with _output(args.out) as out:
        _emit(out, args.fmt, rec, f"<alpha, beta> = zeta_{field.p}^{val.exponent}")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "invariants": cmd_invariants, "pairing": cmd_pairing}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, FieldSpecError, SpecError) as exc:
        print(f"kummerbreak: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PrecisionError as exc:
        print(f"kummerbreak: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
