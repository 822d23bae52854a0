"""Command line front end.

Every flag can also be given in a job file, one ``key = value`` per line
(``command = height``, ``field = x^2 - x - 1``, ...); ``bogocert run``
executes job files, optionally in parallel.

Exit codes: 0 success, 2 parse error, 3 precondition (domain) error,
4 I/O error, 5 verification or internal error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath

from . import __version__
from .bounds import (
    Certificate,
    ExcessInput,
    excess_discriminant,
    finram_certificate,
    garza_bound,
    prefall_bound,
    relbocrit_bound,
    silverman_bound,
    verify_certificate,
)
from .constructor import construct_alpha, nonbog_witnesses, tower_bound_42, trinomial_step
from .errors import BogocertError, DomainError
from .exactmath.poly import IntPolynomial
from .idealtheory import split_prime
from .kummer import check_a1, check_acolem
from .numberfield import FieldElement, NumberField, height, new_field

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_VERIFY = 5

COMMANDS = ("height", "split", "kummer", "certify", "verify", "construct", "witnesses", "tower", "bounds")
DOMAIN_CATEGORIES = {
    "domain", "reducible", "irreducibility-not-certified", "not-maximal-order",
    "unsupported", "search-exhausted", "quotient-too-large",
}


class ParseError(Exception):
    pass


class UsageParser(argparse.ArgumentParser):
    """An argument parser that raises instead of exiting."""

    def error(self, message):
        raise ParseError(message)


# ---------------------------------------------------------------------------
# input parsing


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise ParseError(f"not an integer: {text!r}") from None
    return n


def _poly(text: str) -> IntPolynomial:
    try:
        return IntPolynomial.parse(text)
    except (ValueError, DomainError) as exc:
        raise ParseError(str(exc)) from None


def _digits(text: str) -> int:
    n = _positive_int(text)
    if not 10 <= n <= 200:
        raise ParseError(f"--digits must lie in [10, 200], got {n}")
    return n


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ParseError(f"{args.command} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _field(args) -> NumberField:
    return new_field(_poly(args.field))


def _element(F: NumberField, text: str) -> FieldElement:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) > F.degree:
        raise ParseError(f"{len(parts)} coordinates for a degree {F.degree} field")
    return F.element([_rational(p) for p in parts])


def build_parser() -> UsageParser:
    p = UsageParser(prog="bogocert", description="Heights, Kummer ramification and height-gap certificates.")
    p.add_argument("--version", action="version", version=f"bogocert {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=UsageParser)

    def common(sp):
        sp.add_argument("--digits", type=_digits, default=30)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    sp = sub.add_parser("height", help="absolute logarithmic height of a field element")
    sp.add_argument("--field")
    sp.add_argument("--elem")
    common(sp)

    sp = sub.add_parser("split", help="primes of F over ell")
    sp.add_argument("--field")
    sp.add_argument("--ell", type=_positive_int)
    common(sp)

    sp = sub.add_parser("kummer", help="ramification of F(alpha^(1/ell))/F at primes over ell")
    sp.add_argument("--field")
    sp.add_argument("--elem")
    sp.add_argument("--ell", type=_positive_int)
    sp.add_argument("--rho", type=_rational)
    common(sp)

    sp = sub.add_parser("certify", help="issue a height-gap certificate")
    sp.add_argument("--field")
    sp.add_argument("--elem", help="alpha; constructed when omitted")
    sp.add_argument("--ell", type=_positive_int)
    sp.add_argument("--rho", type=_rational)
    sp.add_argument("--provenance", default="declared")
    sp.add_argument("--attest", action="append", default=[])
    sp.add_argument("--arch", action="store_true", help="also try the theta branches when rho < d")
    common(sp)

    sp = sub.add_parser("verify", help="recheck a certificate file")
    sp.add_argument("--cert")
    common(sp)

    sp = sub.add_parser("construct", help="admissible alpha for F and ell")
    sp.add_argument("--field")
    sp.add_argument("--ell", type=_positive_int)
    common(sp)

    sp = sub.add_parser("witnesses", help="elements of height tending to 0")
    sp.add_argument("--b", type=_rational)
    sp.add_argument("--eps", type=mpmath.mpf)
    sp.add_argument("--kmax", type=_positive_int)
    common(sp)

    sp = sub.add_parser("tower", help="trinomial tower steps")
    sp.add_argument("--steps", type=_positive_int, default=1)
    sp.add_argument("--b", type=_positive_int, help="degree of the first step")
    sp.add_argument("--prime-bound", type=_positive_int, default=10**6)
    common(sp)

    sp = sub.add_parser("bounds", help="evaluate a single height lower bound")
    sp.add_argument("--kind", choices=("silverman", "garza", "relbocrit", "prefall", "excess", "tower42"))
    sp.add_argument("--s", type=_positive_int)
    sp.add_argument("--d", type=_positive_int)
    sp.add_argument("--delta", type=_positive_int)
    sp.add_argument("--norm", type=_positive_int)
    sp.add_argument("--r", type=_positive_int)
    sp.add_argument("--rho", type=_rational)
    sp.add_argument("--excess", type=_rational)
    sp.add_argument("--p", type=_positive_int)
    sp.add_argument("--disjoint", help="comma separated attested primes")
    sp.add_argument("--family", help="entries e:norm separated by commas")
    common(sp)

    sp = sub.add_parser("run", help="execute job files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--jobs", type=_positive_int, default=1)
    return p


# ---------------------------------------------------------------------------
# rendering


def _render_pairs(pairs: list[tuple[str, object]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(dict(pairs), indent=2)
    if fmt == "csv":
        return _csv([[k for k, _ in pairs], [v for _, v in pairs]])
    return "\n".join(f"{k} = {v}" for k, v in pairs)


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _rows_to_text(rows: Sequence[Sequence[object]]) -> str:
    return "\n".join("  ".join(str(c) for c in r) for r in rows)


def _json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# commands


def cmd_height(args) -> str:
    _require(args, "field", "elem")
    F = _field(args)
    beta = _element(F, args.elem)
    est = height(beta, args.digits)
    shown = mpmath.nstr(est.value, args.digits) if not est.is_zero else "0"
    radius = "0" if est.is_zero else mpmath.nstr(est.error_bound, 3)
    return _render_pairs(
        [
            ("field", str(F.minpoly)),
            ("element", ",".join(beta.to_json())),
            ("exact_zero", est.is_zero),
            ("height", f"{shown} ± {radius}" if args.format == "text" else shown),
            ("error_bound", radius),
        ],
        args.format,
    )


def cmd_split(args) -> str:
    _require(args, "field", "ell")
    F = _field(args)
    report = split_prime(F, args.ell, strict=False)
    if args.format == "json":
        return _json(report.to_json())
    if args.format == "csv":
        return _csv([["g", "e", "f"]] + [[str(P.g), P.e, P.f] for P in report.factors])
    return report.to_text()


def cmd_kummer(args) -> str:
    _require(args, "field", "elem", "ell")
    F = _field(args)
    alpha = _element(F, args.elem)
    res = check_a1(F, alpha, args.ell) if args.rho is None else check_acolem(F, alpha, args.ell, args.rho)
    data = res.to_json()
    if args.format == "json":
        return _json(data)
    rows = [[str(r.prime.g), r.prime.e, r.prime.f, r.a, r.w, r.branch] for r in res.records]
    if args.format == "csv":
        return _csv([["g", "e", "f", "a", "w", "branch"]] + rows)
    head = [
        f"conclusion = {data['conclusion']}",
        f"divides = {data['divides']}",
        f"irreducible_certified = {str(data['irreducible_certified']).lower()}",
    ]
    return "\n".join(head + ["prime " + _rows_to_text([r]) for r in rows])


def _write_or_return(args, text: str) -> str:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def cmd_certify(args) -> str:
    _require(args, "field", "ell", "rho")
    F = _field(args)
    attest = list(args.attest)
    if args.elem is None:
        alpha = construct_alpha(F, args.ell).alpha
        attest.append("alpha constructed with alpha = 1 + pi_i mod P_i^2 at every P_i over ell")
    else:
        alpha = _element(F, args.elem)
    cert = finram_certificate(F, alpha, args.ell, args.rho, args.provenance, want_arch=args.arch, attestations=attest)
    data = cert.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_json(data) + "\n")
    if args.format == "json":
        return _json(data)
    pairs = [
        ("branch", data["branch"]),
        ("theta", data["theta"]),
        ("epsilon", data["epsilon_mult"]["expression"]),
        ("epsilon_value", data["epsilon_mult"]["value"]),
        ("alpha", ",".join(data["alpha"])),
    ]
    return _render_pairs(pairs, args.format)


class VerificationError(BogocertError):
    category = "verification"


def cmd_verify(args) -> str:
    _require(args, "cert")
    with open(args.cert, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"certificate is not JSON: {exc}") from None
    cert = Certificate.from_json(data)
    report = verify_certificate(cert)
    if not report.ok:
        raise VerificationError(report.message, module="bounds")
    return _render_pairs(
        [("ok", True), ("epsilon_value", mpmath.nstr(report.recomputed, 15, strip_zeros=False)), ("message", report.message)],
        args.format,
    )


def cmd_construct(args) -> str:
    _require(args, "field", "ell")
    F = _field(args)
    res = construct_alpha(F, args.ell)
    data = res.to_json()
    if args.format == "json":
        return _json(data)
    rows = [[str(P.g), ",".join(pi.to_json()), v] for P, pi, v in zip(res.primes, res.uniformizers, res.valuations)]
    if args.format == "csv":
        return _csv([["g", "uniformizer", "v"]] + rows)
    return "\n".join([f"alpha = {','.join(data['alpha'])}"] + ["prime " + _rows_to_text([r]) for r in rows])


def cmd_witnesses(args) -> str:
    _require(args, "b")
    if args.eps is None and args.kmax is None:
        raise ParseError("witnesses needs --eps or --kmax")
    seq = nonbog_witnesses(args.b, args.kmax, args.eps)
    if args.format == "json":
        return _json(seq.to_json())
    rows = [[w.k, w.formula, mpmath.nstr(w.height, 15)] for w in seq.items]
    if args.format == "csv":
        return _csv([["k", "formula", "height"]] + rows)
    return "\n".join([f"first_below = {seq.first_below}"] + [_rows_to_text([r]) for r in rows])


def cmd_tower(args) -> str:
    steps = []
    for i in range(args.steps):
        steps.append(trinomial_step(steps, args.b if i == 0 else None, prime_bound=args.prime_bound))
    data = [s.to_json() for s in steps]
    if args.format == "json":
        return _json(data)
    keys = ["index", "b", "disc", "height", "height_upper", "split_prime"]
    rows = [[d[k] for k in keys] for d in data]
    if args.format == "csv":
        return _csv([keys] + rows)
    return _rows_to_text([keys] + rows)


def _bound_output(bound, args, extra=()) -> str:
    pairs = [("kind", args.kind), ("expression", bound.expression),
             ("value", bound.decimal()), ("certifying", bound.certifying)] + list(extra)
    return _render_pairs(pairs, args.format)


def _parse_family(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in text.split(","):
        try:
            e, n = item.split(":")
            out.append((int(e), int(n)))
        except ValueError:
            raise ParseError(f"bad family entry {item!r}; expected e:norm") from None
    return tuple(out)


def cmd_bounds(args) -> str:
    _require(args, "kind")
    kind = args.kind
    if kind == "silverman":
        _require(args, "s", "d", "delta", "norm")
        return _bound_output(silverman_bound(args.s, args.d, args.delta, args.norm), args)
    if kind == "garza":
        _require(args, "d", "r")
        return _bound_output(garza_bound(args.d, args.r), args)
    if kind == "relbocrit":
        _require(args, "d", "rho", "s", "excess")
        res = relbocrit_bound(args.d, args.rho, [(args.s, args.excess)])
        return _bound_output(res.bound, args, [("criterion_passes", res.passes)])
    if kind == "prefall":
        _require(args, "s", "d", "rho", "excess")
        return _bound_output(prefall_bound(args.s, args.d, args.rho, args.excess), args)
    if kind == "tower42":
        _require(args, "p")
        return _bound_output(tower_bound_42(args.p), args)
    _require(args, "norm", "s")
    if (args.disjoint is None) == (args.family is None):
        raise ParseError("excess needs exactly one of --disjoint and --family")
    if args.disjoint is not None:
        try:
            primes = frozenset(int(x) for x in args.disjoint.split(",") if x.strip())
        except ValueError:
            raise ParseError(f"bad prime list {args.disjoint!r}") from None
        data = ExcessInput(args.norm, args.s, disjoint=primes)
    else:
        data = ExcessInput(args.norm, args.s, finite_family=_parse_family(args.family))
    ev = excess_discriminant(data)
    return _render_pairs(
        [("kind", kind), ("expression", str(ev.value)),
         ("value", mpmath.nstr(ev.decimal(), 15, strip_zeros=False)),
         ("certified", ev.certified), ("label", ev.label)],
        args.format,
    )


HANDLERS: dict[str, Callable] = {
    "height": cmd_height,
    "split": cmd_split,
    "kummer": cmd_kummer,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "construct": cmd_construct,
    "witnesses": cmd_witnesses,
    "tower": cmd_tower,
    "bounds": cmd_bounds,
}


# ---------------------------------------------------------------------------
# job files and dispatch


def job_file_argv(path: str) -> list[str]:
    """Translate a ``key = value`` job file into command line arguments."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    command = None
    argv: list[str] = []
    for n, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key == "command":
            command = value
        elif value.lower() == "true":
            argv.append(f"--{key}")
        elif value.lower() == "false":
            continue
        else:
            argv += [f"--{key}", value]
    if command is None:
        raise ParseError(f"{path}: missing 'command = ...'")
    if command not in COMMANDS:
        raise ParseError(f"{path}: unknown command {command!r}")
    return [command] + argv


def _error_exit(category: str, module: str, message: str, code: int) -> int:
    print(json.dumps({"error": category, "module": module, "message": message}), file=sys.stderr)
    return code


def _code_for(exc: BogocertError) -> int:
    return EXIT_DOMAIN if exc.category in DOMAIN_CATEGORIES else EXIT_VERIFY


def _run_job_file(path: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            argv = job_file_argv(path)
        except ParseError as exc:
            code = _error_exit("parse", "cli", str(exc), EXIT_PARSE)
        except OSError as exc:
            code = _error_exit("io", "cli", str(exc), EXIT_IO)
        else:
            code = main(argv)
    return code, out.getvalue(), err.getvalue()


def _run_batch(files: Sequence[str], jobs: int) -> int:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job_file, files))
    else:
        results = [_run_job_file(f) for f in files]
    worst = EXIT_OK
    for path, (code, out, err) in zip(files, results):
        sys.stdout.write(f"== {path} (exit {code})\n")
        sys.stdout.write(out)
        sys.stderr.write(err)
        worst = max(worst, code)
    return worst


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ParseError("a command is required")
        if args.command == "run":
            return _run_batch(args.files, args.jobs)
        text = HANDLERS[args.command](args)
        if args.out and args.command not in ("certify",):
            _write_or_return(args, text)
        print(text)
        return EXIT_OK
    except ParseError as exc:
        return _error_exit("parse", "cli", str(exc), EXIT_PARSE)
    except BogocertError as exc:
        return _error_exit(exc.category, exc.module, str(exc), _code_for(exc))
    except OSError as exc:
        return _error_exit("io", "cli", str(exc), EXIT_IO)
    except Exception as exc:  # unexpected failures still get a machine-readable line
        return _error_exit("internal", "cli", f"{type(exc).__name__}: {exc}", EXIT_VERIFY)


if __name__ == "__main__":
    sys.exit(main())
