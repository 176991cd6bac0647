"""Command-line front end.

Exit codes: 0 success/true, 1 legitimate negative, 2 usage or input error,
3 I/O error.  JSON output is canonical, so identical invocations print
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .catalog import append_certificate
from .certification import (
    EdgeMode,
    Certificate,
    certificate_problems,
    certify,
    diagnose,
)
from .circuits import check_ordering, ordering_of
from .diagram import build_diagram, canonical_json, parse_prime_list
from .presentation import koch_presentation, render_presentation
from .search import (
    SearchBudget,
    SearchExhausted,
    construct_circular_set,
    extend_set,
    find_prime,
    parse_constraint,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _primes(args) -> list[int]:
    try:
        return parse_prime_list(args.set)
    except ValueError as exc:
        raise UsageError(f"--set: {exc}") from None


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_candidates, args.upper_bound)


def _load_cert(path: str) -> Certificate:
    with open(path, encoding="utf-8") as fh:  # OSError -> exit 3
        text = fh.read()
    try:
        return Certificate.from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not JSON ({exc})") from None


def _certificate_text(cert: Certificate) -> str:
    lines = [
        f"p = {cert.p}",
        f"S = {{{', '.join(map(str, cert.S))}}}",
        f"T = {{{', '.join(map(str, cert.T))}}}  circuit: {' -> '.join(map(str, cert.ordering))} -> {cert.ordering[0]}",
    ]
    for step in cert.chain:
        lines.append(f"  add {step.prime} via {step.witness} ({EdgeMode(step.mode).value})")
    lines.append(f"cd G_S(p) = {cert.conclusions['cd']}, scd G_S(p) = {cert.conclusions['scd']}")
    return "\n".join(lines)


def _output_cert(cert: Certificate, args) -> None:
    if getattr(args, "catalog", None):
        append_certificate(args.catalog, cert)
    _emit(_certificate_text(cert) if args.format == "text" else cert.to_json())


def cmd_diagram(args) -> int:
    d = build_diagram(args.p, _primes(args))
    _emit(d.to_dot() if args.format == "dot" else d.to_json())
    return EXIT_OK


def cmd_certify(args) -> int:
    primes = _primes(args)
    cert = certify(args.p, primes, args.mode)
    if cert is None:
        _emit(canonical_json(diagnose(args.p, primes, args.mode)))
        return EXIT_NO
    _output_cert(cert, args)
    return EXIT_OK


def cmd_check(args) -> int:
    d = build_diagram(args.p, _primes(args))
    try:
        order = ordering_of(d, parse_prime_list(args.ordering))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"--ordering: {exc}") from None
    verdict = check_ordering(d, order)
    if args.format == "text":
        status = "pass" if verdict.passed else "fail"
        _emit(
            f"{status}: (a)={verdict.cond_a} (b) violations={len(verdict.cond_b_violations)} "
            f"(c) {verdict.lhs} != {verdict.rhs} is {verdict.cond_c}"
        )
    else:
        _emit(canonical_json(verdict.to_dict(d)))
    return EXIT_OK if verdict.passed else EXIT_NO


def cmd_present(args) -> int:
    pres = koch_presentation(build_diagram(args.p, _primes(args)))
    _emit(render_presentation(pres) if args.format == "text" else pres.to_json())
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cons = [parse_constraint(r) for r in args.require]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    primes = _primes(args)
    found = find_prime(args.p, primes, cons, _budget(args), args.count)
    if args.format == "text":
        _emit(" ".join(map(str, found)) if found else "none")
    else:
        _emit(canonical_json({"p": args.p, "S": sorted(primes), "constraints": [str(c) for c in cons], "found": found}))
    return EXIT_OK if found else EXIT_NO


def cmd_extend(args) -> int:
    if args.cert:
        cert = _load_cert(args.cert)
    elif args.set and args.p:
        cert = certify(args.p, _primes(args), args.mode)
        if cert is None:
            _emit(canonical_json(diagnose(args.p, _primes(args), args.mode)))
            return EXIT_NO
    else:
        raise UsageError("extend needs --cert FILE or --p and --set")
    problems = certificate_problems(cert)
    if problems:
        _emit(canonical_json({"ok": False, "problems": problems}))
        return EXIT_NO
    try:
        cert = extend_set(cert, args.count, args.mode, _budget(args))
    except SearchExhausted as exc:
        _emit(canonical_json({"error": str(exc), "partial": exc.partial.to_dict()}))
        return EXIT_NO
    _output_cert(cert, args)
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        cert = construct_circular_set(args.p, args.n, _budget(args), args.mode)
    except SearchExhausted as exc:
        _emit(canonical_json({"error": str(exc)}))
        return EXIT_NO
    _output_cert(cert, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = _load_cert(args.cert)
    except ValueError as exc:
        # Parseable JSON that is not a certificate is a failed verification.
        _emit(canonical_json({"ok": False, "problems": [str(exc)]}))
        return EXIT_NO
    problems = certificate_problems(cert)
    if args.format == "text":
        _emit("ok" if not problems else "\n".join(problems))
    else:
        _emit(canonical_json({"ok": not problems, "problems": problems}))
    return EXIT_NO if problems else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primelink", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_set=True, formats=("json", "text")):
        sp.add_argument("--p", type=int, required=need_set, help="odd prime p")
        sp.add_argument("--set", required=need_set, help="comma-separated primes, each 1 mod p")
        sp.add_argument("--format", choices=formats, default=formats[0])

    def budget(sp):
        sp.add_argument("--max-candidates", type=int, default=100_000)
        sp.add_argument("--upper-bound", type=int, default=1 << 32)

    def mode(sp):
        sp.add_argument("--mode", choices=[m.value for m in EdgeMode], default="strong")

    sp = sub.add_parser("diagram", help="print the linking diagram")
    common(sp, formats=("json", "dot"))
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("certify", help="certify cd G_S(p) = 2")
    common(sp)
    mode(sp)
    sp.add_argument("--catalog", help="append the certificate to this JSONL file")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("check", help="test one ordering for a non-singular circuit")
    common(sp)
    sp.add_argument("--ordering", required=True, help="comma-separated primes in circuit order")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("present", help="print the Koch presentation")
    common(sp)
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("search", help="find primes with prescribed edges")
    common(sp)
    sp.add_argument("--require", action="append", default=[], metavar="EDGE",
                    help="'q->s' or 's->q', '!' prefix forbids; repeatable")
    sp.add_argument("--count", type=int, default=1)
    budget(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("extend", help="grow a certified set by going-up steps")
    common(sp, need_set=False)
    sp.add_argument("--cert", help="certificate JSON file to extend")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--catalog")
    mode(sp)
    budget(sp)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("construct", help="build a certified set from scratch")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--catalog")
    mode(sp)
    budget(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="independently re-check a certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"primelink: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"primelink: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"primelink: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
