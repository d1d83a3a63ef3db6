"""Command-line front end.

Subcommands print one JSON document on stdout.  Exit codes:

    0  success
    1  malformed request (bad syntax, unknown algebra or generator, unreadable file)
    2  precondition or classification failure (span, Jacobi, type, boundary, ...)
    3  an oracle residual above the threshold

Element syntax is a comma-separated list of ``coeff*Name`` terms, e.g.
``"1*E+1, 0.5*H1, 2-1i*E-1"``; a bare ``Name`` means coefficient 1 and ``I``
is the central element.  ``CLOSEDBCH_TOL`` overrides the default
classification tolerance.
"""

import argparse
import json
import os
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor

from . import closed_forms, engine
from .algebra import CATALOG, CENTRAL, LieElement, build_algebra, commutator_table, load_algebra
from .commutators import DEFAULT_TOL, classify, solve_jacobi, tag_to_json
from .errors import BCHError, CatalogError, ForeignGeneratorError, InvalidArgumentError, UnsupportedAlgebraError
from .kernel import as_cscalar
from .results import GENERIC_TOL, oracle_residual, with_residual
from .serialize import dumps, element_to_json, result_to_json

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3
TOL_ENV = "CLOSEDBCH_TOL"


class RequestError(Exception):
    """Malformed request; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise RequestError(message)

    def print_help(self, file=None):
        raise _HelpExit(self.format_help())

    def exit(self, status=0, message=None):
        if status:
            raise RequestError(message or "invalid arguments")
        raise _HelpExit(message)


class _HelpExit(Exception):
    pass


def parse_complex(text):
    """Parse ``3``, ``-0.5``, ``1+2i``, ``(1-2i)`` or ``2j``."""
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = s.replace("i", "j")
    try:
        return as_cscalar(complex(s))
    except (ValueError, InvalidArgumentError) as exc:
        raise RequestError(f"not a finite complex number: {text!r}") from exc


def parse_element(text, algebra):
    """Parse the ``coeff*Name`` syntax into a LieElement over ``algebra``."""
    total = LieElement()
    if not text.strip():
        raise RequestError("empty element")
    for term in text.split(","):
        term = term.strip()
        if not term:
            raise RequestError(f"empty term in {text!r}")
        if "*" in term:
            coef_text, name = term.split("*", 1)
            coef = parse_complex(coef_text)
        else:
            coef, name = 1.0, term
        name = name.strip()
        if name != CENTRAL and name not in algebra.basis:
            raise RequestError(f"generator {name!r} is not in {algebra.name} (basis: {', '.join(algebra.basis)})")
        total = total + LieElement.of(name, coef)
    return total


def parse_scalars(text, count):
    parts = [p for p in text.split(",")]
    if len(parts) != count:
        raise RequestError(f"expected {count} comma-separated values, got {len(parts)}")
    return [parse_complex(p) for p in parts]


def default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        val = float(raw)
    except ValueError:
        raise RequestError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not val > 0:
        raise RequestError(f"{TOL_ENV} must be positive")
    return val


def _algebra(args):
    if getattr(args, "algebra_file", None):
        try:
            return load_algebra(args.algebra_file)
        except OSError as exc:
            raise RequestError(f"cannot read {args.algebra_file}: {exc}") from exc
        except (json.JSONDecodeError, CatalogError) as exc:
            raise RequestError(f"bad algebra file: {exc}") from exc
    try:
        return build_algebra(args.algebra)
    except UnsupportedAlgebraError as exc:
        raise RequestError(str(exc)) from exc


# -- subcommands ---------------------------------------------------------------


def cmd_classify(args):
    six = parse_scalars(args.params, 6)
    tol = args.tol if args.tol is not None else default_tol()
    tag = classify(*six, tol=tol)
    fam = solve_jacobi(*six, tol=tol)
    out = tag_to_json(tag)
    out["free"] = list(fam.free)
    if not fam.empty:
        base = fam.instantiate()
        out["particular_solution"] = {k: getattr(base, k) for k in ("m", "n", "p", "e")}
    return out, EXIT_OK


def _verified_exit(res, args):
    if res.oracle_residual is not None and res.oracle_residual >= args.threshold:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bch2(args):
    alg = _algebra(args)
    x, y = parse_element(args.x, alg), parse_element(args.y, alg)
    res = closed_forms.cartan_weyl_pair(x, y, alg)
    if res is None:
        res = engine.bch_pair(x, y, alg)
    if args.verify:
        res = with_residual(res, alg)
    return result_to_json(res, args.threshold), _verified_exit(res, args)


def cmd_bch3(args):
    alg = _algebra(args)
    x, y, z = (parse_element(t, alg) for t in (args.x, args.y, args.z))
    tol = args.tol if args.tol is not None else default_tol()
    res = engine.bch_triple(x, y, z, alg, verify=args.verify, tol=tol)
    return result_to_json(res, args.threshold), _verified_exit(res, args)


def cmd_lemma1(args):
    alg = _algebra(args)
    x, z = parse_element(args.x, alg), parse_element(args.z, alg)
    if args.witness:
        witness = parse_element(args.witness, alg)
        candidates = None
    else:
        candidates = engine.find_witness(x, z, alg)
        if not candidates:
            raise InvalidArgumentError("no basis generator satisfies the witness conditions")
        witness = LieElement.of(candidates[0])
    res = engine.bch_pair_lemma1(x, z, witness, alg, tol=args.threshold)
    out = result_to_json(res, args.threshold)
    out["witness"] = element_to_json(witness)
    if candidates is not None:
        out["witness_candidates"] = candidates
    code = EXIT_OK if res.details["verified"] else EXIT_VERIFY
    return out, code


def cmd_verify(args):
    alg = _algebra(args)
    factors = [parse_element(t, alg) for t in args.factors]
    w = parse_element(args.w, alg)
    r, kind = oracle_residual(factors, w, alg)
    out = {"oracle": kind, "oracle_residual": r, "threshold": args.threshold, "verified": r < args.threshold}
    return out, EXIT_OK if r < args.threshold else EXIT_VERIFY


def cmd_algebra(args):
    if args.action == "list":
        return {"catalog": list(CATALOG)}, EXIT_OK
    if args.name is None and not args.algebra_file:
        raise RequestError("algebra show needs a name or --algebra-file")
    args.algebra = args.name
    alg = _algebra(args)
    rows = commutator_table(alg, include_zero=args.all)
    out = {
        "name": alg.name,
        "basis": list(alg.basis),
        "rank": alg.rank,
        "commutators": [{"a": a, "b": b, "bracket": element_to_json(c)} for a, b, c in rows],
    }
    if alg.rank:
        out["cartan_matrix"] = alg.cartan_matrix().tolist()
        out["roots"] = {alg.step_name(r): list(r.coords) for r in alg.roots}
    return out, EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p, algebra=True):
    if algebra:
        p.add_argument("--algebra", default="sl3", help="catalog algebra (default sl3)")
        p.add_argument("--algebra-file", help="JSON catalog file with a user algebra")
    p.add_argument("--threshold", type=float, default=GENERIC_TOL, help="oracle residual threshold")


def build_parser():
    parser = _Parser(prog="closedbch", description="Closed-form BCH products with oracle verification.")
    parser.add_argument("--format", choices=("json", "pretty"), default="json")
    parser.add_argument("--batch", help="file with one request per line; results printed as a JSON list")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("classify", help="classify (u,v,c,w,z,d)")
    p.add_argument("--params", required=True, help="u,v,c,w,z,d")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_classify)

    for name, func, extra in (("bch2", cmd_bch2, ("y",)), ("bch3", cmd_bch3, ("y", "z"))):
        p = sub.add_parser(name, help=f"closed form for a product of {len(extra) + 1} exponentials")
        p.add_argument("--x", required=True)
        for e in extra:
            p.add_argument(f"--{e}", required=True)
        p.add_argument("--verify", dest="verify", action="store_true", default=True)
        p.add_argument("--no-verify", dest="verify", action="store_false")
        if name == "bch3":
            p.add_argument("--tol", type=float)
        _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("lemma1", help="oracle-gated pair formula with a witness element")
    p.add_argument("--x", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--witness", help="witness element; searched over the basis when omitted")
    _common(p)
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("verify", help="oracle residual of prod exp(factors) against exp(w)")
    p.add_argument("--factors", nargs="+", required=True)
    p.add_argument("--w", required=True)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebra", help="inspect catalog algebras")
    p.add_argument("action", choices=("show", "list"))
    p.add_argument("name", nargs="?")
    p.add_argument("--algebra-file")
    p.add_argument("--all", action="store_true", help="include vanishing brackets")
    p.set_defaults(func=cmd_algebra)
    # --format is accepted before or after the subcommand
    for sp in sub.choices.values():
        sp.add_argument("--format", choices=("json", "pretty"), default=argparse.SUPPRESS)
    return parser


def _error(kind, exc):
    return {"error": {"type": kind, "message": str(exc)}}


def run(argv):
    """Execute one request; return ``(exit_code, payload, format)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except RequestError as exc:
        return EXIT_PARSE, _error("ParseError", exc), "json"
    except _HelpExit as exc:
        return EXIT_OK, {"help": exc.args[0] if exc.args and exc.args[0] else parser.format_help()}, "json"
    if args.batch:
        return _run_batch(args.batch, args.format)
    if not args.command:
        return EXIT_PARSE, _error("ParseError", "a subcommand is required"), args.format
    try:
        payload, code = args.func(args)
    except RequestError as exc:
        return EXIT_PARSE, _error("ParseError", exc), args.format
    except (ForeignGeneratorError, UnsupportedAlgebraError) as exc:
        return EXIT_PARSE, _error(type(exc).__name__, exc), args.format
    except BCHError as exc:
        payload = _error(type(exc).__name__, exc)
        if getattr(exc, "candidates", None):
            payload["error"]["candidates"] = list(exc.candidates)
        return EXIT_PRECONDITION, payload, args.format
    return code, payload, args.format


def _run_batch(path, fmt):
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        return EXIT_PARSE, _error("ParseError", exc), fmt
    try:
        requests = [shlex.split(ln) for ln in lines]
    except ValueError as exc:
        return EXIT_PARSE, _error("ParseError", exc), fmt
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(run, requests))
    out = [{"exit_code": code, "result": payload} for code, payload, _ in results]
    return max((r[0] for r in results), default=EXIT_OK), out, fmt


def main(argv=None):
    code, payload, fmt = run(sys.argv[1:] if argv is None else argv)
    if isinstance(payload, dict) and set(payload) == {"help"}:
        sys.stdout.write(payload["help"])
        return code
    sys.stdout.write(dumps(payload, indent=2 if fmt == "pretty" else None) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
