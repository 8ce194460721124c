"""Command line front end: ``python -m tropfactor <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import fixtures, oracle, render
from .basis import (
    BasisError,
    BasisSet,
    check_positive_basis,
    orientation_extract,
)
from .factorization import (
    NotInZSError,
    UncertifiedBasisError,
    Verdict,
    dehomogenize_factorization,
    factor_ns,
    membership,
    prepare,
    rational_factor,
    verify_factorization,
)
from .geometry import Polytope, format_rational
from .tropical import TropicalPoly, dehomogenize, format_linear, format_poly, parse_poly

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNCERTIFIED = 3
EXIT_NON_PLANAR = 4
EXIT_ZS_NOT_NS = 10
EXIT_NOT_IN_ZS = 20

EPILOG = """\
exit codes:
  0   success (basis certified, polynomial in N[S], ...)
  1   check failed (basis not positive, oracle answered false or undecided)
  2   malformed or inconsistent input
  3   basis is not a certified positive basis
  4   input cannot be drawn in the plane
  10  polynomial is in Z[S] but not in N[S]
  20  polynomial is not in Z[S]

inputs are JSON files, '-' for stdin, or the name of a shipped fixture
(set TROPFACTOR_FIXTURES to use another fixture directory). Polynomial
files hold {"terms": [{"exp": [...], "coeff": "p/q"}, ...]} or
{"text": "max(x1+x2-3, ...)"}; basis files hold {"polytopes": [{"vertices":
...}, ...]}.
"""


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------

def _read_document(ref: str) -> dict:
    if ref == "-":
        text, where = sys.stdin.read(), "<stdin>"
    elif Path(ref).is_file():
        text, where = Path(ref).read_text(), ref
    else:
        try:
            return fixtures.fixture_document(ref)
        except fixtures.FixtureError as exc:
            raise InputError(f"{ref}: no such file, and {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: malformed JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    return doc


def load_poly(ref: str) -> TropicalPoly:
    doc = _read_document(ref)
    try:
        if "terms" in doc:
            return TropicalPoly.from_json(doc)
        if "text" in doc:
            return parse_poly(doc["text"], doc.get("n"))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{ref}: {exc}") from None
    raise InputError(f"{ref}: not a polynomial document")


def load_basis(ref: str) -> BasisSet:
    doc = _read_document(ref)
    try:
        return BasisSet.from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{ref}: {exc}") from None


def load_any(ref: str):
    doc = _read_document(ref)
    try:
        if "terms" in doc or "text" in doc:
            return load_poly(ref)
        if "polytopes" in doc:
            return BasisSet.from_json(doc)
        if "vertices" in doc:
            return Polytope.from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{ref}: {exc}") from None
    raise InputError(f"{ref}: expected a polynomial, basis or polytope document")


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def jsonable(x):
    if isinstance(x, Polytope):
        return x.to_json()["vertices"]
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def emit(args, command: str, payload: dict, lines: Sequence[str]) -> None:
    if args.text:
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(fixtures.dumps({"schema": fixtures.SCHEMA, "command": command,
                                         **jsonable(payload)}))


def _factor_lines(factors, monomial=None) -> list[str]:
    out = []
    if monomial is not None:
        const, exp = monomial
        out.append(f"monomial: {format_linear(exp, const)}")
    for u, m in factors:
        out.append(f"{m} * {format_poly(u)}" if m != 1 else format_poly(u))
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_check_basis(args) -> int:
    basis = load_basis(args.basis)
    report = check_positive_basis(basis, strict_faces=args.strict_faces)
    payload = {"ok": report.ok, "names": list(basis.names), "h": [list(r) for r in report.h.rows]}
    lines = [f"H ({len(report.h.rows)} rows):"] + ["  " + " ".join(f"{x:>3}" for x in r)
                                                  for r in report.h.rows]
    if report.ok:
        orient = orientation_extract(basis)
        payload["orientation"] = [{"row": list(r), "sign": s} for r, s in orient.signs]
        # fullness quantifies over infinitely many polytopes; it is never decided here
        payload["full"] = "unverified"
        lines.append("positive basis: yes")
        lines += [f"  {'+' if s > 0 else '-'} {list(r)}" for r, s in orient.signs]
        lines.append("full: unverified")
        emit(args, "check-basis", payload, lines)
        return EXIT_OK
    payload["step"] = report.step
    payload["witness"] = report.witness
    lines.append(f"positive basis: no (failed at {report.step})")
    lines.append(f"witness: {json.dumps(jsonable(report.witness))}")
    emit(args, "check-basis", payload, lines)
    return EXIT_CHECK_FAILED


def cmd_subdivide(args) -> int:
    f = load_poly(args.poly)
    sub = f.subdivision
    payload = {"n": f.n, **sub.to_json()}
    lines = [f"{len(sub.cells)} maximal cells"]
    for i, c in enumerate(sub.cells):
        verts = " ".join("(" + ",".join(str(format_rational(x)) for x in v) + ")"
                         for v in c.polytope.vertices)
        lines.append(f"C{i + 1}: {verts}")
    emit(args, "subdivide", payload, lines)
    return EXIT_OK


def _membership_lines(res, basis) -> list[str]:
    lines = [f"verdict: {res.verdict.value}"]
    for i, c in enumerate(res.cells):
        if c.decomposition is None:
            lines.append(f"C{i + 1}: {c.reason}")
        else:
            label = render.decomposition_label(c.decomposition.coeffs, basis.names,
                                               c.decomposition.translation)
            lines.append(f"C{i + 1}: {label}" + (f"  ({c.reason})" if c.reason else ""))
    return lines


def cmd_membership(args) -> int:
    f = load_poly(args.poly)
    basis = load_basis(args.basis)
    res = membership(f, basis, threads=args.threads)
    emit(args, "membership", res.to_json(basis), _membership_lines(res, basis))
    return res.verdict.exit_code


def _present(fact, lifted: bool, basis: BasisSet):
    if lifted:
        return dehomogenize_factorization(fact, basis.homog_index)
    return fact


def cmd_factor(args) -> int:
    f = load_poly(args.poly)
    basis = load_basis(args.basis)
    res = membership(f, basis, threads=args.threads)
    if res.verdict is not Verdict.NS:
        payload = res.to_json(basis)
        emit(args, "factor", payload, _membership_lines(res, basis))
        return res.verdict.exit_code
    fact = factor_ns(res.poly, basis, res, threads=args.threads)
    shown = _present(fact, res.homogenized, basis)
    payload = {"verdict": res.verdict.value, "homogenized": res.homogenized, **shown.to_json()}
    lines = [f"verdict: {res.verdict.value}", f"{sum(m for _, m in fact.factors)} unit factors"]
    lines += _factor_lines(shown.factors, shown.monomial)
    code = EXIT_OK
    if args.verify:
        ok = verify_factorization(f, fact, basis) is not None
        payload["verified"] = ok
        lines.append(f"verified: {'yes' if ok else 'NO'}")
        code = EXIT_OK if ok else EXIT_CHECK_FAILED
    emit(args, "factor", payload, lines)
    return code


def cmd_rational_factor(args) -> int:
    f = load_poly(args.poly)
    basis = load_basis(args.basis)
    try:
        rf = rational_factor(f, basis, threads=args.threads)
    except NotInZSError as exc:
        payload = {"verdict": Verdict.NOT_IN_ZS.value, "failing_cell": exc.cell,
                   "reason": exc.reason}
        emit(args, "rational-factor", payload,
             [f"verdict: {Verdict.NOT_IN_ZS.value}", f"failing cell: {exc.cell}",
              f"reason: {exc.reason}"])
        return EXIT_NOT_IN_ZS
    _, lifted = prepare(f, basis)
    num = _present(rf.numerator, lifted, basis)
    den = [(dehomogenize(u, basis.homog_index) if lifted else u, m) for u, m in rf.denominator]
    payload = {
        "homogenized": lifted,
        "denominator": [{"unit": u.to_json()["terms"], "text": format_poly(u), "multiplicity": m}
                        for u, m in den],
        "numerator": num.to_json(),
    }
    lines = [f"denominator: {sum(m for _, m in den)} units"] + ["  " + s for s in _factor_lines(den)]
    lines += [f"numerator: {sum(m for _, m in num.factors)} units"]
    lines += ["  " + s for s in _factor_lines(num.factors, num.monomial)]
    code = EXIT_OK
    if args.verify:
        ok = verify_factorization(f, rf, basis) is not None
        payload["verified"] = ok
        lines.append(f"verified: {'yes' if ok else 'NO'}")
        code = EXIT_OK if ok else EXIT_CHECK_FAILED
    emit(args, "rational-factor", payload, lines)
    return code


def _member(basis: BasisSet, name: str) -> Polytope:
    if name not in basis.names:
        raise InputError(f"no member named {name!r}; members: {', '.join(basis.names)}")
    return basis.members[basis.names.index(name)]


def cmd_oracle(args) -> int:
    f = load_poly(args.poly)
    basis = load_basis(args.basis)
    f, _ = prepare(f, basis)
    payload: dict = {"check": args.check}
    try:
        if args.check == "ns":
            result = oracle.bruteforce_ns_membership(f, basis, bound=args.bound)
        elif args.check == "peel":
            result = oracle.can_peel_unit(f, _member(basis, args.member))
            payload["member"] = args.member
        else:
            # member names such as D{1,2} contain commas themselves
            names = re.split(r",(?![^{]*\})", args.sequence)
            seq = [_member(basis, nm.strip()) for nm in names if nm.strip()]
            w = oracle.cayley_check(f, seq)
            result = w is not None
            if w is not None:
                payload["faces"] = [list(fs) for fs in w.faces]
                payload["translation"] = list(w.translation)
    except oracle.OracleLimitError as exc:
        payload.update(result="too large", reason=str(exc))
        emit(args, "oracle", payload, [f"undecided: {exc}"])
        return EXIT_CHECK_FAILED
    payload["result"] = result
    emit(args, "oracle", payload, [f"{args.check}: {'true' if result else 'false'}"])
    return EXIT_OK if result else EXIT_CHECK_FAILED


def cmd_render(args) -> int:
    subject = load_any(args.subject)
    spec = render.RenderSpec(size=args.size, labels=not args.no_labels, drop=args.drop)
    basis = load_basis(args.basis) if args.basis else None

    def rows_for(f: TropicalPoly) -> list[str]:
        if basis is None:
            return []
        res = membership(f, basis, certify=False)
        out = []
        for c in res.cells:
            d = c.decomposition
            out.append(c.reason if d is None
                       else render.decomposition_label(d.coeffs, basis.names, d.translation))
        return out

    try:
        if isinstance(subject, TropicalPoly):
            if basis is not None:
                subject, _ = prepare(subject, basis)
            other = None
            if args.compare:
                other = load_poly(args.compare)
                if basis is not None:
                    other, _ = prepare(other, basis)
            svg = render.render_subdivision(
                [c.polytope for c in subject.subdivision.cells], spec, rows_for(subject),
                None if other is None else [c.polytope for c in other.subdivision.cells],
                [] if other is None else rows_for(other))
        elif isinstance(subject, BasisSet):
            svg = render.render_strip(subject.members, subject.names,
                                      render.RenderSpec(size=args.size // 2 or 1,
                                                        labels=spec.labels, drop=spec.drop))
        else:
            svg = render.render_polytope(subject, spec)
    except render.NonPlanarError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NON_PLANAR
    Path(args.out).write_text(svg)
    emit(args, "render", {"out": args.out, "bytes": len(svg.encode())}, [f"wrote {args.out}"])
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.action == "list":
        names = fixtures.fixture_names()
        emit(args, "fixtures", {"fixtures": names}, names)
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            raise InputError("fixtures show needs a name")
        try:
            doc = fixtures.fixture_document(args.name)
        except fixtures.FixtureError as exc:
            raise InputError(str(exc)) from None
        sys.stdout.write(fixtures.dumps(doc))
        return EXIT_OK
    if args.action == "verify":
        shipped = fixtures.fixture_dir()
        bad = [name for name, data in fixtures.generate_fixtures().items()
               if not (shipped / name).is_file() or (shipped / name).read_bytes() != data]
        emit(args, "fixtures", {"ok": not bad, "mismatched": bad},
             ["all fixtures match their generators"] if not bad
             else [f"mismatch: {b}" for b in bad])
        return EXIT_OK if not bad else EXIT_CHECK_FAILED
    if not args.name:
        raise InputError("fixtures regenerate needs an output directory")
    written = fixtures.write_fixtures(args.name)
    emit(args, "fixtures", {"written": [p.name for p in written]},
         [f"wrote {p}" for p in written])
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropfactor",
                                description="Factor tropical polynomials over a positive basis "
                                            "of lattice polytopes.",
                                epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="human readable output instead of JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-basis", parents=[common], help="certify a positive basis")
    s.add_argument("basis")
    s.add_argument("--strict-faces", action="store_true",
                   help="require every proper face to be a member up to translation")
    s.set_defaults(func=cmd_check_basis)

    s = sub.add_parser("subdivide", parents=[common], help="regular subdivision of a polynomial")
    s.add_argument("poly")
    s.set_defaults(func=cmd_subdivide)

    for name, func, hlp in (("membership", cmd_membership, "decide N[S] / Z[S] membership"),
                            ("factor", cmd_factor, "factor a polynomial in N[S]"),
                            ("rational-factor", cmd_rational_factor,
                             "minimal denominator and factorisation in Z[S]")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("poly")
        s.add_argument("basis")
        s.add_argument("--threads", type=int, default=1, help="worker threads for cell decompositions")
        if name != "membership":
            s.add_argument("--verify", action="store_true", help="re-multiply and compare")
        s.set_defaults(func=func)

    s = sub.add_parser("oracle", parents=[common], help="brute-force cross-checks (small inputs)")
    s.add_argument("check", choices=["ns", "peel", "cayley"])
    s.add_argument("poly")
    s.add_argument("basis")
    s.add_argument("--bound", type=int, default=oracle.DEFAULT_BOUND,
                   help="maximal number of units tried by 'ns'")
    s.add_argument("--member", default="", help="basis member for 'peel'")
    s.add_argument("--sequence", default="", help="comma separated member names for 'cayley', e.g. D{1,2},D{2,3}")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("render", parents=[common], help="draw a subdivision, basis or polytope as SVG")
    s.add_argument("subject")
    s.add_argument("out")
    s.add_argument("--basis", help="label cells with their decompositions in this basis")
    s.add_argument("--compare", help="second polynomial drawn to the right")
    s.add_argument("--size", type=int, default=320)
    s.add_argument("--drop", type=int, default=None,
                   help="coordinate dropped from homogeneous 3-variable input (default: last)")
    s.add_argument("--no-labels", action="store_true")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("fixtures", parents=[common], help="shipped example data")
    s.add_argument("action", choices=["list", "show", "verify", "regenerate"])
    s.add_argument("name", nargs="?", default="",
                   help="fixture name for 'show', output directory for 'regenerate'")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except UncertifiedBasisError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.report.witness is not None:
            sys.stderr.write(f"witness: {json.dumps(jsonable(exc.report.witness))}\n")
        return EXIT_UNCERTIFIED
    except (BasisError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
