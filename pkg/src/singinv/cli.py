"""Command-line front end: job parsing, reports, certificates, fixtures.

Input documents are small key/value texts::

    variables: x, y, z
    f: x^2 + y^4 + z^5
    xgen: y*z + x^3

Polynomial syntax: variables are identifiers, ``^`` for powers, ``*`` is
optional between factors, rational coefficients are written ``p/q``.  The
``fixtures`` command runs the two built-in golden examples and exits nonzero
on any mismatch with the embedded expected values.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import derlog, invariants
from .derlog import GermPair
from .invariants import full_report
from .poly import DegreeCapError, Poly, PolyRing
from .quasihom import CertifyConfig, certify_relative_qh, nonqh_linear_obstruction


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# -- polynomial parser ---------------------------------------------------------


@dataclass
class _Token:
    kind: str  # "num" | "ident" | one of ^ * + - / ( ) | "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            start_col = col
            while i < len(text) and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token("num", text[start:i], line, start_col))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(_Token("ident", text[start:i], line, start_col))
            continue
        if ch in "^*+-/()":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _PolyParser:
    def __init__(self, ring_: PolyRing, text: str):
        self.ring = ring_
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.take()

    def parse(self) -> Poly:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return value

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.take()
            sign = -1 if tok.kind == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.take()
                value = value * self.factor()
            elif tok.kind in ("num", "ident", "("):
                value = value * self.factor()  # implicit multiplication
            else:
                return value

    def factor(self) -> Poly:
        base = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num":
                raise ParseError("expected an integer exponent after '^'", tok.line, tok.col)
            self.take()
            return base ** int(tok.text)
        return base

    def base(self) -> Poly:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.take()
                den = self.peek()
                if den.kind != "num":
                    raise ParseError("expected an integer denominator after '/'",
                                     den.line, den.col)
                self.take()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.col)
                value /= int(den.text)
            return self.ring.const(value)
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.ring.names:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)
            return self.ring.var(self.ring.names.index(tok.text))
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}",
                         tok.line, tok.col)


def parse_poly(names: Sequence[str] | PolyRing, text: str) -> Poly:
    ring_ = names if isinstance(names, PolyRing) else PolyRing(tuple(names))
    return _PolyParser(ring_, text).parse()


# -- job documents ---------------------------------------------------------------


@dataclass
class JobSpec:
    variables: Tuple[str, ...]
    f_text: str
    xgen_texts: Tuple[str, ...]
    command: str = ""
    jet_bound: Optional[int] = None
    degree_cap: int = 30
    output_format: str = "table"

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.variables)

    def f(self) -> Poly:
        return parse_poly(self.ring, self.f_text)

    def xgens(self) -> Tuple[Poly, ...]:
        return tuple(parse_poly(self.ring, t) for t in self.xgen_texts)

    def pair(self) -> GermPair:
        return GermPair(self.f(), self.xgens())


def parse_job(text: str) -> JobSpec:
    """Parse a job document; errors carry line/column positions."""
    variables: Optional[Tuple[str, ...]] = None
    f_text: Optional[str] = None
    xgens: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno, 1)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "variables":
            if variables is not None:
                raise ParseError("duplicate 'variables' field", lineno, 1)
            names = tuple(v.strip() for v in value.split(",") if v.strip())
            if not names:
                raise ParseError("no variables declared", lineno, 1)
            if len(set(names)) != len(names):
                raise ParseError("variable names must be distinct", lineno, 1)
            for name in names:
                if not (name[0].isalpha() or name[0] == "_") or not all(
                    c.isalnum() or c == "_" for c in name
                ):
                    raise ParseError(f"bad variable name {name!r}", lineno, 1)
            variables = names
        elif key == "f":
            if f_text is not None:
                raise ParseError("duplicate 'f' field", lineno, 1)
            f_text = value
        elif key == "xgen":
            xgens.append(value)
        else:
            raise ParseError(f"unknown field {key!r}", lineno, 1)
    if variables is None:
        raise ParseError("missing 'variables' field", 1, 1)
    if f_text is None:
        raise ParseError("missing 'f' field", 1, 1)
    if not xgens:
        raise ParseError("at least one 'xgen' field is required", 1, 1)
    spec = JobSpec(variables, f_text, tuple(xgens))
    spec.pair()  # validate polynomials now so errors carry positions
    return spec


# -- commands ---------------------------------------------------------------------


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(doc: Dict[str, object], table: str, fmt: str) -> None:
    if fmt == "machine":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(table)


def _job_header(job: JobSpec, command: str) -> Dict[str, object]:
    return {
        "command": command,
        "variables": list(job.variables),
        "f": job.f().format(),
        "xgens": [g.format() for g in job.xgens()],
    }


def cmd_report(job: JobSpec) -> int:
    report = full_report(job.pair())
    doc = _job_header(job, "report")
    doc["report"] = report.to_dict()
    _emit(doc, report.format_table(), job.output_format)
    return 0 if report.all_applicable_hold() else 1


def cmd_verify_identities(job: JobSpec) -> int:
    report = full_report(job.pair())
    failures = [c for c in report.identity_checks if c.status == "fails"]
    doc = _job_header(job, "verify-identities")
    doc["report"] = report.to_dict()
    doc["failures"] = [c.name for c in failures]
    lines = [f"{c.name}: {c.status}" for c in report.identity_checks]
    verdict = "all applicable identities hold" if not failures else (
        "FAILED: " + ", ".join(c.name for c in failures)
    )
    _emit(doc, "\n".join(lines + [verdict]), job.output_format)
    return 0 if not failures else 1


def cmd_theta(job: JobSpec) -> int:
    fields = derlog.logarithmic_module(job.xgens())
    doc = _job_header(job, "theta")
    doc["theta_x"] = [[c.format() for c in d.coefficients] for d in fields]
    names = job.variables
    lines = []
    for k, delta in enumerate(fields):
        parts = [
            f"({c.format()})*d_{names[i]}"
            for i, c in enumerate(delta.coefficients)
            if not c.is_zero()
        ]
        lines.append(f"[{k}] " + (" + ".join(parts) if parts else "0"))
    _emit(doc, "\n".join(lines) if lines else "(zero module)", job.output_format)
    return 0


def cmd_qh(job: JobSpec) -> int:
    cfg = CertifyConfig(jet_bound=job.jet_bound, degree_cap=job.degree_cap)
    cert = certify_relative_qh(job.pair(), cfg)
    doc = _job_header(job, "qh")
    doc["certificate"] = cert.to_dict()
    lines = [f"status: {cert.status}"]
    if cert.weights is not None:
        lines.append("weights: " + ", ".join(str(w) for w in cert.weights.weights))
        lines.append("degrees: " + ", ".join(str(d) for d in cert.weights.degrees))
    if cert.coordinate_change is not None and cert.change_jet_order is not None:
        lines.append(f"coordinate change (jet order {cert.change_jet_order}):")
        for name, p in zip(job.variables, cert.coordinate_change):
            lines.append(f"  {name} -> {p.format()}")
    if cert.obstruction is not None:
        lines.append(f"obstruction: {json.dumps(cert.obstruction, sort_keys=True)}")
    _emit(doc, "\n".join(lines), job.output_format)
    return 0


# -- fixtures -----------------------------------------------------------------------

# Golden fixture values; each is re-derived by the identity suite in the tests,
# so a mismatch here flags an engine regression, not a data-entry doubt.
_FIXTURES: List[Dict[str, object]] = [
    {
        "name": "suspended-brieskorn-vs-cusp-surface",
        "variables": ("x", "y", "z"),
        "f": "x^2 + y^4 + z^5",
        "xgen": "y*z + x^3",
        "expected": {
            "mu_f": 12,
            "mu_h": 2,
            "mu_icis": 10,
            "mu_X_f": 22,
            "mu_Y_h": 12,
            "tau_icis": 10,
            "tau_X_f": 21,
            "tau_Y_h": 11,
            "taubar_pair": 9,
        },
        "qh_status": "refuted",
    },
    {
        "name": "linear-function-vs-nonisolated-surface",
        "variables": ("x", "y", "z"),
        "f": "x",
        "xgen": "x*y^3*z^3 + y^5 + z^5",
        "expected": {
            "mu_X_f": 1,
            "tau_X_f": 1,
        },
        "obstruction": {
            "dimension": 1,
            # Pinned by delta(f) = f; proportional to the module's Euler
            # direction with weights (-1/5, 1/5, 1/5).
            "spectrum": ["-1", "-1", "1"],
        },
        "qh_status": "refuted",
    },
]


def _run_fixture(fx: Dict[str, object]) -> Tuple[str, List[str]]:
    job = JobSpec(tuple(fx["variables"]), fx["f"], (fx["xgen"],))
    pair = job.pair()
    problems: List[str] = []
    report = full_report(pair)
    got = report.to_dict()
    for key, want in fx["expected"].items():
        if got[key] != want:
            problems.append(f"{key}: expected {want}, got {got[key]}")
    for check in report.identity_checks:
        if check.status == "fails":
            problems.append(f"identity {check.name} fails")
    if "obstruction" in fx:
        obs = nonqh_linear_obstruction(pair)
        want = fx["obstruction"]
        if obs.dimension != want["dimension"]:
            problems.append(
                f"obstruction dimension: expected {want['dimension']}, got {obs.dimension}"
            )
        got_spec = None if obs.spectrum is None else sorted(str(v) for v in obs.spectrum)
        if got_spec != sorted(want["spectrum"]):
            problems.append(f"obstruction spectrum: expected {want['spectrum']}, got {got_spec}")
    cert = certify_relative_qh(pair)
    if cert.status != fx["qh_status"]:
        problems.append(f"qh status: expected {fx['qh_status']}, got {cert.status}")
    return fx["name"], problems


def cmd_fixtures(fmt: str) -> int:
    results: List[Tuple[str, List[str]]] = []
    with ThreadPoolExecutor(max_workers=2) as pool:
        for name, problems in pool.map(_run_fixture, _FIXTURES):
            results.append((name, problems))
    doc = {
        "command": "fixtures",
        "results": [
            {"name": name, "ok": not problems, "problems": problems}
            for name, problems in results
        ],
    }
    lines = []
    ok = True
    for name, problems in results:
        if problems:
            ok = False
            lines.append(f"FAIL {name}")
            lines.extend(f"  - {p}" for p in problems)
        else:
            lines.append(f"PASS {name}")
    _emit(doc, "\n".join(lines), fmt)
    return 0 if ok else 1


# -- entry point ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singinv",
        description="Exact singularity invariants of pairs (f, X) and "
        "relative quasihomogeneity certificates.",
    )
    parser.add_argument("--format", choices=("table", "machine"), default="table")
    parser.add_argument("--jet-bound", type=int, default=None,
                        help="jet order for membership witnesses (default: automatic)")
    parser.add_argument("--degree-cap", type=int, default=30,
                        help="abort rather than exceed this total degree in jets")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("report", "compute all invariants and identity checks"),
        ("qh", "certify or refute relative quasihomogeneity"),
        ("theta", "print generators of the logarithmic module of X"),
        ("verify-identities", "exit nonzero if any applicable identity fails"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="job file path, or '-' for stdin")
    sub.add_parser("fixtures", help="run the built-in golden examples")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            return cmd_fixtures(args.format)
        job = parse_job(_read_input(args.input))
        job.command = args.command
        job.jet_bound = args.jet_bound
        job.degree_cap = args.degree_cap
        job.output_format = args.format
        handler = {
            "report": cmd_report,
            "qh": cmd_qh,
            "theta": cmd_theta,
            "verify-identities": cmd_verify_identities,
        }[args.command]
        return handler(job)
    except ParseError as exc:
        print(f"singinv: parse error: {exc}", file=sys.stderr)
        return 2
    except DegreeCapError as exc:
        print(f"singinv: degree cap: {exc}", file=sys.stderr)
        return 2
    except invariants.NotApplicableError as exc:
        print(f"singinv: {args.command}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, AssertionError) as exc:
        print(f"singinv: {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
