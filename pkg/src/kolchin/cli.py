"""Command line entry point: ``python3 -m kolchin <subcommand> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 cap exceeded, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import (
    DEFAULT_BITS,
    DEFAULT_STEPS,
    Cap,
    CapExceeded,
    ackermann,
    ackermann_ext,
    coefficient_bound,
    type_zero_alt_bound,
    typical_dim_bound,
)
from .lattice import IndexedFamily, LatticeSet, family_polynomial, kolchin_polynomial
from .mu import build_concatenated, build_mu, m_frak, omega_mu_prefix, vol_mu
from .numeric import d_binomial_rep, macaulay_bracket
from .polynomial import NumericalPolynomial
from .suites import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dump(doc: dict) -> str:
    """Canonical machine-readable rendering; json.loads followed by dump is the identity."""
    return json.dumps(doc, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# input


def _load(source: str) -> dict:
    text = source if source.lstrip().startswith("{") else _read(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse document: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("document must be an object")
    return doc


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _polynomial_of(doc: dict) -> tuple[NumericalPolynomial, int, dict]:
    try:
        if "sets" in doc:
            fam = IndexedFamily.from_doc(doc)
            if not fam.sets:
                raise UsageError("family has no sets")
            return family_polynomial(fam), fam.m, {"n": fam.n}
        E = LatticeSet.from_doc(doc)
        return kolchin_polynomial(E), E.m, {}
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def polynomial_doc(p: NumericalPolynomial) -> dict:
    return {
        "coefficients": list(p.coeffs),
        "degree": p.degree,
        "type": p.degree if p.coeffs else "undefined",
        "typical_dim": p.leading if p.coeffs else "undefined",
        "expansion": p.render(),
    }


def cmd_kolchin(args, cap: Cap) -> tuple[dict, str]:
    p, m, extra = _polynomial_of(_load(args.input))
    doc = {"command": "kolchin", "m": m, **extra, **polynomial_doc(p)}
    head = f"constant {p.coeffs[0]}" if p.degree == 0 else p.render()
    lines = [
        f"{head}; type {doc['type']}; typical dim {doc['typical_dim']}",
        "coefficients (a_0..a_d in the C(t+i,i) basis): " + " ".join(str(a) for a in p.coeffs or (0,)),
        f"expansion: {p.render()}",
    ]
    return doc, "\n".join(lines)


def _try(fn):
    try:
        return fn(), None
    except CapExceeded as exc:
        return None, str(exc)


def cmd_bound(args, cap: Cap) -> tuple[dict, str]:
    r, m, n, tau = args.r, args.m, args.n, args.tau
    if r < 0 or m < 1 or n < 1 or not 0 <= tau <= m:
        raise UsageError("bound expects r >= 0, m >= 1, n >= 1 and 0 <= tau <= m")
    res = typical_dim_bound(r, m, n, tau, cap)
    doc = {"command": "bound", **res.to_doc()}
    if res.exceeds_cap:
        text = f"a_{tau} <= exceeds-cap\n  {res.expression}"
    else:
        text = f"a_{tau} <= {res.value}  ({res.provenance}: {res.expression})"
    if args.compare:
        j = m - tau
        coef, coef_err = _try(lambda: n * coefficient_bound(r, m, n, cap)[0] ** j)
        alt, alt_err = _try(lambda: type_zero_alt_bound(r, m, n, cap))
        doc["compare"] = {
            "coefficient_sum": coef if coef is not None else "exceeds-cap",
            "coefficient_sum_expression": f"n*D^{j}, D = C(C+m-1, C)*C, C = C({r},{m},{n})",
            "power_of_order": alt if alt is not None else "exceeds-cap",
            "power_of_order_expression": f"n*C({r},{m},{n})^{m}",
        }
        text += "\n" + "\n".join([
            f"{'dispatched':<18}{'coefficient sum':<24}{'n*C^m':<24}",
            f"{_cell(res.value):<18}{_cell(coef):<24}{_cell(alt):<24}",
        ])
    return doc, text


def _cell(v) -> str:
    return "exceeds-cap" if v is None else str(v)


def cmd_mu(args, cap: Cap) -> tuple[dict, str]:
    r0, m, n = args.r0, args.m, args.n
    if r0 < 0 or m < 1 or (n is not None and n < 1):
        raise UsageError("mu expects r0 >= 0, m >= 1 and n >= 1")
    if n is None:
        blocks = [build_mu(r0, m, cap)]
        n_eff = 1
    else:
        blocks = list(build_concatenated(r0, m, n, cap).blocks)
        n_eff = n
    last = blocks[-1]
    table = []
    if r0 > 0:
        for tau in range(m):
            value, pos = m_frak(r0, m, n_eff, tau, cap)
            table.append({"tau": tau, "M": value, "position": pos})
    prefixes = []
    for ell in range(1, len(last) + 1):
        exact = kolchin_polynomial(last.as_set(ell))
        closed = omega_mu_prefix(last, ell) if r0 > 0 else exact
        prefixes.append({"length": ell, "omega": list(exact.coeffs), "closed_form": list(closed.coeffs)})
    doc = {
        "command": "mu",
        "blocks": [dict(b.to_doc(), variable=n_eff - j, vol=vol_mu(b)) for j, b in enumerate(blocks)],
        "vol": sum(vol_mu(b) for b in blocks),
        "table": table,
        "prefix_polynomials": prefixes,
    }
    lines = []
    for j, b in enumerate(blocks):
        tag = f"block {j + 1} (variable {n_eff - j}, start {b.r0})" if n is not None else f"mu({r0}, {m})"
        lines.append(f"{tag}: " + ", ".join("(" + ",".join(map(str, p)) + ")" for p in b.elems))
        lines.append(f"  length {len(b)}, Vol {vol_mu(b)}")
    lines.append(f"Vol {doc['vol']}")
    if table:
        lines.append("tau  M  position")
        lines += [f"{row['tau']}  {row['M']}  {row['position']}" for row in table]
    lines.append("prefix polynomials (last block): length, omega, closed form")
    for row in prefixes:
        exact = NumericalPolynomial(tuple(row["omega"])).render()
        closed = NumericalPolynomial(tuple(row["closed_form"])).render()
        lines.append(f"{row['length']}  {exact}  |  {closed}")
    return doc, "\n".join(lines)


def cmd_macaulay(args, cap: Cap) -> tuple[dict, str]:
    a, d = args.a, args.d
    if a < 0 or d < 1:
        raise UsageError("macaulay expects a >= 0 and d >= 1")
    value = macaulay_bracket(a, d)
    terms = d_binomial_rep(a, d).terms() if a else []
    doc = {"command": "macaulay", "a": a, "d": d, "bracket": value,
           "representation": [[k, i] for k, i in terms]}
    rep = " + ".join(f"C({k},{i})" for k, i in terms) or "0"
    return doc, f"{a} = {rep}\n{a}^<{d}> = {value}"


def cmd_ackermann(args, cap: Cap) -> tuple[dict, str]:
    x, y = args.x, args.y
    if args.extended:
        if x < 0 or y < -1:
            raise UsageError("extended ackermann expects x >= 0 and y >= -1")
        value = ackermann_ext(x, y, cap, reading=args.reading)
    else:
        if x < 0 or y < 0:
            raise UsageError("ackermann expects nonnegative arguments")
        value = ackermann(x, y, cap)
    doc = {"command": "ackermann", "x": x, "y": y, "value": value, "extended": args.extended}
    return doc, f"A({x}, {y}) = {value}"


def cmd_verify(args, cap: Cap) -> tuple[dict, str]:
    try:
        rep = run_suite(args.suite, seed=args.seed, seeds=args.seeds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"command": "verify", **rep.to_doc()}
    lines = [f"{rep.suite}: {'pass' if rep.ok else 'FAIL'} ({rep.checked} checked, {rep.violations} violations)"]
    if rep.first is not None:
        lines.append(f"first counterexample: {json.dumps(doc['first_counterexample'], sort_keys=True)}")
    for key, val in sorted(doc["notes"].items()):
        lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
    return doc, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap-bits", type=int, default=None,
                        help=f"bit cap per intermediate integer (env KOLCHIN_CAP_BITS, default {DEFAULT_BITS})")
    common.add_argument("--cap-steps", type=int, default=None,
                        help=f"step cap per rewrite run (env KOLCHIN_CAP_STEPS, default {DEFAULT_STEPS})")

    parser = _Parser(prog="kolchin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kolchin", parents=[common], help="Kolchin polynomial of a lattice set or family")
    p.add_argument("input", help="document path, '-' for stdin, or an inline JSON object")
    p.set_defaults(func=cmd_kolchin)

    p = sub.add_parser("bound", parents=[common], help="typical differential dimension bound")
    for name in ("r", "m", "n", "tau"):
        p.add_argument(name, type=int)
    p.add_argument("--compare", action="store_true", help="also print the coefficient-sum bounds")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("mu", parents=[common], help="staircase sequence, volume and witness table")
    p.add_argument("r0", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--n", type=int, default=None, help="concatenate n blocks")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("macaulay", parents=[common], help="Macaulay bracket a^<d>")
    p.add_argument("a", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_macaulay)

    p = sub.add_parser("ackermann", parents=[common], help="Ackermann function")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("--extended", action="store_true", help="admit y = -1 and the A(0,1) convention")
    p.add_argument("--reading", choices=("literal", "alt"), default="literal")
    p.set_defaults(func=cmd_ackermann)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=200, help="random sets for seeded suites")
    p.set_defaults(func=cmd_verify)
    return parser


def resolve_cap(args) -> Cap:
    env = Cap.from_env()
    return Cap(bits=args.cap_bits if args.cap_bits is not None else env.bits,
               steps=args.cap_steps if args.cap_steps is not None else env.steps)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cap = resolve_cap(args)
    except ValueError as exc:
        print(f"error: bad cap in environment: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc, text = args.func(args, cap)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        doc = {"command": args.command, "value": "exceeds-cap", "expression": str(exc)}
        print(dump(doc) if args.format == "json" else f"exceeds-cap: {exc}")
        return EXIT_CAP
    print(dump(doc) if args.format == "json" else text)
    if doc.get("value") == "exceeds-cap":
        return EXIT_CAP
    if doc.get("command") == "verify" and doc["status"] != "pass":
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
