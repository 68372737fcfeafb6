"""Command-line interface: ``diagcat <command> [flags]``.

Exit codes: 0 when every assertion passes, 1 on a failed assertion (the
witness is printed), 2 on usage errors, 3 when a computation would exceed
the cell budget (``DIAGCAT_CELL_BUDGET``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Any, Sequence

from .diagram import DiagramError, classify, compose, parse_diagram
from .family import AlgebraContext, ClosureError, Family, FamilyError, multiply
from .homology import (
    BudgetExceeded,
    HomologyError,
    homology,
    reduced_bar_complex,
    require_specialized,
    unreduced_bar_complex,
)
from .idempotent import (
    IdempotentError,
    brauer_defect_idempotent,
    idempotent_report,
    mirror_idempotent,
    single_trundle,
    spheres_of_influence,
    tl_defect_idempotent,
)
from .linkstate import (
    Constraint,
    LinkStateError,
    enumerate_link_states,
    extract_link_states,
    parse_link_state,
    reachable,
)
from .ring import RingError, RingSpec, parse_ring
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_USAGE_ERRORS = (
    DiagramError,
    FamilyError,
    RingError,
    LinkStateError,
    IdempotentError,
    HomologyError,
    verify.VerifyError,
)


class UsageError(ValueError):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="rbr, rook, br, tl or rtl")
    p.add_argument("--n", type=int, help="number of strands")
    p.add_argument("--ring", help="z, q, fP, zmodM, poly or laurent")
    p.add_argument("--delta", help="loop parameter (integer, fraction, or 'delta')")
    p.add_argument("--eps", help="contractible-component parameter")
    p.add_argument("--floor", type=int, help="quotient by diagrams with at most this many through strands")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="list the basis diagrams")
    _common(p)

    p = sub.add_parser("multiply", help="multiply two diagrams")
    _common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--expect", help="assert the product: 'DIAGRAM;DELTA_EXP;EPS_EXP'")

    p = sub.add_parser("classify", help="planarity, missing edges, turnbacks, through count")
    _common(p)
    p.add_argument("--x", required=True)

    p = sub.add_parser("linkstate", help="link state extraction, reachability and enumeration")
    _common(p)
    p.add_argument("--x", help="diagram whose link states to extract")
    p.add_argument("--p", help="link state, e.g. '1-4,d2,d3,d5'")
    p.add_argument("--q", help="second link state: test reachability from --p")
    p.add_argument("--defects", type=int, help="enumerate link states with this many defects")
    p.add_argument("--constraint", default="any", choices=[c.value for c in Constraint])
    p.add_argument("--trundle", action="store_true", help="connect a defect-free planar --p")
    p.add_argument("--gardens", action="store_true", help="garden cuts of a planar --p")

    p = sub.add_parser("idempotent", help="construct and verify an idempotent for a link state")
    _common(p)
    p.add_argument("--p", required=True)
    p.add_argument("--kind", choices=("mirror", "brauer", "tl"))

    p = sub.add_parser("verify-lemma", help="run an exhaustive lemma suite")
    _common(p)
    p.add_argument("name", choices=list(verify.LEMMAS))

    p = sub.add_parser("homology", help="Tor of the trivial module")
    _common(p)
    p.add_argument("--cross-check", action="store_true", help="compare with the unreduced bar complex up to degree 2")

    p = sub.add_parser("verify-theorem", help="compute both sides of a theorem")
    _common(p)
    p.add_argument("name", choices=list(verify.THEOREMS))
    p.add_argument("--skip-hypotheses", action="store_true")

    p = sub.add_parser("selftest", help="quick run of every suite")
    _common(p)
    return parser


# -- argument helpers ----------------------------------------------------------


def _family(args, default: str | None = None) -> Family:
    text = args.family or default
    if text is None:
        raise UsageError("--family is required")
    return Family.parse(text)


def _n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 1:
        raise UsageError("--n must be positive")
    return args.n


def _ring(args, default: str) -> RingSpec:
    return parse_ring(args.ring or default)


def _params(args, ring: RingSpec):
    if ring.is_parametric:
        delta = ring.parse_elem(args.delta) if args.delta else ring.delta()
        eps = ring.parse_elem(args.eps) if args.eps else ring.eps()
    else:
        delta = ring.parse_elem(args.delta) if args.delta else ring(0)
        eps = ring.parse_elem(args.eps) if args.eps else ring(1)
    return delta, eps


def _context(args, ring_default: str, family_default: str | None = None) -> AlgebraContext:
    ring = _ring(args, ring_default)
    delta, eps = _params(args, ring)
    return AlgebraContext(_family(args, family_default), _n(args), ring, delta, eps, args.floor)


def _default_degree(args, ctx: AlgebraContext) -> int:
    if args.max_degree is not None:
        if args.max_degree < 0:
            raise UsageError("--max-degree must be non-negative")
        return args.max_degree
    return 2 if ctx.ring.kind == "Integers" and ctx.dim > 20 else 3


def _assert(name: str, ok: bool) -> dict:
    return {"name": name, "passed": bool(ok)}


# -- commands ------------------------------------------------------------------


def cmd_basis(args):
    ctx = _context(args, "poly")
    rows = [
        {"index": k, "diagram": d.to_text(), "through": d.through_count}
        for k, d in enumerate(ctx.basis)
    ]
    result = {"context": ctx.to_json(), "count": ctx.dim, "diagrams": [d.to_json() for d in ctx.basis]}
    return result, [], rows


def cmd_multiply(args):
    ctx = _context(args, "poly")
    n = ctx.n
    x, y = parse_diagram(args.x, n), parse_diagram(args.y, n)
    for d in (x, y):
        if not ctx.family.contains(d):
            raise UsageError(f"{d} is not a {ctx.family.value} diagram")
    scaled = compose(x, y)
    prod = multiply(ctx.element({x: 1}), ctx.element({y: 1}))
    ring = ctx.ring
    coeff = prod.coeffs.get(scaled.diagram, ring.zero)
    result = {
        "context": ctx.to_json(),
        "x": x.to_json(),
        "y": y.to_json(),
        "diagram": scaled.diagram.to_json(),
        "delta_exp": scaled.delta_exp,
        "eps_exp": scaled.eps_exp,
        "coefficient": ring.elem_to_json(coeff),
        "product": prod.to_json(),
    }
    rows = [
        {
            "diagram": scaled.diagram.to_text(),
            "delta_exp": scaled.delta_exp,
            "eps_exp": scaled.eps_exp,
            "coefficient": json.dumps(ring.elem_to_json(coeff), sort_keys=True),
        }
    ]
    checks = [_assert("closure", ctx.family.contains(scaled.diagram))]
    if args.expect:
        try:
            text, a, b = args.expect.split(";")
            want = (parse_diagram(text, n), int(a), int(b))
        except ValueError as exc:
            raise UsageError(f"--expect wants 'DIAGRAM;DELTA_EXP;EPS_EXP': {exc}") from exc
        result["expected"] = {"diagram": want[0].to_json(), "delta_exp": want[1], "eps_exp": want[2]}
        checks.append(_assert("expected-product", tuple(scaled) == want))
    return result, checks, rows


def cmd_classify(args):
    x = parse_diagram(args.x, args.n)
    f = classify(x)
    result = {"diagram": x.to_json(), **f._asdict()}
    result["families"] = [fam.value for fam in Family if fam.contains(x)]
    return result, [], [dict(f._asdict(), diagram=x.to_text())]


def cmd_linkstate(args):
    if args.x:
        x = parse_diagram(args.x, args.n)
        left, right = extract_link_states(x)
        result = {"diagram": x.to_json(), "left": left.to_json(), "right": right.to_json()}
        return result, [], [{"side": "left", "state": left.to_text()}, {"side": "right", "state": right.to_text()}]
    if args.defects is not None:
        states = enumerate_link_states(_n(args), args.defects, args.constraint)
        result = {"count": len(states), "states": [s.to_json() for s in states]}
        return result, [], [{"index": k, "state": s.to_text()} for k, s in enumerate(states)]
    if not args.p:
        raise UsageError("linkstate needs --x, --p or --defects")
    p = parse_link_state(args.p, args.n)
    if args.q:
        q = parse_link_state(args.q, p.n)
        ok = reachable(p, q)
        return {"p": p.to_json(), "q": q.to_json(), "reachable": ok}, [], [{"reachable": ok}]
    if args.trundle:
        q = single_trundle(p)
        from .linkstate import juxtaposition_components

        comps = juxtaposition_components(p, q)
        result = {"p": p.to_json(), "q": q.to_json(), "components": len(comps)}
        return result, [_assert("single-component", len(comps) == 1)], [{"q": q.to_text(), "components": len(comps)}]
    if args.gardens:
        parts = spheres_of_influence(p)
        result = {"p": p.to_json(), "cuts": list(parts.cuts), "defects": list(parts.defect_of)}
        return result, [], [{"garden": j + 1, "start": a, "stop": b} for j, (a, b) in enumerate(zip(parts.cuts, parts.cuts[1:]))]
    return {"p": p.to_json(), "planar": p.is_planar()}, [], [{"state": p.to_text(), "planar": p.is_planar()}]


def cmd_idempotent(args):
    p = parse_link_state(args.p, args.n)
    default_family = args.family or ("tl" if args.kind == "tl" else "br")
    family = Family.parse(default_family)
    kind = args.kind or ("tl" if family.planar else "brauer")
    ring = _ring(args, "laurent" if kind == "mirror" else "poly")
    delta, eps = _params(args, ring)
    ctx = AlgebraContext(family, p.n, ring, delta, eps)
    if kind == "mirror":
        e = mirror_idempotent(p, ctx)
    elif kind == "brauer":
        e = brauer_defect_idempotent(p)
    else:
        e = tl_defect_idempotent(p)
    report = idempotent_report(ctx, p, e)
    report["kind"] = kind
    report["context"] = ctx.to_json()
    checks = [_assert("idempotent", report["idempotent"]), _assert("principal_ideal", report["principal_ideal"])]
    if kind != "mirror":
        checks.append(_assert("ls_control", all(report["ls_control"])))
    if kind == "tl":
        checks.append(_assert("planar", classify(e).planar))
    row = {
        "p": p.to_text(),
        "e": e.to_text() if hasattr(e, "to_text") else json.dumps(report["e"]),
        "idempotent": report["idempotent"],
        "principal_ideal": report["principal_ideal"],
    }
    return report, checks, [row]


def _suite_output(res: verify.SuiteResult):
    data = res.to_json()
    row = {"name": res.name, "passed": res.passed, "checked": res.checked}
    return data, [_assert(res.name, res.passed)], [row]


def cmd_verify_lemma(args):
    return _suite_output(verify.run_lemma(args.name, args.n, jobs=args.jobs))


def _groups_json(groups) -> list:
    return [g.to_json() for g in groups]


def cmd_homology(args):
    ctx = _context(args, "f2")
    require_specialized(ctx)
    top = _default_degree(args, ctx)
    cx = reduced_bar_complex(ctx, top + 1)
    groups = homology(cx, top)
    ring = ctx.ring
    rows = [
        {
            "family": ctx.family.value,
            "n": ctx.n,
            "ring": str(ring),
            "delta": json.dumps(ring.elem_to_json(ctx.delta)),
            "eps": json.dumps(ring.elem_to_json(ctx.eps)),
            "floor": "" if ctx.floor is None else ctx.floor,
            "q": q,
            "rank": g.rank,
            "torsion": ";".join(map(str, g.torsion)),
        }
        for q, g in enumerate(groups)
    ]
    result = {"context": ctx.to_json(), "dims": cx.dims, "groups": _groups_json(groups)}
    checks = [_assert("tor0-is-ring", groups[0] == (1, ()))]
    if args.cross_check:
        low = min(top, 2)
        other = homology(unreduced_bar_complex(ctx, low + 1), low)
        result["unreduced"] = _groups_json(other)
        checks.append(_assert("reduced-equals-unreduced", other == groups[: low + 1]))
    return result, checks, rows


def cmd_verify_theorem(args):
    thm = verify.THEOREMS[args.name]
    ring = _ring(args, "f2")
    delta, eps = _params(args, ring)
    n = _n(args)
    probe = AlgebraContext(thm.family, n, ring, delta, eps, thm.floor)
    top = _default_degree(args, probe)
    res = verify.verify_theorem(
        args.name, n, ring, delta, eps, top, jobs=args.jobs, hypotheses=not args.skip_hypotheses
    )
    data = res.to_json()
    rows = [
        {"q": q, "lhs": json.dumps(a, sort_keys=True), "rhs": json.dumps(b, sort_keys=True), "equal": ok}
        for q, (a, b, ok) in enumerate(zip(data["details"]["lhs"], data["details"]["rhs"], data["details"]["per_degree"]))
    ]
    return data, [_assert(res.name, res.passed)], rows


def cmd_selftest(args):
    from .ring import prime_field

    suites = [verify.run_lemma(name, n) for name, n in (
        ("mirror-diagram", 4),
        ("ls-control", 3),
        ("easy-trundle", 4),
        ("hard-trundle", 6),
        ("single-trundle", 8),
        ("spheres", 8),
        ("rho-commute", 4),
        ("my-first-ideal", 3),
        ("direct-sum", 3),
        ("retract", 3),
    )]
    suites += [
        verify.closure_suite(3),
        verify.associativity_suite(args.seed, per_family=100, n_max=3),
        verify.filtration_suite(3),
        verify.reachability_suite(4),
        verify.double_diagram_suite(2),
        verify.augmentation_suite(3),
        verify.verify_theorem("sroka", 3, prime_field(2), 0, 1, 2),
        verify.verify_theorem("brauer-recovery", 2, parse_ring("z"), 1, 1, 2),
    ]
    data = {"suites": [s.to_json() for s in suites]}
    checks = [_assert(s.name, s.passed) for s in suites]
    rows = [{"name": s.name, "passed": s.passed, "checked": s.checked} for s in suites]
    return data, checks, rows


COMMANDS = {
    "basis": cmd_basis,
    "multiply": cmd_multiply,
    "classify": cmd_classify,
    "linkstate": cmd_linkstate,
    "idempotent": cmd_idempotent,
    "verify-lemma": cmd_verify_lemma,
    "homology": cmd_homology,
    "verify-theorem": cmd_verify_theorem,
    "selftest": cmd_selftest,
}


# -- output --------------------------------------------------------------------


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for k, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{k}]")
        return out
    return [(prefix, obj)]


def render(report: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        table = rows or [{"name": a["name"], "passed": a["passed"]} for a in report["assertions"]]
        if table:
            writer = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(table)
        return buf.getvalue().rstrip("\n")
    lines = [f"{k}: {json.dumps(v)}" for k, v in _flatten(report["result"], "result")]
    lines += [f"{'PASS' if a['passed'] else 'FAIL'} {a['name']}" for a in report["assertions"]]
    lines.append("passed: " + json.dumps(report["passed"]))
    return "\n".join(lines)


def run(argv: Sequence[str]) -> tuple[dict | None, list[dict], int, str]:
    """Parse and execute; returns ``(report, rows, exit code, format)``."""
    args = build_parser().parse_args(list(argv))
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    result, checks, rows = COMMANDS[args.command](args)
    passed = all(c["passed"] for c in checks)
    report = {"command": list(argv), "result": result, "assertions": checks, "passed": passed}
    return report, rows, EXIT_OK if passed else EXIT_FAIL, args.format


def _print_witness(report: dict) -> None:
    result = report["result"]
    found = []

    def walk(obj):
        if isinstance(obj, dict):
            if "witness" in obj:
                found.append(obj)
            for v in obj.values():
                walk(v)
        elif isinstance(obj, list):
            for v in obj:
                walk(v)

    walk(result)
    for item in found:
        print(f"witness ({item.get('name', '?')}): {json.dumps(item['witness'], sort_keys=True)}", file=sys.stderr)
        if item.get("replay"):
            print(f"replay: {item['replay']}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        report, rows, code, fmt = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except BudgetExceeded as exc:
        print(f"diagcat: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ClosureError as exc:
        print(f"diagcat: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, *_USAGE_ERRORS) as exc:
        print(f"diagcat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report, rows, fmt))
    if code:
        _print_witness(report)
    # wall time goes to stderr so the JSON on stdout stays byte-identical
    print(f"wall-time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
