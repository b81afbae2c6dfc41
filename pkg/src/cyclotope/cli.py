"""Command line interface: ``cyclotope <verb> [target] [options]``.

Exit status: 0 success or match, 1 mismatch, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import ehrhart, embed, facets3, group, hull, structure
from .errors import InvalidInputError, ParseError, ResourceLimitError
from .group import CycleType
from .table1 import RECOMPUTED_ROWS, TABLE1

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
AFFINE_RANK_MAX_ORDER = 500

VERBS = ("info", "dimension", "degree", "edges", "structure", "ehrhart", "facets",
         "verify", "hull", "neighborly", "reproduce-table1")


def _parse_ints(s: str, what: str) -> tuple[int, ...]:
    if s is None or not s.strip():
        raise ParseError(f"empty {what}")
    values = []
    for pos, field_ in enumerate(s.split(",")):
        field_ = field_.strip()
        if not field_.isdigit():
            raise ParseError(f"field {pos} of {what} {s!r} is not a positive integer: {field_!r}", pos)
        v = int(field_)
        if v == 0:
            raise ParseError(f"field {pos} of {what} {s!r} is zero", pos)
        values.append(v)
    return tuple(values)


def parse_cycle_type(s: str) -> CycleType:
    """Parse ``"6,10,15"``; fixed points (1s) are dropped, the input is kept."""
    return CycleType(_parse_ints(s, "cycle type"))


def parse_abc(s: str) -> facets3.AbcSpec:
    values = _parse_ints(s, "a,b,c triple")
    if len(values) != 3:
        raise ParseError(f"expected exactly three integers, got {len(values)}")
    return facets3.AbcSpec(*values)


@dataclass
class Report:
    """What a verb produced: a JSON-able payload plus text lines."""

    data: dict
    lines: list[str]
    status: int = EXIT_OK
    files: dict = field(default_factory=dict)


def _target(args) -> tuple[CycleType, facets3.AbcSpec | None]:
    if getattr(args, "abc", None):
        spec = parse_abc(args.abc)
        return spec.cycle_type, spec
    if not args.target:
        raise ParseError("a cycle type (e.g. 6,10,15) or --abc a,b,c is required")
    return parse_cycle_type(args.target), None


def _budget(args) -> hull.HullBudget:
    return hull.HullBudget.from_env(max_points=args.budget_points, max_rays=args.budget_rays)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_info(args) -> Report:
    ct, _ = _target(args)
    rep = structure.classify(ct)
    deg = group.vertex_degree(ct)
    complete = group.graph_is_complete(ct)
    data = rep.as_dict() | {"input": list(ct.original), "order": ct.d, "n_points": ct.n_points,
                            "vertex_degree": deg, "graph_complete": complete}
    lines = [
        f"dim {rep.dim} vertices {ct.d} degree {deg} complete-graph {_yes(complete)}",
        f"cycle type {ct} (input {','.join(map(str, ct.original))}) n {ct.n_points}",
        f"classification {rep.classification} q {rep.q_join_multiplicity} "
        f"reduced {','.join(map(str, rep.reduced_type.original))}",
    ]
    if rep.facet_count is not None:
        lines.append(f"facets {rep.facet_count} (closed form)")
    return Report(data, lines)


def cmd_dimension(args) -> Report:
    ct, _ = _target(args)
    data = {
        "divisibility": structure.dimension_divisibility(ct),
        "roots_of_unity": structure.dimension_roots_of_unity(ct),
        "inclusion_exclusion": structure.dimension_inclusion_exclusion(ct),
    }
    if ct.d <= AFFINE_RANK_MAX_ORDER:
        data["affine_rank"] = embed.affine_rank(embed.all_vertices(ct))
    agree = len(set(data.values())) == 1
    data["agree"] = agree
    lines = [f"dim {data['divisibility']}"] + [f"  {k} {v}" for k, v in data.items() if k != "agree"]
    lines.append("AGREE" if agree else "DISAGREE")
    return Report(data, lines, EXIT_OK if agree else EXIT_MISMATCH)


def cmd_degree(args) -> Report:
    ct, _ = _target(args)
    deg = group.vertex_degree(ct)
    data = {"vertex_degree": deg, "graph_complete": group.graph_is_complete(ct)}
    lines = [f"degree {deg} of {ct.d - 1} complete-graph {_yes(data['graph_complete'])}"]
    status = EXIT_OK
    if ct.t <= group.SIEVE_MAX_CYCLES:
        data["sieve"] = group.vertex_degree_sieve(ct)
        lines.append(f"sieve {data['sieve']}")
        if data["sieve"] != deg:
            status = EXIT_MISMATCH
    return Report(data, lines, status)


def cmd_edges(args) -> Report:
    ct, _ = _target(args)
    pts = embed.all_vertices(ct)
    if len(pts) > args.budget_points_or_default:
        raise ResourceLimitError(f"{len(pts)} vertices exceed the point budget "
                                 f"{args.budget_points_or_default}")
    count = hull.edge_count(pts)
    expected = ct.d * group.vertex_degree(ct) // 2
    data = {"edges": count, "expected_from_degree": expected, "match": count == expected}
    lines = [f"edges {count} expected {expected} {'MATCH' if count == expected else 'MISMATCH'}"]
    return Report(data, lines, EXIT_OK if count == expected else EXIT_MISMATCH)


def cmd_structure(args) -> Report:
    ct, _ = _target(args)
    rep = structure.classify(ct)
    data = rep.as_dict()
    lines = [f"{k} {v}" for k, v in data.items()]
    return Report(data, lines)


def cmd_ehrhart(args) -> Report:
    ct, _ = _target(args)
    if ct.t == 2:
        series = ehrhart.ehrhart_two_orbit(ct)
        factor, power = ehrhart.two_orbit_factor(ct)
    elif ct.t <= 1:
        series = ehrhart.hstar_product_simplices(0, ct.d - 1)
        factor, power = series.numerator, 1
    else:
        raise InvalidInputError("closed-form Ehrhart series only for one or two cycles")
    values = ehrhart.ehrhart_values(series, args.kmax)
    data = series.as_dict() | {"values": values}
    lines = [series.render(factor, power), json.dumps(series.as_dict())]
    lines += [f"L({k}) = {v}" for k, v in enumerate(values)]
    return Report(data, lines)


def cmd_facets(args) -> Report:
    if not args.abc:
        raise ParseError("facets needs --abc a,b,c")
    spec = parse_abc(args.abc)
    ne = facets3.nonessential_facets(spec)
    cb = facets3.enumerate_checkerboard_facets(spec, args.budget_certs)
    bound = facets3.facet_lower_bound(spec)
    certs = ne + cb
    verified = sum(c.status == facets3.VERIFIED_FACET for c in certs)
    distinct = len({c.tight_set for c in certs}) == len(certs)
    data = {
        "abc": [spec.a, spec.b, spec.c],
        "nonessential": len(ne),
        "checkerboard": len(cb),
        "verified": verified,
        "pairwise_distinct": distinct,
        "lower_bound": bound,
    }
    ok = verified == len(certs) and distinct and len(certs) == bound
    lines = [
        f"{len(cb)} checkerboard certified + {len(ne)} nonessential, bound {bound}",
        f"verified {verified}/{len(certs)} distinct {_yes(distinct)}",
    ]
    if not args.certify_only:
        hrep = hull.facet_enumeration(spec.vertices(), _budget(args))
        frame = hull.AffineFrame(spec.vertices())
        cert_rows = {frame.reduce(c.hull_row()) for c in certs}
        hull_rows = set(hrep.inequalities)
        data["hull_facets"] = len(hull_rows)
        data["certificates_in_hull"] = cert_rows <= hull_rows
        ok = ok and cert_rows <= hull_rows
        lines.append(f"hull facets {len(hull_rows)} certificates-in-hull {_yes(cert_rows <= hull_rows)}"
                     + (" (bound attained)" if len(hull_rows) == bound else ""))
    files = {}
    if args.out:
        files[args.out] = "".join(json.dumps(c.as_json()) + "\n" for c in certs)
    return Report(data, lines, EXIT_OK if ok else EXIT_MISMATCH, files)


def _hull_points(args):
    ct, spec = _target(args)
    return ct, (spec.vertices() if spec else embed.all_vertices(ct))


def cmd_hull(args) -> Report:
    ct, pts = _hull_points(args)
    hrep = hull.facet_enumeration(pts, _budget(args))
    data = hrep.as_dict()
    summary = f"dim {hrep.dim} vertices {len(pts)} facets {len(hrep.inequalities)}"
    if args.out:
        as_json = args.format == "json" or args.out.endswith(".json")
        body = json.dumps(data) + "\n" if as_json else hrep.to_text()
        return Report({"dim": hrep.dim, "vertices": len(pts), "facets": len(hrep.inequalities)},
                      [summary], files={args.out: body})
    return Report(data, hrep.to_text().rstrip("\n").split("\n"))


def _load_cert_file(path: str):
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("EQ"):
        return "hrep", hull.HRepresentation.from_text(text)
    first = json.loads(stripped.splitlines()[0]) if stripped else {}
    if "inequalities" in first:
        return "hrep", hull.HRepresentation.from_dict(json.loads(text))
    return "certs", facets3.read_certificates(text.splitlines())


def cmd_verify(args) -> Report:
    if not args.cert:
        raise ParseError("verify needs --cert FILE")
    ct, pts = _hull_points(args)
    dim = structure.dimension_divisibility(ct)
    kind, payload = _load_cert_file(args.cert)
    if kind == "hrep":
        try:
            hull.verify_hrep(pts, payload)
            ok = payload.dim == dim
        except AssertionError:
            ok = False
        data = {"kind": "hrep", "inequalities": len(payload.inequalities), "valid": ok}
        lines = [f"hrep {len(payload.inequalities)} inequalities {'VALID' if ok else 'INVALID'}"]
        return Report(data, lines, EXIT_OK if ok else EXIT_MISMATCH)
    counts = {facets3.VERIFIED_FACET: 0, facets3.VERIFIED_FACE_ONLY: 0, facets3.FAILED: 0}
    mismatched = []
    for i, cert in enumerate(payload):
        status = facets3.certify(pts, dim, cert.functional, cert.offset, cert.tight_set)
        counts[status] += 1
        if status != cert.status:
            mismatched.append(i)
    ok = not mismatched and counts[facets3.FAILED] == 0
    data = {"kind": "certificates", "total": len(payload), "statuses": counts,
            "mismatched": mismatched}
    lines = [f"certificates {len(payload)} " + " ".join(f"{k} {v}" for k, v in counts.items()),
             "MATCH" if ok else f"MISMATCH at {mismatched[:10]}"]
    return Report(data, lines, EXIT_OK if ok else EXIT_MISMATCH)


def cmd_neighborly(args) -> Report:
    ct, _ = _target(args)
    rep = hull.neighborliness_probe(ct, args.l, args.sample, args.seed,
                                   require_hypothesis=not args.beyond_hypothesis)
    return Report(rep.as_dict(), [rep.summary()], EXIT_MISMATCH if rep.counterexample else EXIT_OK)


def reproduce_row(abc: tuple[int, int, int], full: bool, budget: hull.HullBudget) -> dict:
    spec = facets3.AbcSpec(*abc)
    expected = TABLE1.get(abc)
    if expected is None:
        raise InvalidInputError(f"{abc} is not a row of the table; rows are {sorted(TABLE1)}")
    dim = structure.dimension_inclusion_exclusion(spec.cycle_type)
    row = {"abc": list(abc), "dim": dim, "vertices": spec.vertex_count, "expected": expected}
    if full or abc in RECOMPUTED_ROWS:
        hrep = hull.facet_enumeration(spec.vertices(), budget)
        row |= {"dim": hrep.dim, "facets": len(hrep.inequalities), "mode": "recomputed"}
        row["match"] = (hrep.dim, spec.vertex_count, len(hrep.inequalities)) == (
            expected["dim"], expected["vertices"], expected["facets"])
    else:
        bound = facets3.facet_lower_bound(spec)
        row |= {"facet_bound": bound, "mode": "bound-checked"}
        row["match"] = (dim, spec.vertex_count) == (expected["dim"], expected["vertices"]) and (
            bound <= expected["facets"])
        row["bound_equals_table"] = bound == expected["facets"]
    return row


def _row_line(row: dict) -> str:
    if row["mode"] == "recomputed":
        verdict = "MATCH" if row["match"] else "MISMATCH"
        return f"dim {row['dim']} vertices {row['vertices']} facets {row['facets']} {verdict}"
    rel = "=" if row["bound_equals_table"] else "<="
    verdict = "BOUND-CHECKED" if row["match"] else "MISMATCH"
    return (f"dim {row['dim']} vertices {row['vertices']} facet-bound {row['facet_bound']} "
            f"{rel} table {row['expected']['facets']} {verdict}")


def cmd_reproduce_table1(args) -> Report:
    if args.row:
        spec = parse_abc(args.row)
        rows = [(spec.a, spec.b, spec.c)]
    else:
        rows = sorted(TABLE1)
    results = [reproduce_row(r, args.full, _budget(args)) for r in rows]
    ok = all(r["match"] for r in results)
    lines = [(f"({','.join(map(str, r['abc']))}) " if len(results) > 1 else "") + _row_line(r)
             for r in results]
    return Report({"rows": results}, lines, EXIT_OK if ok else EXIT_MISMATCH)


COMMANDS = {
    "info": cmd_info,
    "dimension": cmd_dimension,
    "degree": cmd_degree,
    "edges": cmd_edges,
    "structure": cmd_structure,
    "ehrhart": cmd_ehrhart,
    "facets": cmd_facets,
    "verify": cmd_verify,
    "hull": cmd_hull,
    "neighborly": cmd_neighborly,
    "reproduce-table1": cmd_reproduce_table1,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the main artefact to PATH")
    common.add_argument("--budget-points", type=int, metavar="N")
    common.add_argument("--budget-rays", type=int, metavar="N",
                        help=f"ray budget for the hull (default: ${hull.BUDGET_RAYS_ENV} or built-in)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cyclotope", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb not in ("facets", "reproduce-table1"):
            p.add_argument("target", nargs="?", help="cycle type, e.g. 6,10,15")
        if verb in ("facets", "hull", "verify", "info", "dimension", "degree", "edges", "neighborly"):
            p.add_argument("--abc", metavar="a,b,c", help="use P(a,b,c), i.e. cycle type ab,ac,bc")
        if verb == "facets":
            p.add_argument("--certify-only", action="store_true",
                           help="skip the full hull cross-check")
            p.add_argument("--budget-certs", type=int, default=facets3.DEFAULT_CERT_BUDGET)
        if verb == "ehrhart":
            p.add_argument("--kmax", type=int, default=6)
        if verb == "verify":
            p.add_argument("--cert", metavar="FILE")
        if verb == "neighborly":
            p.add_argument("--l", type=int, default=1)
            p.add_argument("--sample", type=int, default=None,
                           help="number of random subsets (default: all)")
            p.add_argument("--beyond-hypothesis", action="store_true",
                           help="probe even if the neighborliness precondition fails")
        if verb == "reproduce-table1":
            p.add_argument("--row", metavar="a,b,c")
            p.add_argument("--full", action="store_true",
                           help="recompute the hull for every requested row")
    return parser


def _emit(report: Report, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report.data, sort_keys=True) + "\n")
    else:
        stream.write("".join(line + "\n" for line in report.lines))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args.budget_points_or_default = args.budget_points or hull.HullBudget().max_points
    try:
        report = COMMANDS[args.verb](args)
    except (ParseError, InvalidInputError) as exc:
        print(f"cyclotope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"cyclotope: resource limit: {exc} {json.dumps(exc.stats, sort_keys=True)}",
              file=sys.stderr)
        return EXIT_RESOURCE
    for path, body in report.files.items():
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    _emit(report, args.format, sys.stdout)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
