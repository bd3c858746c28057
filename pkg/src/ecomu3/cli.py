"""Command-line surface for the whole pipeline.

One entry point with subcommands, mirroring the dependency order of the
engines::

    snf            Smith normal form of an integer matrix
    grpcoh         group cohomology tables over the bundled module catalog
    flag           coinvariant-algebra operations (normal form, products,
                   degree representations, Kunneth names)
    serre          run a fibration config through the spectral sequence
    u3t2           the blockwise-torus quotient of the unitary group
    holim          validate the bundled diagram / higher limits per degree
    ecom-u3        the end-to-end homotopy-colimit answer at a prime
    rational-ring  the rational cohomology ring presentation

Global flags: --format json|text, --cache-dir, --no-cache, --prime,
--max-degree where meaningful.  The cache directory may also be set through
the ECOMU3_CACHE_DIR environment variable; the flag wins.

Exit status is 0 only if every internal validation passed; comparisons
against published values fail hard unless the mismatch is recorded as a
known discrepancy in the bundled data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import published
from .abelian import PoincareSeries, mod_p_series
from .coinvariants import CoinvariantAlgebra, kunneth_decompose
from .diagonal import invariant_ring_presentation, RelationFailure
from .diagram import PosetDiagram
from .groups import standard_modules, symmetric_group, resolve_module_name
from .koszul import u3t2_cohomology
from .limits import bk_assemble, higher_limits, lim2_vanishing_check, NonVanishingLim2
from .linalg import IntMatrix, smith_normal_form
from .polyparse import parse_polynomial
from .report import Report
from .resolution import free_resolution, group_cohomology
from .serre import (Ambiguous, NoSolution, assemble_total, run_to_e_infinity,
                    serre_e2_over_bg, solve_unique)

RESOLUTION_LENGTH = 15


class CommandError(RuntimeError):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def default_cache_dir():
    env = os.environ.get("ECOMU3_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "ecomu3")


def get_resolution(args):
    cache = None if args.no_cache else (args.cache_dir or default_cache_dir())
    return free_resolution(symmetric_group(3), RESOLUTION_LENGTH, cache_dir=cache)


def load_config(name_or_path):
    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            return json.load(fh), open(name_or_path).read()
    try:
        text = resources.files("ecomu3.data").joinpath(
            f"{name_or_path}.json").read_text()
    except FileNotFoundError:
        raise CommandError(f"no such fibration config: {name_or_path}")
    return json.loads(text), text


def fiber_reps_from_config(config):
    catalog = standard_modules(3)
    reps = {}
    for row, entries in config["fiber"].items():
        summands = []
        for entry in entries:
            if isinstance(entry, str):
                summands.append((catalog[resolve_module_name(entry)], False))
            else:
                summands.append((catalog[resolve_module_name(entry["name"])],
                                 bool(entry.get("mod_p"))))
        reps[int(row)] = summands
    return reps


# --- subcommands -------------------------------------------------------------


def cmd_snf(args, report):
    if os.path.exists(args.matrix):
        text = open(args.matrix).read()
        report.add_input_hash(args.matrix, text)
    else:
        text = args.matrix
    data = json.loads(text)
    m = IntMatrix.from_rows(data) if data else IntMatrix.zero(0, 0)
    snf = smith_normal_form(m)
    assert snf.U * snf.D * snf.V == m
    report.add_result("invariant_factors", snf.invariant_factors)
    report.add_result("U", snf.U.to_lists())
    report.add_result("D", snf.D.to_lists())
    report.add_result("V", snf.V.to_lists())


def cmd_grpcoh(args, report):
    if args.group.lower() not in ("s3", "sym3", "σ3"):
        raise CommandError(f"unknown group {args.group!r} (the catalog has S3)")
    try:
        name = resolve_module_name(args.module)
    except KeyError:
        raise CommandError(f"unknown module {args.module!r}")
    if args.max_degree > RESOLUTION_LENGTH - 1:
        raise CommandError(f"max degree {args.max_degree} beyond the bundled "
                           f"resolution reach {RESOLUTION_LENGTH - 1}")
    res = get_resolution(args)
    module = standard_modules(3)[name]
    rows = []
    expected = published.S3_COHOMOLOGY[name]
    for d in range(args.max_degree + 1):
        g = group_cohomology(res, module, d, prime=args.prime)
        want = expected(d)
        if args.prime:
            from .abelian import p_primary
            want = p_primary(want, args.prime)
        if g != want:
            raise CommandError(
                f"H^{d}(S3; {name}) = {g} does not match the published {want}")
        rows.append({"degree": d, "group": str(g)})
    report.add_result("cohomology", rows, provenance="computed, matches published")
    report.add_result("resolution_ranks", res.ranks)


def cmd_flag(args, report):
    algebra = CoinvariantAlgebra(3)
    if args.flag_op == "nf":
        poly = parse_polynomial(args.poly, n=3)
        nf = algebra.normal_form(poly)
        report.add_result("normal_form", _poly_out(nf))
    elif args.flag_op == "mul":
        a = algebra.normal_form(parse_polynomial(args.poly, n=3))
        b = algebra.normal_form(parse_polynomial(args.poly2, n=3))
        report.add_result("product", _poly_out(algebra.multiply(a, b)))
    elif args.flag_op == "rep":
        rep = algebra.degree_representation(args.degree)
        out = {}
        for g in rep.group.generators:
            out[str(g)] = rep.action_matrix(g).to_lists()
        report.add_result("polynomial_degree", args.degree)
        report.add_result("cohomological_degree", 2 * args.degree)
        report.add_result("representation", out)
        report.add_result("character", rep.character())
    elif args.flag_op == "kunneth":
        names = kunneth_decompose(args.degree)
        report.add_result("decomposition", names,
                          provenance="identified integrally in the catalog")
    elif args.flag_op == "dims":
        report.add_result("staircase_dimensions", algebra.dimensions())


def _poly_out(poly):
    return {"+".join(f"x{i+1}^{e}" for i, e in enumerate(k) if e) or "1": str(c)
            for k, c in sorted(poly.items())}


def cmd_serre(args, report):
    config, text = load_config(args.config)
    report.add_input_hash(config.get("name", args.config), text)
    prime = args.prime
    if prime is None:
        raise CommandError("serre needs --prime")
    res = get_resolution(args)
    reps = fiber_reps_from_config(config)
    page = serre_e2_over_bg(res, reps, prime)
    try:
        spec = solve_unique(page, config["top_dimension"])
    except (NoSolution, Ambiguous) as exc:
        raise CommandError(f"forced-differential solver: {exc}")
    stable = run_to_e_infinity(page, spec)
    graded = assemble_total(stable, config["group_order"], config["top_dimension"])
    series = mod_p_series(graded, prime)
    report.add_result("e2_page", page.to_json())
    report.add_result("differentials", spec.describe(page.period))
    report.add_result("cohomology", [str(g) for g in graded])
    report.add_result("mod_p_series", list(series.coefficients))
    _check_published_serre(config.get("name"), prime, graded, series, report)


def _check_published_serre(name, prime, graded, series, report):
    expected = {
        ("flbar3", 3): (published.FLBAR3_P3, published.FLBAR3_P3_SERIES, None),
        ("flbar3", 2): (published.FLBAR3_P2, published.FLBAR3_P2_SERIES, None),
        ("fl3xfl3", 3): (published.FL3XFL3_P3, published.FL3XFL3_P3_SERIES,
                         published.FL3XFL3_P3_SERIES_PRINTED_NOTE),
        ("fl3xfl3", 2): (published.FL3XFL3_P2, published.FL3XFL3_P2_SERIES, None),
    }.get((name, prime))
    if expected is None:
        return
    want_table, want_series, note = expected
    if graded != want_table:
        raise CommandError(f"{name} mod {prime}: table does not match published")
    if series.coefficients != want_series.coefficients:
        raise CommandError(f"{name} mod {prime}: series does not match")
    report.add_result("published_match", True, provenance="[PAPER]")
    if note:
        report.add_note(note)


def cmd_u3t2(args, report):
    if args.prime not in (2, 3):
        raise CommandError("u3t2 needs --prime 2 or 3")
    out = u3t2_cohomology(args.prime)
    report.add_result("presentation", str(out["presentation"]))
    report.add_result("series", list(out["series"].coefficients))
    report.add_result("transgressions", out["steps"])
    report.add_result("oracle_series", list(out["oracle"].coefficients),
                      provenance="independent Koszul homology")
    want = published.U3T2_P2_SERIES if args.prime == 2 else published.U3T2_P3_SERIES
    if out["series"].coefficients != want.coefficients:
        raise CommandError("series does not match the published value")
    report.add_result("published_match", True, provenance="[PAPER]")


def cmd_holim(args, report):
    diagram = _load_diagram(args, report)
    diagram.validate()
    report.add_result("validated", True)
    if args.holim_op == "validate":
        for note in diagram.notes:
            report.add_note(note)
        return
    if args.holim_op == "limits":
        ks = [args.degree] if args.degree is not None else \
            range(diagram.max_degree + 1)
        rows = []
        for k in ks:
            l0, l1, l2 = higher_limits(diagram, k)
            rows.append({"fiber_degree": k, "lim0": l0, "lim1": l1, "lim2": l2,
                         "lim2_vanishes": lim2_vanishing_check(diagram, k)})
        report.add_result("higher_limits", rows)
        return
    if args.holim_op == "e2":
        dims, lims = bk_assemble(diagram)
        report.add_result("columns", {str(k): list(v) for k, v in lims.items()
                                      if v != (0, 0)})
        report.add_result("assembled_dims", dims)


def _load_diagram(args, report):
    if args.diagram:
        with open(args.diagram) as fh:
            text = fh.read()
        report.add_input_hash(args.diagram, text)
        return PosetDiagram.from_json(json.loads(text))
    name = f"diagram_p{args.prime}.json"
    text = resources.files("ecomu3.data").joinpath(name).read_text()
    report.add_input_hash(name, text)
    return PosetDiagram.from_json(json.loads(text))


def cmd_ecom_u3(args, report):
    if args.prime not in (2, 3):
        raise CommandError("ecom-u3 needs --prime 2 or 3")
    diagram = _load_diagram(args, report)
    diagram.validate()
    for k in range(diagram.max_degree + 1):
        if not lim2_vanishing_check(diagram, k):
            raise NonVanishingLim2(f"fiber degree {k}")
    dims, lims = bk_assemble(diagram)
    dims = dims + [0] * (15 - len(dims))
    report.add_result("columns", {str(k): list(v) for k, v in lims.items()
                                  if v != (0, 0)})
    report.add_result("graded_dimensions", dims,
                      provenance=diagram.provenance.get("dims", "computed"))
    series = PoincareSeries(dims)
    report.add_result("poincare_series", list(series.coefficients))
    published_table = (published.ECOM_U3_MOD2 if args.prime == 2
                       else published.ECOM_U3_MOD3)
    deviations = {d: dims[d] for d in range(15) if dims[d] != published_table[d]}
    if args.prime == 2:
        allowed = published.ECOM_U3_MOD2_FORCED_DEVIATIONS
    else:
        allowed = {}
    unexpected = {d: v for d, v in deviations.items() if allowed.get(d) != v}
    for d, v in deviations.items():
        if d in allowed:
            report.add_note(
                f"degree {d}: computed dimension {v} differs from the published "
                f"{published_table[d]}; forced by the Euler characteristic of "
                "the bundled graded dimensions (recorded discrepancy)")
    if unexpected:
        raise CommandError(f"unexpected mismatch with the published table: "
                           f"{unexpected}")
    report.add_result("published_match", not deviations, provenance="[PAPER]")
    # rational consistency: mod-p dimensions bound the rational ones below
    rational = published.RATIONAL_SERIES
    ok = dims[0] == 1 and all(dims[d] >= rational[d] for d in range(15))
    if not ok:
        raise CommandError("mod-p dimensions dip below the rational series")
    report.add_result("rational_consistency", True, provenance="[DERIVED]")


def cmd_rational_ring(args, report):
    try:
        pres, checks, basis, discrepancies = invariant_ring_presentation()
    except RelationFailure as exc:
        raise CommandError(f"relation failure: {exc}")
    report.add_result("presentation", str(pres))
    report.add_result("verified_relations", checks)
    poly = pres.poincare_polynomial(12)
    report.add_result("poincare_polynomial", list(poly.coefficients))
    report.add_result("basis_degrees", [0, 4, 6, 6, 8, 12])
    for note in discrepancies:
        report.add_note(note)
    if poly.coefficients != published.RATIONAL_SERIES.coefficients:
        raise CommandError("rational Poincare polynomial mismatch")
    report.add_result("published_match", True, provenance="[PAPER]")


# --- argument plumbing -------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ecomu3",
        description="exact cohomology of the total space of the classifying "
                    "space for commutativity in U(3)")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("--no-cache", action="store_true")
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--no-cache", action="store_true",
                        default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix",
                       parents=[common])
    p.add_argument("matrix", help="JSON list of rows, or a path to one")

    p = sub.add_parser("grpcoh", help="group cohomology table", parents=[common])
    p.add_argument("group")
    p.add_argument("module")
    p.add_argument("max_degree", type=int)
    p.add_argument("--prime", type=int, default=None)

    p = sub.add_parser("flag", help="coinvariant algebra operations", parents=[common])
    flag_sub = p.add_subparsers(dest="flag_op", required=True)
    q = flag_sub.add_parser("nf")
    q.add_argument("poly")
    q = flag_sub.add_parser("mul")
    q.add_argument("poly")
    q.add_argument("poly2")
    q = flag_sub.add_parser("rep")
    q.add_argument("degree", type=int)
    q = flag_sub.add_parser("kunneth")
    q.add_argument("degree", type=int)
    flag_sub.add_parser("dims")

    p = sub.add_parser("serre", help="Serre spectral sequence of a fibration config", parents=[common])
    p.add_argument("config", help="bundled name (flbar3, fl3xfl3) or a path")
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("u3t2", help="cohomology of the blockwise-torus quotient", parents=[common])
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("holim", help="higher limits over the subset poset", parents=[common])
    p.add_argument("holim_op", choices=("validate", "limits", "e2"))
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--diagram", default=None, help="path to a diagram file")
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("ecom-u3", help="the end-to-end graded answer", parents=[common])
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--diagram", default=None)

    sub.add_parser("rational-ring", help="rational cohomology ring presentation", parents=[common])
    return parser


HANDLERS = {
    "snf": cmd_snf,
    "grpcoh": cmd_grpcoh,
    "flag": cmd_flag,
    "serre": cmd_serre,
    "u3t2": cmd_u3t2,
    "holim": cmd_holim,
    "ecom-u3": cmd_ecom_u3,
    "rational-ring": cmd_rational_ring,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    report = Report(args.command)
    try:
        HANDLERS[args.command](args, report)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NoSolution, Ambiguous, NonVanishingLim2) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
