"""Command-line interface.

Each subcommand parses its inputs, calls one library routine and prints the
result.  Machine output is JSON (or CSV/SVG where noted) with rationals as
``"p/q"`` strings.  Errors print a JSON object on stderr and exit with
2 (input), 3 (certificate) or 4 (internal consistency).
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .chain import (ChainOfCycles, canonical_divisor, gonality_representatives,
                    is_equivalent, k_gonal_chain, normal_form)
from .errors import CertificateError, ConsistencyError, InputError
from .io import (chain_from_json, chain_to_json, chips_to_json, divisor_from_json,
                 divisor_to_json, dumps, load_json, skeleton_from_json, skeleton_to_json,
                 tableau_from_json, write_text)
from .numerics import bn_region, rho, rho_bar, rho_bar_terms
from .rational import q
from .reproduce import certificate_report, genus5
from .scrollar import (component_dimension_check, generate_scrollar, independence_slopes,
                       serial_subtract, subtraction_count, t_minus_one)
from .svg import bn_region_svg, skeleton_svg
from .tableaux import (dim_wrd, enumerate_parallel, enumerate_tableaux, generic_construction,
                       is_displacement_tableau, lattice_path, rank, torus, witness_tableau)
from .tropmap import (assign_well_spaced_lengths, build_generic_map, build_scroll_map,
                      check_assumptions, naive_well_spacedness)

EXIT_INPUT, EXIT_CERTIFICATE, EXIT_CONSISTENCY = 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


# input helpers ---------------------------------------------------------------

def _json_arg(value, what):
    """Inline JSON (starting with ``[`` or ``{``) or a path to a JSON file."""
    text = value.strip()
    if text[:1] in "[{":
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{what}: {exc.msg} at column {exc.colno}") from exc
    return load_json(value)


def _int_list(value, what):
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"{what}: expected comma-separated integers, got {value!r}") from exc


def _rational_list(value, what):
    try:
        return [q(x) for x in value.split(",") if x.strip()]
    except InputError as exc:
        raise InputError(f"{what}: {exc}") from exc


def _chain(args):
    if getattr(args, "chain", None):
        return chain_from_json(_json_arg(args.chain, "--chain"), str(args.chain))
    if getattr(args, "gonal", None):
        g, k = _int_list(args.gonal, "--gonal")
        return k_gonal_chain(g, k)
    if getattr(args, "profile", None):
        return ChainOfCycles.from_profile(_int_list(args.profile, "--profile"))
    raise InputError("give --chain FILE, --gonal G,K or --profile MU1,...")


def _add_chain_args(p):
    p.add_argument("--chain", help="chain JSON (file or inline)")
    p.add_argument("--gonal", help="k-gonal chain as G,K")
    p.add_argument("--profile", help="torsion profile as comma-separated integers")


def _divisor(chain, value, what="--divisor"):
    return divisor_from_json(chain, _json_arg(value, what), what)


def _tableau(value, what="--tableau"):
    return tableau_from_json(_json_arg(value, what), what)


def _emit(args, payload):
    text = dumps(payload)
    if getattr(args, "out", None):
        write_text(args.out, text)
    else:
        print(text)


# numerics ----------------------------------------------------------------------

def cmd_rho(args):
    _emit(args, {"g": args.g, "r": args.r, "d": args.d, "rho": rho(args.g, args.r, args.d)})


def cmd_rho_bar(args):
    value, where = rho_bar(args.g, args.r, args.d, args.k)
    terms = rho_bar_terms(args.g, args.r, args.d, args.k)
    _emit(args, {"g": args.g, "r": args.r, "d": args.d, "k": args.k, "value": value,
                 "maximizers": sorted(where), "terms": {str(k): v for k, v in terms.items()}})


def cmd_bn_region(args):
    region = bn_region(args.g, args.k, args.x_max, args.y_max, args.step)
    lines = ["x,y,r,d,rho_bar,nonempty"]
    for x, y, r, d, value, nonempty in region.points:
        lines.append(f"{x},{y},{r},{d},{'' if value is None else value},{int(nonempty)}")
    csv = "\n".join(lines)
    if args.csv:
        write_text(args.csv, csv)
    else:
        print(csv)
    if args.svg:
        write_text(args.svg, bn_region_svg(region))


# chain and divisors ------------------------------------------------------------

def cmd_chain_new(args):
    if args.gonal:
        g, k = _int_list(args.gonal, "--gonal")
        chain = k_gonal_chain(g, k)
    elif args.profile:
        chain = ChainOfCycles.from_profile(_int_list(args.profile, "--profile"))
    else:
        raise InputError("give --gonal G,K or --profile MU1,...")
    if args.bridges:
        chain = chain.with_bridges(_rational_list(args.bridges, "--bridges"))
    _emit(args, chain_to_json(chain))


def cmd_chain_show(args):
    chain = _chain(args)
    out = chain_to_json(chain)
    out["profile"] = list(chain.profile)
    _emit(args, out)


def cmd_normal_form(args):
    chain = _chain(args)
    _emit(args, divisor_to_json(normal_form(chain, _divisor(chain, args.divisor))))


def cmd_equivalent(args):
    chain = _chain(args)
    a = _divisor(chain, args.divisor)
    b = _divisor(chain, args.other, "--other")
    _emit(args, {"equivalent": is_equivalent(chain, a, b)})


def cmd_rank(args):
    chain = _chain(args)
    D = normal_form(chain, _divisor(chain, args.divisor))
    r = rank(chain, D)
    out = {"degree": D.d, "rank": r}
    if r >= 0:
        out["witness"] = witness_tableau(chain, D, r).to_lists()
    _emit(args, out)


def cmd_canonical(args):
    chain = _chain(args)
    K = canonical_divisor(chain)
    out = chips_to_json(K)
    out.update(divisor_to_json(normal_form(chain, K)))
    _emit(args, out)


def cmd_gonality(args):
    chain = _chain(args)
    k = args.k if args.k is not None else chain.k
    if k is None:
        raise InputError("chain has no gonality; pass --k")
    E, E0, E1 = gonality_representatives(chain, k)
    _emit(args, {"E": chips_to_json(E), "E0": chips_to_json(E0), "E1": chips_to_json(E1),
                 "normal": divisor_to_json(normal_form(chain, E))["normal"]})


# tableaux ----------------------------------------------------------------------

def cmd_enumerate(args):
    chain = _chain(args)
    D = normal_form(chain, _divisor(chain, args.divisor)) if args.divisor else None
    if args.parallel and args.parallel > 1:
        stream = enumerate_parallel(chain.g, chain.profile, args.cols, args.rows,
                                    args.parallel, D, args.limit)
    else:
        stream = enumerate_tableaux(chain.g, chain.profile, args.cols, args.rows, D)
    count = 0
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for t in stream:
            if args.limit is not None and count >= args.limit:
                break
            out.write(json.dumps(t.to_lists()) + "\n")
            count += 1
    finally:
        if args.out:
            out.close()


def cmd_validate(args):
    chain = _chain(args)
    t = _tableau(args.tableau)
    ok = is_displacement_tableau(t, chain.profile)
    out = {"valid": ok}
    if ok:
        out["torus_dimension"] = torus(t, chain).dimension
        if args.divisor:
            out["contains"] = torus(t, chain).contains(
                normal_form(chain, _divisor(chain, args.divisor)))
    _emit(args, out)


def cmd_dim_wrd(args):
    chain = _chain(args)
    _emit(args, {"g": chain.g, "r": args.r, "d": args.d,
                 "dim": dim_wrd(chain, args.r, args.d, args.limit)})


def cmd_lattice_path(args):
    t = _tableau(args.tableau)
    p = lattice_path(t, g=args.g)
    _emit(args, {"r": p.r, "steps": [list(s) for s in p.steps]})


# scrollar ----------------------------------------------------------------------

def cmd_generate(args):
    _emit(args, generate_scrollar(args.a, args.b, args.k, args.cols, args.rows).to_lists())


def cmd_minus_one(args):
    t = _tableau(args.tableau)
    for _ in range(args.times):
        t = t_minus_one(t, args.a, args.b, args.k)
    _emit(args, t.to_lists())


def cmd_check_dim(args):
    t = _tableau(args.tableau)
    _emit(args, component_dimension_check(t, args.a, args.b, args.k, args.g))


def cmd_slopes(args):
    _emit(args, independence_slopes(_tableau(args.tableau), args.a, args.b, args.k))


def cmd_serial_subtract(args):
    chain = _chain(args)
    t = _tableau(args.tableau)
    D = _divisor(chain, args.divisor)
    m = args.m if args.m is not None else subtraction_count(t, args.a, args.b)
    steps = serial_subtract(chain, t, args.a, args.b, D, m)
    _emit(args, [{"i": s.i, "divisor": divisor_to_json(s.divisor), "tableau": s.tableau.to_lists(),
                  "contained": s.contained} for s in steps])


# maps --------------------------------------------------------------------------

def _construction(args, chain, t):
    if args.xi:
        return _rational_list(args.xi, "--xi")
    return generic_construction(chain, t, seed=args.seed, avoid=False)


def _write_map(args, sk):
    payload = skeleton_to_json(sk)
    _emit(args, payload)
    if args.svg:
        write_text(args.svg, skeleton_svg(sk, tuple(_int_list(args.coords, "--coords"))))


def cmd_build_generic(args):
    chain = _chain(args)
    t = _tableau(args.tableau)
    sk = build_generic_map(chain, t, _construction(args, chain, t))
    _write_map(args, sk)


def cmd_build_scroll(args):
    chain = _chain(args)
    t = _tableau(args.tableau)
    top = t
    for _ in range(subtraction_count(t, args.a, args.b) - 1):
        top = t_minus_one(top, args.a, args.b, chain.k)
    sk = build_scroll_map(chain, t, args.a, args.b, _construction(args, chain, top))
    _write_map(args, sk)


def cmd_certify(args):
    sk = skeleton_from_json(_json_arg(args.skeleton, "--skeleton"), str(args.skeleton))
    lengths = None
    if args.tune:
        lengths = assign_well_spaced_lengths(sk, q(args.base))
    report = certificate_report(check_assumptions(sk), naive_well_spacedness(sk), lengths)
    if args.tuned_out:
        write_text(args.tuned_out, dumps(skeleton_to_json(sk)))
    _emit(args, report)
    if args.strict and not report["realizable"]:
        raise CertificateError("skeleton fails the realizability certificate")


# worked example ----------------------------------------------------------------

def cmd_example_genus5(args):
    report, sk = genus5()
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir is not None:
        write_text(out_dir / "genus5_report.json", dumps(report))
        write_text(out_dir / "genus5_skeleton.json", dumps(skeleton_to_json(sk)))
        write_text(out_dir / "genus5_skeleton.svg", skeleton_svg(sk, (0, 1)))
    table = report["rank_table"]
    lines = ["i degree rank"] + [f"{row['i']} {row['degree']} {row['rank']}" for row in table]
    if args.format == "text":
        print("\n".join(lines))
        print("naively-well-spaced: " + str(report["certificates"]["naively-well-spaced"]).lower())
    else:
        print(dumps(report))


# parser ------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="kgonal", description="Brill-Noether computations on chains of cycles.")
    p.add_argument("--version", action="version", version=f"kgonal {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, func, help_text):
        sp = parent.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output to this file")
        return sp

    def grd(sp, k=False):
        sp.add_argument("--g", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--d", type=int, required=True)
        if k:
            sp.add_argument("--k", type=int, required=True)

    grd(leaf(sub, "rho", cmd_rho, "Brill-Noether number"))
    grd(leaf(sub, "rho-bar", cmd_rho_bar, "k-gonal Brill-Noether number"), k=True)
    sp = leaf(sub, "bn-region", cmd_bn_region, "CSV grid and SVG of the nonempty region")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x-max", type=int, default=8)
    sp.add_argument("--y-max", type=int, default=8)
    sp.add_argument("--step", type=float, default=0.05)
    sp.add_argument("--csv")
    sp.add_argument("--svg")

    chain = sub.add_parser("chain", help="chains of cycles").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = leaf(chain, "new", cmd_chain_new, "build a chain")
    sp.add_argument("--gonal")
    sp.add_argument("--profile")
    sp.add_argument("--bridges", help="comma-separated bridge lengths")
    _add_chain_args(leaf(chain, "show", cmd_chain_show, "normalize and print a chain"))

    div = sub.add_parser("divisor", help="divisor classes").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func in (("normal-form", cmd_normal_form), ("rank", cmd_rank)):
        sp = leaf(div, name, func, name)
        _add_chain_args(sp)
        sp.add_argument("--divisor", required=True)
    sp = leaf(div, "equivalent", cmd_equivalent, "linear equivalence")
    _add_chain_args(sp)
    sp.add_argument("--divisor", required=True)
    sp.add_argument("--other", required=True)
    _add_chain_args(leaf(div, "canonical", cmd_canonical, "canonical divisor"))
    sp = leaf(div, "gonality", cmd_gonality, "pencil representatives E, E0, E1")
    _add_chain_args(sp)
    sp.add_argument("--k", type=int)

    tab = sub.add_parser("tableaux", help="displacement tableaux").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = leaf(tab, "enumerate", cmd_enumerate, "stream tableaux as JSON lines")
    _add_chain_args(sp)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--divisor")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--parallel", type=int, default=1)
    sp = leaf(tab, "validate", cmd_validate, "check a tableau")
    _add_chain_args(sp)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--divisor")
    sp = leaf(tab, "dim-wrd", cmd_dim_wrd, "dimension of W^r_d on the chain")
    _add_chain_args(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--limit", type=int, help="cap on search nodes")
    sp = leaf(tab, "lattice-path", cmd_lattice_path, "lattice path of a tableau")
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--g", type=int)

    scr = sub.add_parser("scrollar", help="scrollar tableaux").add_subparsers(
        dest="action", required=True, parser_class=_Parser)

    def abk(sp):
        sp.add_argument("--a", type=int, required=True)
        sp.add_argument("--b", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)

    sp = leaf(scr, "generate", cmd_generate, "canonical scrollar filling")
    abk(sp)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--rows", type=int, required=True)
    sp = leaf(scr, "minus-one", cmd_minus_one, "t(-1), optionally repeated")
    abk(sp)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--times", type=int, default=1)
    sp = leaf(scr, "check-dim", cmd_check_dim, "torus dimension against the formula")
    abk(sp)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp = leaf(scr, "slopes", cmd_slopes, "bridge slopes of the independence argument")
    abk(sp)
    sp.add_argument("--tableau", required=True)
    sp = leaf(scr, "serial-subtract", cmd_serial_subtract, "subtract the pencil repeatedly")
    _add_chain_args(sp)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--divisor", required=True)
    sp.add_argument("--m", type=int)

    mp = sub.add_parser("map", help="tropical maps and certificates").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func in (("build-generic", cmd_build_generic), ("build-scroll", cmd_build_scroll)):
        sp = leaf(mp, name, func, name)
        _add_chain_args(sp)
        sp.add_argument("--tableau", required=True)
        sp.add_argument("--xi", help="construction coordinates, comma separated")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--svg")
        sp.add_argument("--coords", default="0,1", help="coordinates for the SVG projection")
        if name == "build-scroll":
            sp.add_argument("--a", type=int, required=True)
            sp.add_argument("--b", type=int, required=True)
    sp = leaf(mp, "certify", cmd_certify, "assumption and well-spacedness checks")
    sp.add_argument("--skeleton", required=True)
    sp.add_argument("--tune", action="store_true", help="apply the bridge-length recipe first")
    sp.add_argument("--base", default="1000")
    sp.add_argument("--strict", action="store_true", help="exit 3 unless certified")
    sp.add_argument("--tuned-out", help="write the tuned skeleton here")

    ex = sub.add_parser("example", help="worked examples").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = ex.add_parser("genus5", help="trigonal genus-5 chain end to end")
    sp.set_defaults(func=cmd_example_genus5)
    sp.add_argument("--out-dir")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _fail(kind, exc, code):
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc), "exit": code},
                                sort_keys=True) + "\n")
    return code


def run(argv=None):
    """Parse ``argv`` and run one subcommand; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except InputError as exc:
        return _fail(type(exc).__name__, exc, EXIT_INPUT)
    except CertificateError as exc:
        return _fail("CertificateError", exc, EXIT_CERTIFICATE)
    except ConsistencyError as exc:
        return _fail("ConsistencyError", exc, EXIT_CONSISTENCY)
    return 0


def main():
    sys.exit(run())

