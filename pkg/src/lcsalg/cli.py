"""Command line interface: ``lcs <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .catalog import get_entry, get_group, select
from .cohomology import betti_numbers, dixmier_check
from .exactmath import RatMatrix, frac
from .liealg import KForm, LieAlgebra, LieError, format_form, signature
from .notation import ParseError, parse_form_expr, parse_structure_notation, to_structure_notation
from .polyforms import GroupModel
from .structures import (StructureError, check_complex_structure, classify_kind,
                         verify_contact, verify_lcs, verify_lcs_first_kind, verify_symplectic)

SEED_ENV = "LCS_SEED"


class InputError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}")


def load_algebra(spec: str) -> LieAlgebra:
    """A catalog key or label, a structure-notation string, or a JSON file."""
    if spec.startswith("("):
        return parse_structure_notation(spec)
    if os.path.isfile(spec):
        with open(spec) as fh:
            data = json.load(fh)
        if "notation" in data and "brackets" not in data:
            return parse_structure_notation(data["notation"], data.get("label"))
        return LieAlgebra.from_json(data)
    try:
        return get_entry(spec).algebra
    except KeyError:
        raise InputError(f"unknown algebra {spec!r}: not a catalog key, notation string or file")


def _form(text: str | None, alg: LieAlgebra, degree: int, name: str) -> KForm | None:
    if text is None:
        return None
    f = parse_form_expr(text, alg.dim)
    if f.degree != degree:
        raise InputError(f"--{name} must be a {degree}-form")
    return f


def _matrix(text: str | None, n: int, name: str) -> RatMatrix | None:
    """Matrix from JSON rows; column j is the image of e_j."""
    if text is None:
        return None
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        rows = json.loads(text)
        m = RatMatrix([[frac(x) for x in r] for r in rows])
    except (ValueError, TypeError) as exc:
        raise InputError(f"--{name}: expected a JSON list of rows ({exc})")
    if m.shape != (n, n):
        raise InputError(f"--{name} must be {n}x{n}")
    return m


def _vector(text: str | None, n: int, name: str):
    if text is None:
        return None
    try:
        v = tuple(frac(x) for x in json.loads(text))
    except (ValueError, TypeError) as exc:
        raise InputError(f"--{name}: expected a JSON list ({exc})")
    if len(v) != n:
        raise InputError(f"--{name} must have length {n}")
    return v


def _notation(alg: LieAlgebra) -> str | None:
    try:
        return to_structure_notation(alg)
    except ValueError:
        return None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    alg = parse_structure_notation(args.notation)
    sig = signature(alg)
    nota = to_structure_notation(alg)
    payload = {"notation": nota, "algebra": alg.to_json(), "signature": sig.to_json()}
    lines = [f"canonical: {nota}", f"dim: {alg.dim}", f"betti: {list(sig.betti)}",
             f"lower central series: {list(sig.lower_central)}"]
    if sig.filtration is not None:
        lines.append(f"filtration profile: {list(sig.filtration)}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    alg = load_algebra(args.algebra)
    results = {}
    ok = True
    try:
        if args.eta is not None:
            st = verify_lcs_first_kind(alg, _form(args.omega, alg, 1, "omega"), _form(args.eta, alg, 1, "eta"))
            results["lcs_first_kind"] = st.to_json()
        elif args.phi is not None:
            verify_lcs(alg, _form(args.phi, alg, 2, "phi"), _form(args.omega, alg, 1, "omega"))
            results["lcs"] = True
        if args.sigma is not None:
            results["symplectic"] = verify_symplectic(alg, _form(args.sigma, alg, 2, "sigma")).to_json()
        if args.theta is not None:
            results["contact"] = verify_contact(alg, _form(args.theta, alg, 1, "theta")).to_json()
        if args.J is not None:
            v = check_complex_structure(alg, _matrix(args.J, alg.dim, "J"))
            results["complex"] = v.to_json()
            ok = ok and v.integrable
    except StructureError as exc:
        results["error"] = str(exc)
        ok = False
    if not results:
        raise InputError("nothing to verify: give --omega/--eta, --phi/--omega, --sigma, --theta or --J")
    results["ok"] = ok
    lines = []
    for k, v in results.items():
        if k == "ok":
            continue
        if k == "error":
            lines.append(f"rejected: {v}")
        elif k == "complex" and not v["integrable"]:
            viol = v["violation"]
            lines.append(f"complex: not integrable, N(e{viol['i']}, e{viol['j']}) = ({', '.join(viol['N'])})")
        else:
            lines.append(f"{k}: ok")
    text = "\n".join(lines)
    _emit(args, results, text + f"\nresult: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_classify(args) -> int:
    alg = load_algebra(args.algebra)
    omega = _form(args.omega, alg, 1, "omega")
    if args.eta is not None:
        phi = verify_lcs_first_kind(alg, omega, _form(args.eta, alg, 1, "eta")).phi
    elif args.phi is not None:
        phi = _form(args.phi, alg, 2, "phi")
    else:
        raise InputError("give --phi or --eta")
    try:
        rep = classify_kind(alg, phi, omega)
    except StructureError as exc:
        _emit(args, {"error": str(exc)}, f"not an lcs structure: {exc}")
        return 1
    text = [f"kind: {rep.kind}", f"dim g_phi: {rep.dim}", f"exact: {rep.exact}"]
    if rep.eta is not None:
        text.append(f"eta: {format_form(rep.eta)}")
    _emit(args, rep.to_json(), "\n".join(text))
    return 0


def cmd_cohomology(args) -> int:
    alg = load_algebra(args.algebra)
    twist = _form(args.twist, alg, 1, "twist")
    rep = betti_numbers(alg, twist, bases=args.bases)
    payload = rep.to_json()
    text = rep.markdown()
    if args.dixmier and twist is not None:
        payload["dixmier_vanishing"] = dixmier_check(alg, twist)
        text += f"\ndixmier vanishing: {'yes' if payload['dixmier_vanishing'] else 'no'}"
    _emit(args, payload, text)
    return 0


def cmd_extend(args) -> int:
    from .extensions import central_extend, double_extension, lcs_extension, semidirect_extend
    alg = load_algebra(args.algebra)
    n = alg.dim
    extra = {}
    if args.mode == "semidirect":
        D = _need(_matrix(args.D, n, "D"), "D")
        out = semidirect_extend(alg, D)
    elif args.mode == "central":
        sigma = _need(_form(args.sigma, alg, 2, "sigma"), "sigma")
        out, contact = central_extend(alg, sigma)
        extra["contact"] = contact.to_json() if contact else None
    elif args.mode == "lcs":
        sigma = _need(_form(args.sigma, alg, 2, "sigma"), "sigma")
        D = _matrix(args.D, n, "D") if args.D else RatMatrix.zeros(n, n)
        out, st = lcs_extension(alg, sigma, D)
        extra["lcs"] = st.to_json()
    else:
        sigma = _need(_form(args.sigma, alg, 2, "sigma"), "sigma")
        D = _matrix(args.D, n, "D") if args.D else RatMatrix.zeros(n, n)
        Z = _need(_vector(args.Z, n, "Z"), "Z")
        out, sig = double_extension(alg, sigma, D, Z)
        extra["sigma"] = format_form(sig)
    nota = _notation(out)
    payload = {"algebra": out.to_json(), "notation": nota, **extra}
    _emit(args, payload, f"{nota or out.to_json()}" + "".join(f"\n{k}: {v}" for k, v in extra.items() if isinstance(v, str)))
    return 0


def _need(value, name):
    if value is None:
        raise InputError(f"--{name} is required for this mode")
    return value


def cmd_scan(args) -> int:
    from .search import contact_exists, lcs_first_kind_search, symplectic_exists
    seed = args.seed if args.seed is not None else default_seed()
    targets = []
    if args.scope:
        targets = [(e.key, e.algebra) for e in select(args.scope)]
    if args.algebra:
        targets.append((args.algebra, load_algebra(args.algebra)))
    if not targets:
        raise InputError("give an algebra or --scope")
    rows = []
    for name, alg in targets:
        row = {"algebra": name, "dim": alg.dim}
        if alg.dim % 2 == 0:
            v = lcs_first_kind_search(alg, budget=args.budget, seed=seed, omega_bound=args.omega_bound)
            row["lcs_first_kind"] = v.summary()
            row["lcs_certificate"] = v.certificate.to_json() if v.certificate is not None else None
            row["trials"] = len(v.log)
            row["symplectic"] = symplectic_exists(alg, seed=seed).summary()
        else:
            row["contact"] = contact_exists(alg, seed=seed).summary()
        rows.append(row)
    fmt = "json" if args.json else args.report
    if fmt == "json":
        print(json.dumps({"seed": seed, "results": rows}, indent=2, default=str))
    elif fmt == "csv":
        import csv
        keys = ["algebra", "dim", "lcs_first_kind", "symplectic", "contact", "trials"]
        w = csv.DictWriter(sys.stdout, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
    else:
        print("| algebra | dim | lcs first kind | symplectic | contact |")
        print("|---|---|---|---|---|")
        for r in rows:
            print(f"| {r['algebra']} | {r['dim']} | {r.get('lcs_first_kind', '-')} | "
                  f"{r.get('symplectic', '-')} | {r.get('contact', '-')} |")
    return 0


def cmd_polycheck(args) -> int:
    if os.path.isfile(args.model):
        with open(args.model) as fh:
            model = GroupModel.from_json(json.load(fh))
        results = model.run_checks()
        label = model.label or args.model
    else:
        try:
            g = get_group(args.model)
        except KeyError:
            raise InputError(f"unknown group model {args.model!r}")
        results = g.run_checks()
        label = g.label
    ok = all(r.ok for r in results)
    payload = {"model": label, "ok": ok, "checks": [r.to_json() for r in results]}
    text = "\n".join(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f"  ({r.detail})" if r.detail else "")
                     for r in results)
    _emit(args, payload, f"{text}\nresult: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_report(args) -> int:
    from .report import render_figures, run_report
    seed = args.seed if args.seed is not None else default_seed()
    try:
        rep = run_report(args.scope, args.checks, seed)
    except ValueError as exc:
        raise InputError(str(exc))
    fmt = "json" if args.json else args.format
    text = rep.render(fmt)
    if args.out:
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    figdir = args.figures
    if figdir is None and args.out:
        figdir = os.path.dirname(os.path.abspath(args.out))
    if figdir and not args.no_figures:
        for p in render_figures(args.scope, figdir):
            print(f"figure: {p}", file=sys.stderr)
    return 0 if rep.all_pass else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcs", description="Exact checks for lcs, contact and symplectic Lie algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "parse structure notation and print invariants")
    sp.add_argument("notation")

    sp = add("verify", cmd_verify, "verify certificates on an algebra")
    sp.add_argument("algebra")
    for name in ("omega", "eta", "phi", "sigma", "theta"):
        sp.add_argument(f"--{name}")
    sp.add_argument("--J", help="JSON rows; column j is J(e_j)")

    sp = add("classify", cmd_classify, "first or second kind, exactness")
    sp.add_argument("algebra")
    sp.add_argument("--omega", required=True)
    sp.add_argument("--phi")
    sp.add_argument("--eta")

    sp = add("cohomology", cmd_cohomology, "Betti numbers, optionally twisted")
    sp.add_argument("algebra")
    sp.add_argument("--twist")
    sp.add_argument("--bases", action="store_true", help="include cocycle bases")
    sp.add_argument("--dixmier", action="store_true", help="also run the nilpotent vanishing check")

    sp = add("extend", cmd_extend, "build extensions")
    sp.add_argument("mode", choices=["semidirect", "central", "lcs", "double"])
    sp.add_argument("algebra")
    sp.add_argument("--D")
    sp.add_argument("--sigma")
    sp.add_argument("--Z")

    sp = add("scan", cmd_scan, "search for lcs / symplectic / contact structures")
    sp.add_argument("algebra", nargs="?")
    sp.add_argument("--scope")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--omega-bound", type=int, default=2)
    sp.add_argument("--report", choices=["md", "json", "csv"], default="md")

    sp = add("polycheck", cmd_polycheck, "verify a group model (catalog key or JSON file)")
    sp.add_argument("model")

    sp = add("report", cmd_report, "reproduce catalog expectations")
    sp.add_argument("--scope", default="all")
    sp.add_argument("--checks", default="all")
    sp.add_argument("--format", choices=["md", "csv", "json"], default="md")
    sp.add_argument("--out")
    sp.add_argument("--figures", help="directory for PNG figures (default: next to --out)")
    sp.add_argument("--no-figures", action="store_true")
    sp.add_argument("--seed", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError, LieError) as exc:
        if isinstance(exc, StructureError):
            print(f"verification failed: {exc}", file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
