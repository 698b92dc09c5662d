"""``tq`` command-line front end.

Exit codes: 0 ok or certificate holds, 1 certificate fails, 2 invalid
input, 3 internal limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, gb, moduli, quiver, toric
from .config import PipelineConfig

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_fan(arg: str) -> toric.Fan:
    """A FanFile path or a catalog fan name."""
    if arg in catalog.FANS:
        return catalog.fan(arg)
    if arg in catalog.BUNDLE_LISTS:
        return catalog.fan(catalog.bundle_list(arg).fan)
    if not Path(arg).exists():
        raise InputError(f"{arg!r} is neither a file nor a catalog fan")
    fan = toric.Fan.from_json(_read_json(arg))
    toric.validate_fan(fan)
    return fan


def load_bundles(arg: str) -> dict:
    """A BundleListFile path or a catalog list name; returns the parsed object."""
    if arg in catalog.BUNDLE_LISTS:
        return catalog.emit(arg)
    if not Path(arg).exists():
        raise InputError(f"{arg!r} is neither a file nor a catalog bundle list")
    data = _read_json(arg)
    if isinstance(data, list):
        data = {"bundles": data}
    if not isinstance(data, dict) or "bundles" not in data:
        raise InputError(f"{arg}: expected an object with a 'bundles' key")
    return data


def build_quiver(fan, data, reorder=False) -> quiver.Quiver:
    Q = quiver.complete_quiver_of_sections(fan, data["bundles"], reorder=reorder)
    order = data.get("arrow_order")
    if order:
        Q = Q.permuted(quiver.arrow_permutation(Q, [(t, h, tuple(lab)) for t, h, lab in order]))
    return Q


def _ray_names(fan):
    return [f"x{k + 1}" for k in range(fan.nrays)]


def _arrow_table(Q, fan):
    names = _ray_names(fan)
    return [
        {
            "index": k,
            "name": f"a{k + 1}",
            "tail": a.tail,
            "head": a.head,
            "label": list(a.label),
            "monomial": gb.format_monomial(a.label, names) or "1",
        }
        for k, a in enumerate(Q.arrows)
    ]


def _load_basis(arg: str):
    if arg in catalog.BUNDLE_LISTS:
        circ = catalog.bundle_list(arg).circuits
        if circ is None:
            raise InputError(f"catalog list {arg} has no stored circuit basis")
        return list(circ)
    data = _read_json(arg)
    if isinstance(data, dict):
        data = data.get("circuits")
    if not isinstance(data, list):
        raise InputError("basis file must hold a list of circuits")
    return data


def _parse_weight(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad weight {text!r}; expected comma-separated integers") from None


# --- commands ---------------------------------------------------------------


def cmd_fan_validate(args, cfg, out):
    try:
        fan = catalog.fan(args.fan) if args.fan in catalog.FANS else toric.Fan.from_json(_read_json(args.fan))
    except (toric.FanError, ValueError) as exc:
        out.write(dumps({"valid": False, "messages": [f"{type(exc).__name__}: {exc}"]}))
        return EXIT_INPUT
    rep = toric.validate_fan(fan, raise_on_error=False)
    body = rep.to_json()
    body["nrays"] = fan.nrays
    body["rank"] = fan.rank
    out.write(dumps(body))
    return EXIT_OK if rep.valid else EXIT_INPUT


def cmd_quiver_build(args, cfg, out):
    fan = load_fan(args.fan)
    Q = build_quiver(fan, load_bundles(args.bundles), cfg.reorder)
    body = {
        "nvertices": Q.nvertices,
        "bundles": [list(b) for b in Q.bundles],
        "arrows": _arrow_table(Q, fan),
    }
    if args.dot:
        Path(args.dot).write_text(quiver.to_dot(Q, _ray_names(fan)))
    if args.json:
        Path(args.json).write_text(dumps(body))
    out.write(dumps(body))
    return EXIT_OK


def cmd_series(args, cfg, out):
    fan = load_fan(args.fan)
    Q = build_quiver(fan, load_bundles(args.bundles), cfg.reorder)
    basis = _load_basis(args.basis) if args.basis else None
    s = moduli.multilinear_fan(Q, basis)
    body = {
        "dimension": s.dim,
        "rays": s.ray_matrix,
        "trees": len(s.trees),
        "unimodular": s.is_unimodular(),
        "complete": s.is_facet_paired(),
        "B_Y": s.B_Y.strings(),
        "theta": list(s.theta),
        "nef_facets": [list(f) for f in moduli.nef_cone_facets(s)],
    }
    if args.trees_list:
        body["tree_arrows"] = [list(t) for t in s.trees]
    if args.nef_test:
        m = moduli.nef_ample_membership(s, _parse_weight(args.nef_test))
        body["nef_test"] = {"weight": args.nef_test, "nef": m.nef, "ample": m.ample}
    out.write(dumps(body))
    return EXIT_OK


def cmd_ideals(args, cfg, out):
    fan = load_fan(args.fan)
    Q = build_quiver(fan, load_bundles(args.bundles), cfg.reorder)
    s = moduli.multilinear_fan(Q)
    ideals = {
        "I_Q": moduli.toric_ideal_IQ(Q, s.ring).strings(),
        "I_R": moduli.relation_ideal_IR(Q, s.ring).strings(),
        "B_Y": s.B_Y.strings(),
        "B_Q": moduli.base_ideal(Q).strings(),
    }
    if args.text:
        for k in ("I_Q", "I_R", "B_Y", "B_Q"):
            gens = ideals[k]
            out.write(f"{k} = ({', '.join(gens) if gens else '0'})\n")
    else:
        out.write(dumps(ideals))
    return EXIT_OK


def cmd_check(args, cfg, out):
    fan = load_fan(args.fan)
    data = load_bundles(args.bundles)
    Q = build_quiver(fan, data, cfg.reorder)
    if args.which == "bpf":
        res = moduli.is_basepoint_free(Q, fan)
        body = {
            "check": "bpf",
            "holds": res.value,
            "condition_b": res.condition_b,
            "witness": [{"cone": list(c), "tree": list(t) if t is not None else None} for c, t in sorted(res.witness.items())],
        }
        ok = res.value
    elif args.which == "very-ample":
        bpf = moduli.is_basepoint_free(Q, fan)
        if not bpf:
            body = {"check": "very-ample", "holds": False, "detail": "not basepoint-free"}
            ok = False
        else:
            va = moduli.is_very_ample(Q, fan, exhaustive=cfg.exhaustive_very_ample, bpf=bpf)
            body = {
                "check": "very-ample",
                "holds": va.value,
                "path": va.path,
                "L_ample": va.L_ample,
                "multiplication_surjective": va.multiplication_surjective,
                "detail": va.detail,
            }
            ok = va.value
    else:
        rep = moduli.is_fine(
            fan, data["bundles"], exhaustive=cfg.exhaustive_very_ample,
            saturation_method=cfg.saturation_method, Q=Q,
        )
        body = {"check": "fine", "holds": rep.fine, **rep.to_json()}
        ok = rep.fine
    text = dumps(body)
    if args.report:
        Path(args.report).write_text(text)
    out.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_complete(args, cfg, out):
    fan = load_fan(args.fan)
    data = load_bundles(args.bundles)
    res = moduli.complete_to_fine(fan, data["bundles"], args.bound)
    body = {"found": res.bundles is not None, "diagnostics": list(res.diagnostics)}
    if res.bundles is not None:
        body["bundles"] = [list(b) for b in res.bundles]
        body["coefficients"] = list(res.coefficients)
        body["flags"] = res.report.flags()
    out.write(dumps(body))
    return EXIT_OK if res.bundles is not None else EXIT_LIMIT


def cmd_catalog(args, cfg, out):
    if args.action == "list":
        entries = [{"name": n, "kind": "fan"} for n in sorted(catalog.FANS)]
        entries += [
            {"name": n, "kind": "bundles", "fan": catalog.bundle_list(n).fan} for n in sorted(catalog.BUNDLE_LISTS)
        ]
        out.write(dumps(entries))
        return EXIT_OK
    if not args.name:
        raise InputError("catalog emit needs a name")
    out.write(dumps(catalog.emit(args.name)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tq", description="Toric quiver-of-sections toolkit")
    p.add_argument("--path-cap", type=int, help="override the path enumeration cap")
    sub = p.add_subparsers(dest="command", required=True)

    fan = sub.add_parser("fan", help="fan utilities")
    fsub = fan.add_subparsers(dest="fan_cmd", required=True)
    fv = fsub.add_parser("validate")
    fv.add_argument("fan")
    fv.set_defaults(func=cmd_fan_validate)

    q = sub.add_parser("quiver", help="quiver of sections")
    qsub = q.add_subparsers(dest="quiver_cmd", required=True)
    qb = qsub.add_parser("build")
    qb.add_argument("fan")
    qb.add_argument("bundles")
    qb.add_argument("--dot", help="write a graphviz file")
    qb.add_argument("--json", help="write the arrow table")
    qb.add_argument("--reorder", action="store_true", help="sort bundles into an admissible order")
    qb.set_defaults(func=cmd_quiver_build)

    s = sub.add_parser("series", help="multilinear series")
    s.add_argument("fan")
    s.add_argument("bundles")
    s.add_argument("--basis", help="circuit basis file or catalog list name")
    s.add_argument("--nef-test", help="weight, comma-separated")
    s.add_argument("--trees", dest="trees_list", action="store_true", help="list tree arrow sets")
    s.add_argument("--reorder", action="store_true")
    s.set_defaults(func=cmd_series)

    i = sub.add_parser("ideals", help="I_Q, I_R, B_Y, B_Q")
    i.add_argument("fan")
    i.add_argument("bundles")
    i.add_argument("--text", action="store_true", help="plain text instead of JSON")
    i.add_argument("--reorder", action="store_true")
    i.set_defaults(func=cmd_ideals)

    c = sub.add_parser("check", help="certificates")
    c.add_argument("which", choices=["bpf", "very-ample", "fine"])
    c.add_argument("fan")
    c.add_argument("bundles")
    c.add_argument("--report", help="also write the report here")
    c.add_argument("--exhaustive", action="store_true", help="force the per-cone very-ample test")
    c.add_argument("--saturation", choices=["primes", "generators"], default="primes")
    c.add_argument("--reorder", action="store_true")
    c.set_defaults(func=cmd_check)

    cp = sub.add_parser("complete", help="search for a fine extension")
    cp.add_argument("fan")
    cp.add_argument("bundles")
    cp.add_argument("--bound", type=int, default=2)
    cp.set_defaults(func=cmd_complete)

    cat = sub.add_parser("catalog", help="built-in fixtures")
    cat.add_argument("action", choices=["list", "emit"])
    cat.add_argument("name", nargs="?")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    overrides = {}
    if args.path_cap is not None:
        overrides["path_cap"] = args.path_cap
    if getattr(args, "exhaustive", False):
        overrides["exhaustive_very_ample"] = True
    if getattr(args, "saturation", None):
        overrides["saturation_method"] = args.saturation
    if getattr(args, "reorder", False):
        overrides["reorder"] = True
    cfg = PipelineConfig.from_env(**overrides)
    try:
        with cfg.applied():
            return args.func(args, cfg, out)
    except quiver.PathCapExceeded as exc:
        sys.stderr.write(f"limit exceeded: {exc}\n")
        return EXIT_LIMIT
    except moduli.NoAmpleCombination as exc:
        sys.stderr.write(f"NoAmpleCombination: {exc}\n")
        return EXIT_INPUT
    except (InputError, toric.FanError, quiver.QuiverError, catalog.UnknownName, ValueError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
