"""Command-line front end: ``purisheaf <command> <description> [flags]``."""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .exactlinear import Mod, parse_field
from .parse import ParseError, build_sheaf, parse_point_set, parse_points, parse_sequence, parse_sheaf

COMMANDS = {
    "decompose": ("sheaf",),
    "cohomology": ("sheaf",),
    "hom": ("sheaf", "sheaf"),
    "ext": ("sheaf", "sheaf"),
    "purity": ("sequence",),
    "tilt": ("sheaf",),
    "zg-closure": ("points",),
    "zg-attributes": ("points",),
    "zp-table": (),
}


class MathError(Exception):
    def __init__(self, module: str, message: str):
        super().__init__("%s: %s" % (module, message))
        self.module = module


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple = ()
    field: str = "q"
    seed: int = 0
    json: bool = False

    def argv(self) -> list:
        out = [self.name, *self.args]
        if self.field != "q":
            out += ["--field", self.field]
        if self.seed:
            out += ["--seed", str(self.seed)]
        if self.json:
            out.append("--json")
        return out

    def __str__(self):
        return shlex.join(["purisheaf", *self.argv()])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (default) or fp:<prime>")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised choices")
    common.add_argument("--json", action="store_true", help="emit one JSON record")
    ap = argparse.ArgumentParser(prog="purisheaf", description=__doc__)
    ap.add_argument("--version", action="version", version="purisheaf " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "decompose": "split a coherent sheaf into indecomposables",
        "cohomology": "h0 and h1 by Cech cohomology",
        "hom": "dimension of Hom(F, G)",
        "ext": "dimension of Ext^1(F, G)",
        "purity": "c- and g-purity of 0 -> A -> B -> C -> 0",
        "tilt": "Kronecker representations of RHom(O + O(1), F)",
        "zg-closure": "closure of a set of Ziegler points",
        "zg-attributes": "catalogue attributes of Ziegler points",
        "zp-table": "the seven two-point sheaves over Spec Z_(p)",
    }
    for name, kinds in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helps[name])
        for i, k in enumerate(kinds):
            p.add_argument("arg%d" % i, metavar=k.upper())
    return ap


def parse_command(argv) -> Command:
    ns = build_parser().parse_args(list(argv))
    args = tuple(getattr(ns, "arg%d" % i) for i in range(len(COMMANDS[ns.command])))
    cmd = Command(ns.command, args, ns.field.strip().lower(), ns.seed, ns.json)
    validate(cmd)
    return cmd


def validate(cmd: Command):
    """Parse every description argument (raises ParseError)."""
    try:
        parse_field(cmd.field)
    except ValueError as e:
        raise ParseError(str(e), 0, cmd.field) from None
    for kind, text in zip(COMMANDS[cmd.name], cmd.args):
        if kind == "sheaf":
            parse_sheaf(text)
        elif kind == "sequence":
            parse_sequence(text)


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Mod):
        return int(x.v)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


# -- command implementations -------------------------------------------------------------
# Each returns (result dict, certificates dict, text).

def _decompose(cmd, field):
    from .decompose import decompose_sheaf
    F = build_sheaf(cmd.args[0], field)
    d = decompose_sheaf(F, "charts")
    t = decompose_sheaf(F, "tilt")
    labels = d.as_strings()
    certs = dict(d.certificates)
    certs["tilt_route_agrees"] = t.as_strings() == labels
    text = " ++ ".join(labels) if labels else "0"
    return {"summands": labels}, certs, text


def _cohomology(cmd, field):
    from .homalg import cech
    F = build_sheaf(cmd.args[0], field)
    c = cech(F)
    res = {"h0": c.h0, "h1": c.h1, "chi": c.chi}
    certs = {"chi_matches": c.h0 - c.h1 == c.chi, "window": list(c.window)}
    return res, certs, "h0 = %d\nh1 = %d\nchi = %d" % (c.h0, c.h1, c.chi)


def _hom(cmd, field):
    from .homalg import global_hom
    F, G = (build_sheaf(a, field) for a in cmd.args)
    H = global_hom(F, G)
    return {"dim": H.dim}, {"basis_size": len(H.basis)}, "dim Hom = %d" % H.dim


def _ext(cmd, field):
    from .homalg import ext1
    F, G = (build_sheaf(a, field) for a in cmd.args)
    E = ext1(F, G, seed=cmd.seed)
    certs = {"resolution_twist": E.resolution.N, "generators": E.resolution.P.rank}
    return {"dim": E.dim}, certs, "dim Ext^1 = %d" % E.dim


def find_extension(A, B, C, seed: int = 0, attempts: int = 24):
    """A short exact sequence 0 -> A -> B' -> C -> 0 with B' isomorphic to B,
    and its class coordinates; None when no class is found."""
    import random
    from .decompose import decompose_sheaf
    from .homalg import ext1
    field = A.field
    target = decompose_sheaf(B).labels
    E = ext1(C, A, seed=seed)
    rng = random.Random(seed)
    candidates = [[field.zero] * E.dim]
    candidates += [[field.one if i == j else field.zero for i in range(E.dim)] for j in range(E.dim)]
    if E.dim > 1:
        candidates.append([field.one] * E.dim)
    candidates += [[field.random(rng, 3) for _ in range(E.dim)] for _ in range(attempts)]
    seen = set()
    for coeffs in candidates:
        key = tuple(coeffs)
        if key in seen:
            continue
        seen.add(key)
        seq = E.extension(coeffs)
        if decompose_sheaf(seq.B).labels == target:
            return seq, coeffs, E.dim
    return None


def _purity(cmd, field):
    from .purity import purity_report
    sx = parse_sequence(cmd.args[0])
    try:
        A, B, C = (e.build(field) for e in (sx.A, sx.B, sx.C))
    except ParseError as e:
        raise ParseError(e.message, e.offset, cmd.args[0]) from None
    found = find_extension(A, B, C, cmd.seed)
    if found is None:
        raise MathError("sheafp1", "not exact: no extension of %s by %s has middle term %s" % (sx.C, sx.A, sx.B))
    seq, coeffs, dim = found
    problem = seq.exactness_problem()
    if problem:
        raise MathError("sheafp1", "not exact: %s" % problem)
    r = purity_report(seq)
    res = {"cPure": r.c_pure, "gPure": r.g_pure, "gPureViaTensor": r.via_tensor,
           "gPureViaTorsionHom": r.via_torsion_hom}
    certs = {"exact": True, "extClass": coeffs, "extDim": dim, "criteriaAgree": r.criteria_agreement,
             "testSet": r.witnesses["test_set"]}
    text = "\n".join("%s = %s" % (k, str(v).lower()) for k, v in res.items())
    return res, certs, text


def _tilt(cmd, field):
    from .kronecker import decompose_rep, tilt
    F = build_sheaf(cmd.args[0], field)
    img = tilt(F)
    res = {}
    lines = []
    for deg, rep in ((0, img.deg0), (1, img.deg1)):
        labs = [str(l) for l in decompose_rep(rep)]
        res["deg%d" % deg] = {"dims": [rep.d1, rep.d0], "summands": labs}
        lines.append("degree %d: dims (%d, %d)  %s" % (deg, rep.d1, rep.d0, " + ".join(labs) or "0"))
    return res, img.certificates, "\n".join(lines)


def _zg_closure(cmd, field):
    from .ziegler import closure
    s = parse_point_set(cmd.args[0], field)
    c = closure(s)
    res = {"input": str(s), "closure": str(c), "closed": c == s}
    certs = {"idempotent": closure(c) == c, "rules": "Dedekind-domain closure rules (externally sourced)"}
    return res, certs, str(c)


def _zg_attributes(cmd, field):
    from .ziegler import attributes
    pts = parse_points(cmd.args[0], field)
    res = {str(p): attributes(p).as_dict() for p in pts}
    lines = ["%s: %s" % (k, ", ".join("%s=%s" % (a, str(b).lower()) for a, b in v.items())) for k, v in res.items()]
    return res, {"sigmaCPureInjective": "catalogue entry"}, "\n".join(lines)


def _zp_table(cmd, field):
    from .twopoint import format_table, zp_table
    rows = zp_table()
    res = {"rows": [r.as_dict() for r in rows]}
    certs = {"matches": [r.matches for r in rows], "gPureInjectiveImpliesFlasque": True}
    return res, certs, format_table(rows)


HANDLERS = {"decompose": _decompose, "cohomology": _cohomology, "hom": _hom, "ext": _ext, "purity": _purity,
            "tilt": _tilt, "zg-closure": _zg_closure, "zg-attributes": _zg_attributes, "zp-table": _zp_table}


def _module_of(exc) -> str:
    mod = type(exc).__module__ or ""
    tb = exc.__traceback__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("purisheaf.") and name != __name__:
            mod = name
        tb = tb.tb_next
    return mod.replace("purisheaf.", "") or "purisheaf"


def run(cmd: Command) -> dict:
    """The structured record for a parsed command (raises MathError)."""
    field = parse_field(cmd.field)
    try:
        res, certs, text = HANDLERS[cmd.name](cmd, field)
    except (MathError, ParseError):
        raise
    except (ArithmeticError, ValueError, TypeError) as e:
        raise MathError(_module_of(e), str(e)) from e
    return {"command": cmd.name, "inputs": {"args": list(cmd.args), "field": cmd.field, "seed": cmd.seed},
            "result": jsonable(res), "certificates": jsonable(certs),
            "provenance": {"tool": "purisheaf", "version": __version__, "field": cmd.field, "seed": cmd.seed},
            "text": text}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_command(argv)
    except ParseError as e:
        print("parse error: %s" % e.message, file=sys.stderr)
        print(e.caret(), file=sys.stderr)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    try:
        rec = run(cmd)
    except MathError as e:
        if cmd.json:
            print(json.dumps({"command": cmd.name, "error": {"module": e.module, "message": str(e)}}, indent=2))
        print("error in %s" % e, file=sys.stderr)
        return 1
    except ParseError as e:
        print("parse error: %s" % e.message, file=sys.stderr)
        print(e.caret(), file=sys.stderr)
        return 2
    if cmd.json:
        rec = {k: v for k, v in rec.items() if k != "text"}
        print(json.dumps(rec, indent=2, sort_keys=True))
    else:
        print(rec["text"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
