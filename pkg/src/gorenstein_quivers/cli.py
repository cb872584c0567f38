"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 input or validation failure,
3 property violation.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path as FsPath

from . import homology as H
from .analysis import (
    classify,
    gorenstein_dimension,
    relation_cycle_decomposition,
    singularity_invariants,
)
from .angulation import bound_quiver_from_angulation, parse_angulation, verify_angulation_properties
from .errors import (
    DecompositionFailure,
    InvalidWalk,
    MethodInapplicable,
    NotGentle,
    NotGorenstein,
    NotGorensteinProjective,
    ProjectiveSummand,
    PropertyViolation,
    QuiverError,
    SchemaError,
    StructureFailure,
    ValidationError,
)
from .gentle import gentle_profile, kalck_gp_modules
from .quiver import DEFAULT_PATH_CAP, BoundQuiver, parse_quiver
from .report import describe_module, digest, make_report, render_human, render_json
from .representation import injective, path_module, projective, simple
from .strings import enumerate_strings, parse_walk, string_module

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2, 3
INPUT_ERRORS = (
    SchemaError,
    ValidationError,
    InvalidWalk,
    MethodInapplicable,
    NotGentle,
    ProjectiveSummand,
    NotGorensteinProjective,
)
DEFAULT_MAX_STRING_LENGTH = 8


class CommandResult:
    def __init__(self, result: dict, status: str = "ok", code: int = EXIT_OK, dot: str | None = None):
        self.result = result
        self.status = status
        self.code = code
        self.dot = dot


# -- loading ----------------------------------------------------------------------


def _read(path: str) -> bytes:
    try:
        return FsPath(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc


def _load_json(data: bytes):
    try:
        return json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc


def _load_quiver(data: bytes, cap: int) -> BoundQuiver:
    return parse_quiver(_load_json(data), cap=cap)


# -- analyze / classify -----------------------------------------------------------


def _dimension_text(value):
    return "infinite" if value == math.inf else value


def analyze_algebra(algebra: BoundQuiver) -> dict:
    profile = gentle_profile(algebra)
    cls = classify(algebra, profile)
    out = {
        "quiver": {
            "vertices": len(algebra.vertices),
            "arrows": len(algebra.arrows),
            "relations": len(algebra.relations),
            "dimension": algebra.dimension,
        },
        "gentle": profile.to_dict(),
        "classification": cls.verdict,
        "classification_detail": cls.to_dict(),
        "b": cls.b,
        "potential": cls.potential.text() if cls.potential is not None else None,
    }
    try:
        dec = relation_cycle_decomposition(algebra)
        out["decomposition"] = dec.to_list()
        params, total = singularity_invariants(dec)
        out["singularity_invariants"] = {"parameters": [list(p) for p in params], "total": total}
    except StructureFailure as exc:
        out["decomposition"] = {"failure": exc.reason, "witness": exc.witness}
        out["singularity_invariants"] = None
    try:
        out["gorenstein_dimension"] = gorenstein_dimension(algebra, profile)
    except NotGorenstein:
        out["gorenstein_dimension"] = "infinite"
    try:
        out["global_dimension"] = _dimension_text(H.global_dimension(algebra))
    except DecompositionFailure as exc:
        out["global_dimension"] = f">= {exc.lower_bound} (inexact)"
    return out


def cmd_analyze(args, data: bytes) -> CommandResult:
    algebra = _load_quiver(data, args.cap)
    if args.format == "dot":
        return CommandResult({}, dot=algebra.to_dot())
    return CommandResult(analyze_algebra(algebra))


def cmd_classify(args, data: bytes) -> CommandResult:
    algebra = _load_quiver(data, args.cap)
    return CommandResult(classify(algebra).to_dict())


# -- gp ----------------------------------------------------------------------------


def gp_candidates(algebra: BoundQuiver, *, max_length: int, cap: int, seed: int):
    """Indecomposable test modules: strings for string algebras, otherwise
    simples and path modules up to isomorphism. Returns (kind, list, truncated)."""
    profile = gentle_profile(algebra)
    if profile.is_string:
        en = enumerate_strings(algebra, cap=cap)
        truncated = False
        if en.has_bands:
            en = enumerate_strings(algebra, max_length, cap=cap)
            truncated = True
        mods = [(w.text(), string_module(w, algebra)) for w in en.walks]
        return "strings", mods, truncated
    mods = [(f"@{x}", simple(algebra, x)) for x in algebra.vertices]
    for p in algebra.nonzero_paths:
        if p.arrows:
            m, _ = path_module(algebra, p)
            if not any(H.is_isomorphic(m, n, seed=seed) for _, n in mods):
                mods.append((f"path:{'.'.join(p.arrows)}", m))
    return "simples and path modules", mods, False


def _gp_by_method(method: str, algebra, mods, *, d: int | None, m: int | None, seed: int) -> list[str]:
    if method == "kalck":
        walks = {w.text() for w in kalck_gp_modules(algebra)}
        return [name for name, mod in mods if name in walks and not H.is_projective(mod)]
    out = []
    for name, mod in mods:
        if H.is_projective(mod):
            continue
        if method == "ext":
            ok = H.gp_membership_exact(mod, d)
        else:
            ok = H.omega_tau_test(mod, m, seed=seed)
        if ok:
            out.append(name)
    return out


def _applicable(method: str, algebra, profile, m_arg):
    """``(d, m)`` for the method, or raise MethodInapplicable."""
    if method == "kalck":
        if not profile.is_gentle:
            raise MethodInapplicable("kalck needs a gentle algebra: " + "; ".join(profile.violations))
        return None, None
    try:
        d = gorenstein_dimension(algebra, profile)
    except NotGorenstein as exc:
        raise MethodInapplicable(f"{method} needs a Gorenstein algebra: {exc}") from exc
    if method == "ext":
        return d, None
    m = d if m_arg is None else m_arg
    if m < d or m < 0:
        raise MethodInapplicable(f"omega-tau needs m >= Gorenstein dimension {d}, got {m}")
    return d, m


def cmd_gp(args, data: bytes) -> CommandResult:
    algebra = _load_quiver(data, args.cap)
    profile = gentle_profile(algebra)
    methods = ["kalck", "ext", "omega-tau"] if args.cross_check else [args.method]
    params = {}
    for method in methods:
        try:
            params[method] = _applicable(method, algebra, profile, args.m)
        except MethodInapplicable:
            if not args.cross_check or method == args.method:
                raise
    kind, mods, truncated = gp_candidates(
        algebra, max_length=args.max_length, cap=min(args.cap, 100_000), seed=args.seed
    )
    dims = {name: describe_module(mod)["dimension_vector"] for name, mod in mods}
    found = {}
    for method, (d, m) in params.items():
        found[method] = _gp_by_method(method, algebra, mods, d=d, m=m, seed=args.seed)
    main = found[args.method]
    result = {
        "method": args.method,
        "m": params[args.method][1],
        "gorenstein_dimension": params[args.method][0],
        "candidates": kind,
        "candidate_count": len(mods),
        "candidates_truncated": truncated,
        "gp_nonprojective": [{"module": n, "dimension_vector": dims[n]} for n in main],
        "count": len(main),
    }
    code = EXIT_OK
    status = "ok"
    if args.cross_check:
        sets = {k: sorted(v) for k, v in found.items()}
        agree = len({tuple(v) for v in sets.values()}) == 1
        result["cross_check"] = {"methods": sets, "agree": agree}
        if not agree:
            code, status = EXIT_PROPERTY, "property_violation"
    return CommandResult(result, status, code)


# -- module --------------------------------------------------------------------------


def _module_from(algebra, string=None, simple_at=None, proj=None, inj=None):
    given = [x is not None for x in (string, simple_at, proj, inj)]
    if sum(given) != 1:
        raise ValidationError(["give exactly one of --string, --simple, --proj, --inj"])
    for v in (simple_at, proj, inj):
        if v is not None and v not in algebra.vertices:
            raise ValidationError([f"unknown vertex {v!r}"])
    if string is not None:
        return string_module(parse_walk(string, algebra), algebra)
    if simple_at is not None:
        return simple(algebra, simple_at)
    if proj is not None:
        return projective(algebra, proj)
    return injective(algebra, inj)


def _apply(op: str, mod):
    if op == "tau":
        core, _ = H.split_projective_summands(mod)
        return H.tau(core, check=False)
    if op == "syzygy":
        return H.syzygy(mod)
    if op == "top":
        return H.top(mod)[0]
    if op == "radical":
        return H.radical(mod)[0]
    if op == "socle":
        return H.socle(mod)[0]
    if op == "stable":
        return H.stable_part(mod)
    raise ValidationError([f"unknown operation {op!r}"])


def _matrices(mod) -> dict:
    out = {}
    for name in sorted(mod.maps):
        mat = mod.maps[name]
        if mat.shape[0] and mat.shape[1]:
            rows = mat.to_Matrix().tolist()
            out[name] = [[str(x) for x in row] for row in rows]
    return out


def cmd_module(args, data: bytes) -> CommandResult:
    algebra = _load_quiver(data, args.cap)
    original = _module_from(algebra, args.string, args.simple, args.proj, args.inj)
    mod = original
    chain = [op for op in (args.apply or "").split(",") if op.strip()]
    for op in chain:
        mod = _apply(op.strip(), mod)
    result = {"input": describe_module(original), "applied": chain, "op": args.op}
    if args.op in ("tau", "syzygy", "top", "radical", "socle"):
        if args.op == "tau":
            core, found = H.split_projective_summands(mod)
            result["stripped_projective_summands"] = found
            out = H.tau(core, check=False)
        else:
            out = _apply(args.op, mod)
        result["output"] = describe_module(out)
        result["output"]["matrices"] = _matrices(out)
    elif args.op == "ext":
        other_given = any(
            x is not None for x in (args.other_string, args.other_simple, args.other_proj, args.other_inj)
        )
        if other_given:
            other = _module_from(algebra, args.other_string, args.other_simple, args.other_proj, args.other_inj)
            target = "module"
        else:
            from .representation import regular

            other = regular(algebra).module
            target = "regular"
        dim = H.ext_dim(mod, other, args.degree)
        result["ext"] = {"degree": args.degree, "second_argument": target, "dimension": dim}
    elif args.op == "iso":
        other_given = any(
            x is not None for x in (args.other_string, args.other_simple, args.other_proj, args.other_inj)
        )
        other = (
            _module_from(algebra, args.other_string, args.other_simple, args.other_proj, args.other_inj)
            if other_given else original
        )
        left = H.stable_part(mod) if args.stable else mod
        right = H.stable_part(other) if args.stable else other
        cert = H.is_isomorphic(left, right, seed=args.seed)
        result["compared_with"] = "other module" if other_given else "input module"
        result["left"] = describe_module(left)
        result["right"] = describe_module(right)
        result["isomorphic"] = cert is not None
    return CommandResult(result)


# -- angulations ----------------------------------------------------------------------


def cmd_angulate(args, data: bytes) -> CommandResult:
    ang = parse_angulation(_load_json(data))
    algebra = bound_quiver_from_angulation(ang)
    doc = algebra.to_document()
    if args.out:
        FsPath(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.format == "dot":
        return CommandResult({}, dot=algebra.to_dot())
    result = {"quiver": doc, "m": ang.m}
    result["verification"] = verify_angulation_properties(algebra, ang.m)
    return CommandResult(result)


def cmd_verify(args, data: bytes) -> CommandResult:
    doc = _load_json(data)
    if isinstance(doc, dict) and "faces" in doc:
        ang = parse_angulation(doc)
        algebra, m = bound_quiver_from_angulation(ang), ang.m
    else:
        algebra = parse_quiver(doc, cap=args.cap)
        if args.m is None:
            raise ValidationError(["verify on a quiver document needs --m"])
        m = args.m
    return CommandResult(verify_angulation_properties(algebra, m))


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "human", "dot"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="gorenstein-quivers",
        description="Gorenstein invariants and Gorenstein-projective modules of monomial bound quivers.",
    )
    parser.add_argument("--format", choices=["json", "human", "dot"], default="json")
    parser.add_argument("--seed", type=int, default=H.DEFAULT_SEED, help="seed for isomorphism sampling")
    parser.add_argument("--cap", type=int, default=DEFAULT_PATH_CAP, help="enumeration cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full structural report")
    p.add_argument("path")
    p = sub.add_parser("classify", parents=[common], help="2-CY tilted classification")
    p.add_argument("path")

    p = sub.add_parser("gp", parents=[common], help="list Gorenstein-projective indecomposables")
    p.add_argument("path")
    p.add_argument("--method", choices=["kalck", "ext", "omega-tau"], default="omega-tau")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--max-length", type=int, default=DEFAULT_MAX_STRING_LENGTH,
                   help="string length bound when bands exist")

    p = sub.add_parser("module", parents=[common], help="apply a module operation")
    p.add_argument("path")
    p.add_argument("--string")
    p.add_argument("--simple")
    p.add_argument("--proj")
    p.add_argument("--inj")
    p.add_argument("--apply", help="comma-separated operations applied first (tau,syzygy,top,radical,socle,stable)")
    p.add_argument("--op", required=True, choices=["tau", "syzygy", "top", "radical", "socle", "ext", "iso"])
    p.add_argument("--other-string")
    p.add_argument("--other-simple")
    p.add_argument("--other-proj")
    p.add_argument("--other-inj")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--stable", action="store_true", help="compare modulo projective summands (iso)")

    p = sub.add_parser("angulate", parents=[common], help="bound quiver of an angulation")
    p.add_argument("path")
    p.add_argument("--out", help="write the quiver document here")

    p = sub.add_parser("verify", parents=[common], help="check the angulation properties")
    p.add_argument("path")
    p.add_argument("--m", type=int, default=None)
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "gp": cmd_gp,
    "module": cmd_module,
    "angulate": cmd_angulate,
    "verify": cmd_verify,
}


def _emit(args, report: dict, dot: str | None, stdout) -> None:
    if dot is not None:
        stdout.write(dot if dot.endswith("\n") else dot + "\n")
    elif args.format == "human":
        stdout.write(render_human(report))
    else:
        stdout.write(render_json(report))


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    in_digest = None
    try:
        data = _read(args.path)
        in_digest = digest(data)
        res = COMMANDS[args.command](args, data)
    except PropertyViolation as exc:
        stderr.write(f"property violation: {exc}\n")
        report = make_report(args.command, in_digest, {"error": "PropertyViolation", "witness": exc.violations},
                             "property_violation")
        _emit(args, report, None, stdout)
        return EXIT_PROPERTY
    except INPUT_ERRORS as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        witness = getattr(exc, "violations", None) or [str(exc)]
        report = make_report(args.command, in_digest, {"error": type(exc).__name__, "witness": witness},
                             "validation_error")
        _emit(args, report, None, stdout)
        return EXIT_INPUT
    except QuiverError as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        report = make_report(args.command, in_digest, {"error": type(exc).__name__, "message": str(exc)},
                             "error")
        _emit(args, report, None, stdout)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort exit code 1
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    report = make_report(args.command, in_digest, res.result, res.status)
    _emit(args, report, res.dot, stdout)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
