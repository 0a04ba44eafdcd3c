"""Command-line front end.

Every subcommand prints one report document (YAML by default, JSON with
``--json``) and exits 0 when every requested defect vanishes, 1 when some
defect is nonzero, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable

import yaml

from .defects import DefectReport, StructureError
from .jlsa import (
    build_dual_jlsa,
    cocycle_symmetry_report,
    dual_jlsa_report,
    jkv_bracket,
    twisted_product_forms_report,
    twisted_sharp_identity,
)
from .lie import check_lie_axioms, differential
from .line import extend_lie, extend_lsa, kv_ize, poissonize, psi_check
from .linalg import SingularMatrixError
from .lsa import (
    build_dual_lsa,
    check_lsa_axioms,
    kv_bracket,
    ls_obstruction_identity,
    nondeg_equivalence_report,
    sharp_compat_identity,
)
from .manifold import (
    MetricTensor,
    codazzi_defect,
    dtheta_closed_form_report,
    dual_connection_report,
    jkv_defects,
    jkv_equivalence_report,
    kv_manifold_defect,
    lch_report,
    pack_H,
    semi_weyl_defect,
)
from .poisson import (
    build_dual_jacobi,
    build_dual_lie,
    half_pi_pi_identity,
    jacobi_defect,
    poisson_defect,
    twisted_half_pi_pi_identity,
)
from .structfile import StructureFile, StructureFileError, digest, emit, from_lie, parse_text
from .suite import IDENTITIES, IDENTITY_NAMES, run_identity, run_suite
from .tensors import Cosection, Section

__all__ = ["main", "CHECKS", "checks_for"]

EXIT_OK, EXIT_DEFECT, EXIT_INPUT = 0, 1, 2

Check = Callable[[StructureFile], DefectReport]


class _NotApplicable(Exception):
    pass


def _need(value, what: str):
    if value is None:
        raise _NotApplicable(f"needs {what}")
    return value


def _patch_report(sf: StructureFile) -> DefectReport:
    try:
        sf.patch()
    except StructureError as exc:
        return exc.report
    return DefectReport().add("torsion", {}).add("curvature", {})


def _metric(sf: StructureFile):
    """``g`` when given, otherwise the inverse of a nondegenerate ``h``."""
    if sf.g is not None:
        return sf.g
    h = _need(sf.symmetric(), "g or h")
    try:
        return MetricTensor.from_h(h).g
    except SingularMatrixError:
        raise _NotApplicable("needs g or a nondegenerate h") from None


def _theta(sf: StructureFile) -> Cosection:
    return Cosection.from_coeffs(_need(sf.theta, "theta"))


def _lch(sf: StructureFile) -> DefectReport:
    try:
        return lch_report(sf.patch(), sf.jkv_pair())
    except SingularMatrixError:
        raise _NotApplicable("needs a nondegenerate h") from None


def _kvization(sf: StructureFile) -> DefectReport:
    P = sf.patch()
    return kv_ize(P.bar_jlsa(), pack_H(sf.jkv_pair()))[1]


CHECKS: dict[str, dict[str, Check]] = {
    "lie": {
        "lie-axioms": lambda sf: check_lie_axioms(sf.lie()),
        "poisson": lambda sf: DefectReport().add("poisson", poisson_defect(sf.lie(), _need(sf.bivector(), "pi"))),
        "half-pi-pi": lambda sf: half_pi_pi_identity(sf.lie(), _need(sf.bivector(), "pi")),
    },
    "jacobi": {
        "lie-axioms": lambda sf: check_lie_axioms(sf.lie()),
        "phi0-closed": lambda sf: DefectReport().add("phi0_closed", differential(sf.lie(), sf.phi())),
        "jacobi": lambda sf: DefectReport().add("jacobi", jacobi_defect(sf.jacobi(), _need(sf.bivector(), "pi"))),
        "twisted-half-pi-pi": lambda sf: twisted_half_pi_pi_identity(sf.jacobi(), _need(sf.bivector(), "pi")),
    },
    "lsa": {
        "lsa-axioms": lambda sf: check_lsa_axioms(sf.lsa()),
        "kv": lambda sf: DefectReport().add("kv", kv_bracket(sf.lsa(), _need(sf.symmetric(), "h")).coeffs),
        "nondeg-equivalence": lambda sf: nondeg_equivalence_report(sf.lsa(), _need(sf.symmetric(), "h")),
        "sharp-compat": lambda sf: sharp_compat_identity(sf.lsa(), _need(sf.symmetric(), "h")),
        "ls-obstruction": lambda sf: ls_obstruction_identity(sf.lsa(), _need(sf.symmetric(), "h")),
    },
    "jlsa": {
        "lsa-axioms": lambda sf: check_lsa_axioms(sf.lsa()),
        "phi0-symmetric": lambda sf: _select(cocycle_symmetry_report(sf.lsa(), sf.phi()), "sym_defect"),
        "cocyc": lambda sf: _select(cocycle_symmetry_report(sf.lsa(), sf.phi()), "identity_defect"),
        "jkv": lambda sf: DefectReport().add("jkv", jkv_bracket(sf.jlsa(), _need(sf.symmetric(), "h")).coeffs),
        "twisted-sharp": lambda sf: twisted_sharp_identity(sf.jlsa(), _need(sf.symmetric(), "h")).extend(
            twisted_product_forms_report(sf.jlsa(), sf.symmetric())
        ),
    },
    "manifold": {
        "affine": _patch_report,
        "codazzi": lambda sf: DefectReport().add("codazzi", codazzi_defect(sf.patch(), _metric(sf))),
        "dual-connection": lambda sf: dual_connection_report(sf.patch(), _metric(sf)),
        "kv-manifold": lambda sf: DefectReport().add(
            "kv_manifold", kv_manifold_defect(sf.patch(), _need(sf.symmetric(), "h"))
        ),
        "semi-weyl": lambda sf: DefectReport().add(
            "semi_weyl", semi_weyl_defect(sf.patch(), _metric(sf), _theta(sf))
        ),
    },
    "jkv-manifold": {
        "affine": _patch_report,
        "jkv": lambda sf: jkv_defects(sf.patch(), sf.jkv_pair()),
        "pack-H": lambda sf: jkv_equivalence_report(sf.patch(), sf.jkv_pair()),
        "kv-ization": _kvization,
        "lch": lambda sf: _lch(sf),
    },
}


def _select(report: DefectReport, *names: str) -> DefectReport:
    out = DefectReport()
    for n in names:
        out.add(n, report[n])
    return out


def checks_for(kind: str) -> dict[str, Check]:
    return CHECKS[kind]


def _identity_on_file(name: str, sf: StructureFile) -> DefectReport:
    kind = sf.kind
    table = CHECKS[kind]
    if name in table:
        return table[name](sf)
    if name == "psi-intertwine" and kind in ("jacobi", "jlsa"):
        base = sf.lie() if kind == "jacobi" else sf.lsa()
        return psi_check(base, sf.phi())
    if name == "poissonize-scaling" and kind == "jacobi":
        return _select(poissonize(sf.jacobi(), _need(sf.bivector(), "pi"))[1], "scaling")
    if name == "kvize-scaling" and kind == "jlsa":
        return _select(kv_ize(sf.jlsa(), _need(sf.symmetric(), "h"))[1], "scaling")
    if name == "dtheta-closed-form" and sf.is_manifold:
        E = Section(tuple(_need(sf.E, "E")))
        g = _metric(sf)
        return _select(dtheta_closed_form_report(sf.patch(), g, E), "full")
    if name == "pack-H-equivalence" and kind == "jkv-manifold":
        return _select_cond(jkv_equivalence_report(sf.patch(), sf.jkv_pair()))
    raise _NotApplicable(f"identity {name!r} does not apply to a {kind} file")


def _select_cond(report: DefectReport) -> DefectReport:
    out = DefectReport().add("slot_match", report["slot_match"])
    out.require("equivalent", report.conditions["equivalent"])
    return out


# ---------------------------------------------------------------- output

def _check_block(report: DefectReport) -> dict:
    return {"verdict": "pass" if report.ok else "fail", "defects": report.to_dict()}


def _document(command: str, source: dict | None, checks: dict[str, DefectReport], extra: dict | None = None) -> dict:
    doc: dict = {"command": command}
    if source is not None:
        doc["input"] = source
    doc["checks"] = {name: _check_block(checks[name]) for name in sorted(checks)}
    if extra:
        doc.update(extra)
    doc["verdict"] = "pass" if all(r.ok for r in checks.values()) else "fail"
    return doc


def _render(doc: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False, width=100)


def _structure_block(sf: StructureFile) -> dict:
    return yaml.safe_load(emit(sf))


# ---------------------------------------------------------------- commands

def _load(args) -> tuple[StructureFile, dict]:
    if not args.input:
        raise StructureFileError("--input is required for this command")
    path = Path(args.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StructureFileError(f"cannot read {path}: {exc.strerror}") from None
    sf = parse_text(text)
    return sf, {"file": path.name, "sha256": digest(text), "kind": sf.kind}


def _requested(args, available: dict) -> list[str]:
    if not args.check:
        return list(available)
    names = [n.strip() for n in args.check.split(",") if n.strip()]
    unknown = [n for n in names if n not in available]
    if unknown:
        raise StructureFileError(f"unknown check(s) {', '.join(unknown)}; available: {', '.join(available)}")
    return names


def cmd_check(args) -> dict:
    sf, src = _load(args)
    table = CHECKS[sf.kind]
    explicit = bool(args.check)
    out: dict[str, DefectReport] = {}
    skipped = []
    for name in _requested(args, table):
        try:
            out[name] = table[name](sf)
        except _NotApplicable as exc:
            if explicit:
                raise StructureFileError(f"check {name!r} {exc}") from None
            skipped.append(name)
    extra = {"skipped": sorted(skipped)} if skipped else None
    return _document("check", src, out, extra)


def cmd_defect(args) -> dict:
    sf, src = _load(args)
    table = CHECKS[sf.kind]
    if args.name not in table:
        raise StructureFileError(f"no defect {args.name!r} for a {sf.kind} file; available: {', '.join(table)}")
    try:
        report = table[args.name](sf)
    except _NotApplicable as exc:
        raise StructureFileError(f"defect {args.name!r} {exc}") from None
    return _document(f"defect {args.name}", src, {args.name: report})


def cmd_dualize(args) -> dict:
    sf, src = _load(args)
    if args.kind != sf.kind:
        raise StructureFileError(f"dualize {args.kind} needs a {args.kind} file, got {sf.kind}")
    if args.kind == "lie":
        D = build_dual_lie(sf.lie(), _need_input(sf.bivector(), "pi"))
        checks = {"lie-axioms": check_lie_axioms(D)}
        out = from_lie("lie", D)
    elif args.kind == "jacobi":
        DJ = build_dual_jacobi(sf.jacobi(), _need_input(sf.bivector(), "pi"))
        checks = {
            "lie-axioms": check_lie_axioms(DJ.lie),
            "phi0-closed": DefectReport().add("phi0_closed", differential(DJ.lie, DJ.phi0)),
        }
        out = from_lie("jacobi", DJ.lie, phi0=DJ.phi0)
    elif args.kind == "lsa":
        D = build_dual_lsa(sf.lsa(), _need_input(sf.symmetric(), "h"))
        checks = {"lsa-axioms": check_lsa_axioms(D)}
        out = from_lie("lsa", D)
    elif args.kind == "jlsa":
        h = _need_input(sf.symmetric(), "h")
        DJ = build_dual_jlsa(sf.jlsa(), h)
        checks = {"dual-jlsa": dual_jlsa_report(sf.jlsa(), h)}
        out = from_lie("jlsa", DJ.lsa, phi0=DJ.phi0)
    else:
        raise StructureFileError(f"cannot dualize a {args.kind} file")
    return _document(f"dualize {args.kind}", src, checks, {"structure": _structure_block(out)})


def _need_input(value, what: str):
    if value is None:
        raise StructureFileError(f"this command needs {what} in the input file")
    return value


def cmd_extend_line(args) -> dict:
    sf, src = _load(args)
    if sf.kind == "jacobi":
        L = sf.lie()
        ext = extend_lie(L, sf.phi(), args.variant)
        checks = {"lie-axioms": check_lie_axioms(ext), "psi-intertwine": psi_check(L, sf.phi())}
        out = from_lie("lie", ext)
    elif sf.kind == "jlsa":
        S = sf.lsa()
        ext = extend_lsa(S, sf.phi(), args.variant)
        checks = {"lsa-axioms": check_lsa_axioms(ext), "psi-intertwine": psi_check(S, sf.phi())}
        out = from_lie("lsa", ext)
    else:
        raise StructureFileError("extend-line needs a jacobi or jlsa file")
    return _document(f"extend-line {args.variant}", src, checks, {"structure": _structure_block(out)})


def cmd_poissonize(args) -> dict:
    sf, src = _load(args)
    if sf.kind != "jacobi":
        raise StructureFileError("poissonize needs a jacobi file")
    J = sf.jacobi()
    tpi, report = poissonize(J, _need_input(sf.bivector(), "pi"))
    ext = from_lie("lie", extend_lie(J.lie, J.phi0, "bar"), pi=tpi)
    return _document("poissonize", src, {"poissonize": report}, {"structure": _structure_block(ext)})


def cmd_kvize(args) -> dict:
    sf, src = _load(args)
    if sf.kind == "jlsa":
        J, h = sf.jlsa(), _need_input(sf.symmetric(), "h")
    elif sf.kind == "jkv-manifold":
        P = sf.patch()
        J, h = P.bar_jlsa(), pack_H(sf.jkv_pair())
    else:
        raise StructureFileError("kvize needs a jlsa or jkv-manifold file")
    th, report = kv_ize(J, h)
    ext = from_lie("lsa", extend_lsa(J.lsa, J.phi0, "bar"), h=th)
    return _document("kvize", src, {"kvize": report}, {"structure": _structure_block(ext)})


def cmd_verify_identity(args) -> dict:
    name = args.name
    if name not in IDENTITIES:
        raise StructureFileError(f"unknown identity {name!r}; frozen names: {', '.join(IDENTITY_NAMES)}")
    if args.input:
        sf, src = _load(args)
        try:
            report = _identity_on_file(name, sf)
        except _NotApplicable as exc:
            raise StructureFileError(str(exc)) from None
        return _document(f"verify-identity {name}", src, {name: report})
    res = run_identity(name, args.seed, args.max_degree, args.instances)
    doc = {
        "command": f"verify-identity {name}",
        "random": {"seed": args.seed, "max_degree": args.max_degree, "instances": res["instances"]},
        "failures": res["failures"],
        "verdict": res["verdict"],
    }
    return doc


def cmd_report(args) -> dict:
    if args.input:
        sf_args = argparse.Namespace(**{**vars(args), "check": None})
        doc = cmd_check(sf_args)
        doc["command"] = "report"
        return doc
    doc = run_suite(args.seed, args.max_degree)
    return {"command": "report", **doc}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="structure file (YAML)")
    common.add_argument("--check", metavar="NAMES", help="comma-separated check names")
    common.add_argument("--json", action="store_true", help="emit JSON instead of YAML")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized identities (default 0)")
    common.add_argument("--max-degree", type=int, default=2, help="random polynomial degree bound (default 2)")
    common.add_argument("--timing", action="store_true", help="print elapsed seconds on stderr")

    parser = argparse.ArgumentParser(
        prog="algebroids",
        description="Exact checks for Lie, left-symmetric, Jacobi and Jacobi-left-symmetric algebroids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the checks that apply to the input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("defect", parents=[common], help="one named defect")
    p.add_argument("name")
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("dualize", parents=[common], help="build the dual structure and validate it")
    p.add_argument("kind", choices=["lie", "jacobi", "lsa", "jlsa"])
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("extend-line", parents=[common], help="hat or bar structure on A x R")
    p.add_argument("variant", choices=["hat", "bar"])
    p.set_defaults(func=cmd_extend_line)

    p = sub.add_parser("poissonize", parents=[common], help="e^{-t} pi on the bar extension")
    p.set_defaults(func=cmd_poissonize)

    p = sub.add_parser("kvize", parents=[common], help="e^{-t} h on the bar extension")
    p.set_defaults(func=cmd_kvize)

    p = sub.add_parser("verify-identity", parents=[common], help="check a frozen identity")
    p.add_argument("name", help=", ".join(IDENTITY_NAMES))
    p.add_argument("--instances", type=int, default=None, help="random instances (default per identity)")
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("report", parents=[common], help="full fixture and identity suite")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree < 0:
        print("error: --max-degree must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        doc = args.func(args)
    except (StructureFileError, StructureError, SingularMatrixError, _NotApplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(_render(doc, args.json))
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return EXIT_OK if doc["verdict"] == "pass" else EXIT_DEFECT


if __name__ == "__main__":
    raise SystemExit(main())
