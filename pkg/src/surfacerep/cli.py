"""Command line front-end.

Every subcommand emits a RunReport as JSON. Exit codes: 0 yes, 1 no,
2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .enumerator import SearchSpec, atlas_is_closed, fixed_point_atlas
from .homology import character_fixed_points, coinvariants
from .linalg import DEFAULT_SEARCH_CAP, CapExceeded
from .mapping import SHIPPED, GeneratorSet, MappingClass, inverse, point_push, shipped_genset
from .repspace import Representation, act, conjugate_witness, in_stabilizer_class
from .rho import (NotInStabilizer, build_rho, rho_identity_check, kernel_test, reducibility_witness,
                  span_w_phi)
from .words import Presentation, WordError

EXIT = {"yes": 0, "no": 1, "inconclusive": 2, "error": 3}


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    verdict: str = "yes"
    outcome: Any = None
    certificates: dict[str, Any] = field(default_factory=dict)
    destination: str | None = field(default=None, repr=False)

    @property
    def exit_code(self) -> int:
        return EXIT[self.verdict]

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "outcome": self.outcome,
            "certificates": self.certificates,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def _read_json(path: str, report: RunReport, name: str) -> Any:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    report.inputs[name] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc.reason})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _schema(path: str, what: str, build):
    try:
        return build()
    except (KeyError, TypeError, ValueError, WordError, ZeroDivisionError) as exc:
        detail = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        raise InputError(f"{path}: invalid {what}: {detail}") from None


def load_rep(path: str, report: RunReport, name: str = "rep") -> Representation:
    data = _read_json(path, report, name)
    return _schema(path, "representation", lambda: Representation.from_json(data))


def load_genset_arg(src: str, report: RunReport) -> GeneratorSet:
    """``shipped:G,N`` or a path to a generator-set JSON file."""
    if src.startswith("shipped:"):
        try:
            g, n = (int(x) for x in src[len("shipped:"):].split(","))
            S = shipped_genset(g, n)
        except (ValueError, KeyError) as exc:
            raise InputError(f"{src}: {exc}") from None
        report.inputs["genset"] = src
        return S
    data = _read_json(src, report, "genset")
    return _schema(src, "generator set", lambda: GeneratorSet.from_json(data))


def load_class_arg(src: str, p: Presentation, report: RunReport) -> MappingClass:
    """``push:WORD``, ``shipped:LABEL`` (from the shipped set of the same surface) or a JSON path."""
    if src.startswith("push:"):
        report.inputs["class"] = src
        try:
            return point_push(p.parse(src[len("push:"):]), p)
        except WordError as exc:
            raise InputError(f"{src}: {exc}") from None
    if src.startswith("shipped:"):
        label = src[len("shipped:"):]
        report.inputs["class"] = src
        try:
            S = shipped_genset(p.g, p.n)
        except KeyError as exc:
            raise InputError(str(exc)) from None
        for f in S:
            if f.label == label:
                return f
        raise InputError(f"{src}: no class labelled {label!r} (have {[f.label for f in S]})")
    data = _read_json(src, report, "class")
    return _schema(src, "mapping class", lambda: MappingClass.from_json(data, p))


def _same_surface(p: Presentation, q: Presentation, what: str) -> None:
    if p != q:
        raise InputError(f"{what}: surface g={q.g}, n={q.n} does not match g={p.g}, n={p.n}")


def cmd_validate_genset(args, report: RunReport) -> None:
    S = load_genset_arg(args.genset, report)
    results = S.validate()
    report.outcome = {"classes": len(results), "failed": [r.label for r in results if not r.ok]}
    report.certificates["checks"] = {r.label: r.checks for r in results}
    report.verdict = "yes" if all(r.ok for r in results) else "no"


def cmd_act(args, report: RunReport) -> None:
    phi = load_rep(args.rep, report)
    f = load_class_arg(args.cls, phi.presentation, report)
    if args.inverse:
        f = inverse(f)
    report.outcome = act(f, phi).to_json()


def cmd_conjugate(args, report: RunReport) -> None:
    phi = load_rep(args.rep, report)
    psi = load_rep(args.other, report, "other")
    _same_surface(phi.presentation, psi.presentation, args.other)
    if (phi.field, phi.r) != (psi.field, psi.r):
        raise InputError(f"{args.other}: field or dimension differs from {args.rep}")
    try:
        A = conjugate_witness(phi, psi, args.cap)
    except CapExceeded as exc:
        report.verdict = "inconclusive"
        report.certificates["cap"] = exc.to_json()
        return
    if A is None:
        report.verdict = "no"
        report.outcome = "not conjugate"
        return
    report.outcome = "conjugate"
    report.certificates["conjugator"] = A.to_json()
    report.certificates["equation"] = "A phi(x) = psi(x) A for every generator x"


def cmd_fixed_point(args, report: RunReport) -> None:
    phi = load_rep(args.rep, report)
    S = load_genset_arg(args.genset, report)
    _same_surface(phi.presentation, S.presentation, args.genset)
    witnesses, undecided = {}, {}
    for f in S:
        try:
            A = in_stabilizer_class(f, phi, args.cap)
        except CapExceeded as exc:
            undecided[f.label] = exc.to_json()
            continue
        if A is None:
            report.verdict = "no"
            report.outcome = f"{f.label} moves the class"
            report.certificates["moved_by"] = f.label
            return
        witnesses[f.label] = A.to_json()
    report.certificates["witnesses"] = witnesses
    report.certificates["equation"] = "phi(f_* x) = A phi(x) A^-1 for every generator x"
    if undecided:
        report.verdict = "inconclusive"
        report.certificates["cap"] = undecided
        report.outcome = "undecided"
    else:
        report.outcome = "global fixed point of the generator set"


def cmd_build_rho(args, report: RunReport) -> None:
    phi = load_rep(args.rep, report)
    f = load_class_arg(args.cls, phi.presentation, report)
    basis = span_w_phi(phi)
    try:
        rho = build_rho(phi, f, basis, args.cap)
    except NotInStabilizer as exc:
        report.verdict = "no"
        report.outcome = str(exc)
        return
    except CapExceeded as exc:
        report.verdict = "inconclusive"
        report.certificates["cap"] = exc.to_json()
        return
    ok, samples = rho_identity_check(phi, f, rho, args.depth)
    witness = reducibility_witness(basis)
    out = rho.to_json()
    out["basis"] = [b.to_json() for b in basis.basis]
    out["checks"] = {
        "identity_samples": samples,
        "identity_depth": args.depth,
        "identity": ok,
        "reducible": rho.matrix.apply(witness) == tuple(witness),
        "kernel": kernel_test(phi, f, basis),
    }
    report.outcome = out
    report.certificates["conjugator"] = rho.conjugator.to_json()
    if not ok:
        report.verdict = "no"


def cmd_coinvariants(args, report: RunReport) -> None:
    S = load_genset_arg(args.genset, report)
    rep = coinvariants(S)
    out = rep.to_json()
    out["verdict"] = f"coinvariants = {rep.describe()}"
    if args.q:
        out["fixed_characters"] = {str(q): len(character_fixed_points(S, q)) for q in args.q}
    report.outcome = out
    report.certificates["stacked"] = rep.stacked.to_json()
    report.verdict = "yes" if rep.is_zero else "no"


def cmd_enumerate(args, report: RunReport) -> None:
    S = load_genset_arg(args.genset, report)
    spec = SearchSpec(args.g, args.n, args.r, args.p, max_tuples=args.max_tuples, mode=args.mode,
                      workers=args.workers, time_budget=args.time_budget)
    _same_surface(spec.presentation, S.presentation, args.genset)
    try:
        atlas = fixed_point_atlas(spec, S)
    except CapExceeded as exc:
        report.verdict = "inconclusive"
        report.certificates["cap"] = exc.to_json()
        return
    text = atlas.dumps()
    summary = {k: v for k, v in atlas.to_json().items() if k != "fixed"}
    summary["closed"] = atlas_is_closed(atlas)
    summary["atlas_sha256"] = hashlib.sha256(text.encode()).hexdigest()
    if args.atlas:
        Path(args.atlas).write_text(text + "\n")
    else:
        summary["fixed"] = atlas.to_json()["fixed"]
    report.outcome = summary


def seed_data() -> list[dict]:
    out = []
    for g, n in SHIPPED:
        S = shipped_genset(g, n)
        out.append({"name": f"shipped:{g},{n}", "g": g, "n": n, "classes": [f.label for f in S]})
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfacerep", description=__doc__.splitlines()[0])
    ap.add_argument("--seed-data", action="store_true", help="list shipped generator sets and exit")
    sub = ap.add_subparsers(dest="command")

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the report here instead of stdout")
        return sp

    sp = add("validate-genset", cmd_validate_genset, "check relator, inverse, purity and symplectic conditions")
    sp.add_argument("--genset", required=True, help="path or shipped:G,N")

    sp = add("act", cmd_act, "apply f . phi = phi o f_*^-1")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--class", dest="cls", required=True, help="path, push:WORD or shipped:LABEL")
    sp.add_argument("--inverse", action="store_true")

    sp = add("conjugate", cmd_conjugate, "decide simultaneous conjugacy of two representations")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--other", required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)

    sp = add("fixed-point", cmd_fixed_point, "is [phi] fixed by every class of a generator set")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--genset", required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)

    sp = add("build-rho", cmd_build_rho, "the linear action of a stabilizing class on span phi(pi)")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)

    sp = add("coinvariants", cmd_coinvariants, "co-invariants of H_1 under a generator set")
    sp.add_argument("--genset", required=True)
    sp.add_argument("--q", type=int, action="append", help="also count fixed characters into GF(q)^x")

    sp = sub.add_parser("enumerate", help="finite-field fixed point atlas")
    sp.set_defaults(func=cmd_enumerate)
    for k in ("g", "n", "r", "p"):
        sp.add_argument(f"--{k}", type=int, required=True)
    sp.add_argument("--genset", required=True)
    sp.add_argument("--mode", choices=("class", "hom"), default="class")
    sp.add_argument("--max-tuples", type=int, default=2_000_000)
    sp.add_argument("--time-budget", type=float)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", dest="atlas", help="write the atlas JSON here")
    sp.add_argument("--report", dest="out", help="write the report here instead of stdout")
    return ap


def run(argv: Sequence[str]) -> tuple[int, RunReport]:
    argv = list(argv)
    ap = build_parser()
    report = RunReport(command=argv)
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return 0, report
        report.verdict = "error"
        report.outcome = "bad arguments"
        return 3, report
    if args.seed_data:
        report.outcome = seed_data()
        return 0, report
    if args.command is None:
        report.verdict = "error"
        report.outcome = "no subcommand given"
        return 3, report
    try:
        args.func(args, report)
    except (InputError, ValueError) as exc:
        report.verdict = "error"
        report.outcome = str(exc)
        report.certificates = {}
    out = getattr(args, "out", None)
    if out and report.verdict != "error":
        Path(out).write_text(report.dumps() + "\n")
        report.destination = out
    return report.exit_code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    if report.verdict == "error":
        print(f"error: {report.outcome}", file=sys.stderr)
    elif report.destination is None:
        print(report.dumps())
    return code
