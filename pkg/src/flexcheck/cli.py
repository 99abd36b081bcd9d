"""Command-line front end.

Exit codes follow one convention everywhere: 0 = yes/verified,
1 = no/refuted, 2 = unknown (bound or effort cap reached), 3 = input error.
Reports embed the tool version, the seed, and every bound used; JSON output
is canonical so a fixed seed reproduces byte-identical reports.

    flexcheck toric analyze example3 --bound 8
    flexcheck toric hilbert-basis example3
    flexcheck toric holes example3 --bound 2
    flexcheck toric saturation-point example3 1,1,0
    flexcheck toric faces example3
    flexcheck derive check xm:m=2
    flexcheck derive decompose xm:m=2 --derivation dz+rho12 --grading F
    flexcheck derive exp xm:m=2 --derivation rho12 --s 1 --point generic
    flexcheck derive rank xm:m=2 --point generic --derivations dz,dw,rho12,rho21
    flexcheck paper verify example3 --bound 8

Inputs are either built-in scenario names (example3, xm:m=2,
xm-general:n=5,k=3,m=2) or paths to JSON files following the schemas in
the README (monoid.json for toric commands, scenario.json for derive
commands).  FLEXCHECK_EFFORT_CAP overrides the Groebner effort cap.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .groebner import EffortCapExceeded
from .linalg import as_vector
from .monoid import (
    HoleFamilyCertificate,
    MonoidError,
    MonoidPresentation,
    SaturationPoint,
)
from .poly import FIELD_Q, FIELD_QE, PolyRing
from .derivations import (
    Derivation,
    GradingSpec,
    Nilpotent,
    PresentedAlgebra,
    exp_derivation,
    graded_decompose,
    is_locally_nilpotent_bounded,
    preserves_relations,
    tangent_rank,
)
from .reports import dump_json
from .scenarios import (
    DEFAULT_EFFORT_CAP,
    DEFAULT_NILPOTENCY_CAP,
    Example3Model,
    XmModel,
    parse_scenario,
)
from .toric import analyze_generators
from .verify import run_suite

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str
    bound: int = 8
    nilpotency_cap: int = DEFAULT_NILPOTENCY_CAP
    effort_cap: float = DEFAULT_EFFORT_CAP
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.bound < 0 or self.nilpotency_cap <= 0 or self.effort_cap <= 0:
            raise InputError("bounds and caps must be positive")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None or getattr(args, "subcommand", None) is None:
        parser.print_help()
        return EXIT_INPUT
    try:
        return args.entry(args)
    except (InputError, MonoidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EffortCapExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexcheck",
        description="exact flexibility analysis and derivation calculus",
    )
    parser.add_argument("--version", action="version", version=f"flexcheck {__version__}")
    sub = parser.add_subparsers(dest="command")

    toric = sub.add_parser("toric", help="monoid / toric variety analyses")
    toric_sub = toric.add_subparsers(dest="subcommand")
    for name, entry, extra in (
        ("analyze", _cmd_toric_analyze, ()),
        ("hilbert-basis", _cmd_hilbert_basis, ()),
        ("holes", _cmd_holes, ()),
        ("saturation-point", _cmd_saturation_point, ("point",)),
        ("faces", _cmd_faces, ()),
    ):
        cmd = toric_sub.add_parser(name)
        cmd.add_argument("input", help="scenario name or monoid.json path")
        for field in extra:
            cmd.add_argument(field)
        _common_options(cmd)
        cmd.set_defaults(entry=entry)

    derive = sub.add_parser("derive", help="derivation calculus on scenarios")
    derive_sub = derive.add_subparsers(dest="subcommand")
    check = derive_sub.add_parser("check")
    check.add_argument("input", help="scenario name or scenario.json path")
    _common_options(check)
    check.set_defaults(entry=_cmd_derive_check)
    expc = derive_sub.add_parser("exp")
    expc.add_argument("input")
    expc.add_argument("--derivation", required=True)
    expc.add_argument("--s", default="1", help="flow time (rational or e-expression)")
    expc.add_argument("--point", required=True, help="named point of the scenario")
    _common_options(expc)
    expc.set_defaults(entry=_cmd_derive_exp)
    deco = derive_sub.add_parser("decompose")
    deco.add_argument("input")
    deco.add_argument("--derivation", required=True, help="name or sum like dz+rho12")
    deco.add_argument("--grading", required=True)
    _common_options(deco)
    deco.set_defaults(entry=_cmd_derive_decompose)
    rank = derive_sub.add_parser("rank")
    rank.add_argument("input")
    rank.add_argument("--point", required=True)
    rank.add_argument("--derivations", required=True, help="comma-separated names")
    _common_options(rank)
    rank.set_defaults(entry=_cmd_derive_rank)

    paper = sub.add_parser("paper", help="built-in verification suites")
    paper_sub = paper.add_subparsers(dest="subcommand")
    ver = paper_sub.add_parser("verify")
    ver.add_argument("input", help="example3 | xm:m=K | xm-general:n=..,k=..,m=..")
    ver.add_argument("--skip-elimination", action="store_true")
    ver.add_argument("--timings", action="store_true", help="show per-check wall time (text output)")
    _common_options(ver)
    ver.set_defaults(entry=_cmd_paper_verify)

    return parser


def _common_options(cmd: argparse.ArgumentParser):
    cmd.add_argument("--bound", type=int, default=8)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--format", choices=("text", "json"), default="text")
    cmd.add_argument("--nilpotency-cap", type=int, default=DEFAULT_NILPOTENCY_CAP)
    cmd.add_argument(
        "--effort-cap",
        type=float,
        default=float(os.environ.get("FLEXCHECK_EFFORT_CAP", DEFAULT_EFFORT_CAP)),
    )


def _config(args, command: str) -> RunConfig:
    return RunConfig(
        command=command,
        target=args.input,
        bound=args.bound,
        nilpotency_cap=args.nilpotency_cap,
        effort_cap=args.effort_cap,
        output=args.format,
        seed=args.seed,
    )


# -- input loading -----------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _load_monoid(target: str):
    """(MonoidPresentation | None, certificates, degenerate_generators).

    Returns the raw generators with a None presentation when the monoid is
    degenerate so `analyze` can refuse politely.
    """
    if target == "example3" or target.startswith("xm"):
        model = parse_scenario(target)
        if not isinstance(model, Example3Model):
            raise InputError("toric commands run on monoid scenarios (example3) or monoid.json files")
        return model.monoid, model.certificates, None
    data = _load_json(target)
    if "generators" not in data:
        raise InputError(f"{target}: missing required key 'generators'")
    gens = [as_vector(g) for g in data["generators"]]
    rank = int(data.get("rank", len(gens[0]) if gens else 0))
    certs = {}
    for cert in data.get("certificates", []):
        if "ray" not in cert:
            raise InputError("certificate entries need a 'ray' key")
        certs[tuple(int(x) for x in cert["ray"])] = HoleFamilyCertificate.from_json(cert)
    try:
        monoid = MonoidPresentation(gens, rank)
    except MonoidError:
        return None, certs, (gens, rank)
    return monoid, certs, None


def _parse_point_text(text: str):
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise InputError(f"cannot parse lattice point {text!r}; expected like 1,1,0")


# -- scenario.json for derive ------------------------------------------------


class DeriveContext:
    """Algebra, derivations, gradings, and named points for derive commands."""

    def __init__(self, algebra, derivations, gradings, points):
        self.algebra = algebra
        self.derivations = derivations
        self.gradings = gradings
        self.points = points

    @classmethod
    def from_model(cls, model: XmModel, rng: random.Random) -> "DeriveContext":
        points = {
            "generic": model.sample_generic(rng),
            "l": model.sample_l(rng=rng),
            "origin": model.sample_l(x=0),
        }
        if model.standard:
            for j in (1, 2, 3, 4):
                points[f"u{j}"] = model.sample_uj(j, rng)
        return cls(model.invariant, dict(model.derivations), dict(model.gradings), points)

    @classmethod
    def from_json(cls, data: dict) -> "DeriveContext":
        field = data.get("field", "Q")
        if field not in (FIELD_Q, FIELD_QE, "Q(e)"):
            raise InputError(f"unknown field {field!r}")
        field = FIELD_QE if field.startswith("Q(e") else FIELD_Q
        names = tuple(data["variables"])
        ring = PolyRing(names, field)
        relations = tuple(ring.parse(r) for r in data.get("relations", []))
        algebra = PresentedAlgebra(ring, relations)
        derivations = {}
        for name, images in data.get("derivations", {}).items():
            derivations[name] = Derivation(algebra, images, name)
        gradings = {}
        for name, degrees in data.get("gradings", {}).items():
            gradings[name] = GradingSpec(algebra, degrees, name=name)
        const_ring = PolyRing((), field)
        points = {}
        for name, coords in data.get("points", {}).items():
            points[name] = {
                v: const_ring.parse(str(val)).constant_value()
                for v, val in coords.items()
            }
        return cls(algebra, derivations, gradings, points)


def _derive_context(target: str, seed: int) -> DeriveContext:
    if target.startswith("xm"):
        model = parse_scenario(target)
        return DeriveContext.from_model(model, random.Random(seed))
    if target == "example3":
        raise InputError("derive commands need a derivation scenario (xm:m=K or scenario.json)")
    return DeriveContext.from_json(_load_json(target))


def _pick_derivation(ctx: DeriveContext, spec: str) -> Derivation:
    total = None
    for part in spec.split("+"):
        part = part.strip()
        if part not in ctx.derivations:
            raise InputError(
                f"unknown derivation {part!r}; available: {sorted(ctx.derivations)}"
            )
        d = ctx.derivations[part]
        total = d if total is None else total + d
    if total is None:
        raise InputError("empty derivation specification")
    return total


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.output == "json":
        sys.stdout.write(dump_json(payload))
    else:
        print(text)


def _meta(cfg: RunConfig) -> dict:
    return {
        "version": __version__,
        "seed": cfg.seed,
        "bound": cfg.bound,
        "command": cfg.command,
        "input": cfg.target,
    }


# -- toric commands ------------------------------------------------------------


def _cmd_toric_analyze(args) -> int:
    cfg = _config(args, "toric analyze")
    monoid, certs, degenerate = _load_monoid(cfg.target)
    if degenerate is not None:
        gens, rank = degenerate
        report = analyze_generators(gens, rank, cfg.bound, certs, cfg.seed)
    else:
        from .toric import analyze

        report = analyze(monoid, cfg.bound, certs, cfg.seed)
    _emit(cfg, report.to_json(), report.to_text())
    if report.degenerate:
        return EXIT_INPUT
    return {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}.get(
        report.combined.kind, EXIT_INPUT
    )


def _require_monoid(cfg: RunConfig):
    monoid, certs, degenerate = _load_monoid(cfg.target)
    if degenerate is not None:
        raise InputError("monoid cone is not pointed (degenerate input)")
    return monoid, certs


def _cmd_hilbert_basis(args) -> int:
    cfg = _config(args, "toric hilbert-basis")
    monoid, _ = _require_monoid(cfg)
    basis = monoid.hilbert_basis_of_cone()
    payload = {**_meta(cfg), "hilbert_basis": [list(v) for v in basis]}
    text = "hilbert basis:\n" + "\n".join(f"  {list(v)}" for v in basis)
    _emit(cfg, payload, text)
    return EXIT_YES


def _cmd_holes(args) -> int:
    cfg = _config(args, "toric holes")
    monoid, _ = _require_monoid(cfg)
    holes = monoid.holes_up_to(cfg.bound)
    payload = {**_meta(cfg), "holes": [list(v) for v in holes]}
    text = f"holes up to degree {cfg.bound}:\n" + "\n".join(f"  {list(v)}" for v in holes)
    if not holes:
        text = f"no holes up to degree {cfg.bound} (saturated within the bound)"
    _emit(cfg, payload, text)
    return EXIT_YES


def _cmd_saturation_point(args) -> int:
    cfg = _config(args, "toric saturation-point")
    monoid, _ = _require_monoid(cfg)
    point = _parse_point_text(args.point)
    verdict = monoid.is_saturation_point(point)
    certified = isinstance(verdict, SaturationPoint)
    payload = {
        **_meta(cfg),
        "point": list(point),
        "saturation_point": certified,
    }
    if certified:
        payload["pi_set"] = [list(v) for v in verdict.certificate]
        text = (
            f"{list(point)} is a saturation point (certified by the "
            f"{len(verdict.certificate)}-element Pi set)"
        )
    else:
        payload["hole_witness"] = list(verdict.hole_witness)
        text = f"{list(point)} is not a saturation point: {list(verdict.hole_witness)} is a hole"
    _emit(cfg, payload, text)
    return EXIT_YES if certified else EXIT_NO


def _cmd_faces(args) -> int:
    cfg = _config(args, "toric faces")
    monoid, certs = _require_monoid(cfg)
    from .toric import orbit_census

    entries = orbit_census(monoid, cfg.bound, certs)
    payload = {**_meta(cfg), "orbits": [e.to_json() for e in entries]}
    lines = [f"{len(entries)} faces of the orbit cone:"]
    for e in entries:
        lines.append(
            f"  dim {e.dim}: face gens {[list(g) for g in e.face.generators]}, "
            f"orbit {e.smoothness}"
        )
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_YES


# -- derive commands -------------------------------------------------------------


def _cmd_derive_check(args) -> int:
    cfg = _config(args, "derive check")
    ctx = _derive_context(cfg.target, cfg.seed)
    results = {}
    all_ok = True
    for name in sorted(ctx.derivations):
        ok, bad = preserves_relations(ctx.derivations[name])
        nil = is_locally_nilpotent_bounded(ctx.derivations[name], cfg.nilpotency_cap)
        results[name] = {
            "preserves_relations": ok,
            "locally_nilpotent": isinstance(nil, Nilpotent),
        }
        if isinstance(nil, Nilpotent):
            results[name]["chain_lengths"] = {
                v: n for v, n in sorted(nil.chain_lengths.items()) if n > 1
            }
        else:
            results[name]["nilpotency_cap"] = cfg.nilpotency_cap
        if not ok:
            results[name]["failing_relation"] = str(bad)
            all_ok = False
    payload = {**_meta(cfg), "derivations": results}
    lines = []
    for name, r in results.items():
        status = "valid" if r["preserves_relations"] else "INVALID"
        nil = "LND" if r["locally_nilpotent"] else f"not proven nilpotent within {cfg.nilpotency_cap}"
        lines.append(f"  {name}: {status}, {nil}")
    _emit(cfg, payload, "derivation check:\n" + "\n".join(lines))
    return EXIT_YES if all_ok else EXIT_NO


def _cmd_derive_decompose(args) -> int:
    cfg = _config(args, "derive decompose")
    ctx = _derive_context(cfg.target, cfg.seed)
    delta = _pick_derivation(ctx, args.derivation)
    if args.grading not in ctx.gradings:
        raise InputError(
            f"unknown grading {args.grading!r}; available: {sorted(ctx.gradings)}"
        )
    grading = ctx.gradings[args.grading]
    parts = graded_decompose(delta, grading)
    payload = {
        **_meta(cfg),
        "derivation": args.derivation,
        "grading": args.grading,
        "degrees": [list(d) for d in sorted(parts)],
        "components": {
            str(list(d)): {v: str(img) for v, img in sorted(comp.images.items())}
            for d, comp in parts.items()
        },
    }
    lines = [f"decomposition of {args.derivation} under {args.grading}:"]
    for d, comp in sorted(parts.items()):
        lines.append(f"  degree {list(d)}:")
        for v, img in sorted(comp.images.items()):
            lines.append(f"    {v} -> {img}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_YES


def _cmd_derive_exp(args) -> int:
    cfg = _config(args, "derive exp")
    ctx = _derive_context(cfg.target, cfg.seed)
    delta = _pick_derivation(ctx, args.derivation)
    if args.point not in ctx.points:
        raise InputError(f"unknown point {args.point!r}; available: {sorted(ctx.points)}")
    point = ctx.points[args.point]
    const_ring = PolyRing((), ctx.algebra.ring.field)
    s = const_ring.parse(args.s).constant_value()
    phi = exp_derivation(delta, s, cfg.nilpotency_cap)
    moved = phi.apply_point(point)
    violated = ctx.algebra.point_on_variety(moved)
    payload = {
        **_meta(cfg),
        "derivation": args.derivation,
        "s": str(s),
        "point": {v: str(x) for v, x in sorted(point.items())},
        "image": {v: str(x) for v, x in sorted(moved.items())},
        "on_variety": violated is None,
    }
    lines = [f"exp({args.s} * {args.derivation}) at {args.point}:"]
    for v in ctx.algebra.ring.names:
        lines.append(f"  {v}: {point[v]} -> {moved[v]}")
    lines.append(
        "image satisfies the relations"
        if violated is None
        else f"image VIOLATES {violated}"
    )
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_YES if violated is None else EXIT_NO


def _cmd_derive_rank(args) -> int:
    cfg = _config(args, "derive rank")
    ctx = _derive_context(cfg.target, cfg.seed)
    names = [n.strip() for n in args.derivations.split(",") if n.strip()]
    deltas = [_pick_derivation(ctx, n) for n in names]
    if args.point not in ctx.points:
        raise InputError(f"unknown point {args.point!r}; available: {sorted(ctx.points)}")
    point = ctx.points[args.point]
    rank = tangent_rank(deltas, point)
    payload = {
        **_meta(cfg),
        "derivations": names,
        "point": {v: str(x) for v, x in sorted(point.items())},
        "tangent_rank": rank,
    }
    _emit(cfg, payload, f"tangent rank of {names} at {args.point}: {rank}")
    return EXIT_YES


# -- verification suites -----------------------------------------------------------


def _cmd_paper_verify(args) -> int:
    cfg = _config(args, "paper verify")
    report = run_suite(
        cfg.target,
        bound=cfg.bound,
        seed=cfg.seed,
        skip_elimination=args.skip_elimination,
        effort_cap=cfg.effort_cap,
    )
    _emit(cfg, report.to_json(), report.to_text(timings=args.timings))
    return EXIT_YES if not report.refuted else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
