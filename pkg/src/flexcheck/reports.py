"""Report value objects with deterministic JSON and text rendering.

JSON output is canonical (sorted keys, no timestamps), so identical inputs
and seeds produce byte-identical reports.  Wall-clock timings are kept out
of the JSON payload for that reason and appear only in the human-readable
text rendering when requested.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Three-valued certified result."""

    kind: str  # "yes" | "no" | "unknown" | "refused"
    bound: int | None = None
    witness: object = None
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("yes", "no", "unknown", "refused"):
            raise ValueError(f"bad verdict kind {self.kind!r}")

    def to_json(self):
        out = {"kind": self.kind}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data) -> "Verdict":
        return cls(
            data["kind"],
            data.get("bound"),
            _tupled(data.get("witness")),
            data.get("note", ""),
        )


def _plain(obj):
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


def _tupled(obj):
    if isinstance(obj, list):
        return tuple(_tupled(x) for x in obj)
    return obj


@dataclass(frozen=True)
class RayEntry:
    ray: tuple
    face_status: str  # "almost-saturated" | "nowhere-saturated-certified" | "nowhere-saturated-up-to"
    orbit_smoothness: str  # "smooth" | "singular" | "unknown"
    witness: tuple | None = None
    bound: int | None = None

    def to_json(self):
        out = {
            "ray": list(self.ray),
            "face_status": self.face_status,
            "orbit_smoothness": self.orbit_smoothness,
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.bound is not None:
            out["bound"] = self.bound
        return out

    @classmethod
    def from_json(cls, data) -> "RayEntry":
        return cls(
            tuple(data["ray"]),
            data["face_status"],
            data["orbit_smoothness"],
            tuple(data["witness"]) if data.get("witness") is not None else None,
            data.get("bound"),
        )


@dataclass(frozen=True)
class ToricReport:
    rank: int
    generators: tuple
    degenerate: bool
    extremal_rays: tuple
    orbit_dims: tuple
    rays: tuple  # of RayEntry
    flexible: Verdict
    invariant_divisor: Verdict
    combined: Verdict
    bound: int
    seed: int | None = None
    version: str = ""

    def to_json(self):
        return {
            "kind": "toric-report",
            "version": self.version,
            "seed": self.seed,
            "bound": self.bound,
            "rank": self.rank,
            "generators": [list(g) for g in self.generators],
            "degenerate": self.degenerate,
            "extremal_rays": [list(r) for r in self.extremal_rays],
            "orbit_dims": list(self.orbit_dims),
            "rays": [r.to_json() for r in self.rays],
            "flexible": self.flexible.to_json(),
            "invariant_divisor": self.invariant_divisor.to_json(),
            "combined": self.combined.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "ToricReport":
        return cls(
            rank=data["rank"],
            generators=tuple(tuple(g) for g in data["generators"]),
            degenerate=data["degenerate"],
            extremal_rays=tuple(tuple(r) for r in data["extremal_rays"]),
            orbit_dims=tuple(data["orbit_dims"]),
            rays=tuple(RayEntry.from_json(r) for r in data["rays"]),
            flexible=Verdict.from_json(data["flexible"]),
            invariant_divisor=Verdict.from_json(data["invariant_divisor"]),
            combined=Verdict.from_json(data["combined"]),
            bound=data["bound"],
            seed=data.get("seed"),
            version=data.get("version", ""),
        )

    def to_text(self) -> str:
        lines = []
        lines.append(f"toric analysis (bound {self.bound})")
        lines.append(f"  rank {self.rank}, generators {[list(g) for g in self.generators]}")
        if self.degenerate:
            lines.append("  DEGENERATE input: cone is not pointed, verdicts refused")
            return "\n".join(lines)
        lines.append(f"  extremal rays of the orbit cone: {[list(r) for r in self.extremal_rays]}")
        lines.append(f"  orbit dimensions: {list(self.orbit_dims)}")
        header = f"  {'ray':<14} {'dual-face status':<32} {'orbit':<9} witness/bound"
        lines.append(header)
        for r in self.rays:
            extra = ""
            if r.witness is not None:
                extra = f"witness {list(r.witness)}"
            elif r.bound is not None:
                extra = f"up to degree {r.bound}"
            lines.append(
                f"  {str(list(r.ray)):<14} {r.face_status:<32} {r.orbit_smoothness:<9} {extra}"
            )
        lines.append(f"  flexible:            {_verdict_text(self.flexible)}")
        lines.append(f"  invariant divisor:   {_verdict_text(self.invariant_divisor)}")
        lines.append(f"  combined:            {_verdict_text(self.combined)}")
        return "\n".join(lines)


def _verdict_text(v: Verdict) -> str:
    s = v.kind
    if v.kind == "unknown" and v.bound is not None:
        s += f" (searched up to degree {v.bound})"
    if v.witness is not None:
        s += f" [witness {_plain(v.witness)}]"
    if v.note:
        s += f" ({v.note})"
    return s


@dataclass(frozen=True)
class CheckEntry:
    claim: str
    status: str  # "verified" | "refuted" | "unknown" | "not-machine-checkable"
    detail: str = ""
    witness: object = None
    seconds: float | None = field(default=None, compare=False)

    def to_json(self):
        out = {"claim": self.claim, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        return out

    @classmethod
    def from_json(cls, data) -> "CheckEntry":
        return cls(
            data["claim"],
            data["status"],
            data.get("detail", ""),
            _tupled(data.get("witness")),
        )


@dataclass(frozen=True)
class CensusReport:
    scenario: str
    seed: int | None
    bounds: dict
    entries: tuple  # of CheckEntry
    version: str = ""

    @property
    def refuted(self) -> tuple:
        return tuple(e for e in self.entries if e.status == "refuted")

    @property
    def unknown(self) -> tuple:
        return tuple(e for e in self.entries if e.status == "unknown")

    def to_json(self):
        return {
            "kind": "census-report",
            "version": self.version,
            "scenario": self.scenario,
            "seed": self.seed,
            "bounds": {k: self.bounds[k] for k in sorted(self.bounds)},
            "counts": {
                "verified": sum(1 for e in self.entries if e.status == "verified"),
                "refuted": len(self.refuted),
                "unknown": len(self.unknown),
                "not-machine-checkable": sum(
                    1 for e in self.entries if e.status == "not-machine-checkable"
                ),
            },
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "CensusReport":
        return cls(
            data["scenario"],
            data.get("seed"),
            dict(data.get("bounds", {})),
            tuple(CheckEntry.from_json(e) for e in data["entries"]),
            data.get("version", ""),
        )

    def to_text(self, timings: bool = False) -> str:
        lines = [f"verification suite: {self.scenario}"]
        if self.bounds:
            lines.append(
                "  bounds: " + ", ".join(f"{k}={v}" for k, v in sorted(self.bounds.items()))
            )
        width = max(len(e.claim) for e in self.entries) if self.entries else 0
        for e in self.entries:
            mark = {
                "verified": "ok",
                "refuted": "FAIL",
                "unknown": "unknown",
                "not-machine-checkable": "n/a",
            }[e.status]
            line = f"  {e.claim:<{width}}  {mark:<8} {e.detail}"
            if timings and e.seconds is not None:
                line += f"  [{e.seconds:.3f}s]"
            lines.append(line.rstrip())
        counts = self.to_json()["counts"]
        lines.append(
            "  summary: "
            + ", ".join(f"{k}={v}" for k, v in counts.items() if v)
        )
        return "\n".join(lines)


def dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
