"""Flexibility analysis of an affine toric variety from its weight monoid.

The decision combines two face-level criteria on the dual pair (sigma,
sigma-dual): a divisorial orbit consists of smooth points iff the dual
face of its ray is almost saturated, and the variety is flexible iff the
primitive generators of the almost-saturated rays span the whole space
(no hyperplane through the origin contains them all).  Both criteria are
decided with exact arithmetic; where a face search is bound-limited the
verdict says so instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import __version__
from .cones import Face, RationalCone, dual_face, face_lattice
from .linalg import as_matrix, dot, rank as mat_rank, kernel_lattice
from .monoid import (
    AlmostSaturated,
    HoleFamilyCertificate,
    MonoidPresentation,
    NowhereSaturatedCertified,
    NowhereSaturatedUpTo,
)
from .reports import RayEntry, ToricReport, Verdict

SMOOTH = "smooth"
SINGULAR = "singular"
UNKNOWN = "unknown"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class OrbitEntry:
    """One torus orbit, indexed by a face of sigma."""

    face: Face
    dim: int
    dual: Face
    weight_complement: tuple
    smoothness: str

    def to_json(self):
        return {
            "orbit_dim": self.dim,
            "face_generators": [list(g) for g in self.face.generators],
            "dual_face_generators": [list(g) for g in self.dual.generators],
            "orbit_ideal_weights": [list(w) for w in self.weight_complement],
            "smoothness": self.smoothness,
        }


def _certificate_for(certs, ray) -> HoleFamilyCertificate | None:
    if not certs:
        return None
    return certs.get(tuple(ray))


def sigma_cone(p: MonoidPresentation) -> RationalCone:
    return p.cone.dual()


def ray_faces(p: MonoidPresentation) -> list[Face]:
    return [f for f in face_lattice(sigma_cone(p)) if f.dim == 1]


def face_status_for_ray(p: MonoidPresentation, ray_face: Face, bound: int, certs=None):
    ray = ray_face.generators[0]
    cert = _certificate_for(certs, ray)
    hat = dual_face(p.cone, ray_face)
    return p.face_saturation_status(hat, bound, cert)


def orbit_census(p: MonoidPresentation, bound: int | None = None, certs=None) -> list[OrbitEntry]:
    """One entry per face of sigma; smoothness is resolved for divisorial
    orbits when a bound is supplied and left undetermined otherwise."""
    sigma = sigma_cone(p)
    entries = []
    for face in face_lattice(sigma):
        hat = dual_face(p.cone, face)
        complement = tuple(
            g
            for g in p.generators
            if not all(dot(p.cone.h_rep[i], g) == 0 for i in hat.tight_normals)
        )
        smoothness = UNDETERMINED
        if face.dim == 1 and bound is not None:
            smoothness = divisorial_smoothness(p, face, bound, certs)
        entries.append(OrbitEntry(face, face.dim, hat, complement, smoothness))
    return entries


def divisorial_smoothness(p: MonoidPresentation, ray, bound: int, certs=None) -> str:
    """Smooth | singular | unknown for the orbit of an extremal ray of sigma."""
    sigma = sigma_cone(p)
    if isinstance(ray, Face):
        ray_face = ray
        if ray_face.dim != 1 or ray_face.parent != sigma:
            raise ValueError("not an extremal ray of the orbit cone")
    else:
        ray = tuple(ray)
        match = [f for f in ray_faces(p) if f.generators == (ray,)]
        if not match:
            raise ValueError(f"{ray} is not an extremal ray of the orbit cone")
        ray_face = match[0]
    status = face_status_for_ray(p, ray_face, bound, certs)
    if isinstance(status, AlmostSaturated):
        return SMOOTH
    if isinstance(status, NowhereSaturatedCertified):
        return SINGULAR
    return UNKNOWN


def _ray_statuses(p: MonoidPresentation, bound: int, certs=None):
    return [(f.generators[0], face_status_for_ray(p, f, bound, certs)) for f in ray_faces(p)]


def flexibility_verdict(p: MonoidPresentation, bound: int, certs=None) -> Verdict:
    """Yes iff the almost-saturated rays span N (rank n); no iff they
    provably do not and every ray status is resolved."""
    statuses = _ray_statuses(p, bound, certs)
    return _flexibility_from_statuses(p, statuses, bound)


def _flexibility_from_statuses(p, statuses, bound) -> Verdict:
    qualified = tuple(ray for ray, s in statuses if isinstance(s, AlmostSaturated))
    n = p.rank
    rk = mat_rank(as_matrix(qualified)) if qualified else 0
    if rk == n:
        return Verdict("yes", witness=qualified)
    unresolved = tuple(ray for ray, s in statuses if isinstance(s, NowhereSaturatedUpTo))
    if not unresolved:
        normal = kernel_lattice(as_matrix(qualified), n)[0] if qualified else (1,) + (0,) * (n - 1)
        return Verdict(
            "no",
            witness=normal,
            note="hyperplane normal containing all almost-saturated rays",
        )
    return Verdict("unknown", bound=bound, witness=unresolved)


def invariant_divisor_verdict(p: MonoidPresentation, bound: int, certs=None) -> Verdict:
    """Yes iff some divisorial orbit is certified singular; no iff every
    ray face is almost saturated."""
    statuses = _ray_statuses(p, bound, certs)
    return _divisor_from_statuses(statuses, bound)


def _divisor_from_statuses(statuses, bound) -> Verdict:
    for ray, s in statuses:
        if isinstance(s, NowhereSaturatedCertified):
            return Verdict("yes", witness=ray)
    if all(isinstance(s, AlmostSaturated) for _, s in statuses):
        return Verdict("no")
    return Verdict(
        "unknown",
        bound=bound,
        witness=tuple(ray for ray, s in statuses if isinstance(s, NowhereSaturatedUpTo)),
    )


def analyze(
    p: MonoidPresentation,
    bound: int,
    certs=None,
    seed: int | None = None,
) -> ToricReport:
    """Full report: ray table, flexibility, invariant divisor, conjunction."""
    statuses = _ray_statuses(p, bound, certs)
    flexible = _flexibility_from_statuses(p, statuses, bound)
    divisor = _divisor_from_statuses(statuses, bound)
    if flexible.kind == "yes" and divisor.kind == "yes":
        combined = Verdict("yes")
    elif "no" in (flexible.kind, divisor.kind):
        combined = Verdict("no")
    else:
        combined = Verdict("unknown", bound=bound)
    entries = []
    for ray, s in statuses:
        if isinstance(s, AlmostSaturated):
            entries.append(
                RayEntry(ray, "almost-saturated", SMOOTH, witness=s.witness)
            )
        elif isinstance(s, NowhereSaturatedCertified):
            entries.append(
                RayEntry(ray, "nowhere-saturated-certified", SINGULAR, bound=s.bound)
            )
        else:
            entries.append(
                RayEntry(ray, "nowhere-saturated-up-to", UNKNOWN, bound=s.bound)
            )
    sigma = sigma_cone(p)
    return ToricReport(
        rank=p.rank,
        generators=p.generators,
        degenerate=False,
        extremal_rays=tuple(sigma.v_rep),
        orbit_dims=tuple(sorted(f.dim for f in face_lattice(sigma))),
        rays=tuple(entries),
        flexible=flexible,
        invariant_divisor=divisor,
        combined=combined,
        bound=bound,
        seed=seed,
        version=__version__,
    )


def analyze_generators(
    generators,
    rank: int | None = None,
    bound: int = 8,
    certs=None,
    seed: int | None = None,
    grading_functional=None,
) -> ToricReport:
    """Entry point that also handles degenerate input: if the weight cone
    is not pointed the report flags it and refuses the verdicts."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if rank is None:
        if not gens:
            raise ValueError("need generators or an explicit rank")
        rank = len(gens[0])
    cone = RationalCone.from_generators(gens, rank)
    if not cone.is_pointed():
        refused = Verdict("refused", note="criterion stated for non-degenerate toric varieties")
        return ToricReport(
            rank=rank,
            generators=tuple(gens),
            degenerate=True,
            extremal_rays=(),
            orbit_dims=(),
            rays=(),
            flexible=refused,
            invariant_divisor=refused,
            combined=refused,
            bound=bound,
            seed=seed,
            version=__version__,
        )
    p = MonoidPresentation(gens, rank, grading_functional)
    return analyze(p, bound, certs, seed)
