"""Finitely generated affine monoids P inside Z^n.

Membership is decided by exhaustive bounded search: a strictly positive
grading functional phi caps every coefficient, so the search is exact and
terminates.  Saturation points are decided exactly by the finite Pi
criterion: triangulate the cone on the monoid generators, collect the
lattice points Pi of the fundamental parallelepipeds, and test p + pi for
membership.  Soundness: every x in the cone decomposes as pi plus a
nonnegative integer combination of generators, so p + x is a member
whenever all p + pi are.  Necessity: Pi is a subset of the saturation.

Nowhere-saturated faces can only be certified with a caller-supplied
family of hole offsets; without one the verdict stays bound-qualified.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Vec, as_vector, dot, is_zero_vec, primitive, vec_add, vec_sub, vec_scale
from .cones import Face, RationalCone, hilbert_basis, parallelepiped_points, triangulate


class MonoidError(ValueError):
    pass


class CertificateError(ValueError):
    pass


def degree_key(phi):
    def key(v):
        return (dot(phi, v), v)

    return key


class MonoidPresentation:
    """A monoid given by generators, its cone, and a grading functional."""

    def __init__(self, generators, rank: int | None = None, grading_functional=None):
        gens = [as_vector(g) for g in generators]
        if rank is None:
            if not gens:
                raise MonoidError("need generators or an explicit rank")
            rank = len(gens[0])
        self.generators = tuple(
            dict.fromkeys(g for g in gens if not is_zero_vec(g))
        )
        if not self.generators:
            raise MonoidError("monoid needs at least one nonzero generator")
        self.rank = rank
        self.cone = RationalCone.from_generators(self.generators, rank)
        if not self.cone.is_pointed():
            raise MonoidError(
                "monoid cone is not pointed (degenerate input rejected here)"
            )
        if grading_functional is None:
            total = tuple(
                sum(h[i] for h in self.cone.facets) for i in range(rank)
            )
            grading_functional = primitive(total)
        self.grading_functional = as_vector(grading_functional)
        bad = [g for g in self.generators if dot(self.grading_functional, g) <= 0]
        if bad:
            raise MonoidError(
                f"grading functional {self.grading_functional} is not strictly "
                f"positive on generators {bad}"
            )
        by_degree = sorted(
            self.generators,
            key=lambda g: (-dot(self.grading_functional, g), g),
        )
        self._branch = [(g, dot(self.grading_functional, g)) for g in by_degree]
        self._member_cache: dict[Vec, tuple | None] = {}
        self._fail_memo: set[tuple[Vec, int]] = set()
        self._pi_set: tuple | None = None
        self._saturation_cache: dict[Vec, object] = {}
        self._hilbert_cache: list[Vec] | None = None

    def degree(self, v) -> int:
        return dot(self.grading_functional, v)

    # -- membership -------------------------------------------------------

    def contains(self, v) -> bool:
        return self.membership_witness(v) is not None

    def membership_witness(self, v) -> tuple | None:
        """Coefficients over `generators` when v is a member, else None."""
        v = as_vector(v)
        if v in self._member_cache:
            return self._member_cache[v]
        if is_zero_vec(v):
            witness = (0,) * len(self.generators)
        elif not self.cone.contains(v):
            witness = None
        else:
            found = self._search(v, 0)
            if found is None:
                witness = None
            else:
                by_gen = dict(found)
                witness = tuple(by_gen.get(g, 0) for g in self.generators)
        self._member_cache[v] = witness
        return witness

    def _search(self, residual: Vec, i: int):
        if is_zero_vec(residual):
            return []
        if i == len(self._branch):
            return None
        if (residual, i) in self._fail_memo:
            return None
        g, dg = self._branch[i]
        top = dot(self.grading_functional, residual) // dg
        entered = False
        for a in range(top, -1, -1):
            r2 = vec_sub(residual, vec_scale(a, g))
            if not self.cone.contains(r2):
                if entered:
                    break
                continue
            entered = True
            rest = self._search(r2, i + 1)
            if rest is not None:
                return ([(g, a)] if a else []) + rest
        self._fail_memo.add((residual, i))
        return None

    # -- enumeration ------------------------------------------------------

    def hilbert_basis_of_cone(self) -> list[Vec]:
        if self._hilbert_cache is None:
            self._hilbert_cache = hilbert_basis(self.cone)
        return self._hilbert_cache

    def saturation_points_up_to(self, bound: int) -> list[Vec]:
        """Points of P_sat = cone cap Z^n with degree <= bound, degree order."""
        return cone_points_up_to(
            self.cone, self.grading_functional, bound, self.hilbert_basis_of_cone()
        )

    def saturation(self) -> "MonoidPresentation":
        """Presentation of P_sat on the Hilbert basis of the same cone."""
        return MonoidPresentation(
            self.hilbert_basis_of_cone(), self.rank, self.grading_functional
        )

    def is_saturated(self) -> bool:
        return all(self.contains(h) for h in self.hilbert_basis_of_cone())

    def holes_up_to(self, bound: int) -> list[Vec]:
        """All points of P_sat minus P with degree <= bound, sorted lex."""
        if bound < 0:
            raise MonoidError("hole bound must be nonnegative")
        holes = []
        for v in self.saturation_points_up_to(bound):
            if not self.contains(v):
                if not self.cone.contains(v):
                    raise MonoidError(f"enumerated point {v} escaped the cone")
                holes.append(v)
        return sorted(holes)

    # -- saturation points (Pi criterion) -----------------------------------

    def pi_set(self) -> tuple:
        """Parallelepiped points of a generator triangulation of the cone."""
        if self._pi_set is None:
            points = set()
            for piece in triangulate(self.cone, self.generators):
                points.update(parallelepiped_points(piece))
            points.discard((0,) * self.rank)
            self._pi_set = tuple(sorted(points, key=degree_key(self.grading_functional)))
        return self._pi_set

    def is_saturation_point(self, p):
        p = as_vector(p)
        cached = self._saturation_cache.get(p)
        if cached is not None:
            return cached
        if not self.contains(p):
            raise MonoidError(
                f"saturation points are sought inside P; {p} is not a member"
            )
        verdict = None
        for pi in self.pi_set():
            shifted = vec_add(p, pi)
            if not self.contains(shifted):
                verdict = NotSaturationPoint(p, shifted)
                break
        if verdict is None:
            verdict = SaturationPoint(p, self.pi_set())
        self._saturation_cache[p] = verdict
        return verdict

    # -- faces --------------------------------------------------------------

    def dual_pair(self) -> tuple[RationalCone, RationalCone]:
        """(sigma, sigma-dual): the orbit cone and the monoid cone."""
        return self.cone.dual(), self.cone

    def face_points_up_to(self, face: Face, bound: int) -> list[Vec]:
        """Lattice points of the face with degree <= bound, degree order."""
        if not face.generators:
            return [(0,) * self.rank]
        face_cone = RationalCone.from_generators(face.generators, self.rank)
        return cone_points_up_to(face_cone, self.grading_functional, bound)

    def face_saturation_status(self, face: Face, bound: int, certificate=None):
        """Search the face for a Pi-certified saturation point of P.

        Returns AlmostSaturated on the first hit in (degree, lex) order.
        Without a hit the verdict is NowhereSaturatedUpTo(bound), upgraded
        to NowhereSaturatedCertified when the supplied hole-family
        certificate validates.
        """
        if face.parent != self.cone:
            raise MonoidError("face does not belong to the monoid cone")
        for p in self.face_points_up_to(face, bound):
            if not self.contains(p):
                continue
            verdict = self.is_saturation_point(p)
            if isinstance(verdict, SaturationPoint):
                return AlmostSaturated(p)
        if certificate is not None:
            checked = self.validate_certificate(face, certificate, bound)
            return NowhereSaturatedCertified(certificate, checked)
        return NowhereSaturatedUpTo(bound)

    def validate_certificate(self, face: Face, certificate, bound: int) -> int:
        """Check a hole-family certificate on every face point up to the
        larger of `bound` and the certificate's own check bound."""
        checked = max(bound, certificate.check_bound)
        for entry in certificate.entries:
            if not self.cone.contains(entry.offset):
                raise CertificateError(
                    f"offset {entry.offset} lies outside the saturation"
                )
        for p in self.face_points_up_to(face, checked):
            if not self.contains(p):
                continue
            entry = certificate.match(p)
            if entry is None:
                raise CertificateError(
                    f"certificate covers no predicate for face point {p}"
                )
            target = vec_add(p, entry.offset)
            if self.contains(target):
                raise CertificateError(
                    f"certificate falsified: {p} + {entry.offset} = {target} is in P"
                )
        return checked

    # -- comparison with an external predicate ------------------------------

    def equals_predicate_up_to(self, predicate, bound: int, region: RationalCone | None = None):
        """(True, None) if membership agrees with `predicate` on every
        lattice point of the comparison region with degree <= bound, else
        (False, v) with the first discrepancy in (degree, lex) order.

        The region defaults to the monoid's own cone; pass a larger cone to
        catch predicate points that the generators miss entirely.
        """
        if region is None or region == self.cone:
            points = self.saturation_points_up_to(bound)
        else:
            points = cone_points_up_to(region, self.grading_functional, bound)
        for v in points:
            if self.contains(v) != bool(predicate(v)):
                return False, v
        return True, None

    def __repr__(self):
        return (
            f"MonoidPresentation(rank={self.rank}, "
            f"generators={list(self.generators)})"
        )


def cone_points_up_to(cone: RationalCone, phi, bound: int, basis=None) -> list[Vec]:
    """All lattice points of a pointed cone with <phi, v> <= bound.

    Enumerated as sums of Hilbert basis elements; phi must be strictly
    positive on the cone minus the origin so the enumeration is finite and
    complete within the bound.
    """
    if basis is None:
        basis = hilbert_basis(cone)
    zero = (0,) * cone.rank
    points = {zero}
    for g in basis:
        dg = dot(phi, g)
        if dg <= 0:
            raise MonoidError(f"functional is not strictly positive on {g}")
        for p in list(points):
            q = p
            while True:
                q = vec_add(q, g)
                if dot(phi, q) > bound:
                    break
                points.add(q)
    return sorted(points, key=degree_key(phi))


# -- verdict types ----------------------------------------------------------


@dataclass(frozen=True)
class SaturationPoint:
    point: Vec
    certificate: tuple  # the verified Pi-set


@dataclass(frozen=True)
class NotSaturationPoint:
    point: Vec
    hole_witness: Vec


@dataclass(frozen=True)
class AlmostSaturated:
    witness: Vec


@dataclass(frozen=True)
class NowhereSaturatedUpTo:
    bound: int


@dataclass(frozen=True)
class NowhereSaturatedCertified:
    certificate: "HoleFamilyCertificate"
    bound: int


@dataclass(frozen=True)
class ResiduePredicate:
    """Conjunction of congruence conditions coord = value (mod modulus)."""

    conditions: tuple  # of (coordinate index, modulus, value)

    def matches(self, v) -> bool:
        return all(v[i] % m == r for i, m, r in self.conditions)

    @classmethod
    def from_json(cls, data) -> "ResiduePredicate":
        return cls(tuple((int(i), int(m), int(r)) for i, m, r in data))

    def to_json(self):
        return [list(c) for c in self.conditions]


@dataclass(frozen=True)
class CertificateEntry:
    predicate: ResiduePredicate
    offset: Vec


@dataclass(frozen=True)
class HoleFamilyCertificate:
    """Finite family (residue predicate -> hole offset) for one face.

    Validation re-checks, for every face point p of P up to the bound, that
    some entry matches p and that p + offset fails membership.
    """

    entries: tuple  # of CertificateEntry
    check_bound: int

    def match(self, p) -> CertificateEntry | None:
        for entry in self.entries:
            if entry.predicate.matches(p):
                return entry
        return None

    @classmethod
    def from_json(cls, data) -> "HoleFamilyCertificate":
        entries = tuple(
            CertificateEntry(
                ResiduePredicate.from_json(e.get("residues", [])),
                as_vector(e["offset"]),
            )
            for e in data["entries"]
        )
        return cls(entries, int(data.get("check_bound", 0)))

    def to_json(self):
        return {
            "check_bound": self.check_bound,
            "entries": [
                {"residues": e.predicate.to_json(), "offset": list(e.offset)}
                for e in self.entries
            ],
        }
