"""Finitely generated rational polyhedral cones.

Both representations are kept on every cone: v_rep (primitive generators,
extremal rays when the cone is pointed) and h_rep (primitive inequality
normals; a vector w is in the cone iff <h, w> >= 0 for every h).  Linear
span constraints appear in h_rep as opposite pairs of normals.  All
enumeration output is sorted lexicographically so runs are reproducible.

Conversion between the representations is done by brute-force facet and
ray enumeration over (dim-1)-subsets of generators, which is exact and
entirely adequate for the ambient ranks (<= 6) this package targets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .linalg import (
    Vec,
    as_matrix,
    as_vector,
    det,
    dot,
    identity,
    is_zero_vec,
    kernel_lattice,
    hermite_normal_form,
    primitive,
    rank as mat_rank,
    solve_rational,
    transpose,
)


class ConeError(ValueError):
    pass


def _span_bases(gens: list[Vec], rank: int) -> tuple[list[Vec], list[Vec]]:
    """(orthogonal complement basis, lattice basis of span cap Z^rank)."""
    if gens:
        comp = kernel_lattice(as_matrix(gens), rank)
    else:
        comp = list(identity(rank))
    if comp:
        span = kernel_lattice(as_matrix(comp), rank)
    else:
        span = list(identity(rank))
    return comp, span


def _coords_in_basis(v: Vec, basis: list[Vec]) -> Vec:
    """Integer coordinates of a lattice vector in a span-lattice basis."""
    sol = solve_rational(transpose(as_matrix(basis)), v)
    if sol is None or any(c.denominator != 1 for c in sol):
        raise ConeError(f"{v} is not in the span lattice")
    return tuple(int(c) for c in sol)


def _normal_to_ambient(nu: Vec, basis: list[Vec]) -> Vec:
    """Lift a span-coordinate normal to a primitive ambient normal that
    restricts to it on the span."""
    gram = as_matrix([[dot(b1, b2) for b2 in basis] for b1 in basis])
    c = solve_rational(gram, nu)
    coords = [Fraction(0)] * len(basis[0])
    for ci, b in zip(c, basis):
        for k, x in enumerate(b):
            coords[k] += ci * x
    denom = 1
    for x in coords:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    return primitive(tuple(int(x * denom) for x in coords))


def _facets_in_coords(gens: list[Vec], d: int) -> list[Vec]:
    """Primitive facet normals of a full-dimensional cone in d-space."""
    if d == 0 or not gens:
        return []
    if d == 1:
        pos = any(g[0] > 0 for g in gens)
        neg = any(g[0] < 0 for g in gens)
        if pos and neg:
            return []  # whole line
        return [(1,)] if pos else [(-1,)]
    found = set()
    for subset in itertools.combinations(gens, d - 1):
        kern = kernel_lattice(as_matrix(subset), d)
        if len(kern) != 1:
            continue
        nu = primitive(kern[0])
        pairings = [dot(nu, g) for g in gens]
        if all(p >= 0 for p in pairings):
            found.add(nu)
        elif all(p <= 0 for p in pairings):
            found.add(tuple(-x for x in nu))
    return sorted(found)


class RationalCone:
    """A rational polyhedral cone with cross-validated V- and H-data."""

    __slots__ = (
        "rank",
        "dim",
        "v_rep",
        "h_rep",
        "facets",
        "equations",
        "span_basis",
        "lineality_basis",
    )

    def __init__(self, rank, dim, v_rep, h_rep, facets, equations, span_basis, lineality):
        self.rank = rank
        self.dim = dim
        self.v_rep = v_rep
        self.h_rep = h_rep
        self.facets = facets
        self.equations = equations
        self.span_basis = span_basis
        self.lineality_basis = lineality

    @classmethod
    def from_generators(cls, gens, rank: int | None = None) -> "RationalCone":
        gens = [as_vector(g) for g in gens]
        if rank is None:
            if not gens:
                raise ConeError("need generators or an explicit rank")
            rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise ConeError("generator length disagrees with rank")
        prim = sorted({primitive(g) for g in gens if not is_zero_vec(g)})
        comp, span = _span_bases(prim, rank)
        d = len(span)
        coords = [_coords_in_basis(g, span) for g in prim] if d else []
        facets_c = _facets_in_coords(coords, d)
        lineality_c = kernel_lattice(as_matrix(facets_c), d) if d else []
        facets = (
            sorted(_normal_to_ambient(nu, span) for nu in facets_c) if d else []
        )
        lineality = [
            tuple(sum(c * b[k] for c, b in zip(l, span)) for k in range(rank))
            for l in lineality_c
        ]
        pointed = not lineality
        if not prim:
            v_rep = []
        elif pointed:
            v_rep = []
            for g, gc in zip(prim, coords):
                tight = [nu for nu in facets_c if dot(nu, gc) == 0]
                if d == 1 or mat_rank(as_matrix(tight)) == d - 1:
                    v_rep.append(g)
        else:
            v_rep = _minimal_generators(prim, rank)
        equations = sorted(comp)
        h_rep = sorted(set(facets) | {e for eq in equations for e in (eq, tuple(-x for x in eq))})
        return cls(
            rank,
            d,
            tuple(sorted(v_rep)),
            tuple(h_rep),
            tuple(facets),
            tuple(equations),
            tuple(span),
            tuple(lineality),
        )

    @classmethod
    def from_inequalities(cls, normals, rank: int | None = None) -> "RationalCone":
        normals = [as_vector(h) for h in normals]
        if rank is None:
            if not normals:
                raise ConeError("need inequalities or an explicit rank")
            rank = len(normals[0])
        dual = cls.from_generators(normals, rank)
        return cls.from_generators(dual.h_rep, rank)

    # -- queries ---------------------------------------------------------

    def contains(self, v) -> bool:
        return all(dot(h, v) >= 0 for h in self.h_rep)

    def contains_in_interior_of_span(self, v) -> bool:
        return self.contains(v) and all(dot(h, v) > 0 for h in self.facets)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(g) for g in other.v_rep)

    def is_pointed(self) -> bool:
        return mat_rank(as_matrix(self.h_rep)) == self.rank if self.h_rep else self.rank == 0

    def dual(self) -> "RationalCone":
        return RationalCone.from_generators(self.h_rep or [], self.rank)

    def __eq__(self, other):
        return (
            isinstance(other, RationalCone)
            and self.rank == other.rank
            and self.v_rep == other.v_rep
            and self.h_rep == other.h_rep
        )

    def __hash__(self):
        return hash((self.rank, self.v_rep, self.h_rep))

    def __repr__(self):
        return f"RationalCone(rank={self.rank}, dim={self.dim}, rays={list(self.v_rep)})"

    def validate(self) -> None:
        """Cross-validate the two representations; raises on mismatch."""
        for g in self.v_rep:
            if not self.contains(g):
                raise ConeError(f"generator {g} violates an inequality")
        if RationalCone.from_generators(self.v_rep, self.rank).h_rep != self.h_rep:
            raise ConeError("representations describe different cones")
        for h in self.facets:
            tight = [g for g in self.v_rep if dot(h, g) == 0]
            basis = list(tight) + list(self.lineality_basis)
            if self.dim and mat_rank(as_matrix(basis) if basis else ()) < self.dim - 1:
                raise ConeError(f"normal {h} is not facet-defining")


def _minimal_generators(prim: list[Vec], rank: int) -> list[Vec]:
    """Greedy generator-minimal subset (used for non-pointed cones)."""
    keep = list(prim)
    for g in list(prim):
        rest = [v for v in keep if v != g]
        if not rest:
            continue
        comp, span = _span_bases(rest, rank)
        try:
            coords = [_coords_in_basis(v, span) for v in rest]
            gc = _coords_in_basis(g, span)
        except ConeError:
            continue
        facets_c = _facets_in_coords(coords, len(span))
        if all(dot(nu, gc) >= 0 for nu in facets_c):
            keep = rest
    return keep


def double_description(generators=None, inequalities=None, rank=None) -> RationalCone:
    """Build a cone from either description; both get populated."""
    if (generators is None) == (inequalities is None):
        raise ConeError("provide exactly one of generators or inequalities")
    if generators is not None:
        if not list(generators) and rank is None:
            raise ConeError("empty generator list needs an explicit rank")
        return RationalCone.from_generators(generators, rank)
    return RationalCone.from_inequalities(inequalities, rank)


def dual_cone(c: RationalCone) -> RationalCone:
    return c.dual()


def is_pointed(c: RationalCone) -> bool:
    return c.is_pointed()


# -- faces ----------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    parent: RationalCone
    tight_normals: frozenset
    generators: tuple
    span_basis: tuple
    dim: int

    def cone(self) -> RationalCone:
        gens = list(self.generators)
        for l in self.parent.lineality_basis:
            gens += [l, tuple(-x for x in l)]
        return RationalCone.from_generators(gens, self.parent.rank)

    def sort_key(self):
        return (self.dim, tuple(sorted(self.tight_normals)), self.generators)


def _face_from_generators(c: RationalCone, gens: tuple) -> Face:
    tight = frozenset(
        i for i, h in enumerate(c.h_rep) if all(dot(h, g) == 0 for g in gens)
    )
    closed = tuple(
        g for g in c.v_rep if all(dot(c.h_rep[i], g) == 0 for i in tight)
    )
    rows = list(closed) + list(c.lineality_basis)
    _, span = _span_bases(rows, c.rank) if rows else ([], [])
    return Face(c, tight, closed, tuple(span), len(span))


def face_lattice(c: RationalCone) -> list[Face]:
    """All faces of the cone, graded by dimension.

    The minimal face is {0} for pointed cones and the lineality space
    otherwise; the cone itself is the maximal face.
    """
    top = _face_from_generators(c, c.v_rep)
    seen = {top.tight_normals: top}
    queue = [top]
    while queue:
        face = queue.pop()
        for h in c.facets:
            sub_gens = tuple(g for g in face.generators if dot(h, g) == 0)
            if sub_gens == face.generators:
                continue
            cand = _face_from_generators(c, sub_gens)
            if cand.tight_normals not in seen:
                seen[cand.tight_normals] = cand
                queue.append(cand)
    faces = sorted(seen.values(), key=Face.sort_key)
    return faces


def dual_face(c: RationalCone, tau: Face) -> Face:
    """The face of c orthogonal to a face tau of the dual cone."""
    if tau.parent != c.dual():
        raise ConeError("tau is not a face of the dual cone")
    gens = tuple(
        g
        for g in c.v_rep
        if all(dot(g, s) == 0 for s in tau.span_basis)
    )
    return _face_from_generators(c, gens)


# -- triangulation and parallelepiped points ------------------------------


@dataclass(frozen=True)
class SimplicialPiece:
    generators: tuple

    @property
    def parallelepiped_points(self) -> tuple:
        return parallelepiped_points(self)


def _ray_multiple(v: Vec) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def triangulate(c: RationalCone, using) -> list[SimplicialPiece]:
    """Split the cone into simplicial subcones on the given generators.

    The pieces have pairwise disjoint interiors, cover the cone, and draw
    their generators from `using`.  Every `using` vector lies in some piece.
    """
    if not c.is_pointed():
        raise ConeError("triangulation requires a pointed cone")
    vecs = []
    for v in using:
        v = as_vector(v)
        if is_zero_vec(v):
            continue
        if not c.contains(v):
            raise ConeError(f"vector {v} lies outside the cone")
        if v not in vecs:
            vecs.append(v)
    hull = RationalCone.from_generators(vecs, c.rank) if vecs else None
    for ray in c.v_rep:
        if hull is None or not hull.contains(ray):
            raise ConeError(f"vectors do not generate the cone: ray {ray} is not in their hull")
    pieces = _triangulate_rec(c, sorted(vecs))
    return [SimplicialPiece(tuple(p)) for p in pieces]


def _triangulate_rec(c: RationalCone, vecs: list[Vec]) -> list[tuple]:
    d = c.dim
    if d == 0:
        return []
    if d == 1:
        best = min(vecs, key=lambda v: (_ray_multiple(v), v))
        return [(best,)]
    _, span = _span_bases(vecs, c.rank)
    coords = {v: _coords_in_basis(v, span) for v in vecs}
    if d == 2:
        by_dir = {}
        for v in vecs:
            by_dir.setdefault(primitive(coords[v]), []).append(v)
        reps = [min(vs, key=lambda v: (_ray_multiple(v), v)) for vs in by_dir.values()]

        def cross(u, v):
            cu, cv = coords[u], coords[v]
            return cu[0] * cv[1] - cu[1] * cv[0]

        reps.sort(key=cmp_to_key(lambda u, v: -1 if cross(u, v) > 0 else 1))
        return [
            (reps[i], reps[i + 1])
            for i in range(len(reps) - 1)
            if cross(reps[i], reps[i + 1]) != 0
        ]
    if len(vecs) == d and mat_rank(as_matrix(vecs)) == d:
        return [tuple(vecs)]
    v0 = vecs[0]
    pieces = []
    for h in c.facets:
        if dot(h, v0) == 0:
            continue
        sub_vecs = sorted(v for v in vecs if dot(h, v) == 0)
        if not sub_vecs:
            continue
        sub_cone = RationalCone.from_generators(sub_vecs, c.rank)
        for piece in _triangulate_rec(sub_cone, sub_vecs):
            pieces.append(piece + (v0,))
    return pieces


def parallelepiped_points(piece: SimplicialPiece) -> tuple:
    """Lattice points of the half-open parallelepiped of the piece.

    For generators g_1..g_k these are the points of {sum t_i g_i : 0 <= t_i < 1};
    there are exactly |det| of them, counted in the span lattice.
    """
    gens = [as_vector(g) for g in piece.generators]
    if not gens:
        return ()
    rank = len(gens[0])
    if mat_rank(as_matrix(gens)) != len(gens):
        raise ConeError("piece generators are not linearly independent")
    _, span = _span_bases(gens, rank)
    coords = as_matrix([_coords_in_basis(g, span) for g in gens])
    k = len(gens)
    h, _ = hermite_normal_form(coords)
    points_c = set()
    for box in itertools.product(*(range(h[i][i]) for i in range(k))):
        t = solve_rational(transpose(coords), box)
        shifted = list(box)
        for ti, g in zip(t, coords):
            f = ti.numerator // ti.denominator  # floor
            if f:
                for j in range(k):
                    shifted[j] -= f * g[j]
        points_c.add(tuple(shifted))
    if len(points_c) != abs(det(coords)):
        raise ConeError("parallelepiped enumeration lost a residue class")
    points = {
        tuple(sum(ci * b[j] for ci, b in zip(pc, span)) for j in range(rank))
        for pc in points_c
    }
    return tuple(sorted(points))


def hilbert_basis(c: RationalCone) -> list[Vec]:
    """The unique minimal generating set of the monoid C cap Z^n.

    Candidates are collected from the parallelepiped points of a
    triangulation on the extremal rays plus the rays themselves, then
    reduced to the irreducible elements by pairwise subtraction.
    """
    if not c.is_pointed():
        raise ConeError("Hilbert basis requires pointed cone")
    if c.dim == 0:
        return []
    candidates = set(c.v_rep)
    for piece in triangulate(c, c.v_rep):
        candidates.update(parallelepiped_points(piece))
    candidates.discard((0,) * c.rank)
    basis = []
    for cand in candidates:
        reducible = False
        for other in candidates:
            if other == cand:
                continue
            diff = tuple(a - b for a, b in zip(cand, other))
            if not is_zero_vec(diff) and c.contains(diff):
                reducible = True
                break
        if not reducible:
            basis.append(cand)
    return sorted(basis)
