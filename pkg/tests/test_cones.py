import itertools
import math
import random
from fractions import Fraction

import pytest

from flexcheck.linalg import as_matrix, det, dot, rank
from flexcheck.cones import (
    ConeError,
    RationalCone,
    SimplicialPiece,
    double_description,
    dual_cone,
    dual_face,
    face_lattice,
    hilbert_basis,
    is_pointed,
    parallelepiped_points,
    triangulate,
)

OCTANT = RationalCone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
# dual pair from the non-normal 3-fold example: sigma has these rays ...
SIGMA = RationalCone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
# ... and sigma-dual is generated by the monoid generators
SIGMA_DUAL_GENS = [(1, 0, 0), (0, 1, 0), (2, 0, 1), (2, 0, 2), (0, 1, 1)]
SIGMA_DUAL = RationalCone.from_generators(SIGMA_DUAL_GENS)


def brute_force_dual_check(cone, candidates):
    # Fourier-Motzkin style oracle on a box of integer points: a point is in
    # the dual iff it pairs nonnegatively with every generator.
    for v in candidates:
        expected = all(dot(v, g) >= 0 for g in cone.v_rep)
        assert cone.dual().contains(v) == expected


def test_octant_is_self_dual():
    d = dual_cone(OCTANT)
    assert d == OCTANT
    assert d.v_rep == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_dual_of_sigma_matches_monoid_cone():
    d = dual_cone(SIGMA)
    assert set(d.v_rep) == {(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)}
    assert set(d.facets) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)}
    assert d == SIGMA_DUAL
    box = itertools.product(range(-2, 3), repeat=3)
    brute_force_dual_check(SIGMA, list(box))


def test_dual_of_half_plane_is_ray():
    half = RationalCone.from_generators([(1, 0), (0, 1), (0, -1)])
    d = dual_cone(half)
    assert d.v_rep == ((1, 0),)
    assert d.dim == 1


def test_biduality():
    for c in (OCTANT, SIGMA, SIGMA_DUAL):
        assert dual_cone(dual_cone(c)) == c


def test_double_description_drops_non_extremal_ray():
    c = double_description(generators=[(1, 0), (1, 1), (1, 2)])
    assert c.v_rep == ((1, 0), (1, 2))


def test_double_description_sigma_dual_extremal_rays():
    c = double_description(generators=[(1, 0, 0), (0, 1, 0), (2, 0, 1), (2, 0, 2), (0, 1, 1)])
    assert set(c.v_rep) == {(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)}
    # brute-force extremality oracle: a ray is extremal iff it is not in the
    # cone spanned by the other rays
    for g in c.v_rep:
        others = [v for v in c.v_rep if v != g]
        assert not RationalCone.from_generators(others, 3).contains(g)


def test_double_description_single_ray_hrep():
    c = double_description(generators=[(1, 1)])
    # the ray x = y >= 0: cut out by the equality pair plus one inequality
    assert c.dim == 1
    assert c.contains((2, 2))
    assert not c.contains((1, 2))
    assert not c.contains((-1, -1))
    assert (1, -1) in c.h_rep and (-1, 1) in c.h_rep


def test_double_description_from_inequalities():
    c = double_description(inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    assert c == SIGMA_DUAL


def test_is_pointed():
    assert is_pointed(OCTANT)
    assert not is_pointed(RationalCone.from_generators([(1, 0), (0, 1), (0, -1)]))
    assert is_pointed(SIGMA_DUAL)
    assert rank(as_matrix(SIGMA_DUAL.facets)) == 3


def test_face_lattice_octant():
    faces = face_lattice(OCTANT)
    assert len(faces) == 8
    by_dim = {}
    for f in faces:
        by_dim.setdefault(f.dim, 0)
        by_dim[f.dim] += 1
    assert by_dim == {0: 1, 1: 3, 2: 3, 3: 1}


def test_face_lattice_sigma_dual():
    faces = face_lattice(SIGMA_DUAL)
    assert len(faces) == 10
    dims = sorted(f.dim for f in faces)
    assert dims == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def test_face_lattice_ray():
    c = RationalCone.from_generators([(1, 1)])
    assert len(face_lattice(c)) == 2


def test_face_lattice_non_pointed_minimal_face_is_lineality():
    half = RationalCone.from_generators([(1, 0), (0, 1), (0, -1)])
    faces = face_lattice(half)
    assert sorted(f.dim for f in faces) == [1, 2]


def test_dual_face_bijection_and_dimensions():
    sigma = SIGMA_DUAL.dual()
    for tau in face_lattice(sigma):
        hat = dual_face(SIGMA_DUAL, tau)
        assert tau.dim + hat.dim == 3
        for g in hat.generators:
            assert all(dot(g, s) == 0 for s in tau.span_basis)


def test_dual_face_of_rho4():
    sigma = SIGMA_DUAL.dual()
    rho4 = next(f for f in face_lattice(sigma) if f.dim == 1 and f.generators == ((1, 1, -1),))
    hat = dual_face(SIGMA_DUAL, rho4)
    assert hat.dim == 2
    assert set(hat.generators) == {(1, 0, 1), (0, 1, 1)}
    assert dot((1, 0, 1), (1, 1, -1)) == 0


def test_dual_face_extremes():
    sigma = SIGMA_DUAL.dual()
    faces = face_lattice(sigma)
    zero = next(f for f in faces if f.dim == 0)
    full = next(f for f in faces if f.dim == 3)
    assert dual_face(SIGMA_DUAL, zero).dim == 3
    assert dual_face(SIGMA_DUAL, full).dim == 0


def test_dual_face_rejects_foreign_face():
    foreign = face_lattice(OCTANT)[0]
    with pytest.raises(ConeError):
        dual_face(SIGMA_DUAL, foreign)


def test_triangulate_octant_single_piece():
    pieces = triangulate(OCTANT, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(pieces) == 1
    assert set(pieces[0].generators) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_triangulate_2d_three_generators():
    c = RationalCone.from_generators([(1, 0), (1, 2)])
    pieces = triangulate(c, [(1, 0), (1, 1), (1, 2)])
    assert len(pieces) == 2
    vol = sum(abs(det(as_matrix(p.generators))) for p in pieces)
    assert vol == abs(det(as_matrix([(1, 0), (1, 2)])))


def test_triangulate_sigma_dual_volume_additivity():
    pieces = triangulate(SIGMA_DUAL, SIGMA_DUAL_GENS)

    def truncation_volume(ps):
        # volume of piece cap {a+b <= 1}, up to the common 1/n! factor:
        # |det(gens)| / prod(deg(gen)) with the strictly positive functional
        phi = (1, 1, 0)
        return sum(
            Fraction(abs(det(as_matrix(p.generators))))
            / Fraction(math.prod(dot(phi, g) for g in p.generators))
            for p in ps
        )

    vol = truncation_volume(pieces)
    ref = truncation_volume(triangulate(SIGMA_DUAL, SIGMA_DUAL.v_rep))
    assert vol == ref == 2
    # every using vector lies in some piece
    for v in SIGMA_DUAL_GENS:
        assert any(
            RationalCone.from_generators(p.generators, 3).contains(v) for p in pieces
        )
    # pieces have pairwise disjoint interiors: sample with rational combos
    rng = random.Random(1)
    for _ in range(40):
        p = pieces[rng.randrange(len(pieces))]
        coeffs = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in p.generators]
        pt = tuple(
            sum(c * g[j] for c, g in zip(coeffs, p.generators)) for j in range(3)
        )
        hits = 0
        for q in pieces:
            qc = RationalCone.from_generators(q.generators, 3)
            if all(sum(Fraction(h[j]) * pt[j] for j in range(3)) >= 0 for h in qc.h_rep):
                strict = all(
                    sum(Fraction(h[j]) * pt[j] for j in range(3)) > 0 for h in qc.facets
                )
                if strict:
                    hits += 1
        assert hits <= 1


def test_triangulate_rejects_non_generating_set():
    with pytest.raises(ConeError, match="ray"):
        triangulate(SIGMA_DUAL, [(1, 0, 0), (0, 1, 0), (1, 0, 1)])
    with pytest.raises(ConeError, match="outside"):
        triangulate(OCTANT, [(1, 0, 0), (0, 1, 0), (0, 0, -1)])


def test_parallelepiped_unit_square():
    piece = SimplicialPiece(((1, 0), (0, 1)))
    assert parallelepiped_points(piece) == ((0, 0),)


def test_parallelepiped_derived_example():
    piece = SimplicialPiece(((1, 0), (1, 2)))
    assert parallelepiped_points(piece) == ((0, 0), (1, 1))


def test_parallelepiped_det_one_3d():
    piece = SimplicialPiece(((2, 0, 1), (0, 1, 1), (1, 0, 0)))
    assert abs(det(as_matrix(piece.generators))) == 1
    assert parallelepiped_points(piece) == ((0, 0, 0),)


def test_parallelepiped_count_matches_det_random():
    rng = random.Random(9)
    for _ in range(25):
        k = rng.randint(1, 3)
        gens = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        if det(as_matrix(gens)) == 0:
            continue
        pts = parallelepiped_points(SimplicialPiece(tuple(map(tuple, gens))))
        assert len(pts) == abs(det(as_matrix(gens)))


def test_parallelepiped_lower_dimensional_piece():
    # rank-1 piece inside Z^2: (2,2) spans a segment with 2 span-lattice points
    pts = parallelepiped_points(SimplicialPiece(((2, 2),)))
    assert pts == ((0, 0), (1, 1))


def test_hilbert_basis_octant():
    assert hilbert_basis(OCTANT) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_hilbert_basis_sigma_dual():
    hb = hilbert_basis(SIGMA_DUAL)
    assert set(hb) == {(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_hilbert_basis_2d_derived():
    c = RationalCone.from_generators([(1, 0), (1, 2)])
    assert set(hilbert_basis(c)) == {(1, 0), (1, 1), (1, 2)}


def test_hilbert_basis_requires_pointed():
    half = RationalCone.from_generators([(1, 0), (0, 1), (0, -1)])
    with pytest.raises(ConeError, match="pointed"):
        hilbert_basis(half)


def test_hilbert_basis_minimality_and_membership():
    # removing any element strictly shrinks the generated monoid
    c = RationalCone.from_generators([(1, 0), (3, 1), (1, 3)])
    hb = hilbert_basis(c)
    for v in hb:
        assert c.contains(v)
        others = [w for w in hb if w != v]
        # bounded search: can v be written as a nonneg combo of the others?
        def representable(target, gens, depth=0):
            if all(x == 0 for x in target):
                return True
            if depth == len(gens):
                return False
            g = gens[depth]
            reach = 0
            while True:
                t = tuple(a - reach * b for a, b in zip(target, g))
                if any(x < 0 for x in t) and not c.contains(t):
                    break
                if representable(t, gens, depth + 1):
                    return True
                reach += 1
                if reach > 12:
                    break
            return False

        assert not representable(v, others)


def test_validate_passes_on_constructed_cones():
    for c in (OCTANT, SIGMA, SIGMA_DUAL):
        c.validate()


def random_pointed_cone(rng, dim):
    while True:
        gens = [
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(rng.randint(1, dim + 2))
        ]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        c = RationalCone.from_generators(gens, dim)
        if c.is_pointed() and c.dim > 0:
            return c


def test_biduality_random_cones():
    rng = random.Random(77)
    for _ in range(25):
        c = random_pointed_cone(rng, rng.randint(2, 4))
        c.validate()
        d = dual_cone(c)
        d.validate()
        assert dual_cone(d) == c
        # membership cross-check on a small box
        for _ in range(20):
            v = tuple(rng.randint(-3, 3) for _ in range(c.rank))
            in_dual = all(dot(v, g) >= 0 for g in c.v_rep)
            assert d.contains(v) == in_dual


def test_face_counts_satisfy_euler_like_symmetry_random():
    # for a pointed full-dimensional cone, faces of dim k of the cone match
    # faces of dim n-k of the dual bijectively
    rng = random.Random(31)
    for _ in range(10):
        c = random_pointed_cone(rng, 3)
        if c.dim != 3:
            continue
        d = dual_cone(c)
        ours = sorted(f.dim for f in face_lattice(c))
        theirs = sorted(3 - f.dim for f in face_lattice(d))
        assert ours == theirs


def brute_force_hilbert_basis(c, phi):
    # independent oracle: enumerate monoid points by degree, call a point
    # irreducible if it is not a sum of two nonzero monoid points
    from flexcheck.monoid import cone_points_up_to

    # grow the bound until it safely contains candidate degrees
    bound = 2
    while True:
        pts = [p for p in cone_points_up_to(c, phi, bound) if any(p)]
        irr = []
        members = set(pts)
        for p in pts:
            decomposable = False
            for q in pts:
                rest = tuple(a - b for a, b in zip(p, q))
                if any(rest) and rest in members:
                    decomposable = True
                    break
            if not decomposable:
                irr.append(p)
        # all irreducibles found below half the bound are final: any
        # decomposition of such a point uses parts inside the slice
        final = [p for p in irr if dot(phi, p) <= bound // 2]
        if final and all(dot(phi, p) <= bound // 2 for p in irr):
            return sorted(irr)
        bound *= 2
        if bound > 256:
            return sorted(irr)


def test_hilbert_basis_against_brute_force_random():
    rng = random.Random(13)
    checked = 0
    while checked < 12:
        c = random_pointed_cone(rng, 2)
        phi = tuple(sum(h[i] for h in c.facets) for i in range(2))
        if not all(dot(phi, g) > 0 for g in c.v_rep):
            continue
        hb = hilbert_basis(c)
        oracle = brute_force_hilbert_basis(c, phi)
        assert sorted(hb) == oracle
        checked += 1


def test_zero_cone_and_empty_input():
    zero = RationalCone.from_generators([], 2)
    assert zero.dim == 0 and zero.v_rep == ()
    assert zero.contains((0, 0)) and not zero.contains((1, 0))
    assert hilbert_basis(zero) == []
    with pytest.raises(ConeError):
        double_description()
