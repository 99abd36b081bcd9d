"""Acceptance suite: one test per acceptance criterion, every tolerance
pinned to its stated value.  Each test prints a PASS line so `pytest -s`
(or -v) gives the per-criterion report."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from flexcheck.cli import main as cli_main
from flexcheck.groebner import buchberger, ideal_member
from flexcheck.monoid import SaturationPoint
from flexcheck.numberfield import FOURTH_ROOTS_OF_MINUS_ONE
from flexcheck.reports import dump_json
from flexcheck.derivations import (
    Derivation,
    Nilpotent,
    PresentedAlgebra,
    exp_derivation,
    graded_decompose,
    is_locally_nilpotent_bounded,
    jacobian_rank,
    preserves_relations,
    support_vertices,
    tangent_rank,
    vector_field_at,
)
from flexcheck.scenarios import Example3Model, build_xm
from flexcheck.toric import analyze
from flexcheck.verify import run_suite, verify_example3

SEED = 20240803


@pytest.fixture(scope="module")
def ex3():
    return Example3Model()


@pytest.fixture(scope="module")
def m2():
    return build_xm(2)


@pytest.fixture(scope="module")
def m3():
    return build_xm(3)


def _passed(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def test_criterion_01_example3_end_to_end(capsys, ex3):
    start = time.monotonic()
    report = analyze(ex3.monoid, 8, ex3.certificates, seed=SEED)
    elapsed = time.monotonic() - start
    assert set(report.extremal_rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)}
    statuses = {tuple(r.ray): r.face_status for r in report.rays}
    for ray in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        assert statuses[ray] == "almost-saturated"
    assert statuses[(1, 1, -1)] == "nowhere-saturated-certified"
    assert report.combined.kind == "yes"
    assert elapsed < 10.0
    # and through the CLI surface with the documented exit code
    code = cli_main(["toric", "analyze", "example3", "--bound", "8"])
    capsys.readouterr()
    assert code == 0
    _passed(1, f"example3 analysis combined=yes in {elapsed:.2f}s, exit code 0")


def test_criterion_02_hilbert_basis_holes_saturation_point(ex3):
    p = ex3.monoid
    assert set(p.hilbert_basis_of_cone()) == {
        (1, 0, 0),
        (0, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
    }
    holes = p.holes_up_to(2)
    assert (1, 0, 1) in holes and (1, 1, 2) in holes
    verdict = p.is_saturation_point((1, 1, 0))
    assert isinstance(verdict, SaturationPoint)
    # brute-force cross-check: no hole in (1,1,0) + cone up to degree +12
    disagreements = []
    for v in p.saturation_points_up_to(p.degree((1, 1, 0)) + 12):
        shifted = tuple(a + b for a, b in zip((1, 1, 0), v))
        if not p.contains(shifted):
            disagreements.append(shifted)
    assert disagreements == []
    _passed(2, "Hilbert basis, holes, and Pi-certified saturation point (1,1,0)")


def test_criterion_03_monoid_equals_set_definition(ex3):
    p = ex3.monoid
    ok, first = p.equals_predicate_up_to(ex3.predicate, 10)
    assert ok and first is None
    count = len(p.saturation_points_up_to(10))
    # broader box scan for good measure (several thousand points)
    box_checked = 0
    for v in itertools.product(range(13), range(13), range(26)):
        assert p.contains(v) == ex3.predicate(v), f"discrepancy at {v}"
        box_checked += 1
    _passed(3, f"membership equals the set definition: {count} cone points of "
               f"degree <= 10 plus a {box_checked}-point box scan, zero discrepancies")


def test_criterion_04_relations_and_singular_divisor(ex3):
    algebra = ex3.algebra
    # symbolic zero under u = x^2 z, v = x^2 z^2, w = y z
    for r in algebra.relations:
        assert not algebra.ambient.expression_of(r)
    rng = random.Random(SEED)
    codim = len(algebra.ring.names) - 3
    ranks = []
    for _ in range(20):
        point = ex3.singular_divisor_sample(rng)
        ranks.append(jacobian_rank(algebra.relations, point))
    # singularity confirmed: the Jacobian never reaches the codimension
    assert all(r < codim for r in ranks)
    # the generic value on the divisor is exactly 1, and 0 at the origin
    assert set(ranks) == {1}
    origin = {v: Fraction(0) for v in algebra.ring.names}
    assert jacobian_rank(algebra.relations, origin) == 0
    _passed(4, "relations vanish symbolically; divisor confirmed singular, "
               "Jacobian rank 1 < codim 2 at 20 random points, rank 0 at the origin")


@pytest.mark.xfail(
    strict=True,
    reason="criterion text asks for Jacobian rank 0 at random divisor points, "
    "but d(u*w - y*v)/dy = -v is nonzero whenever v != 0, so the rank is 1 "
    "at every divisor point off the origin; see the decisions ledger",
)
def test_criterion_04_literal_rank_zero_at_random_points(ex3):
    rng = random.Random(SEED)
    ranks = [
        jacobian_rank(ex3.algebra.relations, ex3.singular_divisor_sample(rng))
        for _ in range(20)
    ]
    assert all(r == 0 for r in ranks)


@pytest.mark.parametrize("m", [2, 3])
def test_criterion_05_construction_suite(m, m2, m3):
    model = m2 if m == 2 else m3
    ring = model.ring
    for name, delta in model.derivations.items():
        ok, bad = preserves_relations(delta)
        assert ok, (name, bad)
        ok, bad = preserves_relations(model.ambient_derivations[name])
        assert ok, (name, bad)
        shift = model.ambient_g_grading.is_homogeneous_derivation(
            model.ambient_derivations[name]
        )
        assert shift == (0,)
        verdict = is_locally_nilpotent_bounded(delta)
        assert isinstance(verdict, Nilpotent)
        if name.startswith("rho"):
            assert all(n <= 2 for n in verdict.chain_lengths.values())
        else:
            assert verdict.chain_lengths["x"] == 5
            fam = name[1:]
            assert verdict.chain_lengths[f"{fam}1"] == 2
    z2 = model.gradings["Z2"]
    assert z2.is_homogeneous_derivation(model.derivations["dz"]) == (3, 4)
    assert z2.is_homogeneous_derivation(model.derivations["dw"]) == (3, 4)
    # the opposite sign convention fails relation preservation
    ambient_ring = model.ambient.ring
    t_bad = ambient_ring.parse("x*y^4 + z^4 + w^4")
    bad_algebra = PresentedAlgebra(ambient_ring, (t_bad,))
    xi_z = model.ambient_derivations["dz"]
    ok, _ = preserves_relations(Derivation(bad_algebra, dict(xi_z.images)))
    assert not ok
    _passed(5, f"m={m}: catalog valid for x*y^4 - z^4 - w^4 with exact chain "
               "lengths, Z2-degree (3,4); opposite sign rejected")


@pytest.mark.parametrize("m", [2, 3])
def test_criterion_06_rank_census(m, m2, m3):
    model = m2 if m == 2 else m3
    rng = random.Random(SEED + m)
    open_rank = m + 2
    for _ in range(20):
        p = model.sample_generic(rng)
        assert tangent_rank(model.rank_catalog(), p) == open_rank
    for _ in range(10):
        q = model.sample_uj(1, rng)
        assert tangent_rank(model.rank_catalog_uj(), q) == m + 1
    for _ in range(10):
        l = model.sample_l(rng=rng)
        for delta in model.derivations.values():
            assert all(x == 0 for x in vector_field_at(delta, l))
    _passed(6, f"m={m}: rank {open_rank} at 20 generic points, {m + 1} on U_1, "
               "all fields vanish on L")


def test_criterion_07_tangent_dimension_on_l(m2):
    start = time.monotonic()
    relations = m2.eliminated_relations(effort_cap=60.0)
    elapsed = time.monotonic() - start
    # sanity: the eliminated ideal contains and is contained in the pattern
    gb = buchberger(list(relations))
    assert all(ideal_member(r, gb) for r in m2.invariant.relations)
    ranks = []
    for point in (m2.sample_l(x=5), m2.sample_l(x=0)):
        ranks.append(jacobian_rank(relations, point))
    assert ranks == [0, 0]
    tangent_dim = len(m2.ring.names) - max(ranks)
    assert tangent_dim == 3 * m2.m + 1 == 7
    _passed(7, f"elimination in {elapsed:.1f}s (cap 60s); Jacobian rank 0 at "
               "(5,0,...,0) and the origin, tangent dimension 7")


def test_criterion_08_graded_decomposition_suite(m2):
    f_grading = m2.gradings["F"]
    for name, delta in m2.derivations.items():
        for gname in ("F", "G", "Z2"):
            grading = m2.gradings[gname]
            parts = graded_decompose(delta, grading)
            total = None
            for comp in parts.values():
                total = comp if total is None else total + comp
            for v in m2.ring.names:
                assert total.of_var(v) == delta.of_var(v)
            for gamma, comp in parts.items():
                assert grading.is_homogeneous_derivation(comp) == gamma
            for vertex in support_vertices(list(parts)):
                assert isinstance(
                    is_locally_nilpotent_bounded(parts[vertex]), Nilpotent
                )
        f_parts = graded_decompose(delta, f_grading)
        assert all(gamma[0] >= 0 for gamma in f_parts)
    # a genuinely mixed instance
    mixed = m2.derivations["dz"] + m2.derivations["rho12"]
    parts = graded_decompose(mixed, f_grading)
    assert sorted(parts) == [(0,), (4,)]
    for vertex in support_vertices(list(parts)):
        assert isinstance(is_locally_nilpotent_bounded(parts[vertex]), Nilpotent)
    _passed(8, "decompositions sum back, are homogeneous, vertex components "
               "are LNDs, and all F-degrees are nonnegative")


def test_criterion_09_automorphism_suite(m2):
    rng = random.Random(SEED)
    algebra = m2.invariant
    for name, delta in m2.derivations.items():
        for _ in range(5):
            s = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            t = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            composed = exp_derivation(delta, s).compose(exp_derivation(delta, t))
            direct = exp_derivation(delta, s + t)
            for v in m2.ring.names:
                assert algebra.is_zero(composed.images[v] - direct.images[v])
        phi = exp_derivation(delta, Fraction(1, 2))
        for r in algebra.relations:
            assert algebra.is_zero(phi.apply(r))
    point = m2.sample_with_yi_zero(1, rng)
    assert point["y1"] == 0 and point["y2"] != 0
    moved = exp_derivation(m2.derivations["rho12"], 1).apply_point(point)
    assert moved["y1"] != 0
    assert algebra.point_on_variety(moved) is None
    _passed(9, "exp group law at 5 (s,t) pairs per LND; relations preserved; "
               "exp(rho12) moves a y1=0 sample off the divisor")


def test_criterion_10_divisor_cover(m2):
    rng = random.Random(SEED)
    failures = 0
    for _ in range(100):
        ambient_pt = m2.sample_d_ambient(rng)
        point = m2.point_from_ambient(ambient_pt)
        assert all(point[f"y{i}"] == 0 for i in (1, 2))
        covered = False
        for eps_j in FOURTH_ROOTS_OF_MINUS_ONE:
            if all(point[f"z{i}"] + eps_j * point[f"w{i}"] == 0 for i in (1, 2)):
                covered = True
                break
        failures += not covered
    assert failures == 0
    _passed(10, "100/100 random y=0 samples lie in a common divisor component")


def test_criterion_11_deterministic_reports(ex3):
    toric_a = dump_json(analyze(ex3.monoid, 8, ex3.certificates, seed=5).to_json())
    toric_b = dump_json(analyze(ex3.monoid, 8, ex3.certificates, seed=5).to_json())
    assert toric_a == toric_b
    suite_a = dump_json(verify_example3(bound=8, seed=5).to_json())
    suite_b = dump_json(verify_example3(bound=8, seed=5).to_json())
    assert suite_a == suite_b
    xm_a = dump_json(run_suite("xm:m=2", seed=5).to_json())
    xm_b = dump_json(run_suite("xm:m=2", seed=5).to_json())
    assert xm_a == xm_b
    _passed(11, "byte-identical JSON reports for fixed seeds across all suites")
