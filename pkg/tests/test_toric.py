import json

import pytest

from flexcheck.linalg import as_matrix, dot, rank
from flexcheck.monoid import MonoidPresentation
from flexcheck.reports import ToricReport, dump_json
from flexcheck.toric import (
    SINGULAR,
    SMOOTH,
    UNKNOWN,
    analyze,
    analyze_generators,
    divisorial_smoothness,
    flexibility_verdict,
    invariant_divisor_verdict,
    orbit_census,
    sigma_cone,
)

from .test_monoid import ex3, parity_certificate

EX3_CERTS = {(1, 1, -1): parity_certificate()}


def test_orbit_census_octant():
    p = MonoidPresentation([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    entries = orbit_census(p)
    assert len(entries) == 8
    assert sorted(e.dim for e in entries) == [0, 1, 1, 1, 2, 2, 2, 3]
    # the zero face of sigma dualizes to the whole dual cone: its orbit is
    # the open one with zero ideal; the full face dualizes to {0}, whose
    # orbit ideal contains every nonzero weight
    full = next(e for e in entries if e.dim == 3)
    zero = next(e for e in entries if e.dim == 0)
    assert zero.weight_complement == ()
    assert set(full.weight_complement) == set(p.generators)


def test_orbit_census_ex3():
    p = ex3()
    entries = orbit_census(p, bound=8, certs=EX3_CERTS)
    assert len(entries) == 10
    rays = [e for e in entries if e.dim == 1]
    assert len(rays) == 4
    # face-orbit duality: dim(face of sigma) + dim(dual face) = 3
    for e in entries:
        assert e.dim + e.dual.dim == 3
    smooth_rays = {e.face.generators[0] for e in rays if e.smoothness == SMOOTH}
    assert smooth_rays == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    singular = [e for e in rays if e.smoothness == SINGULAR]
    assert len(singular) == 1
    assert singular[0].face.generators == ((1, 1, -1),)
    # the singular orbit ideal is generated by the weights of x, y, u
    assert set(singular[0].weight_complement) == {(1, 0, 0), (0, 1, 0), (2, 0, 1)}


def test_orbit_census_rank1():
    p = MonoidPresentation([(1,)])
    assert len(orbit_census(p)) == 2


def test_divisorial_smoothness():
    p = ex3()
    assert divisorial_smoothness(p, (1, 0, 0), 8) == SMOOTH
    assert divisorial_smoothness(p, (1, 1, -1), 8, EX3_CERTS) == SINGULAR
    assert divisorial_smoothness(p, (1, 1, -1), 8) == UNKNOWN
    with pytest.raises(ValueError, match="extremal"):
        divisorial_smoothness(p, (1, 1, 1), 8)


def test_divisorial_smoothness_saturated_monoid():
    p = MonoidPresentation([(1, 0), (1, 2)]).saturation()
    for f in sigma_cone(p).v_rep:
        assert divisorial_smoothness(p, f, 6) == SMOOTH


def test_flexibility_yes_for_ex3():
    p = ex3()
    v = flexibility_verdict(p, 8, EX3_CERTS)
    assert v.kind == "yes"
    assert set(map(tuple, v.witness)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert rank(as_matrix(v.witness)) == 3


def test_flexibility_yes_for_saturated():
    p = MonoidPresentation([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert flexibility_verdict(p, 4).kind == "yes"


def test_flexibility_no_with_constructed_fixture():
    # rank-2 monoid whose only almost-saturated ray is (1,0): generated by
    # (1,0) plus the even points of the ray (1,2) and the interior
    gens = [(1, 0), (2, 1), (1, 1), (2, 4)]
    p = MonoidPresentation(gens)
    sigma = sigma_cone(p)
    assert set(sigma.v_rep) == {(0, 1), (2, -1)}
    v = flexibility_verdict(p, 8, certs_for_fixture())
    assert v.kind == "no"
    normal = v.witness
    # the witness hyperplane contains every almost-saturated ray
    qualified = [(0, 1)]
    for ray in qualified:
        assert dot(normal, ray) == 0


def certs_for_fixture():
    from flexcheck.monoid import (
        CertificateEntry,
        HoleFamilyCertificate,
        ResiduePredicate,
    )

    # face points of the (1,2)-ray face are (k, 2k) with k even (only those
    # are sums of the generators); adding (1,2) lands on odd k, a hole
    return {
        (2, -1): HoleFamilyCertificate(
            entries=(CertificateEntry(ResiduePredicate(((0, 2, 0),)), (1, 2)),),
            check_bound=16,
        )
    }


def test_fixture_monoid_shape():
    # sanity for the fixture: (1,2)-direction points of the monoid are the
    # even multiples, (1,0)-direction all multiples
    p = MonoidPresentation([(1, 0), (2, 1), (1, 1), (2, 4)])
    assert p.contains((2, 4)) and p.contains((4, 8))
    assert not p.contains((1, 2)) and not p.contains((3, 6))
    assert p.contains((1, 0)) and p.contains((5, 0))


def test_invariant_divisor_verdicts():
    p = ex3()
    assert invariant_divisor_verdict(p, 8, EX3_CERTS).kind == "yes"
    assert invariant_divisor_verdict(p, 8).kind == "unknown"
    sat = MonoidPresentation([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert invariant_divisor_verdict(sat, 8).kind == "no"


def test_analyze_combined_yes():
    report = analyze(ex3(), 8, EX3_CERTS, seed=0)
    assert not report.degenerate
    assert set(report.extremal_rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)}
    assert report.flexible.kind == "yes"
    assert report.invariant_divisor.kind == "yes"
    assert report.combined.kind == "yes"
    assert report.orbit_dims == (0, 1, 1, 1, 1, 2, 2, 2, 2, 3)


def test_analyze_first_octant_combined_no():
    report = analyze_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)], bound=4)
    assert report.flexible.kind == "yes"
    assert report.invariant_divisor.kind == "no"
    assert report.combined.kind == "no"


def test_analyze_unknown_with_small_bound_no_certificate():
    report = analyze(ex3(), 1)
    assert report.combined.kind == "unknown"


def test_analyze_degenerate_refused():
    report = analyze_generators([(1, 0), (-1, 0), (0, 1)], bound=4)
    assert report.degenerate
    assert report.flexible.kind == "refused"
    assert report.combined.kind == "refused"
    assert "non-degenerate" in report.flexible.note


def test_report_json_roundtrip():
    report = analyze(ex3(), 8, EX3_CERTS, seed=11)
    data = json.loads(dump_json(report.to_json()))
    again = ToricReport.from_json(data)
    assert again == report
    # determinism: serializing twice is byte-identical
    assert dump_json(report.to_json()) == dump_json(again.to_json())


def test_report_text_rendering():
    report = analyze(ex3(), 8, EX3_CERTS)
    text = report.to_text()
    assert "flexible" in text and "combined" in text
    assert "almost-saturated" in text
    deg = analyze_generators([(1, 0), (-1, 0), (0, 1)], bound=4)
    assert "DEGENERATE" in deg.to_text()


def test_verdict_monotone_in_bound():
    # increasing the bound never flips a yes/no, only resolves unknowns
    p = ex3()
    kinds = []
    for b in (1, 2, 4, 8):
        kinds.append(flexibility_verdict(p, b, EX3_CERTS).kind)
    resolved = [k for k in kinds if k != "unknown"]
    assert all(k == resolved[0] for k in resolved)
    assert kinds[-1] == "yes"
