import random

import pytest

from flexcheck.poly import FIELD_QE, PolyRing
from flexcheck.groebner import (
    EffortCapExceeded,
    buchberger,
    eliminate,
    ideal_member,
    is_groebner_basis,
    normal_form,
    s_polynomial,
)


def sympy_groebner(polys, names):
    # independent oracle (sympy is a dev-only dependency)
    import sympy

    syms = sympy.symbols(" ".join(names))
    if len(names) == 1:
        syms = (syms,)
    exprs = [sympy.sympify(str(p).replace("^", "**")) for p in polys]
    gb = sympy.groebner(exprs, *syms, order="grevlex")
    ring = polys[0].ring
    out = []
    for g in gb.exprs:
        out.append(ring.parse(str(sympy.expand(g)).replace("**", "^")).monic())
    return sorted(out, key=lambda p: ring.order.key(p.lm()))


def test_principal_ideal_is_its_own_basis():
    r = PolyRing(("x", "y", "z", "w"))
    t = r.parse("x*y^4 - z^4 - w^4")
    gb = buchberger([t])
    assert gb == [t.monic()]
    assert ideal_member(r.parse("(x*y^4 - z^4 - w^4) * (x + z)"), gb)
    assert not ideal_member(r.parse("x*y^4 + z^4 + w^4"), gb)


def test_duplicate_generators_deduplicate():
    r = PolyRing(("x", "y"))
    gb = buchberger([r.parse("x"), r.parse("x")])
    assert gb == [r.parse("x")]


def test_known_lex_style_example():
    # standard textbook example in grevlex
    r = PolyRing(("x", "y"))
    gb = buchberger([r.parse("x^3 - 2*x*y"), r.parse("x^2*y - 2*y^2 + x")])
    assert is_groebner_basis(gb)
    assert gb == sympy_groebner([r.parse("x^3 - 2*x*y"), r.parse("x^2*y - 2*y^2 + x")], r.names)


def test_matches_sympy_on_random_ideals():
    rng = random.Random(41)
    names = ("x", "y", "z")
    r = PolyRing(names)
    for _ in range(12):
        gens = []
        for _ in range(rng.randint(2, 3)):
            p = r.zero()
            for _ in range(3):
                e = tuple(rng.randint(0, 2) for _ in names)
                p = p + r.monomial(e, rng.randint(-3, 3))
            if p:
                gens.append(p)
        if not gens:
            continue
        gb = buchberger(gens)
        if not gb:
            continue
        assert gb == sympy_groebner(gens, names)


def test_normal_form_is_zero_exactly_on_members():
    r = PolyRing(("x", "y", "z"))
    gens = [r.parse("x^2 - y"), r.parse("y^2 - z")]
    gb = buchberger(gens)
    f = r.parse("x^4 - z")
    assert normal_form(f, gb) == r.zero()
    assert normal_form(r.parse("x^4"), gb) == r.parse("z")


def test_s_polynomial_cancels_leading_terms():
    r = PolyRing(("x", "y"))
    f = r.parse("x^2 + y")
    g = r.parse("x*y + 1")
    s = s_polynomial(f, g)
    assert r.order.key(s.lm()) < r.order.key((2, 1))


def test_cyclic3_groebner():
    r = PolyRing(("x", "y", "z"))
    gens = [
        r.parse("x + y + z"),
        r.parse("x*y + y*z + z*x"),
        r.parse("x*y*z - 1"),
    ]
    gb = buchberger(gens)
    assert is_groebner_basis(gb)
    assert gb == sympy_groebner(gens, r.names)


def test_elimination_circle_parabola():
    r = PolyRing(("t", "x", "y"))
    gens = [r.parse("x - t^2"), r.parse("y - t^3")]
    ker = eliminate(gens, ["t"])
    s = PolyRing(("x", "y"))
    assert ker == [s.parse("x^3 - y^2")]


def test_elimination_monomial_map_kernel():
    # kernel of (x,y,z) -> (s^2, s*t, t^2): the quadric x*z - y^2
    r = PolyRing(("s", "t", "x", "y", "z"))
    gens = [r.parse("x - s^2"), r.parse("y - s*t"), r.parse("z - t^2")]
    ker = eliminate(gens, ["s", "t"])
    sub = PolyRing(("x", "y", "z"))
    assert ker == [sub.parse("y^2 - x*z")]


def test_groebner_over_number_field():
    r = PolyRing(("z", "w"), field=FIELD_QE)
    gens = [r.parse("z + e*w"), r.parse("z^4 + w^4")]
    gb = buchberger(gens)
    # z = -e*w forces z^4 + w^4 = (e^4 + 1) w^4 = 0, so the ideal is (z + e*w)
    assert gb == [r.parse("z + e*w")]
    assert ideal_member(r.parse("z^4 + w^4"), gb)


def test_linear_ideal_over_number_field_membership():
    r = PolyRing(("y1", "z1", "w1"), field=FIELD_QE)
    gens = [r.parse("y1"), r.parse("z1 + e*w1")]
    gb = buchberger(gens)
    assert ideal_member(r.parse("y1^3*z1 + e*y1^3*w1"), gb)
    assert not ideal_member(r.parse("w1"), gb)


def test_effort_cap_raises():
    # katsura-6 style dense ideal will not finish in ~0s
    rng = random.Random(3)
    names = tuple("abcdef")
    r = PolyRing(names)
    gens = []
    for _ in range(6):
        p = r.zero()
        for _ in range(8):
            e = tuple(rng.randint(0, 2) for _ in names)
            p = p + r.monomial(e, rng.randint(-9, 9))
        gens.append(p)
    with pytest.raises(EffortCapExceeded):
        buchberger(gens, effort_cap=0.0)


def test_invariant_kernel_m2_pattern():
    # kernel of the 7-generator invariant presentation for m = 2:
    # three 2x2 minors plus five quartic trinomials
    names = ("x", "y", "z", "w", "u1", "u2", "X", "Y1", "Y2", "Z1", "Z2", "W1", "W2")
    r = PolyRing(names)
    gens = [r.parse("x*y^4 - z^4 - w^4"), r.parse("X - x")]
    for i in (1, 2):
        gens += [
            r.parse(f"Y{i} - y*u{i}"),
            r.parse(f"Z{i} - z*u{i}"),
            r.parse(f"W{i} - w*u{i}"),
        ]
    ker = eliminate(gens, ["x", "y", "z", "w", "u1", "u2"], effort_cap=60)
    sub = ker[0].ring
    expected = [
        "Z2*W1 - Z1*W2",
        "Y2*W1 - Y1*W2",
        "Y2*Z1 - Y1*Z2",
        "X*Y1^4 - Z1^4 - W1^4",
        "X*Y1^3*Y2 - Z1^3*Z2 - W1^3*W2",
        "X*Y1^2*Y2^2 - Z1^2*Z2^2 - W1^2*W2^2",
        "X*Y1*Y2^3 - Z1*Z2^3 - W1*W2^3",
        "X*Y2^4 - Z2^4 - W2^4",
    ]
    assert set(map(str, ker)) == set(str(sub.parse(t)) for t in expected)
