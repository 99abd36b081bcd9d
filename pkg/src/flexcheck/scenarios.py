"""Built-in scenario models.

Two families are encoded.  `example3` is the rank-3 non-normal monoid whose
toric variety is flexible with an invariant prime divisor; its algebra is
K[x,y,u,v,w] modulo three relations, realized by the monomial map
u = x^2 z, v = x^2 z^2, w = y z.  `xm` is the family obtained as the
invariant ring of the trinomial hypersurface x*y^n = z_1^n + ... + z_k^n
times an affine m-space under the one-dimensional torus scaling; the
standard member has n = 4, k = 2 and carries the full derivation catalog
dz, dw, rho_ij plus the gradings G, F and Z2.

Scenario names: "example3", "xm:m=2", "xm:m=3",
"xm-general:n=5,k=3,m=2".
"""
from __future__ import annotations

import random
from fractions import Fraction

from .groebner import eliminate
from .monoid import (
    CertificateEntry,
    HoleFamilyCertificate,
    MonoidPresentation,
    ResiduePredicate,
)
from .numberfield import FOURTH_ROOTS_OF_MINUS_ONE, QEps
from .poly import FIELD_QE, Polynomial, PolyRing
from .derivations import AmbientModel, Derivation, GradingSpec, PresentedAlgebra

DEFAULT_NILPOTENCY_CAP = 64
DEFAULT_EFFORT_CAP = 60.0


# ---------------------------------------------------------------------------
# example3: the non-normal toric 3-fold
# ---------------------------------------------------------------------------

EXAMPLE3_GENERATORS = ((1, 0, 0), (0, 1, 0), (2, 0, 1), (2, 0, 2), (0, 1, 1))


def example3_predicate(v) -> bool:
    """Set definition of the monoid: a,b,c >= 0 with a+b > c, together with
    the boundary points (a, b, a+b) with a even."""
    a, b, c = v
    if a < 0 or b < 0 or c < 0:
        return False
    if a + b > c:
        return True
    return c == a + b and a % 2 == 0


def example3_certificate(check_bound: int = 24) -> HoleFamilyCertificate:
    # face points (a, b, a+b) of P all have a even; adding (1,0,1) makes a
    # odd, which is a hole
    return HoleFamilyCertificate(
        entries=(CertificateEntry(ResiduePredicate(((0, 2, 0),)), (1, 0, 1)),),
        check_bound=check_bound,
    )


class Example3Model:
    name = "example3"

    def __init__(self):
        self.monoid = MonoidPresentation(EXAMPLE3_GENERATORS)
        self.predicate = example3_predicate
        self.certificates = {(1, 1, -1): example3_certificate()}
        self.claimed_rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1))
        ambient = PolyRing(("x", "y", "z"))
        ring = PolyRing(("x", "y", "u", "v", "w"))
        expressions = {
            "x": ambient.parse("x"),
            "y": ambient.parse("y"),
            "u": ambient.parse("x^2*z"),
            "v": ambient.parse("x^2*z^2"),
            "w": ambient.parse("y*z"),
        }
        relations = (
            ring.parse("x^2*v - u^2"),
            ring.parse("x^2*w - y*u"),
            ring.parse("u*w - y*v"),
        )
        self.algebra = PresentedAlgebra(
            ring, relations, AmbientModel(ambient, (), expressions)
        )

    def singular_divisor_sample(self, rng: random.Random) -> dict:
        """A point of {x = y = u = 0}: coordinates (0, 0, 0, v, w)."""
        v = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        w = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        return {"x": Fraction(0), "y": Fraction(0), "u": Fraction(0), "v": v, "w": w}

    def presentation_kernel(self, effort_cap: float = DEFAULT_EFFORT_CAP) -> list[Polynomial]:
        """Kernel of the monomial parameterization, computed by elimination."""
        amb = self.algebra.ambient.ring
        big = PolyRing(tuple(f"amb_{v}" for v in amb.names) + self.algebra.ring.names)
        lift = {v: big.var(f"amb_{v}") for v in amb.names}
        gens = [
            big.var(v) - self.algebra.ambient.expressions[v].subs(lift, big)
            for v in self.algebra.ring.names
        ]
        ker = eliminate(gens, [f"amb_{v}" for v in amb.names], effort_cap)
        return [Polynomial(self.algebra.ring, dict(g.terms)) for g in ker]


# ---------------------------------------------------------------------------
# the X_m family
# ---------------------------------------------------------------------------


class XmModel:
    """Invariant-ring model of the torus quotient of Y' x A^m.

    For the standard member (n=4, k=2) the ambient coordinates are
    x, y, z, w, u_1..u_m and the invariant generators x, y_i, z_i, w_i.
    """

    def __init__(self, m: int, power: int = 4, families: int = 2):
        if m < 2:
            raise ValueError("the construction needs an integer m >= 2")
        if families + 1 >= power:
            raise ValueError(
                f"parameters must satisfy k+1 < n; got k={families}, n={power}"
            )
        self.m = m
        self.power = power
        self.families = families
        self.standard = power == 4 and families == 2
        self.name = (
            f"xm:m={m}"
            if self.standard
            else f"xm-general:n={power},k={families},m={m}"
        )
        self.dim = families + m

        fam_names = ["z", "w"] if self.standard else [f"z{j}" for j in range(1, families + 1)]
        self.family_names = fam_names
        n = power

        ambient_names = ["x", "y", *fam_names, *[f"u{i}" for i in range(1, m + 1)]]
        ambient_ring = PolyRing(tuple(ambient_names))
        trinomial = ambient_ring.parse(
            f"x*y^{n} - " + " - ".join(f"{f}^{n}" for f in fam_names)
        )
        self.trinomial = trinomial
        self.ambient = PresentedAlgebra(ambient_ring, (trinomial,))
        self.ambient_weights = {"x": 0, "y": 1, **{f: 1 for f in fam_names}}
        self.ambient_weights.update({f"u{i}": -1 for i in range(1, m + 1)})

        inv_names = ["x"]
        inv_names += [f"y{i}" for i in range(1, m + 1)]
        for f in fam_names:
            inv_names += [f"{f}{i}" for i in range(1, m + 1)]
        ring = PolyRing(tuple(inv_names))
        self.ring = ring

        expressions = {"x": ambient_ring.var("x")}
        for i in range(1, m + 1):
            expressions[f"y{i}"] = ambient_ring.parse(f"y*u{i}")
            for f in fam_names:
                expressions[f"{f}{i}"] = ambient_ring.parse(f"{f}*u{i}")
        self.invariant = PresentedAlgebra(
            ring,
            tuple(self._pattern_relations(ring)),
            AmbientModel(ambient_ring, (trinomial,), expressions, self.ambient_weights),
        )

        self.gradings = {
            "G": GradingSpec(self.invariant, {v: (0,) for v in inv_names}, name="G"),
            "F": GradingSpec(
                self.invariant,
                {
                    "x": (-n,),
                    **{f"y{i}": (1,) for i in range(1, m + 1)},
                    **{f"{f}{i}": (0,) for f in fam_names for i in range(1, m + 1)},
                },
                name="F",
            ),
            "Z2": GradingSpec(
                self.invariant,
                {
                    "x": (0, -n),
                    **{f"y{i}": (1, 1) for i in range(1, m + 1)},
                    **{f"{f}{i}": (1, 0) for f in fam_names for i in range(1, m + 1)},
                },
                name="Z2",
            ),
        }
        self.ambient_g_grading = GradingSpec(
            self.ambient,
            {v: (w,) for v, w in self.ambient_weights.items()},
            name="G-ambient",
        )
        self.expected_z2_degree = (n - 1, n)

        self.derivations: dict[str, Derivation] = {}
        self.ambient_derivations: dict[str, Derivation] = {}
        for f in fam_names:
            dname = f"d{f}"
            images = {
                "x": ring.parse(f"{n}*{f}1^{n - 1}"),
                f"{f}1": ring.parse(f"y1^{n}"),
            }
            for i in range(2, m + 1):
                images[f"{f}{i}"] = ring.parse(f"y1^{n - 1}*y{i}")
            self.derivations[dname] = Derivation(self.invariant, images, dname)
            self.ambient_derivations[dname] = Derivation(
                self.ambient,
                {
                    "x": ambient_ring.parse(f"{n}*{f}^{n - 1}*u1^{n - 1}"),
                    f: ambient_ring.parse(f"y^{n}*u1^{n - 1}"),
                },
                f"xi_{f}",
            )
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i == j:
                    continue
                # single-digit indices concatenate (rho12); larger ones
                # separate to stay unambiguous (rho10_11)
                rname = f"rho{i}{j}" if i <= 9 and j <= 9 else f"rho{i}_{j}"
                images = {f"y{i}": ring.var(f"y{j}")}
                for f in fam_names:
                    images[f"{f}{i}"] = ring.var(f"{f}{j}")
                self.derivations[rname] = Derivation(self.invariant, images, rname)
                self.ambient_derivations[rname] = Derivation(
                    self.ambient,
                    {f"u{i}": ambient_ring.var(f"u{j}")},
                    f"zeta{i}{j}",
                )

        self._eliminated: list | None = None
        if self.standard:
            self.qe_ring = PolyRing(tuple(inv_names), field=FIELD_QE)

    # -- presentation ideal ---------------------------------------------------

    def _pattern_relations(self, ring: PolyRing) -> list[Polynomial]:
        """Conjectured generators: 2x2 minors across the variable families
        plus the degree-n trinomial relations x*y_I = sum_f prod_I f."""
        m, n = self.m, self.power
        fams = ["y"] + list(self.family_names)
        rels = []
        for a in range(len(fams)):
            for b in range(a + 1, len(fams)):
                for i in range(1, m + 1):
                    for j in range(i + 1, m + 1):
                        rels.append(
                            ring.parse(
                                f"{fams[a]}{i}*{fams[b]}{j} - {fams[a]}{j}*{fams[b]}{i}"
                            )
                        )
        for combo in _multisets(range(1, m + 1), n):
            y_term = "*".join(f"y{i}" for i in combo)
            parts = ["*".join(f"{f}{i}" for i in combo) for f in self.family_names]
            rels.append(ring.parse(f"x*{y_term} - " + " - ".join(parts)))
        return rels

    def eliminated_relations(self, effort_cap: float = DEFAULT_EFFORT_CAP) -> list[Polynomial]:
        """The presentation ideal computed by Groebner elimination of the
        ambient variables from the graph ideal; cached on the model."""
        if self._eliminated is None:
            ambient_ring = self.invariant.ambient.ring
            amb_map = {
                v: f"amb_{v}" if v in self.ring.index else v
                for v in ambient_ring.names
            }
            big_names = tuple(amb_map[v] for v in ambient_ring.names) + tuple(
                self.ring.names
            )
            big = PolyRing(big_names)

            def lift(f: Polynomial) -> Polynomial:
                return f.subs(
                    {v: big.var(amb_map[v]) for v in ambient_ring.names}, big
                )

            gens = [lift(self.trinomial)]
            for v in self.ring.names:
                gens.append(big.var(v) - lift(self.invariant.ambient.expressions[v]))
            ker = eliminate(gens, [amb_map[v] for v in ambient_ring.names], effort_cap)
            self._eliminated = [
                Polynomial(self.ring, dict(g.terms)) for g in ker
            ]
        return self._eliminated

    # -- distinguished loci -----------------------------------------------------

    def y_ideal(self) -> list[Polynomial]:
        return [self.ring.var(f"y{i}") for i in range(1, self.m + 1)]

    def l_ideal(self) -> list[Polynomial]:
        out = self.y_ideal()
        for f in self.family_names:
            out += [self.ring.var(f"{f}{i}") for i in range(1, self.m + 1)]
        return out

    def dj_ideal(self, j: int) -> list[Polynomial]:
        """Ideal of D_j = {y_i = z_i + eps_j w_i = 0} over Q(e); the linear
        generators have distinct leading variables, hence already form a
        Groebner basis."""
        if not self.standard:
            raise ValueError("divisor decomposition is defined for the n=4, k=2 model")
        eps_j = FOURTH_ROOTS_OF_MINUS_ONE[j - 1]
        gens = [self.qe_ring.var(f"y{i}") for i in range(1, self.m + 1)]
        for i in range(1, self.m + 1):
            gens.append(self.qe_ring.var(f"z{i}") + self.qe_ring.var(f"w{i}") * eps_j)
        return gens

    def lift_to_qe(self, f: Polynomial) -> Polynomial:
        return Polynomial(self.qe_ring, {e: QEps.coerce(c) for e, c in f.terms.items()})

    # -- sample points ------------------------------------------------------------

    def point_from_ambient(self, ambient_values: dict) -> dict:
        return {
            v: self.invariant.ambient.expressions[v].evaluate(ambient_values)
            for v in self.ring.names
        }

    def sample_generic(self, rng: random.Random) -> dict:
        """Exact on-variety point with every y_i nonzero: pick the ambient
        parameters and solve for x."""
        n = self.power
        y = _small_rational(rng, nonzero=True)
        fam = {f: _small_rational(rng, nonzero=True) for f in self.family_names}
        us = {f"u{i}": _small_rational(rng, nonzero=True) for i in range(1, self.m + 1)}
        x = sum(t**n for t in fam.values()) / y**n
        values = {"x": x, "y": y, **fam, **us}
        assert self.trinomial.evaluate(values) == 0
        return self.point_from_ambient(values)

    def sample_uj(self, j: int, rng: random.Random) -> dict:
        """Point of U_j = D_j minus L over Q(e): ambient y = 0, family
        values solving z + eps_j w = 0 with z nonzero."""
        if not self.standard:
            raise ValueError("U_j samples are defined for the n=4, k=2 model")
        eps_j = FOURTH_ROOTS_OF_MINUS_ONE[j - 1]
        z = QEps.coerce(_small_rational(rng, nonzero=True))
        w = -z / eps_j
        us = {
            f"u{i}": QEps.coerce(_small_rational(rng, nonzero=True))
            for i in range(1, self.m + 1)
        }
        values = {
            "x": QEps.coerce(_small_rational(rng)),
            "y": QEps.coerce(0),
            "z": z,
            "w": w,
            **us,
        }
        assert self.trinomial.evaluate(values) == 0
        return self.point_from_ambient(values)

    def sample_l(self, x=None, rng: random.Random | None = None) -> dict:
        if x is None:
            x = _small_rational(rng) if rng is not None else Fraction(5)
        point = {v: Fraction(0) for v in self.ring.names}
        point["x"] = Fraction(x)
        return point

    def sample_d_ambient(self, rng: random.Random) -> dict:
        """Random ambient Q(e)-point with y = 0 (hence all y_i = 0)."""
        if not self.standard:
            raise ValueError("divisor sampling is defined for the n=4, k=2 model")
        if rng.random() < 0.1:
            z = QEps.coerce(0)
            w = QEps.coerce(0)
        else:
            j = rng.randint(1, 4)
            z = QEps.coerce(_small_rational(rng, nonzero=True))
            w = -z / FOURTH_ROOTS_OF_MINUS_ONE[j - 1]
        us = {f"u{i}": QEps.coerce(_small_rational(rng)) for i in range(1, self.m + 1)}
        return {
            "x": QEps.coerce(_small_rational(rng)),
            "y": QEps.coerce(0),
            "z": z,
            "w": w,
            **us,
        }

    def sample_with_yi_zero(self, i: int, rng: random.Random) -> dict:
        """On-variety point with y_i = 0 (via u_i = 0) but y_j nonzero for
        some other j; input for the exp-moving check."""
        n = self.power
        y = _small_rational(rng, nonzero=True)
        fam = {f: _small_rational(rng, nonzero=True) for f in self.family_names}
        us = {
            f"u{l}": _small_rational(rng, nonzero=True) if l != i else Fraction(0)
            for l in range(1, self.m + 1)
        }
        x = sum(t**n for t in fam.values()) / y**n
        return self.point_from_ambient({"x": x, "y": y, **fam, **us})

    def rank_catalog(self) -> list[Derivation]:
        """The m+2 derivations spanning the tangent space on the open part."""
        names = [f"d{f}" for f in self.family_names[:2]]
        names.append("rho12")
        names += [f"rho{i}1" for i in range(2, self.m + 1)]
        return [self.derivations[nm] for nm in names]

    def rank_catalog_uj(self) -> list[Derivation]:
        """The m+1 derivations used on the divisor components."""
        names = [f"d{self.family_names[0]}", "rho12"]
        names += [f"rho{i}1" for i in range(2, self.m + 1)]
        return [self.derivations[nm] for nm in names]


def _multisets(items, size):
    items = list(items)
    if size == 0:
        yield ()
        return
    if not items:
        return
    head, rest = items[0], items[1:]
    for count in range(size, -1, -1):
        for tail in _multisets(rest, size - count):
            yield (head,) * count + tail


def _small_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if v or not nonzero:
            return v


# ---------------------------------------------------------------------------
# scenario lookup
# ---------------------------------------------------------------------------


def build_xm(m: int) -> XmModel:
    return XmModel(m)


def build_xm_general(n: int, k: int, m: int) -> XmModel:
    return XmModel(m, power=n, families=k)


def parse_scenario(name: str):
    """Resolve a scenario name: example3 | xm:m=K | xm-general:n=..,k=..,m=.."""
    if name == "example3":
        return Example3Model()
    if name.startswith("xm:"):
        params = _parse_params(name[3:])
        if set(params) != {"m"}:
            raise ValueError(f"xm scenario takes exactly m=<int>, got {name!r}")
        return build_xm(params["m"])
    if name.startswith("xm-general:"):
        params = _parse_params(name[len("xm-general:") :])
        if set(params) != {"n", "k", "m"}:
            raise ValueError(
                f"xm-general scenario takes n=,k=,m=, got {name!r}"
            )
        return build_xm_general(params["n"], params["k"], params["m"])
    raise ValueError(f"unknown scenario {name!r}")


def _parse_params(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"bad scenario parameter {part!r}")
        key, val = part.split("=", 1)
        out[key.strip()] = int(val)
    return out
