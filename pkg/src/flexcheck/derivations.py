"""Derivation calculus on finitely presented algebras.

A derivation is stored by its images on the generators and extended by the
Leibniz rule.  Local nilpotency is certified on generators with a bounded
iteration: on a finitely generated algebra, generator-nilpotency extends
to every element because the Leibniz rule bounds the order on products.
Exponentials of certified-nilpotent derivations are polynomial
automorphisms; gradings decompose derivations into homogeneous layers.

Ideal membership prefers the ambient route when the algebra carries an
ambient model (substitute generator expressions, reduce modulo the ambient
relations); this keeps the main verification path cheap and exact even
when no Groebner basis of the presentation ideal is known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import buchberger, normal_form
from .linalg import field_rank
from .numberfield import QEps
from .poly import Polynomial, PolyRing
from .cones import RationalCone


class DerivationError(ValueError):
    pass


@dataclass
class AmbientModel:
    """Realization of the algebra generators inside a larger quotient ring."""

    ring: PolyRing
    relations: tuple  # of Polynomial in `ring`
    expressions: dict  # algebra variable -> Polynomial in `ring`
    weights: dict | None = None  # ambient variable -> torus weight (int)
    _gb: list | None = field(default=None, repr=False)

    def relation_basis(self) -> list:
        if self._gb is None:
            rels = [r for r in self.relations if r]
            self._gb = buchberger(rels) if rels else []
        return self._gb

    def reduces_to_zero(self, f: Polynomial) -> bool:
        return not normal_form(f, self.relation_basis()) if self.relation_basis() else not f

    def expression_of(self, f: Polynomial) -> Polynomial:
        return f.subs(self.expressions, self.ring)

    def weight_of(self, f: Polynomial):
        """Torus weight when f is homogeneous for `weights`, else None."""
        if self.weights is None or not f:
            return None
        degs = {
            sum(e[i] * self.weights[v] for i, v in enumerate(self.ring.names))
            for e in f.terms
        }
        return degs.pop() if len(degs) == 1 else None


class PresentedAlgebra:
    """Quotient of a polynomial ring by (possibly partially known) relations."""

    def __init__(self, ring: PolyRing, relations=(), ambient: AmbientModel | None = None):
        self.ring = ring
        self.relations = tuple(relations)
        self.ambient = ambient
        self._gb: list | None = None
        if ambient is not None:
            missing = [v for v in ring.names if v not in ambient.expressions]
            if missing:
                raise DerivationError(f"no ambient expression for {missing}")
            for r in self.relations:
                if not ambient.reduces_to_zero(ambient.expression_of(r)):
                    raise DerivationError(
                        f"relation {r} does not vanish in the ambient model"
                    )
            if ambient.weights is not None:
                for v in ring.names:
                    w = ambient.weight_of(ambient.expressions[v])
                    if w != 0:
                        raise DerivationError(
                            f"generator {v} has ambient torus weight {w}, expected 0"
                        )

    def relation_basis(self) -> list:
        if self._gb is None:
            rels = [r for r in self.relations if r]
            self._gb = buchberger(rels) if rels else []
        return self._gb

    def is_zero(self, f: Polynomial) -> bool:
        """Exact ideal membership of f in the presentation ideal."""
        if not f:
            return True
        if self.ambient is not None:
            return self.ambient.reduces_to_zero(self.ambient.expression_of(f))
        if self.relations:
            return not normal_form(f, self.relation_basis())
        return not f

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form modulo the stored relations (presentation side)."""
        if not self.relations:
            return f
        return normal_form(f, self.relation_basis())

    def point_on_variety(self, point: dict) -> Polynomial | None:
        """None when every stored relation vanishes at the point, else the
        first violated relation."""
        for r in self.relations:
            if r.evaluate(point) != 0:
                return r
        return None

    def __repr__(self):
        return f"PresentedAlgebra({','.join(self.ring.names)}; {len(self.relations)} relations)"


class Derivation:
    """A derivation given by generator images, extended by Leibniz."""

    def __init__(self, algebra: PresentedAlgebra, images: dict, name: str = ""):
        self.algebra = algebra
        ring = algebra.ring
        self.images = {}
        for v, img in images.items():
            if v not in ring.index:
                raise DerivationError(f"unknown variable {v}")
            if isinstance(img, str):
                img = ring.parse(img)
            if img.ring != ring:
                raise DerivationError(f"image of {v} lives in the wrong ring")
            if img:
                self.images[v] = img
        self.name = name

    def of_var(self, v: str) -> Polynomial:
        return self.images.get(v, self.algebra.ring.zero())

    def __call__(self, f: Polynomial) -> Polynomial:
        """delta(f) = sum_i (df/dx_i) * delta(x_i)."""
        out = self.algebra.ring.zero()
        for v, img in self.images.items():
            df = f.diff(v)
            if df:
                out = out + df * img
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.algebra is not self.algebra:
            raise DerivationError("derivations on different algebras")
        images = dict(self.images)
        for v, img in other.images.items():
            images[v] = images.get(v, self.algebra.ring.zero()) + img
        name = f"{self.name}+{other.name}" if self.name and other.name else ""
        return Derivation(self.algebra, images, name)

    def scale(self, c) -> "Derivation":
        return Derivation(
            self.algebra, {v: img * c for v, img in self.images.items()}, self.name
        )

    def is_zero(self) -> bool:
        return all(self.algebra.is_zero(img) for img in self.images.values())

    def __repr__(self):
        label = self.name or "derivation"
        imgs = ", ".join(f"{v} -> {img}" for v, img in sorted(self.images.items()))
        return f"<{label}: {imgs}>"


def preserves_relations(delta: Derivation) -> tuple[bool, Polynomial | None]:
    """Well-definedness on the quotient: delta maps every relation into the
    presentation ideal.  Returns (ok, first failing relation)."""
    algebra = delta.algebra
    for r in algebra.relations:
        if not algebra.is_zero(delta(r)):
            return False, r
    return True, None


@dataclass(frozen=True)
class Nilpotent:
    chain_lengths: dict  # variable -> minimal n with delta^n(var) = 0


@dataclass(frozen=True)
class NotProvenUpTo:
    cap: int
    stuck_variable: str


def is_locally_nilpotent_bounded(delta: Derivation, cap: int = 64):
    """Iterate delta on each generator until the image lies in the ideal.

    A Nilpotent result is exact; NotProvenUpTo(cap) only reports that the
    chains did not terminate within the cap.
    """
    algebra = delta.algebra
    chains = {}
    for v in algebra.ring.names:
        f = delta.of_var(v)
        n = 1
        while not algebra.is_zero(f):
            f = delta(f)
            n += 1
            if n > cap:
                return NotProvenUpTo(cap, v)
        chains[v] = n
    return Nilpotent(chains)


# -- gradings ---------------------------------------------------------------


class GradingSpec:
    """A Z^k-degree per generator; valid when every relation is homogeneous."""

    def __init__(self, algebra: PresentedAlgebra, degrees: dict, k: int | None = None, name: str = ""):
        self.algebra = algebra
        self.name = name
        self.degrees = {}
        for v in algebra.ring.names:
            if v not in degrees:
                raise DerivationError(f"no degree assigned to {v}")
            d = degrees[v]
            d = (int(d),) if isinstance(d, int) else tuple(int(x) for x in d)
            self.degrees[v] = d
        lengths = {len(d) for d in self.degrees.values()}
        if len(lengths) != 1:
            raise DerivationError("inconsistent degree vector lengths")
        self.k = lengths.pop()
        if k is not None and k != self.k:
            raise DerivationError(f"expected grading rank {k}, got {self.k}")
        for r in algebra.relations:
            if self.degree_of(r) is None:
                raise DerivationError(
                    f"relation {r} is not homogeneous under grading {name or self.degrees}"
                )

    def term_degree(self, exps) -> tuple:
        names = self.algebra.ring.names
        total = [0] * self.k
        for e, v in zip(exps, names):
            if e:
                dv = self.degrees[v]
                for i in range(self.k):
                    total[i] += e * dv[i]
        return tuple(total)

    def degree_of(self, f: Polynomial):
        """The common degree of f's terms, or None if inhomogeneous/zero."""
        degs = {self.term_degree(e) for e in f.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def split(self, f: Polynomial) -> dict:
        """Decompose f into homogeneous parts, keyed by degree."""
        parts: dict[tuple, dict] = {}
        for e, c in f.terms.items():
            parts.setdefault(self.term_degree(e), {})[e] = c
        return {d: Polynomial(f.ring, t) for d, t in parts.items()}

    def is_homogeneous_derivation(self, delta: Derivation):
        """The common shift gamma with deg(delta(v)) = deg(v) + gamma."""
        shifts = set()
        for v, img in delta.images.items():
            if not img:
                continue
            d = self.degree_of(img)
            if d is None:
                return None
            dv = self.degrees[v]
            shifts.add(tuple(a - b for a, b in zip(d, dv)))
        if len(shifts) > 1:
            return None
        return shifts.pop() if shifts else (0,) * self.k


def graded_decompose(delta: Derivation, grading: GradingSpec) -> dict:
    """Split a derivation into grading-homogeneous components.

    The piece of delta(x) in degree deg(x) + gamma contributes to the
    component of degree gamma; the components sum back to delta.
    """
    if grading.algebra is not delta.algebra:
        raise DerivationError("grading belongs to a different algebra")
    components: dict[tuple, dict] = {}
    for v, img in delta.images.items():
        dv = grading.degrees[v]
        for d, part in grading.split(img).items():
            gamma = tuple(a - b for a, b in zip(d, dv))
            components.setdefault(gamma, {})[v] = part
    return {
        gamma: Derivation(delta.algebra, images, name=f"{delta.name}[{gamma}]")
        for gamma, images in sorted(components.items())
    }


def support_vertices(degrees) -> list[tuple]:
    """Vertices of the convex hull of a finite set of Z^k degree vectors.

    Exact test: d is a vertex iff (d, 1) is outside the cone spanned by
    (d', 1) over the other degrees.
    """
    degrees = sorted(set(tuple(d) for d in degrees))
    if not degrees:
        raise DerivationError("empty degree set has no hull")
    verts = []
    for d in degrees:
        others = [e + (1,) for e in degrees if e != d]
        if not others:
            verts.append(d)
            continue
        hull = RationalCone.from_generators(others, len(d) + 1)
        if not hull.contains(d + (1,)):
            verts.append(d)
    return verts


def semisimple_from_grading(grading: GradingSpec) -> Derivation:
    """The diagonal derivation x -> deg(x) * x of a rank-1 grading; every
    monomial is an eigenvector."""
    if grading.k != 1:
        raise DerivationError("semisimple derivation needs a rank-1 grading")
    ring = grading.algebra.ring
    images = {
        v: ring.var(v) * grading.degrees[v][0]
        for v in ring.names
        if grading.degrees[v][0] != 0
    }
    return Derivation(grading.algebra, images, name=f"semisimple[{grading.name}]")


# -- exponentials -----------------------------------------------------------


class Automorphism:
    """Polynomial algebra endomorphism with a known inverse."""

    def __init__(self, algebra: PresentedAlgebra, images: dict, inverse: dict | None = None):
        self.algebra = algebra
        self.images = images
        self.inverse = inverse

    def apply(self, f: Polynomial) -> Polynomial:
        return f.subs(self.images, self.algebra.ring)

    def apply_point(self, point: dict) -> dict:
        return {v: self.images.get(v, self.algebra.ring.var(v)).evaluate(point) for v in self.algebra.ring.names}

    def compose(self, other: "Automorphism") -> "Automorphism":
        """(self . other): apply other first, then self."""
        images = {v: self.apply(img) for v, img in other.images.items()}
        inverse = None
        if self.inverse is not None and other.inverse is not None:
            inv_other = Automorphism(self.algebra, other.inverse)
            inverse = {v: inv_other.apply(img) for v, img in self.inverse.items()}
        return Automorphism(self.algebra, images, inverse)

    def is_identity(self) -> bool:
        ring = self.algebra.ring
        return all(
            self.algebra.is_zero(self.images[v] - ring.var(v)) for v in self.images
        )


def exp_derivation(delta: Derivation, s=1, cap: int = 64) -> Automorphism:
    """exp(s*delta) as an automorphism: x -> sum_j s^j delta^j(x) / j!.

    Requires bounded-certified local nilpotency; the inverse is the
    exponential at -s, and the relations are checked to map into the ideal.
    """
    nilp = is_locally_nilpotent_bounded(delta, cap)
    if not isinstance(nilp, Nilpotent):
        raise DerivationError(
            f"nilpotency not established within {cap} steps (stuck on {nilp.stuck_variable})"
        )
    algebra = delta.algebra
    ring = algebra.ring
    s = ring.coerce(s)

    def series(sign) -> dict:
        images = {}
        for v in ring.names:
            total = ring.var(v)
            term = delta.of_var(v)
            j = 1
            coeff = ring.coerce(sign) * s
            while term and not algebra.is_zero(term):
                total = total + term * (coeff / math.factorial(j))
                term = delta(term)
                j += 1
                coeff = coeff * sign * s
            images[v] = total
        return images

    forward = series(1)
    backward = series(-1)
    phi = Automorphism(algebra, forward, backward)
    for r in algebra.relations:
        if not algebra.is_zero(phi.apply(r)):
            raise DerivationError(f"exponential does not preserve relation {r}")
    return phi


# -- pointwise data ---------------------------------------------------------


def vector_field_at(delta: Derivation, point: dict) -> tuple:
    """Values of the generator images at a point of the variety."""
    bad = delta.algebra.point_on_variety(point)
    if bad is not None:
        raise DerivationError(f"point violates relation {bad}")
    return tuple(delta.of_var(v).evaluate(point) for v in delta.algebra.ring.names)


def tangent_rank(deltas, point: dict) -> int:
    """Rank of the matrix of derivation vector fields at the point."""
    rows = [vector_field_at(d, point) for d in deltas]
    return field_rank([[_lift(x) for x in row] for row in rows])


def jacobian_rank(relations, point: dict) -> int:
    """Rank of the Jacobian of the relations at a point satisfying them."""
    rows = []
    for r in relations:
        if r.evaluate(point) != 0:
            raise DerivationError(f"point violates relation {r}")
        rows.append([_lift(r.diff(v).evaluate(point)) for v in r.ring.names])
    return field_rank(rows)


def _lift(x):
    """Promote mixed rational / number-field entries to a common field."""
    if isinstance(x, QEps):
        return x
    return Fraction(x)
