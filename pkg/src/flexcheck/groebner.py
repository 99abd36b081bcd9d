"""Buchberger's algorithm with Gebauer-Moeller pair pruning, normal forms,
and elimination ideals.

Coefficients come from the ring's exact field, so results are certificates,
not approximations.  Long computations honor an effort cap in seconds and
raise EffortCapExceeded instead of hanging; callers surface that as an
explicit unknown.
"""
from __future__ import annotations

import time

from .poly import Polynomial, PolyRing, block_order, degrevlex


class EffortCapExceeded(Exception):
    def __init__(self, seconds: float):
        super().__init__(f"effort cap of {seconds:g}s exceeded")
        self.seconds = seconds


def _lcm(e1, e2):
    return tuple(a if a > b else b for a, b in zip(e1, e2))


def _divides(e1, e2) -> bool:
    for a, b in zip(e1, e2):
        if a > b:
            return False
    return True


def _coprime(e1, e2) -> bool:
    for a, b in zip(e1, e2):
        if a and b:
            return False
    return True


def _reduce_terms(work: dict, reducers: list, key) -> dict:
    """Full normal form of a term dict against (lt, lc, terms) reducers."""
    out = {}
    work = dict(work)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if not c:
            continue
        deg = sum(m)
        hit = None
        for lt, lc, terms in reducers:
            if sum(lt) <= deg and _divides(lt, m):
                hit = (lt, lc, terms)
                break
        if hit is None:
            out[m] = c
            continue
        lt, lc, terms = hit
        q = tuple(a - b for a, b in zip(m, lt))
        scale = c / lc
        for e2, c2 in terms.items():
            if e2 == lt:
                continue
            e = tuple(a + b for a, b in zip(e2, q))
            s = work.get(e)
            s = -scale * c2 if s is None else s - scale * c2
            if s:
                work[e] = s
            else:
                work.pop(e, None)
    return out


def normal_form(f: Polynomial, basis: list[Polynomial]) -> Polynomial:
    """Full reduction of f modulo a list of nonzero polynomials."""
    reducers = [(g.lm(), g.lc(), g.terms) for g in basis if g]
    return Polynomial(f.ring, _reduce_terms(f.terms, reducers, f.ring.order.key))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    lf, cf = f.lt()
    lg, cg = g.lt()
    l = _lcm(lf, lg)
    mf = ring.monomial(tuple(a - b for a, b in zip(l, lf)), ring.coerce(1) / cf)
    mg = ring.monomial(tuple(a - b for a, b in zip(l, lg)), ring.coerce(1) / cg)
    return mf * f - mg * g


class _GBState:
    """Append-only basis plus the live pair queue."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.key = ring.order.key
        self.polys: list[Polynomial] = []
        self.alive: list[bool] = []
        self.reducers: list = []  # (lt, lc, terms) of live elements
        self.pairs: list = []  # (key(lcm), i, j, lcm)

    def add(self, p: Polynomial):
        """Gebauer-Moeller update with the new element p."""
        t = len(self.polys)
        lt_t = p.lm()
        # fresh candidate pairs against live elements, criterion F first
        by_lcm: dict[tuple, int] = {}
        for i in range(t):
            if not self.alive[i]:
                continue
            l = _lcm(self.polys[i].lm(), lt_t)
            if l not in by_lcm:
                by_lcm[l] = i
        # criterion M: drop lcms strictly divisible by another fresh lcm
        fresh = sorted(by_lcm.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        kept = []
        for n, (l, i) in enumerate(fresh):
            deg = sum(l)
            drop = False
            for l2, _ in fresh:
                if sum(l2) >= deg:
                    break
                if _divides(l2, l):
                    drop = True
                    break
            if not drop:
                kept.append((l, i))
        # chain criterion against queued pairs
        survivors = []
        for entry in self.pairs:
            _, i, j, l = entry
            if (
                _divides(lt_t, l)
                and _lcm(self.polys[i].lm(), lt_t) != l
                and _lcm(self.polys[j].lm(), lt_t) != l
            ):
                continue
            survivors.append(entry)
        self.pairs = survivors
        # criterion B last: coprime leading monomials never make a pair
        for l, i in kept:
            if not _coprime(self.polys[i].lm(), lt_t):
                self.pairs.append((self.key(l), i, t, l))
        # supersede live elements whose leading monomial p's divides
        for i in range(t):
            if self.alive[i] and _divides(lt_t, self.polys[i].lm()):
                self.alive[i] = False
        self.polys.append(p)
        self.alive.append(True)
        self.reducers = [
            (g.lm(), g.lc(), g.terms)
            for g, a in zip(self.polys, self.alive)
            if a
        ]

    def pop_pair(self):
        best = min(range(len(self.pairs)), key=lambda k: self.pairs[k][0])
        _, i, j, _ = self.pairs.pop(best)
        return i, j


def buchberger(
    gens: list[Polynomial],
    effort_cap: float | None = None,
) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by `gens`.

    The result is monic, pairwise reduced, and sorted by leading monomial,
    hence canonical for the ring's term order.
    """
    polys = [g for g in gens if g]
    if not polys:
        return []
    ring = polys[0].ring
    start = time.monotonic()
    state = _GBState(ring)
    for g in sorted(polys, key=lambda p: ring.order.key(p.lm())):
        r = _reduce_terms(g.terms, state.reducers, state.key)
        if r:
            state.add(Polynomial(ring, r).monic())
    while state.pairs:
        if effort_cap is not None and time.monotonic() - start > effort_cap:
            raise EffortCapExceeded(effort_cap)
        i, j = state.pop_pair()
        s = s_polynomial(state.polys[i], state.polys[j])
        r = _reduce_terms(s.terms, state.reducers, state.key)
        if r:
            state.add(Polynomial(ring, r).monic())
    return _inter_reduce([g for g, a in zip(state.polys, state.alive) if a])


def _inter_reduce(basis: list[Polynomial]) -> list[Polynomial]:
    if not basis:
        return []
    ring = basis[0].ring
    basis = sorted(basis, key=lambda p: ring.order.key(p.lm()))
    minimal = []
    for p in basis:
        if not any(_divides(q.lm(), p.lm()) for q in minimal):
            minimal.append(p)
    out = []
    for k, p in enumerate(minimal):
        rest = minimal[:k] + minimal[k + 1 :]
        r = normal_form(p, rest)
        if r:
            out.append(r.monic())
    out.sort(key=lambda p: ring.order.key(p.lm()))
    return out


def is_groebner_basis(basis: list[Polynomial]) -> bool:
    """Direct Buchberger criterion check; used by tests and validators."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j]), basis):
                return False
    return True


def ideal_member(f: Polynomial, groebner: list[Polynomial]) -> bool:
    return not normal_form(f, groebner)


def eliminate(
    gens: list[Polynomial],
    drop: list[str],
    effort_cap: float | None = None,
) -> list[Polynomial]:
    """Generators of the elimination ideal I cap K[names - drop].

    Computes a Groebner basis in a block order with the dropped variables
    in front, keeps the elements free of them, and returns a reduced basis
    in the degrevlex subring.
    """
    if not gens:
        return []
    ring = gens[0].ring
    drop = list(drop)
    unknown = [v for v in drop if v not in ring.index]
    if unknown:
        raise ValueError(f"cannot eliminate unknown variable(s) {unknown}")
    keep = [v for v in ring.names if v not in drop]
    work_names = tuple(drop) + tuple(keep)
    work = PolyRing(work_names, ring.field, block_order(len(drop), len(work_names)))
    perm = [ring.index[v] for v in work_names]
    lifted = [
        Polynomial(work, {tuple(e[i] for i in perm): c for e, c in g.terms.items()})
        for g in gens
        if g
    ]
    gb = buchberger(lifted, effort_cap)
    nd = len(drop)
    sub = PolyRing(tuple(keep), ring.field, degrevlex(len(keep)))
    kept_polys = []
    for g in gb:
        if all(all(x == 0 for x in e[:nd]) for e in g.terms):
            kept_polys.append(
                Polynomial(sub, {e[nd:]: c for e, c in g.terms.items()})
            )
    return _inter_reduce(kept_polys)
