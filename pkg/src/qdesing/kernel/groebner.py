"""Buchberger's algorithm, normal forms, ideal membership and elimination.

Leading terms here are always the LARGEST monomial for the chosen order
(deglex by default).  The initial-exponent convention used for diagrams is
the opposite one and lives in :mod:`qdesing.kernel.linalg`.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from ..errors import CapacityError, ValidationError
from .polys import Poly, Ring, deglex_key, divides, mono_div, mono_lcm

DEFAULT_DEGREE_CAP = 24


def elimination_key(eliminated: Sequence[int]):
    """Block order: graded order on ``eliminated`` variables first, deglex on the rest."""
    elim = tuple(eliminated)
    elim_set = set(elim)

    def key(alpha):
        e = tuple(alpha[i] for i in elim)
        r = tuple(a for i, a in enumerate(alpha) if i not in elim_set)
        return (sum(e),) + e + (sum(r),) + r

    return key


def normal_form(f: Poly, basis: Sequence[Poly], key: Callable = deglex_key) -> Poly:
    """Full reduction of ``f`` modulo ``basis`` (remainder of multivariate division)."""
    if not basis or f.is_zero():
        return f
    ring = f.ring
    leads = [(g.leading(key), g) for g in basis if not g.is_zero()]
    p = dict(f.terms)
    rem: dict = {}
    while p:
        alpha = max(p, key=key)
        c = p[alpha]
        for (lg, lc), g in leads:
            if divides(lg, alpha):
                shift = mono_div(alpha, lg)
                q = c / lc
                for b, d in g.terms.items():
                    m = tuple(x + y for x, y in zip(b, shift))
                    v = p.get(m)
                    v = -q * d if v is None else v - q * d
                    if v:
                        p[m] = v
                    else:
                        p.pop(m, None)
                break
        else:
            rem[alpha] = c
            del p[alpha]
    return Poly(ring, rem, _clean=True)


def s_polynomial(f: Poly, g: Poly, key: Callable = deglex_key) -> Poly:
    (lf, cf), (lg, cg) = f.leading(key), g.leading(key)
    lcm = mono_lcm(lf, lg)
    return f.mul_term(mono_div(lcm, lf), cg) - g.mul_term(mono_div(lcm, lg), cf)


def groebner_basis(
    polys: Iterable[Poly],
    key: Callable = deglex_key,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> list[Poly]:
    """Reduced Groebner basis, monic, sorted by ascending leading monomial."""
    gens = [p for p in polys if not p.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for p in gens:
        if p.degree() > degree_cap:
            raise CapacityError(f"generator degree {p.degree()} exceeds cap {degree_cap}")

    basis: list[Poly] = []
    leads: list = []
    pairs: list = []

    def add(h: Poly):
        h = h.monic(key)
        lh = h.leading(key)[0]
        idx = len(basis)
        # chain criterion on existing pairs
        kept = []
        for (i, j, lcm) in pairs:
            if divides(lh, lcm) and mono_lcm(leads[i], lh) != lcm and mono_lcm(leads[j], lh) != lcm:
                continue
            kept.append((i, j, lcm))
        pairs[:] = kept
        basis.append(h)
        leads.append(lh)
        for i in range(idx):
            if basis[i] is None:
                continue
            lcm = mono_lcm(leads[i], lh)
            if all(min(a, b) == 0 for a, b in zip(leads[i], lh)):
                continue  # coprime leading monomials
            pairs.append((i, idx, lcm))

    for g in gens:
        r = normal_form(g, [b for b in basis if b is not None], key)
        if not r.is_zero():
            if r.is_constant():
                return [ring.one()]
            add(r)

    while pairs:
        pairs.sort(key=lambda t: key(t[2]))
        i, j, lcm = pairs.pop(0)
        if basis[i] is None or basis[j] is None:
            continue
        s = s_polynomial(basis[i], basis[j], key)
        r = normal_form(s, [b for b in basis if b is not None], key)
        if r.is_zero():
            continue
        if r.is_constant():
            return [ring.one()]
        if r.degree() > degree_cap:
            raise CapacityError(f"Groebner computation exceeded degree cap {degree_cap}")
        add(r)

    return reduce_basis([b for b in basis if b is not None], key)


def reduce_basis(basis: Sequence[Poly], key: Callable = deglex_key) -> list[Poly]:
    basis = [b.monic(key) for b in basis if not b.is_zero()]
    minimal = []
    for i, g in enumerate(basis):
        lg = g.leading(key)[0]
        dominated = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lh = h.leading(key)[0]
            if divides(lh, lg) and (lh != lg or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(normal_form(g, others, key).monic(key))
    reduced.sort(key=lambda g: key(g.leading(key)[0]))
    return reduced


class Ideal:
    """Finite generator list with a lazily computed deglex Groebner basis."""

    def __init__(self, ring: Ring, gens: Iterable[Poly] = (), degree_cap: int = DEFAULT_DEGREE_CAP):
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise ValidationError(f"generator {g} not in ring {ring}")
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self.degree_cap = degree_cap
        self._gb = None

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner(self) -> list[Poly]:
        if self._gb is None:
            self._gb = groebner_basis(self.gens, deglex_key, self.degree_cap)
        return self._gb

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.groebner())

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens, self.degree_cap)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens], self.degree_cap)

    def power(self, n: int) -> "Ideal":
        result = Ideal(self.ring, [self.ring.one()], self.degree_cap)
        for _ in range(n):
            result = result * self
            result = Ideal(self.ring, _dedupe(result.gens), self.degree_cap)
        return result

    def map(self, fn) -> "Ideal":
        gens = [fn(g) for g in self.gens]
        ring = gens[0].ring if gens else self.ring
        return Ideal(ring, gens, self.degree_cap)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"


def _dedupe(polys):
    out = []
    for p in polys:
        if not any((p - q).is_zero() for q in out):
            out.append(p)
    return out


def eliminate(ideal: Ideal, keep: Sequence[str]) -> Ideal:
    """``I ∩ K[keep]`` via a block elimination order; result lives in the subring."""
    ring = ideal.ring
    keep = list(keep)
    for v in keep:
        ring.index(v)
    drop = [i for i, v in enumerate(ring.vars) if v not in keep]
    key = elimination_key(drop)
    gb = groebner_basis(ideal.gens, key, ideal.degree_cap)
    sub = Ring(ring.field, [v for v in ring.vars if v in keep])
    kept = []
    for g in gb:
        if all(g.degree_in(i) <= 0 for i in drop):
            kept.append(g.to_ring(sub))
    return Ideal(sub, kept, ideal.degree_cap)


def saturate(ideal: Ideal, f: Poly, aux: str = "_sat") -> Ideal:
    """``I : f^∞`` through the Rabinowitsch trick."""
    ring = ideal.ring
    name = aux
    while name in ring.vars:
        name += "_"
    big = Ring(ring.field, ring.vars + (name,))
    s = big.var(name)
    gens = [g.to_ring(big) for g in ideal.gens] + [big.one() - s * f.to_ring(big)]
    return Ideal(ring, eliminate(Ideal(big, gens, ideal.degree_cap), ring.vars).gens, ideal.degree_cap)
