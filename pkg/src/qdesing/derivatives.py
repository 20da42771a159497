"""Derivative ideals, coefficient ideals and maximal contact.

Only chart variables are ever differentiated; field parameters behave as
constants.  Ideals produced here are returned with their reduced Groebner
basis as generator list, which keeps iterated constructions small.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .errors import MarkUnderflowError, NoTriangularContactError, UnsupportedError, ValidationError
from .kernel import Ideal, Poly, Ring


def _tidy(ring: Ring, gens: Sequence[Poly], degree_cap: int = 24) -> Ideal:
    return Ideal(ring, Ideal(ring, gens, degree_cap).groebner(), degree_cap)


def _free_vars(ideal: Ideal, frozen: Sequence[str] = ()) -> list[str]:
    return [v for v in ideal.ring.vars if v not in frozen]


def derivative_ideal(I: Ideal, frozen: Sequence[str] = ()) -> Ideal:
    """``D(I)``: generators of ``I`` and all their first partials.

    ``frozen`` lists chart variables that are not differentiated (the
    equations of ``N`` when ``I`` lives on a coordinate subspace).
    """
    gens = list(I.gens)
    for g in I.gens:
        for v in _free_vars(I, frozen):
            d = g.diff(v)
            if d:
                gens.append(d)
    return _tidy(I.ring, gens, I.degree_cap)


def coordinate_var(h: Poly) -> str | None:
    """Name of ``x`` when ``h = c*x``; ``None`` otherwise."""
    if len(h.terms) != 1:
        return None
    (alpha,) = h.terms
    if sum(alpha) != 1:
        return None
    return h.ring.vars[alpha.index(1)]


def _log_vars(E, ring: Ring) -> set[str]:
    out = set()
    for H in E:
        gen = getattr(H, "gen", H)
        gen = gen.to_ring(ring) if gen.ring != ring else gen
        if gen.is_constant():
            continue
        v = coordinate_var(gen)
        if v is None:
            raise UnsupportedError(f"divisor component {gen} is not a coordinate hyperplane")
        out.add(v)
    return out


def derivative_ideal_log(I: Ideal, E, frozen: Sequence[str] = ()) -> Ideal:
    """``D_E(I)``: ``x_i d/dx_i`` along E-hyperplanes, plain partials elsewhere."""
    logs = _log_vars(E, I.ring)
    gens = list(I.gens)
    for g in I.gens:
        for v in _free_vars(I, frozen):
            d = g.diff(v)
            if not d:
                continue
            gens.append(d * I.ring.var(v) if v in logs else d)
    return _tidy(I.ring, gens, I.degree_cap)


def derivative_tower(I: Ideal, E=(), j: int = 1, frozen: Sequence[str] = ()) -> Ideal:
    """``D_E^j(I)``; ``j = 0`` returns ``I`` unchanged."""
    if j < 0:
        raise ValidationError("derivative order must be nonnegative")
    out = I
    for _ in range(j):
        if out.is_unit():
            return out
        out = derivative_ideal_log(out, E, frozen) if E else derivative_ideal(out, frozen)
    return out


@dataclass(frozen=True)
class WeightedMarkedSum:
    """Formal sum of marked ideals ``(I_i, d_i)`` on a common ring.

    Combination rule: ``e = lcm(d_i)`` over nonzero parts and ideal
    ``sum I_i^(e/d_i)``.  With every part zero the mark is ``default_mark``.
    """

    ring: Ring
    parts: tuple
    default_mark: int | None = None

    @property
    def mark(self) -> int:
        marks = [d for I, d in self.parts if not I.is_zero()]
        if not marks:
            if self.default_mark is None:
                raise ValidationError("weighted sum of zero ideals needs a default mark")
            return self.default_mark
        return lcm(*marks)

    def ideal(self) -> Ideal:
        e = self.mark
        gens: list[Poly] = []
        for I, d in self.parts:
            if I.is_zero():
                continue
            if e % d:
                raise ValidationError(f"mark {d} does not divide {e}")
            power = e // d
            gb = Ideal(I.ring, I.gens, I.degree_cap).groebner()
            if len(gb) == 1 and gb[0].is_constant():
                return Ideal(self.ring, [self.ring.one()])
            P = Ideal(I.ring, gb, I.degree_cap).power(power)
            gens.extend(g.to_ring(self.ring) for g in P.gens)
        return _tidy(self.ring, gens) if gens else Ideal(self.ring, [])


def coefficient_ideal(M, k: int):
    """``C^k_E(M)`` as a marked ideal: ``sum_{j<=k} (D_E^j(I), d-j)``."""
    d = M.d
    if k >= d:
        raise MarkUnderflowError(f"coefficient ideal index {k} must be below the mark {d}")
    if k < 0:
        raise ValidationError("coefficient ideal index must be nonnegative")
    parts = []
    D = M.ideal
    for j in range(k + 1):
        if j:
            D = derivative_tower(D, M.E, 1, M.n_eqs)
        parts.append((D, d - j))
    W = WeightedMarkedSum(M.ring, tuple(parts))
    return M.replace(ideal=W.ideal(), d=W.mark)


def restrict_to_hypersurface(I: Ideal, var: str) -> Ideal:
    """Set ``var = 0`` and drop it from the ring."""
    ring = I.ring
    ring.index(var)
    sub = Ring(ring.field, [v for v in ring.vars if v != var])
    gens = [g.subs({var: 0}).to_ring(sub) for g in I.gens]
    return Ideal(sub, [g for g in gens if g], I.degree_cap)


def coefficient_ideal_normal_variant(M, var: str):
    """Weighted sum of ``((c_j), d - j)``, ``j < d``, where ``g = sum_j c_j var^j``.

    The result is a marked ideal on ``P = V(var)``; E-entries equal to ``P``
    are dropped and the others restricted.
    """
    ring = M.ring
    i = ring.index(var)
    sub = Ring(ring.field, [v for v in ring.vars if v != var])
    buckets: dict[int, list[Poly]] = {}
    for g in M.ideal.gens:
        for j, c in g.coefficients_in(i).items():
            if j < M.d and c:
                buckets.setdefault(j, []).append(c.to_ring(sub))
    parts = tuple(
        (Ideal(sub, buckets[j], M.ideal.degree_cap), M.d - j) for j in sorted(buckets)
    )
    W = WeightedMarkedSum(sub, parts, default_mark=M.d)
    return M.restrict(var, ideal=W.ideal(), d=W.mark)


@dataclass(frozen=True)
class Contact:
    """Maximal contact data: ``z = c*x + h`` with ``h`` free of ``x``.

    ``substitution`` maps ``x`` to ``(x - h)/c`` so that ``z`` becomes ``x``
    and ``P = V(x)``.
    """

    var: str
    element: Poly
    substitution: dict

    @property
    def is_identity(self) -> bool:
        img = self.substitution[self.var]
        return img == img.ring.var(self.var)


def _triangular(f: Poly, var: str):
    ring = f.ring
    i = ring.index(var)
    if f.degree_in(i) != 1:
        return None
    parts = f.coefficients_in(i)
    c = parts.get(1)
    if c is None or not c.is_constant():
        return None
    return c.constant_coeff(), parts.get(0, ring.zero())


def maximal_contact(M, point=None, protect=()) -> Contact:
    """Find ``z = c*x_i + h(other vars)`` in ``D^(d-1)(I)``.

    Generators are searched first, then the Groebner basis, variables in
    declaration order.  Variables listed in ``protect`` (E-hyperplanes) are
    never moved by a nontrivial ``h``.
    """
    D = derivative_tower(M.ideal, (), M.d - 1, M.n_eqs)
    if D.is_unit():
        raise ValidationError("cosupport is empty; no maximal contact needed")
    ring = M.ring
    pt = None
    if point is not None:
        pt = [ring.field(a) for a in point]
    candidates = list(M.ideal.gens if M.d == 1 else []) + list(D.gens) + list(D.groebner())
    for v in ring.vars:
        if v in M.n_eqs:
            continue
        for f in candidates:
            tri = _triangular(f, v)
            if tri is None:
                continue
            c, h = tri
            if h and v in protect:
                continue
            if pt is not None and f.evaluate(pt):
                continue
            x = ring.var(v)
            return Contact(v, f, {v: (x - h).scale(ring.field.one / c)})
    raise NoTriangularContactError("no element of D^(d-1)(I) is triangular in a single variable")
