"""Marked ideals ``(Z, N, E, I, d)`` on affine charts and their order theory."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .derivatives import coordinate_var, derivative_tower
from .errors import PointNotOnVariety, UnsupportedError, ValidationError
from .kernel import INF, QQ, Ideal, Poly, Ring
from .kernel.fields import field_to_json, make_field


@dataclass(frozen=True)
class Hypersurface:
    """One member of the ordered snc divisor E.

    ``gen`` is the constant 1 once the hypersurface has no strict transform in
    a chart; the entry is kept so that E-indices stay stable.
    """

    gen: Poly
    origin: str = "original"
    step: int | None = None

    @property
    def var(self) -> str | None:
        return coordinate_var(self.gen)

    @property
    def is_empty(self) -> bool:
        return self.gen.is_constant()

    def to_ring(self, ring: Ring) -> "Hypersurface":
        return replace(self, gen=self.gen.to_ring(ring))

    def to_json(self, index: int):
        out = {"gen": str(self.gen), "origin": self.origin, "index": index}
        if self.step is not None:
            out["step"] = self.step
        return out


@dataclass(frozen=True)
class Chart:
    """Affine chart of Z with its map back to the coordinates it came from.

    ``to_original[i]`` expresses the i-th original coordinate in chart
    coordinates; ``None`` means the chart is the original one.
    """

    ring: Ring
    original: Ring | None = None
    to_original: tuple | None = None
    label: str = ""

    @property
    def vars(self):
        return self.ring.vars

    @property
    def field(self):
        return self.ring.field

    def origin_ring(self) -> Ring:
        return self.original or self.ring

    def original_images(self) -> tuple:
        if self.to_original is None:
            return tuple(self.ring.var(v) for v in self.ring.vars)
        return self.to_original

    def compose(self, ring: Ring, images: Sequence[Poly], label: str) -> "Chart":
        """Chart obtained by the substitution ``old var i -> images[i]`` into ``ring``."""
        prev = self.original_images()
        new = tuple(p.compose(list(images), ring) for p in prev)
        return Chart(ring, self.origin_ring(), new, label)


@dataclass(frozen=True)
class MarkedIdeal:
    """``(chart, N = V(n_eqs), E, I, d)``.

    ``I`` lives on ``N``: its generators never involve the variables in
    ``n_eqs``.  ``history`` records the steps that produced this chart.
    """

    chart: Chart
    ideal: Ideal
    d: int
    E: tuple = ()
    n_eqs: tuple = ()
    history: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError("the mark d must be a positive integer")
        if self.ideal.ring != self.chart.ring:
            raise ValidationError("ideal and chart live on different rings")
        for v in self.n_eqs:
            i = self.ring.index(v)
            if any(g.degree_in(i) > 0 for g in self.ideal.gens):
                raise ValidationError(f"generators must be functions on N; {v} occurs")
        E = tuple(H if isinstance(H, Hypersurface) else Hypersurface(H) for H in self.E)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "n_eqs", tuple(self.n_eqs))

    @classmethod
    def from_strings(cls, vars, gens, d, field=QQ, E=(), n_eqs=()):
        field = make_field(field)
        ring = Ring(field, vars)
        ideal = Ideal(ring, [ring.parse(g) for g in gens])
        return cls(Chart(ring), ideal, d, tuple(Hypersurface(ring.parse(e)) for e in E), tuple(n_eqs))

    @property
    def ring(self) -> Ring:
        return self.chart.ring

    @property
    def gens(self):
        return self.ideal.gens

    @property
    def N_dim(self) -> int:
        return self.ring.nvars - len(self.n_eqs)

    def replace(self, **kw) -> "MarkedIdeal":
        return replace(self, **kw)

    def restrict(self, var: str, ideal: Ideal, d: int) -> "MarkedIdeal":
        """Marked ideal on ``P = V(var)`` with the variable dropped from the chart."""
        sub = ideal.ring
        E = []
        for H in self.E:
            if H.var == var:
                continue
            g = H.gen.subs({var: 0})
            E.append(replace(H, gen=g.to_ring(sub)))
        chart = Chart(sub, self.chart.origin_ring(), None, self.chart.label)
        return MarkedIdeal(chart, ideal, d, tuple(E), tuple(v for v in self.n_eqs if v != var))

    def cosupport(self) -> Ideal:
        return cosupport(self)

    def e_vars(self) -> list[str]:
        return [H.var for H in self.E if H.var is not None]

    def to_json(self):
        return {
            "field": field_to_json(self.ring.field),
            "vars": list(self.ring.vars),
            "N": list(self.n_eqs),
            "E": [H.to_json(i) for i, H in enumerate(self.E)],
            "gens": [str(g) for g in self.ideal.gens],
            "d": self.d,
        }

    def __str__(self):
        E = ", ".join(str(H.gen) for H in self.E)
        gens = ", ".join(map(str, self.ideal.gens)) or "0"
        return f"(({gens}), d={self.d}, E=[{E}])"


def _point(ring: Ring, point):
    if isinstance(point, dict):
        point = [point.get(v, 0) for v in ring.vars]
    if len(point) != ring.nvars:
        raise ValidationError("point dimension does not match chart")
    return [ring.field(a) for a in point]


def order_at(I, point) -> int:
    """``ord_a I``: minimum over generators of the lowest degree after translating ``a`` to 0."""
    gens = I.gens if isinstance(I, Ideal) else I
    if not gens:
        return INF
    ring = gens[0].ring
    pt = _point(ring, point)
    return min(g.translate(pt).order() for g in gens)


def order_along(I, H) -> int:
    """Largest ``e`` with ``I ⊆ (x)^e`` for a coordinate hyperplane ``H = V(x)``."""
    gens = I.gens if isinstance(I, Ideal) else list(I)
    if isinstance(H, Hypersurface):
        H = H.gen
    if isinstance(H, str):
        var = H
    else:
        var = coordinate_var(H)
        if var is None:
            raise UnsupportedError(f"{H} is not a coordinate hyperplane")
    if not gens:
        return INF
    i = gens[0].ring.index(var)
    return min(g.var_valuation(i) for g in gens)


def cosupport(M: MarkedIdeal) -> Ideal:
    """Ideal ``D^(d-1)(I) + (n_eqs)`` whose zero set is ``{ord >= d}``."""
    D = derivative_tower(M.ideal, (), M.d - 1, M.n_eqs)
    extra = [M.ring.var(v) for v in M.n_eqs]
    return Ideal(M.ring, list(D.gens) + extra, M.ideal.degree_cap)


def in_cosupport(M: MarkedIdeal, point) -> bool:
    pt = _point(M.ring, point)
    return all(not g.evaluate(pt) for g in cosupport(M).gens)


def is_maximal_order(M: MarkedIdeal, probe_points: Sequence = ()) -> bool:
    """``D^d(I)`` is the unit ideal, i.e. no point of N has order above d.

    Probe points must lie in the cosupport; they are checked to have order
    exactly ``d`` as a diagnostic.
    """
    for p in probe_points:
        if not in_cosupport(M, p):
            raise PointNotOnVariety(f"probe point {p} is not in the cosupport")
    D = derivative_tower(M.ideal, (), M.d, M.n_eqs)
    if not D.is_unit():
        return False
    return all(order_at(M.ideal, p) == M.d for p in probe_points)


def max_order(I: Ideal, frozen: Sequence[str] = (), cap: int = 64) -> int:
    """``max_x ord_x I`` over the zero set; 0 for the unit ideal."""
    if I.is_zero():
        return INF
    j = 0
    D = I
    while not D.is_unit():
        j += 1
        if j > cap:
            raise ValidationError("order exceeds cap")
        D = derivative_tower(D, (), 1, frozen)
    return j


# ----- smooth pullbacks -------------------------------------------------

@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ChartInclusion:
    """Open inclusion ``D(h) ⊂ Z``; the pullback keeps the same generators."""

    inverted: str = "1"


@dataclass(frozen=True)
class ProductProjection:
    """``Z x A^k -> Z`` with the new coordinates appended last."""

    new_vars: tuple


@dataclass(frozen=True)
class FieldExtension:
    """Ground-field extension; ``images`` sends parameters of the source field to the target."""

    target: object
    images: dict | None = None


def pullback_smooth(M: MarkedIdeal, phi) -> MarkedIdeal:
    """Componentwise pullback along a supported smooth morphism; E order and d are kept."""
    if isinstance(phi, (Identity, ChartInclusion)):
        return M
    if isinstance(phi, ProductProjection):
        names = tuple(phi.new_vars)
        ring = Ring(M.ring.field, M.ring.vars + names)
        lift = lambda p: p.to_ring(ring)
        chart = Chart(ring, label=M.chart.label)
        if M.chart.to_original is not None:
            orig = M.chart.original
            chart = Chart(
                ring,
                Ring(orig.field, orig.vars + names),
                tuple(lift(p) for p in M.chart.to_original) + tuple(ring.var(v) for v in names),
                M.chart.label,
            )
        return MarkedIdeal(chart, Ideal(ring, [lift(g) for g in M.gens], M.ideal.degree_cap), M.d,
                           tuple(H.to_ring(ring) for H in M.E), M.n_eqs, M.history)
    if isinstance(phi, FieldExtension):
        from .descent import coefficient_embedding

        emb = coefficient_embedding(M.ring.field, phi.target, phi.images)
        ring = Ring(phi.target, M.ring.vars)
        move = lambda p: p.map_coeffs(emb, ring)
        chart = Chart(ring, None, None, M.chart.label)
        return MarkedIdeal(chart, Ideal(ring, [move(g) for g in M.gens], M.ideal.degree_cap), M.d,
                           tuple(replace(H, gen=move(H.gen)) for H in M.E), M.n_eqs, M.history)
    from .descent import GenericFibre

    if isinstance(phi, GenericFibre):
        return phi.pull_marked(M)
    raise UnsupportedError(f"unsupported morphism {phi!r}")
