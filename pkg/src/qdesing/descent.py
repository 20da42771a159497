"""Descent of an ideal over a finitely generated field to a model over QQ.

Every coefficient outside QQ is replaced by a fresh indeterminate; the kernel
of the coefficient map is the prime of the parameter variety T, and the
original ideal is recovered as the generic fibre of Z -> T.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidEmbeddingError, RoundTripFailure, UnsupportedError, ValidationError
from .kernel import INF, QQ, FieldElement, FractionField, Ideal, Poly, Ring, eliminate, saturate
from .kernel.fields import _udivmod, _ugcd
from .kernel.polys import Rationals


def _lcm_den(dens: Sequence[Poly], field: FractionField) -> Poly:
    out = field.base.one()
    for d in dens:
        if d.is_constant():
            continue
        if field._mode == "transcendental":
            g = _ugcd(out, d)
            out = _udivmod(out * d, g)[0]
        elif out.exact_div(d) is None:
            out = out * d
    return out


def clear_denominators(g: Poly) -> Poly:
    """Multiply by the lcm of coefficient denominators (a unit of the field)."""
    field = g.ring.field
    if isinstance(field, Rationals):
        return g
    L = _lcm_den([c.den for c in g.terms.values()], field)
    if L.is_constant():
        return g
    return g.scale(field.element(L))


def _normalize(c: FieldElement):
    """Split ``c = q * c~`` with ``q`` rational and ``c~`` canonical up to scale."""
    num = c.num
    lc = num.leading()[1]
    return lc, c.field.element(num.scale(1 / lc), c.den)


@dataclass(frozen=True)
class Coefficients:
    symbols: tuple
    values: tuple
    cleared: tuple
    rewritten: tuple
    ring: Ring


def symbol_names(count: int, taken) -> tuple:
    taken = set(taken)
    for prefix in ("x", "c", "u"):
        names = tuple(f"{prefix}{j}" for j in range(1, count + 1))
        if not taken & set(names):
            return names
    raise ValidationError("could not choose coefficient symbol names")


def collect_coefficients(I: Ideal) -> Coefficients:
    """Replace each non-rational coefficient (up to a rational factor) by a symbol.

    Symbols are numbered in first-occurrence order, scanning generators in
    order and terms by descending deglex.
    """
    ring = I.ring
    field = ring.field
    cleared = tuple(clear_denominators(g) for g in I.gens)
    values: list = []
    if not isinstance(field, Rationals):
        for g in cleared:
            for _, c in g.sorted_terms(descending=True):
                if c.is_rational():
                    continue
                _, cn = _normalize(c)
                if not any(cn == v for v in values):
                    values.append(cn)
    taken = set(ring.vars) | set(getattr(field, "params", ()))
    symbols = symbol_names(len(values), taken) if values else ()
    zring = Ring(QQ, symbols + ring.vars)
    nsym = len(symbols)
    rewritten = []
    for g in cleared:
        terms = {}
        for alpha, c in g.terms.items():
            if isinstance(field, Rationals) or c.is_rational():
                q = c if isinstance(field, Rationals) else c.to_rational()
                key = (0,) * nsym + alpha
            else:
                q, cn = _normalize(c)
                j = next(i for i, v in enumerate(values) if v == cn)
                key = tuple(1 if i == j else 0 for i in range(nsym)) + alpha
            terms[key] = terms.get(key, Fraction(0)) + q
        rewritten.append(Poly(zring, terms))
    return Coefficients(symbols, tuple(values), cleared, tuple(rewritten), zring)


def kernel_prime(symbols: Sequence[str], values: Sequence, field) -> list[Poly]:
    """Generators of ``ker(QQ[symbols] -> field, x_j -> c_j)`` by elimination."""
    symbols = tuple(symbols)
    if not symbols:
        return []
    params = tuple(field.params) if not isinstance(field, Rationals) else ()
    big = Ring(QQ, symbols + params)
    gens = [p.to_ring(big) for p in getattr(field, "prime", [])]
    dens = big.one()
    for s, c in zip(symbols, values):
        if not isinstance(c, FieldElement):
            gens.append(big.var(s) - big.const(Fraction(c)))
            continue
        gens.append(big.var(s) * c.den.to_ring(big) - c.num.to_ring(big))
        dens = dens * c.den.to_ring(big)
    J = Ideal(big, gens)
    if not dens.is_constant():
        J = saturate(J, dens)
    return list(eliminate(J, symbols).groebner())


@dataclass(frozen=True)
class DescentModel:
    """``T = Spec QQ[x]/p`` and ``Z = V(J, p)`` whose generic fibre is the input."""

    input_ideal: Ideal
    symbols: tuple
    values: tuple
    prime: tuple
    z_ring: Ring
    z_gens: tuple
    cleared: tuple

    @property
    def field(self):
        return self.input_ideal.ring.field

    @property
    def vars(self) -> tuple:
        return self.input_ideal.ring.vars

    @property
    def t_ring(self) -> Ring:
        return Ring(QQ, self.symbols)

    @property
    def dim_T(self) -> int:
        """Dimension of T (transcendence degree of the function field)."""
        if not self.symbols:
            return 0
        if not self.prime:
            return len(self.symbols)
        return _krull_dim(Ideal(self.t_ring, list(self.prime)))

    @classmethod
    def over_affine_space(cls, symbols: Sequence[str], vars: Sequence[str], z_gens: Sequence[str]) -> "DescentModel":
        """Model with ``T = A^p`` and explicitly given Z-equations over QQ."""
        symbols = tuple(symbols)
        z_ring = Ring(QQ, symbols + tuple(vars))
        gens = tuple(z_ring.parse(g) for g in z_gens)
        K = FractionField(symbols) if symbols else QQ
        ring = Ring(K, vars)
        fib = tuple(move_to_field(g, ring) for g in gens)
        values = tuple(K.param(s) for s in symbols)
        return cls(Ideal(ring, fib), symbols, values, (), z_ring, gens, fib)

    def fibre_field(self):
        if not self.symbols:
            return QQ
        return FractionField(self.symbols, list(self.prime), primality="kernel")

    def z_ideal(self) -> Ideal:
        return Ideal(self.z_ring, list(self.z_gens) + [p.to_ring(self.z_ring) for p in self.prime])

    def embedding_images(self) -> dict:
        """Canonical ``K(T) -> field``: ``x_j -> c_j``."""
        return dict(zip(self.symbols, self.values))

    def to_json(self):
        from .serialize import field_element_to_json

        return {
            "symbols": [{"name": s, "value": field_element_to_json(v)} for s, v in zip(self.symbols, self.values)],
            "prime": [str(p) for p in self.prime],
            "T-vars": list(self.symbols),
            "Z-vars": list(self.z_ring.vars),
            "Z-gens": [str(g) for g in self.z_ideal().gens],
        }


def _krull_dim(I: Ideal) -> int:
    """Dimension via the largest independent set of leading monomials."""
    import itertools

    n = I.ring.nvars
    leads = [g.leading()[0] for g in I.groebner()]
    if any(sum(a) == 0 for a in leads):
        return -1
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            if all(any(a[i] and i not in S for i in range(n)) for a in leads):
                return size
    return 0


def build_model(I: Ideal) -> DescentModel:
    coeffs = collect_coefficients(I)
    field = I.ring.field
    prime = kernel_prime(coeffs.symbols, coeffs.values, field)
    prime_t = tuple(p.to_ring(Ring(QQ, coeffs.symbols)) for p in prime)
    model = DescentModel(I, coeffs.symbols, coeffs.values, prime_t, coeffs.ring, coeffs.rewritten, coeffs.cleared)
    back = base_change(generic_fibre(model), field, model.embedding_images())
    for a, b in zip(back.gens, model.cleared):
        if not (a - b).is_zero():
            raise RoundTripFailure(f"round trip changed {b} into {a}")
    if len(back.gens) != len(model.cleared):
        raise RoundTripFailure("round trip changed the number of generators")
    return model


def move_to_field(f: Poly, target: Ring) -> Poly:
    """Reinterpret the variables of ``f`` that are parameters of ``target.field``."""
    big = target.field
    params = getattr(big, "params", ())
    src = f.ring
    pidx = [(src.index(p), big.params.index(p)) for p in params if p in src.vars]
    vidx = [src.index(v) for v in target.vars]
    out: dict = {}
    for a, c in f.terms.items():
        b = tuple(a[i] for i in vidx)
        if pidx:
            pa = [0] * len(params)
            for i, j in pidx:
                pa[j] = a[i]
            cc = _coeff_into(c, big) * big.element(big.base.monomial(pa))
        else:
            cc = _coeff_into(c, big)
        out[b] = out.get(b, big.zero) + cc
    return Poly(target, out)


def _coeff_into(c, big):
    if isinstance(c, FieldElement):
        return big.element(c.num.to_ring(big.base), c.den.to_ring(big.base))
    return big(c)


def generic_fibre(model: DescentModel) -> Ideal:
    """The Z-side generators over ``K(T) = Frac(QQ[x]/p)`` in the chart variables."""
    K = model.fibre_field()
    ring = Ring(K, model.vars)
    gens = [move_to_field(g, ring) for g in model.z_gens]
    return Ideal(ring, gens)


def coefficient_embedding(source, target, images: dict | None = None):
    """Coefficient map ``source -> target`` sending parameters to ``images``."""
    if isinstance(source, Rationals):
        return lambda c: target(c)
    if images is None:
        if isinstance(target, Rationals) or not set(source.params) <= set(target.params):
            raise InvalidEmbeddingError("no default embedding between these fields")
        images = {p: target.param(p) for p in source.params}
    imgs = []
    for p in source.params:
        if p not in images:
            raise InvalidEmbeddingError(f"no image for parameter {p}")
        v = images[p]
        if isinstance(v, str):
            v = target(v)
        imgs.append(target(v) if not isinstance(v, FieldElement) else v)

    def ev(p: Poly):
        total = target.zero
        for a, c in p.terms.items():
            t = target(c)
            for x, e in zip(imgs, a):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    for g in source.prime:
        if ev(g):
            raise InvalidEmbeddingError(f"images violate the relation {g} = 0")
    cache: dict = {}

    def emb(c):
        if not isinstance(c, FieldElement):
            return target(c)
        key = (str(c.num), str(c.den))
        r = cache.get(key)
        if r is None:
            den = ev(c.den)
            if not den:
                raise InvalidEmbeddingError(f"denominator {c.den} maps to zero")
            r = ev(c.num) / den
            cache[key] = r
        return r

    return emb


def base_change(I: Ideal, target, images: dict | None = None) -> Ideal:
    """Coefficientwise reinterpretation along a field embedding; generator count preserved."""
    emb = coefficient_embedding(I.ring.field, target, images)
    ring = Ring(target, I.ring.vars)
    return Ideal(ring, [g.map_coeffs(emb, ring) for g in I.gens])


@dataclass(frozen=True)
class GenericFibre:
    """Localization ``Z_eta -> Z`` for a descent model (supported pullback)."""

    model: DescentModel

    def pull_ideal(self, I: Ideal) -> Ideal:
        ring = Ring(self.model.fibre_field(), self.model.vars)
        gens = [move_to_field(g.to_ring(self.model.z_ring), ring) for g in I.gens]
        return Ideal(ring, [g for g in gens if g])

    def pull_marked(self, M):
        from .marked import Chart, Hypersurface, MarkedIdeal

        ring = Ring(self.model.fibre_field(), self.model.vars)
        I = self.pull_ideal(M.ideal)
        E = []
        for H in M.E:
            E.append(Hypersurface(move_to_field(H.gen.to_ring(self.model.z_ring), ring), H.origin, H.step))
        return MarkedIdeal(Chart(ring, label=M.chart.label), I, M.d, tuple(E), tuple(M.n_eqs), M.history)


# ----- order invariance ------------------------------------------------

def _section_ideal(model: DescentModel, point) -> Ideal:
    ring = model.z_ring
    gens = [p.to_ring(ring) for p in model.prime]
    for v, b in zip(model.vars, point):
        if isinstance(b, FieldElement):
            if not b.den.is_constant():
                raise UnsupportedError("fibre points need polynomial coordinates in the symbols")
            val = b.num.to_ring(ring).scale(1 / b.den.constant_coeff())
        else:
            val = ring.const(Fraction(b))
        gens.append(ring.var(v) - val)
    return Ideal(ring, gens)


def order_upstairs(f: Poly, W: Ideal, cap: int = 32) -> int:
    """Order of ``f`` at the generic point of ``V(W)`` by the derivative criterion.

    Derivations are the QQ-linear partials in every variable of Z (symbols
    included); the order is the largest ``j`` with ``D^(j-1)(f) ⊆ W``.
    """
    if f.is_zero():
        return INF
    level = [f]
    j = 0
    while all(W.contains(g) for g in level):
        j += 1
        if j > cap:
            return INF
        nxt = []
        for g in level:
            for v in f.ring.vars:
                d = g.diff(v)
                if d and not any((d - h).is_zero() for h in nxt):
                    nxt.append(d)
        level = nxt
        if not level:
            return INF
    return j


@dataclass
class OrderReport:
    point: list
    fibre_order: object
    upstairs_order: object
    per_generator: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.fibre_order == self.upstairs_order

    def to_json(self):
        from .serialize import order_to_json, scalar_to_json

        return {
            "point": [scalar_to_json(a) for a in self.point],
            "fibre": order_to_json(self.fibre_order),
            "upstairs": order_to_json(self.upstairs_order),
            "perGenerator": [[order_to_json(a), order_to_json(b)] for a, b in self.per_generator],
            "equal": self.equal,
        }


def order_invariance_report(model: DescentModel, point=None) -> OrderReport:
    """``ord_b`` on the generic fibre vs. the order at the matching point of Z."""
    from .marked import order_at

    fib = generic_fibre(model)
    K = fib.ring.field
    if point is None:
        point = [0] * len(model.vars)
    if len(point) != len(model.vars):
        raise ValidationError("point dimension does not match the fibre")
    pt = [K(a) if not isinstance(a, str) else K(a) for a in point]
    W = _section_ideal(model, pt)
    per = []
    for g_fib, g_z in zip(fib.gens, model.z_gens):
        per.append((order_at([g_fib], pt), order_upstairs(g_z, W)))
    down = min((a for a, _ in per), default=INF)
    up = min((b for _, b in per), default=INF)
    return OrderReport(list(point), down, up, per)


# ----- factorization record -------------------------------------------

@dataclass(frozen=True)
class FactorizationRecord:
    """Legs ``field extension``, ``generic-fibre embedding`` and optional finite-type map."""

    model: DescentModel
    target_field: object = None
    images: dict | None = None
    finite_type: dict | None = None

    def compose(self) -> Ideal:
        fib = generic_fibre(self.model)
        target = self.target_field or self.model.field
        images = self.images if self.images is not None else self.model.embedding_images()
        out = base_change(fib, target, images)
        if self.finite_type:
            ring = out.ring
            subs = {v: ring.parse(e) for v, e in self.finite_type.items()}
            out = Ideal(ring, [g.subs(subs) for g in out.gens])
        return out

    def verify(self) -> bool:
        out = self.compose()
        return len(out.gens) == len(self.model.cleared) and all(
            (a - b.to_ring(a.ring) if b.ring != a.ring else a - b).is_zero()
            for a, b in zip(out.gens, self.model.cleared)
        )


def jacobian_rank_at(model: DescentModel, params: Sequence) -> int:
    """Rank of the Jacobian of the fibre equations at a sampled parameter value (diagnostic)."""
    import sympy

    sub = dict(zip(model.symbols, params))
    rows = []
    for g in model.z_gens:
        h = g.subs(sub)
        rows.append([sympy.sympify(str(h.diff(v)).replace("^", "**")) for v in model.vars])
    return sympy.Matrix(rows).rank() if rows else 0
