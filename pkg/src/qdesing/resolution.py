"""Desk-scale resolution driver for maximal-order marked ideals and the
functoriality harness built on top of it.

The driver is memoryless per chart: in every chart the center is recomputed
from the marked ideal alone, charts are visited depth first in chart order.
Centers come from maximal contact and the normal-direction coefficient ideal;
when that coefficient ideal is not of maximal order it is split into its
monomial part along E and a residual factor (see ``_center_general``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .derivatives import WeightedMarkedSum, coefficient_ideal_normal_variant, derivative_tower, maximal_contact
from .errors import CapacityError, NotMaximalOrderError, PropertyViolation, UnsupportedError, ValidationError
from .initial_exponents import HSFunction, compare_hs, hilbert_samuel_at_point, lambda_iterate
from .kernel import FieldElement, FractionField, Ideal, Poly, Ring, eliminate, saturate
from .kernel.polys import Rationals
from .marked import Chart, MarkedIdeal, ProductProjection, cosupport, is_maximal_order, order_along, pullback_smooth
from .transforms import BlowupCenter, blowup_charts, controlled_transform, is_admissible

STEP_CAP = 32
ORDER_RULE = "dim-1 cosupport points in increasing (height, value) order of the root; charts depth first"


# ----- coordinate changes and roots ------------------------------------

def change_coordinates(M: MarkedIdeal, substitution: dict) -> MarkedIdeal:
    """Apply ``var -> image`` to I, E and the chart map."""
    ring = M.ring
    images = [substitution.get(v, ring.var(v)) for v in ring.vars]
    gens = [g.compose(images, ring) for g in M.gens]
    E = tuple(type(H)(H.gen.compose(images, ring), H.origin, H.step) for H in M.E)
    chart = M.chart.compose(ring, images, M.chart.label)
    hist = M.history + (("coordinates", {v: str(p) for v, p in substitution.items()}),)
    return MarkedIdeal(chart, Ideal(ring, gens, M.ideal.degree_cap), M.d, E, M.n_eqs, hist)


def _root_key(a):
    if isinstance(a, FieldElement):
        if a.is_rational():
            a = a.to_rational()
        else:
            return (1, 0, str(a))
    a = Fraction(a)
    return (0, max(abs(a.numerator), a.denominator) if a else 0, a)


def univariate_roots(g: Poly) -> list:
    """Roots of a univariate polynomial lying in its ground field."""
    ring = g.ring
    field = ring.field
    v = ring.vars[0]
    if g.is_zero():
        raise UnsupportedError("zero polynomial has every point as a root")
    roots = []
    m = g.var_valuation(0)
    if m:
        roots.append(field.zero)
        g = g.divide_monomial((m,))
    if g.degree() == 0:
        return roots
    if g.degree() == 1:
        a = g.coeff((1,))
        b = g.coeff((0,))
        return roots + [-b / a]
    import sympy

    params = list(getattr(field, "params", ()))
    if isinstance(field, FractionField) and field.prime:
        raise UnsupportedError("root finding over algebraic extensions beyond degree one")
    syms = sympy.symbols([v] + params)
    lookup = dict(zip([v] + params, syms))
    cleared = g
    if isinstance(field, FractionField):
        from .descent import clear_denominators

        cleared = clear_denominators(g)
        text = " + ".join(f"({c.num})*{v}^{a[0]}" for a, c in cleared.terms.items())
    else:
        text = str(cleared)
    expr = sympy.sympify(text.replace("^", "**"), locals=lookup)
    _, factors = sympy.factor_list(expr, *syms)
    for fac, _ in factors:
        p = sympy.Poly(fac, syms[0])
        if p.degree() != 1:
            continue
        a, b = p.all_coeffs()
        if isinstance(field, FractionField):
            num = field.base.parse(str(sympy.expand(-b)).replace("**", "^"))
            den = field.base.parse(str(sympy.expand(a)).replace("**", "^"))
            roots.append(field.element(num, den))
        else:
            roots.append(Fraction(str(sympy.Rational(-b / a))))
    return roots


def _cosupport_points_dim1(M: MarkedIdeal) -> list:
    cs = cosupport(M)
    gb = cs.groebner()
    if not gb:
        raise UnsupportedError("cosupport is the whole line")
    if len(gb) != 1:
        raise ValidationError("univariate Groebner basis should be principal")
    roots = univariate_roots(gb[0])
    if not roots:
        raise UnsupportedError(f"cosupport {gb[0]} has no points over the ground field")
    return sorted(roots, key=_root_key)


# ----- center selection ------------------------------------------------

@dataclass
class CenterChoice:
    marked: MarkedIdeal  # M after the recorded coordinate changes
    center: BlowupCenter
    method: str
    substitutions: list = field(default_factory=list)


def _lift_substitution(sub: dict, ring: Ring) -> dict:
    return {v: p.to_ring(ring) for v, p in sub.items()}


def _center_maxorder(M: MarkedIdeal, trail: list) -> tuple[dict, list]:
    """Center (as ``{var: value}``) of a maximal-order marked ideal with nonempty cosupport.

    Returns the center together with the triangular substitutions applied to
    the chart variables of ``M`` (in application order).
    """
    free = [v for v in M.ring.vars if v not in M.n_eqs]
    if len(free) == 1:
        pts = _cosupport_points_dim1(M)
        trail.append(f"dim1 points {[str(p) for p in pts]}")
        return {free[0]: pts[0]}, []
    contact = maximal_contact(M, protect=M.e_vars())
    subs = []
    if not contact.is_identity:
        subs.append(contact.substitution)
        M = change_coordinates(M, contact.substitution)
    z = contact.var
    trail.append(f"contact {z}")
    J = coefficient_ideal_normal_variant(M, z)
    if J.ideal.is_zero():
        trail.append("zero coefficient ideal")
        return {z: 0}, subs
    center, inner = _center_general(J, trail)
    for s in inner:
        lifted = _lift_substitution(s, M.ring)
        subs.append(lifted)
        M = change_coordinates(M, lifted)
    center = dict(center)
    center[z] = 0
    return center, subs


def _residual_order(R: Ideal, cos: Ideal, cap: int = 64) -> int:
    """``max ord R`` over ``V(cos)``: the largest j with ``D^(j-1)(R) + cos`` proper."""
    j = 0
    D = R
    while not (D + cos).is_unit():
        j += 1
        if j > cap:
            raise CapacityError("residual order exceeds cap")
        D = derivative_tower(D, (), 1)
    return j


def _center_general(J: MarkedIdeal, trail: list) -> tuple[dict, list]:
    """Center for a marked ideal that need not be of maximal order.

    ``I = x^mu * R`` with ``mu`` the orders along the coordinate members of
    E.  Monomial case (R a unit): the first minimal set S of E-variables with
    ``sum mu_S >= d``.  Otherwise ``rho = max ord R`` on the cosupport and the
    maximal-order ideal ``(R, rho)`` (if rho >= d) or the weighted sum
    ``(R, rho) + (x^mu, d - rho)`` is handed back to maximal contact.
    """
    cos = cosupport(J)
    if cos.is_unit():
        raise ValidationError(f"coefficient ideal {J} has empty cosupport")
    free = [v for v in J.ring.vars if v not in J.n_eqs]
    if len(free) == 1:
        pts = _cosupport_points_dim1(J)
        trail.append(f"dim1 points {[str(p) for p in pts]}")
        return {free[0]: pts[0]}, []
    evars = [v for v in J.e_vars() if v in free]
    mu = {v: order_along(J.ideal, v) for v in evars}
    mu = {v: e for v, e in mu.items() if e}
    ring = J.ring
    R = J.ideal
    if mu:
        alpha = tuple(mu.get(v, 0) for v in ring.vars)
        R = Ideal(ring, [g.divide_monomial(alpha) for g in J.gens], J.ideal.degree_cap)
    if not mu:
        rho = _residual_order(R, cos)
        trail.append(f"no monomial part, rho={rho}")
        return _center_maxorder(J.replace(ideal=R, d=rho), trail)
    if R.is_unit():
        for size in range(1, len(mu) + 1):
            for S in itertools.combinations([v for v in evars if v in mu], size):
                if sum(mu[v] for v in S) >= J.d:
                    trail.append(f"monomial case {list(S)}")
                    return {v: 0 for v in S}, []
        raise ValidationError("monomial marked ideal with empty cosupport")
    rho = _residual_order(R, cos)
    if rho >= J.d:
        trail.append(f"residual rho={rho} >= {J.d}")
        return _center_maxorder(J.replace(ideal=R, d=rho), trail)
    mono = Ideal(ring, [ring.monomial(tuple(mu.get(v, 0) for v in ring.vars))])
    W = WeightedMarkedSum(ring, ((R, rho), (mono, J.d - rho)))
    trail.append(f"weighted sum rho={rho}, mu={mu}")
    return _center_maxorder(J.replace(ideal=W.ideal(), d=W.mark), trail)


def choose_center(M: MarkedIdeal) -> CenterChoice:
    trail: list = []
    center, subs = _center_maxorder(M, trail)
    for s in subs:
        M = change_coordinates(M, s)
    ordered = [v for v in M.ring.vars if v in center]
    C = BlowupCenter(tuple(ordered), tuple(center[v] for v in ordered))
    return CenterChoice(M, C, "; ".join(trail), subs)


# ----- driver ----------------------------------------------------------

@dataclass
class Step:
    index: int
    chart: str
    marked: MarkedIdeal
    center: BlowupCenter
    method: str
    results: list
    substitutions: list = field(default_factory=list)

    def image(self) -> Ideal:
        return center_image(self.marked.chart, self.center)

    def to_json(self):
        return {
            "index": self.index,
            "chart": self.marked.chart.label or "root",
            "center": self.center.label(),
            "centerVars": self.center.to_json(),
            "method": self.method,
            "coordinateChanges": [{v: str(p) for v, p in s.items()} for s in self.substitutions],
            "marked": self.marked.to_json(),
            "charts": [{"chart": r.chart.label, "cosupportEmpty": cosupport(r).is_unit(), "marked": r.to_json()}
                       for r in self.results],
        }


@dataclass
class ResolutionSequence:
    steps: list
    leaves: list
    terminal: bool
    order_rule: str = ORDER_RULE

    @property
    def count(self) -> int:
        return len(self.steps)

    def to_json(self):
        return {
            "steps": [s.to_json() for s in self.steps],
            "blowups": self.count,
            "terminal": self.terminal,
            "leaves": [{"chart": m.chart.label, "marked": m.to_json()} for m in self.leaves],
            "orderRule": self.order_rule,
        }


def resolve_maximal_order(M: MarkedIdeal, step_cap: int = STEP_CAP) -> ResolutionSequence:
    """Admissible blow-ups until every chart has empty cosupport."""
    if not is_maximal_order(M):
        raise NotMaximalOrderError(f"{M} is not of maximal order")
    steps: list[Step] = []
    leaves: list[MarkedIdeal] = []

    def visit(N: MarkedIdeal):
        if cosupport(N).is_unit():
            leaves.append(N)
            return
        if len(steps) >= step_cap:
            raise CapacityError(f"resolution did not finish within {step_cap} blow-ups")
        choice = choose_center(N)
        if not is_admissible(choice.marked, choice.center):
            raise PropertyViolation(f"driver chose non-admissible center {choice.center.label()}")
        results = controlled_transform(choice.marked, choice.center, allow_divisorial=True)
        steps.append(Step(len(steps), N.chart.label, choice.marked, choice.center, choice.method, results,
                          choice.substitutions))
        for R in results:
            visit(R)

    visit(M)
    return ResolutionSequence(steps, leaves, all(cosupport(m).is_unit() for m in leaves))


# ----- images of centers ----------------------------------------------

def center_image(chart: Chart, center: BlowupCenter) -> Ideal:
    """Ideal of the closure of the image of a chart center in the original coordinates."""
    ring = chart.ring
    orig = chart.origin_ring()
    images = chart.original_images()
    if chart.to_original is None:
        return Ideal(ring, center.ideal(ring).gens)
    tag = {v: f"o_{v}" for v in orig.vars}
    while set(tag.values()) & set(ring.vars):
        tag = {v: "o" + t for v, t in tag.items()}
    big = Ring(ring.field, ring.vars + tuple(tag[v] for v in orig.vars))
    gens = [g.to_ring(big) for g in center.ideal(ring).gens]
    for v, p in zip(orig.vars, images):
        gens.append(big.var(tag[v]) - p.to_ring(big))
    elim = eliminate(Ideal(big, gens), [tag[v] for v in orig.vars])
    back = Ring(ring.field, orig.vars)
    rename = Ring(ring.field, tuple(tag[v] for v in orig.vars))
    out = []
    for g in elim.groebner():
        out.append(Poly(back, dict(g.to_ring(rename).terms), _clean=True))
    return Ideal(back, out)


# ----- product with a line ---------------------------------------------

@dataclass
class CheckReport:
    claim: str
    instances: list
    ok: bool

    def to_json(self):
        return {"claim": self.claim, "instances": self.instances, "verdict": "pass" if self.ok else "fail"}


def _point_on_center(ring: Ring, center: BlowupCenter) -> list:
    vals = dict(zip(center.vars, center.values))
    return [vals.get(v, 0) for v in ring.vars]


def check_pullback_product_line(M: MarkedIdeal, k: int = 1, step_cap: int = STEP_CAP, kmax: int = 6) -> CheckReport:
    """Resolve ``M`` and its pullback to ``Z x A^k``; centers must be ``C x A^k``.

    At each step the Hilbert-Samuel identity ``Λ^k H_{X,a} = H_{X x A^k,(a,0)}``
    is checked at a rational point ``a`` of the center.
    """
    from .transforms import fresh_name

    names = []
    ring = M.ring
    for _ in range(k):
        nm = fresh_name(Ring(ring.field, ring.vars + tuple(names)), "w")
        names.append(nm)
    P = pullback_smooth(M, ProductProjection(tuple(names)))
    base = resolve_maximal_order(M, step_cap)
    lifted = resolve_maximal_order(P, step_cap)
    instances = []
    ok = base.count == lifted.count
    for s, t in zip(base.steps, lifted.steps):
        img = s.image()
        big = t.image()
        expected = Ideal(big.ring, [g.to_ring(big.ring) for g in img.gens])
        same = expected == big
        a = _point_on_center(s.marked.ring, s.center)
        H = hilbert_samuel_at_point(s.marked.ideal, a, kmax)
        Hp = hilbert_samuel_at_point(t.marked.ideal, a + [0] * k, kmax)
        hs_ok = lambda_iterate(H, k).values(kmax) == Hp.values(kmax)
        ok = ok and same and hs_ok
        instances.append({
            "step": s.index,
            "center": s.center.label(),
            "pulledCenter": t.center.label(),
            "image": [str(g) for g in img.gens],
            "pulledImage": [str(g) for g in big.gens],
            "centersCorrespond": same,
            "hsIdentity": hs_ok,
            "H": H.values(kmax),
            "Hpulled": Hp.values(kmax),
        })
    if base.count != lifted.count:
        instances.append({"stepCounts": [base.count, lifted.count]})
    return CheckReport(f"product with A^{k}: centers pull back, Λ^{k} H identity", instances, ok)


# ----- generic fibre ---------------------------------------------------

def _dominates(image: Ideal, model) -> bool:
    symbols = list(model.symbols)
    if not symbols:
        return not image.is_unit()
    base = eliminate(image, symbols)
    if base.is_unit():
        return False
    T = Ideal(base.ring, [p.to_ring(base.ring) for p in model.prime])
    return all(T.contains(g) for g in base.groebner())


def _dedupe_ideals(ideals: list) -> list:
    out: list = []
    for I in ideals:
        if not any(I == J for J in out):
            out.append(I)
    return out


def check_pullback_generic_fibre(M: MarkedIdeal, model, step_cap: int = STEP_CAP) -> CheckReport:
    """Z-side centers that dominate T, localized, must equal the fibre centers in order.

    Non-dominating centers pull back to the empty set and are skipped.
    """
    from .descent import GenericFibre

    phi = GenericFibre(model)
    F = pullback_smooth(M, phi)
    z_run = resolve_maximal_order(M, step_cap)
    f_run = resolve_maximal_order(F, step_cap)
    z_rows = []
    localized = []
    for s in z_run.steps:
        img = s.image()
        dom = _dominates(img, model)
        row = {"step": s.index, "chart": s.marked.chart.label, "center": s.center.label(),
               "image": [str(g) for g in img.gens], "dominates": dom}
        if dom:
            loc = phi.pull_ideal(img)
            localized.append(loc)
            row["localized"] = [str(g) for g in loc.gens]
        z_rows.append(row)
    fibre_imgs = [s.image() for s in f_run.steps]
    a = _dedupe_ideals(localized)
    b = _dedupe_ideals(fibre_imgs)
    ok = len(a) == len(b) and all(x == y for x, y in zip(a, b))
    instances = [{
        "zSteps": z_rows,
        "fibreSteps": [{"step": s.index, "chart": s.marked.chart.label, "center": s.center.label(),
                        "image": [str(g) for g in img.gens]} for s, img in zip(f_run.steps, fibre_imgs)],
        "localizedCenters": [[str(g) for g in I.gens] for I in a],
        "fibreCenters": [[str(g) for g in I.gens] for I in b],
        "skipped": sum(1 for r in z_rows if not r["dominates"]),
        "match": ok,
    }]
    return CheckReport("generic fibre: localized centers equal fibre centers", instances, ok)


# ----- Bennett upper semicontinuity --------------------------------------------

def _grid(n: int, span: int = 2):
    return itertools.product(range(-span, span + 1), repeat=n)


def _hs(ideal: Ideal, point, kmax: int) -> HSFunction:
    return hilbert_samuel_at_point(ideal, point, kmax, check_oracle=True)


def bennett_checks(X: Ideal, center: BlowupCenter, kmax: int = 8, span: int = 2, bound: int | None = None) -> CheckReport:
    """No lexicographic increase of H after blowing up a center on which H is constant.

    H is compared at rational points of the center (constancy precondition)
    and at rational points of ``exc ∩ X'`` in every chart.
    """
    ring = X.ring
    if not isinstance(ring.field, Rationals):
        raise UnsupportedError("probe grids need rational points")
    if not center.contains_ideal(X):
        raise ValidationError("the center is not contained in X")
    free = [v for v in ring.vars if v not in center.vars]
    center_pts = []
    for vals in itertools.product(range(-1, 2), repeat=len(free)):
        p = dict(zip(center.vars, center.values))
        p.update(zip(free, vals))
        center_pts.append([p[v] for v in ring.vars])
    Hs = [_hs(X, p, kmax) for p in center_pts]
    H0 = Hs[0]
    for p, H in zip(center_pts, Hs):
        if compare_hs(H, H0, bound) != 0:
            raise ValidationError(
                f"H is not constant on the center: {H.values(4)} at {p} vs {H0.values(4)}"
            )
    instances = []
    ok = True
    for bc in blowup_charts(ring, center, allow_divisorial=True):
        pulled = Ideal(ring, [g.compose(list(bc.images), ring) for g in X.gens])
        strict = saturate(pulled, bc.exceptional)
        if strict.is_unit():
            continue
        others = [v for v in ring.vars if v != bc.chart_var]
        for vals in _grid(len(others), span):
            p = dict(zip(others, vals))
            p[bc.chart_var] = 0
            pt = [p[v] for v in ring.vars]
            if any(g.evaluate(pt) for g in strict.gens):
                continue
            Hp = _hs(strict, pt, kmax)
            B = bound if bound is not None else max(H0.comparison_bound(), Hp.comparison_bound())
            cmp = compare_hs(Hp, H0, B)
            ok = ok and cmp <= 0
            instances.append({
                "chart": bc.chart_var,
                "point": [str(a) for a in pt],
                "strict": [str(g) for g in strict.gens],
                "H": Hp.values(B),
                "Hcenter": H0.values(B),
                "bound": B,
                "verdict": "no increase" if cmp <= 0 else "increase",
            })
    return CheckReport("Bennett: H does not increase over a constant-H center", instances, ok and bool(instances))


# ----- first term of inv# ------------------------------------------------

@dataclass(frozen=True)
class InvSharpFirstTerm:
    count: int
    shift: int
    H: HSFunction
    d: int
    q: int

    def key(self, bound: int):
        return (self.count, tuple(self.H.values(bound)))

    def to_json(self, k: int = 6):
        return {"count": self.count, "shift": self.shift, "d": self.d, "q": self.q, "H": self.H.values(k)}


def minimal_primes_monomial(I: Ideal) -> list[tuple]:
    """Minimal primes of a monomial ideal as sorted variable tuples (minimal vertex covers)."""
    ring = I.ring
    supports = []
    for g in I.gens:
        if len(g.terms) != 1:
            raise ValidationError("not a monomial ideal")
        (a,) = g.terms
        supports.append({ring.vars[i] for i, e in enumerate(a) if e})
    covers = []
    for r in range(0, ring.nvars + 1):
        for S in itertools.combinations(ring.vars, r):
            s = set(S)
            if all(sup & s for sup in supports) and not any(set(c) <= s for c in covers):
                covers.append(S)
    return covers


def components_of(I: Ideal) -> list[Ideal]:
    """Irreducible components for monomial or linear generators."""
    ring = I.ring
    if all(len(g.terms) == 1 for g in I.gens):
        return [Ideal(ring, [ring.var(v) for v in S]) for S in minimal_primes_monomial(I)]
    if all(g.degree() <= 1 for g in I.gens):
        return [I]
    raise ValidationError("undecomposable input: supply the components explicitly")


def _dimension(P: Ideal) -> int:
    from .descent import _krull_dim

    return _krull_dim(P)


def inv_sharp_first_term(X: Ideal, point, components: Sequence[Ideal] | None = None, kmax: int = 8) -> InvSharpFirstTerm:
    """``(#(x), Λ^(d-q) H_{X,x})``: #(x) distinct component dimensions through x."""
    comps = list(components) if components is not None else components_of(X)
    if not comps:
        raise ValidationError("X has no components")
    dims = [_dimension(P) for P in comps]
    d = max(dims)
    pt = [X.ring.field(a) for a in point]
    through = [dim for P, dim in zip(comps, dims) if all(not g.evaluate(pt) for g in P.gens)]
    if not through:
        raise ValidationError("point is not on X")
    q = min(through)
    H = hilbert_samuel_at_point(X, point, kmax)
    return InvSharpFirstTerm(len(set(through)), d - q, lambda_iterate(H, d - q), d, q)
