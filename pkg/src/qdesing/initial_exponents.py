"""Initial exponents, diagrams, Hilbert-Samuel functions and the Λ operator."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import CapacityError, PointNotOnVariety, PropertyViolation, UnsupportedError, ValidationError
from .kernel import INF, QQ, FractionField, Ideal, Poly, Ring, deglex_key
from .kernel.linalg import truncated_length, truncation_basis
from .kernel.polys import divides

DIAGRAM_CAP = 40
EVAL_CAP = 200


def initial_exponent(f: Poly):
    """Deglex-smallest exponent in the support of ``f``; ``INF`` for zero."""
    if f.is_zero():
        return INF
    return min(f.terms, key=deglex_key)


def minimal_elements(points) -> list[tuple]:
    pts = sorted(set(map(tuple, points)), key=deglex_key)
    out = []
    for p in pts:
        if not any(divides(q, p) for q in out):
            out.append(p)
    return out


@dataclass(frozen=True)
class Diagram:
    """Monomial staircase ``vertices + N^n``.

    ``certified_bound`` is the truncation level the vertex set is complete
    for; ``stable`` records the stabilisation heuristic.
    """

    n: int
    vertices: tuple
    certified_bound: int | None = None
    stable: bool = True

    def __post_init__(self):
        verts = minimal_elements(self.vertices)
        for v in verts:
            if len(v) != self.n:
                raise ValidationError(f"vertex {v} not in N^{self.n}")
        object.__setattr__(self, "vertices", tuple(verts))

    def contains(self, alpha) -> bool:
        return any(divides(v, alpha) for v in self.vertices)

    def h(self, k: int) -> int:
        return h_of_diagram(self, k)

    def h_prefix(self, k: int) -> list[int]:
        return [h_of_diagram(self, j) for j in range(k + 1)]

    def times_line(self, p: int) -> "Diagram":
        """``N^p x self``, the new coordinates placed first."""
        return Diagram(self.n + p, tuple((0,) * p + v for v in self.vertices), self.certified_bound, self.stable)

    def max_vertex_degree(self) -> int:
        return max((sum(v) for v in self.vertices), default=0)

    def sort_key(self):
        return tuple(deglex_key(v) for v in self.vertices)

    def __lt__(self, other: "Diagram"):
        return self.sort_key() < other.sort_key()

    def to_json(self):
        return {"n": self.n, "vertices": [list(v) for v in self.vertices]}


def h_of_diagram(diagram: Diagram, k: int) -> int:
    """#{alpha not in the diagram : |alpha| <= k}."""
    if k < 0:
        return 0
    if k > EVAL_CAP:
        raise CapacityError(f"evaluation degree {k} exceeds cap {EVAL_CAP}")
    if diagram.n <= 4:
        return _h_enumerate(diagram, k)
    return _h_inclusion_exclusion(diagram, k)


def _h_enumerate(diagram: Diagram, k: int) -> int:
    from .kernel import monomials_up_to

    return sum(1 for a in monomials_up_to(diagram.n, k) if not diagram.contains(a))


def _h_inclusion_exclusion(diagram: Diagram, k: int) -> int:
    n = diagram.n
    total = comb(k + n, n)
    covered = 0
    verts = diagram.vertices
    for r in range(1, len(verts) + 1):
        for subset in itertools.combinations(verts, r):
            lcm = tuple(max(c) for c in zip(*subset))
            d = sum(lcm)
            if d <= k:
                covered += (-1) ** (r + 1) * comb(k - d + n, n)
    return total - covered


@dataclass(frozen=True)
class HSFunction:
    """An element of N^N, either ``Λ^shift(H_diagram)`` or an explicit prefix."""

    diagram: Diagram | None = None
    shift: int = 0
    prefix: tuple | None = None
    valid_length: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if (self.diagram is None) == (self.prefix is None):
            raise ValidationError("HSFunction needs exactly one of diagram or prefix")

    def values(self, k: int) -> list[int]:
        """``[H(0), ..., H(k)]``; Λ is applied by partial sums, never by padding."""
        if self.prefix is not None:
            if self.valid_length is not None and k + 1 > self.valid_length:
                raise ValidationError(f"prefix only valid up to index {self.valid_length - 1}")
            if k + 1 > len(self.prefix):
                raise ValidationError("prefix too short")
            return list(self.prefix[: k + 1])
        vals = [h_of_diagram(self.diagram, j) for j in range(k + 1)]
        for _ in range(self.shift):
            vals = list(itertools.accumulate(vals))
        return vals

    def __call__(self, k: int) -> int:
        return self.values(k)[k]

    def comparison_bound(self) -> int:
        if self.diagram is not None:
            return self.diagram.n + 2 * self.diagram.max_vertex_degree() + self.shift
        return (self.valid_length or len(self.prefix)) - 1

    def to_json(self, k: int | None = None):
        if self.diagram is not None:
            out = {"vertices": [list(v) for v in self.diagram.vertices], "n": self.diagram.n, "shift": self.shift}
        else:
            out = {"prefix": list(self.prefix), "valid_length": self.valid_length or len(self.prefix)}
        if k is not None:
            out["values"] = self.values(k)
        return out


def lambda_iterate(H: HSFunction, j: int) -> HSFunction:
    """``Λ^j(H)`` where ``Λ(F)(k) = F(0) + ... + F(k)``."""
    if j < 0:
        raise ValidationError("Λ exponent must be nonnegative")
    if H.diagram is not None:
        return HSFunction(diagram=H.diagram, shift=H.shift + j, meta=H.meta)
    vals = list(H.prefix)
    for _ in range(j):
        vals = list(itertools.accumulate(vals))
    return HSFunction(prefix=tuple(vals), valid_length=H.valid_length, meta=H.meta)


def lambda_sequence(values: Sequence[int], j: int = 1) -> list[int]:
    vals = list(values)
    for _ in range(j):
        vals = list(itertools.accumulate(vals))
    return vals


def compare_hs(H1: HSFunction, H2: HSFunction, bound: int | None = None) -> int:
    """Lexicographic comparison of value sequences truncated at a bound."""
    if bound is None:
        bound = max(H1.comparison_bound(), H2.comparison_bound())
    a, b = H1.values(bound), H2.values(bound)
    return (a > b) - (a < b)


def product_h_identity_check(base: Diagram, p: int, k_max: int) -> bool:
    """Check H of ``N^p x base`` against ``Λ^p(H_base)`` for k <= k_max."""
    product = base.times_line(p)
    lhs = [h_of_diagram(product, k) for k in range(k_max + 1)]
    rhs = lambda_sequence([h_of_diagram(base, k) for k in range(k_max + 1)], p)
    return lhs == rhs


def diagram_of_ideal(ideal: Ideal, k_max: int, cap: int = DIAGRAM_CAP) -> Diagram:
    """Vertices of the diagram of initial exponents of ``I*K[[x]]`` up to degree k_max."""
    if k_max > cap:
        raise CapacityError(f"k_max {k_max} exceeds diagram cap {cap}")
    pivots = truncation_basis(ideal, k_max)
    verts = minimal_elements(pivots)
    top = max((sum(v) for v in verts), default=0)
    return Diagram(ideal.ring.nvars, tuple(verts), certified_bound=k_max, stable=top <= k_max - 2)


def _translate_ideal(ideal: Ideal, point) -> Ideal:
    field = ideal.ring.field
    pt = [field(a) for a in point]
    if len(pt) != ideal.ring.nvars:
        raise ValidationError("point dimension does not match ring")
    for g in ideal.gens:
        if g.evaluate(pt):
            raise PointNotOnVariety(f"generator {g} does not vanish at {list(map(str, pt))}")
    if all(not a for a in pt):
        return ideal
    return Ideal(ideal.ring, [g.translate(pt) for g in ideal.gens], ideal.degree_cap)


def hilbert_samuel_at_point(ideal: Ideal, point, k_max: int, check_oracle: bool = True) -> HSFunction:
    """H^{(0)} of the local ring of V(I) at a rational point, diagram-backed.

    With ``check_oracle`` the rank-based length of R/(I + m^{k+1}) is
    recomputed for every k <= k_max and must agree exactly.
    """
    local = _translate_ideal(ideal, point)
    diag = diagram_of_ideal(local, k_max)
    H = HSFunction(diagram=diag, meta={"k_max": k_max})
    if check_oracle:
        got = H.values(k_max)
        for k in range(k_max + 1):
            expected = truncated_length(local, k)
            if got[k] != expected:
                raise PropertyViolation(
                    f"diagram count {got[k]} != rank length {expected} at k={k} for {local}"
                )
    return H


def _coordinate_prime_vars(ring: Ring, prime_gens: Sequence[Poly]):
    names = []
    for g in prime_gens:
        if len(g.terms) != 1:
            return None
        (alpha,) = g.terms
        if sum(alpha) != 1:
            return None
        names.append(ring.vars[alpha.index(1)])
    return names if len(set(names)) == len(names) else None


def hs_at_nonclosed_point(ideal: Ideal, prime, k_max: int) -> HSFunction:
    """H_{X,a} for the generic point ``a`` of V(prime).

    Supported primes: coordinate subspaces (the complementary coordinates move
    into the ground field) and principal primes ``(g)`` containing ``I`` (the
    local ring is a DVR quotient).  The result is Λ^l of H^{(0)}, ``l`` the
    dimension of V(prime).
    """
    ring = ideal.ring
    gens = list(prime.gens if isinstance(prime, Ideal) else prime)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise UnsupportedError("generic point of the whole ambient space is not a point of V(I) unless I=0")
    coord = _coordinate_prime_vars(ring, gens)
    if coord is not None:
        for g in ideal.gens:
            if g.subs({v: 0 for v in coord}):
                raise PointNotOnVariety(f"{g} does not vanish on V({', '.join(coord)})")
        others = [v for v in ring.vars if v not in coord]
        l = len(others)
        if l == 0:
            return hilbert_samuel_at_point(ideal, [0] * ring.nvars, k_max)
        field = ring.field
        if isinstance(field, FractionField):
            big = field.extend(others)
        else:
            big = FractionField(others)
        sub = Ring(big, coord)
        local_gens = [_move_vars_to_field(g, sub, others) for g in ideal.gens]
        H0 = hilbert_samuel_at_point(Ideal(sub, local_gens), [0] * len(coord), k_max)
        return HSFunction(diagram=H0.diagram, shift=l, meta={"residue_transcendence_degree": l})
    if len(gens) == 1:
        g = gens[0]
        if g.is_constant():
            raise ValidationError("unit ideal is not prime")
        if ring.field == QQ:
            _check_irreducible(g)
        mult = INF
        for f in ideal.gens:
            m = 0
            q = f
            while True:
                nxt = q.exact_div(g)
                if nxt is None:
                    break
                q, m = nxt, m + 1
            if m == 0:
                raise PointNotOnVariety(f"{f} is not in ({g})")
            mult = min(mult, m)
        l = ring.nvars - 1
        if mult == INF:
            raise UnsupportedError("zero ideal: local ring is not artinian")
        vals = tuple(min(k + 1, mult) for k in range(k_max + 1))
        base = HSFunction(prefix=vals, valid_length=k_max + 1, meta={"dvr_length": mult})
        return lambda_iterate(base, l)
    raise UnsupportedError("only coordinate-subspace and principal primes are supported")


def _move_vars_to_field(g: Poly, sub: Ring, moved: Sequence[str]) -> Poly:
    """Reinterpret the variables ``moved`` of ``g`` as parameters of ``sub.field``."""
    big = sub.field
    ring = g.ring
    moved_idx = [ring.index(v) for v in moved]
    keep_idx = [ring.index(v) for v in sub.vars]
    out: dict = {}
    for a, c in g.terms.items():
        b = tuple(a[i] for i in keep_idx)
        pa = [0] * len(big.params)
        for v, i in zip(moved, moved_idx):
            pa[big.params.index(v)] = a[i]
        coeff = _lift_coeff(c, big) * big.element(big.base.monomial(pa))
        out[b] = out.get(b, big.zero) + coeff
    return Poly(sub, out)


def _lift_coeff(c, big: FractionField):
    if isinstance(c, (int,)) or not hasattr(c, "field"):
        return big(c)
    return big.element(c.num.to_ring(big.base), c.den.to_ring(big.base))


def _check_irreducible(g: Poly):
    import sympy

    syms = sympy.symbols(g.ring.vars)
    expr = sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(g.ring.vars, syms)))
    _, factors = sympy.factor_list(expr, *syms)
    if len(factors) != 1 or factors[0][1] != 1:
        raise UnsupportedError(f"({g}) is not a prime ideal over QQ")


def min_embedding_dim(H: HSFunction) -> int:
    """``e = H(1) - 1``."""
    return H.values(1)[1] - 1
