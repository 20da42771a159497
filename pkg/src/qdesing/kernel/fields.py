"""Ground fields: QQ and fraction fields of affine domains over QQ.

``FractionField(params, prime)`` is Frac(QQ[params]/prime).  Elements are
pairs (numerator, denominator) of polynomials in the parameters, kept reduced
modulo a Groebner basis of ``prime``.  Two presentations get a canonical
form: one transcendental parameter (gcd-reduced fractions) and one algebraic
parameter (denominator inverted, so elements are polynomials of degree below
the minimal polynomial).  Everything else stays correct but unreduced.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ValidationError
from .groebner import groebner_basis, normal_form
from .polys import QQ, Poly, Rationals, Ring

__all__ = ["QQ", "Rationals", "FractionField", "FieldElement", "make_field"]


def _udivmod(a: Poly, b: Poly):
    """Division with remainder for univariate polynomials over QQ."""
    q = a.ring.zero()
    r = a
    (db,), cb = b.leading()
    while not r.is_zero():
        (dr,), cr = r.leading()
        if dr < db:
            break
        t = Poly(a.ring, {(dr - db,): cr / cb}, _clean=True)
        q = q + t
        r = r - t * b
    return q, r


def _ugcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, _udivmod(a, b)[1]
    return a.monic()


def _uinverse(a: Poly, m: Poly) -> Poly:
    """Inverse of ``a`` modulo the irreducible ``m`` (extended Euclid)."""
    r0, r1 = m, a
    s0, s1 = a.ring.zero(), a.ring.one()
    while not r1.is_zero():
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if not r0.is_constant():
        raise ZeroDivisionError("element not invertible modulo the presentation")
    return s0.scale(Fraction(1) / r0.constant_coeff())


class FractionField:
    """Frac(QQ[params]/prime) with an explicit reduced Groebner basis of ``prime``."""

    kind = "FractionFieldOfAffineDomain"

    def __init__(self, params, prime=(), *, primality: str | None = None):
        self.params = tuple(params)
        if not self.params:
            raise ValidationError("a fraction field needs at least one parameter")
        self.base = Ring(QQ, self.params)
        gens = [p if isinstance(p, Poly) else self.base.parse(p) for p in prime]
        gens = [g.to_ring(self.base) for g in gens]
        self.prime = groebner_basis(gens)
        if self.prime and self.prime[0].is_constant():
            raise ValidationError("presentation ideal is the unit ideal")
        self.primality = primality or self._check_primality()
        if len(self.params) == 1 and not self.prime:
            self._mode = "transcendental"
        elif len(self.params) == 1:
            self._mode = "algebraic"
        else:
            self._mode = "general"
        self.zero = FieldElement(self, self.base.zero(), self.base.one())
        self.one = FieldElement(self, self.base.one(), self.base.one())

    def _check_primality(self) -> str:
        if not self.prime:
            return "zero-ideal"
        if len(self.prime) == 1:
            import sympy

            g = self.prime[0]
            syms = sympy.symbols(self.params)
            expr = sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(self.params, syms)))
            _, factors = sympy.factor_list(expr, *syms)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValidationError(f"presentation {g} is not irreducible over QQ")
            return "principal-irreducible"
        raise ValidationError(
            "primality of a non-principal presentation must be asserted (primality='asserted')"
        )

    # ----- element construction --------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is self or value.field == self:
                return value if value.field is self else FieldElement(self, value.num, value.den)
            raise ValidationError(f"element of {value.field} is not in {self}")
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, self.base.const(value), self.base.one())
        if isinstance(value, Poly):
            return self.element(value)
        if isinstance(value, str):
            from .parse import parse_polynomial

            p = parse_polynomial(value, (), self)
            return p.constant_coeff() if not p.is_zero() else self.zero
        raise ValidationError(f"cannot coerce {type(value).__name__} into {self}")

    def element(self, num: Poly, den: Poly | None = None) -> "FieldElement":
        num = num.to_ring(self.base)
        den = self.base.one() if den is None else den.to_ring(self.base)
        return FieldElement(self, num, den)

    def param(self, name: str) -> "FieldElement":
        return self.element(self.base.var(name))

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction)) or (
            isinstance(value, FieldElement) and value.field == self
        )

    def reduce(self, p: Poly) -> Poly:
        return normal_form(p, self.prime) if self.prime else p

    def __eq__(self, other):
        return (
            isinstance(other, FractionField)
            and other.params == self.params
            and [str(g) for g in other.prime] == [str(g) for g in self.prime]
        )

    def __hash__(self):
        return hash((self.params, tuple(str(g) for g in self.prime)))

    def __repr__(self):
        if not self.prime:
            return f"QQ({', '.join(self.params)})"
        return f"Frac(QQ[{', '.join(self.params)}]/({', '.join(str(g) for g in self.prime)}))"

    def extend(self, new_params) -> "FractionField":
        """Adjoin further transcendental parameters."""
        return FractionField(self.params + tuple(new_params), self.prime, primality=self.primality)


class FieldElement:
    """num/den in Frac(QQ[params]/prime); arithmetic is exact."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FractionField, num: Poly, den: Poly):
        self.field = field
        num = field.reduce(num)
        den = field.reduce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in fraction field")
        mode = field._mode
        if num.is_zero():
            den = field.base.one()
        elif den.is_constant():
            num = num.scale(Fraction(1) / den.constant_coeff())
            den = field.base.one()
        elif mode == "algebraic":
            num = field.reduce(num * _uinverse(den, field.prime[0]))
            den = field.base.one()
        elif mode == "transcendental":
            g = _ugcd(num, den)
            if not g.is_constant():
                num = _udivmod(num, g)[0]
                den = _udivmod(den, g)[0]
            lc = den.leading()[1]
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        else:
            q = num.exact_div(den) if not field.prime else None
            if q is not None:
                num, den = q, field.base.one()
            else:
                lc = den.leading()[1]
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise ValidationError(f"mixed fields {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElement(self.field, self.num + o.num, self.den)
        return FieldElement(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.field.one
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FieldElement, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return False
        return self.field.reduce(self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        if self.field._mode != "general":
            return hash((str(self.num), str(self.den)))
        return hash(self.field.params)

    def is_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        return self.num.constant_coeff() / self.den.constant_coeff()

    def __str__(self):
        if self.den.is_constant() and self.den.constant_coeff() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"FieldElement({self})"


def make_field(spec):
    """Build a ground field from ``"QQ"`` or ``{"params": [...], "prime": [...]}``."""
    if spec is None or spec == "QQ" or isinstance(spec, Rationals):
        return QQ
    if isinstance(spec, FractionField):
        return spec
    if isinstance(spec, dict):
        params = spec.get("params") or []
        if not params:
            return QQ
        return FractionField(params, spec.get("prime", []), primality=spec.get("primality"))
    raise ValidationError(f"unrecognised field specification {spec!r}")


def field_to_json(field):
    if isinstance(field, Rationals):
        return "QQ"
    out = {"params": list(field.params), "prime": [str(g) for g in field.prime]}
    if field.primality not in ("zero-ideal", "principal-irreducible"):
        out["primality"] = field.primality
    return out
