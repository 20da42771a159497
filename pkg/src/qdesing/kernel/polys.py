"""Sparse multivariate polynomials with exact coefficients.

A :class:`Ring` fixes the coefficient field and the ordered variable names.
A :class:`Poly` is a map ``exponent tuple -> nonzero coefficient``.  Exponent
tuples are compared with the degree-lexicographic key ``(|a|, a_1, ..., a_n)``;
the order of variables is declaration order.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import DimensionError, ValidationError

Monomial = tuple

INF = math.inf


def deglex_key(alpha):
    return (sum(alpha),) + tuple(alpha)


def deglex_compare(alpha, beta) -> int:
    """Return -1, 0 or 1 as ``alpha`` is below, equal to or above ``beta``."""
    if len(alpha) != len(beta):
        raise DimensionError(f"exponent lengths differ: {len(alpha)} vs {len(beta)}")
    ka, kb = deglex_key(alpha), deglex_key(beta)
    return (ka > kb) - (ka < kb)


def divides(alpha, beta) -> bool:
    return all(a <= b for a, b in zip(alpha, beta))


def mono_mul(alpha, beta):
    return tuple(a + b for a, b in zip(alpha, beta))


def mono_lcm(alpha, beta):
    return tuple(max(a, b) for a, b in zip(alpha, beta))


def mono_div(alpha, beta):
    return tuple(a - b for a, b in zip(alpha, beta))


def monomials_up_to(n: int, k: int):
    """All exponent tuples of length ``n`` and total degree ``<= k``, deglex ascending."""
    out = []
    for deg in range(k + 1):
        out.extend(_compositions(n, deg))
    return out


def _compositions(n, deg):
    # exponents of exact total degree ``deg``, lex ascending in (a_1, ..., a_n)
    if n == 0:
        return [()] if deg == 0 else []
    if n == 1:
        return [(deg,)]
    res = []
    for first in range(deg + 1):
        for rest in _compositions(n - 1, deg - first):
            res.append((first,) + rest)
    return res


class Rationals:
    """The field of rational numbers; elements are :class:`fractions.Fraction`."""

    kind = "QQ"
    params: tuple = ()

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if hasattr(value, "field"):
            raise ValidationError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, str):
            return Fraction(value)
        raise ValidationError(f"cannot coerce {type(value).__name__} into QQ")

    zero = Fraction(0)
    one = Fraction(1)

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class Ring:
    """Polynomial ring over ``field`` in the variables ``names`` (in order)."""

    __slots__ = ("field", "vars", "_index")

    def __init__(self, field, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate variable names in {names}")
        clash = set(names) & set(getattr(field, "params", ()))
        if clash:
            raise ValidationError(f"variables {sorted(clash)} clash with field parameters")
        self.field = field
        self.vars = names
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError(f"unknown variable {name!r} in ring {self.vars}") from None

    def __eq__(self, other):
        return isinstance(other, Ring) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"Ring({self.field!r}, {list(self.vars)})"

    def zero(self) -> "Poly":
        return Poly(self, {}, _clean=True)

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c}, _clean=True)

    def var(self, name: str) -> "Poly":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one}, _clean=True)

    def gens(self):
        return [self.var(v) for v in self.vars]

    def monomial(self, alpha, coeff=1) -> "Poly":
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise DimensionError("monomial length does not match ring")
        return Poly(self, {alpha: self.field(coeff)})

    def with_vars(self, names) -> "Ring":
        return Ring(self.field, names)

    def with_field(self, field) -> "Ring":
        return Ring(field, self.vars)

    def parse(self, text: str) -> "Poly":
        from .parse import parse_polynomial

        return parse_polynomial(text, self.vars, self.field)


class Poly:
    """Immutable sparse polynomial.  Never mutate ``terms`` after construction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping | None = None, *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms if terms is not None else {}
            return
        field = ring.field
        clean = {}
        for alpha, c in (terms or {}).items():
            c = field(c)
            if c:
                alpha = tuple(alpha)
                if len(alpha) != ring.nvars:
                    raise DimensionError("monomial length does not match ring")
                clean[alpha] = c
        self.terms = clean

    # ----- basic queries -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        z = (0,) * self.ring.nvars
        return all(a == z for a in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coeff(self, alpha):
        return self.terms.get(tuple(alpha), self.ring.field.zero)

    def support(self):
        return sorted(self.terms, key=deglex_key)

    def sorted_terms(self, descending: bool = False):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=descending)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((a[i] for a in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a term; ``INF`` for zero."""
        return min((sum(a) for a in self.terms), default=INF)

    def leading(self, key: Callable = deglex_key):
        alpha = max(self.terms, key=key)
        return alpha, self.terms[alpha]

    def trailing(self, key: Callable = deglex_key):
        alpha = min(self.terms, key=key)
        return alpha, self.terms[alpha]

    def variables_used(self):
        used = set()
        for a in self.terms:
            used.update(i for i, e in enumerate(a) if e)
        return sorted(used)

    # ----- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValidationError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for a, c in other.terms.items():
            s = res.get(a)
            if s is None:
                res[a] = c
            else:
                s = s + c
                if s:
                    res[a] = s
                else:
                    del res[a]
        return Poly(self.ring, res, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {a: -c for a, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        res: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                s = res.get(m)
                res[m] = c * d if s is None else s + c * d
        return Poly(self.ring, {m: c for m, c in res.items() if c}, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {a: v * c for a, v in self.terms.items()}, _clean=True)

    def mul_term(self, alpha, c) -> "Poly":
        return Poly(
            self.ring,
            {tuple(x + y for x, y in zip(a, alpha)): v * c for a, v in self.terms.items()},
            _clean=True,
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                return False
        elif isinstance(other, (int, Fraction)) or hasattr(other, "field"):
            other = self.ring.const(other)
        else:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def monic(self, key: Callable = deglex_key) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading(key)
        return self.scale(self.ring.field.one / c) if c != self.ring.field.one else self

    # ----- calculus and substitution ------------------------------------
    def diff(self, var) -> "Poly":
        i = var if isinstance(var, int) else self.ring.index(var)
        res = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                res[tuple(b)] = c * a[i]
        return Poly(self.ring, res, _clean=True)

    def compose(self, images: Sequence["Poly"], target: Ring | None = None) -> "Poly":
        """Substitute ``images[i]`` for the i-th variable; result lives in ``target``."""
        if len(images) != self.ring.nvars:
            raise DimensionError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            p = cache.get(key)
            if p is None:
                p = images[i] ** e
                cache[key] = p
            return p

        out = target.zero()
        for a, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(a):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def subs(self, mapping: Mapping[str, "Poly | int | Fraction"]) -> "Poly":
        """Substitute some variables by polynomials of the same ring."""
        images = []
        for v in self.ring.vars:
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Poly) else self.ring.const(img))
            else:
                images.append(self.ring.var(v))
        return self.compose(images, self.ring)

    def translate(self, point: Sequence) -> "Poly":
        """``f(x + a)``: moves the point ``a`` to the origin."""
        images = [self.ring.var(v) + self.ring.const(a) for v, a in zip(self.ring.vars, point)]
        return self.compose(images, self.ring)

    def evaluate(self, point: Sequence):
        field = self.ring.field
        total = field.zero
        pt = [field(p) for p in point]
        for a, c in self.terms.items():
            t = c
            for x, e in zip(pt, a):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def to_ring(self, target: Ring, coeff_map: Callable | None = None) -> "Poly":
        """Re-embed by variable name; variables that occur must exist in ``target``."""
        pos = []
        for i, v in enumerate(self.ring.vars):
            if v in target._index:
                pos.append(target._index[v])
            else:
                pos.append(None)
        res = {}
        for a, c in self.terms.items():
            b = [0] * target.nvars
            for i, e in enumerate(a):
                if e:
                    j = pos[i]
                    if j is None:
                        raise ValidationError(
                            f"variable {self.ring.vars[i]!r} missing from target ring {target.vars}"
                        )
                    b[j] += e
            c2 = coeff_map(c) if coeff_map else target.field(c)
            if c2:
                b = tuple(b)
                s = res.get(b)
                res[b] = c2 if s is None else s + c2
        return Poly(target, {m: c for m, c in res.items() if c}, _clean=True)

    def map_coeffs(self, fn: Callable, target: Ring | None = None) -> "Poly":
        target = target or self.ring
        return Poly(target, {a: fn(c) for a, c in self.terms.items()})

    # ----- truncation and division ---------------------------------------
    def truncate(self, k: int) -> "Poly":
        return Poly(self.ring, {a: c for a, c in self.terms.items() if sum(a) <= k}, _clean=True)

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly(self.ring, {a: c for a, c in self.terms.items() if sum(a) == k}, _clean=True)

    def lowest_form(self) -> "Poly":
        return self.homogeneous_part(self.order()) if self.terms else self

    def divide_monomial(self, alpha):
        """Exact quotient by ``X^alpha`` or ``None`` if not divisible."""
        res = {}
        for a, c in self.terms.items():
            b = tuple(x - y for x, y in zip(a, alpha))
            if min(b, default=0) < 0:
                return None
            res[b] = c
        return Poly(self.ring, res, _clean=True)

    def var_valuation(self, i: int):
        """Largest ``e`` with ``x_i^e`` dividing self; ``INF`` for zero."""
        return min((a[i] for a in self.terms), default=INF)

    def exact_div(self, q: "Poly"):
        """Quotient ``self / q`` when ``q`` divides exactly, else ``None``."""
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lq, cq = q.leading()
        rem = self
        quot = self.ring.zero()
        while rem.terms:
            lr, cr = rem.leading()
            if not divides(lq, lr):
                return None
            t_alpha = mono_div(lr, lq)
            t_c = cr / cq
            quot = quot + Poly(self.ring, {t_alpha: t_c}, _clean=True)
            rem = rem - q.mul_term(t_alpha, t_c)
        return quot

    def coefficients_in(self, i: int) -> dict:
        """Expand in the i-th variable: ``{j: c_j}`` with ``self = sum c_j x_i^j``."""
        out: dict = {}
        for a, c in self.terms.items():
            j = a[i]
            b = a[:i] + (0,) + a[i + 1 :]
            out.setdefault(j, {})[b] = c
        return {j: Poly(self.ring, t, _clean=True) for j, t in out.items()}

    # ----- printing ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for alpha, c in self.sorted_terms(descending=True):
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.ring.vars, alpha) if e
            )
            cstr, neg = _coeff_str(c)
            if mono:
                if cstr == "1":
                    body = mono
                else:
                    body = f"{cstr}*{mono}"
            else:
                body = cstr
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Poly({self})"


def _coeff_str(c):
    """Render a coefficient; returns (text without sign, is_negative)."""
    if isinstance(c, Fraction):
        neg = c < 0
        c = -c if neg else c
        return (str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"), neg
    text = str(c)
    if text.startswith("-") and _is_atomic(text[1:]):
        return text[1:], True
    if not _is_atomic(text):
        text = f"({text})"
    return text, False


def _is_atomic(text: str) -> bool:
    return all(ch.isalnum() or ch in "_^" for ch in text)


def poly_from_terms(ring: Ring, items: Iterable):
    return Poly(ring, dict(items))
