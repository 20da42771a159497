"""Blow-ups with coordinate centers, controlled transforms and test sequences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapacityError, DivisibilityFailure, NotAdmissibleError, UnsupportedError, ValidationError
from .kernel import Ideal, Poly, Ring
from .marked import Chart, Hypersurface, MarkedIdeal, cosupport

DEPTH_CAP = 2


@dataclass(frozen=True)
class BlowupCenter:
    """``C = V(x_i - a_i : i in vars)``, a translated coordinate subspace."""

    vars: tuple
    values: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        vals = tuple(self.values) or (0,) * len(self.vars)
        if len(vals) != len(self.vars):
            raise ValidationError("one value per center variable")
        object.__setattr__(self, "values", vals)

    @classmethod
    def at(cls, mapping: dict) -> "BlowupCenter":
        return cls(tuple(mapping), tuple(mapping.values()))

    @property
    def r(self) -> int:
        return len(self.vars)

    def ideal(self, ring: Ring) -> Ideal:
        return Ideal(ring, [ring.var(v) - ring.const(a) for v, a in zip(self.vars, self.values)])

    def contains_ideal(self, I: Ideal) -> bool:
        """``I ⊆ I(C)``, i.e. every generator vanishes identically on C."""
        sub = dict(zip(self.vars, self.values))
        return all(g.subs(sub).is_zero() for g in I.gens)

    def label(self) -> str:
        parts = []
        for v, a in zip(self.vars, self.values):
            parts.append(v if not a else f"{v}-{a}" if not str(a).startswith("-") else f"{v}+{str(a)[1:]}")
        return f"V({', '.join(parts)})"

    def to_json(self):
        from .serialize import scalar_to_json

        return {"vars": list(self.vars), "values": [scalar_to_json(a) for a in self.values]}


@dataclass(frozen=True)
class BlowupChart:
    """Chart ``j`` of a blow-up: substitution images and the exceptional generator."""

    index: int
    chart_var: str
    ring: Ring
    images: tuple
    exceptional: Poly

    @property
    def substitution(self) -> dict:
        return dict(zip(self.ring.vars, self.images))


def blowup_charts(chart, C: BlowupCenter, allow_divisorial: bool = False) -> list[BlowupChart]:
    """The r standard charts of the blow-up of ``C``.

    In chart j: ``x_j -> a_j + x_j`` and ``x_k -> a_k + x_j*x_k`` for the other
    center variables; the exceptional divisor is ``V(x_j)``.
    """
    ring = chart.ring if isinstance(chart, Chart) else chart
    for v in C.vars:
        ring.index(v)
    if len(set(C.vars)) != C.r:
        raise ValidationError("repeated center variable")
    if C.r < 2 and not (allow_divisorial and C.r == 1):
        raise ValidationError(f"degenerate center {C.label()}: a blow-up needs r >= 2")
    shift = dict(zip(C.vars, C.values))
    out = []
    for j, xj in enumerate(C.vars):
        X = ring.var(xj)
        images = []
        for v in ring.vars:
            y = ring.var(v)
            if v == xj:
                images.append(y + ring.const(shift[v]))
            elif v in shift:
                images.append(X * y + ring.const(shift[v]))
            else:
                images.append(y)
        out.append(BlowupChart(j, xj, ring, tuple(images), X))
    return out


def is_admissible(M: MarkedIdeal, C: BlowupCenter) -> bool:
    if any(v not in M.ring.vars for v in C.vars):
        return False
    vals = dict(zip(C.vars, C.values))
    if any(v not in vals or vals[v] for v in M.n_eqs):
        return False
    return C.contains_ideal(cosupport(M))


def _strict(g: Poly, X: Poly, i: int) -> Poly:
    if g.is_zero():
        return g
    e = g.var_valuation(i)
    if e:
        g = g.divide_monomial(tuple(e if k == i else 0 for k in range(g.ring.nvars)))
    return g


def _exc_count(M: MarkedIdeal) -> int:
    return sum(1 for H in M.E if H.origin == "exceptional")


def _transform_E(M: MarkedIdeal, bc: BlowupChart) -> list[Hypersurface]:
    i = bc.ring.index(bc.chart_var)
    E = []
    for H in M.E:
        g = H.gen.compose(list(bc.images), bc.ring)
        g = _strict(g, bc.exceptional, i)
        if g.is_constant():
            g = bc.ring.one()
        E.append(Hypersurface(g, H.origin, H.step))
    return E


def controlled_transform(
    M: MarkedIdeal,
    C: BlowupCenter,
    allow_divisorial: bool = False,
    check: bool = True,
) -> list[MarkedIdeal]:
    """``I' = I(exc)^(-d) * sigma^*(I)`` in every chart where ``N'`` is nonempty.

    The exceptional divisor is appended as the last member of E.
    """
    charts = blowup_charts(M.chart, C, allow_divisorial)
    if check and not is_admissible(M, C):
        raise NotAdmissibleError(f"{C.label()} is not contained in the cosupport of {M}")
    step = _exc_count(M) + 1
    out = []
    for bc in charts:
        if bc.chart_var in M.n_eqs:
            continue  # strict transform of N misses this chart
        i = bc.ring.index(bc.chart_var)
        gens = []
        for g in M.gens:
            p = g.compose(list(bc.images), bc.ring)
            if p.var_valuation(i) < M.d:
                raise DivisibilityFailure(f"pullback of {g} in chart {bc.chart_var} is not divisible by exc^{M.d}")
            gens.append(p.divide_monomial(tuple(M.d if k == i else 0 for k in range(bc.ring.nvars))))
        E = _transform_E(M, bc) + [Hypersurface(bc.exceptional, "exceptional", step)]
        label = f"{M.chart.label}/{bc.chart_var}" if M.chart.label else bc.chart_var
        chart = M.chart.compose(bc.ring, bc.images, label)
        hist = M.history + (("blowup", C.label(), bc.chart_var),)
        out.append(MarkedIdeal(chart, Ideal(bc.ring, gens, M.ideal.degree_cap), M.d, tuple(E), M.n_eqs, hist))
    return out


def fresh_name(ring: Ring, base: str = "w") -> str:
    taken = set(ring.vars) | set(getattr(ring.field, "params", ()))
    if base not in taken:
        return base
    for k in itertools.count(1):
        if f"{base}{k}" not in taken:
            return f"{base}{k}"


def product_with_line(M: MarkedIdeal, name: str | None = None) -> MarkedIdeal:
    """Pull back to ``Z x A^1``; the horizontal divisor ``V(w)`` joins E last."""
    name = name or fresh_name(M.ring)
    ring = Ring(M.ring.field, M.ring.vars + (name,))
    lift = lambda p: p.to_ring(ring)
    chart = M.chart.compose(ring, [ring.var(v) for v in M.ring.vars], M.chart.label)
    E = tuple(H.to_ring(ring) for H in M.E) + (Hypersurface(ring.var(name), "product"),)
    hist = M.history + (("product", name),)
    return MarkedIdeal(chart, Ideal(ring, [lift(g) for g in M.gens], M.ideal.degree_cap), M.d, E, M.n_eqs, hist)


def exceptional_blowup(M: MarkedIdeal, i: int, j: int) -> list[MarkedIdeal]:
    """Blow up ``H_i ∩ H_j``; pure pullback of I, no division by the exceptional."""
    if i == j:
        raise ValidationError("exceptional blow-up needs two distinct divisor indices")
    n = len(M.E)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"divisor index out of range 0..{n - 1}")
    Hi, Hj = M.E[i], M.E[j]
    if Hi.is_empty or Hj.is_empty:
        return []
    vi, vj = Hi.var, Hj.var
    if vi is None or vj is None:
        raise UnsupportedError("exceptional blow-up needs coordinate hyperplanes")
    if vi in M.n_eqs or vj in M.n_eqs:
        raise UnsupportedError("centre meets the equations of N")
    C = BlowupCenter((vi, vj))
    step = _exc_count(M) + 1
    out = []
    for bc in blowup_charts(M.chart, C):
        gens = [g.compose(list(bc.images), bc.ring) for g in M.gens]
        E = _transform_E(M, bc) + [Hypersurface(bc.exceptional, "exceptional", step)]
        label = f"{M.chart.label}/{bc.chart_var}" if M.chart.label else bc.chart_var
        chart = M.chart.compose(bc.ring, bc.images, label)
        hist = M.history + (("exceptional", i, j, bc.chart_var),)
        out.append(MarkedIdeal(chart, Ideal(bc.ring, gens, M.ideal.degree_cap), M.d, tuple(E), M.n_eqs, hist))
    return out


def coordinate_centers(vars: Sequence[str], min_codim: int = 2) -> list[BlowupCenter]:
    """All coordinate subspaces through the origin of codimension >= min_codim."""
    out = []
    for r in range(min_codim, len(vars) + 1):
        for combo in itertools.combinations(vars, r):
            out.append(BlowupCenter(combo))
    return out


# ----- test sequences ---------------------------------------------------

@dataclass
class SequenceNode:
    step: tuple
    marked: MarkedIdeal
    admissible: list = field(default_factory=list)
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def to_json(self):
        return {
            "step": list(self.step),
            "chart": self.marked.chart.label,
            "markedIdeal": self.marked.to_json(),
            "admissibleMoves": list(self.admissible),
            "children": [c.to_json() for c in self.children],
        }


def _moves(M: MarkedIdeal, centers, allow_divisorial: bool):
    """Legal moves at a node in the fixed traversal order.

    Yields ``(label, kind, payload)``; blow-ups come first in candidate order,
    then the product with a line, then exceptional pairs ``i < j``.
    """
    for C in centers:
        if C.r < 2 and not allow_divisorial:
            continue
        if is_admissible(M, C):
            yield (f"blowup {C.label()}", "blowup", C)
    yield ("product", "product", None)
    for i, j in itertools.combinations(range(len(M.E)), 2):
        Hi, Hj = M.E[i], M.E[j]
        if Hi.is_empty or Hj.is_empty or Hi.var is None or Hj.var is None:
            continue
        if Hi.var in M.n_eqs or Hj.var in M.n_eqs:
            continue
        yield (f"exceptional {i},{j}", "exceptional", (i, j))


def _apply(M: MarkedIdeal, kind: str, payload, allow_divisorial: bool) -> list[MarkedIdeal]:
    if kind == "blowup":
        return controlled_transform(M, payload, allow_divisorial)
    if kind == "product":
        return [product_with_line(M)]
    return exceptional_blowup(M, *payload)


def enumerate_test_sequences(
    M: MarkedIdeal,
    depth: int,
    centers: Sequence[BlowupCenter] | None = None,
    allow_divisorial: bool = True,
    cap: int = DEPTH_CAP,
    on_step=None,
) -> SequenceNode:
    """Tree of all test sequences of length <= depth, one child per chart.

    ``on_step(parent, kind, children)`` is called after every executed move.
    """
    if depth > cap:
        raise CapacityError(f"depth {depth} exceeds cap {cap}")
    if centers is None:
        centers = coordinate_centers(M.ring.vars)
    root = SequenceNode(("root",), M)
    _grow(root, depth, list(centers), allow_divisorial, on_step)
    return root


def _grow(node: SequenceNode, depth: int, centers, allow_divisorial, on_step):
    moves = list(_moves(node.marked, centers, allow_divisorial))
    node.admissible = [label for label, kind, _ in moves if kind == "blowup"]
    if depth == 0:
        return
    for label, kind, payload in moves:
        results = _apply(node.marked, kind, payload, allow_divisorial)
        if on_step is not None:
            on_step(node.marked, kind, results)
        for k, child in enumerate(results):
            c = SequenceNode((label, k), child)
            node.children.append(c)
            _grow(c, depth - 1, centers, allow_divisorial, on_step)


def probe_grid(n: int):
    vals = (-1, 0, 1) if n <= 3 else (0, 1)
    return list(itertools.product(vals, repeat=n))


def cosupport_signature(M: MarkedIdeal, grid=None) -> tuple:
    """Membership of each probe point in the cosupport."""
    cs = cosupport(M)
    grid = probe_grid(M.ring.nvars) if grid is None else grid
    field = M.ring.field
    sig = []
    for p in grid:
        pt = [field(a) for a in p]
        sig.append(all(not g.evaluate(pt) for g in cs.gens))
    return tuple(sig)


@dataclass
class EquivalenceReport:
    verdict: str
    depth: int
    centers: list
    nodes_compared: int = 0
    mismatch: dict | None = None

    @property
    def ok(self) -> bool:
        return self.verdict == "equivalent-to-depth"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "depth": self.depth,
            "centers": self.centers,
            "nodesCompared": self.nodes_compared,
            "mismatch": self.mismatch,
        }


def _same_ambient(M1: MarkedIdeal, M2: MarkedIdeal) -> bool:
    if M1.ring != M2.ring or M1.n_eqs != M2.n_eqs or len(M1.E) != len(M2.E):
        return False
    return all((a.gen - b.gen).is_zero() for a, b in zip(M1.E, M2.E))


def equivalence_check(
    M1: MarkedIdeal,
    M2: MarkedIdeal,
    depth: int = 2,
    centers: Sequence[BlowupCenter] | None = None,
    allow_divisorial: bool = True,
    cap: int = DEPTH_CAP,
) -> EquivalenceReport:
    """Compare admissible moves and probe-grid cosupports along all test sequences.

    The verdict is ``equivalent-to-depth`` or ``not-equivalent``; the first is
    only ever a bounded statement.
    """
    if not _same_ambient(M1, M2):
        raise ValidationError("equivalence needs the same chart, N and divisor E")
    if depth > cap:
        raise CapacityError(f"depth {depth} exceeds cap {cap}")
    if centers is None:
        centers = coordinate_centers(M1.ring.vars)
    centers = list(centers)
    report = EquivalenceReport("equivalent-to-depth", depth, [C.label() for C in centers])
    path: list = []

    def visit(A: MarkedIdeal, B: MarkedIdeal, left: int) -> bool:
        report.nodes_compared += 1
        ma = list(_moves(A, centers, allow_divisorial))
        mb = list(_moves(B, centers, allow_divisorial))
        la, lb = [m[0] for m in ma], [m[0] for m in mb]
        if la != lb:
            report.mismatch = {"path": list(path), "moves": [la, lb]}
            return False
        if cosupport_signature(A) != cosupport_signature(B):
            report.mismatch = {"path": list(path), "cosupport": "probe grid differs"}
            return False
        if left == 0:
            return True
        for label, kind, payload in ma:
            ra = _apply(A, kind, payload, allow_divisorial)
            rb = _apply(B, kind, payload, allow_divisorial)
            if len(ra) != len(rb):
                report.mismatch = {"path": list(path) + [label], "charts": [len(ra), len(rb)]}
                return False
            for k, (a, b) in enumerate(zip(ra, rb)):
                path.append(f"{label}#{k}")
                if not visit(a, b, left - 1):
                    return False
                path.pop()
        return True

    if not visit(M1, M2, depth):
        report.verdict = "not-equivalent"
    return report
