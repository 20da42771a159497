"""Degree-truncated linear algebra in R/m^{k+1}.

The image of an ideal in ``K[x]/(x)^{k+1}`` is spanned by the truncations of
``m*g`` for monomials ``m`` and generators ``g`` with ``|m| + ord(g) <= k``.
Row-reducing that span with the SMALLEST monomial as pivot yields the initial
exponents of the image, i.e. the diagram up to degree ``k``.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .polys import Poly, deglex_key, monomials_up_to


def _generators(ideal) -> list[Poly]:
    return list(ideal.gens) if hasattr(ideal, "gens") else [g for g in ideal if not g.is_zero()]


def truncated_rows(gens: Sequence[Poly], k: int) -> list[dict]:
    """Sparse rows ``{monomial: coeff}`` spanning the image of the ideal mod m^{k+1}."""
    rows = []
    for g in gens:
        o = g.order()
        if o > k:
            continue
        n = g.ring.nvars
        items = [(a, c) for a, c in g.terms.items() if sum(a) <= k]
        for m in monomials_up_to(n, k - o):
            dm = sum(m)
            row = {}
            for a, c in items:
                if sum(a) + dm <= k:
                    row[tuple(x + y for x, y in zip(a, m))] = c
            if row:
                rows.append(row)
    return rows


def truncation_basis(ideal, k: int) -> list[tuple]:
    """Pivot monomials of the truncated span, deglex ascending.

    These are exactly the initial exponents (deglex-smallest) of elements of
    ``I*K[[x]]`` of degree at most ``k``.
    """
    if k < 0:
        return []
    echelon: dict = {}
    for row in truncated_rows(_generators(ideal), k):
        row = dict(row)
        while row:
            piv = min(row, key=deglex_key)
            prow = echelon.get(piv)
            if prow is None:
                echelon[piv] = row
                break
            f = row[piv] / prow[piv]
            for a, c in prow.items():
                v = row.get(a)
                v = -f * c if v is None else v - f * c
                if v:
                    row[a] = v
                else:
                    row.pop(a, None)
    return sorted(echelon, key=deglex_key)


def truncated_rank(rows: Iterable[dict]) -> int:
    """Rank of a sparse row set; pivots on the LARGEST monomial (independent route)."""
    echelon: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            piv = max(row, key=deglex_key)
            prow = echelon.get(piv)
            if prow is None:
                echelon[piv] = row
                rank += 1
                break
            f = row[piv] / prow[piv]
            for a, c in prow.items():
                v = row.get(a)
                v = -f * c if v is None else v - f * c
                if v:
                    row[a] = v
                else:
                    row.pop(a, None)
    return rank


def truncated_length(ideal, k: int, nvars: int | None = None) -> int:
    """``dim_K K[x]/(I + m^{k+1})`` by a plain rank count."""
    gens = _generators(ideal)
    if nvars is None:
        nvars = ideal.ring.nvars if hasattr(ideal, "ring") else gens[0].ring.nvars
    total = len(monomials_up_to(nvars, k))
    return total - truncated_rank(truncated_rows(gens, k))
