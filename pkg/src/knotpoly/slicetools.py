"""Slice and ribbon obstruction checks on Alexander polynomials.

Two classical necessary conditions for a knot to be slice (hence for any
ribbon candidate): the determinant must be an odd perfect square, and the
Alexander polynomial must factor as ``f(t) * f(1/t)`` up to units.  The
factor search here is a bounded brute force that returns a verified
certificate when it finds one; a miss within the bound is reported as
such, never as a definitive negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Diagram
from .laurent import Laurent1
from .skein import SkeinConfig, DEFAULT_CONFIG, conway_alexander


@dataclass
class SliceReport:
    """Determinant-square and Fox-Milnor factorization results."""

    determinant: int
    det_is_odd_square: bool
    fox_milnor_factor: Laurent1 | None
    search_bound: int

    def to_json_dict(self) -> dict:
        return {
            "det_square": self.det_is_odd_square,
            "determinant": self.determinant,
            "fox_milnor_factor": (self.fox_milnor_factor.to_pairs()
                                  if self.fox_milnor_factor is not None else None),
            "search_bound": self.search_bound,
        }


def is_odd_square(value: int) -> bool:
    if value < 0 or value % 2 == 0:
        return False
    root = math.isqrt(value)
    return root * root == value


def det_square_check(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> tuple[bool, int]:
    """Whether the knot determinant is an odd perfect square, plus its value."""
    _, alexander = conway_alexander(d, cfg)
    det = abs(alexander.eval_at(-1).numerator)
    return is_odd_square(det), det


def fox_milnor_search(delta: Laurent1, max_coeff: int = 64) -> Laurent1 | None:
    """Search for ``f`` with ``f(t) f(1/t) = delta`` up to ``+-t**k``.

    ``delta`` must be the symmetric Alexander representative with value 1
    at ``t = 1``.  Candidates are integer polynomials of degree ``span/2``
    with coefficients bounded by ``max_coeff``; the forced values at
    ``t = 1`` and ``t = -1`` and the extreme product coefficients prune
    the enumeration.  A returned factor is re-verified exactly.
    """
    if max_coeff <= 0:
        raise ValueError("max_coeff must be positive")
    if delta.is_zero():
        raise ValueError("zero polynomial is not an Alexander polynomial")
    span = delta.span()
    if span % 2:
        return None
    g = span // 2
    center = (delta.min_scaled() + delta.max_scaled()) // 2
    target_poly = delta.shift(-center)
    target = [target_poly.coefficient(e) for e in range(-g, g + 1)]
    if sum(target) != 1:
        return None
    det = abs(target_poly.eval_at(-1).numerator)
    if not is_odd_square(det):
        return None
    root = math.isqrt(det)
    if g == 0:
        return Laurent1.one()

    top = target[2 * g]
    order = _fill_order(g)
    needed = _needed_positions(g)
    for c0 in range(-max_coeff, max_coeff + 1):
        if c0 == 0 or top % c0 or abs(top // c0) > max_coeff:
            continue
        f = [0] * (g + 1)
        f[0], f[g] = c0, top // c0
        found = _fill(f, order, 0, g, target, max_coeff, root, needed)
        if found is not None:
            if found[g] < 0:
                found = [-c for c in found]
            factor = Laurent1.from_int_exponents(
                {i: c for i, c in enumerate(found) if c})
            assert factor * factor.invert_variable() == target_poly
            return factor
    return None


def _fill_order(g: int) -> list[int]:
    """Interior positions ordered from both ends inward."""
    order = []
    lo, hi = 1, g - 1
    while lo <= hi:
        order.append(lo)
        if hi != lo:
            order.append(hi)
        lo += 1
        hi -= 1
    return order


def _needed_positions(g: int) -> list[tuple[int, frozenset[int]]]:
    """For each product offset k >= 0, the factor positions it involves."""
    out = []
    for k in range(2 * g + 1):
        positions = set()
        for i in range(g + 1):
            j = i - (k - g)
            if 0 <= j <= g:
                positions.add(i)
                positions.add(j)
        out.append((k, frozenset(positions)))
    return out


def _fill(f: list[int], order: list[int], step: int, g: int,
          target: list[int], max_coeff: int, root: int,
          needed: list[tuple[int, frozenset[int]]]) -> list[int] | None:
    if step == len(order):
        if sum(f) not in (1, -1):
            return None
        if abs(sum(c * (-1) ** i for i, c in enumerate(f))) != root:
            return None
        product = [0] * (2 * g + 1)
        for i, a in enumerate(f):
            for j, b in enumerate(f):
                product[i - j + g] += a * b
        return f[:] if product == target else None
    pos = order[step]
    assigned = {0, g} | set(order[:step + 1])
    checks = [k for k, req in needed if req <= assigned]
    for value in range(-max_coeff, max_coeff + 1):
        f[pos] = value
        ok = True
        for k in checks:
            coeff = 0
            for i in range(g + 1):
                j = i - (k - g)
                if 0 <= j <= g:
                    coeff += f[i] * f[j]
            if coeff != target[k]:
                ok = False
                break
        if not ok:
            continue
        result = _fill(f, order, step + 1, g, target, max_coeff, root, needed)
        if result is not None:
            return result
    f[pos] = 0
    return None


def slice_report(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG,
                 max_coeff: int = 64) -> SliceReport:
    """Run both obstruction checks and bundle the outcome."""
    _, alexander = conway_alexander(d, cfg)
    det = abs(alexander.eval_at(-1).numerator)
    square = is_odd_square(det)
    factor = fox_milnor_search(alexander, max_coeff) if square else None
    return SliceReport(det, square, factor, max_coeff)
