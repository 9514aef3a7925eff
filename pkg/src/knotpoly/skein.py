"""Two-variable skein polynomial via memoized skein-tree recursion.

The engine satisfies ``v**-1 P(L+) - v P(L-) = z P(L0)`` with ``P = 1`` on
the unknot and ``((v**-1 - v)/z)**(k-1)`` on the k-component unlink.  A
diagram is reduced with R1/R2 moves, tested for descendingness along the
arc-order traversal, and otherwise split at a non-descending crossing into
the switched and smoothed children.  Results are memoized on the
relabeling-invariant canonical key, so the exponential tree collapses.

Specializations derived from one evaluation: the z-degree-zero slice in
``x = v**2`` (and its span), the Jones polynomial via ``v -> t**-1,
z -> t**(1/2) - t**(-1/2)``, the Conway and Alexander polynomials, and the
knot determinant.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .diagram import Diagram, DiagramError
from .laurent import Laurent1, Laurent2


class SkeinResourceError(RuntimeError):
    """Raised when the skein tree exceeds the configured node budget."""

    def __init__(self, nodes_expanded: int, node_cap: int):
        super().__init__(
            f"skein tree exceeded node cap ({nodes_expanded} > {node_cap})")
        self.nodes_expanded = nodes_expanded
        self.node_cap = node_cap


@dataclass
class SkeinConfig:
    node_cap: int = 10_000_000
    memo_enabled: bool = True
    crossing_selection: str = "first"  # or "last"

    def __post_init__(self):
        if self.node_cap <= 0:
            raise ValueError("node_cap must be positive")
        if self.crossing_selection not in ("first", "last"):
            raise ValueError(f"unknown strategy {self.crossing_selection!r}")


DEFAULT_CONFIG = SkeinConfig()

# (v**-1 - v) / z : the value of a split unknotted circle.
_DELTA = Laurent2({(-1, -1): 1, (1, -1): -1})
_V2 = Laurent2.term(1, 2, 0)
_VZ = Laurent2.term(1, 1, 1)
_VM2 = Laurent2.term(1, -2, 0)
_VM1Z = Laurent2.term(-1, -1, 1)


class _Engine:
    def __init__(self, cfg: SkeinConfig):
        self.cfg = cfg
        self.memo: dict[bytes, Laurent2] = {}
        self.nodes = 0

    def run(self, d: Diagram) -> Laurent2:
        limit = sys.getrecursionlimit()
        bumped = max(limit, 4 * len(d.crossings) + 10_000)
        sys.setrecursionlimit(bumped)
        try:
            return self.eval(d)
        finally:
            sys.setrecursionlimit(limit)

    def eval(self, d: Diagram) -> Laurent2:
        d = d.simplify()
        key = d.canonical_key()
        if self.cfg.memo_enabled:
            cached = self.memo.get(key)
            if cached is not None:
                return cached
        self.nodes += 1
        if self.nodes > self.cfg.node_cap:
            raise SkeinResourceError(self.nodes, self.cfg.node_cap)
        branch = self.pick_crossing(d)
        if branch is None:
            result = _DELTA ** (d.n_components - 1)
        else:
            crossing = d.crossings[branch]
            switched = self.eval(d.resolve_crossing(branch, "switch"))
            smoothed = self.eval(d.resolve_crossing(branch, "smooth"))
            if crossing.sign > 0:
                result = _V2 * switched + _VZ * smoothed
            else:
                result = _VM2 * switched + _VM1Z * smoothed
        if self.cfg.memo_enabled:
            self.memo[key] = result
        return result

    def pick_crossing(self, d: Diagram) -> int | None:
        """A crossing first met as an under-crossing along the traversal.

        Returns ``None`` when the diagram is descending (hence an unlink).
        """
        seen: set[int] = set()
        found: int | None = None
        for cycle in d.components():
            for _, ci, pos in cycle:
                if ci in seen:
                    continue
                seen.add(ci)
                if pos not in (1, 3):
                    if self.cfg.crossing_selection == "first":
                        return ci
                    found = ci
        return found


def homflypt(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> Laurent2:
    """The skein polynomial of an oriented link diagram."""
    return _Engine(cfg).run(d)


def gamma(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> Laurent1:
    """The z-degree-zero slice of the skein polynomial, in ``x = v**2``.

    Defined for knots, where every v-exponent of that slice is even; an odd
    exponent signals a convention violation and raises.
    """
    return gamma_of(homflypt_knot(d, cfg))


def homflypt_knot(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> Laurent2:
    if not d.is_knot():
        raise DiagramError("operation requires a knot (single component)")
    return homflypt(d, cfg)


def gamma_of(p: Laurent2) -> Laurent1:
    """Re-express the z**0 coefficient of a knot polynomial in ``x = v**2``."""
    slice_v = p.coeff_z(0)
    in_v = slice_v.int_exponents()
    if any(e % 2 for e in in_v):
        raise ValueError("z**0 slice has odd v-exponents; convention violated")
    return Laurent1.from_int_exponents({e // 2: c for e, c in in_v.items()})


def gamma_span(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> int:
    return gamma(d, cfg).span()


_JONES_V = Laurent1.half_power(-2)            # t**-1
_JONES_Z = Laurent1({1: 1, -1: -1})           # t**(1/2) - t**(-1/2)


def jones(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> Laurent1:
    """Jones polynomial of a knot via the skein specialization."""
    return jones_of(homflypt_knot(d, cfg))


def jones_of(p: Laurent2) -> Laurent1:
    result = p.specialize(_JONES_V, _JONES_Z)
    if not result.is_whole:
        raise ValueError("Jones value of a knot has half-integer powers; "
                         "convention violated")
    return result


_CONWAY_V = Laurent1.one()
_CONWAY_Z = Laurent1.from_int_exponents({1: 1})
_ALEX_SUB = Laurent1({1: 1, -1: -1})          # z -> t**(1/2) - t**(-1/2)


def conway_alexander(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG
                     ) -> tuple[Laurent1, Laurent1]:
    """Conway polynomial and the symmetric normalized Alexander polynomial."""
    return conway_alexander_of(homflypt_knot(d, cfg))


def conway_alexander_of(p: Laurent2) -> tuple[Laurent1, Laurent1]:
    conway = p.specialize(_CONWAY_V, _CONWAY_Z)
    alexander = normalize_alexander(conway.substitute(_ALEX_SUB))
    return conway, alexander


def normalize_alexander(delta: Laurent1) -> Laurent1:
    """Scale by ``+-t**k`` to the symmetric representative with value 1 at 1."""
    if delta.is_zero():
        raise ValueError("Alexander polynomial cannot be zero for a knot")
    center = delta.min_scaled() + delta.max_scaled()
    if center % 2:
        raise ValueError("Alexander polynomial cannot be centered")
    balanced = delta.shift(-center // 2)
    at_one = balanced.eval_at(1)
    if at_one.denominator != 1 or abs(at_one.numerator) != 1:
        raise ValueError(f"Alexander normalization failed: value at 1 is {at_one}")
    if at_one.numerator < 0:
        balanced = -balanced
    if balanced != balanced.invert_variable():
        raise ValueError("Alexander polynomial is not symmetric")
    return balanced


def determinant(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG) -> int:
    """The knot determinant, the absolute Alexander value at -1."""
    _, alexander = conway_alexander(d, cfg)
    return determinant_of(alexander)


def determinant_of(alexander: Laurent1) -> int:
    value = alexander.eval_at(-1)
    assert value.denominator == 1
    return abs(value.numerator)


@dataclass
class InvariantReport:
    """All invariants of one knot, derived from a single skein evaluation."""

    knot: str
    crossings: int
    homflypt: Laurent2
    gamma: Laurent1
    gamma_span: int
    jones: Laurent1
    conway: Laurent1
    alexander: Laurent1
    determinant: int

    def to_json_dict(self) -> dict:
        return {
            "knot": self.knot,
            "crossings": self.crossings,
            "homflypt": self.homflypt.to_pairs(),
            "gamma": self.gamma.to_pairs(),
            "gamma_span": self.gamma_span,
            "jones": self.jones.to_pairs(),
            "conway": self.conway.to_pairs(),
            "alexander": self.alexander.to_pairs(),
            "determinant": self.determinant,
        }


class OracleMismatch(AssertionError):
    """An independent recomputation disagreed with the skein engine."""


def full_report(d: Diagram, cfg: SkeinConfig = DEFAULT_CONFIG,
                cross_check: bool = True, bracket_cap: int = 20) -> InvariantReport:
    """Compute every invariant from one skein evaluation.

    With ``cross_check`` the Alexander polynomial is recomputed from the
    Wirtinger presentation, and the Jones polynomial from the bracket state
    sum when the diagram is small enough; disagreement raises
    :class:`OracleMismatch`.
    """
    p = homflypt_knot(d, cfg)
    g = gamma_of(p)
    v = jones_of(p)
    conway, alexander = conway_alexander_of(p)
    det = determinant_of(alexander)
    if cross_check:
        from . import oracle

        alt = oracle.alexander_wirtinger(d)
        if alt != alexander:
            raise OracleMismatch(
                f"Wirtinger Alexander {alt!r} != skein value {alexander!r}")
        if len(d.crossings) <= bracket_cap:
            bracket = oracle.kauffman_jones(d, cap=bracket_cap)
            if bracket != v:
                raise OracleMismatch(
                    f"bracket Jones {bracket!r} != skein value {v!r}")
    return InvariantReport(
        knot=d.name or "unnamed",
        crossings=len(d.crossings),
        homflypt=p,
        gamma=g,
        gamma_span=g.span() if g else 0,
        jones=v,
        conway=conway,
        alexander=alexander,
        determinant=det,
    )
