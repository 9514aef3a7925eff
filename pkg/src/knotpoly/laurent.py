"""Exact sparse Laurent polynomial arithmetic with big-integer coefficients.

Two rings are provided:

* :class:`Laurent2` -- two commuting variables ``v`` and ``z``, used for the
  two-variable skein polynomial of links.
* :class:`Laurent1` -- one variable ``t`` stored on a half-exponent scale
  (the stored exponent is twice the semantic one) so that substitutions such
  as ``z -> t^(1/2) - t^(-1/2)`` remain exact.

All coefficients are Python ints, so there is no overflow path and no
floating point anywhere.  Values are immutable after construction and safe
to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class Laurent2:
    """Sparse Laurent polynomial in ``v`` and ``z`` over the integers.

    Terms are held in a map ``(dv, dz) -> coefficient`` with no zero
    coefficients stored, so equal polynomials always have equal term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        cleaned: dict[tuple[int, int], int] = {}
        if terms:
            for (dv, dz), coeff in terms.items():
                if coeff:
                    cleaned[(int(dv), int(dz))] = cleaned.get((dv, dz), 0) + int(coeff)
            cleaned = {e: c for e, c in cleaned.items() if c}
        self._terms = cleaned
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> "Laurent2":
        return cls()

    @classmethod
    def one(cls) -> "Laurent2":
        return cls({(0, 0): 1})

    @classmethod
    def term(cls, coeff: int, dv: int = 0, dz: int = 0) -> "Laurent2":
        return cls({(dv, dz): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        """A copy of the term map."""
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __neg__(self) -> "Laurent2":
        return Laurent2({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "Laurent2") -> "Laurent2":
        if not isinstance(other, Laurent2):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        result = Laurent2.__new__(Laurent2)
        result._terms = out
        result._hash = None
        return result

    def __sub__(self, other: "Laurent2") -> "Laurent2":
        return self + (-other)

    def __mul__(self, other: "Laurent2") -> "Laurent2":
        if not isinstance(other, Laurent2):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (av, az), ac in self._terms.items():
            for (bv, bz), bc in other._terms.items():
                e = (av + bv, az + bz)
                s = out.get(e, 0) + ac * bc
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        result = Laurent2.__new__(Laurent2)
        result._terms = out
        result._hash = None
        return result

    def __pow__(self, n: int) -> "Laurent2":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((dv, dz), c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("negative power needs a unit coefficient")
            return Laurent2({(dv * n, dz * n): c if n % 2 else 1})
        result = Laurent2.one()
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, coeff: int) -> "Laurent2":
        if coeff == 0:
            return Laurent2.zero()
        return Laurent2({e: c * coeff for e, c in self._terms.items()})

    def coeff_z(self, k: int) -> "Laurent1":
        """The coefficient of ``z**k`` as a one-variable polynomial in ``v``."""
        out: dict[int, int] = {}
        for (dv, dz), c in self._terms.items():
            if dz == k:
                out[2 * dv] = c
        return Laurent1(out)

    def z_exponents(self) -> list[int]:
        return sorted({dz for (_, dz) in self._terms})

    def span(self, variable: str) -> int:
        """Max minus min exponent of ``variable`` ('v' or 'z') over nonzero terms."""
        if not self._terms:
            raise ValueError("span undefined for the zero polynomial")
        idx = {"v": 0, "z": 1}[variable]
        exps = [e[idx] for e in self._terms]
        return max(exps) - min(exps)

    def flip_v(self) -> "Laurent2":
        """Substitute ``v -> v**-1`` (the mirror map for the skein polynomial)."""
        return Laurent2({(-dv, dz): c for (dv, dz), c in self._terms.items()})

    def specialize(self, v_image: "Laurent1", z_image: "Laurent1") -> "Laurent1":
        """Exact substitution of one-variable images for ``v`` and ``z``.

        Negative exponents require the corresponding image to be a unit
        monomial (coefficient +-1); the Jones and Conway substitutions only
        ever need that much.
        """
        total = Laurent1.zero()
        v_powers: dict[int, Laurent1] = {}
        z_powers: dict[int, Laurent1] = {}
        for (dv, dz), c in sorted(self._terms.items()):
            if dv not in v_powers:
                v_powers[dv] = v_image ** dv
            if dz not in z_powers:
                z_powers[dz] = z_image ** dz
            total = total + (v_powers[dv] * z_powers[dz]).scale(c)
        return total

    def to_pairs(self) -> list[list]:
        """Serializable form: sorted ``[dv, dz, coeff-as-decimal-string]`` triples."""
        return [[dv, dz, str(c)] for (dv, dz), c in sorted(self._terms.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable]) -> "Laurent2":
        return cls({(int(dv), int(dz)): int(c) for dv, dz, c in pairs})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for (dv, dz), c in sorted(self._terms.items()):
            part = [] if abs(c) != 1 else ["1"] if (dv, dz) == (0, 0) else []
            if abs(c) != 1 or (dv, dz) == (0, 0):
                part = [str(abs(c))]
            else:
                part = []
            for sym, d in (("v", dv), ("z", dz)):
                if d == 1:
                    part.append(sym)
                elif d:
                    part.append(f"{sym}^{d}")
            text = "*".join(part) if part else "1"
            bits.append(("- " if c < 0 else "+ ") + text)
        joined = " ".join(bits)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]


class Laurent1:
    """Sparse one-variable Laurent polynomial on a half-exponent scale.

    The stored exponent is twice the semantic one, so ``t**(1/2)`` is the
    stored exponent 1.  Whole-power values (every stored exponent even) are
    the common case for knot invariants; :attr:`is_whole` reports it.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, scaled_terms: Mapping[int, int] | None = None):
        cleaned: dict[int, int] = {}
        if scaled_terms:
            for e, c in scaled_terms.items():
                if c:
                    cleaned[int(e)] = cleaned.get(int(e), 0) + int(c)
            cleaned = {e: c for e, c in cleaned.items() if c}
        self._terms = cleaned
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> "Laurent1":
        return cls()

    @classmethod
    def one(cls) -> "Laurent1":
        return cls({0: 1})

    @classmethod
    def from_int_exponents(cls, terms: Mapping[int, int]) -> "Laurent1":
        """Build from semantic whole-power exponents."""
        return cls({2 * e: c for e, c in terms.items()})

    @classmethod
    def half_power(cls, numerator: int, coeff: int = 1) -> "Laurent1":
        """The monomial ``coeff * t**(numerator/2)``."""
        return cls({numerator: coeff})

    @property
    def scaled_terms(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def is_whole(self) -> bool:
        """True when the value lies in the whole-power Laurent ring."""
        return all(e % 2 == 0 for e in self._terms)

    def int_exponents(self) -> dict[int, int]:
        """Semantic exponent map; requires a whole-power value."""
        if not self.is_whole:
            raise ValueError("polynomial has half-integer exponents")
        return {e // 2: c for e, c in self._terms.items()}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent1):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __neg__(self) -> "Laurent1":
        return Laurent1({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "Laurent1") -> "Laurent1":
        if not isinstance(other, Laurent1):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        result = Laurent1.__new__(Laurent1)
        result._terms = out
        result._hash = None
        return result

    def __sub__(self, other: "Laurent1") -> "Laurent1":
        return self + (-other)

    def __mul__(self, other: "Laurent1") -> "Laurent1":
        if not isinstance(other, Laurent1):
            return NotImplemented
        out: dict[int, int] = {}
        for ae, ac in self._terms.items():
            for be, bc in other._terms.items():
                e = ae + be
                s = out.get(e, 0) + ac * bc
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        result = Laurent1.__new__(Laurent1)
        result._terms = out
        result._hash = None
        return result

    def __pow__(self, n: int) -> "Laurent1":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("negative power needs a unit coefficient")
            return Laurent1({e * n: c if n % 2 else 1})
        result = Laurent1.one()
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, coeff: int) -> "Laurent1":
        if coeff == 0:
            return Laurent1.zero()
        return Laurent1({e: c * coeff for e, c in self._terms.items()})

    def shift(self, scaled_amount: int) -> "Laurent1":
        """Multiply by ``t**(scaled_amount/2)``."""
        return Laurent1({e + scaled_amount: c for e, c in self._terms.items()})

    def invert_variable(self) -> "Laurent1":
        """Substitute ``t -> t**-1``."""
        return Laurent1({-e: c for e, c in self._terms.items()})

    def min_scaled(self) -> int:
        return min(self._terms)

    def max_scaled(self) -> int:
        return max(self._terms)

    def span(self) -> int:
        """Max minus min semantic exponent; error on the zero polynomial."""
        if not self._terms:
            raise ValueError("span undefined for the zero polynomial")
        spread = max(self._terms) - min(self._terms)
        if spread % 2:
            raise ValueError("span is not a whole number for this value")
        return spread // 2

    def coefficient(self, semantic_exponent: int) -> int:
        return self._terms.get(2 * semantic_exponent, 0)

    def substitute(self, image: "Laurent1") -> "Laurent1":
        """Exact substitution ``t -> image``; needs whole powers of ``t``.

        Negative exponents require the image to be a unit monomial.
        """
        total = Laurent1.zero()
        powers: dict[int, Laurent1] = {}
        for e, c in sorted(self.int_exponents().items()):
            if e not in powers:
                powers[e] = image ** e
            total = total + powers[e].scale(c)
        return total

    def eval_at(self, point: int) -> Fraction:
        """Exact evaluation at a nonzero integer point; whole powers only."""
        if point == 0:
            raise ValueError("evaluation point must be nonzero")
        total = Fraction(0)
        for e, c in self.int_exponents().items():
            total += c * Fraction(point) ** e
        return total

    def to_pairs(self) -> list[list]:
        """Serializable form: sorted ``[exponent, coeff-as-decimal-string]``.

        Exponents appear at semantic value; half-integers render as "k/2".
        """
        out = []
        for e, c in sorted(self._terms.items()):
            exp = e // 2 if e % 2 == 0 else f"{e}/2"
            out.append([exp, str(c)])
        return out

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable]) -> "Laurent1":
        terms: dict[int, int] = {}
        for exp, c in pairs:
            if isinstance(exp, str) and exp.endswith("/2"):
                scaled = int(exp[:-2])
            else:
                scaled = 2 * int(exp)
            terms[scaled] = int(c)
        return cls(terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for e, c in sorted(self._terms.items()):
            exp = e // 2 if e % 2 == 0 else f"({e}/2)"
            if e == 0:
                text = str(abs(c))
            else:
                head = "" if abs(c) == 1 else f"{abs(c)}*"
                text = f"{head}t^{exp}" if exp != 1 else f"{head}t"
            bits.append(("- " if c < 0 else "+ ") + text)
        joined = " ".join(bits)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]


def divide_exact(num: Laurent1, den: Laurent1) -> Laurent1:
    """Exact division in the one-variable Laurent ring.

    Raises ``ValueError`` when the quotient does not exist; used by the
    fraction-free determinant, where divisions are exact by construction.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return Laurent1.zero()
    remainder = dict(num.scaled_terms)
    den_terms = den.scaled_terms
    den_top = max(den_terms)
    den_lead = den_terms[den_top]
    out: dict[int, int] = {}
    while remainder:
        top = max(remainder)
        lead = remainder[top]
        if lead % den_lead:
            raise ValueError("inexact division")
        q_exp = top - den_top
        q_coeff = lead // den_lead
        out[q_exp] = out.get(q_exp, 0) + q_coeff
        for e, c in den_terms.items():
            ne = e + q_exp
            s = remainder.get(ne, 0) - c * q_coeff
            if s:
                remainder[ne] = s
            else:
                remainder.pop(ne, None)
    return Laurent1(out)
