"""Independent recomputations of the Alexander and Jones polynomials.

Both routes are structurally unrelated to the skein-tree engine, so they
serve as cross-validation oracles: the Alexander polynomial comes from Fox
derivatives of the Wirtinger presentation and a fraction-free determinant,
the Jones polynomial from the Kauffman bracket state sum over all ``2**c``
smoothings.
"""

from __future__ import annotations

from .diagram import Diagram, DiagramError
from .laurent import Laurent1, divide_exact
from .skein import normalize_alexander


def _wirtinger_arcs(d: Diagram) -> dict[int, int]:
    """Map each PD edge to its Wirtinger arc class (merged across overpasses)."""
    parent = {arc: arc for arc in d.arcs}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for crossing in d.crossings:
        a, b, c, dd = crossing.quad
        over_in, over_out = (dd, b) if crossing.sign > 0 else (b, dd)
        ra, rb = find(over_in), find(over_out)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return {arc: find(arc) for arc in parent}


def alexander_wirtinger(d: Diagram) -> Laurent1:
    """Alexander polynomial from the Wirtinger presentation.

    Builds the abelianized Fox Jacobian of the relations
    ``x_out = x_over**(+-1) x_in x_over**(-+1)``, drops one row and one
    column, and takes the exact determinant by fraction-free elimination
    over the one-variable Laurent ring.  The result is normalized to the
    symmetric representative whose value at 1 is 1.
    """
    if not d.is_knot():
        raise DiagramError("Alexander oracle requires a knot")
    if not d.crossings:
        return Laurent1.one()
    classes = _wirtinger_arcs(d)
    generators = sorted(set(classes.values()))
    column = {g: i for i, g in enumerate(generators)}
    t = Laurent1.from_int_exponents({1: 1})
    t_inv = Laurent1.from_int_exponents({-1: 1})
    one = Laurent1.one()
    rows = []
    for crossing in d.crossings:
        a, b, c, dd = crossing.quad
        over = classes[dd if crossing.sign > 0 else b]
        under_in, under_out = classes[a], classes[c]
        row = [Laurent1.zero()] * len(generators)

        def add(gen: int, value: Laurent1) -> None:
            row[column[gen]] = row[column[gen]] + value

        add(under_out, one)
        if crossing.sign > 0:
            add(over, t - one)
            add(under_in, -t)
        else:
            add(over, t_inv - one)
            add(under_in, -t_inv)
        rows.append(row)
    # Delete one relation and one generator: any choice works up to units.
    minor = [row[:-1] for row in rows[:-1]]
    det = _fraction_free_det(minor)
    if det.is_zero():
        raise DiagramError("degenerate Alexander matrix")
    return normalize_alexander(det)


def _fraction_free_det(matrix: list[list[Laurent1]]) -> Laurent1:
    """Bareiss determinant over the Laurent ring; divisions are exact."""
    n = len(matrix)
    if n == 0:
        return Laurent1.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = Laurent1.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return Laurent1.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = Laurent1.zero()
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def kauffman_jones(d: Diagram, cap: int = 20) -> Laurent1:
    """Jones polynomial of a knot from the bracket state sum.

    Enumerates all ``2**c`` smoothings with loop value ``-A**2 - A**-2``,
    applies the writhe correction ``(-A)**(-3w)`` and converts the bracket
    variable to ``t``.  The exponential sweep is capped (default 20
    crossings); the oracle exists for validation, not production use.
    """
    if not d.is_knot():
        raise DiagramError("bracket oracle requires a knot")
    c = len(d.crossings)
    if c > cap:
        raise DiagramError(f"bracket oracle capped at {cap} crossings, got {c}")
    if c == 0:
        return Laurent1.one()
    index = {arc: i for i, arc in enumerate(d.arcs)}
    n_arcs = len(index)
    pairings = []
    for crossing in d.crossings:
        a, b, cc, dd = (index[x] for x in crossing.quad)
        pairings.append((((a, b), (cc, dd)), ((a, dd), (b, cc))))

    counts: dict[tuple[int, int], int] = {}
    for state in range(1 << c):
        parent = list(range(n_arcs))
        merges = 0
        balance = 0
        for ci in range(c):
            use_b = (state >> ci) & 1
            balance += -1 if use_b else 1
            for u, w in pairings[ci][use_b]:
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                while parent[w] != w:
                    parent[w] = parent[parent[w]]
                    w = parent[w]
                if u != w:
                    parent[u] = w
                    merges += 1
        loops = n_arcs - merges + d.free_loops
        key = (balance, loops)
        counts[key] = counts.get(key, 0) + 1

    delta = Laurent1.from_int_exponents({2: -1, -2: -1})
    delta_powers = {0: Laurent1.one()}
    bracket = Laurent1.zero()
    for (balance, loops), howmany in sorted(counts.items()):
        k = loops - 1
        if k not in delta_powers:
            delta_powers[k] = delta ** k
        term = delta_powers[k].shift(2 * balance).scale(howmany)
        bracket = bracket + term
    w = d.writhe()
    corrected = bracket.shift(-6 * w)
    if w % 2:
        corrected = -corrected
    terms = {}
    for scaled, coeff in corrected.scaled_terms.items():
        if scaled % 8:
            raise DiagramError("bracket of a knot must lie in Z[A**(+-4)]")
        terms[scaled // 4] = coeff
    return Laurent1(terms)
