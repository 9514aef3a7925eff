"""Build diagrams from bottom-to-top strand scripts.

A diagram is swept upward through a sequence of elementary events on a row
of active strand slots: ``cup`` (local minimum), ``cap`` (local maximum)
and ``cross`` (two adjacent strands cross).  Each slot tracks its current
PD arc label and flow direction, so the produced quads come out with
consistent orientations and planarity by construction.

This is the workhorse behind the built-in knot table and the twist-family
template; it avoids transcribing large PD codes by hand.
"""

from __future__ import annotations

from .diagram import Crossing, Diagram, DiagramError

# Compass order counterclockwise around a crossing, starting below-left.
_CCW = ("SW", "SE", "NE", "NW")


class StrandBuilder:
    """Incremental bottom-to-top diagram assembly."""

    def __init__(self):
        self._slots: list[tuple[int, bool]] = []  # (arc label, flows upward)
        self._quads: list[tuple[int, int, int, int]] = []
        self._signs: list[int] = []
        self._parent: dict[int, int] = {}
        self._closed: list[int] = []  # representative arcs of closed circles
        self._next = 1

    # -- union-find over builder arc labels --------------------------------

    def _fresh(self) -> int:
        label = self._next
        self._next += 1
        self._parent[label] = label
        return label

    def _find(self, a: int) -> int:
        while self._parent[a] != a:
            self._parent[a] = self._parent[self._parent[a]]
            a = self._parent[a]
        return a

    def _union(self, a: int, b: int) -> int:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self._parent[max(ra, rb)] = min(ra, rb)
        return min(ra, rb)

    # -- events --------------------------------------------------------------

    @property
    def width(self) -> int:
        return len(self._slots)

    def slot_arc(self, i: int) -> int:
        return self._find(self._slots[i][0])

    def slot_up(self, i: int) -> bool:
        return self._slots[i][1]

    def cup(self, i: int, orient: str = "lr") -> None:
        """Insert a local minimum at position ``i``.

        ``lr`` orients the flow up the left side; ``rl`` the mirror image.
        """
        if not 0 <= i <= len(self._slots):
            raise DiagramError(f"cup position {i} out of range")
        arc = self._fresh()
        left_up = orient == "lr"
        self._slots[i:i] = [(arc, left_up), (arc, not left_up)]

    def cap(self, i: int) -> None:
        """Join slots ``i`` and ``i+1`` by a local maximum."""
        if not 0 <= i < len(self._slots) - 1:
            raise DiagramError(f"cap position {i} out of range")
        (la, ua), (lb, ub) = self._slots[i], self._slots[i + 1]
        if ua == ub:
            raise DiagramError(f"cap at {i} joins strands flowing the same way")
        ra, rb = self._find(la), self._find(lb)
        if ra == rb:
            self._closed.append(ra)
        else:
            self._union(ra, rb)
        del self._slots[i:i + 2]

    def cross(self, i: int, over: str = "L") -> None:
        """Cross slots ``i`` (left) and ``i+1``; ``over`` is 'L' or 'R'."""
        if not 0 <= i < len(self._slots) - 1:
            raise DiagramError(f"crossing position {i} out of range")
        if over not in ("L", "R"):
            raise DiagramError("over must be 'L' or 'R'")
        (u, du), (w, dw) = self._slots[i], self._slots[i + 1]
        x = self._fresh()  # above-left
        y = self._fresh()  # above-right
        at = {"SW": u, "SE": w, "NE": y, "NW": x}
        # Strand L runs SW-NE, strand R runs SE-NW; each enters at the end
        # its flow points away from.
        enter_l = "SW" if du else "NE"
        enter_r = "SE" if dw else "NW"
        under_entry = enter_r if over == "L" else enter_l
        over_entry = enter_l if over == "L" else enter_r
        start = _CCW.index(under_entry)
        order = [_CCW[(start + k) % 4] for k in range(4)]
        quad = tuple(at[c] for c in order)
        over_index = order.index(over_entry)
        if over_index == 3:
            sign = 1
        elif over_index == 1:
            sign = -1
        else:
            raise DiagramError("inconsistent crossing orientation")
        self._quads.append(quad)
        self._signs.append(sign)
        self._slots[i] = (x, dw)
        self._slots[i + 1] = (y, du)

    # -- assembly --------------------------------------------------------------

    def finish(self, name: str | None = None) -> Diagram:
        """Resolve arc identifications and return the validated diagram."""
        if self._slots:
            raise DiagramError(f"{len(self._slots)} strand ends left uncapped")
        quads = [tuple(self._find(a) for a in quad) for quad in self._quads]
        used: dict[int, int] = {}
        for quad in quads:
            for a in quad:
                used.setdefault(a, len(used) + 1)
        free = sum(1 for rep in self._closed if self._find(rep) not in used)
        renum = [tuple(used[a] for a in quad) for quad in quads]
        crossings = [Crossing(q, s) for q, s in zip(renum, self._signs)]
        return Diagram(crossings, free_loops=free, name=name)


def braid_closure(n_strands: int, word: list[int], name: str | None = None) -> Diagram:
    """Trace closure of a braid word; generator ``k`` is sigma_k, ``-k`` its inverse."""
    if n_strands < 1:
        raise DiagramError("need at least one strand")
    b = StrandBuilder()
    for k in range(n_strands):
        b.cup(k, "lr")
    for gen in word:
        if gen == 0 or abs(gen) >= n_strands:
            raise DiagramError(f"braid generator {gen} out of range")
        b.cross(abs(gen) - 1, "L" if gen > 0 else "R")
    for _ in range(n_strands):
        b.cap(b.width // 2 - 1)
    return b.finish(name)
