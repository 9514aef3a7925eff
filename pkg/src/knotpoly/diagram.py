"""Oriented knot and link diagrams as planar diagram (PD) codes.

A crossing is a quadruple of arc labels listed counterclockwise from the
incoming under-strand, plus a sign derived from the orientation trace:
for ``X[a,b,c,d]`` the under-strand runs ``a -> c``; the over-strand runs
``d -> b`` at a positive crossing and ``b -> d`` at a negative one.

Arc labels are positive integers and each label occurs exactly twice in
the whole diagram (PD edges split at every crossing).  Split unknotted
circles that carry no crossings are tracked by an explicit counter, so
smoothings can never lose components.  Diagrams are immutable; every
operation returns a new value.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Malformed diagram data or an operation precondition violation."""


class ParseError(DiagramError):
    """PD text that cannot be parsed into a valid diagram."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: arcs counterclockwise from the incoming under-strand."""

    quad: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise DiagramError(f"crossing sign must be +-1, got {self.sign}")
        if len(self.quad) != 4 or any(a < 1 for a in self.quad):
            raise DiagramError(f"bad crossing quad {self.quad}")

    def switched(self) -> "Crossing":
        """The same crossing with over- and under-strand exchanged."""
        a, b, c, d = self.quad
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)

    def reversed(self) -> "Crossing":
        """The same crossing with both strand orientations flipped."""
        a, b, c, d = self.quad
        return Crossing((c, d, a, b), self.sign)


# Role of each position: True when the arc at that slot ends (head) here.
def _is_head(pos: int, sign: int) -> bool:
    if pos == 0:
        return True
    if pos == 2:
        return False
    if pos == 1:
        return sign < 0
    return sign > 0


def _exit_pos(pos_in: int, sign: int) -> int:
    """Continuation slot for a strand entering at ``pos_in``."""
    if pos_in == 0:
        return 2
    if pos_in == 3 and sign > 0:
        return 1
    if pos_in == 1 and sign < 0:
        return 3
    raise DiagramError(f"position {pos_in} is not an entry slot at sign {sign}")


@dataclass
class ValidationReport:
    """Outcome of the label, orientation and planarity checks."""

    label_ok: bool
    orientation_ok: bool
    planar_ok: bool
    problems: list[str]

    @property
    def passed(self) -> bool:
        return self.label_ok and self.orientation_ok and self.planar_ok


class Diagram:
    """An oriented link diagram: crossings plus crossing-free circles."""

    __slots__ = ("crossings", "free_loops", "name", "_ends", "_components", "_faces")

    def __init__(self, crossings: Iterable[Crossing] = (), free_loops: int = 0,
                 name: str | None = None, check: bool = True):
        self.crossings: tuple[Crossing, ...] = tuple(crossings)
        self.free_loops = int(free_loops)
        self.name = name
        self._ends: dict[int, list[tuple[int, int]]] | None = None
        self._components: list[list[tuple[int, int, int]]] | None = None
        self._faces: list[list[tuple[int, int]]] | None = None
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")
        if check:
            report = validate(self)
            if not report.passed:
                raise DiagramError("; ".join(report.problems))

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.crossings == other.crossings and self.free_loops == other.free_loops

    def __hash__(self) -> int:
        return hash((self.crossings, self.free_loops))

    def __repr__(self) -> str:
        label = self.name or "diagram"
        return f"<{label}: {len(self.crossings)} crossings, {self.n_components} components>"

    @property
    def arcs(self) -> list[int]:
        return sorted(self.ends())

    def ends(self) -> dict[int, list[tuple[int, int]]]:
        """Map from arc label to its two ``(crossing index, position)`` slots."""
        if self._ends is None:
            ends: dict[int, list[tuple[int, int]]] = {}
            for ci, crossing in enumerate(self.crossings):
                for pos, arc in enumerate(crossing.quad):
                    ends.setdefault(arc, []).append((ci, pos))
            self._ends = ends
        return self._ends

    def head_slot(self, arc: int) -> tuple[int, int]:
        for ci, pos in self.ends()[arc]:
            if _is_head(pos, self.crossings[ci].sign):
                return ci, pos
        raise DiagramError(f"arc {arc} has no head")

    def tail_slot(self, arc: int) -> tuple[int, int]:
        for ci, pos in self.ends()[arc]:
            if not _is_head(pos, self.crossings[ci].sign):
                return ci, pos
        raise DiagramError(f"arc {arc} has no tail")

    def components(self) -> list[list[tuple[int, int, int]]]:
        """Strand cycles as lists of ``(arc, crossing index, entry position)``.

        Each entry records the crossing the arc runs into.  Crossing-free
        circles are not included; see :attr:`free_loops`.
        """
        if self._components is not None:
            return self._components
        comps: list[list[tuple[int, int, int]]] = []
        seen: set[int] = set()
        for start in self.arcs:
            if start in seen:
                continue
            cycle: list[tuple[int, int, int]] = []
            arc = start
            while True:
                ci, pos = self.head_slot(arc)
                cycle.append((arc, ci, pos))
                seen.add(arc)
                arc = self.crossings[ci].quad[_exit_pos(pos, self.crossings[ci].sign)]
                if arc == start:
                    break
            comps.append(cycle)
        self._components = comps
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components()) + self.free_loops

    def is_knot(self) -> bool:
        return self.n_components == 1

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    # -- faces and planarity -----------------------------------------------

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces of the rotation system as dart cycles ``(crossing, position)``.

        A dart is an arc end; the walk turns counterclockwise at every
        crossing, so orbits correspond to complementary regions.
        """
        if self._faces is not None:
            return self._faces
        ends = self.ends()
        unvisited: set[tuple[int, int]] = {
            (ci, pos) for ci in range(len(self.crossings)) for pos in range(4)
        }
        faces: list[list[tuple[int, int]]] = []
        while unvisited:
            dart = min(unvisited)
            cycle: list[tuple[int, int]] = []
            current = dart
            while True:
                cycle.append(current)
                unvisited.discard(current)
                ci, pos = current
                turn = (ci, (pos + 1) % 4)
                arc = self.crossings[ci].quad[(pos + 1) % 4]
                slots = ends[arc]
                current = slots[0] if slots[1] == turn else slots[1]
                if current == dart:
                    break
            faces.append(cycle)
        self._faces = faces
        return faces

    def face_arc_directions(self) -> list[list[tuple[int, bool]]]:
        """Per face, the arcs walked and whether each is walked toward its head."""
        out = []
        for face in self.faces():
            entries = []
            for ci, pos in face:
                arc = self.crossings[ci].quad[(pos + 1) % 4]
                sign = self.crossings[ci].sign
                leaving_head = _is_head((pos + 1) % 4, sign)
                # Walking away from this crossing reaches the arc's other
                # end; we move toward the head exactly when this end is the
                # tail.
                entries.append((arc, not leaving_head))
            out.append(entries)
        return out

    # -- text formats --------------------------------------------------------

    def to_pd_text(self) -> str:
        return " ".join(f"X[{a},{b},{c},{d}]" for (a, b, c, d) in
                        (cr.quad for cr in self.crossings))

    def gauss_tokens(self) -> list[list[tuple[int, int, int]]]:
        """Per component, ``(crossing index, over flag, sign)`` visit tokens."""
        out = []
        for cycle in self.components():
            tokens = []
            for _, ci, pos in cycle:
                over = pos in (1, 3)
                tokens.append((ci, 1 if over else 0, self.crossings[ci].sign))
            out.append(tokens)
        return out

    def gauss_text(self) -> str:
        """Gauss code text: tokens like ``O3+`` / ``U3-``, components ';'-joined."""
        number = {}
        pieces = []
        for tokens in self.gauss_tokens():
            bits = []
            for ci, over, sign in tokens:
                label = number.setdefault(ci, len(number) + 1)
                bits.append(f"{'O' if over else 'U'}{label}{'+' if sign > 0 else '-'}")
            pieces.append(",".join(bits))
        return ";".join(pieces)

    # -- canonical key -------------------------------------------------------

    def canonical_key(self) -> bytes:
        """Relabeling-invariant key: the lexicographically least Gauss code.

        Minimized over every component order and every basepoint choice,
        with crossing numbers assigned in first-visit order.  Two diagrams
        that differ only by arc/crossing relabeling get equal keys.
        """
        comps = self.gauss_tokens()
        if not comps:
            return b"unlink:%d" % self.free_loops
        rotations_per_comp: list[list[list[tuple[int, int, int]]]] = []
        for tokens in comps:
            n = len(tokens)
            rotations_per_comp.append([tokens[r:] + tokens[:r] for r in range(n)])

        best: list[tuple[int, int, int]] | None = None
        separator = (-1, -1, 0)  # marks component boundaries in the stream

        def rec(prefix: list[tuple[int, int, int]], idmap: dict[int, int],
                used: frozenset[int]) -> None:
            nonlocal best
            if len(used) == len(comps):
                if best is None or prefix < best:
                    best = list(prefix)
                return
            for k in range(len(comps)):
                if k in used:
                    continue
                for rotation in rotations_per_comp[k]:
                    local = dict(idmap)
                    tokens: list[tuple[int, int, int]] = []
                    for ci, over, sign in rotation:
                        num = local.setdefault(ci, len(local))
                        tokens.append((num, over, sign))
                    tokens.append(separator)
                    candidate = prefix + tokens
                    if best is not None and candidate > best[:len(candidate)]:
                        continue
                    rec(candidate, local, used | {k})

        rec([], {}, frozenset())
        assert best is not None
        body = "".join(";" if n < 0 else f"{n}{'O' if o else 'U'}{s:+d}"
                       for n, o, s in best)
        return f"{self.free_loops}|{body}".encode()

    # -- elementary transforms ------------------------------------------------

    def relabeled(self, mapping: dict[int, int]) -> "Diagram":
        """Apply an arc relabeling (must be injective on the arc set)."""
        new = [Crossing(tuple(mapping.get(a, a) for a in cr.quad), cr.sign)
               for cr in self.crossings]
        return Diagram(new, self.free_loops, self.name)

    def mirror(self) -> "Diagram":
        return Diagram([c.switched() for c in self.crossings], self.free_loops, self.name)

    def reverse(self) -> "Diagram":
        return Diagram([c.reversed() for c in self.crossings], self.free_loops, self.name)

    def max_arc(self) -> int:
        return max(self.ends(), default=0)

    # -- crossing deletion engine ----------------------------------------------

    def _delete(self, removed: set[int], joins: list[tuple[int, int]],
                name: str | None = None) -> "Diagram":
        """Remove crossings and reconnect strands along ``joins``.

        Each join ``(u, w)`` glues the head of arc ``u`` to the tail of arc
        ``w`` at a removed crossing.  Chains of joins collapse to a single
        surviving arc; cyclic chains produce crossing-free circles.
        """
        next_arc = dict(joins)
        if len(next_arc) != len(joins):
            raise DiagramError("conflicting joins")
        glued_tails = set(next_arc.values())
        rename: dict[int, int] = {}
        consumed: set[int] = set()
        for start in sorted(next_arc):
            if start in glued_tails:
                continue
            chain = [start]
            while chain[-1] in next_arc:
                chain.append(next_arc[chain[-1]])
            consumed.update(chain)
            rename[chain[-1]] = start
        loops = 0
        cyclic = set(next_arc) - consumed
        while cyclic:
            arc = min(cyclic)
            while arc in cyclic:
                cyclic.discard(arc)
                arc = next_arc[arc]
            loops += 1
        survivors = []
        for ci, crossing in enumerate(self.crossings):
            if ci in removed:
                continue
            quad = tuple(rename.get(a, a) for a in crossing.quad)
            survivors.append(Crossing(quad, crossing.sign))
        return Diagram(survivors, self.free_loops + loops, name or self.name)

    def _passthrough_joins(self, ci: int) -> list[tuple[int, int]]:
        """Joins that erase crossing ``ci`` letting both strands run straight."""
        a, b, c, d = self.crossings[ci].quad
        if self.crossings[ci].sign > 0:
            return [(a, c), (d, b)]
        return [(a, c), (b, d)]

    def _smoothing_joins(self, ci: int) -> list[tuple[int, int]]:
        """Joins of the oriented smoothing at crossing ``ci``."""
        a, b, c, d = self.crossings[ci].quad
        if self.crossings[ci].sign > 0:
            return [(a, b), (d, c)]
        return [(a, d), (b, c)]

    def resolve_crossing(self, index: int, mode: str) -> "Diagram":
        """Skein children: ``switch`` flips crossing ``index``; ``smooth``
        performs the oriented smoothing there."""
        if not 0 <= index < len(self.crossings):
            raise DiagramError(f"crossing index {index} out of range")
        if mode == "switch":
            new = list(self.crossings)
            new[index] = new[index].switched()
            return Diagram(new, self.free_loops, self.name)
        if mode == "smooth":
            return self._delete({index}, self._smoothing_joins(index))
        raise DiagramError(f"unknown resolution mode {mode!r}")

    # -- Reidemeister simplification --------------------------------------------

    def _find_kink(self) -> int | None:
        for ci, crossing in enumerate(self.crossings):
            a, b, c, d = crossing.quad
            if a == b or b == c or c == d or d == a:
                return ci
        return None

    def _find_r2_pair(self) -> tuple[int, int] | None:
        candidates = []
        for face in self.faces():
            if len(face) != 2:
                continue
            (ci, pi), (cj, pj) = face
            if ci == cj:
                continue
            # The bigon edge arc at (ci, pi+1) has its other end at (cj, pj).
            # It lies on top at both crossings exactly when pi and pj have
            # opposite parities (odd positions are over slots).
            if (pi + pj) % 2 == 1:
                candidates.append(tuple(sorted((ci, cj))))
        if not candidates:
            return None
        return min(candidates)

    def simplify(self) -> "Diagram":
        """Greedy Reidemeister I and II reduction to a fixpoint.

        Deterministic: the lowest-indexed available kink or clasp goes
        first.  Crossing count never increases and all polynomial
        invariants are unchanged.
        """
        d = self
        while True:
            kink = d._find_kink()
            if kink is not None:
                d = d._delete({kink}, d._passthrough_joins(kink))
                continue
            pair = d._find_r2_pair()
            if pair is not None:
                i, j = pair
                joins = d._passthrough_joins(i) + d._passthrough_joins(j)
                d = d._delete({i, j}, joins)
                continue
            return d

    # -- composite constructions -------------------------------------------------

    def connected_sum(self, other: "Diagram") -> "Diagram":
        """Splice two knots along a cut arc in each, respecting orientation."""
        if not self.is_knot() or not other.is_knot():
            raise DiagramError("connected sum requires single-component operands")
        if not other.crossings:
            return Diagram(self.crossings, self.free_loops, self.name)
        if not self.crossings:
            return Diagram(other.crossings, other.free_loops, other.name)
        offset = self.max_arc()
        shifted = other.relabeled({a: a + offset for a in other.arcs})
        alpha = min(self.arcs)
        beta = min(shifted.arcs)
        combined = list(self.crossings)
        hi_ci, hi_pos = self.head_slot(alpha)
        for crossing in shifted.crossings:
            combined.append(crossing)
        # alpha's strand now flows into beta's head; beta returns into
        # alpha's old head slot.
        bh_ci, bh_pos = shifted.head_slot(beta)
        bh_ci += len(self.crossings)

        def rewrite(ci: int, pos: int, new_arc: int) -> None:
            quad = list(combined[ci].quad)
            quad[pos] = new_arc
            combined[ci] = Crossing(tuple(quad), combined[ci].sign)

        rewrite(bh_ci, bh_pos, alpha)
        rewrite(hi_ci, hi_pos, beta)
        return Diagram(combined, 0, None)

    def insert_full_twists(self, slot_arcs: tuple[int, int], n: int,
                           pattern: str | None = None) -> "Diagram":
        """Insert ``|n|`` full twists of two parallel strands at a marked slot.

        Adds exactly ``2|n|`` crossings with handedness ``sign(n)``; ``n = 0``
        returns the diagram unchanged.  The two arcs must run adjacently
        along a common face, else the insertion is rejected.
        """
        x, y = slot_arcs
        ends = self.ends()
        if x not in ends or y not in ends or x == y:
            raise DiagramError(f"twist slot arcs {slot_arcs} not in diagram")
        if n == 0:
            return self
        detected = self.slot_pattern(slot_arcs)
        if pattern is not None and pattern != detected:
            raise DiagramError(
                f"slot {slot_arcs}: declared {pattern} but strands are {detected}")
        d = self
        pair = (x, y)
        for _ in range(abs(n)):
            d, pair = d._insert_one_twist(pair, 1 if n > 0 else -1, detected)
        return d

    def slot_pattern(self, slot_arcs: tuple[int, int]) -> str:
        """'parallel' or 'antiparallel' for two arcs sharing a face."""
        x, y = slot_arcs
        for entries in self.face_arc_directions():
            arcs_here = {arc: toward for arc, toward in entries}
            if x in arcs_here and y in arcs_here:
                return "parallel" if arcs_here[x] != arcs_here[y] else "antiparallel"
        raise DiagramError(
            f"slot arcs {slot_arcs} are not adjacent along any face")

    def _splice_block(self, x: int, y: int, block_for: "callable"
                      ) -> tuple["Diagram", tuple[int, int, int, int, int, int]]:
        """Cut arcs ``x`` and ``y`` and wire in a two-crossing block.

        ``block_for(x, y, xm, ym, xe, ye)`` supplies the crossings; the
        head pieces of the cut arcs become ``xe`` and ``ye``.  The block is
        tried with both role assignments of the two arcs, because the side
        each strand shows to their shared face fixes the wiring.  Returns
        the new diagram plus the labels ``(u, w, xm, ym, xe, ye)`` in the
        role order that embedded.
        """
        m = self.max_arc()
        xm, ym, xe, ye = m + 1, m + 2, m + 3, m + 4
        last_error: DiagramError | None = None
        for u, w in ((x, y), (y, x)):
            combined = list(self.crossings)
            uh = self.head_slot(u)
            wh = self.head_slot(w)
            combined.extend(block_for(u, w, xm, ym, xe, ye))

            def rewrite(slot: tuple[int, int], new_arc: int) -> None:
                ci, pos = slot
                quad = list(combined[ci].quad)
                quad[pos] = new_arc
                combined[ci] = Crossing(tuple(quad), combined[ci].sign)

            rewrite(uh, xe)
            rewrite(wh, ye)
            try:
                return (Diagram(combined, self.free_loops, self.name),
                        (u, w, xm, ym, xe, ye))
            except DiagramError as exc:
                last_error = exc
        raise DiagramError(
            f"arcs {x}, {y} do not admit a planar two-crossing insertion: "
            f"{last_error}")

    _TWIST_BLOCKS = {
        ("parallel", 1): lambda x, y, xm, ym, xe, ye: [
            Crossing((y, xm, ym, x), 1), Crossing((xm, ye, xe, ym), 1)],
        ("parallel", -1): lambda x, y, xm, ym, xe, ye: [
            Crossing((x, y, xm, ym), -1), Crossing((ym, xm, ye, xe), -1)],
        ("antiparallel", 1): lambda x, y, xm, ym, xe, ye: [
            Crossing((x, ye, xm, ym), 1), Crossing((y, xe, ym, xm), 1)],
        ("antiparallel", -1): lambda x, y, xm, ym, xe, ye: [
            Crossing((ym, x, ye, xm), -1), Crossing((xm, y, xe, ym), -1)],
    }

    def _insert_one_twist(self, slot_arcs: tuple[int, int], handed: int,
                          pattern: str) -> tuple["Diagram", tuple[int, int]]:
        """One full-twist block; returns the new diagram and the arc pair
        where the twist region continues (for chaining further blocks).

        Planarity validation is the arbiter of the correct wiring: the
        detected pattern is tried first, then the other, in both role
        orders.  For antiparallel strands the continuation pair swaps in
        the fresh tail piece of the downward strand.
        """
        other = "antiparallel" if pattern == "parallel" else "parallel"
        for pat in (pattern, other):
            try:
                d, (u, w, xm, ym, xe, ye) = self._splice_block(
                    slot_arcs[0], slot_arcs[1], self._TWIST_BLOCKS[(pat, handed)])
            except DiagramError:
                continue
            nxt = (u, w) if pat == "parallel" else (u, ye)
            return d, nxt
        raise DiagramError(
            f"slot arcs {slot_arcs} do not admit a planar twist insertion")

    # -- randomized expansion ------------------------------------------------------

    def expand_random(self, seed: int, steps: int) -> "Diagram":
        """Apply ``steps`` random inverse R1/R2 insertions, deterministically.

        Knot type is preserved; the crossing count grows by at most
        ``2 * steps``.
        """
        rng = random.Random(seed)
        d = self
        for _ in range(steps):
            if not d.crossings:
                if not d.free_loops:
                    return d
                # A bare circle has no arcs to kink; realize it as a
                # one-crossing diagram first.
                d = Diagram([Crossing((1, 2, 2, 1), -1)], d.free_loops - 1, d.name)
                continue
            if rng.random() < 0.5:
                d = d._insert_kink(rng)
            else:
                d = d._insert_clasp(rng)
        return d

    def _insert_kink(self, rng: random.Random) -> "Diagram":
        x = rng.choice(self.arcs)
        m = self.max_arc()
        loop, xe = m + 1, m + 2
        variant = rng.randrange(4)
        table = {
            0: Crossing((loop, loop, xe, x), 1),
            1: Crossing((x, xe, loop, loop), 1),
            2: Crossing((x, loop, loop, xe), -1),
            3: Crossing((loop, x, xe, loop), -1),
        }
        combined = list(self.crossings)
        xh_ci, xh_pos = self.head_slot(x)
        combined.append(table[variant])

        quad = list(combined[xh_ci].quad)
        quad[xh_pos] = xe
        combined[xh_ci] = Crossing(tuple(quad), combined[xh_ci].sign)
        return Diagram(combined, self.free_loops, self.name)

    def _insert_clasp(self, rng: random.Random) -> "Diagram":
        options = []
        for entries in self.face_arc_directions():
            once = [e for e in entries
                    if sum(1 for arc, _ in entries if arc == e[0]) == 1]
            if len(once) >= 2:
                options.append(sorted(once))
        if not options:
            return self._insert_kink(rng)
        entries = options[rng.randrange(len(options))]
        (x, tx), (y, ty) = rng.sample(entries, 2)
        pattern = "parallel" if tx != ty else "antiparallel"
        if pattern == "parallel":
            block = lambda u, w, xm, ym, xe, ye: [
                Crossing((w, xm, ym, u), 1), Crossing((ym, xm, ye, xe), -1)]
        else:
            block = lambda u, w, xm, ym, xe, ye: [
                Crossing((ym, u, ye, xm), -1), Crossing((w, xe, ym, xm), 1)]
        try:
            return self._splice_block(x, y, block)[0]
        except DiagramError:
            return self._insert_kink(rng)


def unknot(name: str = "unknot") -> Diagram:
    return Diagram([], free_loops=1, name=name)


# -- validation ---------------------------------------------------------------


def validate(d: Diagram) -> ValidationReport:
    """Run the label-multiplicity, orientation and planarity checks."""
    problems: list[str] = []
    counts: dict[int, int] = {}
    for crossing in d.crossings:
        for arc in crossing.quad:
            counts[arc] = counts.get(arc, 0) + 1
    bad = sorted(a for a, k in counts.items() if k != 2)
    label_ok = not bad
    if bad:
        problems.append(f"arc labels with multiplicity != 2: {bad}")

    orientation_ok = label_ok
    if label_ok:
        for arc in counts:
            heads = 0
            for ci, crossing in enumerate(d.crossings):
                for pos, a in enumerate(crossing.quad):
                    if a == arc and _is_head(pos, crossing.sign):
                        heads += 1
            if heads != 1:
                orientation_ok = False
                problems.append(f"arc {arc} has {heads} heads (needs exactly 1)")
                break

    planar_ok = orientation_ok
    if orientation_ok and d.crossings:
        parent = list(range(len(d.crossings)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        ends: dict[int, list[int]] = {}
        for ci, crossing in enumerate(d.crossings):
            for arc in crossing.quad:
                ends.setdefault(arc, []).append(ci)
        for pair in ends.values():
            ri, rj = find(pair[0]), find(pair[-1])
            if ri != rj:
                parent[ri] = rj
        group_of = {ci: find(ci) for ci in range(len(d.crossings))}
        v_count: dict[int, int] = {}
        e_count: dict[int, int] = {}
        f_count: dict[int, int] = {}
        for ci in range(len(d.crossings)):
            v_count[group_of[ci]] = v_count.get(group_of[ci], 0) + 1
        for arc, pair in ends.items():
            e_count[group_of[pair[0]]] = e_count.get(group_of[pair[0]], 0) + 1
        for face in d.faces():
            g = group_of[face[0][0]]
            f_count[g] = f_count.get(g, 0) + 1
        for g in v_count:
            euler = v_count[g] - e_count.get(g, 0) + f_count.get(g, 0)
            if euler != 2:
                planar_ok = False
                problems.append(
                    f"component with {v_count[g]} crossings has Euler number {euler}")
    return ValidationReport(label_ok, orientation_ok, planar_ok, problems)


# -- parsing --------------------------------------------------------------------


_TOKEN = re.compile(r"X\[([^\]]*)\]")


def parse_pd(text: str) -> Diagram:
    """Parse PD text ``X[a,b,c,d] ...`` into a validated diagram.

    The empty string denotes the zero-crossing unknot.  Crossing signs are
    inferred from the orientation trace; components that never pass under
    anything get a deterministic orientation.
    """
    stripped = text.strip()
    if not stripped:
        return unknot()
    quads: list[tuple[int, int, int, int]] = []
    cursor = 0
    index = 0
    for match in _TOKEN.finditer(stripped):
        between = stripped[cursor:match.start()].strip().strip(",").strip()
        if between:
            raise ParseError(f"unrecognized text {between!r} before token {index}")
        cursor = match.end()
        fields = [f.strip() for f in match.group(1).split(",")]
        if len(fields) != 4:
            raise ParseError(f"token {index}: expected 4 arc labels, got {len(fields)}")
        try:
            quad = tuple(int(f) for f in fields)
        except ValueError as exc:
            raise ParseError(f"token {index}: non-integer arc label") from exc
        if any(a < 1 for a in quad):
            raise ParseError(f"token {index}: arc labels must be positive")
        quads.append(quad)
        index += 1
    trailing = stripped[cursor:].strip().strip(",").strip()
    if trailing:
        raise ParseError(f"unrecognized trailing text {trailing!r}")
    if not quads:
        raise ParseError("no crossing tokens found")

    counts: dict[int, int] = {}
    for quad in quads:
        for a in quad:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        culprit = next(i for i, q in enumerate(quads) if any(a in bad for a in q))
        raise ParseError(f"token {culprit}: arc labels {bad} do not occur exactly twice")

    signs = _infer_signs(quads)
    diagram = Diagram([Crossing(q, s) for q, s in zip(quads, signs)], 0, None, check=False)
    report = validate(diagram)
    if not report.passed:
        raise ParseError("; ".join(report.problems))
    return diagram


def _infer_signs(quads: list[tuple[int, int, int, int]]) -> list[int]:
    """Derive crossing signs from the global orientation trace.

    Position 0 always consumes an arc and position 2 always emits one; the
    roles of the two over slots per crossing follow by propagating the rule
    that every arc has one head and one tail.
    """
    # role[(ci, pos)] = True for head; over slots start unknown.
    role: dict[tuple[int, int], bool] = {}
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(quads):
        for pos, arc in enumerate(quad):
            occurrences.setdefault(arc, []).append((ci, pos))
        role[(ci, 0)] = True
        role[(ci, 2)] = False

    signs: dict[int, int] = {}

    def set_role(slot: tuple[int, int], is_head: bool, queue: list) -> None:
        if slot in role:
            if role[slot] != is_head:
                raise ParseError(f"token {slot[0]}: orientation inconsistency")
            return
        role[slot] = is_head
        ci, pos = slot
        sign = 1 if (pos == 3) == is_head else -1
        if ci in signs and signs[ci] != sign:
            raise ParseError(f"token {ci}: orientation inconsistency")
        signs[ci] = sign
        other_pos = 4 - pos  # 1 <-> 3
        set_role((ci, other_pos), not is_head, queue)
        queue.append(slot)
        queue.append((ci, other_pos))

    queue: list[tuple[int, int]] = [slot for slot in role]
    while True:
        while queue:
            slot = queue.pop()
            ci, pos = slot
            arc = quads[ci][pos]
            mate = next(s for s in occurrences[arc] if s != slot)
            if mate in role:
                if role[mate] == role[slot]:
                    raise ParseError(
                        f"token {mate[0]}: orientation inconsistency on arc {arc}")
            else:
                set_role(mate, not role[slot], queue)
        undecided = [ci for ci in range(len(quads)) if ci not in signs]
        if not undecided:
            break
        # A component that is over-strand everywhere is orientation-free;
        # orient it deterministically.
        ci = undecided[0]
        set_role((ci, 3), True, queue)
    return [signs[ci] for ci in range(len(quads))]
