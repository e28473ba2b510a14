"""Oriented link diagrams as planar diagram (PD) codes.

Conventions used throughout:

1. A crossing ``X[a,b,c,d]`` lists the four arc labels counterclockwise,
   starting from the incoming under-arc, so the under-strand runs a -> c.
2. The sign is +1 when the over-strand runs d -> b and -1 when it runs
   b -> d.  Equivalently, rotating the incoming under-arc a quarter turn
   counterclockwise aligns it with the incoming over-arc of a positive
   crossing.
3. Arc labels are positive integers, each appearing exactly once as an
   incoming and once as an outgoing end.  Labels need not be contiguous;
   surgery ops relabel merged arcs by the smallest label of the merged
   class.
4. Crossingless components carry no labels; the diagram stores how many
   there are (``free_loops``).  In PD text they render as a bare ``O``.
5. Crossing signs are not part of the text form: the parser recovers them
   by tracing the global orientation.  A component that never runs under
   anything has no orientation data at all; it is oriented so that its
   smallest arc leaves from its lexicographically smallest slot.

The parser validates that the code is realizable in the plane: every
connected piece must satisfy faces = crossings + 2 for the face combinatorics
induced by the counterclockwise slot order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "ParseError",
    "ValidationError",
    "Crossing",
    "LinkDiagram",
    "ComponentLabeling",
    "parse_pd",
    "render_pd",
    "components",
    "switch_crossing",
    "smooth_crossing",
    "simplify",
    "linking_number",
]

UNDER_IN, OVER_A, UNDER_OUT, OVER_B = 0, 1, 2, 3  # slot indices, ccw


class ParseError(ValueError):
    """Malformed PD text."""


class ValidationError(ValueError):
    """Structurally invalid diagram data."""


@dataclass(frozen=True)
class Crossing:
    """One crossing; slots (a, b, c, d) counterclockwise from the incoming
    under-arc, sign per module convention 2."""

    a: int
    b: int
    c: int
    d: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValidationError(f"crossing sign must be +1 or -1, got {self.sign}")
        for x in (self.a, self.b, self.c, self.d):
            if not isinstance(x, int) or x < 1:
                raise ValidationError(f"arc labels must be positive integers, got {x}")

    @property
    def under_in(self) -> int:
        return self.a

    @property
    def under_out(self) -> int:
        return self.c

    @property
    def over_in(self) -> int:
        return self.d if self.sign > 0 else self.b

    @property
    def over_out(self) -> int:
        return self.b if self.sign > 0 else self.d

    def slots(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_roles(
        cls, under_in: int, under_out: int, over_in: int, over_out: int, sign: int
    ) -> "Crossing":
        """Rebuild the ccw slot tuple from strand roles plus the sign."""
        if sign > 0:
            return cls(under_in, over_out, under_out, over_in, sign)
        return cls(under_in, over_in, under_out, over_out, sign)

    def __str__(self) -> str:
        return f"X[{self.a},{self.b},{self.c},{self.d}]"


@dataclass(frozen=True)
class ComponentLabeling:
    """Arc cycles of a diagram, indexed deterministically.

    Cycles are ordered by their smallest arc label and each cycle starts at
    that arc; free loops occupy the trailing indices and carry no arcs.
    """

    count: int
    assignment: Mapping[int, int]
    cycles: tuple[tuple[int, ...], ...]
    free_loops: int

    def arcs_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < len(self.cycles):
            return ()
        return self.cycles[index]


class LinkDiagram:
    """An oriented link diagram: crossings plus crossingless loops.

    Validation happens at construction: arc bookkeeping (each label exactly
    one in-end and one out-end) and planarity of every connected piece.
    Instances are immutable; surgery ops return new diagrams.
    """

    __slots__ = ("_crossings", "_free_loops", "_components")

    def __init__(self, crossings: Iterable[Crossing | tuple] = (), free_loops: int = 0):
        xs = []
        for c in crossings:
            if not isinstance(c, Crossing):
                c = Crossing(*c)
            xs.append(c)
        if free_loops < 0:
            raise ValidationError("free_loops must be nonnegative")
        self._crossings: tuple[Crossing, ...] = tuple(xs)
        self._free_loops = int(free_loops)
        self._components: ComponentLabeling | None = None
        self._validate()

    # -- data access ----------------------------------------------------

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self._crossings

    @property
    def free_loops(self) -> int:
        return self._free_loops

    @property
    def arcs(self) -> tuple[int, ...]:
        seen = set()
        for c in self._crossings:
            seen.update(c.slots())
        return tuple(sorted(seen))

    @property
    def component_of(self) -> Mapping[int, int]:
        return components(self).assignment

    def crossing(self, index: int) -> Crossing:
        if not 0 <= index < len(self._crossings):
            raise ValueError(f"no crossing with index {index}")
        return self._crossings[index]

    def __len__(self) -> int:
        return len(self._crossings)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (
            self._crossings == other._crossings
            and self._free_loops == other._free_loops
        )

    def __hash__(self) -> int:
        return hash((self._crossings, self._free_loops))

    def __repr__(self) -> str:
        return f"LinkDiagram({render_pd(self)!r})"

    def flat(self) -> tuple[tuple[int, int, int, int, int], ...]:
        """Crossings as plain 5-tuples (kernel interchange form)."""
        return tuple((c.a, c.b, c.c, c.d, c.sign) for c in self._crossings)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "free_loops": self._free_loops,
            "crossings": [
                {
                    "under_in": c.under_in,
                    "under_out": c.under_out,
                    "over_in": c.over_in,
                    "over_out": c.over_out,
                    "sign": c.sign,
                }
                for c in self._crossings
            ],
            "pd": render_pd(self),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LinkDiagram":
        xs = [
            Crossing.from_roles(
                e["under_in"], e["under_out"], e["over_in"], e["over_out"], e["sign"]
            )
            for e in data["crossings"]
        ]
        return cls(xs, data.get("free_loops", 0))

    # -- internals --------------------------------------------------------

    def _validate(self) -> None:
        ins: dict[int, int] = {}
        outs: dict[int, int] = {}
        for i, c in enumerate(self._crossings):
            for arc, bucket in ((c.under_in, ins), (c.over_in, ins),
                                (c.under_out, outs), (c.over_out, outs)):
                bucket[arc] = bucket.get(arc, 0) + 1
        if set(ins) != set(outs):
            missing = set(ins) ^ set(outs)
            raise ValidationError(f"arcs without both ends: {sorted(missing)}")
        for arc in ins:
            if ins[arc] != 1 or outs[arc] != 1:
                raise ValidationError(
                    f"arc {arc} has {ins[arc]} in-ends and {outs[arc]} out-ends"
                )
        self._check_planar()

    def _check_planar(self) -> None:
        n = len(self._crossings)
        if n == 0:
            return
        piece = list(range(n))

        def find(i: int) -> int:
            while piece[i] != i:
                piece[i] = piece[piece[i]]
                i = piece[i]
            return i

        end_crossings: dict[int, list[int]] = {}
        for i, c in enumerate(self._crossings):
            for arc in c.slots():
                end_crossings.setdefault(arc, []).append(i)
        for ends in end_crossings.values():
            r0, r1 = find(ends[0]), find(ends[1])
            if r0 != r1:
                piece[r0] = r1

        face_count: dict[int, int] = {}
        for orbit in _faces(self._crossings):
            root = find(orbit[0][0])
            face_count[root] = face_count.get(root, 0) + 1
        size: dict[int, int] = {}
        for i in range(n):
            r = find(i)
            size[r] = size.get(r, 0) + 1
        for root, v in size.items():
            f = face_count.get(root, 0)
            if f != v + 2:
                raise ValidationError(
                    f"not a planar diagram: piece with {v} crossings has {f} faces"
                )


# -- dart combinatorics ------------------------------------------------------

def _endpoints(crossings: tuple[Crossing, ...]) -> dict[int, list[tuple[int, int]]]:
    """arc -> [origin dart, terminus dart]; dart = (crossing index, slot)."""
    origin: dict[int, tuple[int, int]] = {}
    terminus: dict[int, tuple[int, int]] = {}
    for i, c in enumerate(crossings):
        over_out_slot = OVER_A if c.sign > 0 else OVER_B
        over_in_slot = OVER_B if c.sign > 0 else OVER_A
        origin[c.under_out] = (i, UNDER_OUT)
        origin[c.over_out] = (i, over_out_slot)
        terminus[c.under_in] = (i, UNDER_IN)
        terminus[c.over_in] = (i, over_in_slot)
    return {arc: [origin[arc], terminus[arc]] for arc in origin}


def _faces(crossings: tuple[Crossing, ...]) -> list[list[tuple[int, int]]]:
    """Face orbits of sigma ∘ alpha over darts, in dart-scan order.

    alpha swaps the two endpoints of an arc, sigma steps one slot
    counterclockwise; orbits enumerate the diagram's faces when the code is
    planar.
    """
    ends = _endpoints(crossings)
    alpha: dict[tuple[int, int], tuple[int, int]] = {}
    for pair in ends.values():
        alpha[pair[0]] = pair[1]
        alpha[pair[1]] = pair[0]
    orbits = []
    seen: set[tuple[int, int]] = set()
    for i in range(len(crossings)):
        for slot in range(4):
            dart = (i, slot)
            if dart in seen:
                continue
            orbit = []
            cur = dart
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                ci, s = alpha[cur]
                cur = (ci, (s + 1) % 4)
            orbits.append(orbit)
    return orbits


# -- parsing / rendering -----------------------------------------------------

_TOKEN_RE = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]|O|\S+")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text like ``"X[1,3,2,4] X[3,1,4,2]"`` into a diagram.

    Tokens are whitespace separated; ``O`` adds one crossingless loop and
    ``#`` comments run to end of line.  Crossing signs are inferred from the
    global orientation (module conventions 2 and 5).

    Raises:
        ParseError: on malformed tokens or labels.
        ValidationError: if the code is inconsistent or non-planar.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    tuples: list[tuple[int, int, int, int]] = []
    free_loops = 0
    for m in _TOKEN_RE.finditer(body):
        tok = m.group(0)
        if tok == "O":
            free_loops += 1
            continue
        if m.group(1) is None:
            raise ParseError(f"unrecognized PD token: {tok!r}")
        entries = tuple(int(m.group(k)) for k in range(1, 5))
        if any(e < 1 for e in entries):
            raise ParseError(f"arc labels must be positive: {tok!r}")
        tuples.append(entries)
    signs = _infer_signs(tuples)
    return LinkDiagram(
        [Crossing(*t, sign) for t, sign in zip(tuples, signs)], free_loops
    )


def render_pd(d: LinkDiagram) -> str:
    """Inverse of parse_pd (signs are recomputed on re-parse)."""
    parts = [str(c) for c in d.crossings] + ["O"] * d.free_loops
    return " ".join(parts)


def _infer_signs(tuples: list[tuple[int, int, int, int]]) -> list[int]:
    """Orient every arc and read off crossing signs.

    Works over one boolean per crossing, x = "the b slot is an out-end"
    (equivalent to sign +1).  Under-slots anchor the propagation; arcs with
    both ends on over-slots couple two crossings with equal or opposite
    parity.  Anchor-free clusters are oriented by convention 5.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, t in enumerate(tuples):
        for slot, arc in enumerate(t):
            occ.setdefault(arc, []).append((i, slot))
    for arc, places in occ.items():
        if len(places) != 2:
            raise ValidationError(
                f"arc {arc} appears {len(places)} times, expected exactly 2"
            )

    n = len(tuples)
    value: list[int | None] = [None] * n
    # edges[i] holds (j, relation); relation 0 means x_i == x_j, 1 means !=
    edges: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    seeds: list[tuple[int, int]] = []

    def is_out(slot: int, x: int) -> int:
        # polarity of a slot given the crossing's x; under slots are fixed
        if slot == UNDER_IN:
            return 0
        if slot == UNDER_OUT:
            return 1
        return x if slot == OVER_A else 1 - x

    for arc, ((i1, s1), (i2, s2)) in occ.items():
        fixed1 = s1 in (UNDER_IN, UNDER_OUT)
        fixed2 = s2 in (UNDER_IN, UNDER_OUT)
        if fixed1 and fixed2:
            if is_out(s1, 0) + is_out(s2, 0) != 1:
                raise ValidationError(f"arc {arc} is not oriented consistently")
        elif fixed1 or fixed2:
            (fi, fs), (oi, os_) = ((i1, s1), (i2, s2)) if fixed1 else ((i2, s2), (i1, s1))
            need_out = 1 - is_out(fs, 0)
            x = need_out if os_ == OVER_A else 1 - need_out
            seeds.append((oi, x))
        else:
            # one end out, one in: is_out(s1, xi) != is_out(s2, xj)
            rel = (is_out(s1, 0) + is_out(s2, 0) + 1) % 2
            edges[i1].append((i2, rel))
            edges[i2].append((i1, rel))
        if i1 == i2 and not fixed1 and not fixed2:
            # the b and d slots of one crossing have opposite polarity anyway
            edges[i1].pop()
            edges[i2].pop()

    def flood(start: int, x: int) -> None:
        stack = [(start, x)]
        while stack:
            i, xi = stack.pop()
            if value[i] is not None:
                if value[i] != xi:
                    raise ValidationError("inconsistent global orientation")
                continue
            value[i] = xi
            for j, rel in edges[i]:
                stack.append((j, xi ^ rel))

    for i, x in seeds:
        flood(i, x)

    for i in range(n):
        if value[i] is not None:
            continue
        # orientation-free cluster: orient its smallest arc out of its
        # smallest slot appearance
        cluster = [i]
        seen = {i}
        k = 0
        while k < len(cluster):
            for j, _ in edges[cluster[k]]:
                if j not in seen:
                    seen.add(j)
                    cluster.append(j)
            k += 1
        best: tuple[int, int, int] | None = None
        for j in sorted(seen):
            for slot, arc in enumerate(tuples[j]):
                if slot in (OVER_A, OVER_B) and (best is None or (arc, j, slot) < best):
                    best = (arc, j, slot)
        assert best is not None
        _, j, slot = best
        flood(j, 1 if slot == OVER_A else 0)

    return [1 if value[i] else -1 for i in range(n)]


# -- component tracing -------------------------------------------------------

def components(d: LinkDiagram) -> ComponentLabeling:
    """Trace arc cycles and label every component.

    The count is the number of cycles of the arc-succession map plus the
    free loops; cycle k starts at and is indexed by its smallest arc.
    """
    if d._components is not None:
        return d._components
    succ: dict[int, int] = {}
    for c in d.crossings:
        succ[c.under_in] = c.under_out
        succ[c.over_in] = c.over_out
    cycles: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for arc in sorted(succ):
        if arc in seen:
            continue
        cyc = []
        cur = arc
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = succ[cur]
        cycles.append(tuple(cyc))
    assignment = {arc: k for k, cyc in enumerate(cycles) for arc in cyc}
    labeling = ComponentLabeling(
        count=len(cycles) + d.free_loops,
        assignment=assignment,
        cycles=tuple(cycles),
        free_loops=d.free_loops,
    )
    d._components = labeling
    return labeling


# -- surgery -----------------------------------------------------------------

def switch_crossing(d: LinkDiagram, index: int) -> LinkDiagram:
    """Exchange over- and under-strand at one crossing (sign flips).

    The ccw slot order around the crossing is preserved; only which strand
    is on top changes, so the new tuple starts at the new incoming
    under-arc.
    """
    c = d.crossing(index)
    if c.sign > 0:
        new = Crossing(c.d, c.a, c.b, c.c, -1)
    else:
        new = Crossing(c.b, c.c, c.d, c.a, 1)
    xs = list(d.crossings)
    xs[index] = new
    return LinkDiagram(xs, d.free_loops)


class _UnionFind:
    """Union-find over arbitrary hashable keys, merging to the smaller root."""

    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            return x
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx


def _rebuild(
    crossings: list[Crossing], removed: set[int], uf: _UnionFind, old: tuple[Crossing, ...],
    free_loops: int,
) -> LinkDiagram:
    """Relabel arcs by merged-class minimum and count classes that lost all
    crossing ends (each becomes a free loop)."""
    kept = [c for i, c in enumerate(old) if i not in removed]
    new_crossings = [
        Crossing(uf.find(c.a), uf.find(c.b), uf.find(c.c), uf.find(c.d), c.sign)
        for c in kept
    ]
    before = {uf.find(arc) for c in old for arc in c.slots()}
    after = {arc for c in new_crossings for arc in c.slots()}
    vanished = len(before - after)
    return LinkDiagram(new_crossings, free_loops + vanished)


def smooth_crossing(d: LinkDiagram, index: int) -> LinkDiagram:
    """Replace one crossing by its oriented smoothing.

    The incoming under-arc joins the outgoing over-arc and the incoming
    over-arc joins the outgoing under-arc; merged arcs take the smallest
    label of their class, and classes left without any crossing end become
    free loops.
    """
    c = d.crossing(index)
    uf = _UnionFind()
    for arc in {a for x in d.crossings for a in x.slots()}:
        uf.find(arc)
    uf.union(c.under_in, c.over_out)
    uf.union(c.over_in, c.under_out)
    return _rebuild(list(d.crossings), {index}, uf, d.crossings, d.free_loops)


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Remove kinks and cancelling clasp pairs until none remain.

    Monogon faces trigger kink removals; bigon faces whose two arcs run
    over-over and under-under trigger pair cancellations.  The scan order is
    deterministic (dart order, monogons first) and each move removes
    crossings, so the result is well defined.  The work happens in the
    selected kernel; both kernels agree on the output.
    """
    from conwaylab._kernel import get_kernel

    flat, fl = get_kernel().simplify(d.flat(), d.free_loops)
    return LinkDiagram([Crossing(*t) for t in flat], fl)


# -- linking numbers ---------------------------------------------------------

def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j.

    Raises ValueError for i == j or out-of-range component indices (free
    loop indices are fine; they link nothing).
    """
    lab = components(d)
    if i == j:
        raise ValueError("linking number needs two distinct components")
    for k in (i, j):
        if not 0 <= k < lab.count:
            raise ValueError(f"no component with index {k}")
    total = 0
    for c in d.crossings:
        pair = {lab.assignment[c.under_in], lab.assignment[c.over_in]}
        if pair == {i, j}:
            total += c.sign
    if total % 2:
        raise ValidationError("odd signed crossing count between components")
    return total // 2
