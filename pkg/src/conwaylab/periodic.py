"""Annular tape patterns, cyclic lifts, and period/type classification.

A pattern describes a tangle in an annulus as a Morse tape: k strands cross
a marked glue line (the boundary), and events run along the tape:

* cross(pos, sign): adjacent strands at pos, pos+1 cross; sign is the
  crossing sign of the resulting diagram crossing.
* cup(pos, upper): a new pair of strands opens at pos; upper names the
  direction ("R"/"L") of the strand placed at pos+1, its partner runs
  opposite.
* cap(pos): the strands at pos, pos+1 (which must run in opposite
  directions) join and leave the tape.

Closing one copy of the tape through the glue line gives the quotient link
diagram in the annulus; concatenating p copies before closing gives the
p-fold cyclic lift, on which the deck rotation acts by shifting copies.
Windings count signed passes through the glue line (a pass to the right is
+1), so a strand that exits right and returns left contributes 0.

The planar closure used here bends the tape clockwise with positions growing
outward, which realizes the combinatorial diagrams below with the standard
plane orientation; every quantity computed (windings, linking numbers,
polynomial congruences) is checked against that one fixed convention.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from conwaylab.diagram import LinkDiagram, components
from conwaylab.linking import linking_matrix

__all__ = [
    "PatternError",
    "GenerationError",
    "CrossEvent",
    "CupEvent",
    "CapEvent",
    "QuotientPattern",
    "OrbitLabeling",
    "EquivariantTriple",
    "TypeMDecomposition",
    "PatternConfig",
    "validate_pattern",
    "quotient_diagram",
    "winding_numbers",
    "lift",
    "is_strongly_periodic",
    "is_orbitally_separated",
    "is_os_strongly_periodic",
    "set_event_sign",
    "smooth_event",
    "cross_event_rank",
    "equivariant_triple",
    "classify_type_m",
    "random_pattern",
    "make_type_m_pattern",
]


class PatternError(ValueError):
    """Structurally invalid pattern or illegal event."""


class GenerationError(RuntimeError):
    """Random search failed to produce a pattern meeting the constraints."""


def _dir_num(letter: str) -> int:
    if letter == "R":
        return 1
    if letter == "L":
        return -1
    raise PatternError(f"direction must be 'R' or 'L', got {letter!r}")


def _dir_letter(num: int) -> str:
    return "R" if num > 0 else "L"


@dataclass(frozen=True)
class CrossEvent:
    pos: int
    sign: int


@dataclass(frozen=True)
class CupEvent:
    pos: int
    upper: str


@dataclass(frozen=True)
class CapEvent:
    pos: int


Event = CrossEvent | CupEvent | CapEvent


def _event_to_json(ev: Event) -> dict:
    if isinstance(ev, CrossEvent):
        return {"type": "cross", "pos": ev.pos, "sign": ev.sign}
    if isinstance(ev, CupEvent):
        return {"type": "cup", "pos": ev.pos, "upper": ev.upper}
    if isinstance(ev, CapEvent):
        return {"type": "cap", "pos": ev.pos}
    raise PatternError(f"unknown event {ev!r}")


def _event_from_json(data: Mapping, index: int) -> Event:
    try:
        kind = data["type"]
        if kind == "cross":
            return CrossEvent(int(data["pos"]), int(data["sign"]))
        if kind == "cup":
            return CupEvent(int(data["pos"]), str(data["upper"]))
        if kind == "cap":
            return CapEvent(int(data["pos"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise PatternError(f"event {index}: malformed entry {data!r}") from exc
    raise PatternError(f"event {index}: unknown type {kind!r}")


@dataclass(frozen=True)
class QuotientPattern:
    """A tape of events over a fixed glue-line boundary."""

    boundary_width: int
    boundary_directions: tuple[str, ...]
    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "boundary_directions", tuple(self.boundary_directions)
        )
        object.__setattr__(self, "events", tuple(self.events))

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "boundary_width": self.boundary_width,
            "boundary_directions": list(self.boundary_directions),
            "events": [_event_to_json(ev) for ev in self.events],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "QuotientPattern":
        try:
            width = int(data["boundary_width"])
            dirs = tuple(str(x) for x in data["boundary_directions"])
            events = tuple(
                _event_from_json(e, i) for i, e in enumerate(data["events"])
            )
        except (KeyError, TypeError) as exc:
            raise PatternError(f"malformed pattern object: {exc}") from exc
        return cls(width, dirs, events)

    def digest(self) -> str:
        blob = json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


# -- tape simulation ---------------------------------------------------------

@dataclass(frozen=True)
class _CrossRef:
    event_index: int
    ll: int  # segment entering at pos (left-lower end)
    lu: int  # segment entering at pos+1
    rl: int  # segment leaving at pos
    ru: int  # segment leaving at pos+1
    d0: int  # direction of the ll-ru strand
    d1: int  # direction of the lu-rl strand
    sign: int


@dataclass(frozen=True)
class _Tape:
    width: int
    dirs0: tuple[int, ...]
    joins: tuple[tuple[int, int], ...]
    crossings: tuple[_CrossRef, ...]
    final: tuple[int, ...]
    nseg: int
    segdir: tuple[int, ...]


def _simulate(q: QuotientPattern) -> _Tape:
    """Run the event tape once, numbering strand segments.

    Segments 0..k-1 are the glue-line strands; every event output gets a
    fresh id.  Raises PatternError on any illegal event or if the tape does
    not return the boundary.
    """
    k = q.boundary_width
    if k < 0:
        raise PatternError("boundary width must be nonnegative")
    if len(q.boundary_directions) != k:
        raise PatternError(
            f"{len(q.boundary_directions)} directions for width {k}"
        )
    dirs0 = tuple(_dir_num(ch) for ch in q.boundary_directions)
    state = list(range(k))
    segdir = list(dirs0)
    joins: list[tuple[int, int]] = []
    crossings: list[_CrossRef] = []
    for idx, ev in enumerate(q.events):
        width = len(state)
        if isinstance(ev, CrossEvent):
            if not 0 <= ev.pos <= width - 2:
                raise PatternError(f"event {idx}: cross at {ev.pos}, width {width}")
            if ev.sign not in (1, -1):
                raise PatternError(f"event {idx}: sign must be +1 or -1")
            ll, lu = state[ev.pos], state[ev.pos + 1]
            d0, d1 = segdir[ll], segdir[lu]
            rl = len(segdir)
            segdir.append(d1)
            ru = len(segdir)
            segdir.append(d0)
            crossings.append(_CrossRef(idx, ll, lu, rl, ru, d0, d1, ev.sign))
            state[ev.pos], state[ev.pos + 1] = rl, ru
        elif isinstance(ev, CupEvent):
            if not 0 <= ev.pos <= width:
                raise PatternError(f"event {idx}: cup at {ev.pos}, width {width}")
            up = _dir_num(ev.upper)
            lower = len(segdir)
            segdir.append(-up)
            upper = len(segdir)
            segdir.append(up)
            joins.append((lower, upper))
            state[ev.pos : ev.pos] = [lower, upper]
        elif isinstance(ev, CapEvent):
            if not 0 <= ev.pos <= width - 2:
                raise PatternError(f"event {idx}: cap at {ev.pos}, width {width}")
            s1, s2 = state[ev.pos], state[ev.pos + 1]
            if segdir[s1] == segdir[s2]:
                raise PatternError(
                    f"event {idx}: cap needs opposite directions at {ev.pos}"
                )
            joins.append((s1, s2))
            del state[ev.pos : ev.pos + 2]
        else:
            raise PatternError(f"event {idx}: unknown event {ev!r}")
    if len(state) != k:
        raise PatternError(f"tape ends at width {len(state)}, boundary is {k}")
    if tuple(segdir[s] for s in state) != dirs0:
        raise PatternError("tape ends with directions different from the boundary")
    return _Tape(
        k, dirs0, tuple(joins), tuple(crossings), tuple(state),
        len(segdir), tuple(segdir),
    )


def validate_pattern(q: QuotientPattern) -> None:
    """Raise PatternError (with the event index) if the pattern is invalid."""
    _simulate(q)


class _MinUnionFind:
    """Union-find over 0..n-1 whose class representative is the minimum."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx


@dataclass(frozen=True)
class _Closure:
    """A closed tape (quotient for copies=1, cyclic lift otherwise)."""

    tape: _Tape
    copies: int
    diagram: LinkDiagram
    comp_count: int
    cycle_count: int
    # per global segment index (copy * nseg + seg): diagram component index
    comp_of_segment: tuple[int, ...]
    # per arc label: nothing stored; label_of_segment covers crossing ends
    label_of_root: Mapping[int, int]
    arc_root: tuple[int, ...]
    windings: tuple[int, ...]


def _closure(q: QuotientPattern, copies: int) -> _Closure:
    if copies < 1:
        raise PatternError("copies must be at least 1")
    tape = _simulate(q)
    N = tape.nseg
    k = tape.width
    total = copies * N

    arcs = _MinUnionFind(total)
    flow = _MinUnionFind(total)
    for t in range(copies):
        base = t * N
        for x, y in tape.joins:
            arcs.union(base + x, base + y)
            flow.union(base + x, base + y)
        nbase = ((t + 1) % copies) * N
        for pos in range(k):
            arcs.union(base + tape.final[pos], nbase + pos)
            flow.union(base + tape.final[pos], nbase + pos)
        for cr in tape.crossings:
            flow.union(base + cr.ll, base + cr.ru)
            flow.union(base + cr.lu, base + cr.rl)

    ends: list[int] = []
    for t in range(copies):
        base = t * N
        for cr in tape.crossings:
            ends.extend((base + cr.ll, base + cr.lu, base + cr.rl, base + cr.ru))
    arcful = sorted({arcs.find(e) for e in ends})
    label_of_root = {root: i + 1 for i, root in enumerate(arcful)}

    crossing_tuples = []
    for t in range(copies):
        base = t * N
        for cr in tape.crossings:
            ll = label_of_root[arcs.find(base + cr.ll)]
            lu = label_of_root[arcs.find(base + cr.lu)]
            rl = label_of_root[arcs.find(base + cr.rl)]
            ru = label_of_root[arcs.find(base + cr.ru)]
            if cr.sign == -cr.d0 * cr.d1:  # the ll-ru strand runs over
                tup = (lu, ll, rl, ru) if cr.d1 > 0 else (rl, ru, lu, ll)
            else:  # the lu-rl strand runs over
                tup = (ll, rl, ru, lu) if cr.d0 > 0 else (ru, lu, ll, rl)
            crossing_tuples.append((*tup, cr.sign))

    all_roots = sorted({arcs.find(i) for i in range(total)})
    free_roots = [r for r in all_roots if r not in label_of_root]
    diagram = LinkDiagram(crossing_tuples, free_loops=len(free_roots))
    lab = components(diagram)

    comp_of_flow: dict[int, int] = {}
    for e in ends:
        ci = lab.assignment[label_of_root[arcs.find(e)]]
        r = flow.find(e)
        prev = comp_of_flow.setdefault(r, ci)
        assert prev == ci, "arc cycles disagree with segment flow"
    for i, r in enumerate(free_roots):
        comp_of_flow[flow.find(r)] = len(lab.cycles) + i

    comp_of_segment = tuple(comp_of_flow[flow.find(i)] for i in range(total))
    windings = [0] * lab.count
    for t in range(copies):
        base = t * N
        for pos in range(k):
            windings[comp_of_segment[base + tape.final[pos]]] += tape.dirs0[pos]

    return _Closure(
        tape=tape,
        copies=copies,
        diagram=diagram,
        comp_count=lab.count,
        cycle_count=len(lab.cycles),
        comp_of_segment=comp_of_segment,
        label_of_root=label_of_root,
        arc_root=tuple(arcs.find(i) for i in range(total)),
        windings=tuple(windings),
    )


# -- public closure operations ----------------------------------------------

def quotient_diagram(q: QuotientPattern) -> LinkDiagram:
    """Close one copy of the tape through the glue line.

    Crossings appear in event order, so the j-th cross event becomes
    crossing j of the diagram.
    """
    return _closure(q, 1).diagram


def winding_numbers(q: QuotientPattern) -> tuple[int, ...]:
    """Signed glue-line passes of every quotient component (diagram order)."""
    return _closure(q, 1).windings


@dataclass(frozen=True)
class OrbitLabeling:
    """How the deck rotation permutes the components of a lift.

    Component indices follow the lifted diagram's labeling (arc cycles by
    smallest arc, then crossingless loops in construction order).
    orbit_of[c] is the quotient component under c; position_of[c] is the
    smallest copy index whose basepoint segment lies on c; rotation[c] is
    the component hit after one deck turn; arc_rotation maps every arc label
    of the lift to its image.
    """

    p: int
    orbit_of: tuple[int, ...]
    position_of: tuple[int, ...]
    rotation: tuple[int, ...]
    arc_rotation: Mapping[int, int]
    quotient_count: int
    lift_windings: tuple[int, ...]

    def orbit_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.quotient_count
        for orbit in self.orbit_of:
            sizes[orbit] += 1
        return tuple(sizes)


def lift(q: QuotientPattern, p: int) -> tuple[LinkDiagram, OrbitLabeling]:
    """The p-fold cyclic cover of the closed pattern.

    Concatenates p copies of the tape around the annulus; the deck rotation
    shifts copies by one.  Crossing j of copy t has diagram index
    t * (cross events) + j.
    """
    if p < 2:
        raise PatternError("p must be at least 2")
    qc = _closure(q, 1)
    lc = _closure(q, p)
    N = qc.tape.nseg
    total = p * N
    ncomp = lc.comp_count

    orbit_of = [-1] * ncomp
    for idx in range(total):
        comp = lc.comp_of_segment[idx]
        want = qc.comp_of_segment[idx % N]
        assert orbit_of[comp] in (-1, want), "orbit projection is inconsistent"
        orbit_of[comp] = want

    qbase = [-1] * qc.comp_count
    for s in range(N - 1, -1, -1):
        qbase[qc.comp_of_segment[s]] = s

    position_of = [-1] * ncomp
    for comp in range(ncomp):
        base_seg = qbase[orbit_of[comp]]
        for t in range(p):
            if lc.comp_of_segment[t * N + base_seg] == comp:
                position_of[comp] = t
                break

    rotation = [-1] * ncomp
    for idx in range(total):
        rotation[lc.comp_of_segment[idx]] = lc.comp_of_segment[(idx + N) % total]

    arc_rotation = {
        label: lc.label_of_root[lc.arc_root[(root + N) % total]]
        for root, label in lc.label_of_root.items()
    }

    labeling = OrbitLabeling(
        p=p,
        orbit_of=tuple(orbit_of),
        position_of=tuple(position_of),
        rotation=tuple(rotation),
        arc_rotation=arc_rotation,
        quotient_count=qc.comp_count,
        lift_windings=lc.windings,
    )
    return lc.diagram, labeling


def is_strongly_periodic(q: QuotientPattern, p: int) -> bool:
    """Whether the p-lift has p times the quotient's components.

    Equivalent to every quotient winding being divisible by p; when true the
    deck action is checked to be free on components as a cross-check.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    w = winding_numbers(q)
    if any(x % p for x in w):
        return False
    d, lab = lift(q, p)
    assert all(s == p for s in lab.orbit_sizes()), "orbit is not free"
    assert components(d).count == p * len(w), "component count mismatch"
    return True


def is_orbitally_separated(q: QuotientPattern) -> bool:
    """Whether all pairwise quotient linking numbers vanish."""
    m = linking_matrix(quotient_diagram(q)).entries
    n = len(m)
    return all(m[i][j] == 0 for i in range(n) for j in range(n) if i != j)


def is_os_strongly_periodic(q: QuotientPattern, p: int) -> bool:
    """Strongly periodic with all pairwise quotient linking numbers zero."""
    return is_strongly_periodic(q, p) and is_orbitally_separated(q)


# -- event surgery -----------------------------------------------------------

def _require_cross(q: QuotientPattern, event_index: int) -> CrossEvent:
    if not 0 <= event_index < len(q.events):
        raise PatternError(f"no event with index {event_index}")
    ev = q.events[event_index]
    if not isinstance(ev, CrossEvent):
        raise PatternError(f"event {event_index} is not a crossing")
    return ev


def set_event_sign(q: QuotientPattern, event_index: int, sign: int) -> QuotientPattern:
    """Copy of the pattern with one crossing event's sign replaced."""
    ev = _require_cross(q, event_index)
    if sign not in (1, -1):
        raise PatternError("sign must be +1 or -1")
    events = list(q.events)
    events[event_index] = CrossEvent(ev.pos, sign)
    return QuotientPattern(q.boundary_width, q.boundary_directions, tuple(events))


def smooth_event(q: QuotientPattern, event_index: int) -> QuotientPattern:
    """Replace one crossing event by its oriented smoothing.

    Parallel strands just stop crossing (the event disappears); antiparallel
    strands turn back: a cap followed by a cup reopening the tape with the
    original directions.
    """
    _require_cross(q, event_index)
    tape = _simulate(q)
    ref = next(cr for cr in tape.crossings if cr.event_index == event_index)
    events = list(q.events)
    pos = q.events[event_index].pos
    if ref.d0 == ref.d1:
        del events[event_index]
    else:
        events[event_index : event_index + 1] = [
            CapEvent(pos),
            CupEvent(pos, _dir_letter(ref.d0)),
        ]
    return QuotientPattern(q.boundary_width, q.boundary_directions, tuple(events))


def cross_event_rank(q: QuotientPattern, event_index: int) -> int:
    """Diagram crossing index (within one copy) of a crossing event."""
    _require_cross(q, event_index)
    return sum(
        1 for ev in q.events[:event_index] if isinstance(ev, CrossEvent)
    )


@dataclass(frozen=True)
class EquivariantTriple:
    """Lifts with the designated quotient crossing set to +, to -, smoothed.

    All three share the deck symmetry; they differ only inside the p lifted
    copies of the changed crossing's neighborhood.
    """

    plus: LinkDiagram
    minus: LinkDiagram
    zero: LinkDiagram
    plus_labeling: OrbitLabeling
    minus_labeling: OrbitLabeling
    zero_labeling: OrbitLabeling
    event_index: int
    p: int


def equivariant_triple(
    q: QuotientPattern, event_index: int, p: int
) -> EquivariantTriple:
    """Build the three lifts around one designated crossing event."""
    _require_cross(q, event_index)
    plus, plus_lab = lift(set_event_sign(q, event_index, 1), p)
    minus, minus_lab = lift(set_event_sign(q, event_index, -1), p)
    zero, zero_lab = lift(smooth_event(q, event_index), p)
    return EquivariantTriple(
        plus, minus, zero, plus_lab, minus_lab, zero_lab, event_index, p
    )


# -- classification -----------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class TypeMDecomposition:
    """A lift split into m paired invariant components plus a periodic part.

    invariant_pairs and periodic_part hold lifted component indices;
    quotient_pairs and quotient_periodic the corresponding quotient indices.
    """

    p: int
    m: int
    invariant_pairs: tuple[tuple[int, int], ...]
    periodic_part: tuple[int, ...]
    quotient_pairs: tuple[tuple[int, int], ...]
    quotient_periodic: tuple[int, ...]


def classify_type_m(q: QuotientPattern, p: int) -> TypeMDecomposition | None:
    """Decompose the p-lift into paired invariant components and a strongly
    periodic rest, or return None.

    Components whose quotient winding is divisible by p form the periodic
    part; it must be algebraically split (pairwise quotient linking zero).
    The rest must admit a perfect matching where paired windings cancel
    mod p and linking with every periodic component cancels exactly.  m is
    the number of pairs; m = 0 means the whole lift is strongly periodic
    with the split condition.
    """
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    qc = _closure(q, 1)
    w = qc.windings
    lkq = linking_matrix(qc.diagram).entries
    periodic = [i for i, wi in enumerate(w) if wi % p == 0]
    variant = [i for i, wi in enumerate(w) if wi % p != 0]
    for a in periodic:
        for b in periodic:
            if a < b and lkq[a][b] != 0:
                return None
    if len(variant) % 2:
        return None

    def compatible(i: int, j: int) -> bool:
        if (w[i] + w[j]) % p != 0:
            return False
        return all(lkq[i][l] == -lkq[j][l] for l in periodic)

    def match(pool: tuple[int, ...]):
        if not pool:
            return ()
        i = pool[0]
        for j in pool[1:]:
            if compatible(i, j):
                rest = match(tuple(x for x in pool[1:] if x != j))
                if rest is not None:
                    return ((i, j),) + rest
        return None

    pairs = match(tuple(variant))
    if pairs is None:
        return None

    d, lab = lift(q, p)
    by_orbit: dict[int, list[int]] = {}
    for comp, orbit in enumerate(lab.orbit_of):
        by_orbit.setdefault(orbit, []).append(comp)
    invariant_pairs = []
    for i, j in pairs:
        (ci,) = by_orbit[i]
        (cj,) = by_orbit[j]
        invariant_pairs.append((ci, cj))
    periodic_lifted = tuple(
        sorted(c for orbit in periodic for c in by_orbit.get(orbit, []))
    )
    return TypeMDecomposition(
        p=p,
        m=len(pairs),
        invariant_pairs=tuple(invariant_pairs),
        periodic_part=periodic_lifted,
        quotient_pairs=pairs,
        quotient_periodic=tuple(periodic),
    )


# -- random generation ---------------------------------------------------------

@dataclass(frozen=True)
class PatternConfig:
    """Constraints for random_pattern.

    boundary_directions fixes the boundary when given, otherwise directions
    are drawn per attempt.  require_strong demands all windings divisible by
    p; require_os additionally demands pairwise quotient linking zero.
    """

    boundary_width: int
    event_count: int
    p: int | None = None
    require_os: bool = False
    require_strong: bool = False
    boundary_directions: tuple[str, ...] | None = None


def _random_tape(
    rng: random.Random, dirs0: tuple[int, ...], count: int
) -> tuple[Event, ...] | None:
    """One uniform draw of a legal event sequence, or None at a dead end.

    Each step picks uniformly among events that keep the final width
    reachable (width changes by at most 2 per remaining event); the boundary
    direction sequence is checked by the caller.
    """
    k = len(dirs0)
    state = list(dirs0)
    events: list[Event] = []
    for step in range(count):
        remaining = count - step - 1
        w = len(state)
        options: list[Event] = []
        if abs(w - k) <= 2 * remaining:
            for pos in range(w - 1):
                options.append(CrossEvent(pos, 1))
                options.append(CrossEvent(pos, -1))
        if abs(w + 2 - k) <= 2 * remaining:
            for pos in range(w + 1):
                options.append(CupEvent(pos, "R"))
                options.append(CupEvent(pos, "L"))
        if abs(w - 2 - k) <= 2 * remaining:
            for pos in range(w - 1):
                if state[pos] != state[pos + 1]:
                    options.append(CapEvent(pos))
        if not options:
            return None
        ev = options[rng.randrange(len(options))]
        if isinstance(ev, CrossEvent):
            state[ev.pos], state[ev.pos + 1] = state[ev.pos + 1], state[ev.pos]
        elif isinstance(ev, CupEvent):
            up = _dir_num(ev.upper)
            state[ev.pos : ev.pos] = [-up, up]
        else:
            del state[ev.pos : ev.pos + 2]
        events.append(ev)
    if tuple(state) != dirs0:
        return None
    return tuple(events)


def random_pattern(
    config: PatternConfig,
    seed: int | str | random.Random = 0,
    *,
    max_attempts: int = 20000,
) -> QuotientPattern:
    """Rejection-sample a valid pattern meeting the config's constraints.

    Deterministic for a given seed.  Raises GenerationError with rejection
    tallies when max_attempts draws all fail.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(f"pattern:{seed}")
    k = config.boundary_width
    p = config.p
    if config.require_strong and (p is None or p < 2):
        raise ValueError("require_strong needs p >= 2")
    reasons = {"dead_end": 0, "boundary": 0, "strong": 0, "os": 0, "winding_sum": 0}
    for _ in range(max_attempts):
        if config.boundary_directions is not None:
            dirs = tuple(config.boundary_directions)
        else:
            dirs = tuple(rng.choice("RL") for _ in range(k))
        dirs0 = tuple(_dir_num(ch) for ch in dirs)
        if config.require_strong and sum(dirs0) % p != 0:
            reasons["winding_sum"] += 1
            continue
        drawn = _random_tape(rng, dirs0, config.event_count)
        if drawn is None:
            reasons["dead_end" if len(dirs0) != k else "boundary"] += 1
            # _random_tape returns None both on dead ends and on a final
            # direction mismatch; the tally split is heuristic only
            continue
        q = QuotientPattern(k, dirs, drawn)
        if config.require_strong:
            if any(x % p for x in winding_numbers(q)):
                reasons["strong"] += 1
                continue
        if config.require_os:
            m = linking_matrix(quotient_diagram(q)).entries
            n = len(m)
            if any(
                m[i][j] for i in range(n) for j in range(n) if i != j
            ):
                reasons["os"] += 1
                continue
        return q
    raise GenerationError(
        f"no pattern for {config} after {max_attempts} attempts; rejections {reasons}"
    )


def make_type_m_pattern(
    m: int,
    p: int,
    seed: int | str = 0,
    *,
    os_part: bool = False,
    extra_crossings: int = 4,
    max_attempts: int = 500,
) -> QuotientPattern:
    """A pattern whose p-lift decomposes with exactly m invariant pairs.

    Builds 2m seam strands with alternating directions (each pair winds
    +1/-1), optionally one winding-zero component as a periodic part, and
    decorates with random crossings; draws are rejected until the
    classification returns m.  The undecorated template always passes, so
    the search terminates.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    rng = random.Random(f"typem:{m}:{p}:{os_part}:{seed}")
    width = 2 * m + (2 if os_part else 0)
    dirs = ("R", "L") * (width // 2)
    tail: tuple[Event, ...] = ()
    if os_part:
        tail = (CapEvent(width - 2), CupEvent(width - 2, "L"))
    for attempt in range(max_attempts):
        ncross = 0 if attempt == max_attempts - 1 else rng.randrange(extra_crossings + 1)
        events: list[Event] = []
        state = [_dir_num(ch) for ch in dirs]
        ok = True
        for _ in range(ncross):
            pos = rng.randrange(width - 1)
            sign = rng.choice((1, -1))
            events.append(CrossEvent(pos, sign))
            state[pos], state[pos + 1] = state[pos + 1], state[pos]
        if [_dir_num(ch) for ch in dirs] != state:
            continue
        q = QuotientPattern(width, dirs, tuple(events) + tail)
        try:
            validate_pattern(q)
        except PatternError:
            continue
        decomp = classify_type_m(q, p)
        if decomp is not None and decomp.m == m:
            if os_part and not decomp.quotient_periodic:
                continue
            return q
    raise GenerationError(f"no type-{m} pattern found in {max_attempts} attempts")
