"""Pure-Python skein kernel.

Operates on the flat interchange form: a tuple of crossings
``(a, b, c, d, sign)`` (slots counterclockwise from the incoming under-arc,
under-strand a -> c, over-strand d -> b when sign is +1 and b -> d when -1)
plus a count of crossingless loops.  The compiled kernel implements the same
algorithms; both must return identical coefficient tuples and canonical
codes, which is possible because every result is invariant under
order-preserving relabeling of arcs.

Conway polynomial recursion:

1. Simplify (kinks and cancelling clasp pairs), then memoize on the
   canonical code.
2. Trace components from basepoints (the smallest arc of every cycle, cycles
   in basepoint order).  A crossing first reached along its over-strand is
   descending ("bad"); a diagram with no bad crossing is an unlink: value 1
   for a single component, else 0.
3. Otherwise recurse on the first bad crossing c:
   value(D) = value(switch(D, c)) +- z * value(smooth(D, c)),
   with + for a positive c and - for a negative one.

Switching the first bad crossing strictly reduces the number of bad
crossings for the unchanged traversal and smoothing reduces the crossing
number, so the recursion terminates.
"""

from __future__ import annotations

import time

from conwaylab.errors import ResourceLimitError

KERNEL_NAME = "pure"

Flat = tuple[tuple[int, int, int, int, int], ...]


# -- small helpers -----------------------------------------------------------

def _find(parent: dict, x: int) -> int:
    root = x
    while parent.get(root, root) != root:
        root = parent[root]
    while parent.get(x, x) != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent: dict, x: int, y: int) -> None:
    rx, ry = _find(parent, x), _find(parent, y)
    if rx == ry:
        return
    if ry < rx:
        rx, ry = ry, rx
    parent[ry] = rx


def _trace(crossings: Flat) -> tuple[dict, dict]:
    """succ: arc -> next arc along its strand; place: arc -> (ci, under?)."""
    succ: dict[int, int] = {}
    place: dict[int, tuple[int, bool]] = {}
    for ci, (a, b, c, d, s) in enumerate(crossings):
        oi, oo = (d, b) if s > 0 else (b, d)
        succ[a] = c
        succ[oi] = oo
        place[a] = (ci, True)
        place[oi] = (ci, False)
    return succ, place


def _cycles_and_first_bad(crossings: Flat) -> tuple[int, int]:
    """(number of arc cycles, first bad crossing in traversal order or -1)."""
    succ, place = _trace(crossings)
    ncyc = 0
    first_bad = -1
    seen: set[int] = set()
    visited_crossing: set[int] = set()
    for a0 in sorted(succ):
        if a0 in seen:
            continue
        ncyc += 1
        x = a0
        while x not in seen:
            seen.add(x)
            ci, under = place[x]
            if ci not in visited_crossing:
                visited_crossing.add(ci)
                if not under and first_bad < 0:
                    first_bad = ci
            x = succ[x]
    return ncyc, first_bad


def _switch(xs: Flat, ci: int) -> Flat:
    a, b, c, d, s = xs[ci]
    t = (d, a, b, c, -1) if s > 0 else (b, c, d, a, 1)
    return xs[:ci] + (t,) + xs[ci + 1 :]


def _relabel(xs: Flat, removed: set[int], parent: dict, fl: int) -> tuple[Flat, int]:
    """Drop removed crossings, rename arcs to merged-class minima, and turn
    classes that lost every crossing end into free loops."""
    out = tuple(
        (_find(parent, a), _find(parent, b), _find(parent, c), _find(parent, d), s)
        for i, (a, b, c, d, s) in enumerate(xs)
        if i not in removed
    )
    before = {_find(parent, arc) for x in xs for arc in x[:4]}
    after = {arc for x in out for arc in x[:4]}
    return out, fl + len(before - after)


def _smooth(xs: Flat, fl: int, ci: int) -> tuple[Flat, int]:
    a, b, c, d, s = xs[ci]
    parent: dict[int, int] = {}
    if s > 0:
        _union(parent, a, b)
        _union(parent, d, c)
    else:
        _union(parent, a, d)
        _union(parent, b, c)
    return _relabel(xs, {ci}, parent, fl)


# -- faces and simplification ------------------------------------------------

def _alpha(xs: Flat) -> list[int]:
    """Dart involution: alpha[4*ci + slot] is the arc's other end."""
    origin: dict[int, int] = {}
    terminus: dict[int, int] = {}
    for ci, (a, b, c, d, s) in enumerate(xs):
        base = 4 * ci
        terminus[a] = base
        origin[c] = base + 2
        if s > 0:
            origin[b] = base + 1
            terminus[d] = base + 3
        else:
            terminus[b] = base + 1
            origin[d] = base + 3
    alpha = [0] * (4 * len(xs))
    for arc, o in origin.items():
        t = terminus[arc]
        alpha[o] = t
        alpha[t] = o
    return alpha


def simplify(xs: Flat, fl: int) -> tuple[Flat, int]:
    """Apply kink removals and clasp-pair cancellations to exhaustion.

    Face orbits of sigma ∘ alpha are scanned in dart order; a monogon wins
    over a bigon, and an eligible bigon needs distinct crossings with one
    arc running over at both ends and the other under at both.  Candidate
    order is deterministic and each move removes crossings.
    """
    xs = tuple(map(tuple, xs))
    while xs:
        alpha = _alpha(xs)
        ndart = len(alpha)
        seen = [False] * ndart
        mono = -1
        bigon: tuple[int, int, int, int] | None = None
        for dart in range(ndart):
            if seen[dart]:
                continue
            orbit = []
            cur = dart
            while not seen[cur]:
                seen[cur] = True
                orbit.append(cur)
                nxt = alpha[cur]
                cur = (nxt & ~3) | ((nxt + 1) & 3)
            if len(orbit) == 1:
                mono = orbit[0]
                break
            if len(orbit) == 2 and bigon is None:
                d1, d2 = orbit
                if d1 >> 2 == d2 >> 2:
                    continue
                e1, e2 = alpha[d1], alpha[d2]
                if xs[d1 >> 2][d1 & 3] == xs[d2 >> 2][d2 & 3]:
                    continue
                over1 = (d1 & 1) and (e1 & 1)
                under1 = not (d1 & 1) and not (e1 & 1)
                over2 = (d2 & 1) and (e2 & 1)
                under2 = not (d2 & 1) and not (e2 & 1)
                if (over1 and under2) or (under1 and over2):
                    bigon = (d1, e1, d2, e2)
        if mono >= 0:
            ci, s = mono >> 2, mono & 3
            x = xs[ci]
            parent: dict[int, int] = {}
            _union(parent, x[(s + 1) % 4], x[(s + 2) % 4])
            _union(parent, x[(s + 1) % 4], x[s])
            xs, fl = _relabel(xs, {ci}, parent, fl)
            continue
        if bigon is not None:
            d1, e1, d2, e2 = bigon
            parent = {}
            for dd, ee in ((d1, e1), (d2, e2)):
                arc = xs[dd >> 2][dd & 3]
                outer1 = xs[dd >> 2][(dd & 3) ^ 2]
                outer2 = xs[ee >> 2][(ee & 3) ^ 2]
                _union(parent, outer1, outer2)
                _union(parent, outer1, arc)
            xs, fl = _relabel(xs, {d1 >> 2, d2 >> 2}, parent, fl)
            continue
        break
    return xs, fl


# -- canonical codes ---------------------------------------------------------

def canonical_code(xs: Flat, fl: int) -> str:
    """Label-free faithful serialization of a diagram.

    Per connected part, the encoding traverses strands from a start arc,
    assigning fresh labels in first-visit order and listing crossings in
    first-passage order; the part code is the minimum over all start arcs,
    and the diagram code joins the sorted part codes after the free-loop
    count.  Two diagrams get the same code iff they differ only by arc
    relabeling.
    """
    xs = tuple(map(tuple, xs))
    if not xs:
        return f"L{fl};"
    n = len(xs)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    home: dict[int, int] = {}
    for ci, x in enumerate(xs):
        for arc in x[:4]:
            if arc in home:
                r1, r2 = find(home[arc]), find(ci)
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
            else:
                home[arc] = ci
    parts: dict[int, list[int]] = {}
    for ci in range(n):
        parts.setdefault(find(ci), []).append(ci)

    succ, place = _trace(xs)
    codes = []
    for members in parts.values():
        arcs = sorted({arc for ci in members for arc in xs[ci][:4]})
        best = min(_encode_from(xs, succ, place, start) for start in arcs)
        codes.append(best)
    return f"L{fl};" + "|".join(sorted(codes))


def _encode_from(xs: Flat, succ: dict, place: dict, start: int) -> str:
    new_label: dict[int, int] = {}
    encountered: list[int] = []
    enc_set: set[int] = set()
    cur: int | None = start
    while cur is not None:
        x = cur
        while x not in new_label:
            new_label[x] = len(new_label)
            ci = place[x][0]
            if ci not in enc_set:
                enc_set.add(ci)
                encountered.append(ci)
            x = succ[x]
        cur = None
        for ci in encountered:
            for arc in xs[ci][:4]:
                if arc not in new_label:
                    cur = arc
                    break
            if cur is not None:
                break
    body = ",".join(
        "{}.{}.{}.{}.{}".format(
            new_label[a], new_label[b], new_label[c], new_label[d],
            "p" if s > 0 else "m",
        )
        for a, b, c, d, s in (xs[ci] for ci in encountered)
    )
    return f"{len(encountered)}:{body}"


# -- polynomial recursion ----------------------------------------------------

def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def conway_coeffs(
    crossings,
    free_loops: int,
    memo=None,
    max_crossings: int = 64,
    max_nodes: int | None = None,
    deadline: float | None = None,
) -> tuple[int, ...]:
    """Conway polynomial coefficients (ascending, trailing zeros trimmed).

    memo maps canonical codes to coefficient tuples and may be shared across
    calls.  Limits raise ResourceLimitError: max_crossings bounds the input,
    max_nodes the recursion tree, deadline is a time.monotonic() cutoff.
    """
    xs = tuple(map(tuple, crossings))
    if len(xs) > max_crossings:
        raise ResourceLimitError(
            f"diagram has {len(xs)} crossings, ceiling is {max_crossings}"
        )
    nodes = 0

    def rec(xs: Flat, fl: int) -> tuple[int, ...]:
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise ResourceLimitError(f"node budget {max_nodes} exhausted")
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitError("deadline exceeded")
        xs, fl = simplify(xs, fl)
        key = None
        if memo is not None:
            key = canonical_code(xs, fl)
            hit = memo.get(key)
            if hit is not None:
                return hit
        ncyc, bad = _cycles_and_first_bad(xs)
        if bad < 0:
            res = (1,) if ncyc + fl == 1 else ()
        else:
            sign = xs[bad][4]
            r_switch = rec(_switch(xs, bad), fl)
            r_smooth = rec(*_smooth(xs, fl, bad))
            shifted = (0,) + r_smooth if r_smooth else ()
            if sign < 0:
                shifted = tuple(-c for c in shifted)
            res = _padd(r_switch, shifted)
        if memo is not None:
            memo[key] = res
        return res

    return rec(xs, int(free_loops))
