"""Independent oracles and small diagram builders for the tests.

The skein-descent oracle recomputes Conway polynomials with none of the
engine's machinery: no memoization, no simplification moves, no canonical
codes.  It locates the first descending violation by direct traversal and
recurses through the public switch/smooth surgeries.  Exponential in the
crossing number; keep inputs small.
"""

from conwaylab import (
    CrossEvent,
    IntPolynomial,
    LinkDiagram,
    QuotientPattern,
    components,
    quotient_diagram,
    smooth_crossing,
    switch_crossing,
)

_Z = IntPolynomial.monomial(1)


def first_bad_crossing(d: LinkDiagram) -> int | None:
    """First crossing reached on its over-strand when cycles are walked from
    their smallest arcs, smallest start first.  None for a descending
    diagram."""
    succ: dict[int, int] = {}
    place: dict[int, tuple[int, bool]] = {}
    for i, c in enumerate(d.crossings):
        succ[c.under_in] = c.under_out
        succ[c.over_in] = c.over_out
        place[c.under_in] = (i, True)
        place[c.over_in] = (i, False)
    seen_arcs: set[int] = set()
    seen_crossings: set[int] = set()
    for start in sorted(succ):
        cur = start
        while cur not in seen_arcs:
            seen_arcs.add(cur)
            ci, under = place[cur]
            if ci not in seen_crossings:
                seen_crossings.add(ci)
                if not under:
                    return ci
            cur = succ[cur]
    return None


def naive_conway(d: LinkDiagram) -> IntPolynomial:
    """Conway polynomial by raw skein descent; a descending diagram is an
    unlink, worth 1 precisely when it is a single circle."""
    bad = first_bad_crossing(d)
    if bad is None:
        one = components(d).count == 1
        return IntPolynomial.one() if one else IntPolynomial.zero()
    base = naive_conway(switch_crossing(d, bad))
    branch = _Z * naive_conway(smooth_crossing(d, bad))
    return base + branch if d.crossing(bad).sign > 0 else base - branch


def braid_closure(word: tuple[int, ...], width: int) -> LinkDiagram:
    """Closure of a braid word; entry +-(i+1) crosses positions i, i+1 with
    that sign."""
    events = tuple(CrossEvent(abs(g) - 1, 1 if g > 0 else -1) for g in word)
    return quotient_diagram(QuotientPattern(width, ("R",) * width, events))
