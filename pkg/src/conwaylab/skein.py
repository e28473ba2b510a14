"""Conway polynomial of a diagram via the skein recursion.

The recursion descends toward unlinks: it simplifies, picks the first
crossing reached over-before-under in the basepoint traversal, and expands
value(D) = value(switch) +- z * value(smooth).  Subresults are memoized on
canonical diagram codes, so isotopic re-labelings of repeated fragments hit
the cache.  The heavy lifting runs in a kernel (compiled when built,
pure-Python twin otherwise); results do not depend on the kernel, on cache
reuse, or on call order.
"""

from __future__ import annotations

import json
import time
from typing import MutableMapping

from conwaylab._kernel import available_kernels, default_kernel_name, get_kernel
from conwaylab.diagram import LinkDiagram, smooth_crossing, switch_crossing
from conwaylab.errors import ResourceLimitError
from conwaylab.polynomial import IntPolynomial

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "DEFAULT_TIME_LIMIT",
    "MemoCache",
    "ResourceLimitError",
    "conway",
    "canonical_code",
    "skein_triple",
    "available_kernels",
    "default_kernel_name",
]

DEFAULT_MAX_CROSSINGS = 64
DEFAULT_TIME_LIMIT = 60.0


class MemoCache(dict):
    """Memo store mapping canonical codes to coefficient tuples.

    A plain dict with JSON persistence; safe to share between calls and
    threads (entries are only ever written with identical values, so
    last-writer-wins cannot change results).
    """

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({k: list(v) for k, v in sorted(self.items())}, fh)

    @classmethod
    def load(cls, path) -> "MemoCache":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        cache = cls()
        for k, v in raw.items():
            cache[k] = tuple(int(c) for c in v)
        return cache


def _resolve_memo(cache) -> MutableMapping | None:
    if cache is True:
        return {}
    if cache is False or cache is None:
        return None
    return cache


def conway(
    d: LinkDiagram,
    *,
    cache: MutableMapping | bool | None = True,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    max_nodes: int | None = None,
    kernel: str | None = None,
) -> IntPolynomial:
    """Conway polynomial of a diagram, exactly over the integers.

    Args:
        d: the diagram.
        cache: True for a fresh per-call memo, False/None for no memo, or a
            mapping (e.g. MemoCache) shared across calls.
        max_crossings: refuse inputs above this crossing count.
        time_limit: wall-clock budget in seconds (None = unlimited).
        max_nodes: optional recursion-node budget.
        kernel: 'pure', 'compiled' or None/'auto' for the default.

    Raises:
        ResourceLimitError: when a guardrail trips.
    """
    kern = get_kernel(kernel)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    coeffs = kern.conway_coeffs(
        d.flat(),
        d.free_loops,
        memo=_resolve_memo(cache),
        max_crossings=max_crossings,
        max_nodes=max_nodes,
        deadline=deadline,
    )
    return IntPolynomial(coeffs)


def canonical_code(d: LinkDiagram, kernel: str | None = None) -> str:
    """Label-free code identifying the diagram up to arc relabeling."""
    return get_kernel(kernel).canonical_code(d.flat(), d.free_loops)


def skein_triple(
    d: LinkDiagram, index: int
) -> tuple[LinkDiagram, LinkDiagram, LinkDiagram]:
    """The diagrams (D_plus, D_minus, D_zero) at one crossing of d.

    d itself appears in the slot matching the crossing's sign; the other is
    the switch and D_zero the oriented smoothing (which does not depend on
    which strand is on top).
    """
    c = d.crossing(index)
    other = switch_crossing(d, index)
    zero = smooth_crossing(d, index)
    return (d, other, zero) if c.sign > 0 else (other, d, zero)
