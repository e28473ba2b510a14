"""Every available kernel must compute identically, bit for bit.

The compiled extension and the pure-Python module implement the same
algorithm move for move; these tests pin that equivalence on corpus
diagrams, random closures, and lifted diagrams, including the memo keys,
so a cache written by one kernel is valid for the other.
"""

import random

import pytest

from conwaylab import (
    PatternConfig,
    ResourceLimitError,
    available_kernels,
    canonical_code,
    conway,
    default_kernel_name,
    lift,
    parse_pd,
    quotient_diagram,
    random_pattern,
    simplify,
)
from conwaylab._kernel import get_kernel

from tests.oracles import braid_closure
from tests.test_skein import BORROMEAN_WORD, CORPUS

pytestmark = pytest.mark.skipif(
    len(available_kernels()) < 2, reason="only one kernel built"
)


def _sample_diagrams():
    out = [parse_pd(pd) for pd, _ in CORPUS.values()]
    out.append(braid_closure(BORROMEAN_WORD, 3))
    rng = random.Random("kernel-pairs")
    for _ in range(10):
        q = random_pattern(
            PatternConfig(boundary_width=rng.randint(1, 3),
                          event_count=rng.randint(2, 6)),
            seed=rng.randrange(2**32),
        )
        out.append(quotient_diagram(q))
        out.append(lift(q, 3)[0])
    return out


def test_kernel_registry():
    assert set(available_kernels()) == {"compiled", "pure"}
    assert default_kernel_name() == "compiled"
    assert get_kernel("pure").KERNEL_NAME == "pure"
    assert get_kernel("compiled").KERNEL_NAME == "compiled"
    with pytest.raises(ValueError):
        get_kernel("turbo")


def test_kernels_agree_everywhere():
    for d in _sample_diagrams():
        assert conway(d, kernel="pure") == conway(d, kernel="compiled")
        assert canonical_code(d, kernel="pure") == canonical_code(d, kernel="compiled")
        flat, fl = d.flat(), d.free_loops
        assert get_kernel("pure").simplify(flat, fl) == \
            get_kernel("compiled").simplify(flat, fl)


def test_memo_entries_are_interchangeable():
    d = braid_closure(BORROMEAN_WORD, 3)
    memo_pure: dict = {}
    memo_compiled: dict = {}
    conway(d, kernel="pure", cache=memo_pure)
    conway(d, kernel="compiled", cache=memo_compiled)
    assert memo_pure == memo_compiled
    # cross-feed: each kernel accepts the other's warm cache
    assert conway(d, kernel="compiled", cache=memo_pure).coeffs == (0, 0, 0, 0, 1)
    assert conway(d, kernel="pure", cache=memo_compiled).coeffs == (0, 0, 0, 0, 1)


@pytest.mark.parametrize("kernel", ["pure", "compiled"])
def test_resource_limits_per_kernel(kernel):
    tref = parse_pd(CORPUS["trefoil"][0])
    with pytest.raises(ResourceLimitError, match="ceiling is 1"):
        conway(tref, kernel=kernel, max_crossings=1)
    with pytest.raises(ResourceLimitError, match="node budget"):
        conway(tref, kernel=kernel, max_nodes=1)
    with pytest.raises(ResourceLimitError, match="deadline"):
        conway(tref, kernel=kernel, time_limit=0.0)


@pytest.mark.parametrize("kernel", ["pure", "compiled"])
def test_open_diagram_is_rejected_not_crashed(kernel):
    # arc 4 leaves two crossings: no closed traversal exists
    bad = ((1, 4, 2, 5, 1), (3, 6, 4, 1, 1), (5, 2, 6, 3, 1))
    with pytest.raises((ValueError, KeyError)):
        get_kernel(kernel).conway_coeffs(bad, 0)


def test_kernel_env_override(monkeypatch):
    monkeypatch.setenv("CONWAYLAB_KERNEL", "pure")
    assert get_kernel().KERNEL_NAME == "pure"
    assert default_kernel_name() == "pure"
    monkeypatch.setenv("CONWAYLAB_KERNEL", "compiled")
    assert get_kernel().KERNEL_NAME == "compiled"
    monkeypatch.delenv("CONWAYLAB_KERNEL")
    assert get_kernel().KERNEL_NAME == "compiled"


def test_simplify_goes_through_selected_kernel():
    kink = parse_pd("X[1,2,2,1]")
    out = simplify(kink)
    assert len(out) == 0 and out.free_loops == 1
