# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled skein kernel.

Same interchange form and algorithms as the pure kernel, move for move:
the two must return identical coefficient tuples and canonical codes so
memo files can be shared between them.  Arc labels are compressed to a
dense 1..m range once per entry point (every result is invariant under
order-preserving relabeling), after which face scanning, strand tracing,
union-find relabeling and canonical encoding run on C integer buffers.
Coefficient arithmetic stays in Python integers; it is a few operations
per recursion node and must not overflow.
"""

import array
from time import monotonic

from cpython cimport array

from conwaylab.errors import ResourceLimitError

KERNEL_NAME = "compiled"

cdef array.array _INT = array.array("i", [])


cdef inline array.array _buf(Py_ssize_t n, bint zero):
    return array.clone(_INT, n, zero)


cdef array.array _iota(int n):
    cdef array.array out = array.clone(_INT, n, False)
    cdef int[::1] v = out
    cdef int i
    for i in range(n):
        v[i] = i
    return out


# -- small helpers -----------------------------------------------------------

cdef inline int _find(int[::1] parent, int x):
    cdef int root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline void _union(int[::1] parent, int x, int y):
    cdef int rx = _find(parent, x), ry = _find(parent, y), t
    if rx == ry:
        return
    if ry < rx:
        t = rx
        rx = ry
        ry = t
    parent[ry] = rx


cdef tuple _compress(tuple xs):
    """Rename arcs to 1..m preserving order; return (buffer, original labels).

    Also rejects non-closed input: every internal loop indexes buffers by
    arc label on the assumption that each arc enters exactly one crossing
    and leaves exactly one, so that invariant is enforced here, at the
    boundary, instead of per node.
    """
    cdef int n = len(xs)
    labels = sorted({arc for x in xs for arc in (x[0], x[1], x[2], x[3])})
    lookup = {lab: i + 1 for i, lab in enumerate(labels)}
    cdef int m = len(labels)
    cdef array.array out = _buf(5 * n, False)
    cdef array.array incnt = _buf(m + 1, True)
    cdef array.array outcnt = _buf(m + 1, True)
    cdef int[::1] q = out
    cdef int[::1] inc = incnt
    cdef int[::1] outc = outcnt
    cdef int i = 0, arc, s
    for x in xs:
        q[5 * i] = lookup[x[0]]
        q[5 * i + 1] = lookup[x[1]]
        q[5 * i + 2] = lookup[x[2]]
        q[5 * i + 3] = lookup[x[3]]
        q[5 * i + 4] = x[4]
        s = q[5 * i + 4]
        inc[q[5 * i]] += 1
        outc[q[5 * i + 2]] += 1
        if s > 0:
            inc[q[5 * i + 3]] += 1
            outc[q[5 * i + 1]] += 1
        else:
            inc[q[5 * i + 1]] += 1
            outc[q[5 * i + 3]] += 1
        i += 1
    for arc in range(1, m + 1):
        if inc[arc] != 1 or outc[arc] != 1:
            raise ValueError(
                f"arc {labels[arc - 1]} does not enter and leave exactly one "
                f"crossing; the kernel needs a closed diagram"
            )
    return out, labels


cdef void _trace_c(int[::1] q, int n, int[::1] succ, int[::1] pci, int[::1] pund, int m):
    """succ: arc -> next arc (-1 if absent); pci/pund: crossing index, under flag."""
    cdef int i, a, b, c, d, s, oi, oo
    for i in range(m + 1):
        succ[i] = -1
    for i in range(n):
        a = q[5 * i]
        b = q[5 * i + 1]
        c = q[5 * i + 2]
        d = q[5 * i + 3]
        s = q[5 * i + 4]
        if s > 0:
            oi = d
            oo = b
        else:
            oi = b
            oo = d
        succ[a] = c
        pci[a] = i
        pund[a] = 1
        succ[oi] = oo
        pci[oi] = i
        pund[oi] = 0


cdef tuple _cycles_and_first_bad(int[::1] q, int n, int m):
    """(number of arc cycles, first bad crossing in traversal order or -1)."""
    cdef array.array sbuf = _buf(m + 1, False)
    cdef array.array cbuf = _buf(m + 1, False)
    cdef array.array ubuf = _buf(m + 1, False)
    cdef array.array seenbuf = _buf(m + 1, True)
    cdef array.array visbuf = _buf(n if n else 1, True)
    cdef int[::1] succ = sbuf
    cdef int[::1] pci = cbuf
    cdef int[::1] pund = ubuf
    cdef int[::1] seen = seenbuf
    cdef int[::1] visited = visbuf
    cdef int ncyc = 0, first_bad = -1, a0, x, ci
    _trace_c(q, n, succ, pci, pund, m)
    for a0 in range(m + 1):
        if succ[a0] < 0 or seen[a0]:
            continue
        ncyc += 1
        x = a0
        while not seen[x]:
            seen[x] = 1
            ci = pci[x]
            if not visited[ci]:
                visited[ci] = 1
                if pund[x] == 0 and first_bad < 0:
                    first_bad = ci
            x = succ[x]
    return ncyc, first_bad


cdef array.array _switch_c(int[::1] q, int n, int ci):
    cdef array.array out = _buf(5 * n, False)
    cdef int[::1] o = out
    cdef int i, a, b, c, d, s
    for i in range(5 * n):
        o[i] = q[i]
    a = q[5 * ci]
    b = q[5 * ci + 1]
    c = q[5 * ci + 2]
    d = q[5 * ci + 3]
    s = q[5 * ci + 4]
    if s > 0:
        o[5 * ci] = d
        o[5 * ci + 1] = a
        o[5 * ci + 2] = b
        o[5 * ci + 3] = c
        o[5 * ci + 4] = -1
    else:
        o[5 * ci] = b
        o[5 * ci + 1] = c
        o[5 * ci + 2] = d
        o[5 * ci + 3] = a
        o[5 * ci + 4] = 1
    return out


cdef tuple _relabel_c(int[::1] q, int n, int[::1] removed, int[::1] parent, int fl, int m, int keep):
    """Drop removed crossings, rename arcs to merged-class minima, and count
    classes that lost every crossing end as new free loops."""
    cdef array.array outbuf = _buf(5 * keep, False)
    cdef array.array beforebuf = _buf(m + 1, True)
    cdef array.array afterbuf = _buf(m + 1, True)
    cdef int[::1] out = outbuf
    cdef int[::1] before = beforebuf
    cdef int[::1] after = afterbuf
    cdef int i, k, r, j = 0, lost = 0
    for i in range(n):
        for k in range(4):
            before[_find(parent, q[5 * i + k])] = 1
        if not removed[i]:
            for k in range(4):
                r = _find(parent, q[5 * i + k])
                out[5 * j + k] = r
                after[r] = 1
            out[5 * j + 4] = q[5 * i + 4]
            j += 1
    for r in range(m + 1):
        if before[r] and not after[r]:
            lost += 1
    return outbuf, fl + lost


cdef tuple _smooth_c(int[::1] q, int n, int fl, int ci, int m):
    cdef array.array parentbuf = _iota(m + 1)
    cdef array.array rembuf = _buf(n, True)
    cdef int[::1] parent = parentbuf
    cdef int[::1] removed = rembuf
    cdef int a = q[5 * ci], b = q[5 * ci + 1], c = q[5 * ci + 2], d = q[5 * ci + 3]
    cdef int s = q[5 * ci + 4]
    if s > 0:
        _union(parent, a, b)
        _union(parent, d, c)
    else:
        _union(parent, a, d)
        _union(parent, b, c)
    removed[ci] = 1
    return _relabel_c(q, n, removed, parent, fl, m, n - 1)


# -- faces and simplification ------------------------------------------------

cdef void _alpha_c(int[::1] q, int n, int[::1] origin, int[::1] terminus, int[::1] alpha, int m):
    """Dart involution: alpha[4*ci + slot] is the arc's other end."""
    cdef int i, base, a, b, c, d, s, arc, o, t
    for arc in range(m + 1):
        origin[arc] = -1
        terminus[arc] = -1
    for i in range(n):
        base = 4 * i
        a = q[5 * i]
        b = q[5 * i + 1]
        c = q[5 * i + 2]
        d = q[5 * i + 3]
        s = q[5 * i + 4]
        terminus[a] = base
        origin[c] = base + 2
        if s > 0:
            origin[b] = base + 1
            terminus[d] = base + 3
        else:
            terminus[b] = base + 1
            origin[d] = base + 3
    for arc in range(m + 1):
        o = origin[arc]
        if o >= 0:
            t = terminus[arc]
            if t >= 0:
                alpha[o] = t
                alpha[t] = o


cdef tuple _simplify_c(array.array xbuf, int n, int fl, int m):
    """Kink removals and clasp-pair cancellations to exhaustion.

    Identical candidate order to the pure kernel: face orbits scanned in
    dart order, a monogon wins over a bigon, first eligible bigon kept.
    """
    cdef array.array alphabuf, ombuf, tmbuf, seenbuf, parentbuf, rembuf
    cdef int[::1] q, alpha, origin, terminus, seen, parent, removed
    cdef int ndart, dart, cur, nxt, olen, o0, o1, mono
    cdef int d1, d2, e1, e2, bd1, bd2, be1, be2, ci, sl, arc, outer1, outer2, it, dd, ee
    cdef bint has_bigon, over1, under1, over2, under2
    while n > 0:
        q = xbuf
        ndart = 4 * n
        alphabuf = _buf(ndart, False)
        ombuf = _buf(m + 1, False)
        tmbuf = _buf(m + 1, False)
        alpha = alphabuf
        origin = ombuf
        terminus = tmbuf
        _alpha_c(q, n, origin, terminus, alpha, m)
        seenbuf = _buf(ndart, True)
        seen = seenbuf
        mono = -1
        has_bigon = False
        bd1 = be1 = bd2 = be2 = -1
        for dart in range(ndart):
            if seen[dart]:
                continue
            olen = 0
            o0 = -1
            o1 = -1
            cur = dart
            while not seen[cur]:
                seen[cur] = 1
                if olen == 0:
                    o0 = cur
                elif olen == 1:
                    o1 = cur
                olen += 1
                nxt = alpha[cur]
                cur = (nxt & ~3) | ((nxt + 1) & 3)
            if olen == 1:
                mono = o0
                break
            if olen == 2 and not has_bigon:
                d1 = o0
                d2 = o1
                if (d1 >> 2) == (d2 >> 2):
                    continue
                e1 = alpha[d1]
                e2 = alpha[d2]
                if q[5 * (d1 >> 2) + (d1 & 3)] == q[5 * (d2 >> 2) + (d2 & 3)]:
                    continue
                over1 = (d1 & 1) != 0 and (e1 & 1) != 0
                under1 = (d1 & 1) == 0 and (e1 & 1) == 0
                over2 = (d2 & 1) != 0 and (e2 & 1) != 0
                under2 = (d2 & 1) == 0 and (e2 & 1) == 0
                if (over1 and under2) or (under1 and over2):
                    has_bigon = True
                    bd1 = d1
                    be1 = e1
                    bd2 = d2
                    be2 = e2
        if mono >= 0:
            ci = mono >> 2
            sl = mono & 3
            parentbuf = _iota(m + 1)
            parent = parentbuf
            _union(parent, q[5 * ci + ((sl + 1) & 3)], q[5 * ci + ((sl + 2) & 3)])
            _union(parent, q[5 * ci + ((sl + 1) & 3)], q[5 * ci + sl])
            rembuf = _buf(n, True)
            removed = rembuf
            removed[ci] = 1
            xbuf, fl = _relabel_c(q, n, removed, parent, fl, m, n - 1)
            n -= 1
            continue
        if has_bigon:
            parentbuf = _iota(m + 1)
            parent = parentbuf
            for it in range(2):
                if it == 0:
                    dd = bd1
                    ee = be1
                else:
                    dd = bd2
                    ee = be2
                arc = q[5 * (dd >> 2) + (dd & 3)]
                outer1 = q[5 * (dd >> 2) + ((dd & 3) ^ 2)]
                outer2 = q[5 * (ee >> 2) + ((ee & 3) ^ 2)]
                _union(parent, outer1, outer2)
                _union(parent, outer1, arc)
            rembuf = _buf(n, True)
            removed = rembuf
            removed[bd1 >> 2] = 1
            removed[bd2 >> 2] = 1
            xbuf, fl = _relabel_c(q, n, removed, parent, fl, m, n - 2)
            n -= 2
            continue
        break
    return xbuf, n, fl


# -- canonical codes ---------------------------------------------------------

cdef str _encode_from(int[::1] q, int[::1] succ, int[::1] pci, int start,
                      int[::1] newlab, int[::1] encset, int[::1] encountered):
    """Part code from one start arc; resets its scratch buffers before returning."""
    cdef int nl = 0, ne = 0, cur = start, x, ci, j, k, arc, a, b, c, d, s
    while cur >= 0:
        x = cur
        while newlab[x] < 0:
            newlab[x] = nl
            nl += 1
            ci = pci[x]
            if not encset[ci]:
                encset[ci] = 1
                encountered[ne] = ci
                ne += 1
            x = succ[x]
        cur = -1
        for j in range(ne):
            ci = encountered[j]
            for k in range(4):
                arc = q[5 * ci + k]
                if newlab[arc] < 0:
                    cur = arc
                    break
            if cur >= 0:
                break
    chunks = []
    for j in range(ne):
        ci = encountered[j]
        a = newlab[q[5 * ci]]
        b = newlab[q[5 * ci + 1]]
        c = newlab[q[5 * ci + 2]]
        d = newlab[q[5 * ci + 3]]
        s = q[5 * ci + 4]
        chunks.append(f"{a}.{b}.{c}.{d}.{'p' if s > 0 else 'm'}")
    code = f"{ne}:" + ",".join(chunks)
    for j in range(ne):
        ci = encountered[j]
        encset[ci] = 0
        for k in range(4):
            newlab[q[5 * ci + k]] = -1
    return code


cdef str _canon_c(int[::1] q, int n, int fl, int m):
    """Label-free faithful serialization; same format as the pure kernel."""
    if n == 0:
        return f"L{fl};"
    cdef array.array parentbuf = _iota(n)
    cdef array.array homebuf = _buf(m + 1, False)
    cdef int[::1] parent = parentbuf
    cdef int[::1] home = homebuf
    cdef int i, k, arc, r1, r2
    for i in range(m + 1):
        home[i] = -1
    for i in range(n):
        for k in range(4):
            arc = q[5 * i + k]
            if home[arc] >= 0:
                r1 = _find(parent, home[arc])
                r2 = _find(parent, i)
                if r1 != r2:
                    if r1 < r2:
                        parent[r2] = r1
                    else:
                        parent[r1] = r2
            else:
                home[arc] = i
    # parts keyed by root, in order of first appearance over ascending ci
    cdef array.array slotbuf = _buf(n, False)
    cdef int[::1] root_slot = slotbuf
    for i in range(n):
        root_slot[i] = -1
    parts = []
    for i in range(n):
        r1 = _find(parent, i)
        if root_slot[r1] < 0:
            root_slot[r1] = len(parts)
            parts.append([])
        parts[root_slot[r1]].append(i)

    cdef array.array sbuf = _buf(m + 1, False)
    cdef array.array cbuf = _buf(m + 1, False)
    cdef array.array ubuf = _buf(m + 1, False)
    cdef int[::1] succ = sbuf
    cdef int[::1] pci = cbuf
    cdef int[::1] pund = ubuf
    _trace_c(q, n, succ, pci, pund, m)

    cdef array.array nlbuf = _buf(m + 1, False)
    cdef array.array esbuf = _buf(n, True)
    cdef array.array enbuf = _buf(n, False)
    cdef array.array abuf = _buf(m + 1, True)
    cdef int[::1] newlab = nlbuf
    cdef int[::1] encset = esbuf
    cdef int[::1] in_part = abuf
    for i in range(m + 1):
        newlab[i] = -1
    codes = []
    cdef int ci
    for members in parts:
        for ci in members:
            for k in range(4):
                in_part[q[5 * ci + k]] = 1
        best = None
        for arc in range(m + 1):
            if not in_part[arc]:
                continue
            in_part[arc] = 0
            code = _encode_from(q, succ, pci, arc, newlab, encset, enbuf)
            if best is None or code < best:
                best = code
        codes.append(best)
    return f"L{fl};" + "|".join(sorted(codes))


# -- polynomial recursion ----------------------------------------------------

def _padd(a, b):
    # wraparound is off module-wide, so index the tail explicitly
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[len(out) - 1] == 0:
        out.pop()
    return tuple(out)


cdef class _Ctx:
    cdef object memo
    cdef bint has_max_nodes
    cdef long long max_nodes
    cdef bint has_deadline
    cdef double deadline
    cdef long long nodes
    cdef int m


cdef tuple _rec(_Ctx ctx, array.array xbuf, int n, int fl):
    cdef int ncyc, bad, sign, n2, fl2, sm_fl
    cdef array.array sbuf, smbuf
    cdef int[::1] q
    ctx.nodes += 1
    if ctx.has_max_nodes and ctx.nodes > ctx.max_nodes:
        raise ResourceLimitError(f"node budget {ctx.max_nodes} exhausted")
    if ctx.has_deadline and monotonic() > ctx.deadline:
        raise ResourceLimitError("deadline exceeded")
    xbuf, n2, fl2 = _simplify_c(xbuf, n, fl, ctx.m)
    n = n2
    fl = fl2
    q = xbuf
    key = None
    if ctx.memo is not None:
        key = _canon_c(q, n, fl, ctx.m)
        hit = ctx.memo.get(key)
        if hit is not None:
            return hit
    ncyc, bad = _cycles_and_first_bad(q, n, ctx.m)
    if bad < 0:
        res = (1,) if ncyc + fl == 1 else ()
    else:
        sign = q[5 * bad + 4]
        sbuf = _switch_c(q, n, bad)
        r_switch = _rec(ctx, sbuf, n, fl)
        q = xbuf
        smbuf, sm_fl = _smooth_c(q, n, fl, bad, ctx.m)
        r_smooth = _rec(ctx, smbuf, n - 1, sm_fl)
        shifted = (0,) + r_smooth if r_smooth else ()
        if sign < 0:
            shifted = tuple(-c for c in shifted)
        res = _padd(r_switch, shifted)
    if ctx.memo is not None:
        ctx.memo[key] = res
    return res


# -- public entry points -----------------------------------------------------

def simplify(xs, fl):
    """Apply kink removals and clasp-pair cancellations to exhaustion."""
    xs = tuple(map(tuple, xs))
    if not xs:
        return xs, fl
    buf, labels = _compress(xs)
    cdef int n = len(xs), m = len(labels), i
    out, n2, fl2 = _simplify_c(buf, n, int(fl), m)
    cdef int[::1] q = out
    cdef int nn = n2
    res = []
    for i in range(nn):
        res.append(
            (labels[q[5 * i] - 1], labels[q[5 * i + 1] - 1], labels[q[5 * i + 2] - 1],
             labels[q[5 * i + 3] - 1], q[5 * i + 4])
        )
    return tuple(res), fl2


def canonical_code(xs, fl):
    """Label-free faithful serialization of a diagram."""
    xs = tuple(map(tuple, xs))
    if not xs:
        return f"L{fl};"
    buf, labels = _compress(xs)
    cdef int[::1] q = buf
    return _canon_c(q, len(xs), int(fl), len(labels))


def conway_coeffs(crossings, free_loops, memo=None, max_crossings=64,
                  max_nodes=None, deadline=None):
    """Conway polynomial coefficients (ascending, trailing zeros trimmed).

    Same contract as the pure kernel: memo maps canonical codes to
    coefficient tuples and may be shared across calls; limits raise
    ResourceLimitError.
    """
    xs = tuple(map(tuple, crossings))
    if len(xs) > max_crossings:
        raise ResourceLimitError(
            f"diagram has {len(xs)} crossings, ceiling is {max_crossings}"
        )
    buf, labels = _compress(xs)
    cdef _Ctx ctx = _Ctx()
    ctx.memo = memo
    ctx.has_max_nodes = max_nodes is not None
    ctx.max_nodes = max_nodes if max_nodes is not None else 0
    ctx.has_deadline = deadline is not None
    ctx.deadline = deadline if deadline is not None else 0.0
    ctx.nodes = 0
    ctx.m = len(labels)
    return _rec(ctx, buf, len(xs), int(free_loops))
