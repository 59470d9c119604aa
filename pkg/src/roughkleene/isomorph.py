"""Isomorphism search and canonical forms for small binary relations.

A relation on n points is given as row masks: rows[i] has bit j set iff
i R j.  Posets pass their order relation, tolerance graphs their adjacency.
Color refinement narrows the search; backtracking finishes it.  Everything
is deterministic, so canonical keys are stable across runs.
"""

from __future__ import annotations

from .posets import bits


def _transpose(n, rows):
    cols = [0] * n
    for i in range(n):
        m = rows[i]
        while m:
            low = m & -m
            cols[low.bit_length() - 1] |= 1 << i
            m ^= low
    return tuple(cols)


def _refine(n, rows, cols, colors):
    """Iterate (color, out-colors, in-colors) until the partition stabilizes."""
    while True:
        keys = []
        for i in range(n):
            outs = sorted(colors[j] for j in bits(rows[i]))
            ins = sorted(colors[j] for j in bits(cols[i]))
            keys.append((colors[i], tuple(outs), tuple(ins)))
        ranks = {k: c for c, k in enumerate(sorted(set(keys)))}
        new = tuple(ranks[k] for k in keys)
        if new == colors:
            return new
        colors = new


def canonical_key(n, rows):
    """A total invariant: two relations have equal keys iff they are isomorphic.

    Individualization-refinement DFS choosing, at each depth, every vertex of
    the minimal color class, keeping the lexicographically least encoding.
    """
    if n == 0:
        return (0,)
    rows = tuple(rows)
    cols = _transpose(n, rows)
    base = _refine(n, rows, cols, (0,) * n)
    best = None

    def encode_step(v, order):
        word = [rows[v] >> v & 1]
        for u in order:
            word.append(rows[u] >> v & 1)
            word.append(rows[v] >> u & 1)
        return tuple(word)

    def walk(order, placed, colors, prefix):
        nonlocal best
        d = len(order)
        if d == n:
            key = tuple(prefix)
            if best is None or key < best:
                best = key
            return
        avail = [v for v in range(n) if not placed >> v & 1]
        low = min(colors[v] for v in avail)
        for v in avail:
            if colors[v] != low:
                continue
            step = encode_step(v, order)
            if best is not None:
                cand = tuple(prefix + [step])
                if cand > best[: d + 1]:
                    continue
            forced = list(colors)
            forced[v] = n + d
            walk(
                order + [v],
                placed | 1 << v,
                _refine(n, rows, cols, tuple(forced)),
                prefix + [step],
            )

    walk([], 0, base, [])
    return (n,) + best


def isomorphisms(n_a, rows_a, n_b, rows_b, respecting=()):
    """Yield all bijections f with a R b iff f(a) R' f(b).

    respecting: pairs of unary tables (op_a, op_b) that f must intertwine,
    f(op_a[x]) == op_b[f(x)].
    """
    if n_a != n_b:
        return
    n = n_a
    cols_a = _transpose(n, rows_a)
    cols_b = _transpose(n, rows_b)
    col_a = _refine(n, rows_a, cols_a, (0,) * n)
    col_b = _refine(n, rows_b, cols_b, (0,) * n)
    if sorted(col_a) != sorted(col_b):
        return
    order = sorted(range(n), key=lambda v: (col_a[v], v))
    f = [-1] * n
    used = 0

    def ok(a, b):
        if col_a[a] != col_b[b]:
            return False
        for a2 in order:
            b2 = f[a2]
            if b2 < 0:
                continue
            if (rows_a[a] >> a2 & 1) != (rows_b[b] >> b2 & 1):
                return False
            if (rows_a[a2] >> a & 1) != (rows_b[b2] >> b & 1):
                return False
        for op_a, op_b in respecting:
            if f[op_a[a]] >= 0 and f[op_a[a]] != op_b[b]:
                return False
        return True

    def place(k):
        nonlocal used
        if k == n:
            for op_a, op_b in respecting:
                if any(f[op_a[x]] != op_b[f[x]] for x in range(n)):
                    return
            yield tuple(f)
            return
        a = order[k]
        for b in range(n):
            if used >> b & 1 or not ok(a, b):
                continue
            f[a] = b
            used |= 1 << b
            yield from place(k + 1)
            f[a] = -1
            used ^= 1 << b

    yield from place(0)


def find_isomorphism(n_a, rows_a, n_b, rows_b, respecting=()):
    return next(isomorphisms(n_a, rows_a, n_b, rows_b, respecting), None)


def lattice_isomorphism(lat_a, lat_b, respecting=()):
    """Order-isomorphism between two lattices (hence a lattice isomorphism)."""
    return find_isomorphism(
        lat_a.n, lat_a.poset.above, lat_b.n, lat_b.poset.above, respecting
    )


def lattice_key(lat):
    return canonical_key(lat.n, lat.poset.above)
