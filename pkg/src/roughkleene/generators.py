"""Exhaustive and random instance generators for the sweep harnesses.

Exhaustive families are produced in a fixed deterministic order so failures
are reproducible: tolerances by edge-mask encoding, coverings as antichain
families in lexicographic order, lattices by a canonical growth procedure.
"""

from __future__ import annotations

from itertools import combinations

from .isomorph import canonical_key
from .posets import Lattice, Poset, mask_of
from .rough import Covering, Tolerance, is_irredundant


def edge_list(n):
    return list(combinations(range(n), 2))


def tolerance_from_encoding(n, enc, labels=None) -> Tolerance:
    """Decode an edge-mask integer into a tolerance on n points."""
    labels = labels or [str(i) for i in range(n)]
    nbr = [1 << x for x in range(n)]
    for b, (i, j) in enumerate(edge_list(n)):
        if enc >> b & 1:
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
    return Tolerance(labels, nbr)


def all_tolerances(n):
    """Every tolerance on n labeled points, by ascending edge-mask encoding."""
    m = len(edge_list(n))
    for enc in range(1 << m):
        yield enc, tolerance_from_encoding(n, enc)


def all_partitions(n):
    """Every partition of n labeled points (restricted-growth strings)."""
    labels = [str(i) for i in range(n)]

    def grow(prefix, used):
        if len(prefix) == n:
            blocks = [0] * used
            for i, c in enumerate(prefix):
                blocks[c] |= 1 << i
            yield Covering(labels, blocks)
            return
        for c in range(used + 1):
            yield from grow(prefix + [c], max(used, c + 1))

    if n:
        yield from grow([], 0)


def antichain_coverings(n):
    """Every covering of n labeled points that is an antichain of subsets.

    Families with one member inside another are redundant by inspection, so
    this is the natural search space for irredundance: it contains every
    irredundant covering together with redundant antichains that exercise
    the negative path.
    """
    full = (1 << n) - 1
    subsets = list(range(1, 1 << n))

    def grow(start, family, union):
        if union == full and family:
            yield Covering([str(i) for i in range(n)], family)
        for idx in range(start, len(subsets)):
            s = subsets[idx]
            if any(s & ~t == 0 or t & ~s == 0 for t in family):
                continue
            yield from grow(idx + 1, family + [s], union | s)

    if n:
        yield from grow(0, [], 0)


def irredundant_coverings(n):
    for cov in antichain_coverings(n):
        if is_irredundant(cov).irredundant:
            yield cov


def _downsets_of(below):
    n = len(below)
    out = []
    for s in range(1 << n):
        ok = True
        m = s
        while m:
            low = m & -m
            if below[low.bit_length() - 1] & ~s:
                ok = False
                break
            m ^= low
        if ok:
            out.append(s)
    return out


def _is_meet_semilattice(below):
    index = set(below)
    n = len(below)
    for i in range(n):
        for j in range(i + 1, n):
            if below[i] & below[j] not in index:
                return False
    return True


def _grow_semilattices(max_size):
    """All meet-semilattices with bottom, up to iso, with at most max_size
    elements.  Grown by repeatedly adjoining a maximal element whose strict
    lower set is a downset containing the bottom."""
    seed = (1,)  # the one-point semilattice
    level = {canonical_key(1, seed): seed}
    yield seed
    for size in range(2, max_size + 1):
        nxt = {}
        for below in level.values():
            k = len(below)
            for d in _downsets_of(below):
                if not d & 1:
                    continue  # must lie above the bottom (element 0)
                cand = below + (d | 1 << k,)
                if not _is_meet_semilattice(cand):
                    continue
                key = canonical_key(k + 1, cand)
                if key not in nxt:
                    nxt[key] = cand
        level = nxt
        yield from level.values()


def all_lattices(max_size):
    """Every lattice with at most max_size elements, up to isomorphism.

    A lattice minus its top is a meet-semilattice with bottom, and adjoining
    a fresh top to any such semilattice gives a lattice, so the two families
    biject and no dedup across the adjunction is needed.
    """
    if max_size >= 1:
        yield Lattice.from_poset(Poset(["0"], (1,)))
    for below in _grow_semilattices(max_size - 1):
        k = len(below)
        labels = [f"e{i}" for i in range(k)] + ["top"]
        ext = tuple(below) + ((1 << (k + 1)) - 1,)
        yield Lattice.from_poset(Poset(labels, ext))


def _grow_posets_bounded(max_points, max_downsets):
    """All posets, up to iso, whose downset count stays within max_downsets."""
    empty = ()
    yield empty
    level = {(): empty}
    for size in range(1, max_points + 1):
        nxt = {}
        for below in level.values():
            k = len(below)
            ds = _downsets_of(below)
            if len(ds) + 1 > max_downsets:
                continue
            for d in ds:
                cand = below + (d | 1 << k,)
                if len(_downsets_of(cand)) > max_downsets:
                    continue
                key = canonical_key(k + 1, cand)
                if key not in nxt:
                    nxt[key] = cand
        level = nxt
        yield from level.values()


def all_distributive_lattices(max_size):
    """Every distributive lattice with at most max_size elements, up to iso,
    realized as the downset lattice of a small poset."""
    for below in _grow_posets_bounded(max_size - 1, max_size):
        n = len(below)
        ds = _downsets_of(below)
        if len(ds) > max_size:
            continue
        ds.sort(key=lambda d: (d.bit_count(), d))
        index = {d: i for i, d in enumerate(ds)}
        lab = [f"d{i}" for i in range(len(ds))]
        lat_below = [mask_of(index[d] for d in ds if d & ~e == 0) for e in ds]
        yield Lattice.from_poset(Poset(lab, lat_below))


def product_of_chains(sizes):
    """The product lattice of chains with the given lengths."""
    points = [()]
    for s in sizes:
        points = [p + (v,) for p in points for v in range(s)]
    points.sort()
    index = {p: i for i, p in enumerate(points)}
    below = [
        mask_of(index[q] for q in points if all(a <= b for a, b in zip(q, p)))
        for p in points
    ]
    labels = ["".join(map(str, p)) if p else "()" for p in points]
    return Lattice.from_poset(Poset(labels, below))


def random_two_level_structure(rng, max_atoms=5, max_ji=10):
    """A random two-level join-irreducible poset with an antitone involution.

    Atoms split into fixed points and paired atoms; each paired atom a gets
    an upper partner above it, and a random symmetric similarity among the
    paired atoms decides which other atoms sit below which partners.
    Returns (poset, involution) ready for the downset construction.
    """
    m = rng.randint(1, max_atoms)
    max_paired = min(m, max_ji - m)
    s = rng.randint(0, max_paired)
    paired = sorted(rng.sample(range(m), s))
    simeq = {(a, a) for a in paired}
    for i, a in enumerate(paired):
        for b in paired[i + 1 :]:
            if rng.random() < 0.5:
                simeq.add((a, b))
                simeq.add((b, a))
    labels = [f"a{i}" for i in range(m)] + [f"u{a}" for a in paired]
    upper_of = {a: m + i for i, a in enumerate(paired)}
    covers = [(b, upper_of[a]) for (a, b) in simeq]
    jposet = Poset.from_covers(labels, sorted(set(covers)))
    g = {i: i for i in range(m + s)}
    for a in paired:
        g[a], g[upper_of[a]] = upper_of[a], a
    return jposet, g
