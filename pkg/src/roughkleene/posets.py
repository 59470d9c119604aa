"""Finite posets and lattices over dense integer element ids.

Every set of element ids is a bitmask (an int): bit i set means element i is
in the set.  All structures are immutable after construction and every
operation is deterministic, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


class PosetError(Exception):
    pass


class NotALattice(PosetError):
    """A pair of elements has no unique glb or lub."""

    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind  # "meet" or "join"
        super().__init__(f"no unique {kind} for elements {pair}")


class SpatialityFailure(PosetError):
    """Some element is not the join of the join-irreducibles below it.

    Impossible for a finite lattice; raised only to flag corrupted input.
    """

    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} is not a join of join-irreducibles")


@dataclass(frozen=True)
class OrderReport:
    """Validation report for a would-be order relation.

    Each field holds the lexicographically first witness of a violation,
    or None when the axiom holds.
    """

    reflexivity: tuple | None
    antisymmetry: tuple | None
    transitivity: tuple | None

    @property
    def valid(self) -> bool:
        return (
            self.reflexivity is None
            and self.antisymmetry is None
            and self.transitivity is None
        )

    def violations(self) -> dict:
        out = {}
        if self.reflexivity is not None:
            out["reflexivity"] = self.reflexivity
        if self.antisymmetry is not None:
            out["antisymmetry"] = self.antisymmetry
        if self.transitivity is not None:
            out["transitivity"] = self.transitivity
        return out


def validate_order(rows: Sequence[Sequence[int]]) -> OrderReport:
    """Check that a 0/1 matrix (rows[i][j] == 1 iff i <= j) is a partial order."""
    n = len(rows)
    refl = next(((i,) for i in range(n) if not rows[i][i]), None)
    anti = next(
        (
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rows[i][j] and rows[j][i]
        ),
        None,
    )
    trans = next(
        (
            (i, j, k)
            for i in range(n)
            for j in range(n)
            if rows[i][j]
            for k in range(n)
            if rows[j][k] and not rows[i][k]
        ),
        None,
    )
    return OrderReport(refl, anti, trans)


class Poset:
    """A finite poset: n elements 0..n-1, labels, and the full order relation.

    below[i] is the bitmask of {j | j <= i}; above[i] the bitmask of {j | i <= j}.
    """

    __slots__ = ("n", "labels", "below", "above")

    def __init__(self, labels: Sequence[str], below: Sequence[int]):
        n = len(below)
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} elements")
        if len(set(labels)) != n:
            raise ValueError("labels must be pairwise distinct")
        self.n = n
        self.labels = labels
        self.below = tuple(below)
        above = [0] * n
        for j in range(n):
            for i in bits(self.below[j]):
                above[i] |= 1 << j
        self.above = tuple(above)

    @classmethod
    def from_leq(cls, labels: Sequence[str], rows: Sequence[Sequence[int]]) -> "Poset":
        report = validate_order(rows)
        if not report.valid:
            raise PosetError(f"not a partial order: {report.violations()}")
        n = len(rows)
        below = [mask_of(i for i in range(n) if rows[i][j]) for j in range(n)]
        return cls(labels, below)

    @classmethod
    def from_covers(cls, labels: Sequence[str], covers: Iterable[tuple]) -> "Poset":
        """Build from Hasse edges (i, j) meaning i is covered by j.

        The edge list is closed reflexively and transitively on load.
        """
        n = len(labels)
        below = [1 << i for i in range(n)]
        edges = [tuple(e) for e in covers]
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cover edge ({i},{j}) out of range")
        changed = True
        while changed:
            changed = False
            for i, j in edges:
                merged = below[j] | below[i]
                if merged != below[j]:
                    below[j] = merged
                    changed = True
        for i in range(n):
            for j in range(n):
                if i != j and below[j] >> i & 1 and below[i] >> j & 1:
                    raise PosetError(f"cover edges create a cycle through ({i},{j})")
        return cls(labels, below)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def covers(self) -> list:
        """All covering pairs (i, j) with i covered by j, in lex order."""
        out = []
        for j in range(self.n):
            strict = self.below[j] ^ (1 << j)
            for i in bits(strict):
                if self.above[i] & strict == 1 << i:
                    out.append((i, j))
        out.sort()
        return out

    def lower_covers(self, j: int) -> list:
        strict = self.below[j] ^ (1 << j)
        return [i for i in bits(strict) if self.above[i] & strict == 1 << i]

    def dual(self) -> "Poset":
        return Poset(self.labels, self.above)

    def downsets(self) -> list:
        """All down-closed subsets as bitmasks, ascending. Only for small posets."""
        if self.n > 20:
            raise PosetError(f"downset enumeration capped at 20 elements, got {self.n}")
        out = []
        for s in range(1 << self.n):
            m = s
            ok = True
            while m:
                low = m & -m
                if self.below[low.bit_length() - 1] & ~s:
                    ok = False
                    break
                m ^= low
            if ok:
                out.append(s)
        return out

    def label_set(self, mask: int) -> list:
        return [self.labels[i] for i in bits(mask)]


class Lattice:
    """A finite lattice: poset plus exhaustively verified meet/join tables."""

    __slots__ = ("poset", "meet", "join", "bottom", "top")

    def __init__(self, poset: Poset, meet, join, bottom: int, top: int):
        self.poset = poset
        self.meet = meet
        self.join = join
        self.bottom = bottom
        self.top = top

    @classmethod
    def from_poset(cls, p: Poset) -> "Lattice":
        """Compute meet/join tables, or raise NotALattice at the first bad pair.

        The glb of i,j exists iff the common lower bounds form a principal
        downset; likewise for lub with upsets.
        """
        n = p.n
        if n == 0:
            raise NotALattice((None, None), "meet")
        below_id = {p.below[i]: i for i in range(n)}
        above_id = {p.above[i]: i for i in range(n)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            bi, ai = p.below[i], p.above[i]
            for j in range(n):
                lo = bi & p.below[j]
                m = below_id.get(lo)
                if m is None:
                    raise NotALattice((min(i, j), max(i, j)), "meet")
                meet[i][j] = m
                up = ai & p.above[j]
                jn = above_id.get(up)
                if jn is None:
                    raise NotALattice((min(i, j), max(i, j)), "join")
                join[i][j] = jn
        meet = tuple(tuple(r) for r in meet)
        join = tuple(tuple(r) for r in join)
        bottom = next(i for i in range(n) if p.below[i] == 1 << i and p.above[i] == (1 << n) - 1)
        top = next(i for i in range(n) if p.above[i] == 1 << i and p.below[i] == (1 << n) - 1)
        return cls(p, meet, join, bottom, top)

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    def meet_all(self, ids: Iterable[int]) -> int:
        out = self.top
        for i in ids:
            out = self.meet[out][i]
        return out

    def join_all(self, ids: Iterable[int]) -> int:
        out = self.bottom
        for i in ids:
            out = self.join[out][i]
        return out


@dataclass(frozen=True)
class JoinIrreducibles:
    """Join-irreducible elements of a lattice: each covers exactly one element."""

    members: tuple          # ids, ascending
    lower_cover: dict       # j -> its unique lower cover
    atoms: tuple            # ids j with lower_cover[j] == bottom
    member_mask: int

    def __contains__(self, j: int) -> bool:
        return bool(self.member_mask >> j & 1)


def join_irreducibles(lat: Lattice) -> JoinIrreducibles:
    """Elements != bottom with exactly one lower cover; also checks spatiality."""
    p = lat.poset
    members = []
    lower = {}
    atoms = []
    for j in range(p.n):
        if j == lat.bottom:
            continue
        lc = p.lower_covers(j)
        if len(lc) == 1:
            members.append(j)
            lower[j] = lc[0]
            if lc[0] == lat.bottom:
                atoms.append(j)
    jmask = mask_of(members)
    for x in range(p.n):
        if lat.join_all(bits(p.below[x] & jmask)) != x:
            raise SpatialityFailure(x)
    return JoinIrreducibles(tuple(members), lower, tuple(atoms), jmask)


def is_distributive(lat: Lattice):
    """Whether x∧(y∨z) == (x∧y)∨(x∧z) for all triples.

    Fast path: a finite lattice is distributive iff every join-irreducible j
    is join-prime (j <= x∨y implies j <= x or j <= y).  On failure the
    lexicographically first violating triple of the defining law is returned.
    """
    p = lat.poset
    join = lat.join
    for j in range(p.n):
        if j == lat.bottom or len(p.lower_covers(j)) != 1:
            continue
        up = p.above[j]
        outside = [x for x in range(p.n) if not up >> x & 1]
        for x in outside:
            row = join[x]
            for y in outside:
                if up >> row[y] & 1:
                    return False, _first_bad_triple(lat)
    return True, None


def _first_bad_triple(lat: Lattice):
    n = lat.n
    meet, join = lat.meet, lat.join
    for x in range(n):
        mx = meet[x]
        for y in range(n):
            for z in range(n):
                if mx[join[y][z]] != join[mx[y]][mx[z]]:
                    return (x, y, z)
    return None


def has_two_levels(ji: JoinIrreducibles, lat: Lattice):
    """Whether j < k among join-irreducibles forces j to be an atom.

    For finite (hence spatial) lattices this is the same as the
    join-irreducibles containing no 3-element chain.  Witness is the
    lexicographically first violating pair (j, k).
    """
    amask = mask_of(ji.atoms)
    p = lat.poset
    for j in ji.members:
        if amask >> j & 1:
            continue
        higher = p.above[j] & ji.member_mask & ~(1 << j)
        if higher:
            return False, (j, next(bits(higher)))
    return True, None
