"""Tolerances, blocks, coverings and the rough-set algebra they induce.

A tolerance is a reflexive symmetric relation on U, stored as neighborhood
bitmasks.  For a subset X the pair (lower(X), upper(X)) collects the points
whose whole neighborhood sits inside X and the points whose neighborhood
meets X.  The set of all such pairs, ordered coordinatewise, is assembled
into a lattice-with-operations when the order admits one.

Two independent constructions of the pair set are provided: the powerset
sweep (the defining one, capped by universe size) and the join closure of
the block-derived join-irreducibles (fast, needs an irredundant covering).
Their agreement is an acceptance-level oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .demorgan import validate_demorgan, is_kleene, compute_g
from .posets import Lattice, NotALattice, Poset, bits
from .pseudo import compute_pseudocomplements, demorgan_pseudo_report


class ToleranceError(Exception):
    pass


class BoundsExceeded(ToleranceError):
    def __init__(self, n, cap):
        super().__init__(f"universe of {n} exceeds the enumeration cap {cap}; pass force=True")


class FormulaMismatch(ToleranceError):
    """A closed-form construction disagreed with the direct one: a bug."""

    def __init__(self, what, details):
        self.details = details
        super().__init__(f"{what}: {details}")


def _fmt_set(mask, labels):
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def fmt_pair(pair, labels):
    return f"({_fmt_set(pair[0], labels)},{_fmt_set(pair[1], labels)})"


class Tolerance:
    """Reflexive symmetric relation; nbr[x] is the bitmask of R(x)."""

    __slots__ = ("n", "labels", "nbr")

    def __init__(self, labels, nbr):
        n = len(nbr)
        self.n = n
        self.labels = tuple(labels)
        if len(self.labels) != n:
            raise ToleranceError(f"{len(self.labels)} labels for {n} points")
        nbr = tuple(nbr)
        for x in range(n):
            if not nbr[x] >> x & 1:
                raise ToleranceError(f"relation not reflexive at {x}")
            for y in bits(nbr[x]):
                if not nbr[y] >> x & 1:
                    raise ToleranceError(f"relation not symmetric at ({x},{y})")
        self.nbr = nbr

    @classmethod
    def from_pairs(cls, labels, pairs):
        """Symmetric closure of the given pairs; reflexive pairs are implied."""
        n = len(labels)
        nbr = [1 << x for x in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ToleranceError(f"pair ({i},{j}) out of range")
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        return cls(labels, nbr)

    def related(self, x, y):
        return bool(self.nbr[x] >> y & 1)

    def lower(self, X: int) -> int:
        out = 0
        for x in range(self.n):
            if self.nbr[x] & ~X == 0:
                out |= 1 << x
        return out

    def upper(self, X: int) -> int:
        out = 0
        for x in range(self.n):
            if self.nbr[x] & X:
                out |= 1 << x
        return out

    def pairs(self):
        """Non-reflexive related pairs (i, j) with i < j, sorted."""
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.related(i, j)
        ]


def approximations(tol: Tolerance, X: int):
    """The rough pair of X, with the lower/upper duality checked on the fly."""
    full = (1 << tol.n) - 1
    lo, up = tol.lower(X), tol.upper(X)
    if lo ^ full != tol.upper(X ^ full):
        raise FormulaMismatch("approximation duality", {"X": X})
    if lo & ~X or X & ~up:
        raise FormulaMismatch("reflexive sandwich", {"X": X})
    return lo, up


def galois_holds(tol: Tolerance, X: int, Y: int) -> bool:
    """upper(X) inside Y exactly when X inside lower(Y)."""
    return (tol.upper(X) & ~Y == 0) == (X & ~tol.lower(Y) == 0)


def blocks_of(tol: Tolerance):
    """All blocks (maximal cliques) of the tolerance graph, ascending by mask.

    Pivoted Bron-Kerbosch; afterwards the relation is rebuilt from the
    blocks and compared, since the blocks determine the tolerance.
    """
    n = tol.n
    adj = tuple(tol.nbr[x] ^ (1 << x) for x in range(n))
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pux = p | x
        pivot, best = -1, -1
        for u in bits(pux):
            c = (p & adj[u]).bit_count()
            if c > best:
                best, pivot = c, u
        for v in bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p ^= bit
            x |= bit

    if n:
        expand(0, (1 << n) - 1, 0)
    out.sort()
    rebuilt = [1 << x for x in range(n)]
    for b in out:
        for x in bits(b):
            rebuilt[x] |= b
    if tuple(rebuilt) != tol.nbr:
        raise FormulaMismatch("blocks do not determine the relation", {"blocks": out})
    return out


class Covering:
    """Family of distinct nonempty subsets whose union is the universe."""

    __slots__ = ("n", "labels", "blocks")

    def __init__(self, labels, blocks):
        self.n = len(labels)
        self.labels = tuple(labels)
        blocks = tuple(sorted(set(blocks)))
        union = 0
        for b in blocks:
            if b == 0:
                raise ToleranceError("coverings may not contain the empty set")
            union |= b
        if union != (1 << self.n) - 1:
            raise ToleranceError("blocks do not cover the universe")
        self.blocks = blocks


def tolerance_from_covering(cov: Covering) -> Tolerance:
    """The tolerance whose related pairs are those sharing a covering block."""
    nbr = [1 << x for x in range(cov.n)]
    for b in cov.blocks:
        for x in bits(b):
            nbr[x] |= b
    tol = Tolerance(cov.labels, nbr)
    for x in range(cov.n):
        joined = 0
        for b in cov.blocks:
            if b >> x & 1:
                joined |= b
        if joined != tol.nbr[x]:
            raise FormulaMismatch("neighborhood is not the union of its blocks", {"x": x})
    return tol


@dataclass(frozen=True)
class IrredundanceReport:
    irredundant: bool
    removable: int | None        # a block whose removal keeps the family covering
    not_a_neighborhood: int | None   # a block that is nobody's neighborhood


def is_irredundant(cov: Covering) -> IrredundanceReport:
    """Evaluate both characterizations of irredundance and insist they agree.

    Removal: no member may be dropped without losing the covering property.
    Neighborhoods: every member is R(x) for some point x of the induced
    tolerance.  For irredundant families the member set must coincide with
    the block-valued neighborhoods, each with a nonempty private core.
    """
    full = (1 << cov.n) - 1
    removable = None
    for i, b in enumerate(cov.blocks):
        rest = 0
        for j, c in enumerate(cov.blocks):
            if i != j:
                rest |= c
        if rest == full:
            removable = b
            break
    tol = tolerance_from_covering(cov)
    nbrs = set(tol.nbr)
    missing = next((b for b in cov.blocks if b not in nbrs), None)
    if (removable is None) != (missing is None):
        raise FormulaMismatch(
            "irredundance criteria disagree", {"removable": removable, "missing": missing}
        )
    if removable is None:
        blocks = set(blocks_of(tol))
        block_nbrs = {tol.nbr[x] for x in range(cov.n) if tol.nbr[x] in blocks}
        if block_nbrs != set(cov.blocks):
            raise FormulaMismatch(
                "irredundant covering differs from its block neighborhoods",
                {"blocks": sorted(block_nbrs)},
            )
        for b in cov.blocks:
            if tol.lower(b) == 0:
                raise FormulaMismatch("irredundant block with empty core", {"block": b})
    return IrredundanceReport(removable is None, removable, missing)


def induced_irredundant_covering(tol: Tolerance):
    """The unique irredundant covering inducing tol, or None.

    Candidate: the neighborhoods that are blocks.  The tolerance is induced
    by an irredundant covering exactly when that family covers U, induces
    tol, and is irredundant.
    """
    blocks = set(blocks_of(tol))
    family = sorted({nb for nb in tol.nbr if nb in blocks})
    union = 0
    for b in family:
        union |= b
    if union != (1 << tol.n) - 1:
        return None
    cov = Covering(tol.labels, family)
    if tolerance_from_covering(cov).nbr != tol.nbr:
        return None
    if not is_irredundant(cov).irredundant:
        return None
    return cov


class RoughSetAlgebra:
    """The ordered set of rough pairs with its lattice and unary operations.

    pairs are sorted (lower, upper) bitmask tuples; element i of the lattice
    is pairs[i].  neg swaps-and-complements coordinates; star and plus are
    the complement-approximation maps.  For tolerances induced by an
    irredundant covering the full Kleene/regularity battery has been run
    and demorgan/doublep/ji are populated.
    """

    __slots__ = (
        "tolerance", "pairs", "index", "lattice",
        "neg", "star", "plus", "covering", "demorgan", "doublep", "ji",
    )

    def __init__(self, tolerance, pairs, index, lattice, neg, star, plus,
                 covering, demorgan, doublep, ji):
        self.tolerance = tolerance
        self.pairs = pairs
        self.index = index
        self.lattice = lattice
        self.neg = neg
        self.star = star
        self.plus = plus
        self.covering = covering
        self.demorgan = demorgan
        self.doublep = doublep
        self.ji = ji

    @property
    def n(self):
        return len(self.pairs)

    def fmt(self, i):
        return fmt_pair(self.pairs[i], self.tolerance.labels)


def _powerset_pairs(tol: Tolerance):
    seen = set()
    for X in range(1 << tol.n):
        seen.add(approximations(tol, X))
    return sorted(seen)


def formula_join_irreducibles(tol: Tolerance, cov: Covering):
    """Join-irreducible pairs read off the irredundant covering: the rough
    pair of each block, plus (empty, block) for blocks of two or more points."""
    out = set()
    for b in cov.blocks:
        out.add(approximations(tol, b))
        if b.bit_count() >= 2:
            out.add((0, b))
    return sorted(out)


def join_closure_pairs(tol: Tolerance):
    """All joins of the block-derived join-irreducibles (plus the bottom pair)."""
    cov = induced_irredundant_covering(tol)
    if cov is None:
        raise ToleranceError("join closure needs a tolerance induced by an irredundant covering")
    items = set(formula_join_irreducibles(tol, cov))
    items.add((0, 0))
    frontier = list(items)
    while frontier:
        fresh = []
        for a, b in frontier:
            for c, d in list(items):
                j = (tol.lower(tol.upper(a | c)), b | d)
                if j not in items:
                    items.add(j)
                    fresh.append(j)
        frontier = fresh
    return sorted(items)


def _assemble(tol: Tolerance, pairs):
    n = len(pairs)
    index = {pr: i for i, pr in enumerate(pairs)}
    labels = [fmt_pair(pr, tol.labels) for pr in pairs]
    below = []
    for lo, up in pairs:
        m = 0
        for i, (lo2, up2) in enumerate(pairs):
            if lo2 & ~lo == 0 and up2 & ~up == 0:
                m |= 1 << i
        below.append(m)
    try:
        lattice = Lattice.from_poset(Poset(labels, below))
    except NotALattice as exc:
        i, j = exc.pair
        raise NotALattice((pairs[i], pairs[j]), exc.kind) from None
    meet, join = lattice.meet, lattice.join
    for i, (a, b) in enumerate(pairs):
        for j, (c, d) in enumerate(pairs):
            want = (a & c, tol.upper(tol.lower(b & d)))
            if pairs[meet[i][j]] != want:
                raise FormulaMismatch("meet", {"pair": (pairs[i], pairs[j]), "formula": want})
            want = (tol.lower(tol.upper(a | c)), b | d)
            if pairs[join[i][j]] != want:
                raise FormulaMismatch("join", {"pair": (pairs[i], pairs[j]), "formula": want})
    full = (1 << tol.n) - 1
    neg, star, plus = [], [], []
    for lo, up in pairs:
        for target, source in ((neg, (full & ~up, full & ~lo)),
                               (star, approximations(tol, full & ~up)),
                               (plus, approximations(tol, full & ~lo))):
            i = index.get(source)
            if i is None:
                raise FormulaMismatch("unary operation leaves the pair set", {"value": source})
            target.append(i)
    neg, star, plus = tuple(neg), tuple(star), tuple(plus)
    covering = induced_irredundant_covering(tol)
    demorgan = doublep = ji = None
    if covering is not None:
        from .posets import join_irreducibles

        demorgan = validate_demorgan(lattice, neg)
        kleene, witness = is_kleene(demorgan)
        if not kleene:
            raise FormulaMismatch("irredundant rough algebra is not Kleene", {"witness": witness})
        doublep = compute_pseudocomplements(lattice)
        if doublep.star != star or doublep.plus != plus:
            raise FormulaMismatch(
                "pseudocomplement formulas",
                {"star": doublep.star == star, "plus": doublep.plus == plus},
            )
        ji = join_irreducibles(lattice)
        report = demorgan_pseudo_report(demorgan, doublep, ji)
        if not report.regular:
            raise FormulaMismatch("irredundant rough algebra is not regular", {})
    return RoughSetAlgebra(
        tol, tuple(pairs), index, lattice, neg, star, plus, covering, demorgan, doublep, ji
    )


def build_rs(tol: Tolerance, max_universe: int = 16, force: bool = False) -> RoughSetAlgebra:
    """Assemble the rough-set algebra by sweeping every subset of U.

    Raises NotALattice (with a witness pair) when the coordinatewise order
    has no meet or join for some pair, which genuinely happens for some
    tolerances.
    """
    if tol.n > max_universe and not force:
        raise BoundsExceeded(tol.n, max_universe)
    return _assemble(tol, _powerset_pairs(tol))


def build_rs_spatial(tol: Tolerance) -> RoughSetAlgebra:
    """Assemble the same algebra from block-derived join-irreducibles.

    Avoids the 2^|U| sweep; only valid for tolerances induced by an
    irredundant covering (where the pair set is join-generated).
    """
    return _assemble(tol, join_closure_pairs(tol))


@dataclass(frozen=True)
class RSJoinIrreducibles:
    members: tuple       # pair values, sorted
    atoms: tuple         # pair values, sorted
    lattice_members: tuple
    lattice_atoms: tuple


def rs_join_irreducibles(rs: RoughSetAlgebra) -> RSJoinIrreducibles:
    """Join-irreducibles of the rough lattice, computed from the order and
    from the block formulas, with both routes required to agree."""
    if rs.covering is None:
        raise ToleranceError("join-irreducible formulas need an irredundant covering")
    tol, cov = rs.tolerance, rs.covering
    formula = formula_join_irreducibles(tol, cov)
    from_lattice = sorted(rs.pairs[j] for j in rs.ji.members)
    if formula != from_lattice:
        raise FormulaMismatch(
            "join-irreducibles", {"formula": formula, "lattice": from_lattice}
        )
    atom_formula = sorted(
        {(b, b) for b in cov.blocks if b.bit_count() == 1}
        | {(0, b) for b in cov.blocks if b.bit_count() >= 2}
    )
    lattice_atoms = sorted(rs.pairs[a] for a in rs.ji.atoms)
    if atom_formula != lattice_atoms:
        raise FormulaMismatch("atoms", {"formula": atom_formula, "lattice": lattice_atoms})
    return RSJoinIrreducibles(tuple(formula), tuple(atom_formula),
                              tuple(from_lattice), tuple(lattice_atoms))


def rs_g_map(rs: RoughSetAlgebra) -> dict:
    """The self-dual map on the rough join-irreducibles, checked against its
    closed form: (empty,B) and the rough pair of B swap; singleton blocks
    give fixed points."""
    if rs.covering is None:
        raise ToleranceError("gmap formulas need an irredundant covering")
    g = compute_g(rs.demorgan, rs.ji)
    tol = rs.tolerance
    for b in rs.covering.blocks:
        pb = rs.index[approximations(tol, b)]
        if b.bit_count() >= 2:
            ab = rs.index[(0, b)]
            if g[ab] != pb or g[pb] != ab:
                raise FormulaMismatch("gmap on a block", {"block": b})
        else:
            if g[pb] != pb:
                raise FormulaMismatch("gmap on a singleton block", {"block": b})
    return g


@dataclass(frozen=True)
class IsolatedBlockReport:
    block: int
    uniform_neighborhoods: bool
    exact_pair: bool
    single_atom_below: bool

    @property
    def isolated(self):
        return self.uniform_neighborhoods


def isolated_blocks(rs: RoughSetAlgebra):
    """Per block, three equivalent readings of "behaves like a partition class"."""
    if rs.covering is None:
        raise ToleranceError("isolated-block analysis needs an irredundant covering")
    tol = rs.tolerance
    out = []
    for b in rs.covering.blocks:
        uniform = all(tol.nbr[y] == b for y in bits(b))
        pb = approximations(tol, b)
        exact = pb == (b, b)
        pid = rs.index[pb]
        atoms_below = [a for a in rs.ji.atoms if rs.lattice.leq(a, pid)]
        if b.bit_count() == 1:
            single = True
        else:
            single = atoms_below == [rs.index[(0, b)]]
        if not (uniform == exact == single):
            raise FormulaMismatch(
                "isolated-block conditions disagree",
                {"block": b, "uniform": uniform, "exact": exact, "single": single},
            )
        out.append(IsolatedBlockReport(b, uniform, exact, single))
    return out


def powerset_images(tol: Tolerance):
    """The sorted images of lower and upper over the whole powerset."""
    los, ups = set(), set()
    for X in range(1 << tol.n):
        lo, up = approximations(tol, X)
        los.add(lo)
        ups.add(up)
    return sorted(los), sorted(ups)


def powerset_image_report(tol: Tolerance):
    """For irredundant-covering tolerances: both images are atomistic Boolean
    lattices with the block cores / blocks as atoms and the stated
    double-approximation complements."""
    cov = induced_irredundant_covering(tol)
    if cov is None:
        raise ToleranceError("image analysis needs an irredundant covering")
    los, ups = powerset_images(tol)
    full = (1 << tol.n) - 1
    lo_atoms = sorted({tol.lower(b) for b in cov.blocks})
    up_atoms = sorted(cov.blocks)
    for image, atoms, closure in (
        (los, lo_atoms, lambda s: tol.lower(tol.upper(s))),
        (ups, up_atoms, lambda s: tol.upper(tol.lower(s))),
    ):
        members = set(image)
        for a in atoms:
            if a not in members:
                raise FormulaMismatch("atom missing from image", {"atom": a})
        for s in image:
            span = [a for a in atoms if a & ~s == 0]
            joined = 0
            for a in span:
                joined |= a
            if closure(joined) != s:
                raise FormulaMismatch("image not atomistic", {"element": s})
    for s in los:
        comp = tol.lower(full & ~s)
        if comp not in set(los) or s & comp or tol.lower(tol.upper(s | comp)) != tol.lower(full):
            raise FormulaMismatch("lower-image complement", {"element": s})
    for s in ups:
        comp = tol.upper(full & ~s)
        if comp not in set(ups) or s | comp != tol.upper(full) or tol.upper(tol.lower(s & comp)) != 0:
            raise FormulaMismatch("upper-image complement", {"element": s})
    return los, ups


def skeleton_isomorphism_report(rs: RoughSetAlgebra):
    """The star skeleton mirrors the upper image under reversed inclusion via
    B -> rough pair of B-complement; dually for the plus skeleton and the
    lower image."""
    if rs.covering is None:
        raise ToleranceError("skeleton analysis needs an irredundant covering")
    tol = rs.tolerance
    full = (1 << tol.n) - 1
    los, ups = powerset_images(tol)
    star_image = sorted({rs.star[i] for i in range(rs.n)})
    plus_image = sorted({rs.plus[i] for i in range(rs.n)})
    for image, target, name in ((ups, star_image, "star"), (los, plus_image, "plus")):
        mapped = {}
        for b in image:
            mapped[b] = rs.index[approximations(tol, full & ~b)]
        if sorted(set(mapped.values())) != target:
            raise FormulaMismatch(f"{name} skeleton image", {})
        for b in image:
            for c in image:
                if (b | c == b) != rs.lattice.leq(mapped[b], mapped[c]):
                    raise FormulaMismatch(
                        f"{name} skeleton order", {"pair": (b, c)}
                    )
    return {"star": len(star_image), "plus": len(plus_image)}
