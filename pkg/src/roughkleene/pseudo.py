"""Pseudocomplements, dual pseudocomplements, and the regularity criteria.

star(x) is the greatest z with x ∧ z = 0; plus(x) the least z with x ∨ z = 1.
Regularity of a distributive double p-structure is decided three independent
ways (determination by star/plus pairs, prime-filter chains, two-level
join-irreducibles) and the verdicts are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .demorgan import DeMorgan
from .posets import JoinIrreducibles, Lattice, has_two_levels, is_distributive


class PseudoError(Exception):
    pass


class NoPseudocomplement(PseudoError):
    def __init__(self, x, dual=False):
        self.witness = x
        kind = "dual pseudocomplement" if dual else "pseudocomplement"
        super().__init__(f"element {x} has no {kind}")


class CriteriaDisagree(PseudoError):
    """The independent regularity criteria returned different verdicts: a bug."""

    def __init__(self, details):
        self.details = details
        super().__init__(f"regularity criteria disagree: {details}")


class DoubleP:
    """A lattice with star/plus maps; distributive flag gates the deeper theory."""

    __slots__ = ("lattice", "star", "plus", "distributive")

    def __init__(self, lattice: Lattice, star, plus, distributive: bool):
        self.lattice = lattice
        self.star = tuple(star)
        self.plus = tuple(plus)
        self.distributive = distributive


def compute_pseudocomplements(lat: Lattice) -> DoubleP:
    """Brute-force star and plus for every element, then check laws (i)-(v).

    Non-distributive lattices are accepted when both maps exist, but the
    result is flagged and the regularity machinery refuses it.
    """
    n = lat.n
    star, plus = [], []
    for x in range(n):
        zeros = [z for z in range(n) if lat.meet[x][z] == lat.bottom]
        cand = lat.join_all(zeros)
        if lat.meet[x][cand] != lat.bottom:
            raise NoPseudocomplement(x)
        star.append(cand)
        ones = [z for z in range(n) if lat.join[x][z] == lat.top]
        cand = lat.meet_all(ones)
        if lat.join[x][cand] != lat.top:
            raise NoPseudocomplement(x, dual=True)
        plus.append(cand)
    dp = DoubleP(lat, star, plus, is_distributive(lat)[0])
    _check_p_laws(dp)
    return dp


def _check_p_laws(dp: DoubleP):
    lat, star, plus = dp.lattice, dp.star, dp.plus
    p = lat.poset
    for a in range(lat.n):
        if star[star[star[a]]] != star[a]:
            raise PseudoError(f"a* != a*** at {a}")
        if not p.leq(a, star[star[a]]):
            raise PseudoError(f"a <= a** fails at {a}")
        if plus[plus[plus[a]]] != plus[a]:
            raise PseudoError(f"a+ != a+++ at {a}")
        if not p.leq(plus[plus[a]], a):
            raise PseudoError(f"a++ <= a fails at {a}")
        for b in range(lat.n):
            if p.leq(a, b) and not p.leq(star[b], star[a]):
                raise PseudoError(f"star not antitone at ({a},{b})")
            if star[lat.join[a][b]] != lat.meet[star[a]][star[b]]:
                raise PseudoError(f"(a v b)* != a* ^ b* at ({a},{b})")
            if not p.leq(lat.join[star[a]][star[b]], star[lat.meet[a][b]]):
                raise PseudoError(f"(a ^ b)* >= a* v b* fails at ({a},{b})")


@dataclass(frozen=True)
class MDNReport:
    m: bool
    m_witness: tuple | None
    d: bool
    d_witness: tuple | None
    n: bool | None
    n_witness: tuple | None


def check_M_D_N(dp: DoubleP, neg=None) -> MDNReport:
    """Determination (M), the x ∧ x+ <= y ∨ y* law (D), and normality (N).

    On distributive input (M) and (D) must agree; when (N) holds the sandwich
    x* <= neg(x) <= x+ is also enforced.
    """
    lat, star, plus = dp.lattice, dp.star, dp.plus
    n_elems = lat.n
    m_witness = next(
        (
            (x, y)
            for x in range(n_elems)
            for y in range(x + 1, n_elems)
            if star[x] == star[y] and plus[x] == plus[y]
        ),
        None,
    )
    d_witness = next(
        (
            (x, y)
            for x in range(n_elems)
            for y in range(n_elems)
            if not lat.leq(lat.meet[x][plus[x]], lat.join[y][star[y]])
        ),
        None,
    )
    if dp.distributive and (m_witness is None) != (d_witness is None):
        raise CriteriaDisagree({"M": m_witness is None, "D": d_witness is None})
    n_ok, n_witness = None, None
    if neg is not None:
        n_ok = True
        for x in range(n_elems):
            if not lat.leq(star[x], neg[x]):
                n_ok, n_witness = False, (x,)
                break
        if n_ok:
            for x in range(n_elems):
                if not lat.leq(neg[x], plus[x]):
                    raise PseudoError(f"normal but neg({x}) <= {x}+ fails")
    return MDNReport(m_witness is None, m_witness, d_witness is None, d_witness, n_ok, n_witness)


def heyting_implications(dp: DoubleP):
    """Relative pseudocomplement tables: imp[a][b] the greatest x with
    a ∧ x <= b, and dimp[a][b] the least x with a ∨ x >= b.

    When (M) holds both are cross-checked against the closed forms that
    regular double p-structures satisfy.
    """
    lat = dp.lattice
    if not dp.distributive:
        raise PseudoError("implications need a distributive lattice")
    n = lat.n
    imp = [[0] * n for _ in range(n)]
    dimp = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            x = lat.join_all(z for z in range(n) if lat.leq(lat.meet[a][z], b))
            if not lat.leq(lat.meet[a][x], b):
                raise PseudoError(f"no relative pseudocomplement at ({a},{b})")
            imp[a][b] = x
            y = lat.meet_all(z for z in range(n) if lat.leq(b, lat.join[a][z]))
            if not lat.leq(b, lat.join[a][y]):
                raise PseudoError(f"no dual relative pseudocomplement at ({a},{b})")
            dimp[a][b] = y
    if check_M_D_N(dp).m:
        star, plus = dp.star, dp.plus
        meet, join = lat.meet, lat.join
        for a in range(n):
            for b in range(n):
                # (a* v b**)** ^ [(a v a*)+ v a* v b v b*]
                core = join[star[a]][star[star[b]]]
                closed = meet[star[star[core]]][
                    join[join[join[plus[join[a][star[a]]]][star[a]]][b]][star[b]]
                ]
                if closed != imp[a][b]:
                    raise PseudoError(f"closed form for imp disagrees at ({a},{b})")
                # (a+ ^ b++)++ v [(a ^ a+)* ^ a+ ^ b ^ b+]
                dcore = meet[plus[a]][plus[plus[b]]]
                dclosed = join[plus[plus[dcore]]][
                    meet[meet[meet[star[meet[a][plus[a]]]][plus[a]]][b]][plus[b]]
                ]
                if dclosed != dimp[a][b]:
                    raise PseudoError(f"closed form for dimp disagrees at ({a},{b})")
    return tuple(tuple(r) for r in imp), tuple(tuple(r) for r in dimp)


@dataclass(frozen=True)
class Skeleton:
    """Image of star (or plus): a Boolean algebra inside the lattice."""

    members: tuple          # ascending element ids
    is_dual: bool           # False for star image, True for plus image


def skeletons(dp: DoubleP):
    """Extract both skeletons and verify they are Boolean.

    In the star skeleton the join is (a* ∧ b*)*; meet is inherited.  Dually
    for the plus skeleton.
    """
    lat, star, plus = dp.lattice, dp.star, dp.plus
    if not dp.distributive:
        raise PseudoError("skeletons need a distributive lattice")
    s_members = tuple(sorted(set(star)))
    p_members = tuple(sorted(set(plus)))
    for a in s_members:
        if star[star[a]] != a:
            raise PseudoError(f"star image not closed at {a}")
        if lat.meet[a][star[a]] != lat.bottom:
            raise PseudoError(f"skeleton complement fails meet at {a}")
        if star[lat.meet[star[a]][star[star[a]]]] != lat.top:
            raise PseudoError(f"skeleton complement fails join at {a}")
        for b in s_members:
            if lat.meet[a][b] not in s_members:
                raise PseudoError(f"star skeleton not meet-closed at ({a},{b})")
            if star[lat.meet[star[a]][star[b]]] not in s_members:
                raise PseudoError(f"star skeleton join leaves skeleton at ({a},{b})")
    for a in p_members:
        if plus[plus[a]] != a:
            raise PseudoError(f"plus image not closed at {a}")
        if lat.join[a][plus[a]] != lat.top:
            raise PseudoError(f"dual skeleton complement fails join at {a}")
        if plus[lat.join[plus[a]][plus[plus[a]]]] != lat.bottom:
            raise PseudoError(f"dual skeleton complement fails meet at {a}")
        for b in p_members:
            if lat.join[a][b] not in p_members:
                raise PseudoError(f"plus skeleton not join-closed at ({a},{b})")
            if plus[lat.join[plus[a]][plus[b]]] not in p_members:
                raise PseudoError(f"plus skeleton meet leaves skeleton at ({a},{b})")
    return Skeleton(s_members, False), Skeleton(p_members, True)


@dataclass(frozen=True)
class PrimeFilterFamily:
    """All prime filters of a finite lattice, as up-set masks.

    Every filter of a finite lattice is principal, so the scan runs over
    the principal filters and tests primality directly.
    """

    generators: tuple       # x with [x) prime, ascending
    filters: tuple          # up-set masks, aligned with generators
    maximal: tuple          # flags: the filter is a maximal proper filter
    chain_max: int          # length of the longest chain under inclusion


def prime_filters(lat: Lattice) -> PrimeFilterFamily:
    p = lat.poset
    n = lat.n
    gens = []
    for x in range(n):
        if x == lat.bottom and n > 1:
            continue  # [bottom) is all of L, not proper
        if n == 1:
            continue  # the one-element lattice has no proper filters
        up = p.above[x]
        prime = True
        for a in range(n):
            if up >> a & 1:
                continue
            row = lat.join[a]
            for b in range(a, n):
                if not up >> b & 1 and up >> row[b] & 1:
                    prime = False
                    break
            if not prime:
                break
        if prime:
            gens.append(x)
    filters = tuple(p.above[x] for x in gens)
    # [x) is a maximal proper filter iff x is an atom
    maximal = tuple(p.lower_covers(x) == [lat.bottom] for x in gens)
    # longest chain: filters ordered by inclusion mirror generators ordered by >=
    depth = {}
    chain = 0
    for x in sorted(gens, key=lambda v: p.above[v].bit_count()):
        depth[x] = 1 + max((depth[y] for y in gens if y != x and p.leq(x, y)), default=0)
        chain = max(chain, depth[x])
    return PrimeFilterFamily(tuple(gens), filters, maximal, chain)


@dataclass(frozen=True)
class RegularityReport:
    m: bool
    d: bool
    prime_chain_max: int
    two_levels: bool
    two_levels_witness: tuple | None
    regular: bool
    n: bool | None = None
    k: bool | None = None


def is_regular(dp: DoubleP, ji: JoinIrreducibles, neg=None) -> RegularityReport:
    """Decide regularity three ways and insist the verdicts agree.

    Criteria: (M); no prime-filter chain of three; the join-irreducibles
    have at most two levels.  neg, when given, adds the (N) verdict.
    """
    if not dp.distributive:
        raise PseudoError("regularity is only defined for distributive input")
    mdn = check_M_D_N(dp, neg)
    family = prime_filters(dp.lattice)
    two, witness = has_two_levels(ji, dp.lattice)
    verdicts = {
        "M": mdn.m,
        "D": mdn.d,
        "primeChain": family.chain_max <= 2,
        "twoLevels": two,
    }
    if len(set(verdicts.values())) != 1:
        raise CriteriaDisagree(verdicts)
    # chains P < Q of prime filters must end in a maximal filter exactly
    # when no chain of three exists
    fact_b = True
    for i, x in enumerate(family.generators):
        for j, y in enumerate(family.generators):
            if x != y and family.filters[i] & ~family.filters[j] == 0 and not family.maximal[j]:
                fact_b = False
    if fact_b != (family.chain_max <= 2):
        raise CriteriaDisagree({"chainMax": family.chain_max, "properContainmentMaximal": fact_b})
    return RegularityReport(
        m=mdn.m,
        d=mdn.d,
        prime_chain_max=family.chain_max,
        two_levels=two,
        two_levels_witness=witness,
        regular=mdn.m,
        n=mdn.n,
    )


def demorgan_pseudo_report(dm: DeMorgan, dp: DoubleP, ji: JoinIrreducibles):
    """Full diagnostic for a pseudocomplemented De Morgan structure.

    Also enforces the interplay laws: neg swaps star and plus, and for
    regular structures (K) holds exactly when (N) does.
    """
    from .demorgan import is_kleene

    lat, neg = dm.lattice, dm.neg
    for x in range(lat.n):
        if neg[dp.star[x]] != dp.plus[neg[x]]:
            raise PseudoError(f"neg(x*) != (neg x)+ at {x}")
        if neg[dp.plus[x]] != dp.star[neg[x]]:
            raise PseudoError(f"neg(x+) != (neg x)* at {x}")
    report = is_regular(dp, ji, neg)
    kleene, k_witness = is_kleene(dm)
    if report.regular and kleene != report.n:
        raise CriteriaDisagree({"K": kleene, "N": report.n, "regular": True})
    return RegularityReport(
        m=report.m,
        d=report.d,
        prime_chain_max=report.prime_chain_max,
        two_levels=report.two_levels,
        two_levels_witness=report.two_levels_witness,
        regular=report.regular,
        n=report.n,
        k=kleene,
    )
