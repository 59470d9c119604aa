"""Shared builders for the test suite."""

from __future__ import annotations

import os

from roughkleene.demorgan import DeMorgan, build_kleene_from_jposet, validate_demorgan
from roughkleene.posets import Lattice, Poset, mask_of
from roughkleene.rough import Covering, Tolerance, tolerance_from_covering

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def chain(n: int) -> Lattice:
    labels = [str(i) for i in range(n)]
    below = [(1 << (i + 1)) - 1 for i in range(n)]
    return Lattice.from_poset(Poset(labels, below))


def boolean_lattice(n: int) -> Lattice:
    """The powerset lattice of n atoms; element i is the subset with mask i."""
    labels = [f"s{i}" for i in range(1 << n)]
    below = [mask_of(j for j in range(1 << n) if j & ~i == 0) for i in range(1 << n)]
    return Lattice.from_poset(Poset(labels, below))


def boolean_complement(n: int):
    full = (1 << n) - 1
    return tuple(full ^ i for i in range(1 << n))


def diamond_m3() -> Lattice:
    # bottom 0; atoms 1,2,3; top 4
    below = [1, 0b00011, 0b00101, 0b01001, 0b11111]
    return Lattice.from_poset(Poset(["0", "a", "b", "c", "1"], below))


def pentagon_n5() -> Lattice:
    # 0 < a < c < 1 and 0 < b < 1
    below = [1, 0b00011, 0b00101, 0b01011, 0b11111]
    return Lattice.from_poset(Poset(["0", "a", "b", "c", "1"], below))


def kleene_three() -> DeMorgan:
    return validate_demorgan(chain(3), (2, 1, 0))


def four_chain_kleene() -> DeMorgan:
    return validate_demorgan(chain(4), (3, 2, 1, 0))


def square_demorgan(swap: bool) -> DeMorgan:
    """Boolean 2x2 with either the atom-swapping or the atom-fixing involution."""
    lat = boolean_lattice(2)
    neg = (3, 2, 1, 0) if swap else (3, 1, 2, 0)
    return validate_demorgan(lat, neg)


def two_level_fixture() -> DeMorgan:
    """Atoms a,b,c with partners j,k,l: a,b < j; a,b,c < k; b,c < l."""
    jposet = Poset.from_covers(
        ["a", "b", "c", "j", "k", "l"],
        [(0, 3), (1, 3), (0, 4), (1, 4), (2, 4), (1, 5), (2, 5)],
    )
    g = {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2}
    return build_kleene_from_jposet(jposet, g)


def two_level_covering() -> Covering:
    """The covering the fixture's spans form, written down by hand."""
    labels = ["a", "b", "c", "x", "y", "j", "k", "l"]
    pos = {lab: i for i, lab in enumerate(labels)}
    blocks = [
        mask_of(pos[e] for e in ("a", "j", "x")),
        mask_of(pos[e] for e in ("b", "k", "x", "y")),
        mask_of(pos[e] for e in ("c", "l", "y")),
    ]
    return Covering(labels, blocks)


def two_level_tolerance() -> Tolerance:
    return tolerance_from_covering(two_level_covering())


def identity_tolerance(n: int) -> Tolerance:
    return Tolerance([str(i) for i in range(n)], [1 << i for i in range(n)])


def full_tolerance(n: int) -> Tolerance:
    full = (1 << n) - 1
    return Tolerance([str(i) for i in range(n)], [full] * n)
