"""Finite abelian groups, subgroups, quotients, characters, and Galois orbits.

Groups are products of cyclic factors with elements stored as reduced
coordinate tuples.  Subgroups are stored by full element enumeration, which
is exact and ample at the documented scale (|G| <= 64).  Quotients are
normalized through the Smith normal form so equal quotients get equal factor
lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm, prod

from .cyclotomic import CycNum, get_field
from .exactsolve import hermite_basis, invert_unimodular, smith_normal_form


@dataclass(frozen=True)
class FinAbGroup:
    """The group Z_{d1} x ... x Z_{dk} for the given cyclic factors."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a group needs at least one cyclic factor")
        if any(d < 1 for d in self.factors):
            raise ValueError(f"cyclic factors must be positive, got {self.factors}")

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors)

    @property
    def identity(self) -> "GroupElem":
        return GroupElem(self, (0,) * len(self.factors))

    def element(self, coords) -> "GroupElem":
        c = tuple(int(x) % d for x, d in zip(coords, self.factors))
        if len(c) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} coordinates, got {len(coords)}"
            )
        return GroupElem(self, c)

    def elements(self) -> list["GroupElem"]:
        return [
            GroupElem(self, c)
            for c in itertools.product(*(range(d) for d in self.factors))
        ]

    def __repr__(self) -> str:
        return "Z" + "x".join(f"{d}" for d in self.factors)


def group_new(factors) -> FinAbGroup:
    return FinAbGroup(tuple(int(d) for d in factors))


@dataclass(frozen=True)
class GroupElem:
    group: FinAbGroup
    coords: tuple[int, ...]

    def _check(self, other: "GroupElem"):
        if self.group != other.group:
            raise ValueError("elements belong to different groups")

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        self._check(other)
        return GroupElem(
            self.group,
            tuple(
                (a + b) % d
                for a, b, d in zip(self.coords, other.coords, self.group.factors)
            ),
        )

    def inverse(self) -> "GroupElem":
        return GroupElem(
            self.group,
            tuple((-a) % d for a, d in zip(self.coords, self.group.factors)),
        )

    def __pow__(self, k: int) -> "GroupElem":
        return GroupElem(
            self.group,
            tuple((a * k) % d for a, d in zip(self.coords, self.group.factors)),
        )

    @property
    def order(self) -> int:
        return lcm(
            *(d // gcd(d, a) if a else 1 for a, d in zip(self.coords, self.group.factors))
        )

    @property
    def is_identity(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __repr__(self) -> str:
        return "(" + ",".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True)
class Subgroup:
    parent: FinAbGroup
    elements: frozenset[GroupElem]
    generators: tuple[GroupElem, ...] = field(compare=False, default=())

    def __post_init__(self):
        if self.parent.identity not in self.elements:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            if a.inverse() not in self.elements:
                raise ValueError("subgroup not closed under inverses")
        for a in self.elements:
            for b in self.elements:
                if a * b not in self.elements:
                    raise ValueError("subgroup not closed under products")
        if self.parent.order % len(self.elements):
            raise AssertionError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[GroupElem]:
        return sorted(self.elements, key=lambda g: g.coords)

    def __contains__(self, g: GroupElem) -> bool:
        return g in self.elements

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __repr__(self) -> str:
        return f"Subgroup(order {self.order} of {self.parent})"


def subgroup_from_generators(group: FinAbGroup, gens) -> Subgroup:
    gens = tuple(gens)
    for g in gens:
        if g.group != group:
            raise ValueError("generator belongs to a different group")
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, frozenset(seen), gens)


def trivial_subgroup(group: FinAbGroup) -> Subgroup:
    return subgroup_from_generators(group, ())


def full_subgroup(group: FinAbGroup) -> Subgroup:
    gens = [
        group.element(tuple(int(i == j) for j in range(len(group.factors))))
        for i in range(len(group.factors))
    ]
    return subgroup_from_generators(group, gens)


def subgroup_join(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.parent != b.parent:
        raise ValueError("subgroups live in different groups")
    return subgroup_from_generators(a.parent, a.generators + b.generators)


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    common = a.elements & b.elements
    return Subgroup(a.parent, frozenset(common), tuple(sorted(common, key=lambda g: g.coords)))


@lru_cache(maxsize=None)
def all_subgroups(group: FinAbGroup) -> tuple[Subgroup, ...]:
    """Every subgroup of ``group``, by closure saturation."""
    found: dict[frozenset[GroupElem], Subgroup] = {}
    triv = trivial_subgroup(group)
    found[triv.elements] = triv
    frontier = [triv]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in group.elements():
                if g in sub.elements:
                    continue
                bigger = subgroup_from_generators(group, sub.generators + (g,))
                if bigger.elements not in found:
                    found[bigger.elements] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return tuple(
        sorted(
            found.values(),
            key=lambda s: (s.order, sorted(g.coords for g in s.elements)),
        )
    )


@lru_cache(maxsize=None)
def subgroup_basis(sub: Subgroup):
    """Independent generators for a subgroup.

    Returns (gens, orders, coords) where every element of the subgroup is
    uniquely prod gens[i]**c[i] with 0 <= c[i] < orders[i], and ``coords``
    maps each element to its exponent tuple.
    """
    G = sub.parent
    k = len(G.factors)
    if sub.order == 1:
        return (), (), {G.identity: ()}
    rows = [list(g.coords) for g in sub.sorted_elements()]
    rows += [
        [G.factors[i] if j == i else 0 for j in range(k)] for i in range(k)
    ]
    B = hermite_basis(rows)
    assert len(B) == k, "subgroup lattice must have full rank"
    # W = D * B^{-1} over Z, rows span the kernel of Z^k -> sub, v -> v*B
    W = []
    for i in range(k):
        target = [G.factors[i] if j == i else 0 for j in range(k)]
        row = _solve_row_upper(B, target)
        W.append(row)
    S, _U, V = smith_normal_form(W)
    Vinv = invert_unimodular(V)
    gens = []
    orders = []
    for i in range(k):
        d = S[i][i] if i < len(S) else 0
        assert d != 0, "subgroup quotient must be finite"
        if d == 1:
            continue
        vec = [sum(Vinv[i][t] * B[t][j] for t in range(k)) for j in range(k)]
        gens.append(G.element(vec))
        orders.append(d)
    coords: dict[GroupElem, tuple[int, ...]] = {}
    for tup in itertools.product(*(range(o) for o in orders)):
        elem = G.identity
        for g, c in zip(gens, tup):
            elem = elem * (g**c)
        coords[elem] = tup
    assert len(coords) == sub.order, "basis does not enumerate the subgroup"
    return tuple(gens), tuple(orders), coords


def _solve_row_upper(B: list[list[int]], target: list[int]) -> list[int]:
    """Solve x * B = target for integer x, with B an upper-triangular basis.

    Row j of B has its pivot in column j, so coordinates are forced from the
    leftmost column onward.
    """
    k = len(B)
    x = [0] * k
    rem = list(target)
    for j in range(k):
        piv = B[j][j]
        assert rem[j] % piv == 0, "target not in lattice"
        x[j] = rem[j] // piv
        if x[j]:
            for t in range(k):
                rem[t] -= x[j] * B[j][t]
    assert all(v == 0 for v in rem)
    return x


@dataclass(frozen=True)
class QuotientMap:
    """The projection G -> G/T, with kernel exactly T."""

    source: FinAbGroup
    target: FinAbGroup
    col_transform: tuple[tuple[int, ...], ...]  # V from the SNF of the relation lattice
    moduli: tuple[int, ...]
    kept: tuple[int, ...]

    def __call__(self, g: GroupElem) -> GroupElem:
        if g.group != self.source:
            raise ValueError("element not in the source group")
        k = len(self.source.factors)
        w = [
            sum(g.coords[i] * self.col_transform[i][j] for i in range(k))
            for j in range(k)
        ]
        if not self.kept:
            return self.target.identity
        return self.target.element(tuple(w[j] % self.moduli[j] for j in self.kept))


def quotient(group: FinAbGroup, sub: Subgroup) -> tuple[FinAbGroup, QuotientMap]:
    """G/T in Smith-normalized cyclic-factor form, plus the projection map."""
    if sub.parent != group:
        raise ValueError("subgroup belongs to a different group")
    k = len(group.factors)
    rows = [list(g.coords) for g in sub.sorted_elements()]
    rows += [[group.factors[i] if j == i else 0 for j in range(k)] for i in range(k)]
    B = hermite_basis(rows)
    S, _U, V = smith_normal_form(B)
    moduli = [S[i][i] for i in range(k)]
    kept = tuple(i for i in range(k) if moduli[i] > 1)
    target = FinAbGroup(tuple(moduli[i] for i in kept) or (1,))
    qmap = QuotientMap(
        source=group,
        target=target,
        col_transform=tuple(tuple(row) for row in V),
        moduli=tuple(moduli),
        kept=kept,
    )
    for t in sub.elements:
        assert qmap(t).is_identity, "projection must kill the subgroup"
    return target, qmap


@dataclass(frozen=True)
class Character:
    """A character of G, encoded by exponents m with chi(g) = zeta_n^{sum (n/d_i) m_i c_i}."""

    group: FinAbGroup
    exponents: tuple[int, ...]

    def value_exponent(self, g: GroupElem) -> int:
        n = self.group.exponent
        return (
            sum(
                (n // d) * m * c
                for m, c, d in zip(self.exponents, g.coords, self.group.factors)
            )
            % n
        )

    def value(self, g: GroupElem) -> CycNum:
        return get_field(self.group.exponent).zeta(self.value_exponent(g))

    @property
    def order(self) -> int:
        return lcm(
            *(d // gcd(d, m) if m else 1 for m, d in zip(self.exponents, self.group.factors))
        )

    @property
    def is_trivial(self) -> bool:
        return all(m == 0 for m in self.exponents)

    def __pow__(self, k: int) -> "Character":
        return Character(
            self.group,
            tuple((m * k) % d for m, d in zip(self.exponents, self.group.factors)),
        )

    def __mul__(self, other: "Character") -> "Character":
        return Character(
            self.group,
            tuple(
                (a + b) % d
                for a, b, d in zip(self.exponents, other.exponents, self.group.factors)
            ),
        )

    def __repr__(self) -> str:
        return "chi" + repr(self.exponents)


@dataclass(frozen=True)
class CharOrbit:
    """Galois orbit of a character under chi -> chi^k, gcd(k, exponent) = 1."""

    representative: Character
    members: frozenset[Character]

    @property
    def field_degree(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return self.representative.is_trivial

    def sort_key(self):
        return (0 if self.is_trivial else 1, self.representative.exponents)

    def __repr__(self) -> str:
        return f"Orbit({self.representative}, size {self.field_degree})"


def dual_group(group: FinAbGroup) -> FinAbGroup:
    """The dual group, identified with G through exponent coordinates."""
    return FinAbGroup(group.factors)


def character_from_dual_elem(g: GroupElem) -> Character:
    return Character(g.group, g.coords)


def dual_elem_from_character(chi: Character) -> GroupElem:
    return GroupElem(dual_group(chi.group), chi.exponents)


@lru_cache(maxsize=None)
def dual_and_orbits(group: FinAbGroup) -> tuple[CharOrbit, ...]:
    """All characters of G partitioned into Galois orbits, trivial orbit first."""
    n = group.exponent
    units = [k for k in range(1, n + 1) if gcd(k, n) == 1]
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for coords in itertools.product(*(range(d) for d in group.factors)):
        if coords in seen:
            continue
        chi = Character(group, coords)
        members = {chi**k for k in units}
        for m in members:
            seen.add(m.exponents)
        rep = min(members, key=lambda c: c.exponents)
        orbits.append(CharOrbit(rep, frozenset(members)))
    orbits.sort(key=lambda o: o.sort_key())
    assert sum(o.field_degree for o in orbits) == group.order
    return tuple(orbits)


def trivial_orbit(group: FinAbGroup) -> CharOrbit:
    return dual_and_orbits(group)[0]


def orbit_of_character(chi: Character) -> CharOrbit:
    for orbit in dual_and_orbits(chi.group):
        if chi in orbit.members:
            return orbit
    raise AssertionError("character missed by the orbit partition")


def perp(group: FinAbGroup, arg):
    """Annihilator: a subgroup of G gives T-perp in the dual group; a set of
    character orbits gives S-perp in G."""
    if isinstance(arg, Subgroup):
        return perp_of_subgroup(arg)
    return perp_of_orbits(group, arg)


def perp_of_subgroup(sub: Subgroup) -> Subgroup:
    G = sub.parent
    dual = dual_group(G)
    members = []
    for m in dual.elements():
        chi = Character(G, m.coords)
        if all(chi.value_exponent(t) == 0 for t in sub.elements):
            members.append(m)
    return Subgroup(dual, frozenset(members), tuple(sorted(members, key=lambda g: g.coords)))


def perp_of_orbits(group: FinAbGroup, orbits) -> Subgroup:
    members = []
    for g in group.elements():
        if all(
            chi.value_exponent(g) == 0 for orbit in orbits for chi in orbit.members
        ):
            members.append(g)
    return Subgroup(
        group, frozenset(members), tuple(sorted(members, key=lambda e: e.coords))
    )
