"""Descriptors of direct limits of graded matrix algebras and the budgeted
classification procedures.

A descriptor is M_{x0} (x) M_{a_1} (x) M_{a_2} (x) ... with an eventually
periodic label sequence (finite prefix plus repeated cycle), optionally
tensored with a graded-division algebra.  Standard-form reduction makes every
label's character support a fixed set S; the ordered K-theory datum is then
realized as explicit cyclotomic coordinates with denominator sequence the
partial products of the labels.

All procedures return three-valued verdicts.  A yes or no always carries a
certificate that can be replayed by exact arithmetic; unknown means the
search budget ran out.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import prod

from .abelian import (
    CharOrbit,
    FinAbGroup,
    GroupElem,
    Subgroup,
    dual_and_orbits,
    perp_of_orbits,
    quotient,
)
from .cyclotomic import CycNum
from .divalg import DivisionClass, brauer_mul
from .groupring import (
    GroupRingElem,
    ProjCoords,
    canonical_orbits,
    cone_preimage,
    lattice_preimage,
    project,
    subgroup_sum,
    supp_orbits,
)

DEFAULT_BUDGET = 32
DEFAULT_PRIME_BUDGET = 13


# ---------------------------------------------------------------------------
# verdicts and certificate payload helpers


@dataclass(frozen=True)
class TriBool:
    """A yes/no/unknown verdict; yes and no always carry a certificate."""

    verdict: str
    certificate: dict

    def __post_init__(self):
        if self.verdict not in ("yes", "no", "unknown"):
            raise ValueError(f"bad verdict {self.verdict!r}")

    @staticmethod
    def yes(certificate: dict) -> "TriBool":
        return TriBool("yes", certificate)

    @staticmethod
    def no(certificate: dict) -> "TriBool":
        return TriBool("no", certificate)

    @staticmethod
    def unknown(certificate: dict | None = None) -> "TriBool":
        return TriBool("unknown", certificate or {"kind": "budget-exhausted"})

    @property
    def is_yes(self) -> bool:
        return self.verdict == "yes"

    @property
    def is_no(self) -> bool:
        return self.verdict == "no"

    @property
    def is_certified(self) -> bool:
        return self.verdict != "unknown"


def elem_payload(z: GroupRingElem) -> list[dict]:
    out = []
    for g, c in z.coeffs:
        mult = int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        out.append({"elem": list(g.coords), "mult": mult})
    return out


def payload_elem(group: FinAbGroup, payload) -> GroupRingElem:
    data: dict[GroupElem, Fraction] = {}
    for item in payload:
        g = group.element(tuple(item["elem"]))
        data[g] = data.get(g, Fraction(0)) + Fraction(str(item["mult"]))
    return GroupRingElem.from_dict(group, data)


def orbit_payload(o: CharOrbit) -> dict:
    return {"rep": list(o.representative.exponents), "size": o.field_degree}


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class LimitDescriptor:
    """An eventually periodic direct limit M_{x0} (x) (x)_i M_{a_i} ((x) D)."""

    group: FinAbGroup
    x0: GroupRingElem
    prefix: tuple[GroupRingElem, ...]
    cycle: tuple[GroupRingElem, ...]
    division: DivisionClass | None = None

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must contain at least one label")
        for lbl in (self.x0, *self.prefix, *self.cycle):
            if lbl.group != self.group:
                raise ValueError("label over the wrong group")
            if lbl.is_zero:
                raise ValueError("labels must be nonzero")
            if not lbl.is_nonneg_integer:
                raise ValueError("labels must have nonnegative integer coefficients")
        if self.division is not None and self.division.group != self.group:
            raise ValueError("division class over the wrong group")

    @property
    def is_elementary(self) -> bool:
        return self.division is None or self.division.is_trivial

    def elementary_part(self) -> "LimitDescriptor":
        return replace(self, division=None)


def tensor_elementary(d: LimitDescriptor, c: GroupRingElem) -> LimitDescriptor:
    """Tensor with one more matrix factor: x0 becomes c*x0, labels unchanged."""
    if c.is_zero:
        raise ValueError("matrix factor must be nonzero")
    if not c.is_nonneg_integer:
        raise ValueError("matrix factor must have nonnegative integer coefficients")
    return replace(d, x0=c * d.x0)


def quotient_pushforward(d: LimitDescriptor, sub: Subgroup) -> LimitDescriptor:
    """Push a descriptor through G -> G/T, adding coefficients inside cosets."""
    if d.division is not None:
        raise ValueError("pushforward is defined on elementary descriptors")
    target, alpha = quotient(d.group, sub)

    def push(z: GroupRingElem) -> GroupRingElem:
        data: dict[GroupElem, Fraction] = {}
        for g, c in z.coeffs:
            h = alpha(g)
            data[h] = data.get(h, Fraction(0)) + c
        return GroupRingElem.from_dict(target, data)

    return LimitDescriptor(
        target,
        push(d.x0),
        tuple(push(a) for a in d.prefix),
        tuple(push(a) for a in d.cycle),
        None,
    )


def standard_form(d: LimitDescriptor) -> LimitDescriptor:
    """Equivalent descriptor in which every label has character support S and
    the initial multiset's support is contained in S.

    The prefix is absorbed into x0, then cycle labels are absorbed until the
    support condition holds, and the cycle is merged into the product over one
    period (a cofinal subsequence, so the limit is unchanged).
    """
    cycle_product = prod(d.cycle, start=GroupRingElem.one(d.group))
    S = supp_orbits(cycle_product)
    x0 = d.x0
    for a in d.prefix:
        x0 = x0 * a
    absorbed = 0
    while not supp_orbits(x0) <= S:
        x0 = x0 * d.cycle[absorbed % len(d.cycle)]
        absorbed += 1
        if absorbed > len(d.cycle):
            raise AssertionError("support did not stabilize within one period")
    return LimitDescriptor(d.group, x0, (), (cycle_product,), d.division)


def support_invariants(d: LimitDescriptor):
    """The invariants (S, S0) of the elementary part."""
    sf = standard_form(d.elementary_part())
    return supp_orbits(sf.cycle[0]), supp_orbits(sf.x0)


# ---------------------------------------------------------------------------
# realized K-theory data


@dataclass(frozen=True)
class K0Descriptor:
    """Realized ordered K-theory datum of a standard-form descriptor."""

    group: FinAbGroup
    orbits: tuple[CharOrbit, ...]  # S, canonically ordered
    s0: frozenset[CharOrbit]
    x0_bar: GroupRingElem
    cycle_bar: GroupRingElem
    prefix_bars: tuple[GroupRingElem, ...] = ()

    @property
    def order_unit(self) -> ProjCoords:
        return project(self.x0_bar, self.orbits)

    @property
    def denom_prefix(self) -> tuple[ProjCoords, ...]:
        return tuple(project(a, self.orbits) for a in self.prefix_bars)

    @property
    def denom_cycle(self) -> tuple[ProjCoords, ...]:
        return (project(self.cycle_bar, self.orbits),)

    @property
    def S(self) -> frozenset[CharOrbit]:
        return frozenset(self.orbits)

    def coords_of(self, z: GroupRingElem) -> ProjCoords:
        return project(z, self.orbits)

    def ones(self) -> ProjCoords:
        return project(GroupRingElem.one(self.group), self.orbits)

    def denominators(self, budget: int):
        """Unrolled denominator elements b_i, i = 1..(prefix length + budget)."""
        running = GroupRingElem.one(self.group)
        i = 0
        for a in self.prefix_bars:
            running = running * a
            i += 1
            yield i, running
        for _ in range(budget):
            running = running * self.cycle_bar
            i += 1
            yield i, running

    def denominator_at(self, index: int) -> GroupRingElem:
        for i, b in self.denominators(index):
            if i == index:
                return b
        raise ValueError(f"denominator index {index} out of range")


def k0_realization(d: LimitDescriptor) -> K0Descriptor:
    """The realized triple: coordinates of the order-unit and denominators.

    With a division part of support T the realization is computed over G/T
    through the coefficient-collapsing pushforward.
    """
    base = d
    if d.division is not None and not d.division.is_trivial:
        base = quotient_pushforward(d.elementary_part(), d.division.support)
    else:
        base = d.elementary_part()
    sf = standard_form(base)
    S = canonical_orbits(sf.group, supp_orbits(sf.cycle[0]))
    s0 = supp_orbits(sf.x0)
    assert s0 <= set(S)
    assert S and S[0].is_trivial, "the trivial orbit is always in S"
    denom = project(sf.cycle[0].bar(), S)
    assert not any(v.is_zero for v in denom.values), "denominator vanishes on S"
    return K0Descriptor(
        group=sf.group,
        orbits=S,
        s0=frozenset(s0),
        x0_bar=sf.x0.bar(),
        cycle_bar=sf.cycle[0].bar(),
    )


# ---------------------------------------------------------------------------
# membership in K and K+


def _valuation(q: Fraction, p: int) -> int:
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _norm_obstruction(k0: K0Descriptor, z: ProjCoords) -> dict | None:
    """Denominator primes of a coordinate norm that the cycle can never clear."""
    cyc = project(k0.cycle_bar, k0.orbits)
    partial_norms: list[list[Fraction]] = []
    running = GroupRingElem.one(k0.group)
    partial_norms.append([v.norm_to_q() for v in project(running, k0.orbits).values])
    for a in k0.prefix_bars:
        running = running * a
        partial_norms.append(
            [v.norm_to_q() for v in project(running, k0.orbits).values]
        )
    for j, orbit in enumerate(k0.orbits):
        val = z.values[j]
        if val.is_zero:
            continue
        nz = val.norm_to_q()
        cyc_norm = cyc.values[j].norm_to_q()
        den = nz.denominator
        p = 2
        while den > 1:
            if den % p == 0:
                while den % p == 0:
                    den //= p
                if _valuation(cyc_norm, p) == 0:
                    cap = max(
                        _valuation(norms[j], p) if norms[j] else 0
                        for norms in partial_norms
                    )
                    if _valuation(nz, p) + cap < 0:
                        return {
                            "kind": "norm-obstruction",
                            "orbit": orbit_payload(orbit),
                            "prime": p,
                            "value_valuation": _valuation(nz, p),
                            "prefix_valuation_cap": cap,
                        }
            p += 1
    return None


def in_k_group(k0: K0Descriptor, z: ProjCoords, budget: int = DEFAULT_BUDGET) -> TriBool:
    """Membership of a coordinate vector in the realized K group."""
    if z.orbits != k0.orbits:
        raise ValueError("coordinates over the wrong orbit set")
    if z.is_zero:
        return TriBool.yes(
            {"kind": "member-witness", "cone": False, "index": 1, "witness": []}
        )
    for i, b in k0.denominators(budget):
        w = lattice_preimage(z * project(b, k0.orbits))
        if w is not None:
            return TriBool.yes(
                {
                    "kind": "member-witness",
                    "cone": False,
                    "index": i,
                    "witness": elem_payload(w),
                }
            )
    obstruction = _norm_obstruction(k0, z)
    if obstruction is not None:
        return TriBool.no(obstruction)
    return TriBool.unknown({"kind": "budget-exhausted", "budget": budget})


def in_positive_cone(
    k0: K0Descriptor, z: ProjCoords, budget: int = DEFAULT_BUDGET
) -> TriBool:
    """Membership of a coordinate vector in the realized positive cone."""
    if z.orbits != k0.orbits:
        raise ValueError("coordinates over the wrong orbit set")
    if k0.orbits[0].is_trivial:
        trivial_value = z.values[0]
        if not trivial_value.is_rational:
            return TriBool.no({"kind": "irrational-trivial-coordinate"})
        tv = trivial_value.as_rational()
        if tv < 0:
            return TriBool.no(
                {"kind": "negative-trivial-coordinate", "value": str(tv)}
            )
        if not z.is_zero and tv == 0:
            return TriBool.no({"kind": "zero-trivial-coordinate"})
    if z.is_zero:
        return TriBool.yes(
            {"kind": "member-witness", "cone": True, "index": 1, "witness": []}
        )
    for i, b in k0.denominators(budget):
        w = cone_preimage(z * project(b, k0.orbits))
        if w is not None:
            return TriBool.yes(
                {
                    "kind": "member-witness",
                    "cone": True,
                    "index": i,
                    "witness": elem_payload(w),
                }
            )
    obstruction = _norm_obstruction(k0, z)
    if obstruction is not None:
        return TriBool.no(obstruction)
    return TriBool.unknown({"kind": "budget-exhausted", "budget": budget})


# ---------------------------------------------------------------------------
# scaling, absorption


def scaling_invertible(
    k0: K0Descriptor, c: GroupRingElem, budget: int = DEFAULT_BUDGET
) -> TriBool:
    """Does multiplication by the bar of c map the positive cone onto itself?

    The inclusion into the cone is automatic; equality reduces to membership
    of 1/pi(cbar) in the cone, and one witness propagates to every unroll
    index by periodicity.
    """
    if c.group != k0.group:
        raise ValueError("scaler over the wrong group")
    if c.is_zero or not c.is_nonneg_integer:
        raise ValueError("scaler must be a nonzero nonnegative integer element")
    supp_c = supp_orbits(c)
    missing = [o for o in k0.orbits if o not in supp_c]
    if missing:
        return TriBool.no(
            {"kind": "support-deficit", "orbit": orbit_payload(missing[0])}
        )
    target = k0.ones() * project(c.bar(), k0.orbits).inverse()
    inner = in_positive_cone(k0, target, budget)
    cert = {"kind": "scaling", "scaler": elem_payload(c), "inner": inner.certificate}
    return TriBool(inner.verdict, cert)


def absorbs_k0(k0: K0Descriptor, d_class: DivisionClass, budget: int = DEFAULT_BUDGET) -> TriBool:
    """Absorption test against a realized K-theory datum."""
    if d_class.group != k0.group:
        raise ValueError("division class over the wrong group")
    sperp = perp_of_orbits(k0.group, k0.orbits)
    for t in d_class.support.sorted_elements():
        if t not in sperp:
            bad = next(
                o
                for o in k0.orbits
                if o.representative.value_exponent(t) != 0
            )
            return TriBool.no(
                {
                    "kind": "support-obstruction",
                    "element": list(t.coords),
                    "orbit": orbit_payload(bad),
                }
            )
    order = d_class.support.order
    inner = scaling_invertible(
        k0, GroupRingElem.constant(k0.group, order), budget
    )
    cert = {"kind": "absorption", "support_order": order, "inner": inner.certificate}
    return TriBool(inner.verdict, cert)


def absorbs(
    d: LimitDescriptor, d_class: DivisionClass, budget: int = DEFAULT_BUDGET
) -> TriBool:
    """Is the graded-division algebra absorbed by the elementary limit?

    Yes means the tensor product is isomorphic to the limit itself.  The test
    is: the support annihilates S, and |T| scales the cone invertibly.
    """
    if d.division is not None and not d.division.is_trivial:
        raise ValueError("absorption is tested against an elementary descriptor")
    if d_class.group != d.group:
        raise ValueError("division class over the wrong group")
    return absorbs_k0(k0_realization(d.elementary_part()), d_class, budget)


# ---------------------------------------------------------------------------
# isomorphism procedures


def _cycle_divisibility(
    k0: K0Descriptor, other_cycle_bar: GroupRingElem, budget: int
) -> tuple[int, GroupRingElem] | None:
    """Find (delta, u) with pi(other_cycle * u) = pi(cycle^delta) over S."""
    inv = project(other_cycle_bar, k0.orbits).inverse()
    power = k0.ones()
    cyc = project(k0.cycle_bar, k0.orbits)
    for delta in range(1, budget + 1):
        power = power * cyc
        u = cone_preimage(power * inv)
        if u is not None:
            return delta, u
    return None


def _forced_target_values(
    k0a: K0Descriptor, rhs: GroupRingElem
) -> dict[CharOrbit, CycNum]:
    """Coordinates forced on S0 by the order-unit equation, zero off S."""
    forced: dict[CharOrbit, CycNum] = {}
    all_orbits = dual_and_orbits(k0a.group)
    rhs_coords = project(rhs, all_orbits)
    x0_coords = project(k0a.x0_bar, all_orbits)
    for o, rv, xv in zip(rhs_coords.orbits, rhs_coords.values, x0_coords.values):
        if o in k0a.s0:
            forced[o] = rv * xv.inverse()
        elif o not in k0a.S:
            forced[o] = rv * 0  # zero off S
    return forced


def _solve_initial_factor(
    k0a: K0Descriptor, rhs: GroupRingElem, pinned: GroupRingElem | None
) -> GroupRingElem | None:
    """A nonnegative integer b with b*x0bar = rhs and support exactly S.

    Coordinates on S0 are forced by division, coordinates off S must vanish;
    coordinates on S minus S0 are free (or pinned to the given element's
    values on a retry).  Returns None when the constrained cone is empty or
    the free coordinates came out vanishing.
    """
    forced = _forced_target_values(k0a, rhs)
    group = k0a.group
    if pinned is not None:
        all_orbits = dual_and_orbits(group)
        pin_coords = project(pinned, all_orbits)
        for o, v in zip(pin_coords.orbits, pin_coords.values):
            if o in k0a.S and o not in k0a.s0:
                forced[o] = v
    orbs = canonical_orbits(group, forced.keys())
    target = ProjCoords(group, orbs, tuple(forced[o] for o in orbs))
    b = cone_preimage(target)
    if b is None:
        return None
    b_coords = project(b, k0a.orbits)
    if any(v.is_zero for v in b_coords.values):
        return None
    return b


def iso_elementary(
    d: LimitDescriptor,
    d2: LimitDescriptor,
    budget: int = DEFAULT_BUDGET,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
    extra_label_bound: int = 0,
) -> TriBool:
    """Isomorphism of two elementary limits over the same group.

    Certified no comes from invariant mismatch or a separating prime scaling
    invariant; certified yes from an explicit pair (b, b') equalizing the
    order-units together with replayable mutual cone memberships and cycle
    divisibility witnesses.  Everything else is unknown.
    """
    if d.group != d2.group:
        raise ValueError("descriptors over different groups")
    if not (d.is_elementary and d2.is_elementary):
        raise ValueError("iso_elementary requires elementary descriptors")
    k0a = k0_realization(d)
    k0b = k0_realization(d2)
    if k0a.S != k0b.S:
        return TriBool.no(
            {
                "kind": "invariant-mismatch",
                "invariant": "S",
                "left": [orbit_payload(o) for o in k0a.orbits],
                "right": [orbit_payload(o) for o in k0b.orbits],
            }
        )
    if k0a.s0 != k0b.s0:
        return TriBool.no(
            {
                "kind": "invariant-mismatch",
                "invariant": "S0",
                "left": [orbit_payload(o) for o in canonical_orbits(d.group, k0a.s0)],
                "right": [orbit_payload(o) for o in canonical_orbits(d.group, k0b.s0)],
            }
        )
    # a size-1 cycle presents a finite-dimensional algebra: the matrix sizes
    # stabilize and isomorphism is exactly shift-equivalence of the multiset
    finite_a = k0a.cycle_bar.size() == 1
    finite_b = k0b.cycle_bar.size() == 1
    if finite_a != finite_b:
        return TriBool.no(
            {
                "kind": "dimension-type-mismatch",
                "left_cycle_size": str(k0a.cycle_bar.size()),
                "right_cycle_size": str(k0b.cycle_bar.size()),
            }
        )
    if finite_a and finite_b:
        shift = _shift_between(k0a.x0_bar, k0b.x0_bar)
        if shift is None:
            return TriBool.no({"kind": "finite-type-no-shift"})

    for p in _primes_up_to(prime_budget):
        scaler = GroupRingElem.constant(d.group, p)
        va = scaling_invertible(k0a, scaler, budget)
        vb = scaling_invertible(k0b, scaler, budget)
        if va.is_certified and vb.is_certified and va.verdict != vb.verdict:
            return TriBool.no(
                {
                    "kind": "prime-separation",
                    "prime": p,
                    "left_verdict": va.verdict,
                    "left": va.certificate,
                    "right_verdict": vb.verdict,
                    "right": vb.certificate,
                }
            )

    cyc_fwd = _cycle_divisibility(k0b, k0a.cycle_bar, budget)
    cyc_bwd = _cycle_divisibility(k0a, k0b.cycle_bar, budget)
    if cyc_fwd is None or cyc_bwd is None:
        return TriBool.unknown(
            {"kind": "budget-exhausted", "stage": "cycle-divisibility", "budget": budget}
        )

    s_is_everything = len(k0a.orbits) == len(dual_and_orbits(d.group))
    start = 0 if s_is_everything else 1
    candidates_b2: list[GroupRingElem] = []
    power = GroupRingElem.one(d.group)
    for k in range(budget + 1):
        if k:
            power = power * k0b.cycle_bar
        if k >= start:
            candidates_b2.append(power)
    if extra_label_bound > 0:
        extended = []
        for w in _bounded_multipliers(d.group, k0a.S, extra_label_bound):
            for b2 in candidates_b2:
                extended.append(b2 * w)
        candidates_b2.extend(extended)

    shifts = [
        GroupRingElem.monomial(g)
        for g in sorted(d.group.elements(), key=lambda e: e.coords)
    ]
    for b2 in candidates_b2:
        rhs = b2 * k0b.x0_bar
        b_list = []
        if k0a.x0_bar == k0b.x0_bar:
            b_list.append(b2)
        # order units related by a shift: try translated copies of b' first
        for s in shifts:
            if (b2 * s) * k0a.x0_bar == rhs:
                b_list.append(b2 * s)
        for pinned in (None, b2, b2 * k0a.cycle_bar):
            cand = _solve_initial_factor(k0a, rhs, pinned)
            if cand is not None:
                b_list.append(cand)
        for b in b_list:
            if b * k0a.x0_bar != rhs:
                continue
            if supp_orbits(b) != k0a.S:
                continue
            verdict = _mutual_cone_equality(k0a, k0b, b, b2, budget, cyc_fwd, cyc_bwd)
            if verdict is not None:
                return verdict
    return TriBool.unknown(
        {"kind": "budget-exhausted", "budget": budget, "prime_budget": prime_budget}
    )


def _mutual_cone_equality(
    k0a: K0Descriptor,
    k0b: K0Descriptor,
    b: GroupRingElem,
    b2: GroupRingElem,
    budget: int,
    cyc_fwd: tuple[int, GroupRingElem],
    cyc_bwd: tuple[int, GroupRingElem],
) -> TriBool | None:
    b_c = project(b, k0a.orbits)
    b2_c = project(b2, k0a.orbits)
    fwd = in_positive_cone(k0b, b_c * b2_c.inverse(), budget)
    if not fwd.is_yes:
        return None
    bwd = in_positive_cone(k0a, b2_c * b_c.inverse(), budget)
    if not bwd.is_yes:
        return None
    delta_f, u_f = cyc_fwd
    delta_b, u_b = cyc_bwd
    return TriBool.yes(
        {
            "kind": "iso-witness",
            "b": elem_payload(b),
            "b_prime": elem_payload(b2),
            "base_forward": fwd.certificate,
            "base_backward": bwd.certificate,
            "cycle_forward": {"delta": delta_f, "witness": elem_payload(u_f)},
            "cycle_backward": {"delta": delta_b, "witness": elem_payload(u_b)},
        }
    )


def _shift_between(x: GroupRingElem, y: GroupRingElem) -> GroupElem | None:
    """A group element g with g*x = y, if one exists."""
    for g in sorted(x.group.elements(), key=lambda e: e.coords):
        if x.translate(g) == y:
            return g
    return None


def _primes_up_to(bound: int) -> list[int]:
    out = []
    for p in range(2, bound + 1):
        if all(p % q for q in out):
            out.append(p)
    return out


def _bounded_multipliers(group: FinAbGroup, S, bound: int, cap: int = 20000):
    """Nonnegative elements with coefficients at most the bound and support S."""
    import itertools

    elems = sorted(group.elements(), key=lambda g: g.coords)
    count = 0
    for combo in itertools.product(range(bound + 1), repeat=len(elems)):
        count += 1
        if count > cap:
            return
        if not any(combo):
            continue
        w = GroupRingElem.from_dict(
            group, {g: Fraction(c) for g, c in zip(elems, combo)}
        )
        if supp_orbits(w) == S:
            yield w


def iso_general(
    d: LimitDescriptor,
    d2: LimitDescriptor,
    budget: int = DEFAULT_BUDGET,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
) -> TriBool:
    """Isomorphism of limits with graded-division parts.

    Reduces to (i) absorption of the Brauer quotient class by the first
    elementary part and (ii) elementary isomorphism after tensoring with the
    matrix multiset relating the two division algebras.
    """
    if d.group != d2.group:
        raise ValueError("descriptors over different groups")
    cls = d.division or DivisionClass.trivial(d.group)
    cls2 = d2.division or DivisionClass.trivial(d2.group)
    e_class, y, _h = brauer_mul(cls, cls2)
    part1 = absorbs(d.elementary_part(), e_class, budget)
    if part1.is_no:
        return TriBool.no({"kind": "absorption-fails", "inner": part1.certificate})
    part2 = iso_elementary(
        tensor_elementary(d.elementary_part(), y),
        tensor_elementary(d2.elementary_part(), subgroup_sum(cls2.support)),
        budget,
        prime_budget,
    )
    if part2.is_no:
        return TriBool.no({"kind": "elementary-part", "inner": part2.certificate})
    if part1.is_yes and part2.is_yes:
        return TriBool.yes(
            {
                "kind": "general-iso",
                "absorption": part1.certificate,
                "elementary": part2.certificate,
                "y": elem_payload(y),
                "support_product_class": [
                    list(t.coords) for t in e_class.support.sorted_elements()
                ],
            }
        )
    return TriBool.unknown(
        {
            "kind": "budget-exhausted",
            "absorption": part1.certificate,
            "elementary": part2.certificate,
        }
    )


# ---------------------------------------------------------------------------
# certificate replay


def verify_member_certificate(
    k0: K0Descriptor, z: ProjCoords, verdict: str, cert: dict
) -> bool:
    """Replay a membership certificate by exact arithmetic."""
    kind = cert.get("kind")
    if verdict == "yes":
        if kind != "member-witness":
            return False
        w = payload_elem(k0.group, cert["witness"])
        if cert["cone"] and not w.is_nonneg_integer:
            return False
        if not cert["cone"] and not w.is_integer:
            return False
        b = k0.denominator_at(cert["index"])
        return project(w, k0.orbits) == z * project(b, k0.orbits)
    if verdict == "no":
        if kind == "negative-trivial-coordinate":
            v = z.values[0]
            return v.is_rational and v.as_rational() < 0
        if kind == "zero-trivial-coordinate":
            v = z.values[0]
            return v.is_rational and v.as_rational() == 0 and not z.is_zero
        if kind == "irrational-trivial-coordinate":
            return not z.values[0].is_rational
        if kind == "norm-obstruction":
            rep = tuple(cert["orbit"]["rep"])
            p = cert["prime"]
            idx = next(
                i
                for i, o in enumerate(k0.orbits)
                if o.representative.exponents == rep
            )
            val = z.values[idx]
            if val.is_zero:
                return False
            cyc_norm = project(k0.cycle_bar, k0.orbits).values[idx].norm_to_q()
            if _valuation(cyc_norm, p) != 0:
                return False
            running = GroupRingElem.one(k0.group)
            caps = [0]
            for a in k0.prefix_bars:
                running = running * a
                nv = project(running, k0.orbits).values[idx].norm_to_q()
                caps.append(_valuation(nv, p) if nv else 0)
            return _valuation(val.norm_to_q(), p) + max(caps) < 0
        return False
    return kind == "budget-exhausted"


def verify_scaling_certificate(
    k0: K0Descriptor, c: GroupRingElem, verdict: str, cert: dict
) -> bool:
    kind = cert.get("kind")
    if kind == "support-deficit":
        rep = tuple(cert["orbit"]["rep"])
        orbit = next(
            (o for o in k0.orbits if o.representative.exponents == rep), None
        )
        if orbit is None:
            return False
        return verdict == "no" and orbit not in supp_orbits(c)
    if kind != "scaling":
        return False
    if payload_elem(k0.group, cert["scaler"]) != c:
        return False
    target = k0.ones() * project(c.bar(), k0.orbits).inverse()
    return verify_member_certificate(k0, target, verdict, cert["inner"])


def verify_absorbs_certificate(
    d: LimitDescriptor, d_class: DivisionClass, verdict: str, cert: dict
) -> bool:
    return verify_absorbs_k0_certificate(
        k0_realization(d.elementary_part()), d_class, verdict, cert
    )


def verify_absorbs_k0_certificate(
    k0: K0Descriptor, d_class: DivisionClass, verdict: str, cert: dict
) -> bool:
    kind = cert.get("kind")
    if kind == "support-obstruction":
        t = k0.group.element(tuple(cert["element"]))
        rep = tuple(cert["orbit"]["rep"])
        orbit = next(
            (o for o in k0.orbits if o.representative.exponents == rep), None
        )
        return (
            verdict == "no"
            and orbit is not None
            and t in d_class.support
            and orbit.representative.value_exponent(t) != 0
        )
    if kind != "absorption":
        return False
    if cert.get("support_order") != d_class.support.order:
        return False
    scaler = GroupRingElem.constant(k0.group, d_class.support.order)
    return verify_scaling_certificate(k0, scaler, verdict, cert["inner"])


def verify_iso_certificate(
    d: LimitDescriptor, d2: LimitDescriptor, verdict: str, cert: dict
) -> bool:
    """Replay an elementary-isomorphism certificate."""
    kind = cert.get("kind")
    k0a = k0_realization(d)
    k0b = k0_realization(d2)
    if kind == "invariant-mismatch":
        if verdict != "no":
            return False
        if cert["invariant"] == "S":
            return k0a.S != k0b.S
        return k0a.s0 != k0b.s0
    if kind == "dimension-type-mismatch":
        return verdict == "no" and (
            (k0a.cycle_bar.size() == 1) != (k0b.cycle_bar.size() == 1)
        )
    if kind == "finite-type-no-shift":
        return (
            verdict == "no"
            and k0a.cycle_bar.size() == 1
            and k0b.cycle_bar.size() == 1
            and _shift_between(k0a.x0_bar, k0b.x0_bar) is None
        )
    if kind == "prime-separation":
        if verdict != "no":
            return False
        p = cert["prime"]
        scaler = GroupRingElem.constant(d.group, p)
        ok_l = verify_scaling_certificate(k0a, scaler, cert["left_verdict"], cert["left"])
        ok_r = verify_scaling_certificate(k0b, scaler, cert["right_verdict"], cert["right"])
        return (
            ok_l
            and ok_r
            and cert["left_verdict"] != cert["right_verdict"]
            and "unknown" not in (cert["left_verdict"], cert["right_verdict"])
        )
    if kind == "iso-witness":
        if verdict != "yes":
            return False
        b = payload_elem(d.group, cert["b"])
        b2 = payload_elem(d.group, cert["b_prime"])
        if not (b.is_nonneg_integer and b2.is_nonneg_integer):
            return False
        if supp_orbits(b) != k0a.S or supp_orbits(b2) != k0a.S:
            return False
        if b * k0a.x0_bar != b2 * k0b.x0_bar:
            return False
        b_c = project(b, k0a.orbits)
        b2_c = project(b2, k0a.orbits)
        if not verify_member_certificate(
            k0b, b_c * b2_c.inverse(), "yes", cert["base_forward"]
        ):
            return False
        if not verify_member_certificate(
            k0a, b2_c * b_c.inverse(), "yes", cert["base_backward"]
        ):
            return False
        for key, k_src, k_other in (
            ("cycle_forward", k0b, k0a),
            ("cycle_backward", k0a, k0b),
        ):
            delta = cert[key]["delta"]
            u = payload_elem(d.group, cert[key]["witness"])
            if not u.is_nonneg_integer:
                return False
            lhs = project(k_other.cycle_bar * u, k_src.orbits)
            if lhs != _proj_power(project(k_src.cycle_bar, k_src.orbits), delta):
                return False
        return True
    return kind == "budget-exhausted" and verdict == "unknown"


def _proj_power(c: ProjCoords, k: int) -> ProjCoords:
    out = ProjCoords(c.group, c.orbits, tuple(v.field.one for v in c.values))
    for _ in range(k):
        out = out * c
    return out


def verify_general_iso_certificate(
    d: LimitDescriptor, d2: LimitDescriptor, verdict: str, cert: dict
) -> bool:
    kind = cert.get("kind")
    cls = d.division or DivisionClass.trivial(d.group)
    cls2 = d2.division or DivisionClass.trivial(d2.group)
    e_class, y, _h = brauer_mul(cls, cls2)
    de = d.elementary_part()
    d2e = d2.elementary_part()
    if kind == "absorption-fails":
        return verdict == "no" and verify_absorbs_certificate(
            de, e_class, "no", cert["inner"]
        )
    left = tensor_elementary(de, y)
    right = tensor_elementary(d2e, subgroup_sum(cls2.support))
    if kind == "elementary-part":
        return verdict == "no" and verify_iso_certificate(
            left, right, "no", cert["inner"]
        )
    if kind == "general-iso":
        if verdict != "yes":
            return False
        if payload_elem(d.group, cert["y"]) != y:
            return False
        return verify_absorbs_certificate(
            de, e_class, "yes", cert["absorption"]
        ) and verify_iso_certificate(left, right, "yes", cert["elementary"])
    return kind == "budget-exhausted" and verdict == "unknown"
