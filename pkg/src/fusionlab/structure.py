"""Characteristic and relative subgroups, series, and p-group structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .classes import conjugacy_classes
from .errors import CapExceeded, NotASubgroup
from .numtheory import complement_primes, is_p_power, is_pi_number, pi_part, prime_divisors
from .perm import Permutation, PermGroup, commutator, config, coset_action

MAX_NORMAL_SUBGROUPS = 20_000


@dataclass
class SubgroupChain:
    terms: list[PermGroup]

    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> PermGroup:
        return self.terms[i]


@dataclass
class DerivedSeries(SubgroupChain):
    is_solvable: bool = False
    is_perfect: bool = False


@dataclass
class PGroupProfile:
    p: int
    order: int
    is_abelian: bool
    is_elementary_abelian: bool
    is_extraspecial: bool
    nilpotency_class: int
    frattini: PermGroup = field(repr=False)
    center: PermGroup = field(repr=False)
    derived: PermGroup = field(repr=False)


def _require_member(G: PermGroup, x: Permutation) -> None:
    if x not in G:
        raise NotASubgroup(f"{x!r} is not an element of the group")


def _require_subgroup(H: PermGroup, G: PermGroup, what: str = "H") -> None:
    if not H.is_subgroup_of(G):
        raise NotASubgroup(f"{what} is not a subgroup of G")


def centralizer(G: PermGroup, x: Permutation) -> PermGroup:
    _require_member(G, x)
    return G.subgroup_from_elements(G.commuting_with([x]))


def centralizer_of_subgroup(G: PermGroup, H: PermGroup) -> PermGroup:
    _require_subgroup(H, G)
    return G.subgroup_from_elements(G.commuting_with(H.generators))


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    _require_subgroup(H, G)
    if H.is_normal_in(G):
        return G
    members = H.element_set()
    gens = H.generators
    return G.subgroup_from_elements(g for g in G.elements() if all((h ** g) in members for h in gens))


def center(G: PermGroup) -> PermGroup:
    def compute():
        return G.subgroup_from_elements(G.commuting_with(G.generators))

    return G.cached("center", compute)


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    S = list(S)
    for s in S:
        _require_member(G, s)
    H = PermGroup.trivial(G.degree).extend(S)
    queue = list(H.generators)
    for h in queue:
        for g in G.generators:
            c = h ** g
            if c not in H:
                H = H.extend([c])
                queue.append(c)
    return H


def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """``[A, B]``: normal closure in ``<A, B>`` of generator commutators."""
    _require_subgroup(A, G, "A")
    _require_subgroup(B, G, "B")
    if A.order == 1 or B.order == 1:
        return PermGroup.trivial(G.degree)
    comms = [commutator(a, b) for a in A.generators for b in B.generators]
    if A is B:
        ambient = A
    else:
        ambient = A.extend(B.generators)
    return normal_closure(ambient, comms)


def derived_subgroup(G: PermGroup) -> PermGroup:
    return G.cached("derived", lambda: commutator_subgroup(G, G, G))


def derived_series(G: PermGroup) -> DerivedSeries:
    terms = [G]
    while True:
        cur = terms[-1]
        if cur.order == 1:
            break
        nxt = derived_subgroup(cur)
        terms.append(nxt)
        if nxt.order == cur.order:
            break
    return DerivedSeries(terms, is_solvable=terms[-1].order == 1,
                         is_perfect=len(terms) > 1 and terms[1].order == G.order)


def is_solvable(G: PermGroup) -> bool:
    return G.cached("solvable", lambda: derived_series(G).is_solvable)


def lower_central_series(P: PermGroup, cap: int = 10) -> SubgroupChain:
    terms = [P]
    while terms[-1].order > 1 and len(terms) <= cap:
        nxt = commutator_subgroup(P, terms[-1], P)
        if nxt.order == terms[-1].order:
            terms.append(nxt)
            break
        terms.append(nxt)
    return SubgroupChain(terms)


def o_pi_core(G: PermGroup, pi: Iterable[int]) -> PermGroup:
    """Largest normal pi-subgroup of ``G``.

    Built greedily: whole conjugacy classes of pi-elements are adjoined while
    the generated (normal) subgroup stays a pi-group, restarting after each
    successful step.
    """
    pi = frozenset(pi)

    def compute():
        if is_pi_number(G.order, pi):
            return G
        classes = [c for c in conjugacy_classes(G) if c.element_order > 1 and c.is_pi_class(pi)]
        N = PermGroup.trivial(G.degree)
        grown = True
        while grown:
            grown = False
            for c in classes:
                if c.representative in N:
                    continue
                M = N.extend(c.members)
                if is_pi_number(M.order, pi):
                    N = M
                    grown = True
                    break
        return N

    return G.cached(("o_pi", pi), compute)


def residual(G: PermGroup, pi: Iterable[int]) -> PermGroup:
    """``O^pi(G)``: generated by all pi'-elements, i.e. elements of order prime to pi."""
    pi = frozenset(pi)

    def compute():
        gens = []
        for c in conjugacy_classes(G):
            if c.element_order > 1 and not any(c.element_order % p == 0 for p in pi):
                gens.extend(c.members)
        return PermGroup.trivial(G.degree).extend(gens)

    return G.cached(("residual", pi), compute)


def upper_p_series(G: PermGroup, p: int) -> SubgroupChain:
    """``1 <= O_p <= O_{p,p'} <= O_{p,p',p} <= ...`` until it stops growing."""
    terms = [PermGroup.trivial(G.degree)]
    current = terms[0]
    want_p = True
    stalled = 0
    while current.order < G.order:
        pi = {p} if want_p else complement_primes({p}, G.order)
        act = coset_action(G, current)
        core = o_pi_core(act.image, pi)
        want_p = not want_p
        if core.order == 1:
            stalled += 1
            if stalled == 2:
                terms.append(current)
                break
            continue
        stalled = 0
        current = act.preimage(core)
        terms.append(current)
    return SubgroupChain(terms)


def _class_mask(G: PermGroup, H: PermGroup) -> int:
    mask = 0
    for i, c in enumerate(conjugacy_classes(G)):
        if c.representative in H:
            mask |= 1 << i
    return mask


def normal_subgroup_masks(G: PermGroup, class_cap: int | None = None) -> list[tuple[int, PermGroup]]:
    """Normal subgroups as ``(class bitmask, group)``, sorted by order.

    Each normal subgroup is a union of classes; every one of them is a join of
    the normal closures of single classes, so the lattice is the closure of
    those closures under joins.
    """
    cap = config.class_cap if class_cap is None else class_cap
    classes = conjugacy_classes(G)
    if len(classes) > cap:
        raise CapExceeded(f"{len(classes)} conjugacy classes exceed the class cap {cap}")

    def compute():
        trivial = PermGroup.trivial(G.degree)
        known: dict[int, PermGroup] = {1: trivial}
        seeds: list[tuple[int, PermGroup]] = []
        for c in classes[1:]:
            N = trivial.extend(c.members)
            m = _class_mask(G, N)
            if m not in known:
                known[m] = N
                seeds.append((m, N))
        queue = list(known.items())
        for mask, A in queue:
            for smask, S in seeds:
                if smask & ~mask == 0:
                    continue
                J = A.extend(S.generators)
                jm = _class_mask(G, J)
                if jm not in known:
                    known[jm] = J
                    queue.append((jm, J))
                    if len(known) > MAX_NORMAL_SUBGROUPS:
                        raise CapExceeded("too many normal subgroups")
        return sorted(known.items(), key=lambda kv: (kv[1].order, kv[0]))

    return G.cached("normal_masks", compute)


def normal_subgroups(G: PermGroup, class_cap: int | None = None) -> list[PermGroup]:
    return [N for _, N in normal_subgroup_masks(G, class_cap)]


def solvable_radical(G: PermGroup) -> PermGroup:
    """Largest solvable normal subgroup, by iterating Fitting subgroups of quotients."""

    def compute():
        R = PermGroup.trivial(G.degree)
        while R.order < G.order:
            act = coset_action(G, R)
            F = fitting_subgroup(act.image)
            if F.order == 1:
                break
            R = act.preimage(F)
        return R

    return G.cached("sol", compute)


def fitting_subgroup(G: PermGroup) -> PermGroup:
    def compute():
        F = PermGroup.trivial(G.degree)
        for p in prime_divisors(G.order):
            F = F.extend(o_pi_core(G, {p}).generators)
        return F

    return G.cached("fitting", compute)


def minimal_normal_subgroups(G: PermGroup, class_cap: int | None = None) -> list[PermGroup]:
    lattice = normal_subgroup_masks(G, class_cap)
    nontrivial = [(m, N) for m, N in lattice if N.order > 1]
    out = []
    for m, N in nontrivial:
        if not any(m2 != m and (m2 & ~m) == 0 for m2, _ in nontrivial):
            out.append(N)
    return out


def socle(G: PermGroup, class_cap: int | None = None) -> PermGroup:
    S = PermGroup.trivial(G.degree)
    for N in minimal_normal_subgroups(G, class_cap):
        S = S.extend(N.generators)
    return S


def is_simple(G: PermGroup) -> bool:
    """Nontrivial with no proper nontrivial normal subgroup.

    Decided by normal closures of class representatives, so no class cap.
    """
    if G.order == 1:
        return False
    for c in conjugacy_classes(G)[1:]:
        if normal_closure(G, [c.representative]).order < G.order:
            return False
    return True


def is_p_group(P: PermGroup, p: int) -> bool:
    return is_p_power(P.order, p)


def frattini_p_group(P: PermGroup, p: int) -> PermGroup:
    """``Phi(P) = P' P^p`` for a p-group ``P``."""
    if not is_p_group(P, p):
        raise ValueError(f"group of order {P.order} is not a {p}-group")
    return derived_subgroup(P).extend(x ** p for x in P.elements())


def p_group_profile(P: PermGroup, p: int) -> PGroupProfile:
    if not is_p_group(P, p):
        raise ValueError(f"group of order {P.order} is not a {p}-group")
    Z = center(P)
    D = derived_subgroup(P)
    Phi = frattini_p_group(P, p)
    abelian = P.is_abelian()
    lcs = lower_central_series(P)
    nil_class = len(lcs.terms) - 1 if lcs.terms[-1].order == 1 else -1
    extraspecial = Z.order == p and D.equals(Z) and Phi.equals(Z)
    elementary = abelian and all(g ** p == P.identity for g in P.generators)
    return PGroupProfile(p, P.order, abelian, elementary, extraspecial, nil_class, Phi, Z, D)


def pi_order(G: PermGroup, pi: Iterable[int]) -> int:
    return pi_part(G.order, pi)


def direct_complements(G: PermGroup, N: PermGroup, class_cap: int | None = None) -> list[PermGroup]:
    """Normal subgroups ``M`` with ``G = M x N`` (``N`` itself must be normal)."""
    lattice = normal_subgroup_masks(G, class_cap)
    n_mask = _class_mask(G, N)
    out = []
    for m, M in lattice:
        if m & n_mask == 1 and M.order * N.order == G.order:
            out.append(M)
    return out


def canonical_normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """Normal subgroups reachable without the lattice: center, derived series,
    O_p and O_p' for each prime, Fitting subgroup.  Deduplicated, sorted by order."""
    found = [PermGroup.trivial(G.degree), G, center(G), fitting_subgroup(G)]
    found += derived_series(G).terms
    for p in prime_divisors(G.order):
        found.append(o_pi_core(G, {p}))
        found.append(o_pi_core(G, complement_primes({p}, G.order)))
    out: list[PermGroup] = []
    for N in found:
        if not any(N.order == M.order and N.equals(M) for M in out):
            out.append(N)
    return sorted(out, key=lambda N: N.order)


def is_almost_simple(A: PermGroup, class_cap: int | None = None) -> tuple[bool, PermGroup | None]:
    """``S <= A <= Aut(S)`` for a nonabelian simple ``S``; returns the socle.

    Equivalent to: the solvable radical is trivial and the socle is simple
    (a simple socle is then the unique minimal normal subgroup, and its
    centralizer, being normal and meeting it trivially, must be trivial).
    """
    if A.order == 1 or solvable_radical(A).order != 1:
        return False, None
    S = socle(A, class_cap)
    return is_simple(S), S


def abelian_hall_subgroup(G: PermGroup, sigma: Iterable[int]) -> PermGroup | None:
    """An abelian Hall sigma-subgroup of ``G`` if one exists, else None.

    Greedy and complete: an abelian Hall subgroup contains a conjugate of
    every Sylow r-subgroup chosen so far, hence lies in its centralizer, and
    Sylow subgroups of that centralizer are conjugate under elements fixing
    the part already chosen.
    """
    from .sylow import sylow_subgroup

    H = PermGroup.trivial(G.degree)
    for r in sorted(set(sigma) & set(prime_divisors(G.order))):
        C = centralizer_of_subgroup(G, H) if H.order > 1 else G
        S = sylow_subgroup(C, r)
        if S.order != pi_part(G.order, {r}) or not S.is_abelian():
            return None
        H = H.extend(S.generators)
    return H
