"""Sylow subgroups, fusion control, normal complements and Z_p^*."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classes import ConjugacyClass, class_index_map, conjugacy_classes, count_classes
from .errors import InternalCheckError, NotASubgroup
from .numtheory import complement_primes, is_p_power, pi_part
from .perm import Permutation, PermGroup, coset_action
from .structure import center, centralizer, normalizer, o_pi_core

__all__ = [
    "ConjugacyClass",
    "conjugacy_classes",
    "sylow_subgroup",
    "class_intersect_sylow",
    "controls_fusion",
    "controls_p_fusion",
    "has_normal_pi_complement",
    "ComplementResult",
    "z_p_star",
    "glauberman_witnesses",
    "FusionReport",
]


def _is_p_element(x: Permutation, p: int) -> bool:
    return is_p_power(x.order(), p)


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    """A Sylow p-subgroup, grown inside successive normalizers.

    Start from the cyclic group of the least element of largest p-power
    order; while ``P`` is not Sylow, adjoin the least p-element of
    ``N_G(P) \\ P``.  Such an element exists because p divides
    ``|N_G(P) : P|`` whenever ``P`` is a non-Sylow p-subgroup.
    """

    def compute():
        target = pi_part(G.order, {p})
        if target == 1:
            return PermGroup.trivial(G.degree)
        p_classes = [c for c in conjugacy_classes(G) if c.element_order > 1 and c.is_p_class(p)]
        top = max(c.element_order for c in p_classes)
        x = min(c.representative for c in p_classes if c.element_order == top)
        P = PermGroup(G.degree, [x])
        while P.order < target:
            N = normalizer(G, P)
            g = next(g for g in N.elements() if g not in P and _is_p_element(g, p))
            P = P.extend([g])
        return P

    return G.cached(("sylow", p), compute)


def class_intersect_sylow(G: PermGroup, p: int, x: Permutation, P: PermGroup | None = None) -> list[Permutation]:
    """``x^G`` intersected with the Sylow subgroup ``P``, sorted."""
    if P is None:
        P = sylow_subgroup(G, p)
    if x not in G or not _is_p_element(x, p):
        raise ValueError(f"{x!r} is not a {p}-element of G")
    if not P.is_subgroup_of(G) or P.order != pi_part(G.order, {p}):
        raise NotASubgroup("P is not a Sylow subgroup of G")
    idx = class_index_map(G)
    k = idx[x]
    return [y for y in P.elements() if idx[y] == k]


def controls_fusion(G: PermGroup, H: PermGroup, K: PermGroup) -> bool:
    """True iff any two G-conjugate elements of ``K`` are already H-conjugate."""
    if not K.is_subgroup_of(H) or not H.is_subgroup_of(G):
        raise NotASubgroup("controls_fusion needs K <= H <= G")
    g_idx = class_index_map(G)
    h_idx = class_index_map(H)
    seen: dict[int, int] = {}
    for y in K.elements():
        if seen.setdefault(g_idx[y], h_idx[y]) != h_idx[y]:
            return False
    return True


def controls_p_fusion(G: PermGroup, H: PermGroup, p: int) -> bool:
    """``H`` contains a Sylow p-subgroup of ``G`` and controls G-fusion in it."""
    if pi_part(H.order, {p}) != pi_part(G.order, {p}):
        return False
    return controls_fusion(G, H, sylow_subgroup(H, p))


@dataclass
class ComplementResult:
    exists: bool
    complement: PermGroup | None
    hall_quotient_abelian: bool | None

    def __iter__(self):
        return iter((self.exists, self.complement, self.hall_quotient_abelian))


def has_normal_pi_complement(G: PermGroup, pi: Iterable[int]) -> ComplementResult:
    """Normal pi-complement via the order of ``O_{pi'}(G)``.

    For a single prime the verdict is recomputed from ``k_p(G) == k(P)`` and
    from Sylow self-fusion; any disagreement raises InternalCheckError.
    """
    pi = frozenset(pi)
    pi_prime = complement_primes(pi, G.order)
    N = o_pi_core(G, pi_prime)
    exists = N.order == pi_part(G.order, pi_prime)
    if len(pi) == 1:
        (p,) = pi
        P = sylow_subgroup(G, p)
        by_count = count_classes(G, lambda c: c.is_p_class(p)) == count_classes(P)
        by_fusion = controls_fusion(G, P, P)
        if not exists == by_count == by_fusion:
            raise InternalCheckError(
                f"normal {p}-complement detection disagrees: core={exists} count={by_count} fusion={by_fusion}")
    if not exists:
        return ComplementResult(False, None, None)
    abelian = coset_action(G, N).image.is_abelian()
    return ComplementResult(True, N, abelian)


def z_p_star(G: PermGroup, p: int) -> PermGroup:
    """Preimage of ``Z(G / O_{p'}(G))``."""

    def compute():
        O = o_pi_core(G, complement_primes({p}, G.order))
        act = coset_action(G, O)
        return act.preimage(center(act.image))

    return G.cached(("zpstar", p), compute)


@dataclass
class FusionReport:
    element: Permutation
    class_meet_sylow: list[Permutation]
    is_isolated: bool
    in_z_p_star: bool
    powers_isolated: bool | None
    centralizer_controls: bool

    @property
    def consistent(self) -> bool:
        """Z*-statement, power closure and the centralizer criterion all agree."""
        if self.is_isolated != self.centralizer_controls:
            return False
        if self.is_isolated:
            return self.in_z_p_star and bool(self.powers_isolated)
        return True


def glauberman_witnesses(G: PermGroup, p: int) -> list[FusionReport]:
    """One report per nontrivial class of p-elements, keyed by its least member in P."""
    P = sylow_subgroup(G, p)
    if P.order == 1:
        return []
    Zs = z_p_star(G, p)
    idx = class_index_map(G)
    meets: dict[int, list[Permutation]] = {}
    for y in P.elements():
        meets.setdefault(idx[y], []).append(y)
    reports = []
    for k in sorted(meets):
        members = meets[k]
        x = members[0]
        if x.order() == 1:
            continue
        isolated = len(members) == 1
        powers = None
        if isolated:
            powers = all(len(meets[idx[x ** e]]) == 1 for e in range(1, x.order()))
        controls = controls_p_fusion(G, centralizer(G, x), p)
        reports.append(FusionReport(x, members, isolated, x in Zs, powers, controls))
    return reports
