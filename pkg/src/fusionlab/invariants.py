"""Exact class-counting invariants and the d(G) >= 1/2 classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .classes import conjugacy_classes, count_classes
from .errors import ClassificationError
from .numtheory import is_pi_number, pi_part, prime_divisors
from .perm import Permutation, PermGroup, coset_action
from .structure import center, derived_subgroup, normal_subgroup_masks, o_pi_core
from .sylow import has_normal_pi_complement, sylow_subgroup

# Fractions are always reduced and compare exactly; nothing in a verdict
# path ever converts one to float.
ExactRatio = Fraction

# classification needs the lattice of G_m x A, whose class count grows fast
LESCOT_CLASS_CAP = 1024


def class_counts(G: PermGroup, pi: Iterable[int] | None = None) -> tuple[int, int]:
    """``(k(G), k_pi(G))``; identity counts as a pi-element."""
    k = count_classes(G)
    if pi is None:
        return k, k
    pi = frozenset(pi)
    return k, count_classes(G, lambda c: c.is_pi_class(pi))


def k_p(G: PermGroup, p: int) -> int:
    return class_counts(G, {p})[1]


def commuting_degree(G: PermGroup, pi: Iterable[int] | None = None) -> Fraction:
    """``d(G) = k(G)/|G|`` or ``d_pi(G) = k_pi(G)/|G|_pi``."""
    if pi is None:
        return Fraction(count_classes(G), G.order)
    pi = frozenset(pi)
    return Fraction(class_counts(G, pi)[1], pi_part(G.order, pi))


@dataclass
class PrimeData:
    p: int
    p_part: int
    k_p: int
    d_p: Fraction
    p_nilpotent: bool
    sylow_abelian: bool
    k_sylow: int


@dataclass
class InvariantRecord:
    group_id: str
    order: int
    k: int
    d: Fraction
    per_prime: dict[int, PrimeData] = field(default_factory=dict)


def invariant_record(G: PermGroup, group_id: str = "", primes: Iterable[int] | None = None) -> InvariantRecord:
    k = count_classes(G)
    rec = InvariantRecord(group_id, G.order, k, Fraction(k, G.order))
    for p in (prime_divisors(G.order) if primes is None else sorted(primes)):
        P = sylow_subgroup(G, p)
        kp = k_p(G, p)
        rec.per_prime[p] = PrimeData(
            p=p,
            p_part=P.order,
            k_p=kp,
            d_p=Fraction(kp, P.order),
            p_nilpotent=has_normal_pi_complement(G, {p}).exists,
            sylow_abelian=P.is_abelian(),
            k_sylow=count_classes(P),
        )
    return rec


@dataclass
class LescotType:
    tag: str  # "Abelian", "TwoCentralType", "GmType" or "Below"
    d: Fraction
    m: int | None = None
    factor_orders: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.tag}({self.m})" if self.m is not None else self.tag


def _log(base: int, n: int) -> int | None:
    e = 0
    while n > 1 and n % base == 0:
        n //= base
        e += 1
    return e if n == 1 else None


def _is_gm(H: PermGroup) -> int | None:
    """Return m if ``H`` is ``<a, b | a^3 = b^(2^m) = 1, a^b = a^-1>``, else None.

    A pair (a, b) satisfying the relations and generating ``H`` with
    ``|H| = 3 * 2^m`` gives an isomorphism, since the presented group has
    exactly that order.
    """
    if H.order % 3 or H.order < 6:
        return None
    m = _log(2, H.order // 3)
    if not m:
        return None
    elems = H.elements()
    threes = [x for x in elems if x.order() == 3]
    bs = [y for y in elems if y.order() == 2**m]
    for a in threes:
        a_inv = a.inverse()
        for b in bs:
            if a ** b == a_inv and H.subgroup([a, b]).order == H.order:
                return m
    return None


def _two_central(G: PermGroup, d: Fraction) -> LescotType | None:
    P = o_pi_core(G, {2})
    A = o_pi_core(G, [r for r in prime_divisors(G.order) if r != 2])
    if P.order != pi_part(G.order, {2}) or A.order * P.order != G.order or not A.is_abelian():
        return None
    if derived_subgroup(G).order != 2 or derived_subgroup(P).order != 2:
        return None
    Z = center(G)
    quotient = coset_action(G, Z).image
    m = _log(4, quotient.order)
    if not m:
        raise ClassificationError(f"|G/Z(G)| = {quotient.order} is not a power of 4")
    if not quotient.is_abelian() or any(g.order() != 2 for g in quotient.generators if not g.is_identity()):
        return None
    expected = (1 + Fraction(1, 4**m)) / 2
    if d != expected or commuting_degree(P) != expected or not (Fraction(1, 2) < d <= Fraction(5, 8)):
        return None
    return LescotType("TwoCentralType", d, m, (P.order, A.order))


def _gm_type(G: PermGroup, d: Fraction) -> LescotType | None:
    if d != Fraction(1, 2):
        return None
    lattice = normal_subgroup_masks(G, LESCOT_CLASS_CAP)
    abelian = [(m, N) for m, N in lattice if N.is_abelian()]
    for hm, H in lattice:
        m = None
        for am, A in abelian:
            if hm & am == 1 and H.order * A.order == G.order:
                if m is None:
                    m = _is_gm(H)
                    if m is None:
                        break
                return LescotType("GmType", d, m, (H.order, A.order))
    return None


def lescot_classify(G: PermGroup) -> LescotType:
    d = commuting_degree(G)
    if d < Fraction(1, 2):
        return LescotType("Below", d)
    if G.is_abelian():
        return LescotType("Abelian", d, None, (G.order,))
    found = _two_central(G, d) or _gm_type(G, d)
    if found is None:
        raise ClassificationError(f"group of order {G.order} with d = {d} fits none of the three cases")
    return found
