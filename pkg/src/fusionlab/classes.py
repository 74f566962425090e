"""Conjugacy classes by conjugation orbits over the full element list."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import CapExceeded, InternalCheckError
from .numtheory import is_p_power, is_pi_number
from .perm import Permutation, PermGroup, config


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    element_order: int
    members: tuple[Permutation, ...]

    def is_pi_class(self, pi: Iterable[int]) -> bool:
        return is_pi_number(self.element_order, pi)

    def is_p_class(self, p: int) -> bool:
        return is_p_power(self.element_order, p)


def _conjugation_orbit(x: Permutation, gens, gens_inv) -> list[Permutation]:
    orbit = {x}
    queue = [x]
    for y in queue:
        for g, gi in zip(gens, gens_inv):
            # (g^-1 y g)[i] = g[y[g^-1[i]]]
            z = Permutation._raw([g[y[j]] for j in gi])
            if z not in orbit:
                orbit.add(z)
                queue.append(z)
    return sorted(orbit)


def _count_commuting(G: PermGroup, x: Permutation) -> int:
    return len(G.commuting_with([x]))


def _compute_classes(G: PermGroup) -> list[ConjugacyClass]:
    elems = G.elements()
    gens = G.generators
    gens_inv = [g.inverse() for g in gens]
    assigned: set[Permutation] = set()
    out = []
    for x in elems:
        if x in assigned:
            continue
        members = _conjugation_orbit(x, gens, gens_inv)
        assigned.update(members)
        cls = ConjugacyClass(members[0], len(members), members[0].order(), tuple(members))
        if G.order % cls.size or _count_commuting(G, cls.representative) * cls.size != G.order:
            raise InternalCheckError(f"class of {cls.representative!r} fails the orbit-stabilizer check")
        out.append(cls)
    if sum(c.size for c in out) != G.order:
        raise InternalCheckError("class sizes do not sum to |G|")
    out.sort(key=lambda c: (c.element_order, c.size, c.representative))
    return out


def conjugacy_classes(G: PermGroup) -> list[ConjugacyClass]:
    """Classes ordered by element order, then size, then least member."""
    if G.order > config.enumeration_cap:
        raise CapExceeded(f"|G| = {G.order} exceeds the enumeration cap")
    return G.cached("classes", lambda: _compute_classes(G))


def class_index_map(G: PermGroup) -> dict[Permutation, int]:
    def build():
        out = {}
        for i, c in enumerate(conjugacy_classes(G)):
            for m in c.members:
                out[m] = i
        return out

    return G.cached("class_index", build)


def count_classes(G: PermGroup, predicate: Callable[[ConjugacyClass], bool] | None = None) -> int:
    classes = conjugacy_classes(G)
    if predicate is None:
        return len(classes)
    return sum(1 for c in classes if predicate(c))
