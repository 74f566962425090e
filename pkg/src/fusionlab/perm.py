"""Permutations and permutation groups backed by a stabilizer chain.

Conventions used everywhere in the package:

* points are ``0 .. n-1``;
* a permutation is stored as its image array, ``p[i]`` is the image of ``i``;
* products act left to right: ``(p * q)[i] == q[p[i]]``, so ``p`` acts first;
* conjugation is ``x ** g == g^-1 * x * g`` and commutators are
  ``[a, b] == a^-1 * b^-1 * a * b``.

Subgroups are always carried on the degree of their parent group.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch, NotASubgroup, NotNormal


@dataclass
class EngineConfig:
    enumeration_cap: int = 200_000
    order_cap: int = 10**8
    class_cap: int = 40


config = EngineConfig()


class Permutation(tuple):
    """A bijection of ``{0, .., n-1}`` stored as a tuple of images.

    Being a tuple, permutations hash, compare lexicographically by image
    array and can be used as dict keys directly.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise ValueError("a permutation needs degree >= 1")
        seen = [False] * n
        for idx, im in enumerate(images):
            if not 0 <= im < n:
                raise ValueError(f"image {im} at index {idx} out of range for degree {n}")
            if seen[im]:
                raise ValueError(f"point {im} appears twice (second time at index {idx})")
            seen[im] = True
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, im in enumerate(self):
            inv[im] = i
        return Permutation._raw(inv)

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return k.inverse() * self * k
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == im for i, im in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        result = 1
        for cyc in self.cycles():
            result = result // gcd(result, len(cyc)) * len(cyc)
        return result

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{len(self)}>{cyc or '()'}"

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p`` followed by ``q``: the map ``i -> q[p[i]]``."""
    if len(p) != len(q):
        raise DegreeMismatch(f"cannot compose degree {len(p)} with degree {len(q)}")
    return Permutation._raw(map(q.__getitem__, p))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


class _Level:
    __slots__ = ("point", "gens", "trans", "inv")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        self.trans: dict[int, Permutation] = {}
        self.inv: dict[int, Permutation] = {}


def _first_moved(g: Permutation) -> int:
    for i, im in enumerate(g):
        if i != im:
            return i
    raise ValueError("identity moves no point")


def _schreier_sims(degree: int, gens: list[Permutation], order_cap: int) -> list[_Level]:
    ident = Permutation.identity(degree)
    strong: list[Permutation] = []
    for g in gens:
        if g != ident and g not in strong:
            strong.append(g)
    if not strong:
        return []
    base: list[int] = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = [_Level(b) for b in base]

    def rebuild(k: int) -> None:
        lvl = levels[k]
        fixed = base[:k]
        lvl.gens = [s for s in strong if all(s[b] == b for b in fixed)]
        trans = {lvl.point: ident}
        queue = [lvl.point]
        for pt in queue:
            u = trans[pt]
            for s in lvl.gens:
                im = s[pt]
                if im not in trans:
                    trans[im] = u * s
                    queue.append(im)
        lvl.trans = trans
        lvl.inv = {pt: u.inverse() for pt, u in trans.items()}

    def sift(h: Permutation, start: int) -> tuple[Permutation, int]:
        for i in range(start, len(levels)):
            lvl = levels[i]
            b = h[lvl.point]
            u_inv = lvl.inv.get(b)
            if u_inv is None:
                return h, i
            h = h * u_inv
        return h, len(levels)

    def lower_bound() -> int:
        out = 1
        for lvl in levels:
            out *= max(1, len(lvl.trans))
        return out

    for k in range(len(levels)):
        rebuild(k)
    k = len(levels) - 1
    while k >= 0:
        lvl = levels[k]
        found = None
        # deterministic order: orbit points in discovery order, then generator index
        for b, u in list(lvl.trans.items()):
            for s in lvl.gens:
                h = u * s * lvl.inv[s[b]]
                if h == ident:
                    continue
                r, j = sift(h, k + 1)
                if r != ident:
                    found = (r, j)
                    break
            if found:
                break
        if found is None:
            k -= 1
            if k >= 0:
                rebuild(k)
            continue
        r, j = found
        strong.append(r)
        if j == len(levels):
            pt = _first_moved(r)
            base.append(pt)
            levels.append(_Level(pt))
        for i in range(k + 1, j + 1):
            rebuild(i)
        if lower_bound() > order_cap:
            raise CapExceeded(f"group order exceeds cap {order_cap}")
        k = j
    return levels


class PermGroup:
    """A permutation group with an eagerly built stabilizer chain.

    Immutable after construction.  Expensive derived data (element list,
    conjugacy classes, ...) is memoised behind a per-group lock, so a group
    may be shared between threads.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *, order_cap: int | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {degree}")
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._levels = _schreier_sims(degree, gens, order_cap or config.order_cap)
        order = 1
        for lvl in self._levels:
            order *= len(lvl.trans)
        self.order = order
        self._lock = threading.RLock()
        self._cache: dict = {}

    def __reduce__(self):
        return (PermGroup, (self.degree, [tuple(g) for g in self.generators]))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, ngens={len(self.generators)})"

    def __len__(self) -> int:
        return self.order

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, ())

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen: list[Permutation] = []
        for lvl in self._levels:
            for s in lvl.gens:
                if s not in seen:
                    seen.append(s)
        return seen

    @property
    def transversals(self) -> list[dict[int, Permutation]]:
        return [dict(lvl.trans) for lvl in self._levels]

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def cached(self, key, compute: Callable[[], object]):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    # -- membership ---------------------------------------------------------

    def sift(self, x: Permutation) -> Permutation:
        h = x
        for lvl in self._levels:
            u_inv = lvl.inv.get(h[lvl.point])
            if u_inv is None:
                return h
            h = h * u_inv
        return h

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.degree:
            raise DegreeMismatch(f"element of degree {len(x)} tested against degree {self.degree}")
        elems = self._cache.get("element_set")
        if elems is not None:
            return x in elems
        return self.sift(x if isinstance(x, Permutation) else Permutation(x)).is_identity()

    __contains__ = contains

    # -- enumeration --------------------------------------------------------

    def elements(self) -> list[Permutation]:
        """All elements, sorted lexicographically by image array."""
        return self.cached("elements", self._enumerate)

    def element_set(self) -> frozenset[Permutation]:
        return self.cached("element_set", lambda: frozenset(self.elements()))

    def element_array(self) -> np.ndarray:
        """``elements()`` as an ``(order, degree)`` integer array, for bulk scans."""
        return self.cached("element_array", lambda: np.array(self.elements(), dtype=np.int32))

    def commuting_with(self, xs: Iterable[Permutation]) -> list[Permutation]:
        """Elements commuting with every permutation in ``xs``, sorted."""
        E = self.element_array()
        mask = np.ones(len(E), dtype=bool)
        for x in xs:
            xa = np.asarray(x, dtype=np.int32)
            # x*g sends i to g[x[i]]; g*x sends i to x[g[i]]
            mask &= (E[:, xa] == xa[E]).all(axis=1)
        elems = self.elements()
        return [elems[i] for i in np.flatnonzero(mask)]

    def _enumerate(self) -> list[Permutation]:
        if self.order > config.enumeration_cap:
            raise CapExceeded(f"refusing to enumerate {self.order} elements (cap {config.enumeration_cap})")
        current = [self.identity]
        for lvl in reversed(self._levels):
            current = [h * u for u in lvl.trans.values() for h in current]
        current.sort()
        return current

    # -- subgroup helpers ---------------------------------------------------

    def subgroup(self, gens: Iterable[Sequence[int]]) -> "PermGroup":
        return PermGroup(self.degree, gens)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def is_normal_in(self, G: "PermGroup") -> bool:
        return all((h ** g) in self for h in self.generators for g in G.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def extend(self, candidates: Iterable[Permutation]) -> "PermGroup":
        """``<self, candidates>``, adding only candidates not already contained."""
        gens = list(self.generators)
        H = self
        for c in candidates:
            if c not in H:
                gens.append(c)
                H = PermGroup(self.degree, gens)
        return H

    def subgroup_from_elements(self, elems: Iterable[Permutation]) -> "PermGroup":
        """Subgroup whose element set is ``elems`` (assumed closed).

        Generators are picked greedily in lexicographic order, which keeps the
        result deterministic and the generating set of size at most log2|H|.
        """
        elems = sorted(elems)
        H = PermGroup.trivial(self.degree)
        gens: list[Permutation] = []
        for e in elems:
            if H.order == len(elems):
                break
            if e not in H:
                gens.append(e)
                H = PermGroup(self.degree, gens)
        if H.order != len(elems):
            raise ValueError("element list is not closed under multiplication")
        return H


def group_from_generators(degree: int, gens: Iterable[Sequence[int]]) -> PermGroup:
    return PermGroup(degree, gens)


def membership_test(G: PermGroup, x: Sequence[int]) -> bool:
    return G.contains(x)


def enumerate_elements(G: PermGroup) -> list[Permutation]:
    return G.elements()


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    gens = [Permutation.from_cycles(n, tuple(range(n)))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    return PermGroup(n, gens)


@dataclass(frozen=True)
class CosetAction:
    """Action of ``group`` on the right cosets of ``subgroup``.

    ``image`` is the permutation group on ``|G:N|`` points; coset 0 is the
    subgroup itself and ``reps[i]`` represents coset ``i``.
    """

    group: PermGroup
    subgroup: PermGroup
    image: PermGroup
    reps: tuple[Permutation, ...]
    _coset_of: dict
    # quotient by the trivial subgroup: image is the group itself, maps are identities
    identity_map: bool = False

    def coset_index(self, x: Permutation) -> int:
        return self._coset_of[x]

    def project(self, x: Permutation) -> Permutation:
        if self.identity_map:
            return x
        lookup = self._coset_of
        return Permutation._raw(lookup[r * x] for r in self.reps)

    def lift(self, q: Permutation) -> Permutation:
        """An element of the parent mapping to ``q`` (regular quotient only)."""
        if self.identity_map:
            return q
        return self.reps[q[0]]

    def preimage(self, Q: PermGroup) -> PermGroup:
        """Full preimage of a subgroup of ``image`` (normal kernel required)."""
        if self.identity_map:
            return Q
        gens = list(self.subgroup.generators) + [self.lift(q) for q in Q.generators]
        return PermGroup(self.group.degree, gens)


def coset_action(G: PermGroup, N: PermGroup, quotient: bool = True) -> CosetAction:
    """Let ``G`` act on the right cosets ``N*x`` of ``N``.

    With ``quotient=True`` (the default) ``N`` must be normal and the image is
    the regular representation of ``G/N``, except that a trivial ``N`` gives
    back ``G`` itself rather than its regular representation.
    """
    if N.degree != G.degree or not N.is_subgroup_of(G):
        raise NotASubgroup("N is not a subgroup of G")
    if quotient and not N.is_normal_in(G):
        raise NotNormal("quotient requested by a non-normal subgroup")
    if G.order > config.enumeration_cap:
        raise CapExceeded(f"coset action needs enumeration of {G.order} elements")
    if quotient and N.order == 1:
        elems = G.elements()
        return CosetAction(G, N, G, tuple(elems), {x: i for i, x in enumerate(elems)}, True)
    n_elems = N.elements()
    ident = G.identity
    coset_of: dict[Permutation, int] = {n: 0 for n in n_elems}
    reps = [ident]
    for r in reps:
        for g in G.generators:
            y = r * g
            if y not in coset_of:
                idx = len(reps)
                reps.append(y)
                for n in n_elems:
                    coset_of[n * y] = idx
    index = len(reps)
    images = [Permutation._raw(coset_of[r * g] for r in reps) for g in G.generators]
    image = PermGroup(index, images)
    return CosetAction(G, N, image, tuple(reps), coset_of)
