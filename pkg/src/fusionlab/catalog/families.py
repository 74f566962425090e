"""Constructors for the named group families.

Every family is realised as a faithful permutation group:

==================  =========================================================
cyclic(n)           n-cycle on n points
dihedral(2n)        symmetries of the n-gon on n points (D4 = V4 on 4 points)
symmetric(n)        natural action
alternating(n)      natural action, generated by the 3-cycles (0 1 i)
gm(m)               regular representation from coset enumeration
extraspecial2(m,t)  central product of D8's (one Q8 for t = minus), regular
psl2(q)             SL2(q) acting on the q + 1 points of the projective line
sl2(q)              natural action on the q^2 - 1 nonzero vectors
frobenius_affine    x -> w x + v on GF(p^k), w of prime order r
direct_product      disjoint union of points
==================  =========================================================
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..numtheory import is_prime, prime_power
from ..perm import Permutation, PermGroup, coset_action
from .fields import field
from .presentation import gm_presentation, parse_presentation
from .todd_coxeter import todd_coxeter

FAMILIES = (
    "cyclic", "dihedral", "symmetric", "alternating", "gm", "extraspecial2",
    "psl2", "sl2", "frobenius_affine", "direct_product", "from_presentation", "from_file",
)


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple = ()
    factors: tuple["GroupSpec", ...] = ()

    def __post_init__(self):
        validate(self)

    @property
    def name(self) -> str:
        f, ps = self.family, self.params
        if f == "cyclic":
            return f"C{ps[0]}"
        if f == "dihedral":
            return f"D{ps[0]}"
        if f == "symmetric":
            return f"S{ps[0]}"
        if f == "alternating":
            return f"A{ps[0]}"
        if f == "gm":
            return f"G_{ps[0]}"
        if f == "extraspecial2" and ps == (1, "minus"):
            return "Q8"
        if f == "extraspecial2":
            return f"2^(1+{2 * ps[0]}){'+' if ps[1] == 'plus' else '-'}"
        if f == "psl2":
            return f"PSL2({ps[0]})"
        if f == "sl2":
            return f"SL2({ps[0]})"
        if f == "frobenius_affine":
            return f"F({ps[0]},{ps[1]},{ps[2]})"
        if f == "direct_product":
            return "x".join(s.name for s in self.factors)
        return f"{f}({ps[0]})"

    @property
    def expected_order(self) -> int | None:
        f, ps = self.family, self.params
        if f == "cyclic":
            return ps[0]
        if f == "dihedral":
            return ps[0]
        if f == "symmetric":
            return _factorial(ps[0])
        if f == "alternating":
            return max(1, _factorial(ps[0]) // 2)
        if f == "gm":
            return 3 * 2 ** ps[0]
        if f == "extraspecial2":
            return 2 ** (1 + 2 * ps[0])
        if f in ("psl2", "sl2"):
            q = ps[0]
            full = q * (q * q - 1)
            return full if f == "sl2" or q % 2 == 0 else full // 2
        if f == "frobenius_affine":
            p, k, r = ps
            return p**k * r
        if f == "direct_product":
            out = 1
            for s in self.factors:
                o = s.expected_order
                if o is None:
                    return None
                out *= o
            return out
        return None


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def validate(spec: GroupSpec) -> None:
    f, ps = spec.family, spec.params
    if f not in FAMILIES:
        raise ValueError(f"unknown family {f!r}")
    if f in ("cyclic", "symmetric", "alternating"):
        if len(ps) != 1 or ps[0] < 1:
            raise ValueError(f"{f} needs n >= 1")
    elif f == "dihedral":
        if len(ps) != 1 or ps[0] < 2 or ps[0] % 2:
            raise ValueError("dihedral takes the group order 2n with n >= 1")
    elif f == "gm":
        if len(ps) != 1 or ps[0] < 1:
            raise ValueError("gm needs m >= 1")
    elif f == "extraspecial2":
        if len(ps) != 2 or ps[0] < 1 or ps[1] not in ("plus", "minus"):
            raise ValueError("extraspecial2 needs m >= 1 and type plus|minus")
    elif f in ("psl2", "sl2"):
        if len(ps) != 1 or prime_power(ps[0]) is None or ps[0] < 3:
            raise ValueError(f"{f} needs a prime power q >= 3")
    elif f == "frobenius_affine":
        if len(ps) != 3:
            raise ValueError("frobenius_affine needs (p, k, r)")
        p, k, r = ps
        if not is_prime(p) or k < 1 or not is_prime(r) or r == p or (p**k - 1) % r:
            raise ValueError(f"frobenius_affine({p},{k},{r}) needs primes p != r with r | p^k - 1")
    elif f == "direct_product":
        if len(spec.factors) < 2:
            raise ValueError("direct_product needs at least two factors")
    elif f in ("from_presentation", "from_file"):
        if len(ps) != 1:
            raise ValueError(f"{f} needs a single path")


# -- constructors -------------------------------------------------------------

def _cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    return PermGroup(n, [Permutation.from_cycles(n, tuple(range(n)))])


def _dihedral(order: int) -> PermGroup:
    n = order // 2
    if n == 1:
        return PermGroup(2, [Permutation.from_cycles(2, (0, 1))])
    if n == 2:
        return PermGroup(4, [Permutation.from_cycles(4, (0, 1), (2, 3)),
                             Permutation.from_cycles(4, (0, 2), (1, 3))])
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, ref])


def _symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    gens = [Permutation.from_cycles(n, tuple(range(n)))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    return PermGroup(n, gens)


def _alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup.trivial(n)
    return PermGroup(n, [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)])


def _gm(m: int) -> PermGroup:
    return todd_coxeter(parse_presentation(gm_presentation(m))).group


def _d8() -> PermGroup:
    return PermGroup(4, [Permutation.from_cycles(4, (0, 1, 2, 3)), Permutation.from_cycles(4, (0, 2))])


def _q8() -> PermGroup:
    # regular representation; i and j with i^2 = j^2 = (ij)^2 the unique involution
    i = Permutation.from_cycles(8, (0, 1, 3, 6), (2, 5, 7, 4))
    j = Permutation.from_cycles(8, (0, 2, 3, 7), (1, 4, 6, 5))
    return PermGroup(8, [i, j])


def _disjoint_union(groups: list[PermGroup]) -> tuple[PermGroup, list[list[Permutation]]]:
    """Direct product on disjoint point sets; also returns embedded generators per factor."""
    degree = sum(G.degree for G in groups)
    offset = 0
    gens: list[Permutation] = []
    embedded: list[list[Permutation]] = []
    for G in groups:
        mine = []
        for g in G.generators:
            images = list(range(degree))
            for i, im in enumerate(g):
                images[offset + i] = offset + im
            mine.append(Permutation._raw(images))
        embedded.append(mine)
        gens += mine
        offset += G.degree
    return PermGroup(degree, gens), embedded


def _embed(x: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, im in enumerate(x):
        images[offset + i] = offset + im
    return Permutation._raw(images)


def _extraspecial2(m: int, kind: str) -> PermGroup:
    factors = ([_q8()] if kind == "minus" else [_d8()]) + [_d8() for _ in range(m - 1)]
    if m == 1:
        return factors[0]
    product, _ = _disjoint_union(factors)
    # identify the central involutions of all factors
    zs = []
    offset = 0
    for F in factors:
        z = F.generators[0] ** 2
        zs.append(_embed(z, offset, product.degree))
        offset += F.degree
    N = product.subgroup([zs[0] * z for z in zs[1:]])
    return coset_action(product, N).image


def _sl2_generators(q: int):
    F = field(q)
    one, zero = 1, 0
    minus_one = F.neg(1)
    w = F.primitive
    return F, [
        ((one, one), (zero, one)),
        ((zero, minus_one), (one, zero)),
        ((w, zero), (zero, F.inv(w))),
    ]


def _act(F, v, M):
    """Row vector times matrix."""
    x, y = v
    (a, b), (c, d) = M
    return (F.add(F.mul(x, a), F.mul(y, c)), F.add(F.mul(x, b), F.mul(y, d)))


def _psl2(q: int) -> PermGroup:
    F, mats = _sl2_generators(q)
    # points 0..q-1 are (x : 1), point q is (1 : 0)
    def index(v):
        x, y = v
        if y == 0:
            return q
        return F.mul(x, F.inv(y))

    points = [(x, 1) for x in range(q)] + [(1, 0)]
    gens = [Permutation([index(_act(F, v, M)) for v in points]) for M in mats]
    return PermGroup(q + 1, gens)


def _sl2(q: int) -> PermGroup:
    F, mats = _sl2_generators(q)
    vectors = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vectors)}
    gens = [Permutation([pos[_act(F, v, M)] for v in vectors]) for M in mats]
    return PermGroup(len(vectors), gens)


def _frobenius_affine(p: int, k: int, r: int) -> PermGroup:
    q = p**k
    F = field(q)
    w = F.element_of_order(r)
    gens = [Permutation([F.add(x, p**i) for x in range(q)]) for i in range(k)]
    gens.append(Permutation([F.mul(w, x) for x in range(q)]))
    return PermGroup(q, gens)


def construct(spec: GroupSpec) -> PermGroup:
    f, ps = spec.family, spec.params
    if f == "cyclic":
        G = _cyclic(ps[0])
    elif f == "dihedral":
        G = _dihedral(ps[0])
    elif f == "symmetric":
        G = _symmetric(ps[0])
    elif f == "alternating":
        G = _alternating(ps[0])
    elif f == "gm":
        G = _gm(ps[0])
    elif f == "extraspecial2":
        G = _extraspecial2(*ps)
    elif f == "psl2":
        G = _psl2(ps[0])
    elif f == "sl2":
        G = _sl2(ps[0])
    elif f == "frobenius_affine":
        G = _frobenius_affine(*ps)
    elif f == "direct_product":
        G, _ = _disjoint_union([construct(s) for s in spec.factors])
    elif f == "from_presentation":
        with open(ps[0], encoding="utf-8") as fh:
            G = todd_coxeter(parse_presentation(fh.read())).group
    elif f == "from_file":
        from .io import load_catalog

        entries = load_catalog(ps[0])
        if len(entries) != 1:
            raise ValueError(f"{ps[0]} holds {len(entries)} groups; from_file needs exactly one")
        G = entries[0].group
    else:  # pragma: no cover - validate() rejects unknown families
        raise ValueError(f)
    expected = spec.expected_order
    if expected is not None and G.order != expected:
        raise AssertionError(f"{spec.name}: constructed order {G.order}, expected {expected}")
    return G


# -- spec strings -------------------------------------------------------------

_SHORT = [
    (re.compile(r"C(\d+)$"), lambda m: GroupSpec("cyclic", (int(m[1]),))),
    (re.compile(r"D(\d+)$"), lambda m: GroupSpec("dihedral", (int(m[1]),))),
    (re.compile(r"S(\d+)$"), lambda m: GroupSpec("symmetric", (int(m[1]),))),
    (re.compile(r"A(\d+)$"), lambda m: GroupSpec("alternating", (int(m[1]),))),
    (re.compile(r"G_(\d+)$"), lambda m: GroupSpec("gm", (int(m[1]),))),
    (re.compile(r"Q8$"), lambda m: GroupSpec("extraspecial2", (1, "minus"))),
    (re.compile(r"PSL2\((\d+)\)$"), lambda m: GroupSpec("psl2", (int(m[1]),))),
    (re.compile(r"SL2\((\d+)\)$"), lambda m: GroupSpec("sl2", (int(m[1]),))),
    (re.compile(r"2\^\(1\+(\d+)\)([+-])$"),
     lambda m: GroupSpec("extraspecial2", (int(m[1]) // 2, "plus" if m[2] == "+" else "minus"))),
    (re.compile(r"F\((\d+),(\d+),(\d+)\)$"),
     lambda m: GroupSpec("frobenius_affine", (int(m[1]), int(m[2]), int(m[3])))),
]


def _parse_single(text: str) -> GroupSpec:
    text = text.strip()
    if ":" in text:
        family, _, rest = text.partition(":")
        args = rest.split(":") if rest else []
        if family in ("from_presentation", "from_file"):
            return GroupSpec(family, (rest,))
        params = tuple(a if not a.lstrip("-").isdigit() else int(a) for a in args)
        return GroupSpec(family, params)
    for pattern, build in _SHORT:
        m = pattern.match(text)
        if m:
            return build(m)
    raise ValueError(f"cannot parse group spec {text!r}")


def parse_spec(text: str) -> GroupSpec:
    """Parse ``family:p1:p2``, a short name such as ``A5`` or ``PSL2(11)``,
    or a product of those joined by `` x `` (or ``x`` between short names)."""
    parts = [p for p in re.split(r"\s+x\s+|\*", text.strip()) if p]
    if len(parts) == 1 and ":" not in parts[0]:
        parts = [p for p in re.split(r"x(?=[A-Z0-9(])", parts[0]) if p]
    specs = [_parse_single(p) for p in parts]
    if len(specs) == 1:
        return specs[0]
    return GroupSpec("direct_product", (), tuple(specs))
