"""Directed checks of the class-counting theorems and their supporting lemmas.

Each ``suite_*`` function takes a :class:`GroupContext` and returns verdicts.
An "if and only if" statement is split into a ``dir=forward`` and a
``dir=converse`` check so that each direction can be vacuous or confirmed on
its own.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..classes import class_index_map, conjugacy_classes, count_classes
from ..errors import CapExceeded, ClassificationError
from ..invariants import LESCOT_CLASS_CAP, class_counts, commuting_degree, k_p, lescot_classify
from ..numtheory import complement_primes, format_prime_set, is_p_power, pi_part, prime_divisors, prime_power
from ..perm import PermGroup, config, coset_action
from ..structure import (
    abelian_hall_subgroup,
    canonical_normal_subgroups,
    center,
    centralizer,
    centralizer_of_subgroup,
    commutator_subgroup,
    direct_complements,
    is_almost_simple,
    is_simple,
    normal_subgroups,
    normalizer,
    o_pi_core,
    p_group_profile,
)
from ..sylow import controls_fusion, glauberman_witnesses, has_normal_pi_complement, sylow_subgroup
from .verdict import DEFAULT_PI_SETS, Verdict

HALF = Fraction(1, 2)
# largest order for which every normal subgroup is tried in the quotient inequality
QUOTIENT_SCAN_MAX_ORDER = 2000
EXACT_PAIR_COUNT_MAX_ORDER = 200
SAMPLED_ELEMENTS = 32


def boundary(p: int) -> Fraction:
    return Fraction(p + 1, 2 * p)


@dataclass
class GroupContext:
    name: str
    G: PermGroup
    primes: list[int]
    pi_sets: list[frozenset[int]]
    seed: int = 0

    @classmethod
    def build(cls, name: str, G: PermGroup, primes=None, pi_sets=None, seed: int = 0) -> "GroupContext":
        divisors = prime_divisors(G.order)
        ps = divisors if primes is None else [p for p in sorted(set(primes)) if p in divisors]
        effective: list[frozenset[int]] = []
        for pi in (DEFAULT_PI_SETS if pi_sets is None else pi_sets):
            e = frozenset(pi) & frozenset(divisors)
            if e and e not in effective:
                effective.append(e)
        effective.sort(key=lambda s: sorted(s))
        return cls(name, G, ps, effective, seed)

    def verdict(self, suite: str, params: str, hypothesis: bool, conclusion: bool | None, **extra) -> Verdict:
        return Verdict.directed(self.name, self.G.order, suite, params, hypothesis, conclusion, **extra)

    def pdata(self, p: int) -> dict:
        P = sylow_subgroup(self.G, p)
        kp = k_p(self.G, p)
        return {"k_p": kp, "sylow_order": P.order, "d_value": Fraction(kp, P.order)}

    def pidata(self, pi: frozenset[int]) -> dict:
        _, kpi = class_counts(self.G, pi)
        part = pi_part(self.G.order, pi)
        return {"k_p": kpi, "sylow_order": part, "d_value": Fraction(kpi, part)}

    def odd_primes(self) -> list[int]:
        return [p for p in self.primes if p != 2]


def _pi(pi) -> str:
    return "pi=" + format_prime_set(pi)


def _p_nilpotent(G: PermGroup, p: int) -> bool:
    return has_normal_pi_complement(G, {p}).exists


def _quotient(G: PermGroup, N: PermGroup) -> PermGroup:
    return coset_action(G, N).image


def _normal_subgroups_or_canonical(G: PermGroup) -> tuple[list[PermGroup], str]:
    try:
        return normal_subgroups(G), "lattice"
    except CapExceeded:
        return canonical_normal_subgroups(G), "canonical"


# -- theorem suites -----------------------------------------------------------

def suite_A(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    P = sylow_subgroup(G, 2)
    k2 = k_p(G, 2)
    kP = count_classes(P)
    nc = _p_nilpotent(G, 2)
    many = 2 * k2 > P.order
    structured = nc and 2 * kP > P.order
    w = {"k(P)": kP, "normal_2_complement": nc}
    extra = ctx.pdata(2)
    return [
        ctx.verdict("A", "p=2;dir=forward", many, structured, witness=w, **extra),
        ctx.verdict("A", "p=2;dir=converse", structured, many, witness=w, **extra),
    ]


def _psl2_q(order: int) -> int | None:
    """q > 3 odd with q(q^2 - 1)/2 = order, if any."""
    q = 5
    while q * (q * q - 1) // 2 <= order:
        if prime_power(q) and q * (q * q - 1) // 2 == order:
            return q
        q += 2
    return None


def _is_a4_or_s4(Q: PermGroup) -> str | None:
    if Q.order not in (12, 24) or center(Q).order != 1:
        return None
    orders = [N.order for N in normal_subgroups(Q)]
    O2 = o_pi_core(Q, {2})
    if O2.order != 4 or not O2.is_abelian():
        return None
    if Q.order == 12 and orders == [1, 4, 12]:
        return "A4"
    if Q.order == 24 and orders == [1, 4, 12, 24]:
        return "S4"
    return None


def suite_B(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    P = sylow_subgroup(G, 2)
    k2 = k_p(G, 2)
    O = o_pi_core(G, complement_primes({2}, G.order))
    hyp = P.order > 1 and O.order == 1 and 2 * k2 == P.order
    concl = None
    w = None
    if hyp:
        Z = center(G)
        Q = _quotient(G, Z)
        w = {"center": Z.order, "quotient": Q.order}
        small = _is_a4_or_s4(Q)
        if small:
            w["type"] = small
            concl = True
        else:
            almost, S = is_almost_simple(Q, LESCOT_CLASS_CAP)
            concl = False
            if almost:
                T = sylow_subgroup(S, 2)
                elem = T.order == 4 and T.is_abelian()
                q = _psl2_q(S.order)
                w.update({"type": "almost simple", "socle": S.order, "extension": Q.order // S.order,
                          "q": q, "socle_sylow_2": T.order})
                concl = elem and q is not None and q % 8 in (3, 5)
    return [ctx.verdict("B", "p=2", hyp, concl, witness=w, **ctx.pdata(2))]


def suite_C(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for pi in ctx.pi_sets:
        if 2 not in pi:
            continue
        data = ctx.pidata(pi)
        hyp = data["d_value"] > HALF
        concl = None
        w = None
        if hyp:
            sigma = pi - {2}
            res = has_normal_pi_complement(G, pi)
            hall = None
            if res.exists:
                hall = abelian_hall_subgroup(_quotient(G, res.complement), sigma)
            concl = res.exists and hall is not None
            w = {"complement": res.complement.order if res.exists else None,
                 "abelian_hall_sigma": hall.order if hall is not None else None}
        out.append(ctx.verdict("C", _pi(pi), hyp, concl, witness=w, **data))
    return out


def suite_D(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for p in ctx.odd_primes():
        data = ctx.pdata(p)
        d = data["d_value"]
        P = sylow_subgroup(G, p)
        nc = _p_nilpotent(G, p)
        structured = nc and P.is_abelian()
        w = {"normal_p_complement": nc, "sylow_abelian": P.is_abelian()}
        bound = boundary(p)
        out.append(ctx.verdict("D", f"p={p};dir=forward", d > bound, structured, witness=w, **data))
        out.append(ctx.verdict("D", f"p={p};dir=converse", structured, d > bound, witness=w, **data))
        # groups on the bound exactly must fail to be p-nilpotent
        out.append(ctx.verdict("D", f"p={p};dir=boundary", d == bound, not nc, witness=w, **data))
    return out


def suite_E(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for pi in ctx.pi_sets:
        if 2 in pi:
            continue
        data = ctx.pidata(pi)
        hyp = data["d_value"] > boundary(min(pi))
        concl = None
        w = None
        if hyp:
            res = has_normal_pi_complement(G, pi)
            concl = res.exists and bool(res.hall_quotient_abelian)
            w = {"complement": res.complement.order if res.exists else None,
                 "hall_abelian": res.hall_quotient_abelian}
        out.append(ctx.verdict("E", _pi(pi), hyp, concl, witness=w, **data))
    return out


def _theorem_f_conclusions(G: PermGroup, p: int) -> tuple[bool, dict]:
    P = sylow_subgroup(G, p)
    N = normalizer(G, P)
    C = centralizer_of_subgroup(G, P)
    PN = commutator_subgroup(G, P, N)
    w: dict = {"sylow_abelian": P.is_abelian(), "N/C": N.order // C.order, "[P,N]": PN.order}
    ok = P.is_abelian() and N.order == 2 * C.order and PN.order == p
    # G = A x B with B an abelian p-group; A has trivial center in both
    # allowed shapes, so B is the center of G
    B = center(G)
    w["B"] = B.order
    if not is_p_power(B.order, p) or not B.is_abelian():
        return False, w
    if B.order == 1:
        complements = [G]
    else:
        complements = direct_complements(G, B, LESCOT_CLASS_CAP)
    shape = None
    for A in complements:
        if A.order == 2 * p and not A.is_abelian():
            shape = "dihedral"
        else:
            almost, S = is_almost_simple(A, LESCOT_CLASS_CAP)
            if almost and pi_part(S.order, {p}) == p and pi_part(A.order, {p}) == p:
                shape = "almost simple"
                w["socle"] = S.order
        if shape:
            w["A"] = A.order
            break
    w["A_type"] = shape
    return ok and shape is not None, w


def suite_F(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for p in ctx.odd_primes():
        data = ctx.pdata(p)
        O = o_pi_core(G, complement_primes({p}, G.order))
        hyp = O.order == 1 and data["d_value"] == boundary(p)
        concl, w = _theorem_f_conclusions(G, p) if hyp else (None, None)
        out.append(ctx.verdict("F", f"p={p}", hyp, concl, witness=w, **data))
    return out


# -- lemma suites -------------------------------------------------------------

def suite_burnside(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for p in ctx.primes:
        data = ctx.pdata(p)
        P = sylow_subgroup(G, p)
        N = normalizer(G, P)
        C = centralizer_of_subgroup(G, P)
        nc = _p_nilpotent(G, p)
        central = all(x * n == n * x for x in P.generators for n in N.generators)
        self_fusion = controls_fusion(G, P, P)
        out.append(ctx.verdict("burnside", f"p={p};part=normalizer-controls-centralizer", True,
                               controls_fusion(G, N, C), **data))
        out.append(ctx.verdict("burnside", f"p={p};part=central-sylow", central, nc, **data))
        out.append(ctx.verdict("burnside", f"p={p};part=self-fusion;dir=forward", nc, self_fusion, **data))
        out.append(ctx.verdict("burnside", f"p={p};part=self-fusion;dir=converse", self_fusion, nc, **data))
    return out


def suite_complement_count(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for p in ctx.primes:
        data = ctx.pdata(p)
        P = sylow_subgroup(G, p)
        kP = count_classes(P)
        kp = data["k_p"]
        nc = _p_nilpotent(G, p)
        structured = nc and P.is_abelian()
        w = {"k(P)": kP}
        out.append(ctx.verdict("complement-count", f"p={p};part=bound", True, kp <= kP, witness=w, **data))
        out.append(ctx.verdict("complement-count", f"p={p};part=equality;dir=forward", kp == kP, nc, witness=w, **data))
        out.append(ctx.verdict("complement-count", f"p={p};part=equality;dir=converse", nc, kp == kP, witness=w, **data))
        out.append(ctx.verdict("complement-count", f"p={p};part=full;dir=forward", data["d_value"] == 1, structured, **data))
        out.append(ctx.verdict("complement-count", f"p={p};part=full;dir=converse", structured, data["d_value"] == 1, **data))
    return out


def _witnesses(G: PermGroup, p: int):
    return G.cached(("witnesses", p), lambda: glauberman_witnesses(G, p))


def suite_isolation(ctx: GroupContext) -> list[Verdict]:
    out = []
    for p in ctx.primes:
        reports = _witnesses(ctx.G, p)
        iso = [r for r in reports if r.is_isolated]
        ctl = [r for r in reports if r.centralizer_controls]
        bad_f = [str(r.element) for r in iso if not r.centralizer_controls]
        bad_c = [str(r.element) for r in ctl if not r.is_isolated]
        w = {"classes": len(reports), "isolated": len(iso)}
        data = ctx.pdata(p)
        out.append(ctx.verdict("isolation", f"p={p};dir=forward", bool(iso), not bad_f,
                               witness={**w, "counterexample": bad_f[:1]}, **data))
        out.append(ctx.verdict("isolation", f"p={p};dir=converse", bool(ctl), not bad_c,
                               witness={**w, "counterexample": bad_c[:1]}, **data))
    return out


def suite_zstar(ctx: GroupContext) -> list[Verdict]:
    out = []
    for p in ctx.primes:
        iso = [r for r in _witnesses(ctx.G, p) if r.is_isolated]
        bad = [str(r.element) for r in iso if not r.in_z_p_star]
        out.append(ctx.verdict("zstar", f"p={p}", bool(iso), not bad,
                               witness={"isolated": len(iso), "counterexample": bad[:1]}, **ctx.pdata(p)))
    return out


def suite_power_closure(ctx: GroupContext) -> list[Verdict]:
    out = []
    for p in ctx.primes:
        iso = [r for r in _witnesses(ctx.G, p) if r.is_isolated]
        bad = [str(r.element) for r in iso if not r.powers_isolated]
        out.append(ctx.verdict("power-closure", f"p={p}", bool(iso), not bad,
                               witness={"isolated": len(iso), "counterexample": bad[:1]}, **ctx.pdata(p)))
    return out


def _nonempty_subsets(primes: list[int]) -> list[frozenset[int]]:
    return [frozenset(c) for r in range(1, len(primes) + 1) for c in combinations(primes, r)]


def _pair_count_check(ctx: GroupContext) -> tuple[bool, dict]:
    """Commuting pairs number k(G)|G|: exact for small groups, sampled otherwise."""
    G = ctx.G
    elems = G.elements()
    k = count_classes(G)
    if G.order <= EXACT_PAIR_COUNT_MAX_ORDER:
        pairs = sum(1 for x in elems for y in elems if x * y == y * x)
        return pairs == k * G.order, {"pairs": pairs, "mode": "exact"}
    rng = random.Random(ctx.seed ^ zlib.crc32(ctx.name.encode()))
    idx = class_index_map(G)
    classes = conjugacy_classes(G)
    sample = sorted(rng.sample(range(len(elems)), min(SAMPLED_ELEMENTS, len(elems))))
    ok = all(centralizer(G, elems[i]).order * classes[idx[elems[i]]].size == G.order for i in sample)
    return ok, {"sampled": len(sample), "mode": "sampled"}


def suite_degree_bounds(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    d = commuting_degree(G)
    base = {"k_p": count_classes(G), "d_value": d}
    primes = prime_divisors(G.order)

    subsets = _nonempty_subsets(primes)
    bad = []
    for pi in subsets:
        dpi = commuting_degree(G, pi)
        for mu in subsets:
            if mu < pi and not (dpi <= commuting_degree(G, mu) <= 1):
                bad.append([sorted(mu), sorted(pi)])
    out.append(ctx.verdict("degree-bounds", "part=monotone", bool(subsets), not bad,
                           witness={"chains": len(subsets), "counterexample": bad[:1]}, **base))

    if G.order <= QUOTIENT_SCAN_MAX_ORDER and G.order > 1:
        normals, source = _normal_subgroups_or_canonical(G)
        sets = [frozenset({p}) for p in primes] + ([frozenset(primes)] if len(primes) > 1 else [])
        bad = []
        for N in normals:
            Q = _quotient(G, N)
            for pi in sets:
                if commuting_degree(G, pi) > commuting_degree(Q, pi) * commuting_degree(N, pi):
                    bad.append({"N": N.order, "pi": sorted(pi)})
        out.append(ctx.verdict("degree-bounds", "part=quotient", True, not bad,
                               witness={"normal_subgroups": len(normals), "source": source,
                                        "counterexample": bad[:1]}, **base))

    r = prime_power(G.order)
    nonabelian_p = r is not None and not G.is_abelian()
    concl = d < Fraction(r[0] + 1, r[0] ** 2) if nonabelian_p else None
    out.append(ctx.verdict("degree-bounds", "part=p-group", nonabelian_p, concl, **base))

    for p in ctx.primes:
        no_normal = o_pi_core(G, {p}).order < pi_part(G.order, {p})
        out.append(ctx.verdict("degree-bounds", f"p={p};part=no-normal-sylow", no_normal,
                               d <= Fraction(1, p), **base))

    ok, w = _pair_count_check(ctx)
    out.append(ctx.verdict("degree-bounds", "part=commuting-pairs", True, ok, witness=w, **base))
    return out


def suite_half_classification(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    d = commuting_degree(G)
    base = {"k_p": count_classes(G), "d_value": d}
    hyp = d >= HALF
    try:
        kind = lescot_classify(G)
        concl = kind.tag != "Below"
        w = {"type": kind.tag, "m": kind.m, "factors": list(kind.factor_orders)}
    except ClassificationError as exc:
        concl = False
        w = {"error": str(exc)}
    out = [ctx.verdict("half-classification", "part=trichotomy", hyp, concl, witness=w, **base)]
    two_group = G.order > 1 and is_p_power(G.order, 2)
    out.append(ctx.verdict("half-classification", "part=no-half-2-group", two_group, d != HALF, **base))
    odd_large = G.order % 2 == 1 and hyp
    out.append(ctx.verdict("half-classification", "part=odd-order", odd_large, G.is_abelian(), **base))
    return out


def suite_pprime_quotient(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    for p in ctx.primes:
        core = o_pi_core(G, complement_primes({p}, G.order))
        try:
            candidates = [N for N in normal_subgroups(G) if N.order > 1 and N.order % p and N.is_subgroup_of(core)]
            source = "lattice"
        except CapExceeded:
            candidates = [core] if core.order > 1 else []
            source = "core"
        kp = k_p(G, p)
        bad = [N.order for N in candidates if k_p(_quotient(G, N), p) != kp]
        out.append(ctx.verdict("pprime-quotient", f"p={p}", bool(candidates), not bad,
                               witness={"normal_p'_subgroups": len(candidates), "source": source,
                                        "counterexample": bad[:1]}, **ctx.pdata(p)))
    return out


def _two_class_structure(G: PermGroup, P: PermGroup, k2: int) -> tuple[bool, dict]:
    """Shape of the Sylow 2-subgroup when k_2 = |P|/2 with trivial O_2' and center."""
    if k2 == 2:
        prof = p_group_profile(P, 2)
        return P.order == 4 and prof.is_elementary_abelian, {"case": "elementary abelian of order 4"}
    prof = p_group_profile(P, 2)
    if not prof.is_extraspecial:
        return False, {"case": "not extraspecial"}
    idx = class_index_map(G)
    meets: dict[int, int] = {}
    for y in P.elements():
        meets[idx[y]] = meets.get(idx[y], 0) + 1
    z = next(x for x in prof.center.elements() if not x.is_identity())
    zc = idx[z]
    others_ok = all(n == 2 for c, n in meets.items() if c != zc and c != idx[P.identity])
    return meets[zc] == 3 and others_ok, {"case": "extraspecial", "z_meets_P": meets[zc]}


def suite_two_class_bound(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    P = sylow_subgroup(G, 2)
    O = o_pi_core(G, complement_primes({2}, G.order))
    hyp = P.order > 1 and O.order == 1 and center(G).order == 1
    concl = None
    w = None
    if hyp:
        k2 = k_p(G, 2)
        concl = 2 * k2 <= P.order
        w = {"equality": 2 * k2 == P.order}
        if concl and 2 * k2 == P.order:
            shape_ok, shape = _two_class_structure(G, P, k2)
            concl = shape_ok
            w.update(shape)
    return [ctx.verdict("two-class-bound", "p=2", hyp, concl, witness=w, **ctx.pdata(2))]


def suite_sylow_abelian(ctx: GroupContext) -> list[Verdict]:
    out = []
    for p in ctx.odd_primes():
        data = ctx.pdata(p)
        P = sylow_subgroup(ctx.G, p)
        out.append(ctx.verdict("sylow-abelian", f"p={p}", data["d_value"] >= boundary(p), P.is_abelian(), **data))
    return out


def suite_simple_bound(ctx: GroupContext) -> list[Verdict]:
    G = ctx.G
    out = []
    simple = not G.is_abelian() and is_simple(G)
    for p in ctx.primes:
        data = ctx.pdata(p)
        T = sylow_subgroup(G, p)
        hyp = simple and T.is_abelian()
        concl = 2 * data["k_p"] <= T.order + 1
        w = {"tight": 2 * data["k_p"] == T.order + 1} if hyp else None
        out.append(ctx.verdict("simple-bound", f"p={p}", hyp, concl, witness=w, **data))
    return out


SUITE_FUNCTIONS = {
    "A": suite_A,
    "B": suite_B,
    "C": suite_C,
    "D": suite_D,
    "E": suite_E,
    "F": suite_F,
    "burnside": suite_burnside,
    "complement-count": suite_complement_count,
    "isolation": suite_isolation,
    "zstar": suite_zstar,
    "power-closure": suite_power_closure,
    "degree-bounds": suite_degree_bounds,
    "half-classification": suite_half_classification,
    "pprime-quotient": suite_pprime_quotient,
    "two-class-bound": suite_two_class_bound,
    "sylow-abelian": suite_sylow_abelian,
    "simple-bound": suite_simple_bound,
}


def verify_theorem(suite: str, G: PermGroup, params=None, name: str = "G", seed: int = 0) -> list[Verdict]:
    """Run one suite on one group.  ``params`` is a prime, a set of primes
    (for C and E), or None for the defaults."""
    primes = pi_sets = None
    if isinstance(params, int):
        primes = [params]
    elif params is not None:
        pi_sets = [tuple(params)]
        primes = sorted(set(params))
    ctx = GroupContext.build(name, G, primes, pi_sets, seed)
    return SUITE_FUNCTIONS[suite](ctx)
