from fractions import Fraction
from itertools import combinations

import pytest

import oracle
from conftest import group
from fusionlab.errors import CapExceeded
from fusionlab.invariants import class_counts, commuting_degree, invariant_record, k_p, lescot_classify
from fusionlab.numtheory import is_p_power, prime_divisors
from fusionlab.perm import coset_action
from fusionlab.structure import normal_subgroups, o_pi_core
from fusionlab.sylow import sylow_subgroup

F = Fraction

# class numbers cross-checked against the brute-force oracle below
FROZEN_K = {
    "S3": 3, "S4": 5, "S5": 7, "A4": 4, "A5": 5, "A6": 7, "D8": 5, "Q8": 5, "D10": 4,
    "SL2(3)": 7, "PSL2(7)": 6, "PSL2(8)": 9, "G_2": 6, "F(7,1,3)": 5, "2^(1+4)+": 17,
}


@pytest.mark.parametrize("name,k", sorted(FROZEN_K.items()))
def test_frozen_class_numbers(name, k):
    G = group(name)
    assert class_counts(G)[0] == k
    if G.order <= 200:
        assert len(oracle.conjugacy_classes(oracle.closure(G.degree, G.generators))) == k


def test_class_count_examples():
    A4 = group("A4")
    assert k_p(A4, 2) == 2
    assert k_p(group("A5"), 3) == 2
    assert class_counts(A4, {2, 3}) == (4, 4)
    assert k_p(group("C6"), 5) == 1


def test_commuting_degree_examples():
    assert commuting_degree(group("C2 x C4")) == 1
    assert commuting_degree(group("SL2(3)"), {2}) == F(3, 8)
    for p in (3, 5, 7, 11, 13):
        assert commuting_degree(group(f"D{2 * p}"), {p}) == F(p + 1, 2 * p)
    assert isinstance(commuting_degree(group("S4")), Fraction)
    assert commuting_degree(group("C6"), {5}) == 1


def test_k_pi_matches_oracle(small_catalog):
    for e in small_catalog:
        G = e.group
        elems = oracle.closure(G.degree, G.generators)
        classes = oracle.conjugacy_classes(elems)
        primes = prime_divisors(G.order)
        for r in range(1, len(primes) + 1):
            for pi in combinations(primes, r):
                ref = sum(1 for c in classes if all(q in pi for q in prime_divisors(oracle.order_of(next(iter(c))))))
                assert class_counts(G, pi) == (len(classes), ref), (e.name, pi)


def test_record_bounds(small_catalog):
    for e in small_catalog:
        rec = invariant_record(e.group, e.name)
        for d in rec.per_prime.values():
            assert 2 <= d.k_p <= d.k_sylow <= d.p_part
            # d_p = 1 exactly for p-nilpotent groups with abelian Sylow
            assert (d.d_p == 1) == (d.p_nilpotent and d.sylow_abelian), (e.name, d.p)


def test_monotone_in_prime_sets(small_catalog):
    for e in small_catalog:
        primes = prime_divisors(e.group.order)
        for r in range(1, len(primes) + 1):
            for pi in combinations(primes, r):
                for mu in combinations(pi, r - 1) if r > 1 else []:
                    assert commuting_degree(e.group, pi) <= commuting_degree(e.group, mu) <= 1


def test_quotient_inequality(small_catalog):
    checked = 0
    for e in small_catalog:
        G = e.group
        try:
            lattice = normal_subgroups(G)
        except CapExceeded:
            continue
        primes = prime_divisors(G.order)
        for N in lattice:
            Q = coset_action(G, N).image
            for p in primes:
                pi = {p}
                assert commuting_degree(G, pi) <= commuting_degree(Q, pi) * commuting_degree(N, pi)
            pi = set(primes)
            assert commuting_degree(G, pi) <= commuting_degree(Q, pi) * commuting_degree(N, pi)
            checked += 1
    assert checked > 300


def test_p_group_and_normal_sylow_bounds(small_catalog):
    for e in small_catalog:
        G = e.group
        d = commuting_degree(G)
        primes = prime_divisors(G.order)
        if len(primes) == 1 and not G.is_abelian():
            p = primes[0]
            assert d < F(p + 1, p * p)
        for p in primes:
            if not sylow_subgroup(G, p).is_normal_in(G):
                assert d <= F(1, p)


def test_p_prime_quotient_keeps_k_p(small_catalog):
    for e in small_catalog:
        G = e.group
        for p in prime_divisors(G.order):
            O = o_pi_core(G, [q for q in prime_divisors(G.order) if q != p])
            assert k_p(G, p) == k_p(coset_action(G, O).image, p)


class TestLescot:
    def test_examples(self):
        assert lescot_classify(group("C5")).tag == "Abelian"
        t = lescot_classify(group("D8"))
        assert (t.tag, t.m, t.d) == ("TwoCentralType", 1, F(5, 8))
        t = lescot_classify(group("S3"))
        assert (t.tag, t.m, t.d) == ("GmType", 1, F(1, 2))
        assert lescot_classify(group("A4")).tag == "Below"

    @pytest.mark.parametrize("m", range(1, 7))
    def test_gm_family(self, m):
        G = group(f"G_{m}")
        assert commuting_degree(G) == F(1, 2)
        t = lescot_classify(G)
        assert (t.tag, t.m) == ("GmType", m)

    def test_products(self):
        t = lescot_classify(group("Q8 x C3"))
        assert (t.tag, t.m, t.factor_orders) == ("TwoCentralType", 1, (8, 3))
        t = lescot_classify(group("G_3 x C5"))
        assert (t.tag, t.m, t.factor_orders) == ("GmType", 3, (24, 5))
        t = lescot_classify(group("2^(1+4)+ x C3"))
        assert (t.tag, t.m) == ("TwoCentralType", 2)

    def test_trichotomy_on_catalog(self, small_catalog):
        for e in small_catalog:
            G = e.group
            t = lescot_classify(G)
            assert (t.tag != "Below") == (t.d >= F(1, 2))
            if t.tag == "TwoCentralType":
                assert F(1, 2) < t.d <= F(5, 8)
            if is_p_power(G.order, 2):
                assert t.d != F(1, 2)
            if G.order % 2 and t.d >= F(1, 2):
                assert t.tag == "Abelian"
