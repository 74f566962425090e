import pytest

import oracle
from conftest import group
from fusionlab.classes import conjugacy_classes
from fusionlab.errors import NotASubgroup
from fusionlab.invariants import k_p
from fusionlab.numtheory import pi_part, prime_divisors
from fusionlab.perm import Permutation, symmetric_group
from fusionlab.structure import center, centralizer, is_simple, normalizer, o_pi_core, p_group_profile
from fusionlab.sylow import (
    class_intersect_sylow,
    controls_fusion,
    glauberman_witnesses,
    has_normal_pi_complement,
    sylow_subgroup,
    z_p_star,
)


def elem_set(H):
    return frozenset(tuple(x) for x in H.elements())


class TestClasses:
    def test_examples(self):
        assert [c.size for c in conjugacy_classes(group("C2 x C4"))] == [1] * 8
        assert sorted(c.size for c in conjugacy_classes(symmetric_group(3))) == [1, 2, 3]
        assert sorted(c.size for c in conjugacy_classes(group("A5"))) == [1, 12, 12, 15, 20]

    def test_class_invariants(self, small_catalog):
        for e in small_catalog:
            G = e.group
            classes = conjugacy_classes(G)
            assert sum(c.size for c in classes) == G.order
            for c in classes:
                assert c.representative == min(c.members)
                assert len(c.members) == c.size
                assert {x.order() for x in c.members} == {c.element_order}
            keys = [(c.element_order, c.size, c.representative) for c in classes]
            assert keys == sorted(keys)


class TestOracleEquivalence:
    """Engine results against full multiplication-table closure, order <= 200."""

    def test_classes_and_centralizers(self, small_catalog):
        for e in small_catalog:
            G = e.group
            elems = oracle.closure(G.degree, G.generators)
            ref = set(oracle.conjugacy_classes(elems))
            got = {frozenset(tuple(x) for x in c.members) for c in conjugacy_classes(G)}
            assert got == ref, e.name
            for c in conjugacy_classes(G):
                x = tuple(c.representative)
                assert elem_set(centralizer(G, c.representative)) == oracle.centralizer(elems, x), e.name

    def test_sylow_subgroups(self, small_catalog):
        for e in small_catalog:
            G = e.group
            elems = oracle.closure(G.degree, G.generators)
            for p in prime_divisors(G.order):
                P = sylow_subgroup(G, p)
                assert P.order == oracle.p_part(G.order, p)
                assert elem_set(P) in oracle.all_sylows(G.degree, elems, p), (e.name, p)


class TestSylow:
    def test_examples(self):
        P = sylow_subgroup(group("A5"), 2)
        assert P.order == 4 and p_group_profile(P, 2).is_elementary_abelian
        P = sylow_subgroup(symmetric_group(4), 2)
        assert P.order == 8 and p_group_profile(P, 2).is_extraspecial
        assert sylow_subgroup(group("C6"), 5).order == 1

    def test_deterministic(self):
        G = group("S5")
        a = sylow_subgroup(G, 2)
        b = sylow_subgroup(group("S5"), 2)
        assert a.elements() == b.elements()

    def test_full_order_on_catalog(self):
        from fusionlab.catalog.builtin import builtin_catalog

        for e in builtin_catalog(2000):
            for p in prime_divisors(e.group.order):
                assert sylow_subgroup(e.group, p).order == pi_part(e.group.order, {p})


class TestFusion:
    def test_class_intersect_examples(self):
        A4 = group("A4")
        x = Permutation.from_cycles(4, (0, 1), (2, 3))
        assert class_intersect_sylow(A4, 2, A4.identity) == [A4.identity]
        assert len(class_intersect_sylow(A4, 2, x)) == 3

    def test_class_intersect_errors(self):
        A4 = group("A4")
        with pytest.raises(ValueError):
            class_intersect_sylow(A4, 2, Permutation.from_cycles(4, (0, 1, 2)))
        x = Permutation.from_cycles(4, (0, 1), (2, 3))
        with pytest.raises(NotASubgroup):
            class_intersect_sylow(A4, 2, x, A4.subgroup([x]))

    def test_controls_fusion_examples(self):
        A4 = group("A4")
        V4 = sylow_subgroup(A4, 2)
        assert controls_fusion(A4, A4, V4)
        assert not controls_fusion(A4, V4, V4)
        with pytest.raises(NotASubgroup):
            controls_fusion(V4, A4, V4)

    def test_burnside_normalizer_controls_centralizer(self, small_catalog):
        from fusionlab.structure import centralizer_of_subgroup

        for e in small_catalog:
            G = e.group
            for p in prime_divisors(G.order):
                P = sylow_subgroup(G, p)
                assert controls_fusion(G, normalizer(G, P), centralizer_of_subgroup(G, P))

    def test_isolation_equivalence(self, small_catalog):
        for e in small_catalog:
            G = e.group
            for p in prime_divisors(G.order):
                P = sylow_subgroup(G, p)
                for x in P.elements():
                    isolated = class_intersect_sylow(G, p, x, P) == [x]
                    C = centralizer(G, x)
                    # P <= C_G(x) is needed for the fusion statement to apply
                    if P.is_subgroup_of(C):
                        assert isolated == controls_fusion(G, C, P), (e.name, p, x)
                    elif isolated:
                        pytest.fail(f"{e.name}: isolated {x} does not centralize P")

    def test_two_class_bound_without_center(self):
        for name in ["A4", "S4", "A5", "S5", "PSL2(7)", "A6"]:
            G = group(name)
            if o_pi_core(G, {q for q in prime_divisors(G.order) if q != 2}).order != 1 or center(G).order != 1:
                continue
            P = sylow_subgroup(G, 2)
            assert k_p(G, 2) <= P.order // 2, name


class TestComplements:
    def test_examples(self):
        exists, N, abelian = has_normal_pi_complement(symmetric_group(3), {2})
        assert exists and N.order == 3 and abelian
        assert not has_normal_pi_complement(group("A4"), {2}).exists
        for p in (3, 5, 7, 11, 13):
            assert not has_normal_pi_complement(group(f"D{2 * p}"), {p}).exists

    def test_triad_agrees_on_catalog(self, small_catalog):
        # InternalCheckError would be raised on any disagreement
        for e in small_catalog:
            for p in prime_divisors(e.group.order):
                has_normal_pi_complement(e.group, {p})

    def test_pi_sets(self):
        G = group("S3 x C5")
        res = has_normal_pi_complement(G, {2, 5})
        assert res.exists and res.complement.order == 3 and res.hall_quotient_abelian
        assert not has_normal_pi_complement(group("A5"), {2, 3}).exists


class TestZStar:
    def test_examples(self):
        for name in ["A5", "PSL2(7)", "A6"]:
            G = group(name)
            assert is_simple(G)
            for p in prime_divisors(G.order):
                assert z_p_star(G, p).order == 1
        assert z_p_star(group("SL2(3)"), 2).equals(center(group("SL2(3)")))
        assert z_p_star(symmetric_group(3), 2).order == 6

    def test_glauberman_examples(self):
        assert not any(r.is_isolated for r in glauberman_witnesses(group("A4"), 2))
        reports = glauberman_witnesses(group("SL2(3)"), 2)
        iso = [r for r in reports if r.is_isolated]
        assert len(iso) == 1 and iso[0].element.order() == 2 and iso[0].in_z_p_star
        for r in glauberman_witnesses(group("C2 x C4"), 2):
            assert r.is_isolated and r.consistent

    def test_reports_consistent_on_catalog(self, small_catalog):
        for e in small_catalog:
            G = e.group
            for p in prime_divisors(G.order):
                P = sylow_subgroup(G, p)
                ZP = center(P)
                for r in glauberman_witnesses(G, p):
                    assert r.consistent, (e.name, p, r.element)
                    if r.is_isolated:
                        assert r.element in ZP
