import json
from itertools import product

import pytest

from conftest import group
from fusionlab.catalog.builtin import builtin_catalog, builtin_specs
from fusionlab.catalog.families import GroupSpec, construct, parse_spec
from fusionlab.catalog.fields import CONWAY, field
from fusionlab.catalog.io import (
    CatalogError,
    OrderMismatch,
    dump_catalog,
    dumps_catalog,
    entry_from_group,
    load_catalog,
    loads_catalog,
)
from fusionlab.catalog.presentation import PresentationError, gm_presentation, parse_presentation
from fusionlab.catalog.todd_coxeter import CosetLimitExceeded, todd_coxeter
from fusionlab.invariants import commuting_degree, k_p
from fusionlab.numtheory import prime_power
from fusionlab.structure import is_simple, p_group_profile
from fusionlab.sylow import sylow_subgroup

FACT = [1, 1, 2, 6, 24, 120, 720, 5040]


class TestFamilyOrders:
    @pytest.mark.parametrize("n", range(1, 65))
    def test_cyclic(self, n):
        assert construct(GroupSpec("cyclic", (n,))).order == n

    @pytest.mark.parametrize("n", range(1, 65))
    def test_dihedral(self, n):
        G = construct(GroupSpec("dihedral", (2 * n,)))
        assert G.order == 2 * n
        assert G.is_abelian() == (n <= 2)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_symmetric_alternating(self, n):
        assert construct(GroupSpec("symmetric", (n,))).order == FACT[n]
        assert construct(GroupSpec("alternating", (n,))).order == max(1, FACT[n] // 2)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_gm(self, m):
        G = construct(GroupSpec("gm", (m,)))
        assert G.order == 3 * 2 ** m and G.degree == 3 * 2 ** m

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("kind", ["plus", "minus"])
    def test_extraspecial(self, m, kind):
        P = construct(GroupSpec("extraspecial2", (m, kind)))
        assert P.order == 2 ** (1 + 2 * m)
        assert p_group_profile(P, 2).is_extraspecial

    def test_extraspecial_types_differ(self):
        # the two types differ in their number of involutions
        for m in (1, 2):
            invols = [sum(1 for x in construct(GroupSpec("extraspecial2", (m, k))).elements() if x.order() == 2)
                      for k in ("plus", "minus")]
            assert invols[0] > invols[1]

    @pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13, 16, 19, 29])
    def test_psl2(self, q):
        G = construct(GroupSpec("psl2", (q,)))
        full = q * (q * q - 1)
        assert G.degree == q + 1
        assert G.order == (full if q % 2 == 0 else full // 2)
        assert is_simple(G)

    @pytest.mark.parametrize("q", [3, 5, 7])
    def test_sl2(self, q):
        G = construct(GroupSpec("sl2", (q,)))
        assert G.degree == q * q - 1 and G.order == q * (q * q - 1)

    @pytest.mark.parametrize("p,k,r", [(7, 1, 3), (2, 2, 3), (5, 1, 2), (11, 1, 5), (13, 1, 3),
                                       (2, 3, 7), (3, 2, 2), (5, 2, 3), (2, 4, 5), (3, 3, 13), (7, 1, 2)])
    def test_frobenius(self, p, k, r):
        G = construct(GroupSpec("frobenius_affine", (p, k, r)))
        assert G.order == p ** k * r and G.degree == p ** k
        assert k_p(G, p) == (p ** k - 1) // r + 1
        # Frobenius: only the identity fixes two points
        for x in G.elements()[1:]:
            assert sum(1 for i, j in enumerate(x) if i == j) <= 1

    def test_psl2_11_example(self):
        G = group("psl2:11")
        assert (G.degree, G.order, k_p(G, 2)) == (12, 660, 2)
        assert commuting_degree(G, {2}) == pytest.approx(0.5) and commuting_degree(G, {2}).denominator == 2

    @pytest.mark.parametrize("q", [5, 11, 13, 19, 29])
    def test_psl2_sylow_two(self, q):
        assert q % 8 in (3, 5)
        G = group(f"PSL2({q})")
        P = sylow_subgroup(G, 2)
        assert P.order == 4 and p_group_profile(P, 2).is_elementary_abelian
        assert str(commuting_degree(G, {2})) == "1/2"

    def test_direct_product(self):
        G = group("S3 x C4")
        assert G.order == 24 and G.degree == 7
        assert parse_spec("S3xC4") == parse_spec("S3 * C4") == parse_spec("symmetric:3 x cyclic:4")

    @pytest.mark.parametrize("bad", [
        ("cyclic", (0,)), ("dihedral", (5,)), ("gm", (0,)), ("extraspecial2", (1, "odd")),
        ("psl2", (6,)), ("psl2", (2,)), ("sl2", (12,)),
        ("frobenius_affine", (7, 1, 4)), ("frobenius_affine", (7, 1, 5)), ("frobenius_affine", (5, 1, 5)),
        ("nonsense", (1,)),
    ])
    def test_invalid_specs(self, bad):
        with pytest.raises(ValueError):
            GroupSpec(*bad)

    def test_unparseable(self):
        with pytest.raises(ValueError):
            parse_spec("M11")

    def test_builtin_catalog_shape(self):
        specs = builtin_specs()
        assert len(specs) >= 60
        for s in specs:
            if s.family != "psl2":
                assert s.expected_order <= 2000, s.name
            else:
                assert s.expected_order <= 12180
        names = [e.name for e in builtin_catalog()]
        assert len(names) == len(set(names)) and names == sorted(names)


def _order_of_x(p, coeffs):
    """Multiplicative order of x modulo the monic polynomial, with naive arithmetic."""
    f = len(coeffs) - 1

    def times_x(a):
        top = a[-1]
        shifted = [0] + a[:-1]
        return [(s - top * c) % p for s, c in zip(shifted, coeffs[:-1])]

    one = [1] + [0] * (f - 1)
    a, k = times_x(one), 1
    while a != one:
        a = times_x(a)
        k += 1
    return k


class TestFields:
    @pytest.mark.parametrize("pf", sorted(CONWAY))
    def test_conway_polynomials_primitive(self, pf):
        p, f = pf
        coeffs = list(CONWAY[pf])
        assert coeffs[-1] == 1 and len(coeffs) == f + 1
        # x of order p^f - 1 forces irreducibility as well
        assert _order_of_x(p, coeffs) == p ** f - 1

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 16, 25, 27])
    def test_field_axioms(self, q):
        F = field(q)
        for a, b in product(range(q), repeat=2):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
        for a in range(1, q):
            assert F.mul(a, F.inv(a)) == 1
        for a, b, c in product(range(q), repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        g = F.primitive
        assert len({F.power(g, e) for e in range(q - 1)}) == q - 1

    def test_bad_field(self):
        with pytest.raises(ValueError):
            field(6)
        with pytest.raises(ValueError):
            field(2 ** 11)


class TestPresentations:
    def test_gm_text(self):
        pres = parse_presentation("gens: a b\nrels: a^3, b^8, b^-1 a b = a^-1\n")
        assert pres.generators == ("a", "b") and len(pres.relators) == 3
        assert pres == parse_presentation(gm_presentation(3))

    def test_trivial_and_s3(self):
        assert todd_coxeter(parse_presentation("gens: a\nrels: a")).order == 1
        res = todd_coxeter(parse_presentation("gens: a b\nrels: a^2, b^3, (a b)^2"))
        assert res.order == 6
        assert commuting_degree(res.group) == pytest.approx(0.5)

    def test_comments_and_continuation(self):
        text = "# dihedral of order 10\ngens: r s\nrels: r^5,\n  s^2,  # reflection\n  (s r)^2\n"
        assert todd_coxeter(parse_presentation(text)).order == 10

    @pytest.mark.parametrize("text,line,col", [
        ("gens: a b\nrels: a^3, c", 2, 12),
        ("gens: a\nrels: a^0", 2, 9),
        ("gens: a\nrels: a^x", 2, 9),
        ("gens: a\nrels: a, , a^2", 2, 10),
        ("rels: a", 1, 1),
        ("gens: a a", 1, 1),
        ("gens: a\nrels: (a", 2, 8),
    ])
    def test_errors_carry_position(self, text, line, col):
        with pytest.raises(PresentationError) as info:
            parse_presentation(text)
        assert (info.value.line, info.value.column) == (line, col), str(info.value)

    def test_missing_header(self):
        with pytest.raises(PresentationError):
            parse_presentation("")


class TestToddCoxeter:
    @pytest.mark.parametrize("m", range(1, 7))
    def test_gm_counts(self, m):
        res = todd_coxeter(parse_presentation(gm_presentation(m)))
        assert res.order == len(res.table) == 3 * 2 ** m
        assert res.table.is_compatible(parse_presentation(gm_presentation(m)).relators)
        assert res.group.order == res.order
        # regular: no nonidentity element fixes a coset
        for g in res.group.generators:
            assert g.is_identity() or all(g[i] != i for i in range(res.group.degree))

    def test_agrees_with_constructors(self):
        cases = {
            "gens: a b\nrels: a^4, b^2, (a b)^2": group("D8").order,
            "gens: a b\nrels: a^2, b^3, (a b)^5": group("A5").order,
            "gens: a b\nrels: a^2, b^3, (a b)^4": group("S4").order,
            "gens: a b\nrels: a^4, a^2 = b^2, b^-1 a b = a^-1": group("Q8").order,
        }
        for text, order in cases.items():
            assert todd_coxeter(parse_presentation(text)).order == order

    def test_limit_is_inconclusive(self):
        with pytest.raises(CosetLimitExceeded):
            todd_coxeter(parse_presentation("gens: a b\nrels: a^2"), max_cosets=500)

    def test_bad_limit(self):
        with pytest.raises(ValueError):
            todd_coxeter(parse_presentation("gens: a\nrels: a"), max_cosets=0)


A4_RECORD = {"name": "A4", "degree": 4, "generators": [[1, 2, 0, 3], [0, 2, 3, 1]], "expected_order": 12}


class TestCatalogIO:
    def test_load_a4(self, tmp_path):
        path = tmp_path / "a4.json"
        path.write_text(json.dumps([A4_RECORD]))
        (e,) = load_catalog(str(path))
        assert e.name == "A4" and e.group.order == 12

    def test_json_lines(self):
        text = json.dumps(A4_RECORD) + "\n" + json.dumps({"name": "C2", "degree": 2, "generators": [[1, 0]]}) + "\n"
        entries = loads_catalog(text)
        assert [e.group.order for e in entries] == [12, 2]

    def test_duplicate_point_reported(self):
        rec = dict(A4_RECORD, generators=[[1, 2, 0, 3], [0, 2, 2, 1]])
        with pytest.raises(CatalogError, match=r"generator 1, index 2: duplicate point 2 \(first at index 1\)"):
            loads_catalog(json.dumps([rec]))

    @pytest.mark.parametrize("mutation,needle", [
        ({"degree": 0}, "degree"),
        ({"name": ""}, "name"),
        ({"generators": [[0, 1, 2]]}, "length 4"),
        ({"generators": [[0, 1, 2, 4]]}, "out of range"),
        ({"expected_order": -3}, "expected_order"),
        ({"colour": "red"}, "unknown field"),
    ])
    def test_malformed_records(self, mutation, needle):
        with pytest.raises(CatalogError, match=needle):
            loads_catalog(json.dumps([dict(A4_RECORD, **mutation)]))

    def test_syntax_error_position(self):
        with pytest.raises(CatalogError, match="line 2"):
            loads_catalog('[\n{"name": "A4",, }\n]')

    def test_duplicate_names(self):
        with pytest.raises(CatalogError, match="duplicate"):
            loads_catalog(json.dumps([A4_RECORD, A4_RECORD]))

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            loads_catalog(json.dumps([dict(A4_RECORD, expected_order=24)]))

    def test_round_trip_builtin(self, tmp_path):
        entries = builtin_catalog(2000)
        path = tmp_path / "all.json"
        dump_catalog(entries, str(path))
        text = path.read_text()
        again = load_catalog(str(path))
        assert dumps_catalog(again) == text
        assert [(e.name, e.group.order) for e in again] == [(e.name, e.group.order) for e in entries]

    def test_empty(self):
        assert dumps_catalog([]) == "[]\n"
        assert loads_catalog("[]") == []

    def test_from_file_and_presentation_specs(self, tmp_path):
        cat = tmp_path / "one.json"
        dump_catalog([entry_from_group("S3", group("S3"))], str(cat))
        assert construct(GroupSpec("from_file", (str(cat),))).order == 6
        pres = tmp_path / "g2.txt"
        pres.write_text(gm_presentation(2))
        assert construct(parse_spec(f"from_presentation:{pres}")).order == 12
        assert prime_power(12) is None
