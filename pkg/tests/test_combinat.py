import itertools
import json
from importlib import resources

import jsonschema
import pytest

from charlab import combinat as cb
from charlab.combinat import (
    GuardExceeded,
    count_pp,
    count_report,
    count_spp,
    count_spp_filtered,
    count_spp_star_algebraic,
    count_tcpp,
    enumerate_pp,
    is_tcpp,
    pp_character,
    pp_product,
    spp_character,
    spp_product,
    tcpp_character,
    tcpp_product,
    verify_count_identity,
)

SCHEMA = json.loads(resources.files("charlab").joinpath("schemas/count_report.schema.json").read_text())


def naive_pp(a, b, c):
    """Every matrix in [0, a]^(b*c), filtered: the slowest possible oracle."""
    n = 0
    for flat in itertools.product(range(a + 1), repeat=b * c):
        m = [flat[i * c:(i + 1) * c] for i in range(b)]
        rows = all(m[i][j] >= m[i][j + 1] for i in range(b) for j in range(c - 1))
        cols = all(m[i][j] >= m[i + 1][j] for i in range(b - 1) for j in range(c))
        n += rows and cols
    return n


class TestEnumeration:
    def test_tiny(self):
        assert sum(1 for _ in enumerate_pp(1, 1, 1)) == 2
        assert sum(1 for _ in enumerate_pp(3, 0, 4)) == 1

    def test_two_cube(self):
        assert sum(1 for _ in enumerate_pp(2, 2, 2)) == 20

    def test_first_is_zero(self):
        assert next(enumerate_pp(2, 2, 3)) == ((0, 0, 0), (0, 0, 0))

    def test_entries_valid_and_distinct(self):
        seen = set(enumerate_pp(3, 2, 3))
        for m in seen:
            assert all(0 <= v <= 3 for row in m for v in row)
            assert all(r[j] >= r[j + 1] for r in m for j in range(2))
            assert all(m[0][j] >= m[1][j] for j in range(3))
        assert len(seen) == naive_pp(3, 2, 3)

    @pytest.mark.parametrize("a,b,c", [(1, 2, 2), (2, 2, 2), (2, 1, 3), (3, 2, 2), (1, 3, 3)])
    def test_against_naive(self, a, b, c):
        assert sum(1 for _ in enumerate_pp(a, b, c)) == naive_pp(a, b, c)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            list(enumerate_pp(5, 4, 4, limit=100))


class TestCounts:
    @pytest.mark.parametrize("a", range(4))
    @pytest.mark.parametrize("b", range(4))
    @pytest.mark.parametrize("c", range(4))
    def test_pp_three_ways(self, a, b, c):
        listed = sum(1 for _ in enumerate_pp(a, b, c))
        assert count_pp(a, b, c) == listed == pp_product(a, b, c) == pp_character(a, b, c)

    @pytest.mark.parametrize("a,b,c", [(1, 2, 3), (2, 3, 1), (3, 1, 2)])
    def test_box_symmetry(self, a, b, c):
        values = {count_pp(*p) for p in itertools.permutations((a, b, c))}
        assert len(values) == 1

    def test_spp_values(self):
        assert count_spp(1, 1) == 2
        assert count_spp(2, 2) == 10

    @pytest.mark.parametrize("a", range(6))
    @pytest.mark.parametrize("n", range(1, 4))
    def test_spp_three_ways(self, a, n):
        assert count_spp(a, n) == count_spp_filtered(a, n) == spp_product(a, n) == spp_character(a, n)
        assert count_spp(a, n) <= count_pp(a, n, n)

    def test_tcpp_values(self):
        assert count_tcpp(0, 3) == 1
        assert count_tcpp(1, 2) == 2

    @pytest.mark.parametrize("m", range(3))
    @pytest.mark.parametrize("n", range(1, 4))
    def test_tcpp_matches_filter(self, m, n):
        filtered = sum(1 for p in enumerate_pp(2 * m, n, n) if is_tcpp(p, m))
        assert count_tcpp(m, n) == filtered <= count_pp(2 * m, n, n)

    @pytest.mark.parametrize("m", range(3))
    @pytest.mark.parametrize("n", range(1, 4))
    def test_tcpp_three_ways(self, m, n):
        assert count_tcpp(m, n) == tcpp_product(m, n) == tcpp_character(m, n)

    def test_spp_star(self):
        assert count_spp_star_algebraic(0, 1) == 2
        assert count_spp_star_algebraic(4, 1) == 2
        assert count_spp_star_algebraic(1, 2) == 6

    @pytest.mark.parametrize("m", range(4))
    @pytest.mark.parametrize("n", range(1, 4))
    def test_spp_star_routes_agree(self, m, n):
        count_spp_star_algebraic(m, n)


class TestReports:
    def test_pp_report(self):
        rep = count_report("pp", 2, 2)
        assert rep.methods == {"bruteforce": 20, "character": 20, "product": 20}
        assert rep.consistent
        jsonschema.validate(rep.to_json(), SCHEMA)

    def test_skipped(self):
        rep = count_report("spp", 2, 3, limit=5)
        assert rep.methods["bruteforce"] == "skipped"
        assert rep.consistent
        jsonschema.validate(rep.to_json(), SCHEMA)

    def test_spp_star_bruteforce_not_applicable(self):
        rep = count_report("spp-star", 1, 2)
        assert rep.methods["bruteforce"] == "not applicable"
        assert rep.values == {"character": 6, "product": 6}

    def test_inconsistent_flag(self):
        rep = cb.CountReport("pp", {"height": 1, "b": 1, "c": 1}, {"bruteforce": 2, "product": 3})
        assert not rep.consistent and rep.to_json()["consistent"] is False


class TestIdentities:
    def test_51_example(self):
        rep = verify_count_identity("5.1", 1, 2)
        assert rep.terms["PP(2,2,2)"].values == {"bruteforce": 20, "character": 20, "product": 20}
        assert rep.terms["SPP(2,2,2)"].values["bruteforce"] == 10
        assert rep.terms["TCPP(2,2,2)"].values["bruteforce"] == 2
        assert rep.lhs == rep.rhs == {"bruteforce": 20, "character": 20, "product": 20}
        assert rep.consistent

    def test_67_boundary(self):
        rep = verify_count_identity("6.7", 0, 3)
        assert rep.lhs["product"] == 2
        assert rep.rhs["product"] == 2
        assert "bruteforce" not in rep.rhs  # SPP* has no enumerator
        assert rep.consistent

    @pytest.mark.parametrize("which", ["5.4", "6.6", "6.7"])
    @pytest.mark.parametrize("m", range(3))
    @pytest.mark.parametrize("n", range(1, 4))
    def test_small(self, which, m, n):
        assert verify_count_identity(which, m, n).consistent

    def test_inconsistency_detected(self, monkeypatch):
        monkeypatch.setattr(cb, "spp_product", lambda a, n: 1)
        rep = verify_count_identity("5.1", 1, 2)
        assert not rep.consistent

    def test_unknown(self):
        with pytest.raises(ValueError):
            verify_count_identity("9.9", 1, 1)
