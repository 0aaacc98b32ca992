import pytest
from hypothesis import given, strategies as st

from chaincalc import formula as fm
from chaincalc.formula import (CapExceededError, FormulaError, ParseError,
                               PRIM, VEE, WEDGE)

E = fm.prim()


class TestParsing:
    def test_prim(self):
        assert fm.parse_formula("E") is E

    def test_associativity_flattened(self):
        f = fm.parse_formula("(E v E) v E")
        assert f.kind == VEE and len(f.children) == 3 and f.n == 3
        assert f is fm.parse_formula("E v (E v E)")
        assert f is fm.parse_formula("E v E v E")

    def test_flip_is_eliminated(self):
        assert fm.parse_formula("flip(E v E)") is fm.wedge(E, E)
        assert fm.parse_formula("flip(E)") is E

    def test_functions(self):
        assert fm.parse_formula("vex(3)") is fm.vex(3)
        assert fm.parse_formula("cave(4)") is fm.cave(4)
        assert fm.parse_formula("koch(2)") is fm.koch(2)
        assert fm.parse_formula("dc(2)") is fm.double_chain(2)
        assert fm.parse_formula("zz(3)") is fm.zigzag(3)
        assert fm.parse_formula("dzz(1)") is fm.double_zigzag(1)
        assert fm.parse_formula("poly(E v E, 3)") is fm.poly(fm.vex(2), 3)
        assert fm.parse_formula("twin(E, 2)") is fm.twin(E, 2)
        assert fm.parse_formula("gdc(1, 0, 2)") is fm.gdc(1, 0, 2)

    def test_whitespace_insensitive(self):
        assert fm.parse_formula(" E v ( E ^ E ) ") is fm.vee(E, fm.wedge(E, E))

    def test_mixed_operators_need_parens(self):
        with pytest.raises(ParseError):
            fm.parse_formula("E v E ^ E")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            fm.parse_formula("E v )")
        assert err.value.position == 4

    def test_arity_errors(self):
        with pytest.raises(ParseError):
            fm.parse_formula("vex(0)")
        with pytest.raises(ParseError):
            fm.parse_formula("gdc(0, 0)")
        with pytest.raises(ParseError):
            fm.parse_formula("poly(E, 0)")

    def test_unknown_name(self):
        with pytest.raises(ParseError):
            fm.parse_formula("spam(3)")

    def test_print_parse_fixed_point(self):
        for n in range(1, 6):
            for f in fm.enumerate_chains(n):
                assert fm.parse_formula(fm.formula_to_text(f)) is f
        for f in (fm.koch(4), fm.double_zigzag(2), fm.gdc(2, 1, 1),
                  fm.twin(fm.koch(2), 3)):
            assert fm.parse_formula(str(f)) is f


class TestAlgebra:
    def test_flip_prim(self):
        assert fm.flip(E) is E

    def test_flip_swaps_sums(self):
        assert fm.flip(fm.vee(E, E)) is fm.wedge(E, E)

    def test_involution_exhaustive(self):
        for n in range(1, 7):
            for f in fm.enumerate_chains(n):
                assert fm.flip(fm.flip(f)) is f

    def test_de_morgan(self, chain_pool):
        for n1 in range(1, 5):
            for n2 in range(1, 5):
                for f1 in chain_pool[n1][:6]:
                    for f2 in chain_pool[n2][:6]:
                        assert fm.flip(fm.vee(f1, f2)) is fm.wedge(
                            fm.flip(f1), fm.flip(f2))
                        assert fm.flip(fm.wedge(f1, f2)) is fm.vee(
                            fm.flip(f1), fm.flip(f2))

    def test_sum_sizes(self):
        assert fm.vee(fm.vex(3), fm.cave(4)).n == 7

    def test_vee_flattens_only_vee(self):
        f = fm.wedge(E, fm.vee(E, E))
        g = fm.vee(f, f)
        assert g.kind == VEE and len(g.children) == 2

    def test_upward_downward(self):
        assert E.is_upward() and E.is_downward()
        assert fm.vex(2).is_upward() and not fm.vex(2).is_downward()
        assert fm.cave(2).is_downward() and not fm.cave(2).is_upward()


class TestBuilders:
    def test_koch_base_cases(self):
        assert fm.koch(0) is E
        assert fm.koch(1) is fm.vee(E, E)
        k2 = fm.koch(2)
        assert k2 is fm.vee(fm.wedge(E, E), fm.wedge(E, E))

    def test_koch_recursion_and_sharing(self):
        for s in range(1, 8):
            ks = fm.koch(s)
            assert ks.n == 2 ** s
            prev = fm.flip(fm.koch(s - 1))
            assert ks is fm.vee(prev, prev)
            assert ks.children[0] is ks.children[1]

    def test_twin_of_prim(self):
        assert fm.twin(E, 1) is fm.vex(3)
        assert fm.twin(E, 2) is fm.double_chain(2)

    def test_poly_of_prim_is_convex(self):
        for n in range(1, 6):
            assert fm.poly(E, n) is fm.vex(n)

    def test_sizes(self):
        assert fm.double_chain(3).n == 7
        assert fm.zigzag(4).n == 8
        assert fm.double_zigzag(2).n == 9
        assert fm.poly(fm.koch(2), 3).n == 12
        assert fm.twin(fm.koch(2), 3).n == 25
        assert fm.gdc(2, 1, 1).n == 2 + 2 + 3

    def test_gdc_expansion(self):
        assert fm.gdc(1, 1) is fm.vee(E, fm.cave(2))
        assert fm.gdc(0, 2) is fm.zigzag(2)

    def test_double_zigzag_is_twin_of_vex2(self):
        # The twin family over the two-edge convex chain is the double zig-zag.
        for k in range(1, 4):
            assert fm.double_zigzag(k) is fm.twin(fm.vex(2), k)

    def test_parameter_validation(self):
        for bad in (lambda: fm.vex(0), lambda: fm.cave(-1),
                    lambda: fm.koch(-1), lambda: fm.double_chain(0),
                    lambda: fm.zigzag(0), lambda: fm.double_zigzag(0),
                    lambda: fm.poly(E, 0), lambda: fm.twin(E, 0),
                    lambda: fm.gdc(), lambda: fm.gdc(0, 0),
                    lambda: fm.gdc(-1, 2)):
            with pytest.raises(FormulaError):
                bad()


class TestVisibility:
    def test_prim(self):
        assert fm.visibility(E).rows() == [[0]]

    def test_concave_over_convex_pair(self):
        tri = fm.visibility(fm.wedge(E, fm.vee(E, E)))
        assert tri.rows() == [[0, -1, -1], [0, 1], [0]]

    def test_convex_chain_all_above(self):
        tri = fm.visibility(fm.vex(3))
        assert tri.rows() == [[0, 1, 1], [0, 1], [0]]

    def test_double_chain_blocks(self):
        # Two concave wings around a middle edge: wings are below, all
        # cross edges above.
        tri = fm.visibility(fm.double_chain(2))
        assert tri.sign(0, 2) == -1 and tri.sign(3, 5) == -1
        assert tri.sign(0, 5) == 1 and tri.sign(1, 3) == 1
        assert tri.sign(2, 4) == 1

    def test_flip_negates(self):
        for n in range(1, 7):
            for f in fm.enumerate_chains(n):
                assert fm.visibility(fm.flip(f)) == fm.visibility(f).negate()

    def test_sum_rules_cross_blocks(self, chain_pool):
        for f1 in chain_pool[3][:4]:
            for f2 in chain_pool[4][:4]:
                up = fm.visibility(fm.vee(f1, f2))
                down = fm.visibility(fm.wedge(f1, f2))
                for i in range(f1.n):
                    for j in range(f1.n + 1, f1.n + f2.n + 1):
                        assert up.sign(i, j) == 1
                        assert down.sign(i, j) == -1
                sub1 = fm.visibility(f1)
                for i in range(f1.n):
                    for j in range(i + 1, f1.n + 1):
                        assert up.sign(i, j) == sub1.sign(i, j)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            fm.visibility(fm.vex(10), cap=8)

    def test_equality_and_hash(self):
        a = fm.visibility(fm.koch(2))
        b = fm.visibility(fm.vee(fm.cave(2), fm.cave(2)))
        assert a == b and hash(a) == hash(b)


class TestReconstruction:
    def test_prim(self):
        assert fm.formula_from_visibility(fm.visibility(E)) is E

    def test_concave_over_convex_pair(self):
        tri = fm.visibility(fm.wedge(E, fm.vee(E, E)))
        assert fm.formula_from_visibility(tri) is fm.wedge(E, fm.vee(E, E))

    def test_round_trip_exhaustive(self):
        for n in range(1, 7):
            for f in fm.enumerate_chains(n):
                assert fm.formula_from_visibility(fm.visibility(f)) is f

    def test_unrealizable_rejected(self):
        blank = fm.VisibilityTriangle.blank(3)
        blank._set(0, 2, -1)
        blank._set(0, 3, 1)
        blank._set(1, 3, -1)
        with pytest.raises(FormulaError):
            fm.formula_from_visibility(blank)

    def test_malformed_entries_rejected(self):
        tri = fm.VisibilityTriangle.blank(2)  # off-chain zero entry
        with pytest.raises(FormulaError):
            fm.formula_from_visibility(tri)
        bad = fm.visibility(fm.vex(2))
        bad._set(0, 1, 1)  # nonzero chain edge
        with pytest.raises(FormulaError):
            fm.formula_from_visibility(bad)


class TestEnumeration:
    def test_counts_match_recurrences(self):
        for n in range(1, 8):
            chains = list(fm.enumerate_chains(n))
            assert len(chains) == fm.schroeder_large(n - 1)
            upward = [f for f in chains if f.kind != WEDGE]
            assert len(upward) == fm.schroeder_little(n - 1)

    def test_schroeder_values(self):
        assert [fm.schroeder_large(k) for k in range(8)] == [
            1, 2, 6, 22, 90, 394, 1806, 8558]
        assert [fm.schroeder_little(k) for k in range(8)] == [
            1, 1, 3, 11, 45, 197, 903, 4279]

    def test_no_duplicates(self):
        for n in range(1, 7):
            chains = list(fm.enumerate_chains(n))
            assert len(set(chains)) == len(chains)

    def test_deterministic_order(self):
        got = [str(f) for f in fm.enumerate_chains(3)]
        assert got == ["E v E v E", "E v (E ^ E)", "(E ^ E) v E",
                       "E ^ E ^ E", "E ^ (E v E)", "(E v E) ^ E"]

    def test_visibility_injective(self):
        seen = {}
        for n in range(1, 7):
            for f in fm.enumerate_chains(n):
                tri = fm.visibility(f)
                assert tri not in seen, f"{f} and {seen[tri]} collide"
                seen[tri] = f

    def test_bounds(self):
        with pytest.raises(FormulaError):
            list(fm.enumerate_chains(0))
        with pytest.raises(CapExceededError):
            list(fm.enumerate_chains(13))


@given(st.integers(1, 5), st.integers(0, 10 ** 9))
def test_any_enumerated_chain_round_trips(n, pick):
    chains = list(fm.enumerate_chains(n))
    f = chains[pick % len(chains)]
    assert fm.parse_formula(str(f)) is f
    assert fm.formula_from_visibility(fm.visibility(f)) is f
