import math
import random

import pytest

from chaincalc import formula as fm
from chaincalc import tripoly as tp
from chaincalc.extnum import ExtNum

E = fm.prim()


def exact(f):
    return tp.tri_poly(f, "exact")


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


class TestWedgeCombine:
    def test_two_concave_prims(self):
        one = tp.TriPolynomial.from_exact([1])
        out = tp.wedge_combine(one, one)
        assert out.coeffs() == [1, 0]
        assert out.leading() == (1, 0)

    def test_koch1_squared(self):
        p = tp.TriPolynomial.from_exact([1, 1])
        assert tp.wedge_combine(p, p).coeffs() == [1, 2, 1, 0]

    def test_identity_pads(self):
        p = tp.TriPolynomial.from_exact([1, 3, 5, 5])
        one = tp.TriPolynomial.from_exact([1])
        assert tp.wedge_combine(p, one).coeffs() == [1, 3, 5, 5, 0]


class TestClosedForm:
    def test_single_prims(self):
        assert tp.closed_form_cave_vee_cave(1, 1).coeffs() == [1, 1]

    def test_two_three(self):
        assert tp.closed_form_cave_vee_cave(2, 3).coeffs() == [1, 1, 2, 3, 3]

    def test_symmetric_leading_is_central_binomial(self):
        for k in range(1, 9):
            value, degree = tp.closed_form_cave_vee_cave(k, k).leading()
            assert degree == 2 * k - 1
            assert value == math.comb(2 * k - 2, k - 1)

    def test_matches_bridge_recurrence_on_concave_inputs(self):
        for n1 in range(1, 13):
            for n2 in range(1, 13):
                p1 = tp.TriPolynomial.from_exact([1] + [0] * (n1 - 1))
                p2 = tp.TriPolynomial.from_exact([1] + [0] * (n2 - 1))
                assert (tp.vee_combine(p1, p2).coeffs()
                        == tp.closed_form_cave_vee_cave(n1, n2).coeffs())


class TestVeeCombine:
    def test_two_prims(self):
        one = tp.TriPolynomial.from_exact([1])
        assert tp.vee_combine(one, one).coeffs() == [1, 1]

    def test_koch1_pair_gives_convex_four(self):
        p = tp.TriPolynomial.from_exact([1, 1])
        assert tp.vee_combine(p, p).coeffs() == [1, 3, 5, 5]

    def test_full_convex_sum_expansion(self):
        # Independent route: the term-by-term expansion
        # sum t_k1 t_k2 x^(k1+k2) T(cave(n1-k1) v cave(n2-k2)).
        rng = random.Random(4)
        pools = {n: list(fm.enumerate_chains(n)) for n in range(1, 6)}
        for _ in range(25):
            n1 = rng.randint(1, 5)
            n2 = rng.randint(1, 5)
            f1 = rng.choice(pools[n1])
            f2 = rng.choice(pools[n2])
            t1 = exact(f1).T.coeffs()
            t2 = exact(f2).T.coeffs()
            want = [0] * (n1 + n2)
            for k1, c1 in enumerate(t1):
                for k2, c2 in enumerate(t2):
                    if c1 and c2:
                        block = tp.closed_form_cave_vee_cave(
                            n1 - k1, n2 - k2).coeffs()
                        for d, b in enumerate(block):
                            if k1 + k2 + d < n1 + n2:
                                want[k1 + k2 + d] += c1 * c2 * b
            got = tp.vee_combine(exact(f1).T, exact(f2).T).coeffs()
            assert got == want, (f1, f2)

    def test_mode_mismatch_rejected(self):
        a = tp.TriPolynomial.from_exact([1])
        b = tp.TriPolynomial.from_extnums([ExtNum.from_int(1)])
        with pytest.raises(ValueError):
            tp.vee_combine(a, b)


class TestTriPoly:
    def test_convex_four(self):
        pair = exact(fm.vex(4))
        assert pair.T.coeffs() == [1, 3, 5, 5]
        assert pair.Tflip.coeffs() == [1, 0, 0, 0]

    def test_koch2(self):
        pair = exact(fm.koch(2))
        assert pair.T.coeffs() == [1, 1, 2, 2]
        assert pair.Tflip.coeffs() == [1, 2, 1, 0]

    def test_koch3(self):
        pair = exact(fm.koch(3))
        assert pair.T.coeffs() == [1, 5, 12, 22, 41, 73, 106, 106]
        assert pair.Tflip.coeffs() == [1, 2, 5, 8, 8, 8, 4, 0]

    def test_flip_pair_is_swapped(self):
        for n in range(1, 6):
            for f in fm.enumerate_chains(n):
                pair = exact(f)
                flipped = exact(fm.flip(f))
                assert pair.T.coeffs() == flipped.Tflip.coeffs()
                assert pair.Tflip.coeffs() == flipped.T.coeffs()

    def test_t0_always_one(self):
        for n in range(1, 6):
            for f in fm.enumerate_chains(n):
                assert exact(f).T.coeffs()[0] == 1

    def test_commutativity(self, chain_pool):
        rng = random.Random(11)
        for _ in range(40):
            f1 = rng.choice(chain_pool[rng.randint(1, 5)])
            f2 = rng.choice(chain_pool[rng.randint(1, 5)])
            assert (exact(fm.vee(f1, f2)).T.coeffs()
                    == exact(fm.vee(f2, f1)).T.coeffs())
            assert (exact(fm.wedge(f1, f2)).T.coeffs()
                    == exact(fm.wedge(f2, f1)).T.coeffs())

    def test_convex_dominates_concave(self, chain_pool):
        rng = random.Random(12)
        for _ in range(40):
            f1 = rng.choice(chain_pool[rng.randint(1, 5)])
            f2 = rng.choice(chain_pool[rng.randint(1, 5)])
            up = exact(fm.vee(f1, f2)).T.coeffs()
            down = exact(fm.wedge(f1, f2)).T.coeffs()
            assert all(a >= b for a, b in zip(up, down))

    def test_one_sided_sum_identity(self):
        # T(C1 v cave(m)) = sum_k t_k(C1) x^k T(cave(n1-k) v cave(m))
        rng = random.Random(13)
        pools = {n: list(fm.enumerate_chains(n)) for n in range(1, 9)}
        for n1 in range(1, 9):
            for m in range(1, 9):
                picks = [fm.vex(n1), fm.cave(n1), rng.choice(pools[n1])]
                for f1 in picks:
                    t1 = exact(f1).T.coeffs()
                    want = [0] * (n1 + m)
                    for k, c in enumerate(t1):
                        if c:
                            block = tp.closed_form_cave_vee_cave(
                                n1 - k, m).coeffs()
                            for d, b in enumerate(block):
                                if k + d < n1 + m:
                                    want[k + d] += c * b
                    got = exact(fm.vee(f1, fm.cave(m))).T.coeffs()
                    assert got == want, (f1, m)


class TestCounts:
    def test_prim(self):
        c = tp.counts(E)
        assert (c.U, c.L, c.tr) == (1, 1, 1)
        assert c.rootU == c.rootL == c.rootT == 1.0

    def test_convex_chain_is_catalan(self):
        for n in range(1, 11):
            c = tp.counts(fm.vex(n), "exact")
            assert c.U == catalan(n - 1)
            assert c.L == 1
            assert c.tr == catalan(n - 1)

    def test_koch3(self):
        c = tp.counts(fm.koch(3), "exact")
        assert (c.U, c.L, c.tr) == (106, 4, 424)
        assert math.isclose(c.rootT, 424 ** 0.125, rel_tol=1e-12)

    def test_lower_roots_shift_by_one_level(self):
        # L(K_s) = U(K_{s-1})^2 at twice the edge count.
        for s in range(1, 8):
            assert (tp.counts(fm.koch(s), "exact").L
                    == tp.counts(fm.koch(s - 1), "exact").U ** 2)

    def test_float_mode_roots_match_exact(self):
        for s in range(0, 8):
            ce = tp.counts(fm.koch(s), "exact")
            cf = tp.counts(fm.koch(s), "float")
            assert math.isclose(ce.rootT, cf.rootT, rel_tol=1e-12)

    def test_auto_mode_picks_exact_for_small(self):
        assert isinstance(tp.counts(fm.vex(8)).U, int)
        assert tp.resolve_mode(None, 513) == tp.FLOAT
        assert tp.resolve_mode("extfloat", 4) == tp.FLOAT
        with pytest.raises(ValueError):
            tp.resolve_mode("decimal", 4)


class TestFloatMode:
    def test_leading_zero_pattern_identical(self):
        for s in range(0, 7):
            pe = tp.tri_poly(fm.koch(s), "exact")
            pf = tp.tri_poly(fm.koch(s), "float")
            ze = [c == 0 for c in pe.Tflip.coeffs()]
            zf = [c.is_zero() for c in pf.Tflip.coeffs()]
            assert ze == zf

    def test_coefficients_close_small(self):
        from chaincalc.verify import rel_deviation
        pe = tp.tri_poly(fm.koch(6), "exact").T.coeffs()
        pf = tp.tri_poly(fm.koch(6), "float").T.coeffs()
        for want, got in zip(pe, pf):
            if want:
                assert rel_deviation(want, got) <= 1e-14

    def test_to_mode_round_trip(self):
        p = exact(fm.koch(3)).T
        q = p.to_mode("float")
        assert q.mode == tp.FLOAT
        for x, want in zip(q.coeffs(), p.coeffs()):
            assert x == ExtNum.from_int(want)
