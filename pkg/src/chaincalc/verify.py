"""Cross-module invariant suites behind the ``verify`` command.

Each suite pits two independent computation paths against each other
(engine vs cubic oracle, formula vs geometry, exact vs float, generation
vs recurrence) and reports every mismatch with the offending formula.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import asymptotics as asy
from . import formula as fm
from . import oracle as orc
from . import tripoly as tp


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def suite_schroeder(cap: int) -> SuiteResult:
    res = SuiteResult("enumeration-counts")
    for n in range(1, cap + 1):
        chains = list(fm.enumerate_chains(n))
        res.cases += 1
        total = len(chains)
        upward = sum(1 for f in chains if f.kind != fm.WEDGE)
        if total != fm.schroeder_large(n - 1):
            res.failures.append(
                f"n={n}: {total} chains, recurrence says {fm.schroeder_large(n - 1)}")
        if upward != fm.schroeder_little(n - 1):
            res.failures.append(
                f"n={n}: {upward} upward chains, recurrence says "
                f"{fm.schroeder_little(n - 1)}")
        if len(set(chains)) != total:
            res.failures.append(f"n={n}: enumeration repeated a chain")
    return res


def suite_algebra(cap: int) -> SuiteResult:
    res = SuiteResult("algebraic-laws")
    pools = {n: list(fm.enumerate_chains(n)) for n in range(1, cap)}
    for n in range(1, cap + 1):
        for f in fm.enumerate_chains(n):
            res.cases += 1
            if fm.flip(fm.flip(f)) is not f:
                res.failures.append(f"involution broke on {f}")
    for n1 in range(1, cap):
        for n2 in range(1, cap - n1 + 1):
            for f1 in pools[n1]:
                for f2 in pools[n2]:
                    res.cases += 1
                    if fm.flip(fm.vee(f1, f2)) is not fm.wedge(fm.flip(f1), fm.flip(f2)):
                        res.failures.append(f"De Morgan broke on {f1} | {f2}")
                    tv = tp.tri_poly(fm.vee(f1, f2)).T
                    tw = tp.tri_poly(fm.wedge(f1, f2)).T
                    if tv != tp.tri_poly(fm.vee(f2, f1)).T:
                        res.failures.append(f"vee commutativity broke on {f1} | {f2}")
                    if tw != tp.tri_poly(fm.wedge(f2, f1)).T:
                        res.failures.append(f"wedge commutativity broke on {f1} | {f2}")
                    if any(a < b for a, b in zip(tv.coeffs(), tw.coeffs())):
                        res.failures.append(f"dominance broke on {f1} | {f2}")
    return res


def suite_visibility(cap: int) -> SuiteResult:
    res = SuiteResult("visibility-rules")
    for n in range(1, cap + 1):
        for f in fm.enumerate_chains(n):
            res.cases += 1
            tri = fm.visibility(f)
            if fm.visibility(fm.flip(f)) != tri.negate():
                res.failures.append(f"flip negation broke on {f}")
            if fm.formula_from_visibility(tri) is not f:
                res.failures.append(f"reconstruction broke on {f}")
    return res


def suite_oracle(cap: int) -> SuiteResult:
    res = SuiteResult("oracle-equality")
    for n in range(1, cap + 1):
        for f in fm.enumerate_chains(n):
            res.cases += 1
            want = tp.tri_poly(f, "exact").T.coeffs()
            got = orc.oracle_tripoly(fm.visibility(f)).coeffs()
            if want != got:
                res.failures.append(f"{f}: engine {want} oracle {got}")
    return res


def suite_geometry(cap: int) -> SuiteResult:
    res = SuiteResult("geometric-equality")
    for n in range(1, cap + 1):
        for f in fm.enumerate_chains(n):
            res.cases += 1
            pts = orc.realize(f)
            tr = tp.counts(f, "exact").tr
            got = orc.count_triangulations_points(pts)
            if got != tr:
                res.failures.append(f"{f}: formula tr {tr}, point count {got}")
    return res


def suite_flip_counts(cap: int) -> SuiteResult:
    res = SuiteResult("flip-counts")
    for n in range(1, cap + 1):
        for f in fm.enumerate_chains(n):
            res.cases += 1
            c = tp.counts(f, "exact")
            cf = tp.counts(fm.flip(f), "exact")
            if c.tr != cf.tr or c.U != cf.L or c.L != cf.U:
                res.failures.append(f"flip count symmetry broke on {f}")
    return res


def sample_chain_pairs(pairs: int, max_n: int, seed: int):
    """Random formula pairs whose combined size stays within max_n."""
    rng = random.Random(seed)
    pools = {n: list(fm.enumerate_chains(n)) for n in range(1, max_n)}
    out = []
    for _ in range(pairs):
        n1 = rng.randint(1, max_n - 1)
        n2 = rng.randint(1, max_n - n1)
        out.append((rng.choice(pools[n1]), rng.choice(pools[n2])))
    return out


def suite_phi(pairs: int, max_n: int, seed: int = 20240) -> SuiteResult:
    res = SuiteResult("phi-identity")
    for f1, f2 in sample_chain_pairs(pairs, max_n, seed):
        res.cases += 1
        order = f1.n + f2.n
        lhs = asy.phi_series(fm.vee(f1, f2), order)
        rhs = (asy.phi_prefactor(order)
               * asy.phi_series(f1, order)
               * asy.phi_series(f2, order)).truncate(order)
        if lhs != rhs:
            res.failures.append(f"phi identity broke on {f1} | {f2}")
    return res


def suite_modes(max_s: int, tol: float = 1e-12) -> SuiteResult:
    res = SuiteResult("numeric-modes")
    for s in range(max_s + 1):
        f = fm.koch(s)
        res.cases += 1
        exact = tp.tri_poly(f, "exact").T.coeffs()
        approx = tp.tri_poly(f, "float").T.coeffs()
        for k, (want, got) in enumerate(zip(exact, approx)):
            if want == 0:
                if not got.is_zero():
                    res.failures.append(f"koch({s}) t_{k}: zero became {got}")
                continue
            rel = rel_deviation(want, got)
            if rel > tol:
                res.failures.append(
                    f"koch({s}) t_{k}: relative deviation {rel:.3e}")
    return res


def rel_deviation(exact_value: int, approx) -> float:
    """Exact relative deviation |approx - v| / v of an ExtNum from an int."""
    from fractions import Fraction

    e = approx.exponent
    if e >= 0:
        val = Fraction(approx.mantissa << e)
    else:
        val = Fraction(approx.mantissa, 1 << -e)
    return float(abs(val - exact_value) / Fraction(exact_value))


def run_level(level: str) -> list[SuiteResult]:
    if level == "quick":
        return [
            suite_schroeder(6),
            suite_algebra(5),
            suite_visibility(6),
            suite_oracle(6),
            suite_flip_counts(6),
            suite_geometry(5),
            suite_phi(50, 8),
            suite_modes(6),
        ]
    if level == "full":
        return [
            suite_schroeder(8),
            suite_algebra(6),
            suite_visibility(7),
            suite_oracle(8),
            suite_flip_counts(8),
            suite_geometry(6),
            suite_phi(200, 8),
            suite_modes(8),
        ]
    raise ValueError(f"unknown verify level {level!r}")
