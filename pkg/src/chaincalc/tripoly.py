"""Upper-triangulation polynomials of chains.

For a chain with n edges, the k-th coefficient counts its partial upper
triangulations with k triangles; the coefficient of the highest nonzero
degree is the number U of complete upper triangulations, and the same
polynomial of the flipped chain plays the role of the lower count L, with
tr = U * L complete triangulations.

Concave sums multiply polynomials.  Convex sums are combined by a
quadratic-time dynamic program over "bridge" edges, so a whole formula
evaluates with O(n^2) additions and multiplications.  Both polynomials of
a node (its own and its flip's) are produced in one bottom-up pass, and
hash-consed subformulas are evaluated once.

Two coefficient domains are supported: exact arbitrary-precision integers,
and the 64-bit-mantissa extended floats from :mod:`chaincalc.extnum`
(vectorized through the numba kernels when available).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import _kernels
from .extnum import EXP_MAX, ExtNum, ExponentRangeError, ZERO
from .formula import Formula, PRIM, VEE

EXACT = "exact"
FLOAT = "float"

#: Without an explicit mode, chains up to this size are evaluated exactly.
EXACT_DEFAULT_MAX_N = 512

Number = Union[int, ExtNum]


def resolve_mode(mode: str | None, n: int = 0) -> str:
    if mode is None or mode == "auto":
        return EXACT if n <= EXACT_DEFAULT_MAX_N else FLOAT
    if mode in (EXACT, FLOAT):
        return mode
    if mode == "extfloat":
        return FLOAT
    raise ValueError(f"unknown mode {mode!r}")


class TriPolynomial:
    """Dense coefficient vector t_0 .. t_{n-1} of a chain with n edges."""

    __slots__ = ("n", "mode", "_ints", "_man", "_exp")

    def __init__(self, n: int, mode: str, ints=None, man=None, exp=None):
        self.n = n
        self.mode = mode
        self._ints = ints
        self._man = man
        self._exp = exp

    @classmethod
    def from_exact(cls, coeffs: list[int]) -> "TriPolynomial":
        return cls(len(coeffs), EXACT, ints=list(coeffs))

    @classmethod
    def from_extnums(cls, coeffs: list[ExtNum]) -> "TriPolynomial":
        man = np.array([c.mantissa for c in coeffs], dtype=np.uint64)
        exp = np.array([c.exponent for c in coeffs], dtype=np.int64)
        return cls(len(coeffs), FLOAT, man=man, exp=exp)

    def to_mode(self, mode: str) -> "TriPolynomial":
        mode = resolve_mode(mode, self.n)
        if mode == self.mode:
            return self
        if mode == FLOAT:
            return TriPolynomial.from_extnums(
                [ExtNum.from_int(c) for c in self._ints])
        raise ValueError("cannot convert float coefficients back to exact")

    def coeff(self, k: int) -> Number:
        if not 0 <= k < self.n:
            raise IndexError(k)
        if self.mode == EXACT:
            return self._ints[k]
        return ExtNum(int(self._man[k]), int(self._exp[k]))

    def coeffs(self) -> list[Number]:
        if self.mode == EXACT:
            return list(self._ints)
        return [ExtNum(int(m), int(e)) for m, e in zip(self._man, self._exp)]

    def leading(self) -> tuple[Number, int]:
        """Highest nonzero coefficient and its degree (t_0 = 1 always exists)."""
        if self.mode == EXACT:
            for k in range(self.n - 1, -1, -1):
                if self._ints[k]:
                    return self._ints[k], k
        else:
            for k in range(self.n - 1, -1, -1):
                if self._man[k]:
                    return ExtNum(int(self._man[k]), int(self._exp[k])), k
        raise ValueError("all-zero triangulation polynomial")

    def __eq__(self, other):
        if not isinstance(other, TriPolynomial):
            return NotImplemented
        if self.n != other.n or self.mode != other.mode:
            return False
        if self.mode == EXACT:
            return self._ints == other._ints
        return (np.array_equal(self._man, other._man)
                and np.array_equal(self._exp, other._exp))

    def __repr__(self):
        if self.mode == EXACT and self.n <= 12:
            return f"TriPolynomial({self._ints})"
        return f"<TriPolynomial n={self.n} mode={self.mode}>"


class TriPair(NamedTuple):
    """The polynomial of a chain and of its flipped version."""

    T: TriPolynomial
    Tflip: TriPolynomial


@dataclass(frozen=True)
class ChainCounts:
    """Triangulation counts of one chain and their per-edge roots."""

    n: int
    U: Number
    L: Number
    tr: Number
    rootU: float
    rootL: float
    rootT: float


# ---------------------------------------------------------------------------
# Generic coefficient-list routines (exact ints, or ExtNum fallback)
# ---------------------------------------------------------------------------

def _conv_list(a: list, b: list, zero):
    la, lb = len(a), len(b)
    out = []
    for k in range(la + lb - 1):
        acc = zero
        for i in range(max(0, k - lb + 1), min(la - 1, k) + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return out


def _bridge_list(a: list, b: list, zero):
    """Anti-diagonal sweep of the bridge recurrence; returns per-degree sums."""
    la, lb = len(a), len(b)
    out = [zero] * (la + lb)
    prev: list = []
    plmin = 0
    for d in range(la + lb - 2, -1, -1):
        lmin = max(0, d - lb + 1)
        lmax = min(la - 1, d)
        cur = []
        for l in range(lmin, lmax + 1):
            r = d - l
            val = a[la - 1 - l] * b[lb - 1 - r]
            i1 = l + 1 - plmin
            if 0 <= i1 < len(prev):
                val = val + prev[i1]
            i2 = l - plmin
            if 0 <= i2 < len(prev):
                val = val + prev[i2]
            cur.append(val)
        acc = zero
        for v in cur:
            acc = acc + v
        out[la + lb - 1 - d] = acc
        prev = cur
        plmin = lmin
    return out


def _check_float_range(man: np.ndarray, exp: np.ndarray):
    nz = man != 0
    if nz.any() and int(np.abs(exp[nz]).max()) > EXP_MAX:
        raise ExponentRangeError("coefficient exponent left the supported range")


def _float_conv(p1: TriPolynomial, p2: TriPolynomial):
    if _kernels.HAVE_NUMBA:
        man, exp = _kernels.conv_kernel(p1._man, p1._exp, p2._man, p2._exp)
        _check_float_range(man, exp)
        return man, exp
    a, b = p1.coeffs(), p2.coeffs()
    out = _conv_list(a, b, ZERO)
    return (np.array([c.mantissa for c in out], dtype=np.uint64),
            np.array([c.exponent for c in out], dtype=np.int64))


def wedge_combine(p1: TriPolynomial, p2: TriPolynomial) -> TriPolynomial:
    """Polynomial of a concave sum: the product, stored at length n1+n2."""
    _match_modes(p1, p2)
    n = p1.n + p2.n
    if p1.mode == EXACT:
        coeffs = _conv_list(p1._ints, p2._ints, 0)
        coeffs.append(0)
        return TriPolynomial(n, EXACT, ints=coeffs)
    man, exp = _float_conv(p1, p2)
    man = np.append(man, np.uint64(0))
    exp = np.append(exp, np.int64(0))
    return TriPolynomial(n, FLOAT, man=man, exp=exp)


def vee_combine(p1: TriPolynomial, p2: TriPolynomial) -> TriPolynomial:
    """Polynomial of a convex sum via the O(n1*n2) bridge recurrence."""
    _match_modes(p1, p2)
    n = p1.n + p2.n
    if p1.mode == EXACT:
        out = _conv_list(p1._ints, p2._ints, 0)
        out.append(0)
        bridge = _bridge_list(p1._ints, p2._ints, 0)
        return TriPolynomial(
            n, EXACT, ints=[x + y for x, y in zip(out, bridge)])
    if _kernels.HAVE_NUMBA:
        cman, cexp = _float_conv(p1, p2)
        cman = np.append(cman, np.uint64(0))
        cexp = np.append(cexp, np.int64(0))
        bman, bexp = _kernels.bridge_kernel(p1._man, p1._exp, p2._man, p2._exp)
        man, exp = _kernels.vec_add_kernel(cman, cexp, bman, bexp)
        _check_float_range(man, exp)
        return TriPolynomial(n, FLOAT, man=man, exp=exp)
    a, b = p1.coeffs(), p2.coeffs()
    out = _conv_list(a, b, ZERO)
    out.append(ZERO)
    bridge = _bridge_list(a, b, ZERO)
    return TriPolynomial.from_extnums([x + y for x, y in zip(out, bridge)])


def _match_modes(p1: TriPolynomial, p2: TriPolynomial):
    if p1.mode != p2.mode:
        raise ValueError("operands must use the same coefficient mode")


def closed_form_cave_vee_cave(n1: int, n2: int) -> TriPolynomial:
    """Exact polynomial of (concave n1) v (concave n2).

    At most one upper edge is ever visible, which collapses the count to a
    binomial double sum.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("chain sizes must be >= 1")
    coeffs = [0] * (n1 + n2)
    coeffs[0] = 1
    for left in range(1, n1 + 1):
        for right in range(1, n2 + 1):
            coeffs[left + right - 1] += math.comb(left + right - 2, left - 1)
    return TriPolynomial(n1 + n2, EXACT, ints=coeffs)


# ---------------------------------------------------------------------------
# Formula evaluation
# ---------------------------------------------------------------------------

_MEMO: dict[str, dict[Formula, TriPair]] = {EXACT: {}, FLOAT: {}}


def clear_cache():
    for memo in _MEMO.values():
        memo.clear()


def set_threads(n: int):
    """Cap the worker threads of the compiled kernels (outputs never change)."""
    if _kernels.HAVE_NUMBA and n >= 1:
        try:
            _kernels.set_num_threads(n)
        except ValueError:
            _kernels.set_num_threads(1)


def _leaf_pair(mode: str) -> TriPair:
    if mode == EXACT:
        one = TriPolynomial(1, EXACT, ints=[1])
    else:
        one = TriPolynomial.from_extnums([ExtNum.from_int(1)])
    return TriPair(one, one)


def tri_poly(f: Formula, mode: str | None = None) -> TriPair:
    """Both polynomials of a canonical formula, computed jointly bottom-up.

    A convex node combines the children's own polynomials with the bridge
    recurrence and multiplies their flipped polynomials; a concave node does
    the opposite.  Results are memoized per node and mode, so structurally
    shared subformulas (Koch levels in particular) are evaluated once.
    """
    mode = resolve_mode(mode, f.n)
    memo = _MEMO[mode]
    stack = [f]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if node.kind == PRIM:
            memo[node] = _leaf_pair(mode)
            stack.pop()
            continue
        todo = [c for c in node.children if c not in memo]
        if todo:
            stack.extend(dict.fromkeys(todo))
            continue
        pairs = [memo[c] for c in node.children]
        if node.kind == VEE:
            own = _fold(vee_combine, [p.T for p in pairs])
            flipped = _fold(wedge_combine, [p.Tflip for p in pairs])
        else:
            own = _fold(wedge_combine, [p.T for p in pairs])
            flipped = _fold(vee_combine, [p.Tflip for p in pairs])
        memo[node] = TriPair(own, flipped)
        stack.pop()
    return memo[f]


def _fold(combine, polys: list[TriPolynomial]) -> TriPolynomial:
    acc = polys[0]
    for p in polys[1:]:
        acc = combine(acc, p)
    return acc


def counts(f: Formula, mode: str | None = None) -> ChainCounts:
    """U, L, tr = U*L and their n-th roots for one chain."""
    pair = tri_poly(f, mode)
    upper, _ = pair.T.leading()
    lower, _ = pair.Tflip.leading()
    if isinstance(upper, int):
        tr = upper * lower
        root_u = ExtNum.from_int(upper).nth_root(f.n)
        root_l = ExtNum.from_int(lower).nth_root(f.n)
        root_t = ExtNum.from_int(tr).nth_root(f.n)
    else:
        tr = upper * lower
        root_u = upper.nth_root(f.n)
        root_l = lower.nth_root(f.n)
        root_t = tr.nth_root(f.n)
    return ChainCounts(f.n, upper, lower, tr, root_u, root_l, root_t)


def tr_count(f: Formula, mode: str | None = None) -> Number:
    return counts(f, mode).tr


def upper_count(f: Formula, mode: str | None = None) -> Number:
    return counts(f, mode).U
