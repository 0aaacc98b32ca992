"""Vectorized extended-float kernels for the polynomial engine.

Coefficient vectors in float mode are stored as parallel numpy arrays
(uint64 mantissa, int64 exponent), one pair per coefficient, with the same
semantics as :class:`chaincalc.extnum.ExtNum`: nonzero mantissas are
normalized 64-bit integers, rounding is to nearest even, zero is (0, 0).
The scalar routines here are bit-for-bit equivalent to ExtNum addition and
multiplication (the test suite asserts this on random operands), which
keeps results identical whether or not the compiled path is used.

Parallel loops only ever write disjoint cells, and every reduction runs in
a fixed sequential order, so outputs do not depend on the thread count.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_DISABLED = os.environ.get("CHAINCALC_NO_NUMBA", "") not in ("", "0")

# Old TBB builds make numba emit a harmless threading-layer warning when the
# parallel backend starts; it would otherwise pollute CLI output.
warnings.filterwarnings("ignore", message=".*TBB.*")

HAVE_NUMBA = False
if not _DISABLED:
    try:
        from numba import njit, prange, set_num_threads, get_num_threads
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass

if not HAVE_NUMBA:  # pragma: no cover - exercised via CHAINCALC_NO_NUMBA
    def set_num_threads(n):
        return None

    def get_num_threads():
        return 1


_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U32 = np.uint64(32)
_U62 = np.uint64(62)
_U63 = np.uint64(63)
_TOP = np.uint64(0x8000000000000000)
_MASK32 = np.uint64(0xFFFFFFFF)


if HAVE_NUMBA:

    @njit(inline="always", cache=True)
    def _sc_add(ma, ea, mb, eb):
        # Round-to-nearest-even sum of two normalized values.
        if ma == _U0:
            return mb, eb
        if mb == _U0:
            return ma, ea
        if (ea < eb) or (ea == eb and ma < mb):
            ma, mb = mb, ma
            ea, eb = eb, ea
        d = ea - eb
        if d > 64:
            # Addend strictly below half an ulp of the larger operand.
            return ma, ea
        if d == 0:
            # Both mantissas have the top bit set: the sum always carries.
            s = ma + mb
            res = _TOP + (s >> _U1)
            e = ea + 1
            if (s & _U1) != _U0 and (res & _U1) != _U0:
                res += _U1
                if res == _U0:
                    res = _TOP
                    e += 1
            return res, e
        du = np.uint64(d)
        if d == 64:
            res = ma
            e = ea
            guard = (mb >> _U63) & _U1
            sticky = (mb & (_TOP - _U1)) != _U0
            if guard != _U0 and (sticky or (res & _U1) != _U0):
                res += _U1
                if res == _U0:
                    res = _TOP
                    e += 1
            return res, e
        hi = mb >> du
        low = mb & ((_U1 << du) - _U1)
        s = ma + hi
        if s < ma:
            # Carried into bit 64: keep the top 64 of the 65-bit sum.
            res = _TOP | (s >> _U1)
            e = ea + 1
            guard = s & _U1
            sticky = low != _U0
            if guard != _U0 and (sticky or (res & _U1) != _U0):
                res += _U1
                if res == _U0:
                    res = _TOP
                    e += 1
            return res, e
        res = s
        e = ea
        gshift = du - _U1
        guard = (low >> gshift) & _U1
        sticky = (low & ((_U1 << gshift) - _U1)) != _U0
        if guard != _U0 and (sticky or (res & _U1) != _U0):
            res += _U1
            if res == _U0:
                res = _TOP
                e += 1
        return res, e

    @njit(inline="always", cache=True)
    def _sc_mul(ma, ea, mb, eb):
        # Full 128-bit product from 32-bit limbs, then round to 64 bits.
        if ma == _U0 or mb == _U0:
            return _U0, 0
        al = ma & _MASK32
        ah = ma >> _U32
        bl = mb & _MASK32
        bh = mb >> _U32
        ll = al * bl
        lh = al * bh
        hl = ah * bl
        hh = ah * bh
        mid = lh + hl
        midc = _U1 if mid < lh else _U0
        lo = ll + (mid << _U32)
        c1 = _U1 if lo < ll else _U0
        hi = hh + (mid >> _U32) + (midc << _U32) + c1
        e = ea + eb
        if (hi & _TOP) != _U0:
            res = hi
            guard = (lo >> _U63) & _U1
            sticky = (lo & (_TOP - _U1)) != _U0
            e += 64
        else:
            res = (hi << _U1) | (lo >> _U63)
            guard = (lo >> _U62) & _U1
            sticky = (lo & ((_U1 << _U62) - _U1)) != _U0
            e += 63
        if guard != _U0 and (sticky or (res & _U1) != _U0):
            res += _U1
            if res == _U0:
                res = _TOP
                e += 1
        return res, e

    @njit(cache=True)
    def scalar_add(ma, ea, mb, eb):  # pragma: no cover - test shim
        return _sc_add(ma, ea, mb, eb)

    @njit(cache=True)
    def scalar_mul(ma, ea, mb, eb):  # pragma: no cover - test shim
        return _sc_mul(ma, ea, mb, eb)

    @njit(cache=True, parallel=True)
    def conv_kernel(am, ae, bm, be):
        """Polynomial product; out[k] accumulates a_i*b_{k-i} in ascending i."""
        la = am.shape[0]
        lb = bm.shape[0]
        lc = la + lb - 1
        cm = np.zeros(lc, dtype=np.uint64)
        ce = np.zeros(lc, dtype=np.int64)
        for k in prange(lc):
            accm = _U0
            acce = 0
            i0 = k - lb + 1
            if i0 < 0:
                i0 = 0
            i1 = la - 1
            if k < i1:
                i1 = k
            for i in range(i0, i1 + 1):
                pm, pe = _sc_mul(am[i], ae[i], bm[k - i], be[k - i])
                accm, acce = _sc_add(accm, acce, pm, pe)
            cm[k] = accm
            ce[k] = acce
        return cm, ce

    @njit(cache=True, parallel=True)
    def bridge_kernel(am, ae, bm, be):
        """Bridge table of the convex-sum recurrence, reduced per anti-diagonal.

        DP[l][r] = a[la-1-l]*b[lb-1-r] + DP[l+1][r] + DP[l][r+1]; all cells
        of the anti-diagonal l+r = d contribute to output degree
        la+lb-1-d.  Only two diagonals are alive at a time.
        """
        la = am.shape[0]
        lb = bm.shape[0]
        out_m = np.zeros(la + lb, dtype=np.uint64)
        out_e = np.zeros(la + lb, dtype=np.int64)
        width = la if la < lb else lb
        cur_m = np.zeros(width, dtype=np.uint64)
        cur_e = np.zeros(width, dtype=np.int64)
        prev_m = np.zeros(width, dtype=np.uint64)
        prev_e = np.zeros(width, dtype=np.int64)
        plmin = 0
        plen = 0
        for d in range(la + lb - 2, -1, -1):
            lmin = d - lb + 1
            if lmin < 0:
                lmin = 0
            lmax = la - 1
            if d < lmax:
                lmax = d
            cnt = lmax - lmin + 1
            for t in prange(cnt):
                l = lmin + t
                r = d - l
                vm, ve = _sc_mul(am[la - 1 - l], ae[la - 1 - l],
                                 bm[lb - 1 - r], be[lb - 1 - r])
                i1 = l + 1 - plmin
                if 0 <= i1 < plen:
                    vm, ve = _sc_add(vm, ve, prev_m[i1], prev_e[i1])
                i2 = l - plmin
                if 0 <= i2 < plen:
                    vm, ve = _sc_add(vm, ve, prev_m[i2], prev_e[i2])
                cur_m[t] = vm
                cur_e[t] = ve
            accm = _U0
            acce = 0
            for t in range(cnt):
                accm, acce = _sc_add(accm, acce, cur_m[t], cur_e[t])
            out_m[la + lb - 1 - d] = accm
            out_e[la + lb - 1 - d] = acce
            prev_m, cur_m = cur_m, prev_m
            prev_e, cur_e = cur_e, prev_e
            plmin = lmin
            plen = cnt
        return out_m, out_e

    @njit(cache=True, parallel=True)
    def vec_add_kernel(am, ae, bm, be):
        lc = am.shape[0]
        cm = np.zeros(lc, dtype=np.uint64)
        ce = np.zeros(lc, dtype=np.int64)
        for k in prange(lc):
            cm[k], ce[k] = _sc_add(am[k], ae[k], bm[k], be[k])
        return cm, ce
