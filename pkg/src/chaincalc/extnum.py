"""Nonnegative floating-point numbers with a 64-bit mantissa and a huge exponent.

Counting triangulations produces integers that grow like ``9^n`` for chain
sizes ``n`` beyond a million, far outside of IEEE double range.  ``ExtNum``
keeps 64 significant bits and a wide signed exponent, supports only the two
operations the counting engine needs (addition and multiplication, both
round-to-nearest-even), and refuses to represent negative values.  Because
both operations are correctly rounded, relative errors accumulate at most
linearly in the number of operations performed.

Values are immutable and safe to share between threads.
"""

from __future__ import annotations

import decimal
import math

MANTISSA_BITS = 64
_TOP_BIT = 1 << (MANTISSA_BITS - 1)
_FULL = 1 << MANTISSA_BITS

#: Exponents outside this range raise ExponentRangeError instead of wrapping.
EXP_MIN = -(1 << 62)
EXP_MAX = 1 << 62

# Exact big-integer decimal conversion is used while 2^|exponent| stays cheap;
# beyond this the decimal module takes over.
_EXACT_DECIMAL_EXP_LIMIT = 1 << 22


class ExtNumError(ArithmeticError):
    """Base class for extended-number failures."""


class ExponentRangeError(ExtNumError):
    """The result's exponent left the supported range."""


class ExtNum:
    """A nonnegative value ``mantissa * 2**exponent``.

    A nonzero mantissa always has exactly 64 bits (top bit set); zero is
    canonically ``ExtNum(0, 0)``.  Supports ``+``, ``*``, total-order
    comparisons, ``nth_root`` and decimal formatting.
    """

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int, exponent: int):
        if mantissa == 0:
            exponent = 0
        elif not _TOP_BIT <= mantissa < _FULL:
            raise ValueError("mantissa must be zero or a normalized 64-bit integer")
        if not EXP_MIN <= exponent <= EXP_MAX:
            raise ExponentRangeError(f"exponent {exponent} out of range")
        self.mantissa = mantissa
        self.exponent = exponent

    # -- construction ------------------------------------------------------

    @classmethod
    def from_int(cls, value: int) -> "ExtNum":
        """Convert a nonnegative integer, rounding to nearest even if it
        needs more than 64 bits."""
        if value < 0:
            raise ValueError("ExtNum represents nonnegative values only")
        return _normalize(value, 0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ExtNum") -> "ExtNum":
        if not isinstance(other, ExtNum):
            return NotImplemented
        a, b = self, other
        if a.mantissa == 0:
            return b
        if b.mantissa == 0:
            return a
        # Canonical operand order keeps the operation commutative bit for bit.
        if (a.exponent, a.mantissa) < (b.exponent, b.mantissa):
            a, b = b, a
        d = a.exponent - b.exponent
        if d > MANTISSA_BITS:
            # The addend is strictly below half an ulp of the larger operand.
            return a
        return _normalize((a.mantissa << d) + b.mantissa, b.exponent)

    def __mul__(self, other: "ExtNum") -> "ExtNum":
        if not isinstance(other, ExtNum):
            return NotImplemented
        if self.mantissa == 0 or other.mantissa == 0:
            return ZERO
        return _normalize(self.mantissa * other.mantissa,
                          self.exponent + other.exponent)

    def mul_pow2(self, k: int) -> "ExtNum":
        """Exact scaling by ``2**k``."""
        if self.mantissa == 0:
            return ZERO
        return ExtNum(self.mantissa, self.exponent + k)

    # -- comparisons (total order on the represented values) ---------------

    def _key(self):
        # Nonzero mantissas all have 64 bits, so (exponent, mantissa) orders
        # values; zero sorts below everything.
        if self.mantissa == 0:
            return (EXP_MIN - 1, 0)
        return (self.exponent, self.mantissa)

    def __eq__(self, other):
        if not isinstance(other, ExtNum):
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.mantissa, self.exponent))

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def is_zero(self) -> bool:
        return self.mantissa == 0

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        return math.ldexp(self.mantissa, self.exponent)

    def log2(self) -> float:
        """Base-2 logarithm as a double (value must be positive)."""
        if self.mantissa == 0:
            raise ValueError("log2 of zero")
        return math.log2(self.mantissa / _TOP_BIT) + (self.exponent + MANTISSA_BITS - 1)

    def nth_root(self, n: int) -> float:
        """The real n-th root as a double.

        The mantissa is reduced to ``[1, 2)`` and the binary exponent is
        split by ``n`` before exponentiation, so no precision is lost to a
        large exponent; the result is within a few ulps.
        """
        if n <= 0:
            raise ValueError("root order must be a positive integer")
        if self.mantissa == 0:
            return 0.0
        frac = self.mantissa / _TOP_BIT          # in [1, 2)
        e = self.exponent + MANTISSA_BITS - 1    # value = frac * 2**e
        q, r = divmod(e, n)
        root = math.pow(frac, 1.0 / n) * math.pow(2.0, r / n)
        return math.ldexp(root, q)

    def to_decimal(self, digits: int) -> str:
        """Scientific-notation string ``d.<digits fractional digits>e<exp>``."""
        if digits <= 0:
            raise ValueError("digits must be positive")
        if self.mantissa == 0:
            return "0"
        sig = digits + 1
        if abs(self.exponent) <= _EXACT_DECIMAL_EXP_LIMIT:
            dec10, scaled = self._decimal_digits_exact(sig)
        else:
            dec10, scaled = self._decimal_digits_big(sig)
        s = str(scaled)
        return f"{s[0]}.{s[1:]}e{dec10}"

    def _decimal_digits_exact(self, digits: int):
        # Exact integer arithmetic: find dec10 with
        # 10^(digits-1) <= round(value / 10^(dec10-digits+1)) < 10^digits.
        m, e = self.mantissa, self.exponent
        dec10 = math.floor(math.log10(m) + e * math.log10(2.0))

        def scaled(t: int) -> int:
            k = digits - 1 - t
            num, den = m, 1
            if e >= 0:
                num <<= e
            else:
                den <<= -e
            if k >= 0:
                num *= 10 ** k
            else:
                den *= 10 ** (-k)
            q, r = divmod(num, den)
            if 2 * r > den or (2 * r == den and q & 1):
                q += 1
            return q

        val = scaled(dec10)
        while val >= 10 ** digits:
            dec10 += 1
            val = scaled(dec10)
        while val < 10 ** (digits - 1):
            dec10 -= 1
            val = scaled(dec10)
        return dec10, val

    def _decimal_digits_big(self, digits: int):
        ctx = decimal.Context(prec=digits + 20, rounding=decimal.ROUND_HALF_EVEN,
                              Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
        d = ctx.multiply(decimal.Decimal(self.mantissa),
                         ctx.power(decimal.Decimal(2), decimal.Decimal(self.exponent)))
        out = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN,
                              Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
        d = out.plus(d)
        sign, digs, exp = d.as_tuple()
        val = int("".join(map(str, digs)))
        val *= 10 ** (digits - len(digs))
        dec10 = exp + len(digs) - 1
        return dec10, val

    def __repr__(self):
        return f"ExtNum({self.mantissa}, {self.exponent})"

    def __str__(self):
        return self.to_decimal(10)


ZERO = ExtNum(0, 0)
ONE = ExtNum(_TOP_BIT, -(MANTISSA_BITS - 1))


def _normalize(m: int, e: int) -> ExtNum:
    """Round an exact nonnegative integer ``m * 2**e`` to nearest even."""
    if m == 0:
        return ZERO
    shift = m.bit_length() - MANTISSA_BITS
    if shift <= 0:
        return ExtNum(m << -shift, e + shift)
    keep = m >> shift
    rem = m & ((1 << shift) - 1)
    half = 1 << (shift - 1)
    if rem > half or (rem == half and keep & 1):
        keep += 1
        if keep == _FULL:
            keep = _TOP_BIT
            shift += 1
    return ExtNum(keep, e + shift)


# Functional aliases mirroring the operation-style API.

def ext_from_uint(value: int) -> ExtNum:
    return ExtNum.from_int(value)


def ext_add(a: ExtNum, b: ExtNum) -> ExtNum:
    return a + b


def ext_mul(a: ExtNum, b: ExtNum) -> ExtNum:
    return a * b


def ext_nth_root(a: ExtNum, n: int) -> float:
    return a.nth_root(n)


def ext_to_decimal(a: ExtNum, digits: int) -> str:
    return a.to_decimal(digits)
