"""Exact truncated Laurent series over the integers.

The one data structure underlying the whole package: a series

    sum_{i} c_i q^(offset+i)  +  O(q^trunc),        len(coeffs) == trunc - offset

with arbitrary-precision integer coefficients and a pessimistically tracked
truncation order.  Every operation propagates ``trunc`` so that no coefficient
beyond the provably exact range is ever reported; comparing two series to an
order neither supports raises ``TruncationError`` instead of silently passing.
Offsets may be negative (reciprocal eta quotients live in q^-1 and below).

Also here: Euler factors (q^a; q^b)_inf, the pentagonal-number fast path for
(q^d; q^d)_inf, integral eta quotients  q^(sum d*r/24) prod (q^d; q^d)_inf^r,
and the Atkin operator U_d acting by  sum a(n) q^n  |->  sum a(dn) q^n.

Multiplication switches between schoolbook convolution, a sparse loop, and
Kronecker substitution (coefficients packed into one huge integer and
multiplied with gmpy2 when available), which keeps 10^4..10^5-term products
and Newton-iteration reciprocals fast enough for the big coefficient sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, TextIO

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int


class SeriesError(Exception):
    """Base class for series arithmetic errors."""


class TruncationError(SeriesError, ValueError):
    """A coefficient or comparison was requested beyond the exact range."""


class NonUnitDivisorError(SeriesError, ArithmeticError):
    """Division required a non-exact integer quotient."""


class FractionalExponentError(SeriesError, ValueError):
    """An eta quotient whose prefactor exponent sum is not divisible by 24."""


# ---------------------------------------------------------------------------
# multiplication kernels
# ---------------------------------------------------------------------------

_SCHOOLBOOK_CUTOFF = 1 << 14  # len(a)*len(b) at or below this: plain loops
_SPARSE_NNZ = 8               # a factor with <= this many nonzeros: sparse loop


def _conv_schoolbook(a: list, b: list, rlen: int) -> list:
    out = [0] * rlen
    for i, ai in enumerate(a):
        top = rlen - i
        if top <= 0:
            break
        if ai:
            for j, bj in enumerate(b[:top]):
                if bj:
                    out[i + j] += ai * bj
    return out


def _conv_sparse(terms: list, b: list, rlen: int) -> list:
    out = [0] * rlen
    for i, ai in terms:
        top = rlen - i
        if top <= 0:
            continue
        for j, bj in enumerate(b[:top]):
            if bj:
                out[i + j] += ai * bj
    return out


def _pack_split(xs: list, width: int) -> tuple[int, int]:
    """Pack |positive part| and |negative part| into little-endian integers."""
    pos = bytearray(width * len(xs))
    neg = bytearray(width * len(xs))
    for i, x in enumerate(xs):
        if x > 0:
            pos[i * width:i * width + width] = x.to_bytes(width, "little")
        elif x < 0:
            neg[i * width:i * width + width] = (-x).to_bytes(width, "little")
    return int.from_bytes(pos, "little"), int.from_bytes(neg, "little")


def _digits(n: int, width: int, count: int) -> list:
    nbytes = max(count * width, (n.bit_length() + 7) // 8)
    buf = n.to_bytes(nbytes, "little")
    return [int.from_bytes(buf[i * width:i * width + width], "little")
            for i in range(count)]


def _conv_kronecker(a: list, b: list, rlen: int) -> list:
    # Digit bound: every convolution coefficient of |a| * |b| is at most
    # max|a| * max|b| * min(len); U and V below each stay under 2x that.
    amax = max(map(abs, a))
    bmax = max(map(abs, b))
    bound = amax * bmax * min(len(a), len(b)) * 2 + 1
    width = bound.bit_length() // 8 + 1
    p1, p3 = _pack_split(a, width)
    p2, p4 = _pack_split(b, width)
    p1, p2, p3, p4 = _mpz(p1), _mpz(p2), _mpz(p3), _mpz(p4)
    u = _digits(int(p1 * p2 + p3 * p4), width, rlen)
    v = _digits(int(p1 * p4 + p3 * p2), width, rlen)
    return [x - y for x, y in zip(u, v)]


def _conv(a: list, b: list, rlen: int) -> list:
    """First ``rlen`` coefficients of the convolution of two int lists."""
    a = a[:rlen]
    b = b[:rlen]
    if rlen <= 0:
        return []
    if not any(a) or not any(b):
        return [0] * rlen
    if len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        return _conv_schoolbook(a, b, rlen)
    terms_a = [(i, x) for i, x in enumerate(a) if x]
    if len(terms_a) <= _SPARSE_NNZ:
        return _conv_sparse(terms_a, b, rlen)
    terms_b = [(i, x) for i, x in enumerate(b) if x]
    if len(terms_b) <= _SPARSE_NNZ:
        return _conv_sparse(terms_b, a, rlen)
    return _conv_kronecker(a, b, rlen)


def _recip_unit(c: list, rlen: int) -> list:
    """Newton iteration for 1/c mod q^rlen, c[0] == +-1, all integer."""
    if c[0] == -1:
        return [-x for x in _recip_unit([-x for x in c], rlen)]
    z = [1]
    m = 1
    while m < rlen:
        m2 = min(2 * m, rlen)
        t = _conv(c, z, m2)
        t[0] -= 1
        # t == c*z - 1 vanishes below q^m, so z - z*t is exact to q^m2
        corr = _conv(z, t, m2)
        z = z + [0] * (m2 - len(z))
        z = [zi - ci for zi, ci in zip(z, corr)]
        m = m2
    return z[:rlen]


def _divide_exact(x: list, y: list, rlen: int) -> list:
    """Long division with a non-unit leading coefficient; every step must
    divide exactly over the integers."""
    y0 = y[0]
    rem = list(x[:rlen]) + [0] * max(0, rlen - len(x))
    out = []
    for i in range(rlen):
        quot, r = divmod(rem[i], y0)
        if r:
            raise NonUnitDivisorError(
                f"inexact division at q^{i}: {rem[i]} by {y0}")
        out.append(quot)
        if quot:
            for j in range(1, min(len(y), rlen - i)):
                rem[i + j] -= quot * y[j]
    return out


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

class IntLaurentSeries:
    """Truncated Laurent series with exact integer coefficients.

    Instances are immutable; all arithmetic returns new objects and is safe
    to share across threads.
    """

    __slots__ = ("offset", "coeffs", "trunc")

    def __init__(self, offset: int, coeffs: Iterable[int], trunc: int):
        coeffs = tuple(coeffs)
        if trunc <= offset:
            raise TruncationError(f"trunc {trunc} must exceed offset {offset}")
        if len(coeffs) != trunc - offset:
            raise ValueError(
                f"need {trunc - offset} coefficients, got {len(coeffs)}")
        # Strip leading zeros so the stored offset is the true valuation
        # whenever the series is nonzero; this tightens product truncations.
        k = 0
        n = len(coeffs)
        while k < n - 1 and coeffs[k] == 0:
            k += 1
        if k and coeffs[k] != 0:
            offset += k
            coeffs = coeffs[k:]
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("IntLaurentSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "IntLaurentSeries":
        if trunc <= 0:
            return cls(trunc - 1, (0,), trunc)
        return cls(0, (0,) * trunc, trunc)

    @classmethod
    def one(cls, trunc: int) -> "IntLaurentSeries":
        return cls.monomial(0, 1, trunc)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1,
                 trunc: int | None = None) -> "IntLaurentSeries":
        if trunc is None:
            trunc = exponent + 1
        if trunc <= exponent:
            raise TruncationError(f"trunc {trunc} must exceed {exponent}")
        return cls(exponent, (coeff,) + (0,) * (trunc - exponent - 1), trunc)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]],
                   trunc: int) -> "IntLaurentSeries":
        items = dict(terms.items() if isinstance(terms, Mapping) else terms)
        if not items:
            return cls.zero(trunc)
        lo = min(items)
        hi = max(items)
        if hi >= trunc:
            raise TruncationError(f"term q^{hi} at or beyond trunc {trunc}")
        coeffs = [0] * (trunc - lo)
        for e, c in items.items():
            coeffs[e - lo] = c
        return cls(lo, coeffs, trunc)

    # -- inspection ----------------------------------------------------------

    def coeff(self, exponent: int) -> int:
        """Coefficient of q^exponent; exact zeros below the offset are fine,
        anything at or beyond trunc raises."""
        if exponent >= self.trunc:
            raise TruncationError(
                f"coefficient of q^{exponent} unavailable: trunc is "
                f"{self.trunc}, need at least {exponent + 1}")
        if exponent < self.offset:
            return 0
        return self.coeffs[exponent - self.offset]

    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient, or None if the series
        vanishes identically up to its truncation."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i
        return None

    def terms(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset + i, c

    def is_zero_to(self, order: int) -> bool:
        if self.trunc < order:
            raise TruncationError(
                f"zero test to order {order} needs trunc >= {order}, "
                f"have {self.trunc}")
        return not any(self.coeffs[:max(0, order - self.offset)])

    def eq_to_order(self, other: "IntLaurentSeries", order: int) -> bool:
        """Exact coefficient agreement for all exponents below ``order``.

        Both operands must carry trunc >= order; insufficient truncation is
        an error, never a silent pass.
        """
        if self.trunc < order or other.trunc < order:
            raise TruncationError(
                f"equality to order {order} needs truncs >= {order}, have "
                f"{self.trunc} and {other.trunc}")
        lo = min(self.offset, other.offset)
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, order))

    def __repr__(self) -> str:
        parts = []
        for e, c in self.terms():
            if len(parts) == 6:
                parts.append("...")
                break
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q")
            else:
                parts.append(f"{c}*q^{e}")
        body = " + ".join(parts) if parts else "0"
        return f"IntLaurentSeries({body} + O(q^{self.trunc}))"

    # -- arithmetic ----------------------------------------------------------

    def _aligned(self, other: "IntLaurentSeries", sub: bool) -> "IntLaurentSeries":
        off = min(self.offset, other.offset)
        trunc = min(self.trunc, other.trunc)
        out = [0] * (trunc - off)
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            if e < trunc:
                out[e - off] = c
        for i, c in enumerate(other.coeffs):
            e = other.offset + i
            if e < trunc:
                if sub:
                    out[e - off] -= c
                else:
                    out[e - off] += c
        return IntLaurentSeries(off, out, trunc)

    def _promote(self, other):
        if isinstance(other, IntLaurentSeries):
            return other
        if isinstance(other, int):
            return IntLaurentSeries.from_terms({0: other}, max(self.trunc, 1))
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self._aligned(other, sub=False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self._aligned(other, sub=True)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other._aligned(self, sub=True)

    def __neg__(self):
        return IntLaurentSeries(self.offset, [-c for c in self.coeffs],
                                self.trunc)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntLaurentSeries(self.offset,
                                    [c * other for c in self.coeffs],
                                    self.trunc)
        if not isinstance(other, IntLaurentSeries):
            return NotImplemented
        # trunc = min(x.trunc + y.offset, y.trunc + x.offset), i.e. the
        # shorter coefficient window wins.
        rlen = min(len(self.coeffs), len(other.coeffs))
        off = self.offset + other.offset
        out = _conv(list(self.coeffs), list(other.coeffs), rlen)
        return IntLaurentSeries(off, out, off + rlen)

    __rmul__ = __mul__

    def reciprocal(self) -> "IntLaurentSeries":
        val = self.valuation()
        if val is None:
            raise ZeroDivisionError("reciprocal of a series that is zero "
                                    "to its truncation")
        lead = self.coeff(val)
        if lead not in (1, -1):
            raise NonUnitDivisorError(
                f"reciprocal needs leading coefficient +-1, got {lead}")
        rlen = len(self.coeffs)  # constructor stripped to the valuation
        out = _recip_unit(list(self.coeffs), rlen)
        return IntLaurentSeries(-val, out, -val + rlen)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError
            out = []
            for c in self.coeffs:
                quot, rem = divmod(c, other)
                if rem:
                    raise NonUnitDivisorError(
                        f"coefficient {c} not divisible by {other}")
                out.append(quot)
            return IntLaurentSeries(self.offset, out, self.trunc)
        if not isinstance(other, IntLaurentSeries):
            return NotImplemented
        val = other.valuation()
        if val is None:
            raise ZeroDivisionError("division by a series that is zero "
                                    "to its truncation")
        if other.coeff(val) in (1, -1):
            return self * other.reciprocal()
        rlen = min(len(self.coeffs), len(other.coeffs))
        out = _divide_exact(list(self.coeffs), list(other.coeffs), rlen)
        off = self.offset - other.offset
        return IntLaurentSeries(off, out, off + rlen)

    def __pow__(self, n: int) -> "IntLaurentSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        rlen = len(self.coeffs)
        if n == 0:
            return IntLaurentSeries.one(max(rlen, 1))
        if n == 1:
            return self
        # binary powering on the coefficient window; the window length is
        # preserved and the offset scales with the exponent
        base = list(self.coeffs)
        acc = None
        m = n
        while True:
            if m & 1:
                acc = list(base) if acc is None else _conv(acc, base, rlen)
            m >>= 1
            if not m:
                break
            base = _conv(base, base, rlen)
        off = n * self.offset
        return IntLaurentSeries(off, acc, off + rlen)

    # -- reshaping -----------------------------------------------------------

    def truncate(self, order: int) -> "IntLaurentSeries":
        """Forget coefficients at and beyond ``order`` (cannot extend)."""
        if order > self.trunc:
            raise TruncationError(
                f"cannot extend trunc {self.trunc} to {order}")
        if order <= self.offset:
            return IntLaurentSeries.zero(order) if order > 0 else \
                IntLaurentSeries(order - 1, (0,), order)
        return IntLaurentSeries(self.offset,
                                self.coeffs[:order - self.offset], order)

    def shift(self, k: int) -> "IntLaurentSeries":
        """Multiply by q^k."""
        return IntLaurentSeries(self.offset + k, self.coeffs, self.trunc + k)

    def dilate(self, d: int) -> "IntLaurentSeries":
        """Substitute q -> q^d.  The result is exact below d*(trunc-1)+1
        because exponents not divisible by d are exactly zero."""
        if d < 1:
            raise ValueError("dilation factor must be >= 1")
        if d == 1:
            return self
        new_off = d * self.offset
        new_trunc = d * (self.trunc - 1) + 1
        out = [0] * (new_trunc - new_off)
        for i, c in enumerate(self.coeffs):
            out[d * i] = c
        return IntLaurentSeries(new_off, out, new_trunc)

    def extract(self, step: int, residue: int = 0) -> "IntLaurentSeries":
        """Arithmetic subsequence: coefficient of q^t in the result is the
        coefficient of q^(step*t + residue) here."""
        if step < 1:
            raise ValueError("step must be >= 1")
        r = residue % step
        t0 = -((r - self.offset) // step)
        t_end = -((r - self.trunc) // step)
        if t0 >= t_end:
            return IntLaurentSeries(t_end - 1, (0,), t_end)
        out = [self.coeff(step * t + r) for t in range(t0, t_end)]
        return IntLaurentSeries(t0, out, t_end)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms())


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def series_mul(x: IntLaurentSeries, y: IntLaurentSeries) -> IntLaurentSeries:
    """Exact Cauchy product (same as ``x * y``)."""
    return x * y


def series_div(x: IntLaurentSeries, y: IntLaurentSeries) -> IntLaurentSeries:
    """Exact quotient (same as ``x / y``); the divisor must have a unit
    leading coefficient or divide exactly at every step."""
    return x / y


def euler_factor(a: int, b: int, trunc: int) -> IntLaurentSeries:
    """The truncated Euler product prod_{k >= 0, a+bk < trunc} (1 - q^(a+bk)).

    Built by repeated binomial multiplication, so it is independent of the
    pentagonal-number evaluation used by :func:`pentagonal_product` and the
    two can cross-check each other.
    """
    if trunc <= 0:
        raise TruncationError(f"truncation must be positive, got {trunc}")
    if a < 1 or b < 1:
        raise ValueError("factor parameters must be positive")
    c = [0] * trunc
    c[0] = 1
    j = a
    while j < trunc:
        # multiply by (1 - q^j): c[j+i] -= c[i], reading old values throughout
        c[j:] = [u - v for u, v in zip(c[j:], c)]
        j += b
    return IntLaurentSeries(0, c, trunc)


def pentagonal_product(d: int, trunc: int) -> IntLaurentSeries:
    """(q^d; q^d)_inf via Euler's pentagonal number theorem:
    sum_{m in Z} (-1)^m q^(d*m(3m-1)/2)."""
    if trunc <= 0:
        raise TruncationError(f"truncation must be positive, got {trunc}")
    if d < 1:
        raise ValueError("d must be positive")
    c = [0] * trunc
    c[0] = 1
    m = 1
    while True:
        hit = False
        for e in (d * m * (3 * m - 1) // 2, d * m * (3 * m + 1) // 2):
            if e < trunc:
                c[e] += -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        m += 1
    return IntLaurentSeries(0, c, trunc)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Exponent data for prod_d eta(d*tau)^(r_d), stored as (d, r) pairs.

    Only quotients with sum d*r divisible by 24 are allowed: those have an
    integer-exponent q-expansion, and every quotient used here is of that
    kind.  Fractional prefactors are rejected rather than modelled.
    """

    factors: tuple[tuple[int, int], ...]

    def __init__(self, factors: Iterable[tuple[int, int]]):
        factors = tuple((int(d), int(r)) for d, r in factors)
        for d, _ in factors:
            if d < 1:
                raise ValueError(f"eta level multiplier must be positive: {d}")
        total = sum(d * r for d, r in factors)
        if total % 24:
            raise FractionalExponentError(
                f"sum d*r = {total} is not divisible by 24; the expansion "
                "would need fractional exponents")
        object.__setattr__(self, "factors", factors)

    @property
    def prefactor_exponent(self) -> int:
        return sum(d * r for d, r in self.factors) // 24

    def __pow__(self, n: int) -> "EtaQuotientSpec":
        return EtaQuotientSpec(tuple((d, r * n) for d, r in self.factors))


def eta_quotient(spec: EtaQuotientSpec | Iterable[tuple[int, int]],
                 trunc: int) -> IntLaurentSeries:
    """q-expansion of an eta quotient, exact below ``trunc``.

    The result carries offset sum(d*r)/24, which is negative for reciprocal
    quotients.
    """
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(spec)
    shift = spec.prefactor_exponent
    length = trunc - shift
    if length <= 0:
        raise TruncationError(
            f"truncation {trunc} does not reach past the prefactor q^{shift}")
    num = IntLaurentSeries.one(length)
    den = IntLaurentSeries.one(length)
    for d, r in spec.factors:
        if r == 0:
            continue
        p = pentagonal_product(d, length) ** abs(r)
        if r > 0:
            num = num * p
        else:
            den = den * p
    return (num / den).shift(shift)


def apply_U(d: int, x: IntLaurentSeries) -> IntLaurentSeries:
    """Atkin operator: keep exponents divisible by d and divide them by d."""
    if d < 1:
        raise ValueError("U_d needs d >= 1")
    return x.extract(d, 0)


# ---------------------------------------------------------------------------
# debug dump format: one "exponent<TAB>coefficient" line per exponent
# ---------------------------------------------------------------------------

def dump_series(x: IntLaurentSeries, fp: TextIO) -> None:
    for e in range(x.offset, x.trunc):
        fp.write(f"{e}\t{x.coeff(e)}\n")


def load_series(fp: TextIO) -> IntLaurentSeries:
    pairs = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        e, c = line.split("\t")
        pairs.append((int(e), int(c)))
    if not pairs:
        raise ValueError("empty series dump")
    exps = [e for e, _ in pairs]
    if exps != list(range(exps[0], exps[0] + len(exps))):
        raise ValueError("series dump must cover a contiguous exponent range")
    return IntLaurentSeries(exps[0], [c for _, c in pairs], exps[-1] + 1)
