"""Truncated power series over the integers or a residue ring Z/u.

A series here is an immutable coefficient tuple of fixed length with eager
truncation: every operation returns a series whose order is the smallest
order among its operands.  Multiplication walks the nonzero terms of the
sparser factor, so high powers of the very sparse Euler products
prod(1 - q^(delta*n)) stay affordable.  Eta quotients additionally get a
vectorized kernel for residue rings, which is the path that carries the
large expansions needed by the congruence verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

import numpy as np

from .arith import divisors


class RingMismatchError(ValueError):
    """Two series from different coefficient rings met in one operation."""


class NonUnitConstantError(ValueError):
    """Inversion needs a unit constant term and did not get one."""

    def __init__(self, constant: int, modulus: int | None):
        self.constant = constant
        self.modulus = modulus
        self.common = abs(constant) if modulus is None else gcd(constant, modulus)
        if modulus is None:
            msg = f"constant term {constant} is not invertible over the integers"
        else:
            msg = (
                f"constant term {constant} is not a unit modulo {modulus}: "
                f"gcd({constant}, {modulus}) = {self.common}"
            )
        super().__init__(msg)


@dataclass(frozen=True)
class CoefficientRing:
    """Exact integers when modulus is None, else Z/modulus with canonical
    residues in [0, modulus)."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {self.modulus}")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def normalize(self, value: int) -> int:
        return value if self.modulus is None else value % self.modulus

    def unit_inverse(self, value: int) -> int:
        """Multiplicative inverse of a unit, or NonUnitConstantError."""
        if self.modulus is None:
            if value in (1, -1):
                return value
            raise NonUnitConstantError(value, None)
        if gcd(value, self.modulus) != 1:
            raise NonUnitConstantError(value, self.modulus)
        return pow(value, -1, self.modulus)

    def __repr__(self):
        return "ZZ" if self.modulus is None else f"ZZ/{self.modulus}"


INTEGERS = CoefficientRing()


def residues_mod(u: int) -> CoefficientRing:
    return CoefficientRing(u)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of a formal power series through q**order inclusive."""

    ring: CoefficientRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series carries at least the q^0 coefficient")
        u = self.ring.modulus
        if u is not None and any(c < 0 or c >= u for c in coeffs):
            coeffs = tuple(c % u for c in coeffs)
        if coeffs is not self.coeffs:
            object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise IndexError(f"exponent {n} outside the known range 0..{self.order}")
        return self.coeffs[n]

    def nonzero_terms(self, limit: int | None = None) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs with nonzero coefficient, ascending."""
        top = self.order if limit is None else min(limit, self.order)
        return [(e, c) for e, c in enumerate(self.coeffs[: top + 1]) if c]

    def reduced(self, u: int) -> "TruncatedSeries":
        """The coefficientwise image in Z/u."""
        return TruncatedSeries(residues_mod(u), self.coeffs)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, e: int):
        return power(self, e)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries({self.ring!r}, order={self.order}, [{head}{tail}])"


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Exponent vector of an eta quotient: one integer per divisor of the level.

    The attached series is prod over divisors d of (q^d; q^d)_inf ** exponent.
    Exponents may be given as a mapping or as (divisor, exponent) pairs;
    divisors left out get exponent 0, keys that do not divide the level are
    rejected.
    """

    level: int
    exponents: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        raw = self.exponents
        given = dict(raw.items()) if isinstance(raw, Mapping) else dict(raw)
        divs = divisors(self.level)
        bad = sorted(set(given) - set(divs))
        if bad:
            raise ValueError(
                f"exponent keys {bad} do not divide the level {self.level}"
            )
        full = tuple((d, int(given.get(d, 0))) for d in divs)
        object.__setattr__(self, "exponents", full)

    def exponent(self, d: int) -> int:
        for div, e in self.exponents:
            if div == d:
                return e
        raise KeyError(f"{d} does not divide the level {self.level}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in self.exponents if e]

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.exponents)

    def weighted_exponent_sum(self) -> int:
        return sum(d * e for d, e in self.exponents)


def pentagonal_terms(delta: int, order: int) -> list[tuple[int, int]]:
    """Sparse support of prod_{n>=1}(1 - q^(delta*n)) truncated at order.

    Returns (exponent, sign) pairs in ascending exponent order; the exponents
    are delta times the generalized pentagonal numbers k(3k+-1)/2 and the
    signs are (-1)**k.
    """
    terms = [(0, 1)]
    k = 1
    while delta * k * (3 * k - 1) // 2 <= order:
        sign = -1 if k & 1 else 1
        terms.append((delta * k * (3 * k - 1) // 2, sign))
        e2 = delta * k * (3 * k + 1) // 2
        if e2 <= order:
            terms.append((e2, sign))
        k += 1
    return terms


def pentagonal_series(delta: int, order: int, ring: CoefficientRing = INTEGERS) -> TruncatedSeries:
    """The dilated Euler product prod_{n>=1}(1 - q^(delta*n)), truncated."""
    if delta < 1:
        raise ValueError(f"dilation must be positive, got {delta}")
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    coeffs = [0] * (order + 1)
    for e, sign in pentagonal_terms(delta, order):
        coeffs[e] = ring.normalize(sign)
    return TruncatedSeries(ring, tuple(coeffs))


def _common_ring(a: TruncatedSeries, b: TruncatedSeries) -> CoefficientRing:
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine {a.ring!r} with {b.ring!r}")
    return a.ring


def _one(ring: CoefficientRing, order: int) -> TruncatedSeries:
    return TruncatedSeries(ring, (1,) + (0,) * order)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(a.order, b.order).

    Cost is order times the nonzero count of the sparser factor.
    """
    ring = _common_ring(a, b)
    n = min(a.order, b.order)
    ta = a.nonzero_terms(n)
    tb = b.nonzero_terms(n)
    if len(ta) <= len(tb):
        sparse, dense = ta, b.coeffs
    else:
        sparse, dense = tb, a.coeffs
    out = [0] * (n + 1)
    for e, c in sparse:
        for i in range(n - e + 1):
            d = dense[i]
            if d:
                out[e + i] += c * d
    return TruncatedSeries(ring, tuple(ring.normalize(v) for v in out))


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse via the forward recurrence.

    Needs a unit constant term; the error reports the offending gcd.  The
    recurrence touches only the nonzero terms of a, so inverting a sparse
    series costs order times its nonzero count.
    """
    ring = a.ring
    inv0 = ring.unit_inverse(a.coeffs[0])
    n = a.order
    terms = [(e, c) for e, c in enumerate(a.coeffs) if e and c]
    out = [0] * (n + 1)
    out[0] = ring.normalize(inv0)
    for k in range(1, n + 1):
        s = 0
        for e, c in terms:
            if e > k:
                break
            s += c * out[k - e]
        out[k] = ring.normalize(-inv0 * s)
    return TruncatedSeries(ring, tuple(out))


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """a**e truncated at a.order; e == 0 gives the constant series 1.

    Negative exponents invert first (unit constant term required) and then
    multiply repeatedly, like the positive case.
    """
    if e == 0:
        return _one(a.ring, a.order)
    base = invert(a) if e < 0 else a
    result = base
    for _ in range(abs(e) - 1):
        result = mul(result, base)
    return result


def extract_progression(a: TruncatedSeries, m: int, t: int) -> TruncatedSeries:
    """The series whose n-th coefficient is a(m*n + t)."""
    if m < 1:
        raise ValueError(f"progression step must be positive, got {m}")
    if not 0 <= t < m:
        raise ValueError(f"offset {t} outside [0, {m})")
    if t > a.order:
        raise ValueError(
            f"offset {t} is beyond the truncation order {a.order}: nothing to extract"
        )
    return TruncatedSeries(a.ring, a.coeffs[t :: m])


# ---------------------------------------------------------------------------
# eta quotients
# ---------------------------------------------------------------------------


def eta_quotient(spec: EtaQuotientSpec, order: int, ring: CoefficientRing = INTEGERS) -> TruncatedSeries:
    """Expand prod_{d | level} (q^d; q^d)_inf ** r_d through q**order.

    Residue rings with a small modulus take the vectorized kernel; exact
    integers (and very large moduli) fall back to composing the public
    series operations.
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    u = ring.modulus
    if u is not None and _vector_safe(u, order + 1):
        return TruncatedSeries(ring, _eta_mod_vector(spec, order, u))
    return _eta_compose(spec, order, ring)


def _vector_safe(u: int, length: int) -> bool:
    # int64 accumulators: worst case sums `length` products of residues < u
    return (u - 1) ** 2 * length < 2**62


def _eta_compose(spec: EtaQuotientSpec, order: int, ring: CoefficientRing) -> TruncatedSeries:
    result = _one(ring, order)
    for delta, r in spec.nonzero():
        base = pentagonal_series(delta, order, ring)
        if r < 0:
            base = invert(base)
        for _ in range(abs(r)):
            result = mul(result, base)
    return result


def _eta_mod_vector(spec: EtaQuotientSpec, order: int, u: int) -> tuple[int, ...]:
    length = order + 1
    acc = np.zeros(length, dtype=np.int64)
    acc[0] = 1 % u
    work = np.empty(length, dtype=np.int64)
    for delta, r in spec.nonzero():
        if r < 0:
            continue
        terms = pentagonal_terms(delta, order)
        for _ in range(r):
            np.copyto(work, acc)
            for e, sign in terms[1:]:
                seg = length - e
                if sign > 0:
                    np.add(work[e:], acc[:seg], out=work[e:])
                else:
                    np.subtract(work[e:], acc[:seg], out=work[e:])
            np.remainder(work, u, out=acc)
    for delta, r in spec.nonzero():
        if r > 0:
            continue
        inv = _pentagonal_inverse_power_mod(order // delta, -r, u)
        acc = _mul_dilated_mod(acc, inv, delta, u)
    return tuple(acc.tolist())


def _pentagonal_inverse_power_mod(nc: int, k: int, u: int) -> np.ndarray:
    """((q; q)_inf)**(-k) mod u through q**nc, as an int64 vector.

    One forward recurrence produces the inverse of the pentagonal series;
    the k-th power is then built by repeated integer convolution.
    """
    terms = [(e, s) for e, s in pentagonal_terms(1, nc) if e]
    inv = [0] * (nc + 1)
    inv[0] = 1 % u
    for n in range(1, nc + 1):
        s = 0
        for e, sign in terms:
            if e > n:
                break
            if sign > 0:
                s -= inv[n - e]
            else:
                s += inv[n - e]
        inv[n] = s % u
    base = np.array(inv, dtype=np.int64)
    out = base
    for _ in range(k - 1):
        out = np.convolve(out, base)[: nc + 1]
        np.remainder(out, u, out=out)
    return out


def _mul_dilated_mod(acc: np.ndarray, inv: np.ndarray, delta: int, u: int) -> np.ndarray:
    """Multiply acc by a series supported on multiples of delta (coefficients
    inv[j] at exponent delta*j), modulo u.

    The product splits into delta independent convolutions, one per residue
    class of the exponent.
    """
    length = acc.shape[0]
    if delta == 1:
        out = np.convolve(acc, inv)[:length]
        np.remainder(out, u, out=out)
        return out
    out = np.empty(length, dtype=np.int64)
    for rho in range(min(delta, length)):
        seg = acc[rho::delta]
        conv = np.convolve(seg, inv)[: seg.shape[0]]
        np.remainder(conv, u, out=conv)
        out[rho::delta] = conv
    return out
