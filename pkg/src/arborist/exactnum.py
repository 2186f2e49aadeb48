"""Exact integer and rational number-theory primitives.

Rational values throughout the package are stdlib ``fractions.Fraction``
instances, which already maintain the invariants everything here relies on:
numerator and denominator coprime after every operation, denominator
positive, zero stored as 0/1.  This module adds the predicates built on top
of them: p-adic valuations, exact square and perfect-power detection, the
Jacobi symbol, deterministic small-range primality, and gcd-based factor
refinement into a pairwise-coprime base.

There is deliberately no general-purpose integer factorization anywhere:
the quantities this package manipulates have numerators with thousands of
digits, and every algorithm reduces to gcds, exact roots, and congruences.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable

Rational = Fraction

#: Marker returned by :func:`v_p` for the valuation of zero.
INFINITY = math.inf

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

# Below this bound, Miller-Rabin with the first 13 prime bases is a proof.
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# v_p checks primality itself up to here; larger moduli are the caller's
# responsibility.
_VP_PRIMALITY_BOUND = 1 << 64


def parse_rational(text: str) -> Fraction:
    """Parse the exact wire format ``r/s`` (or a bare integer ``r``)."""
    if not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational in r/s form: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(x: Fraction) -> str:
    """Serialize a rational as ``r/s``, omitting the denominator when 1."""
    return str(Fraction(x))


def v_int(n: int, p: int) -> int | float:
    """Exponent of p in n (no primality check; p >= 2). Infinite for n = 0."""
    if n == 0:
        return INFINITY
    count = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        count += 1
    return count


def v_p(x: Fraction | int, p: int) -> int | float:
    """p-adic valuation of a rational, ``INFINITY`` for zero.

    ``p`` must be prime.  Primality is verified deterministically for
    p < 2**64 and trusted above that.
    """
    if p < 2:
        raise ValueError(f"not a prime: {p}")
    if p < _VP_PRIMALITY_BOUND and not is_prime(p):
        raise ValueError(f"not a prime: {p}")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return v_int(x.numerator, p) - v_int(x.denominator, p)


def is_perfect_square(n: int) -> bool:
    """True iff n = m*m for some integer m, verified by exact squaring."""
    if n < 0:
        return False
    root = math.isqrt(n)
    return root * root == n


def rational_is_square(x: Fraction) -> bool:
    """True iff x is the square of a rational.

    Because fractions are kept reduced, x >= 0 is a square exactly when its
    numerator and denominator are both perfect squares.
    """
    x = Fraction(x)
    if x < 0:
        return False
    return is_perfect_square(x.numerator) and is_perfect_square(x.denominator)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n, via binary reciprocity.

    For prime n this is the Legendre symbol: -1 iff a is a quadratic
    non-residue, 0 iff n divides a.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by bisection on bit length."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def perfect_power_decompose(n: int) -> tuple[int, int]:
    """Write n = m**k with k maximal; (n, 1) when n is not a perfect power."""
    if n < 2:
        raise ValueError(f"perfect_power_decompose needs n >= 2, got {n}")
    for k in range(n.bit_length() - 1, 1, -1):
        m = integer_nth_root(n, k)
        if m**k == n:
            return (m, k)
    return (n, 1)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality for n below about 3.3e24."""
    if n >= _MR_DETERMINISTIC_LIMIT:
        raise ValueError(f"deterministic primality bound exceeded: {n}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def proven_prime(n: int) -> bool | None:
    """is_prime when decidable, None when n is beyond the deterministic range."""
    if n >= _MR_DETERMINISTIC_LIMIT:
        return None
    return is_prime(n)


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit (simple sieve; intended for small limits)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def _coprime_basis(work: list[int]) -> list[int]:
    # Worklist gcd-splitting: replacing (b, m) sharing g > 1 by (g, b/g, m/g)
    # strictly shrinks the multiset product, so this terminates.
    basis: list[int] = []
    while work:
        m = work.pop()
        if m == 1:
            continue
        for i, b in enumerate(basis):
            g = math.gcd(m, b)
            if g == 1:
                continue
            del basis[i]
            work.extend((g, b // g, m // g))
            break
        else:
            basis.append(m)
    return basis


def factor_refine(
    inputs: Iterable[int],
) -> tuple[list[int], list[list[int]]]:
    """Refine integers >= 2 into a pairwise-coprime base, without factoring.

    Returns ``(basis, rows)`` where ``basis`` is sorted ascending, its
    elements are pairwise coprime, and ``inputs[i] == prod(b**e for b, e in
    zip(basis, rows[i]))`` exactly.  Output is deterministic for a fixed
    input order.
    """
    vals = [int(n) for n in inputs]
    if any(n < 2 for n in vals):
        raise ValueError("factor_refine requires all inputs >= 2")
    basis = _coprime_basis(list(vals))
    while True:
        basis.sort()
        rows: list[list[int]] = []
        residual = 0
        for n in vals:
            row = []
            for b in basis:
                e = 0
                while n % b == 0:
                    n //= b
                    e += 1
                row.append(e)
            if n != 1:
                residual = n
                break
            rows.append(row)
        if not residual:
            return basis, rows
        # A leftover cofactor shares a nontrivial gcd with some basis
        # element; feeding it back splits that element further.
        basis = _coprime_basis(basis + [residual])
