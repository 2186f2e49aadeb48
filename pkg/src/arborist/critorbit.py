"""The adjusted critical orbit of a quadratic map relative to its base point.

For f(x) = x^2 + c with base point a = r/s (reduced, s > 0) the sequence

    D_1 = a - c,   D_i = f^i(0) - a  for i >= 2

controls, through its square classes, whether the arboreal representation
attached to (f, a) is surjective.  Writing f^n(0) - a = r_n / s_n reduced,
both families satisfy s_n = s**(2**n) exactly, and the numerators obey a
closed recursion:

    tail-into-fixed-point family (c = -a - a^2):
        r_1 = -r^2 - 2rs,
        r_{n+1} = r_n^2 + 2 r_n r s**(2**n - 1) - 2 r s**(2**(n+1) - 1)

    tail-into-two-cycle family (c = -1 + a - a^2):
        r_1 = -r^2 - s^2,
        r_{n+1} = r_n^2 + 2 r_n r s**(2**n - 1) - s**(2**(n+1))

This module computes the sequence both ways and insists they agree, and
hosts the valuation, decomposition, sign, and congruence analyzers the
certification layer relies on.  Note D_1 = -(f(0) - a) = -r_1/s^2: sign
statements below are always about f^n(0) - a, whose sign at n = 1 is the
opposite of D_1's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import Family, QuadMap
from .errors import InvariantViolation
from .exactnum import primes_up_to, v_int

DEFAULT_DEPTH = 12


@dataclass(frozen=True)
class AdjustedOrbit:
    """Immutable adjusted critical orbit to a fixed depth.

    ``d_values[i-1]`` is D_i and ``numerators[i-1]`` is r_i, the reduced
    numerator of f^i(0) - a over denominator s**(2**i).
    """

    qmap: QuadMap
    depth: int
    d_values: tuple[Fraction, ...]
    numerators: tuple[int, ...]
    s: int

    @property
    def a(self) -> Fraction:
        assert self.qmap.a is not None
        return self.qmap.a

    @property
    def family(self) -> Family:
        return self.qmap.family

    def D(self, i: int) -> Fraction:
        """D_i, 1-based."""
        return self.d_values[i - 1]

    def r(self, i: int) -> int:
        """r_i, the reduced numerator of f^i(0) - a, 1-based."""
        return self.numerators[i - 1]


@dataclass(frozen=True)
class Decomposition1:
    """r_n = sign * 2**e * |r| * t with t odd, positive, coprime to r."""

    n: int
    sign: int
    e: int
    t: int


@dataclass(frozen=True)
class Decomposition2:
    """r_n = -(2**two_part) * t with t odd positive (two-cycle family,
    base points 1/s and 2/s with 0 < a < 1 only)."""

    n: int
    t: int
    two_part: int


@dataclass(frozen=True)
class ValuationCheck:
    """Outcome of one valuation law at one prime.

    ``passed`` is None when the law's hypothesis does not hold for (a, p).
    """

    name: str
    applicable: bool
    passed: bool | None
    first_failure: int | None = None


@dataclass(frozen=True)
class SignPrediction:
    """Predicted signs of f^n(0) - a.

    kind is one of ``all_positive`` (for n >= start), ``all_negative``
    (always from n = 1), ``mixed`` (both signs occur; no per-index claim),
    or ``boundary`` (excluded points where the sequence may vanish).
    """

    kind: str
    start: int | None = None


@dataclass(frozen=True)
class CongruenceReport:
    modulus: int
    applicable: bool
    passed: bool | None
    first_failure: int | None = None


def numerator_recursion(family: Family, r: int, s: int, depth: int) -> list[int]:
    """Numerators r_1..r_depth of f^n(0) - a for a = r/s by the closed recursion."""
    if s < 1 or math.gcd(r, s) != 1:
        raise ValueError("base point must be given as a reduced fraction with s >= 1")
    if depth < 1:
        raise ValueError("depth must be positive")
    if family is Family.CYCLE1:
        rn = -r * r - 2 * r * s
    elif family is Family.CYCLE2:
        rn = -r * r - s * s
    else:
        raise ValueError("numerator recursion requires a known family")
    out = [rn]
    power = s * s  # s**(2**n) for the current n
    for _ in range(1, depth):
        next_power = power * power
        if family is Family.CYCLE1:
            rn = rn * rn + 2 * rn * r * (power // s) - 2 * r * (next_power // s)
        else:
            rn = rn * rn + 2 * rn * r * (power // s) - next_power
        out.append(rn)
        power = next_power
    return out


def d_sequence(qmap: QuadMap, depth: int = DEFAULT_DEPTH) -> AdjustedOrbit:
    """Build the adjusted orbit, cross-checking recursion against iteration.

    The sequence is computed by direct exact iteration and independently by
    the family numerator recursion; any disagreement (value, denominator, or
    the gcd(r_n, s) = 1 law) raises InvariantViolation.
    """
    if qmap.family not in (Family.CYCLE1, Family.CYCLE2):
        raise ValueError("adjusted orbits are defined for the two known families")
    if qmap.a is None:
        raise ValueError("map has no base point")
    if depth < 1:
        raise ValueError("depth must be positive")
    a, c = qmap.a, qmap.c
    r, s = a.numerator, a.denominator

    offsets = []  # f^n(0) - a for n = 1..depth
    x = Fraction(0)
    for _ in range(depth):
        x = x * x + c
        offsets.append(x - a)

    nums = numerator_recursion(qmap.family, r, s, depth)
    for n, (direct, rn) in enumerate(zip(offsets, nums), start=1):
        den = s ** (2**n)
        if math.gcd(rn, s) != 1:
            raise InvariantViolation(f"gcd(r_{n}, s) != 1 for a = {a}")
        if direct != Fraction(rn, den):
            raise InvariantViolation(
                f"recursion/iteration mismatch at n = {n} for a = {a}"
            )
        if rn != 0 and direct.denominator != den:
            raise InvariantViolation(f"denominator law fails at n = {n} for a = {a}")

    d_values = (a - c, *offsets[1:])
    assert d_values[0] == -offsets[0]
    return AdjustedOrbit(
        qmap=qmap, depth=depth, d_values=d_values, numerators=tuple(nums), s=s
    )


def decompose1(orbit: AdjustedOrbit, n: int) -> Decomposition1:
    """Split r_n (n >= 2, fixed-point-tail family) as sign * 2**e * |r| * t.

    e is 1 exactly when the base point numerator is even.  The division must
    be exact with t odd and coprime to r; failure is a hard error since the
    decomposition is guaranteed for this family.
    """
    if orbit.family is not Family.CYCLE1:
        raise ValueError("decomposition applies to the fixed-point-tail family only")
    if not 2 <= n <= orbit.depth:
        raise ValueError(f"index {n} outside 2..{orbit.depth}")
    r_abs = abs(orbit.a.numerator)
    e = 1 if orbit.a.numerator % 2 == 0 else 0
    rn = orbit.r(n)
    t, rem = divmod(abs(rn), (1 << e) * r_abs)
    if rem != 0 or t % 2 == 0 or math.gcd(t, r_abs) != 1:
        raise InvariantViolation(
            f"r_{n} = {rn} does not decompose as sign * 2^{e} * {r_abs} * odd-coprime"
        )
    return Decomposition1(n=n, sign=1 if rn > 0 else -1, e=e, t=t)


def decompose2(orbit: AdjustedOrbit, n: int) -> Decomposition2:
    """Split r_n as -(2**two_part) * t for the two-cycle family.

    Only defined where the certification procedure needs it: base points
    1/s with s even (every numerator odd) and 2/s with s odd, s >= 3, both
    with 0 < a < 1 so that r_n < 0 for all n.  For 2/s the 2-part is
    exactly 4 at even n and 1 at odd n.
    """
    if orbit.family is not Family.CYCLE2:
        raise ValueError("decomposition applies to the two-cycle-tail family only")
    if not 1 <= n <= orbit.depth:
        raise ValueError(f"index {n} outside 1..{orbit.depth}")
    r, s = orbit.a.numerator, orbit.s
    if r == 1 and s % 2 == 0:
        expected_two = 0
    elif r == 2 and s >= 3:
        expected_two = 2 if n % 2 == 0 else 0
    else:
        raise ValueError(
            "decomposition defined only for base points 1/even-s and 2/odd-s in (0, 1)"
        )
    rn = orbit.r(n)
    if rn >= 0:
        raise InvariantViolation(f"r_{n} = {rn} is not negative")
    two = int(v_int(rn, 2))
    if two != expected_two:
        raise InvariantViolation(
            f"r_{n} = {rn} has 2-part 2^{two}, expected 2^{expected_two}"
        )
    return Decomposition2(n=n, t=abs(rn) >> two, two_part=two)


def check_valuations(orbit: AdjustedOrbit, p: int) -> list[ValuationCheck]:
    """Evaluate every valuation law of the orbit's family at the prime p.

    Laws whose hypothesis on (a, p) fails are reported inapplicable rather
    than failed.  Zero numerators (which occur only for a = -2, where s = 1)
    are skipped inside the per-index checks; no law's hypothesis can put a
    claim on them.
    """
    a = orbit.a
    r, s = a.numerator, orbit.s
    vp_r = int(v_int(r, p)) if r != 0 else 0
    vp_s = int(v_int(s, p))
    vp_a = vp_r - vp_s
    n_range = range(1, orbit.depth + 1)
    num_v = [int(v_int(rn, p)) if rn != 0 else None for rn in orbit.numerators]

    checks: list[ValuationCheck] = []

    def record(name: str, applicable: bool, pred=None) -> None:
        if not applicable:
            checks.append(ValuationCheck(name, False, None))
            return
        fail_at = None
        for n in n_range:
            v = num_v[n - 1]
            if v is None:
                continue
            # valuation of the full rational f^n(0) - a
            if not pred(n, v - (2**n) * vp_s):
                fail_at = n
                break
        checks.append(ValuationCheck(name, True, fail_at is None, fail_at))

    # Denominator support: p divides s iff every f^n(0) - a has negative
    # valuation, and no term does otherwise.
    if vp_a < 0:
        record("denominator_support", True, lambda n, v: v < 0)
    else:
        record("denominator_support", True, lambda n, v: v >= 0)

    if orbit.family is Family.CYCLE1:
        record("unit_2adic_flat", p == 2 and vp_a == 0, lambda n, v: v == 0)
        record(
            "even_2adic_shift",
            p == 2 and vp_a >= 1,
            lambda n, v: n < 2 or v == vp_a + 1,
        )
        record("odd_prime_locked", p != 2 and vp_a > 0, lambda n, v: v == vp_a)
    else:
        record(
            "even_2adic_alternation",
            p == 2 and vp_a > 0,
            lambda n, v: v > 0 if n % 2 == 0 else v == 0,
        )
        record(
            "exact_two_adic_jump",
            p == 2 and vp_a == 1,
            lambda n, v: v == (2 if n % 2 == 0 else 0),
        )
        record(
            "unit_2adic_alternation",
            p == 2 and vp_a == 0,
            lambda n, v: v == (1 if n % 2 == 1 else 0),
        )

    # Repeated prime law: a prime hitting two distinct numerators must come
    # from the base point (through 2a for the two-cycle family).
    hits = [n for n in n_range if num_v[n - 1] is not None and num_v[n - 1] > 0]
    name = (
        "repeated_prime_divides_numerator"
        if orbit.family is Family.CYCLE1
        else "repeated_prime_divides_2a"
    )
    if vp_s == 0 and len(hits) >= 2:
        if orbit.family is Family.CYCLE1:
            ok = vp_a > 0
        else:
            ok = (vp_r > 0) or (p == 2)
        checks.append(ValuationCheck(name, True, ok, None if ok else hits[1]))
    else:
        checks.append(ValuationCheck(name, False, None))

    return checks


def sign_predict(qmap: QuadMap) -> SignPrediction:
    """Classify the signs of f^n(0) - a by exact interval membership.

    The irrational interval endpoints are never approximated: membership is
    decided by the sign of the defining polynomial at a, which has no
    rational roots other than 0.  The excluded points a in {-2, -1, 1} of
    the fixed-point-tail family are reported as boundary.
    """
    if qmap.family not in (Family.CYCLE1, Family.CYCLE2) or qmap.a is None:
        raise ValueError("sign prediction requires a known family with base point")
    a = qmap.a
    if qmap.family is Family.CYCLE1:
        if a in (-2, -1, 1):
            return SignPrediction(kind="boundary")
        if -2 < a < 0:
            return SignPrediction(kind="all_positive", start=1)
        if a < -2 or a > 1:
            return SignPrediction(kind="all_positive", start=2)
        if a > 0 and a**4 + 2 * a**3 - 2 * a < 0:
            return SignPrediction(kind="all_negative", start=1)
        return SignPrediction(kind="mixed")
    if a * a - a - 1 > 0:
        return SignPrediction(kind="all_positive", start=2)
    if a > 0 and a**4 - 2 * a**3 + 2 * a * a - 2 * a < 0:
        return SignPrediction(kind="all_negative", start=1)
    return SignPrediction(kind="mixed")


def congruence_check(orbit: AdjustedOrbit, modulus: int) -> CongruenceReport:
    """Check r_n = 1 (mod 3 or mod 4) for n >= 2, fixed-point-tail family.

    The mod-3 law needs 3 not dividing r and the mod-4 law needs r odd;
    otherwise the report is inapplicable.
    """
    if orbit.family is not Family.CYCLE1:
        raise ValueError("congruence laws apply to the fixed-point-tail family only")
    if modulus not in (3, 4):
        raise ValueError("modulus must be 3 or 4")
    r = orbit.a.numerator
    applicable = (r % 3 != 0) if modulus == 3 else (r % 2 != 0)
    if not applicable:
        return CongruenceReport(modulus, False, None)
    for n in range(2, orbit.depth + 1):
        if orbit.r(n) % modulus != 1:
            return CongruenceReport(modulus, True, False, n)
    return CongruenceReport(modulus, True, True)


def orbit_report(orbit: AdjustedOrbit, prime_bound: int = 100) -> dict:
    """JSON-ready report: the sequence plus every analyzer's verdicts."""
    a = orbit.a
    relevant = [2] + [
        p
        for p in primes_up_to(prime_bound)
        if p != 2 and (a.numerator % p == 0 or orbit.s % p == 0)
    ]
    sign = sign_predict(orbit.qmap)
    report = {
        "a": str(a),
        "family": orbit.family.value,
        "N": orbit.depth,
        "D": [str(d) for d in orbit.d_values],
        "sign_class": {"kind": sign.kind, "from": sign.start},
        "valuation_checks": {
            str(p): [
                {
                    "name": ch.name,
                    "applicable": ch.applicable,
                    "passed": ch.passed,
                    "first_failure": ch.first_failure,
                }
                for ch in check_valuations(orbit, p)
            ]
            for p in relevant
        },
        "congruence_checks": {},
    }
    if orbit.family is Family.CYCLE1:
        for modulus in (3, 4):
            rep = congruence_check(orbit, modulus)
            report["congruence_checks"][str(modulus)] = {
                "applicable": rep.applicable,
                "passed": rep.passed,
                "first_failure": rep.first_failure,
            }
    return report
