import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arborist.critorbit import d_sequence
from arborist.dynamics import Family, family1, family2
from arborist.errors import DegenerateBasePoint, InvariantViolation
from arborist.exactnum import rational_is_square
from arborist.independence import two_independent
from arborist.verdict import (
    VerdictStatus,
    certify,
    certify_family1,
    certify_family2,
    compute_delta_e,
)


def bisect_root(poly, lo, hi, steps=80):
    """Float root oracle for the interval endpoints."""
    for _ in range(steps):
        mid = (lo + hi) / 2
        if poly(lo) * poly(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


BETA = bisect_root(lambda x: x**3 + 2 * x**2 - 2, 0.5, 1.0)


class TestDeltaE:
    @pytest.mark.parametrize(
        "a, delta, e",
        [
            (Fraction(1, 5), 1, 0),
            (Fraction(-6, 7), 0, 1),
            (Fraction(1, 2), 1, 0),
            (Fraction(9, 10), None, 0),
            (Fraction(-7, 2), 0, 0),
            (Fraction(4, 3), 0, 1),
            (Fraction(-2), None, 1),
            (Fraction(-1), None, 0),
            (Fraction(1), None, 0),
        ],
    )
    def test_cases(self, a, delta, e):
        de = compute_delta_e(a)
        assert (de.delta, de.e) == (delta, e)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            compute_delta_e(Fraction(0))

    @given(
        a=st.fractions(min_value=-10, max_value=10, max_denominator=200).filter(
            lambda f: f != 0
        )
    )
    @settings(max_examples=300)
    def test_agrees_with_float_intervals(self, a):
        # sanity cross-check away from the endpoints; the exact test rules
        if min(abs(float(a) - b) for b in (BETA, 1.0, -1.0, -2.0, 0.0)) < 1e-6:
            return
        de = compute_delta_e(a)
        x = float(a)
        if x < 0 and x not in (-1.0, -2.0) or x > 1:
            assert de.delta == 0
        elif 0 < x < BETA:
            assert de.delta == 1
        else:
            assert de.delta is None
        assert de.e == (1 if a.numerator % 2 == 0 else 0)


class TestCertifyFamily1:
    def test_example_one_fifth(self):
        v = certify_family1(Fraction(1, 5), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert v.condition == "T1.1-1"
        assert v.detail["m"] == "-1"

    def test_example_one_half_fires_mod4(self):
        v = certify_family1(Fraction(1, 2), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert "T1.1-2" in v.detail["fired"]  # -1 = 3 (mod 4)

    def test_example_minus_six_sevenths(self):
        v = certify_family1(Fraction(-6, 7), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert v.condition == "T1.1-3"
        assert v.detail["fired"] == ["T1.1-3"]
        assert v.detail["q"] == "7"

    def test_square_offset_is_not_surjective(self):
        v = certify_family1(Fraction(1, 4))
        assert v.status is VerdictStatus.NOT_SURJECTIVE
        assert v.detail["a_minus_c"] == "9/16"

    def test_minus_two_is_inapplicable(self):
        assert certify_family1(Fraction(-2)).status is VerdictStatus.INAPPLICABLE

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateBasePoint):
            certify_family1(Fraction(0))
        with pytest.raises(DegenerateBasePoint):
            certify_family1(Fraction(-1))

    def test_audit_failure_raises(self, monkeypatch):
        import arborist.verdict as verdict_module

        from arborist.independence import IndependenceResult

        monkeypatch.setattr(
            verdict_module,
            "two_independent",
            lambda values: IndependenceResult(False, (0,)),
        )
        with pytest.raises(InvariantViolation):
            certify_family1(Fraction(1, 5), depth_check=4)


class TestCertifyFamily2:
    def test_example_one_quarter(self):
        v = certify_family2(Fraction(1, 4), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert v.condition == "T1.2-1"

    def test_example_two_thirteenths(self):
        v = certify_family2(Fraction(2, 13), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert v.condition == "T1.2-2"
        assert v.detail["fired"] == ["T1.2-2"]

    def test_example_two_thirds(self):
        v = certify_family2(Fraction(2, 3), depth_check=6)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE
        assert v.condition == "T1.2-3"
        assert v.detail["q"] == "3"

    def test_pythagorean_square_offset(self):
        # a - c = 1 + a^2 = 25/16 at a = 3/4
        v = certify_family2(Fraction(3, 4))
        assert v.status is VerdictStatus.NOT_SURJECTIVE
        assert v.detail["a_minus_c"] == "25/16"

    def test_conditions_require_unit_or_two_numerator(self):
        v = certify_family2(Fraction(3, 5), depth_check=0)
        assert v.status is VerdictStatus.INAPPLICABLE

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateBasePoint):
            certify_family2(Fraction(1, 2))


class TestCertify:
    def test_proven_case_passes_through(self):
        v = certify(Fraction(1, 2), 1, depth=8)
        assert v.status is VerdictStatus.PROVEN_SURJECTIVE

    def test_mixed_interval_falls_back_to_evidence(self):
        v = certify(Fraction(9, 10), 1, depth=8)
        assert v.status is VerdictStatus.INDEPENDENT_TO_DEPTH
        assert v.depth == 8
        assert "not a proof" in v.detail["note"]

    def test_unit_base_point_two_cycle_dependency(self):
        v = certify(Fraction(1), 2, depth=6)
        assert v.status is VerdictStatus.DEPENDENT_AT_LEVEL
        assert v.witness == (1, 2, 3)
        assert v.detail["level"] == 3

    def test_minus_two_reports_zero_level(self):
        v = certify(Fraction(-2), 1, depth=4)
        assert v.status is VerdictStatus.INAPPLICABLE
        assert v.detail["zero_levels"] == [1]

    def test_family_accepts_enum_or_int(self):
        assert certify(Fraction(1, 5), Family.CYCLE1, depth=4).condition == "T1.1-1"
        with pytest.raises(ValueError):
            certify(Fraction(1, 5), 0, depth=4)

    def test_json_shape(self):
        v = certify(Fraction(2, 3), 2, depth=5)
        payload = v.to_json_dict()
        assert payload["a"] == "2/3"
        assert payload["family"] == 2
        assert payload["status"] == "ProvenSurjective"
        assert payload["condition"] == "T1.2-3"
        assert set(payload) == {
            "a",
            "family",
            "status",
            "condition",
            "depth",
            "witness",
            "delta",
            "e",
            "detail",
        }


class TestConsistencyProperties:
    def sample(self, bound):
        for s in range(1, bound + 1):
            for r in range(-bound, bound + 1):
                if r != 0 and math.gcd(abs(r), s) == 1:
                    yield Fraction(r, s)

    def test_never_proven_when_offset_is_square(self):
        for a in self.sample(12):
            for fam, ctor in ((1, family1), (2, family2)):
                try:
                    qmap = ctor(a)
                except DegenerateBasePoint:
                    continue
                if not rational_is_square(a - qmap.c):
                    continue
                verdict = certify(a, fam, depth=4)
                assert verdict.status is not VerdictStatus.PROVEN_SURJECTIVE, (a, fam)
                if a - qmap.c != 0:
                    assert verdict.status is VerdictStatus.NOT_SURJECTIVE, (a, fam)

    def test_proven_verdicts_pass_independence(self):
        for a in self.sample(8):
            for fam, ctor in ((1, family1), (2, family2)):
                try:
                    verdict = certify(a, fam, depth=6)
                except DegenerateBasePoint:
                    continue
                if verdict.status is not VerdictStatus.PROVEN_SURJECTIVE:
                    continue
                orbit = d_sequence(ctor(a), 6)
                assert two_independent(orbit.d_values).independent, (a, fam)
