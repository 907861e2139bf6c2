import json
import random

import pytest

from gfibdiv import (
    ClaimId,
    InputError,
    SequenceParams,
    applicable_claims,
    catalog,
    claim_by_name,
    conclusion_holds,
    hypothesis_check,
    thm12_lift_condition,
)
from gfibdiv.claims import _CONDITIONS, REGISTRY, ConclusionKind, claim_spec
from gfibdiv.numtheory import is_prime
from gfibdiv.sequences import g_exact


class TestRegistry:
    def test_thirteen_claims(self):
        assert len(REGISTRY) == 13
        assert len({spec.claim for spec in REGISTRY}) == 13
        assert len({spec.citation for spec in REGISTRY}) == 13

    def test_names_are_kebab(self):
        for claim in ClaimId:
            assert claim.value == claim.value.lower()
            assert " " not in claim.value

    def test_every_condition_is_registered(self):
        for spec in REGISTRY:
            for name in spec.condition_names:
                assert name in _CONDITIONS

    def test_claim_by_name(self):
        assert claim_by_name("thm1.1-multdiv").claim is ClaimId.Thm1_1_MultDiv
        with pytest.raises(InputError):
            claim_by_name("no-such-claim")

    def test_catalog_is_json_serializable(self):
        entries = catalog()
        assert len(entries) == 13
        round_trip = json.loads(json.dumps(entries))
        assert round_trip == entries
        for entry in entries:
            assert entry["conclusion"] in {k.value for k in ConclusionKind}

    def test_case_structure_difference_thm11_vs_thm12(self):
        # Theorem 1.1's prime case requires s >= 3; Theorem 1.2's does not.
        case3_11 = claim_spec(ClaimId.Thm1_1_Equiv).cases[2]
        case3_12 = claim_spec(ClaimId.Thm1_2_BaseEquiv).cases[2]
        assert "s-ge-3" in case3_11
        assert "s-ge-3" not in case3_12


class TestHypothesisCheck:
    def test_fibonacci_s5_applicable(self):
        report = hypothesis_check(ClaimId.Thm1_1_Equiv, SequenceParams(1, 1), 5)
        assert report.applicable
        values = dict(report.conditions)
        assert values["p-odd"] and values["gcd-pq"] and values["s-div-r"]

    def test_gcd_failure_not_applicable(self):
        report = hypothesis_check(ClaimId.Thm1_1_Equiv, SequenceParams(3, 9), 3)
        assert not report.applicable
        assert dict(report.conditions)["gcd-pq"] is False

    def test_mod3_guard_blocks(self):
        # q = 2 gives q+1 = 3; with s = 3 the guard fails.
        report = hypothesis_check(ClaimId.Thm1_1_Equiv, SequenceParams(5, 2), 3)
        assert not report.applicable
        assert dict(report.conditions)["mod3-guard"] is False

    def test_even_p_case(self):
        # p=2, q=1: r=8, r/4=2, gcd(p/2, q)=1, so s=2 applies via case 2.
        report = hypothesis_check(ClaimId.Thm1_2_BaseEquiv, SequenceParams(2, 1), 2)
        assert report.applicable

    def test_conditions_cover_exactly_the_claims_names(self):
        for spec in REGISTRY:
            report = hypothesis_check(spec.claim, SequenceParams(1, 1), 5)
            assert tuple(name for name, _ in report.conditions) == spec.condition_names


class TestApplicableClaims:
    def test_fibonacci_point(self):
        found = set(applicable_claims(SequenceParams(1, 1), 5))
        assert {
            ClaimId.Thm1_1_MultDiv,
            ClaimId.Thm1_1_Equiv,
            ClaimId.Thm1_2_BaseEquiv,
            ClaimId.Cor_Fibonacci,
            ClaimId.Remark_Scaled,
        } <= found
        assert ClaimId.Cor_Pell not in found

    def test_pell_point(self):
        found = set(applicable_claims(SequenceParams(2, 1), 2))
        assert ClaimId.Cor_Pell in found
        assert ClaimId.Cor_Square not in found  # 4 does not divide r/4 = 2

    def test_degenerate_point(self):
        found = set(applicable_claims(SequenceParams(3, 9), 3))
        assert found == {ClaimId.Thm1_1_MultDiv, ClaimId.Remark_Scaled}


class TestConclusionHolds:
    def test_multdiv_true_point(self):
        assert conclusion_holds(ClaimId.Thm1_1_MultDiv, SequenceParams(1, 1), 5, 1, 5)

    def test_equiv_false_point(self):
        # p=4, q=1, s=20: 20 | G_10 = 416020 but 20 does not divide 10.
        assert not conclusion_holds(ClaimId.Thm1_1_Equiv, SequenceParams(4, 1), 20, 1, 10)

    def test_base_equiv_clamps_exponent(self):
        params = SequenceParams(4, 1)
        for k in (1, 2, 3):
            assert conclusion_holds(ClaimId.Thm1_2_BaseEquiv, params, 20, k, 10) is False
        assert conclusion_holds(ClaimId.Thm1_2_BaseEquiv, params, 20, 0, 10)

    @pytest.mark.parametrize("claim", list(ClaimId))
    def test_k_zero_and_s_one_degenerate(self, claim):
        rng = random.Random(hash(claim.value) & 0xFFFF)
        for _ in range(20):
            params = SequenceParams(rng.randint(-6, 6), rng.randint(-6, 6))
            n = rng.randint(0, 30)
            assert conclusion_holds(claim, params, rng.randint(1, 9), 0, n)
            assert conclusion_holds(claim, params, 1, rng.randint(0, 4), n)

    def test_negative_k_or_n_rejected(self):
        with pytest.raises(InputError):
            conclusion_holds(ClaimId.Thm1_1_Equiv, SequenceParams(1, 1), 5, -1, 3)
        with pytest.raises(InputError):
            conclusion_holds(ClaimId.Thm1_1_Equiv, SequenceParams(1, 1), 5, 1, -3)

    def test_modular_flag_agrees_with_exact(self):
        rng = random.Random(1234)
        for _ in range(300):
            params = SequenceParams(rng.randint(-6, 6), rng.randint(-6, 6))
            s, k, n = rng.randint(1, 10), rng.randint(0, 3), rng.randint(0, 40)
            claim = rng.choice([ClaimId.Thm1_1_Equiv, ClaimId.Thm1_2_BaseEquiv, ClaimId.Cor_Square])
            exact = conclusion_holds(claim, params, s, k, n, modular=False)
            modular = conclusion_holds(claim, params, s, k, n, modular=True)
            assert exact == modular

    def test_scaled_matches_direct_divisibility(self):
        # Scaling both sides by alpha preserves divisibility, so for nonzero
        # divisors the scaled claim coincides with the plain one.
        params = SequenceParams(3, 4)  # r = 25
        for n in range(1, 15):
            divisor = 5 * g_exact(params, n)
            assert divisor != 0
            expected = g_exact(params, 5 * n) % divisor == 0
            assert conclusion_holds(ClaimId.Remark_Scaled, params, 5, 1, n) == expected


class TestSoundness:
    """Wherever a hypothesis holds on a small grid, its conclusion holds."""

    @pytest.mark.parametrize("claim", list(ClaimId))
    def test_small_grid(self, claim):
        checked = 0
        for p in range(-4, 5):
            for q in range(-4, 5):
                params = SequenceParams(p, q)
                for s in range(1, 13):
                    if not hypothesis_check(claim, params, s).applicable:
                        continue
                    if (
                        claim is ClaimId.Thm1_2_LiftedEquiv
                        and s >= 2
                        and not thm12_lift_condition(params, s, 30).holds
                    ):
                        continue
                    for k in range(0, 3):
                        for n in range(0, 15):
                            assert conclusion_holds(claim, params, s, k, n), (p, q, s, k, n)
                            checked += 1
        assert checked > 0


class TestCaseThreeReduction:
    def test_even_p_odd_prime_s_dividing_r_also_divides_r4(self):
        # When 4 | r, any odd prime s | r also divides r/4, so for even p the
        # prime case of the base equivalence is subsumed by the p-even case.
        for p in range(-8, 9, 2):
            for q in range(-8, 9):
                r = p * p + 4 * q
                if r == 0 or r % 4 != 0:
                    continue
                for s in range(3, abs(r) + 1, 2):
                    if is_prime(s) and r % s == 0:
                        assert (r // 4) % s == 0, (p, q, s)


class TestLiftCondition:
    def test_holds_for_fibonacci_s5(self):
        check = thm12_lift_condition(SequenceParams(1, 1), 5, 100)
        assert check.holds and check.first_failing_t is None and check.t_max == 100

    def test_reports_failing_t(self):
        # p=4, q=1 (r=20, r/4=5): s=2 divides r/4, but G_2 = 4 so 4 | G_{2*1}.
        check = thm12_lift_condition(SequenceParams(4, 1), 2, 10)
        assert not check.holds
        assert check.first_failing_t == 1
        assert g_exact(SequenceParams(4, 1), 2 * 1) % 4 == 0

    def test_bad_s(self):
        with pytest.raises(InputError):
            thm12_lift_condition(SequenceParams(1, 1), 1, 10)
