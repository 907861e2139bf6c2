"""The divisibility theorems encoded as machine-checkable claims.

Each claim is a pair (hypothesis, conclusion) over the parameters (p, q) and
a positive integer s.  Hypotheses are conjunctions of named atomic conditions
arranged in "or"-separated cases, mirroring the case structure of the source
statements; conclusions are predicates over an additional exponent k and
index n.  Conclusions are evaluable even when the hypothesis fails, which is
what makes relaxed-hypothesis counterexample search possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InputError
from .numtheory import divides, is_prime
from .sequences import SequenceParams, g_exact, g_is_zero, g_mod

# Scale factors used by the scaled-seed claim (seeds (0, alpha) give alpha*G_n).
DEFAULT_SCALE_FACTORS = (-3, -1, 2, 5)


class ClaimId(Enum):
    Thm1_1_MultDiv = "thm1.1-multdiv"
    Thm1_1_Equiv = "thm1.1-equiv"
    Thm1_2_BaseEquiv = "thm1.2-base-equiv"
    Thm1_2_LiftedEquiv = "thm1.2-lifted-equiv"
    Cor_Square = "cor-square"
    Cor_Fibonacci = "cor-fibonacci"
    Cor_Pell = "cor-pell"
    Cor_Jacobsthal = "cor-jacobsthal"
    Cor_Q1 = "cor-q1"
    Cor_P1P2 = "cor-p1p2"
    Cor_PrimeR = "cor-prime-r"
    Cor_PrimeRover4 = "cor-prime-r4"
    Remark_Scaled = "remark-scaled"


def _safe_coprime(a: int, b: int) -> bool:
    import math

    if a == 0 and b == 0:
        return False
    return math.gcd(a, b) == 1


# Atomic hypothesis conditions, evaluated at (p, q, s).
_CONDITIONS = {
    "r-nonzero": lambda p, q, s: p * p + 4 * q != 0,
    "p-odd": lambda p, q, s: p % 2 == 1,
    "p-even": lambda p, q, s: p % 2 == 0,
    "p-nonzero": lambda p, q, s: p != 0,
    "p-eq-1": lambda p, q, s: p == 1,
    "p-eq-2": lambda p, q, s: p == 2,
    "q-eq-1": lambda p, q, s: q == 1,
    "q-eq-2": lambda p, q, s: q == 2,
    "q-positive": lambda p, q, s: q >= 1,
    "gcd-pq": lambda p, q, s: _safe_coprime(p, q),
    "gcd-p2-q": lambda p, q, s: p % 2 == 0 and _safe_coprime(p // 2, q),
    "s-div-r": lambda p, q, s: divides(s, p * p + 4 * q),
    "s-div-r4": lambda p, q, s: (p * p + 4 * q) % 4 == 0 and divides(s, (p * p + 4 * q) // 4),
    "s2-div-r": lambda p, q, s: divides(s * s, p * p + 4 * q),
    "s2-div-r4": lambda p, q, s: (p * p + 4 * q) % 4 == 0 and divides(s * s, (p * p + 4 * q) // 4),
    "4-div-r": lambda p, q, s: (p * p + 4 * q) % 4 == 0,
    "s-prime": lambda p, q, s: s >= 0 and is_prime(s),
    "s-ge-3": lambda p, q, s: s >= 3,
    "r-prime": lambda p, q, s: p * p + 4 * q >= 2 and is_prime(p * p + 4 * q),
    "r4-prime": lambda p, q, s: (p * p + 4 * q) % 4 == 0
    and (p * p + 4 * q) // 4 >= 2
    and is_prime((p * p + 4 * q) // 4),
    "s-eq-r": lambda p, q, s: s == p * p + 4 * q,
    "s-eq-r4": lambda p, q, s: (p * p + 4 * q) % 4 == 0 and s == (p * p + 4 * q) // 4,
    "s-eq-2": lambda p, q, s: s == 2,
    "s-eq-3": lambda p, q, s: s == 3,
    "s-eq-5": lambda p, q, s: s == 5,
    "s-div-4q1": lambda p, q, s: divides(s, 4 * q + 1),
    "s-div-q1": lambda p, q, s: divides(s, q + 1),
    # (3 does not divide q+1) or (3 does not divide s)
    "mod3-guard": lambda p, q, s: (q + 1) % 3 != 0 or s % 3 != 0,
}


class ConclusionKind(Enum):
    MULT_DIV = "mult-div"  # s^k * G_n  divides  G_{s^k * n}
    EQUIV = "equiv"  # s^k | n  <=>  s^k | G_n
    BASE_EQUIV = "base-equiv"  # the k=1 equivalence (exponent clamped to 1)
    CLASSICAL = "classical"  # MULT_DIV and EQUIV together
    SCALED = "scaled"  # MULT_DIV for every configured seed scale


@dataclass(frozen=True)
class ClaimSpec:
    claim: ClaimId
    statement: str
    citation: str
    global_conditions: tuple[str, ...]
    cases: tuple[tuple[str, ...], ...]
    conclusion: ConclusionKind

    @property
    def condition_names(self) -> tuple[str, ...]:
        seen: list[str] = []
        for name in self.global_conditions + tuple(c for case in self.cases for c in case):
            if name not in seen:
                seen.append(name)
        return tuple(seen)


_EQUIV_CASES_THM11 = (
    ("p-odd", "gcd-pq", "s-div-r"),
    ("p-even", "gcd-p2-q", "s-div-r4"),
    ("gcd-pq", "s-ge-3", "s-prime", "s-div-r"),
)

_EQUIV_CASES_THM12 = (
    ("p-odd", "gcd-pq", "s-div-r"),
    ("p-even", "gcd-p2-q", "s-div-r4"),
    ("gcd-pq", "s-prime", "s-div-r"),
)

REGISTRY: tuple[ClaimSpec, ...] = (
    ClaimSpec(
        ClaimId.Thm1_1_MultDiv,
        "For r != 0 and every s in N with s | r: s^k * G_n divides G_{s^k * n} "
        "for all k, n >= 0.",
        "Theorem 1.1(1)",
        ("r-nonzero",),
        (("s-div-r",),),
        ConclusionKind.MULT_DIV,
    ),
    ClaimSpec(
        ClaimId.Thm1_1_Equiv,
        "For r != 0, under any of: [p odd, (p,q)=1, s | r], [p even, (p/2,q)=1, "
        "s | r/4], [(p,q)=1, s >= 3 prime, s | r], and provided 3 does not divide "
        "both q+1 and s: s^k | n iff s^k | G_n for all k, n >= 0.",
        "Theorem 1.1(2)",
        ("r-nonzero", "mod3-guard"),
        _EQUIV_CASES_THM11,
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Thm1_2_BaseEquiv,
        "For r != 0, under any of: [p odd, (p,q)=1, s | r], [p even, (p/2,q)=1, "
        "s | r/4], [(p,q)=1, s prime, s | r]: s | n iff s | G_n for all n >= 0.",
        "Theorem 1.2(1)",
        ("r-nonzero",),
        _EQUIV_CASES_THM12,
        ConclusionKind.BASE_EQUIV,
    ),
    ClaimSpec(
        ClaimId.Thm1_2_LiftedEquiv,
        "Under the same cases as the base equivalence, if additionally s^2 never "
        "divides G_{s*t} for t not divisible by s (checked up to a bound), then "
        "s^k | n iff s^k | G_n for all k, n >= 0.",
        "Theorem 1.2(2)",
        ("r-nonzero",),
        _EQUIV_CASES_THM12,
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Cor_Square,
        "For r != 0, under [p odd, (p,q)=1, s^2 | r] or [p even, (p/2,q)=1, "
        "s^2 | r/4]: s^k | n iff s^k | G_n for all k, n >= 0.",
        "Corollary 1.3",
        ("r-nonzero",),
        (("p-odd", "gcd-pq", "s2-div-r"), ("p-even", "gcd-p2-q", "s2-div-r4")),
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Cor_Fibonacci,
        "Fibonacci (p=1, q=1), s=5: 5^k * F_n | F_{5^k * n}, and 5^k | n iff "
        "5^k | F_n, for all k, n >= 0.",
        "Corollary 1.4(1)",
        (),
        (("p-eq-1", "q-eq-1", "s-eq-5"),),
        ConclusionKind.CLASSICAL,
    ),
    ClaimSpec(
        ClaimId.Cor_Pell,
        "Pell (p=2, q=1), s=2: 2^k * P_n | P_{2^k * n}, and 2^k | n iff "
        "2^k | P_n, for all k, n >= 0.",
        "Corollary 1.4(2)",
        (),
        (("p-eq-2", "q-eq-1", "s-eq-2"),),
        ConclusionKind.CLASSICAL,
    ),
    ClaimSpec(
        ClaimId.Cor_Jacobsthal,
        "Jacobsthal (p=1, q=2), s=3: 3^k * J_n | J_{3^k * n}, and 3^k | n iff "
        "3^k | J_n, for all k, n >= 0.",
        "Corollary 1.4(3)",
        (),
        (("p-eq-1", "q-eq-2", "s-eq-3"),),
        ConclusionKind.CLASSICAL,
    ),
    ClaimSpec(
        ClaimId.Cor_Q1,
        "For q = 1 (so r = p^2 + 4), under [p odd, s | r] or [p even, s | r/4] "
        "or [s >= 3 prime, s | r]: s^k | n iff s^k | G_n for all k, n >= 0.",
        "Corollary 1.5",
        ("q-eq-1",),
        (("p-odd", "s-div-r"), ("p-even", "s-div-r4"), ("s-ge-3", "s-prime", "s-div-r")),
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Cor_P1P2,
        "Under [p = 1, s | 4q+1] or [p = 2, s | q+1], and provided 3 does not "
        "divide both q+1 and s: s^k | n iff s^k | G_n for all k, n >= 0 (the "
        "k <= 1 instances need no mod-3 proviso).",
        "Corollary 1.6",
        ("mod3-guard",),
        (("p-eq-1", "s-div-4q1"), ("p-eq-2", "s-div-q1")),
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Cor_PrimeR,
        "For q >= 1 with r = p^2 + 4q prime and s = r: r^k | n iff r^k | G_n "
        "for all k, n >= 0.",
        "Corollary 1.7(1)",
        (),
        (("q-positive", "r-prime", "s-eq-r"),),
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Cor_PrimeRover4,
        "For q >= 1, p != 0, 4 | r with r/4 prime and s = r/4: (r/4)^k | n iff "
        "(r/4)^k | G_n for all k, n >= 0.",
        "Corollary 1.7(2)",
        (),
        (("q-positive", "p-nonzero", "4-div-r", "r4-prime", "s-eq-r4"),),
        ConclusionKind.EQUIV,
    ),
    ClaimSpec(
        ClaimId.Remark_Scaled,
        "For r != 0 and s | r, the sequence with seeds (0, alpha) satisfies "
        "s^k * alpha*G_n | alpha*G_{s^k * n} for all k, n >= 0 (checked for a "
        "configured set of alpha).",
        "Remark 1.8",
        ("r-nonzero",),
        (("s-div-r",),),
        ConclusionKind.SCALED,
    ),
)

_BY_ID = {spec.claim: spec for spec in REGISTRY}
_BY_NAME = {spec.claim.value: spec for spec in REGISTRY}


def claim_spec(claim: ClaimId) -> ClaimSpec:
    return _BY_ID[claim]


def claim_by_name(name: str) -> ClaimSpec:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise InputError(f"unknown claim {name!r}; known: {sorted(_BY_NAME)}") from None


@dataclass(frozen=True)
class HypothesisReport:
    claim: ClaimId
    conditions: tuple[tuple[str, bool], ...]
    applicable: bool


def _evaluate_conditions(spec: ClaimSpec, p: int, q: int, s: int) -> dict[str, bool]:
    return {name: _CONDITIONS[name](p, q, s) for name in spec.condition_names}


def _applicable(spec: ClaimSpec, values: dict[str, bool]) -> bool:
    if not all(values[name] for name in spec.global_conditions):
        return False
    return any(all(values[name] for name in case) for case in spec.cases)


def hypothesis_check(claim: ClaimId, params: SequenceParams, s: int) -> HypothesisReport:
    """Evaluate every atomic condition of the claim and its case structure."""
    spec = _BY_ID[claim]
    values = _evaluate_conditions(spec, params.p, params.q, s)
    return HypothesisReport(
        claim=claim,
        conditions=tuple(values.items()),
        applicable=_applicable(spec, values),
    )


def applicable_claims(params: SequenceParams, s: int) -> list[ClaimId]:
    """All claims whose hypothesis holds at (p, q, s), in registry order."""
    return [spec.claim for spec in REGISTRY if hypothesis_check(spec.claim, params, s).applicable]


def _divides_g(params: SequenceParams, d: int, n: int, modular: bool) -> bool:
    """Whether d | G_n, for d >= 1."""
    if modular:
        return g_mod(params, n, d) == 0
    return divides(d, g_exact(params, n))


def _mult_div_holds(params: SequenceParams, s: int, k: int, n: int, scale: int = 1) -> bool:
    """scale*s^k*G_n | scale*G_{s^k*n}, decided via residues of the big index."""
    sk = s**k
    big = sk * n
    divisor = scale * sk * g_exact(params, n)
    if divisor == 0:
        return scale == 0 or g_is_zero(params, big)
    rem = g_mod(params, big, abs(divisor)) * scale % abs(divisor)
    return rem == 0


def _equiv_holds(params: SequenceParams, s: int, k: int, n: int, modular: bool) -> bool:
    d = abs(s**k)
    if d == 1:
        return True
    if d == 0:
        return (n == 0) == g_is_zero(params, n)
    return divides(d, n) == _divides_g(params, d, n, modular)


def conclusion_holds(
    claim: ClaimId,
    params: SequenceParams,
    s: int,
    k: int,
    n: int,
    *,
    modular: bool = False,
    scale_factors: tuple[int, ...] = DEFAULT_SCALE_FACTORS,
) -> bool:
    """Evaluate the claim's conclusion at (p, q, s, k, n).

    The hypothesis need not hold, so relaxed searches can probe failures.
    k = 0 and s = 1 are degenerate and always true.
    """
    if k < 0 or n < 0:
        raise InputError("k and n must be nonnegative")
    kind = _BY_ID[claim].conclusion
    if kind is ConclusionKind.MULT_DIV:
        return _mult_div_holds(params, s, k, n)
    if kind is ConclusionKind.EQUIV:
        return _equiv_holds(params, s, k, n, modular)
    if kind is ConclusionKind.BASE_EQUIV:
        # The claim only asserts the exponent-1 equivalence.
        return _equiv_holds(params, s, min(k, 1), n, modular)
    if kind is ConclusionKind.CLASSICAL:
        return _mult_div_holds(params, s, k, n) and _equiv_holds(params, s, k, n, modular)
    if kind is ConclusionKind.SCALED:
        return all(_mult_div_holds(params, s, k, n, scale=a) for a in scale_factors)
    raise AssertionError(kind)


@dataclass(frozen=True)
class LiftCheck:
    """Bounded check that s | t fails implies s^2 does not divide G_{s*t}."""

    holds: bool
    t_max: int
    first_failing_t: int | None = None


def thm12_lift_condition(params: SequenceParams, s: int, t_max: int) -> LiftCheck:
    """Check the lift hypothesis for all t <= t_max with s not dividing t.

    The hypothesis quantifies over all t in N; this is verified only up to
    t_max and reported as such.
    """
    if s < 2:
        raise InputError(f"lift condition needs s >= 2, got {s}")
    s2 = s * s
    for t in range(1, t_max + 1):
        if t % s == 0:
            continue
        if g_mod(params, s * t, s2) == 0:
            return LiftCheck(holds=False, t_max=t_max, first_failing_t=t)
    return LiftCheck(holds=True, t_max=t_max)


def catalog() -> list[dict]:
    """Claim catalog for documentation and the CLI (JSON-serializable)."""
    return [
        {
            "id": spec.claim.name,
            "name": spec.claim.value,
            "statement": spec.statement,
            "citation": spec.citation,
            "global_conditions": list(spec.global_conditions),
            "cases": [list(case) for case in spec.cases],
            "conclusion": spec.conclusion.value,
        }
        for spec in REGISTRY
    ]
