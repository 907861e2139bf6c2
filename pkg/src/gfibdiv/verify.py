"""Grid sweeps, identity checks, golden examples, counterexample search,
rank of apparition, and the exploratory converse survey.

Sweeps are embarrassingly parallel over (p, q) cells; results are merged in
canonical cell order so reports are byte-identical regardless of worker
count.  In modular mode every divisibility question "d | G_n" is decided by
a fast-doubling residue, never by exact values.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .claims import (
    ClaimId,
    ConclusionKind,
    DEFAULT_SCALE_FACTORS,
    claim_spec,
    conclusion_holds,
    hypothesis_check,
    thm12_lift_condition,
    _applicable,
    _evaluate_conditions,
)
from .errors import InputError
from .numtheory import binomial, divides, positive_divisors
from .sequences import SequenceParams, ab_exact, g_exact, g_is_zero, g_mod, g_range


class Mode(Enum):
    EXACT = "exact"
    MODULAR = "modular"


class Verdict(Enum):
    ALL_PASS = "all-pass"
    VIOLATIONS = "violations"
    NEVER_APPLICABLE = "hypothesis-never-applicable"


@dataclass(frozen=True)
class SweepConfig:
    p_range: tuple[int, int]
    q_range: tuple[int, int]
    # "divisors-of-r", "divisors-of-r4", or an explicit tuple of s values
    s_source: str | tuple[int, ...] = "divisors-of-r"
    k_max: int = 3
    n_max: int = 40
    t_max: int = 50
    mode: Mode = Mode.EXACT
    worker_count: int = 1
    time_budget_s: float | None = None


@dataclass(frozen=True)
class Counterexample:
    claim: ClaimId
    p: int
    q: int
    s: int
    k: int
    n: int
    witness: dict
    relaxed_condition: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    claim: ClaimId
    config: SweepConfig
    points_checked: int
    violations: tuple[Counterexample, ...]
    elapsed_s: float
    verdict: Verdict


def _cell_values(lo: int, hi: int) -> list[int]:
    if lo > hi:
        raise InputError(f"empty range [{lo}, {hi}]")
    return list(range(lo, hi + 1))


def _scan_values(lo: int, hi: int) -> list[int]:
    """Range values ordered by absolute value, positive before negative."""
    return sorted(range(lo, hi + 1), key=lambda v: (abs(v), v < 0))


def _resolve_s(config: SweepConfig, params: SequenceParams) -> list[int]:
    source = config.s_source
    if isinstance(source, str):
        r = params.r
        if source == "divisors-of-r":
            return positive_divisors(r) if r != 0 else []
        if source == "divisors-of-r4":
            return positive_divisors(r // 4) if r != 0 and r % 4 == 0 else []
        raise InputError(f"unknown s_source {source!r}")
    return sorted(set(source))


def _equiv_point(params: SequenceParams, d: int, n: int, modular: bool) -> tuple[bool, int]:
    """(holds, G_n mod d) for the exponent-d equivalence at index n; d >= 2."""
    if modular:
        residue = g_mod(params, n, d)
    else:
        residue = g_exact(params, n) % d
    return (n % d == 0) == (residue == 0), residue


def _sweep_cell(args) -> tuple[int, list[Counterexample]]:
    claim, config, p, q = args
    params = SequenceParams(p, q)
    spec = claim_spec(claim)
    modular = config.mode is Mode.MODULAR
    points = 0
    violations: list[Counterexample] = []
    per_point = config.k_max + 1  # k axis size
    gs: list[int] | None = None  # exact table, built once per cell when needed

    def g_table() -> list[int]:
        nonlocal gs
        if gs is None:
            gs = g_range(params, config.n_max)
        return gs

    for s in _resolve_s(config, params):
        if not hypothesis_check(claim, params, s).applicable:
            continue
        if (
            claim is ClaimId.Thm1_2_LiftedEquiv
            and s >= 2
            and not thm12_lift_condition(params, s, config.t_max).holds
        ):
            continue

        if spec.conclusion in (ConclusionKind.EQUIV, ConclusionKind.BASE_EQUIV):
            if spec.conclusion is ConclusionKind.BASE_EQUIV:
                exponents = [min(k, 1) for k in range(per_point)]
            else:
                exponents = list(range(per_point))
            # Distinct moduli are evaluated once and reused across k.
            failures: dict[int, list[tuple[int, int]]] = {}
            for d in sorted({s**e for e in exponents}):
                if d <= 1:
                    failures[d] = []
                    continue
                bad = []
                if modular:
                    for n in range(config.n_max + 1):
                        residue = g_mod(params, n, d)
                        if (n % d == 0) != (residue == 0):
                            bad.append((n, residue))
                else:
                    table = g_table()
                    for n in range(config.n_max + 1):
                        residue = table[n] % d
                        if (n % d == 0) != (residue == 0):
                            bad.append((n, residue))
                failures[d] = bad
            for k, e in enumerate(exponents):
                points += config.n_max + 1
                d = s**e
                for n, residue in failures.get(d, []):
                    violations.append(
                        Counterexample(
                            claim=claim,
                            p=p,
                            q=q,
                            s=s,
                            k=k,
                            n=n,
                            witness={
                                "s_pow": d,
                                "s_pow_divides_n": n % d == 0,
                                "s_pow_divides_g": residue == 0,
                                "g_residue": residue,
                            },
                        )
                    )
        else:
            # MULT_DIV / CLASSICAL / SCALED all need exact G_n as the divisor.
            table = g_table()
            scales = DEFAULT_SCALE_FACTORS if spec.conclusion is ConclusionKind.SCALED else (1,)
            for k in range(per_point):
                sk = s**k
                for n in range(config.n_max + 1):
                    points += 1
                    if k == 0 or s == 1:
                        continue
                    witness = None
                    for scale in scales:
                        divisor = scale * sk * table[n]
                        big = sk * n
                        if divisor == 0:
                            if not g_is_zero(params, big):
                                witness = {"divisor": 0, "index": big, "g_n": table[n], "remainder": None}
                        else:
                            rem = g_mod(params, big, abs(divisor)) * scale % abs(divisor)
                            if rem != 0:
                                witness = {
                                    "divisor": divisor,
                                    "index": big,
                                    "g_n": table[n],
                                    "remainder": rem,
                                }
                        if witness is not None:
                            break
                    if witness is None and spec.conclusion is ConclusionKind.CLASSICAL:
                        ok, residue = _equiv_point(params, sk, n, modular)
                        if not ok:
                            witness = {
                                "s_pow": sk,
                                "s_pow_divides_n": n % sk == 0,
                                "s_pow_divides_g": residue == 0,
                                "g_residue": residue,
                            }
                    if witness is not None:
                        violations.append(
                            Counterexample(claim=claim, p=p, q=q, s=s, k=k, n=n, witness=witness)
                        )
    return points, violations


def verify_claim(claim: ClaimId, config: SweepConfig) -> VerificationReport:
    """Sweep the grid; evaluate the conclusion wherever the hypothesis holds."""
    start = time.monotonic()
    cells = [
        (claim, config, p, q)
        for p in _cell_values(*config.p_range)
        for q in _cell_values(*config.q_range)
    ]
    if config.worker_count > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.worker_count) as pool:
            results = list(pool.map(_sweep_cell, cells, chunksize=max(1, len(cells) // (4 * config.worker_count))))
    else:
        results = [_sweep_cell(cell) for cell in cells]

    points = 0
    violations: list[Counterexample] = []
    for cell_points, cell_violations in results:
        points += cell_points
        violations.extend(cell_violations)
    elapsed = time.monotonic() - start
    if config.time_budget_s is not None and elapsed > config.time_budget_s:
        from .errors import ResourceLimitError

        raise ResourceLimitError(
            f"sweep took {elapsed:.1f}s, over the {config.time_budget_s:.1f}s budget"
        )
    if points == 0:
        verdict = Verdict.NEVER_APPLICABLE
    elif violations:
        verdict = Verdict.VIOLATIONS
    else:
        verdict = Verdict.ALL_PASS
    return VerificationReport(
        claim=claim,
        config=config,
        points_checked=points,
        violations=tuple(violations),
        elapsed_s=elapsed,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def _ring_mul(x: tuple[int, int], y: tuple[int, int], r: int) -> tuple[int, int]:
    """(a + b*w)(c + d*w) with w^2 = r."""
    a, b = x
    c, d = y
    return a * c + b * d * r, a * d + b * c


def _ring_pow(base: tuple[int, int], e: int, r: int) -> tuple[int, int]:
    out = (1, 0)
    while e:
        if e & 1:
            out = _ring_mul(out, base, r)
        base = _ring_mul(base, base, r)
        e >>= 1
    return out


def _b_expansion(params: SequenceParams, a: int, b: int, s: int) -> int:
    """sum over odd t <= s of C(s,t) * a^(s-t) * b^t * r^((t-1)/2)."""
    r = params.r
    total = 0
    for t in range(1, s + 1, 2):
        total += binomial(s, t) * a ** (s - t) * b**t * r ** ((t - 1) // 2)
    return total


def _half_expansion(params: SequenceParams, n: int, parity: int) -> int:
    """sum over t = parity mod 2, t <= n, of C(n,t) * (p/2)^(n-t) * (r/4)^(t//2 or (t-1)//2)."""
    ph = params.p // 2
    rh = params.r // 4
    total = 0
    for t in range(parity, n + 1, 2):
        exp = t // 2 if parity == 0 else (t - 1) // 2
        total += binomial(n, t) * ph ** (n - t) * rh**exp
    return total


@dataclass
class IdentityResult:
    name: str
    passed: bool
    checked: int
    first_failure: dict | None = None


def identity_suite(
    params: SequenceParams, n_max: int, s_list: list[int]
) -> list[IdentityResult]:
    """Exact checks of the companion-pair identities up to n_max.

    Identities: the quadratic-ring closed form (p + w)^n = A_n + B_n*w with
    w^2 = r; the bridge B_n = 2^(n-1) G_n; the power step (A_n + B_n*w)^s =
    A_{sn} + B_{sn}*w; the odd-term binomial expansions of B_{sn} and B_n;
    A_n^2 = 4^(n-1) r G_n^2 + (-4q)^n; and, for even p, the expansions of
    G_n and A_n/2^n in p/2 and r/4 (the latter exactly integral).
    """
    if n_max < 1:
        raise InputError("n_max must be >= 1")
    r = params.r
    p_even = params.p % 2 == 0
    names = [
        "closed-form-pair",
        "b-to-g-bridge",
        "power-step",
        "bsn-expansion",
        "bn-expansion",
        "quadratic",
    ]
    if p_even:
        names += ["g-half-expansion", "a-half-integer"]
    results = {name: IdentityResult(name, True, 0) for name in names}

    def check(name: str, ok: bool, context: dict) -> None:
        res = results[name]
        res.checked += 1
        if not ok and res.first_failure is None:
            res.passed = False
            res.first_failure = context

    gs = g_range(params, n_max * max(s_list + [1]))
    abs_ = [ab_exact(params, n) for n in range(n_max + 1)]
    ab_big = {}

    def ab_at(n: int):
        if n <= n_max:
            return abs_[n]
        if n not in ab_big:
            ab_big[n] = ab_exact(params, n)
        return ab_big[n]

    for n in range(1, n_max + 1):
        a_n, b_n = abs_[n].a, abs_[n].b
        pw = _ring_pow((params.p, 1), n, r)
        check("closed-form-pair", pw == (a_n, b_n), {"n": n, "got": pw, "want": (a_n, b_n)})
        check(
            "b-to-g-bridge",
            b_n == 2 ** (n - 1) * gs[n],
            {"n": n, "b_n": b_n, "g_n": gs[n]},
        )
        expansion = _b_expansion(params, params.p, 1, n)
        check("bn-expansion", expansion == b_n, {"n": n, "got": expansion, "want": b_n})
        quad = a_n * a_n == 4 ** (n - 1) * r * gs[n] ** 2 + (-4 * params.q) ** n
        check("quadratic", quad, {"n": n, "a_n": a_n, "g_n": gs[n]})
        for s in s_list:
            target = ab_at(s * n)
            pw_s = _ring_pow((a_n, b_n), s, r)
            check(
                "power-step",
                pw_s == (target.a, target.b),
                {"n": n, "s": s, "got": pw_s, "want": (target.a, target.b)},
            )
            bsn = _b_expansion(params, a_n, b_n, s)
            check("bsn-expansion", bsn == target.b, {"n": n, "s": s, "got": bsn, "want": target.b})
        if p_even:
            g_half = _half_expansion(params, n, parity=1)
            check("g-half-expansion", g_half == gs[n], {"n": n, "got": g_half, "want": gs[n]})
            ok = a_n % 2**n == 0 and a_n // 2**n == _half_expansion(params, n, parity=0)
            check("a-half-integer", ok, {"n": n, "a_n": a_n})
    return list(results.values())


# ---------------------------------------------------------------------------
# Golden examples
# ---------------------------------------------------------------------------

# (example id, p, q, list of (index, G value), list of (divisor, dividend, divides?))
_GOLDEN = (
    ("2.1", 1, 1, [(3, 2)], [(3, "G", 3, False)]),
    ("2.2", 3, 9, [(2, 3)], [(3, "G", 2, True), (3, "n", 2, False)]),
    (
        "2.3",
        4,
        1,
        [(10, 416020), (2, 4)],
        [(20, "G", 10, True), (20, "n", 10, False), (4, "G", 2, True), (4, "n", 2, False)],
    ),
    (
        "2.4",
        4,
        4,
        [(2, 4), (3, 20)],
        [(4, "G", 2, True), (4, "n", 2, False), (2, "G", 3, True), (2, "n", 3, False)],
    ),
    ("2.5", 5, 2, [(3, 27)], [(9, "G", 3, True), (9, "n", 3, False)]),
    ("2.6", 2, 5, [(3, 9)], [(9, "G", 3, True), (9, "n", 3, False)]),
    (
        "2.7",
        2,
        2,
        [(6, 120), (3, 6)],
        [(12, "G", 6, True), (12, "n", 6, False), (2, "G", 3, True), (2, "n", 3, False)],
    ),
    ("2.8", 4, 2, [(3, 18)], [(6, "G", 3, True), (6, "n", 3, False)]),
    ("2.9", 1, 8, [(3, 9)], [(9, "G", 3, True), (9, "n", 3, False)]),
    ("2.10", 0, 2, [(3, 2)], [(2, "G", 3, True), (2, "n", 3, False)]),
    ("2.11", 5, -5, [(2, 5)], [(5, "G", 2, True), (5, "n", 2, False)]),
    ("2.12", 4, -2, [(3, 14)], [(2, "G", 3, True), (2, "n", 3, False)]),
)


@dataclass
class ExampleResult:
    example: str
    p: int
    q: int
    expected: dict
    observed: dict
    passed: bool


def reproduce_examples() -> list[ExampleResult]:
    """Recompute each quoted sequence value and divisibility fact."""
    out = []
    for ex_id, p, q, values, facts in _GOLDEN:
        params = SequenceParams(p, q)
        expected: dict = {}
        observed: dict = {}
        ok = True
        for n, want in values:
            got = g_exact(params, n)
            expected[f"G_{n}"] = want
            observed[f"G_{n}"] = got
            ok = ok and got == want
        for d, target, n, want in facts:
            if target == "G":
                got = divides(d, g_exact(params, n))
                key = f"{d}|G_{n}"
            else:
                got = divides(d, n)
                key = f"{d}|{n}"
            expected[key] = want
            observed[key] = got
            ok = ok and got == want
        out.append(ExampleResult(ex_id, p, q, expected, observed, ok))
    return out


# ---------------------------------------------------------------------------
# Counterexample search
# ---------------------------------------------------------------------------


def iter_counterexamples(claim: ClaimId, relaxed_condition: str, bounds: SweepConfig):
    """Yield counterexamples in scan order: |p|, |q|, s, n, k; positive first.

    A point qualifies when every hypothesis condition of some case holds
    except the relaxed one (which must fail), the full hypothesis is not
    applicable, and the conclusion is false.
    """
    spec = claim_spec(claim)
    if relaxed_condition not in spec.condition_names:
        raise InputError(
            f"{relaxed_condition!r} is not a condition of {claim.value}; "
            f"conditions: {list(spec.condition_names)}"
        )
    for p in _scan_values(*bounds.p_range):
        for q in _scan_values(*bounds.q_range):
            params = SequenceParams(p, q)
            for s in _resolve_s(bounds, params):
                values = _evaluate_conditions(spec, p, q, s)
                if values[relaxed_condition]:
                    continue
                if _applicable(spec, values):
                    continue
                reinstated = dict(values)
                reinstated[relaxed_condition] = True
                if not _applicable(spec, reinstated):
                    continue
                gs = g_range(params, bounds.n_max)
                for n in range(bounds.n_max + 1):
                    for k in range(bounds.k_max + 1):
                        if conclusion_holds(claim, params, s, k, n):
                            continue
                        yield Counterexample(
                            claim=claim,
                            p=p,
                            q=q,
                            s=s,
                            k=k,
                            n=n,
                            witness=_search_witness(spec, params, gs, s, k, n),
                            relaxed_condition=relaxed_condition,
                        )


def _search_witness(spec, params: SequenceParams, gs: list[int], s: int, k: int, n: int) -> dict:
    sk = s**k
    if spec.conclusion in (ConclusionKind.EQUIV, ConclusionKind.BASE_EQUIV, ConclusionKind.CLASSICAL):
        d = sk if spec.conclusion is not ConclusionKind.BASE_EQUIV else s ** min(k, 1)
        return {
            "s_pow": d,
            "s_pow_divides_n": divides(d, n),
            "s_pow_divides_g": divides(d, gs[n]),
            "g_n": gs[n],
        }
    return {
        "divisor": sk * gs[n],
        "index": sk * n,
        "g_n": gs[n],
        "dividend_g": g_exact(params, sk * n),
    }


def search_counterexample(
    claim: ClaimId, relaxed_condition: str, bounds: SweepConfig
) -> Counterexample | None:
    """First counterexample in scan order, or None."""
    return next(iter_counterexamples(claim, relaxed_condition, bounds), None)


# ---------------------------------------------------------------------------
# Rank of apparition and converse survey
# ---------------------------------------------------------------------------


def rank_of_apparition(params: SequenceParams, s: int, n_bound: int) -> int | None:
    """Smallest n in [1, n_bound] with s | G_n, by a modular linear scan."""
    if s < 2:
        raise InputError(f"rank of apparition needs s >= 2, got {s}")
    p, q = params.p % s, params.q % s
    a, b = 0, 1 % s
    for n in range(1, n_bound + 1):
        a, b = b, (p * b + q * a) % s
        if a == 0:
            return n
    return None


@dataclass
class SurveyRow:
    p: int
    q: int
    s: int
    smallest_violating_n: int
    failing_conditions: tuple[str, ...]


@dataclass
class SurveyReport:
    note: str
    config: SweepConfig
    rows: tuple[SurveyRow, ...]


_SURVEY_NOTE = (
    "Exploratory data only: sufficient conditions for the equivalence "
    "s | n <=> s | G_n are known, but a full characterization of when it "
    "holds is an open question.  Rows list (p, q, s) with s dividing r (or "
    "r/4) where the equivalence fails within the bound, with the failing "
    "hypothesis conditions of the base-equivalence claim."
)


def converse_survey(bounds: SweepConfig) -> SurveyReport:
    """Catalog where the base equivalence fails although s divides r (or r/4)."""
    spec = claim_spec(ClaimId.Thm1_2_BaseEquiv)
    modular = bounds.mode is Mode.MODULAR
    rows = []
    for p in _cell_values(*bounds.p_range):
        for q in _cell_values(*bounds.q_range):
            params = SequenceParams(p, q)
            if params.r == 0:
                continue
            for s in _resolve_s(bounds, params):
                if s < 2:
                    continue
                smallest = None
                for n in range(bounds.n_max + 1):
                    ok, _ = _equiv_point(params, s, n, modular)
                    if not ok:
                        smallest = n
                        break
                if smallest is None:
                    continue
                values = _evaluate_conditions(spec, p, q, s)
                failing = tuple(name for name, held in values.items() if not held)
                rows.append(SurveyRow(p, q, s, smallest, failing))
    return SurveyReport(note=_SURVEY_NOTE, config=bounds, rows=tuple(rows))
