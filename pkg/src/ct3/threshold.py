"""Certified canonical-threshold upper bounds and floor/ceiling feasibility.

The searcher minimizes (weighted discrepancy)/(weighted multiplicity) over
weights whose exceptional divisor is certified irreducible; every value it
returns is a proven upper bound for the canonical threshold, clamped at
the global bound 1.

The feasibility engine answers: given that the threshold equals a/m, can
an auxiliary blow-up with discrepancy a' and domination ratio mu admit an
integer multiplicity m' with ceil(mu*m) <= m' <= floor(a'*m/a)?  Failures
of this test (single or paired) are the pruning steps the interval
classifier replays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd, lcm

from .blowup import (
    SingularityPresentation,
    certify_irreducible,
    try_discrepancy,
    weighted_numerator,
)
from .poly import PolySupport, is_semi_invariant
from .weights import WeightVec, admissible_multiplier


class ThresholdError(ValueError):
    """Invalid input to a threshold construction."""


class NoCertifiedWeight(RuntimeError):
    """The search space contained no certified weight within the bound."""

    def __init__(self, considered: int, refused: int):
        self.considered = considered
        self.refused = refused
        super().__init__(
            f"no certified weight found ({considered} candidates, {refused} refusals)")


def brieskorn_ct(a: int, b: int, c: int) -> Fraction | None:
    """Threshold 1/a + 1/b of x^a + y^b + z^c when c >= lcm(a, b), else None."""
    if not 2 <= a <= b <= c:
        raise ThresholdError(f"need 2 <= a <= b <= c, got ({a}, {b}, {c})")
    if c < lcm(a, b):
        return None
    return Fraction(1, a) + Fraction(1, b)


@dataclass(frozen=True)
class AuxConstraint:
    """One auxiliary blow-up comparison: discrepancy a', ratio mu, optional parity of m'."""

    a_prime: int
    mu: Fraction
    parity: int | None = None
    label: str = ""


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    violated: str | None = None

    def __bool__(self) -> bool:
        return self.feasible


def feasible_m(a: int, m: int, constraints: list[AuxConstraint]) -> Feasibility:
    """Check each constraint for an integer m' in [ceil(mu*m), floor(a'*m/a)].

    A parity residue, when present, must be met by some m' in the window.
    Returns the first violated constraint's label.
    """
    if a < 1 or m < 1:
        raise ThresholdError(f"need a, m >= 1, got a={a}, m={m}")
    for i, c in enumerate(constraints):
        lo = math.ceil(c.mu * m)
        hi = (c.a_prime * m) // a
        if c.parity is not None and lo % 2 != c.parity:
            lo += 1
        if lo > hi:
            return Feasibility(False, c.label or f"constraint #{i + 1}")
    return Feasibility(True)


def joint_feasible(a: int, m: int, c1: AuxConstraint, c2: AuxConstraint) -> bool:
    """Paired check: the two floors must jointly cover the two ceilings.

    Both auxiliary multiplicities exist simultaneously, so
    floor(a1'*m/a) + floor(a2'*m/a) >= ceil(mu1*m) + ceil(mu2*m) is
    necessary; it is strictly sharper than the two single checks when the
    ratios were engineered to sum against m.
    """
    floors = (c1.a_prime * m) // a + (c2.a_prime * m) // a
    ceils = math.ceil(c1.mu * m) + math.ceil(c2.mu * m)
    return floors >= ceils


@dataclass(frozen=True)
class BezoutSplit:
    """Positive solution of a*t = b*s + 1 with complementary a*tb = b*sb - 1."""

    s: int
    t: int
    s_bar: int
    t_bar: int


def bezout_split(a: int, b: int) -> BezoutSplit:
    """The unique split with 0 < s < a; requires 2 <= a < b coprime."""
    if a == 1:
        raise ThresholdError("a = 1 has no interior split; use the adjacent-weight bound")
    if not 2 <= a < b:
        raise ThresholdError(f"need 2 <= a < b, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise ThresholdError(f"need gcd(a, b) = 1, got gcd({a}, {b}) = {gcd(a, b)}")
    t = pow(a, -1, b)
    s = (a * t - 1) // b
    split = BezoutSplit(s, t, a - s, b - t)
    assert a * split.t == b * split.s + 1
    assert a * split.t_bar == b * split.s_bar - 1
    return split


@dataclass(frozen=True)
class CASplit:
    """Split a = a1 + a2 with 1 + a1*r1 = s1*a and 1 + a2*r2 = s2*a."""

    a1: int
    a2: int
    s1_star: int
    s2_star: int


def ca_split(r1: int, r2: int, a: int) -> CASplit:
    """The canonical split for cA weights; requires r1, r2 coprime to a >= 2."""
    if a < 2:
        raise ThresholdError(f"need a >= 2, got {a}")
    if gcd(r1, a) != 1 or gcd(r2, a) != 1:
        raise ThresholdError(f"need gcd(r1, a) = gcd(r2, a) = 1, got ({r1}, {r2}, {a})")
    if (r1 + r2) % a != 0:
        raise ThresholdError(f"need a | r1 + r2, got ({r1}, {r2}, {a})")
    a1 = (-pow(r1, -1, a)) % a
    a2 = a - a1
    s1_star, rem1 = divmod(1 + a1 * r1, a)
    s2_star, rem2 = divmod(1 + a2 * r2, a)
    assert rem1 == 0 and rem2 == 0
    split = CASplit(a1, a2, s1_star, s2_star)
    d = (r1 + r2) // a
    assert r2 * s1_star * a + r1 * s2_star * a == a * d + a * r1 * r2
    return split


@dataclass(frozen=True)
class DeltaData:
    """Slope data for cA/n weights 1/n (r1, r2, a, n) under the twist b.

    s1 = (a - b*r1)/n and s2 = (a + b*r2)/n; each 1 = q_i*r_i + s_i**s_i with
    0 <= s_i* < r_i; delta1 = -n*q1 + b*s1*, delta2 = -n*q2 - b*s2*.  The
    identities delta_i*r_i + n = a*s_i* always hold, and at least one delta
    is positive whenever a > n (in particular for every classified tuple
    with discrepancy >= 5 and bounded index).
    """

    n: int
    b: int
    r1: int
    r2: int
    a: int
    s1: int
    s2: int
    q1: int
    q2: int
    s1_star: int
    s2_star: int
    delta1: int
    delta2: int

    @property
    def positive_branch(self) -> int | None:
        if self.delta1 > 0:
            return 1
        if self.delta2 > 0:
            return 2
        return None


class DeltaError(ThresholdError):
    """The slope construction is unsolvable for the given tuple."""


def _solve_unit(r: int, s: int) -> tuple[int, int]:
    """Solve 1 = q*r + s_star*s with 0 <= s_star < r."""
    if r == 1:
        return 1, 0
    if gcd(r, abs(s)) != 1:
        raise DeltaError(f"gcd(r, s) = {gcd(r, abs(s))} != 1 for r={r}, s={s}")
    s_star = pow(s, -1, r)
    q = (1 - s_star * s) // r
    return q, s_star


def delta_data(n: int, b: int, r1: int, r2: int, a: int) -> DeltaData:
    """Build the slope data; raises DeltaError when a unit equation is unsolvable."""
    if n < 2 or not 1 <= b < n or gcd(b, n) != 1:
        raise ThresholdError(f"need n >= 2 and b in [1, n) coprime to n, got n={n}, b={b}")
    if (a - b * r1) % n != 0 or (a + b * r2) % n != 0:
        raise ThresholdError("a = b*r1 (mod n) must hold (and then n | a + b*r2)")
    s1 = (a - b * r1) // n
    s2 = (a + b * r2) // n
    q1, s1_star = _solve_unit(r1, s1)
    q2, s2_star = _solve_unit(r2, s2)
    delta1 = -n * q1 + b * s1_star
    delta2 = -n * q2 - b * s2_star
    data = DeltaData(n, b, r1, r2, a, s1, s2, q1, q2, s1_star, s2_star, delta1, delta2)
    assert data.delta1 * r1 + n == a * s1_star
    assert data.delta2 * r2 + n == a * s2_star
    return data


@dataclass(frozen=True)
class CtCandidate:
    """A certified upper bound a/m for the canonical threshold, clamped at 1."""

    value: Fraction
    a: int
    m: int
    weight: WeightVec
    family: str
    certificate: str
    clamped: bool = False


def detect_brieskorn(f: PolySupport) -> tuple[int, int, int] | None:
    """Recognize x^a + y^b + z^c (up to variable order) with 2 <= a <= b <= c."""
    if f.variable_count != 3 or len(f) != 3:
        return None
    seen = {}
    for m in f.support:
        nonzero = [(i, e) for i, e in enumerate(m.exponents) if e > 0]
        if len(nonzero) != 1:
            return None
        i, e = nonzero[0]
        if i in seen:
            return None
        seen[i] = e
    a, b, c = sorted(seen.values())
    return (a, b, c) if a >= 2 else None


def _smooth_weights(bound: int):
    seen = set()
    for a in range(1, bound):
        for b in range(a, bound):
            if 1 + a + b > bound:
                break
            if gcd(a, b) != 1 or (a == b != 1):
                continue
            for perm in permutations((1, a, b)):
                if perm not in seen:
                    seen.add(perm)
                    yield WeightVec(perm, 1)


def _index1_weights(bound: int, nvars: int):
    def rec(prefix, remaining, slots):
        if slots == 1:
            for k in range(1, remaining + 1):
                yield prefix + (k,)
            return
        for k in range(1, remaining - slots + 2):
            yield from rec(prefix + (k,), remaining - k, slots - 1)

    for ks in rec((), bound, nvars):
        yield WeightVec(ks, 1)


def _family_weights(s: SingularityPresentation, bound: int):
    p = s.params
    if p is None:
        return
    d, n = p.d, s.index
    if s.tag in ("cA", "cAn"):
        mult = admissible_multiplier(p.weight(), p.action())
        a1 = 1
        while a1 * d * n + a1 + n <= bound:
            for r1 in range(1, a1 * d * n):
                w = WeightVec((r1, a1 * d * n - r1, a1, n), n)
                if admissible_multiplier(w, s.action) is not None:
                    yield w
            a1 += 1
        del mult
    elif s.tag == "cD1":
        a1 = 1
        while a1 * d + a1 + 1 <= bound:
            if (a1 * d) % 2 == 1:
                sgm = (a1 * d - 1) // 2
                yield WeightVec((sgm + 1, sgm, a1, 1), 1)
            a1 += 1
    elif s.tag == "cD2":
        a1 = 1
        while 3 * a1 * d + a1 + 1 <= bound:
            sgm = a1 * d - 1
            yield WeightVec((sgm + 1, sgm, a1, 1, sgm + 2), 1)
            a1 += 1
    elif s.tag == "cD2q1":
        a1 = 1
        while 2 * a1 * d + a1 + 3 <= bound:
            sgm = a1 * d - 1
            if sgm % 2 == 1:
                yield WeightVec((sgm + 2, sgm, a1, 2), 2)
            a1 += 1
    elif s.tag == "cD2q2":
        a1 = 1
        while 3 * a1 * d + a1 + 2 <= bound:
            sgm = a1 * d - 2
            if sgm >= 1:
                w = WeightVec((sgm + 2, sgm, a1, 2, sgm + 4), 2)
                if admissible_multiplier(w, s.action) is not None:
                    yield w
            a1 += 1


def ct_upper_bound(s: SingularityPresentation, f: PolySupport,
                   weight_sum_bound: int) -> CtCandidate:
    """Minimize discrepancy/multiplicity over certified weights with numerator sum <= bound.

    The result is a proven upper bound for the canonical threshold of the
    pair; ties are resolved by the lexicographically smallest weight, and
    the value is clamped at the global bound 1 (curve blow-ups).
    """
    if f.variable_count != s.variable_count:
        raise ThresholdError("divisor equation does not match the presentation")
    if not is_semi_invariant(f, s.action):
        raise ThresholdError(f"divisor equation {f} is not semi-invariant")
    if weight_sum_bound < s.variable_count:
        raise ThresholdError("weight sum bound is below the ambient dimension")

    if s.tag == "sm":
        gen = _smooth_weights(weight_sum_bound)
    elif s.tag == "index1":
        gen = _index1_weights(weight_sum_bound, s.variable_count)
    else:
        gen = _family_weights(s, weight_sum_bound)

    best: tuple[Fraction, tuple[int, ...], int, int, int, WeightVec, str] | None = None
    considered = refused = 0
    for w in gen:
        if w.numerator_sum() > weight_sum_bound:
            continue
        considered += 1
        cert = certify_irreducible(s, w)
        if not cert:
            refused += 1
            continue
        a = try_discrepancy(s, w)
        if a is None or a <= 0:
            refused += 1
            continue
        m = weighted_numerator(w, f)
        if m <= 0:
            raise ThresholdError("divisor equation is a unit at the origin")
        key = (Fraction(a, m), w.k, w.n, a, m)
        if best is None or key < best[:5]:
            best = key + (w, cert.kind)
    if best is None:
        raise NoCertifiedWeight(considered, refused)
    value, _, _, a, m, w, kind = best
    if value > 1:
        return CtCandidate(Fraction(1), a, m, w, s.tag, kind, clamped=True)
    return CtCandidate(value, a, m, w, s.tag, kind, clamped=False)
