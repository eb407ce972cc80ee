"""Interval classification of canonical-threshold candidates by named pruning rules.

For a family tag and a rational interval, the classifier enumerates every
parameter tuple together with every integer multiplicity m whose ratio
(discrepancy)/m lies in the interval, then replays a pipeline of pruning
rules.  Rules come in two kinds:

  probes   a low-discrepancy auxiliary blow-up caps the auxiliary
           multiplicity, forcing the divisor to contain one of finitely
           many cheap monomials; every branch either contradicts m or
           pins down the divisor's character;
  bounds   floor/ceiling window checks (single or paired) for the
           auxiliary multiplicities, with character-derived parity.

Rules only ever shrink the feasible set and all derived facts are
monotone, so the pipeline is iterated to a fixpoint and the survivor set
is independent of rule order (traces are not).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import (
    SingularityPresentation,
    certify_irreducible,
    model,
    try_discrepancy,
    weighted_numerator,
)
from .poly import Monomial, PolySupport, diagram_contains, gamma_plus, is_semi_invariant
from .threshold import (
    AuxConstraint,
    DeltaError,
    bezout_split,
    ca_split,
    delta_data,
    feasible_m,
    joint_feasible,
)
from .weights import (
    CAParams,
    CAnParams,
    CD1Params,
    CD2Params,
    CD2q1Params,
    CD2q2Params,
    FamilyBounds,
    FamilyError,
    FamilyParams,
    FAMILY_TAGS,
    SmoothParams,
    WeightVec,
    admissible_multiplier,
    auxiliary_weight,
    domination_ratio,
    enumerate_family,
)


class ClassifyError(ValueError):
    """Invalid classification request."""


@dataclass(frozen=True)
class IntervalSpec:
    """An open rational interval (lo, hi) inside (0, 1]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 < self.lo < self.hi <= 1):
            raise ClassifyError(f"need 0 < lo < hi <= 1, got ({self.lo}, {self.hi})")

    @classmethod
    def reciprocal_window(cls, k: int) -> "IntervalSpec":
        """The window (1/k, 1/(k-1)) for an integer k >= 2."""
        if k < 2:
            raise ClassifyError(f"need k >= 2, got {k}")
        return cls(Fraction(1, k), Fraction(1, k - 1))

    def contains(self, q: Fraction) -> bool:
        return self.lo < q < self.hi

    def multiplicities(self, a: int) -> list[int]:
        """Integers m with a/m strictly inside the interval and a not dividing m."""
        m_min = math.floor(Fraction(a, 1) / self.hi) + 1
        m_max = math.ceil(Fraction(a, 1) / self.lo) - 1
        return [m for m in range(m_min, m_max + 1) if m % a != 0]

    def as_pair(self) -> tuple[str, str]:
        return (_frac_str(self.lo), _frac_str(self.hi))


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class CaseState:
    """Classification state for one parameter tuple, in range or point mode.

    In range mode (m is None) the state stands for every multiplicity in
    [m_min, m_max]; probes may prune the whole range or pin the divisor
    character.  In point mode all rules apply.
    """

    params: FamilyParams
    interval: IntervalSpec
    w: WeightVec
    mdl: SingularityPresentation
    a: int
    m_min: int
    m_max: int
    m: int | None = None
    chi: int | None = None
    alive: bool = True
    steps: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    noted: set = field(default_factory=set)

    @property
    def action(self):
        return self.mdl.action

    def m_low(self) -> int:
        return self.m if self.m is not None else self.m_min

    def m_high(self) -> int:
        return self.m if self.m is not None else self.m_max

    def prune(self, rule: str, note: str):
        self.alive = False
        self.steps.append({"rule": rule, "outcome": "pruned", "note": note})

    def record(self, rule: str, note: str):
        if (rule, note) in self.noted:
            return
        self.noted.add((rule, note))
        self.steps.append({"rule": rule, "outcome": "note", "note": note})

    def flag(self, rule: str, note: str):
        if ("flag", rule, note) in self.noted:
            return
        self.noted.add(("flag", rule, note))
        self.flags.append(f"{rule}: {note}")
        self.steps.append({"rule": rule, "outcome": "flagged", "note": note})

    def point_copy(self, m: int) -> "CaseState":
        st = CaseState(self.params, self.interval, self.w, self.mdl, self.a,
                       self.m_min, self.m_max, m=m, chi=self.chi)
        st.steps = list(self.steps)
        st.flags = list(self.flags)
        st.noted = set(self.noted)
        return st


def _weight_num(w: WeightVec, m: Monomial) -> int:
    return sum(e * k for e, k in zip(m.exponents, w.k))


def _monomials_up_to(w: WeightVec, cap: int) -> list[Monomial]:
    """Non-constant monomials whose numerator weight under ``w`` is <= cap."""
    out: list[Monomial] = []

    def rec(i: int, prefix: tuple[int, ...], remaining: int):
        if i == len(w.k):
            if any(prefix):
                out.append(Monomial(prefix))
            return
        step = w.k[i]
        e = 0
        while e * step <= remaining:
            rec(i + 1, prefix + (e,), remaining - e * step)
            e += 1

    rec(0, (), cap)
    return sorted(out)


def _aux_discrepancy(st: CaseState, rule: str, wp: WeightVec) -> int | None:
    """Discrepancy of an auxiliary weight over the model; flags invalid recipes.

    Family-shaped auxiliary weights certify irreducibility only below the
    presentation's own discrepancy, so recipes must stay under it; smooth
    auxiliary blow-ups are irreducible at any discrepancy.
    """
    ap = try_discrepancy(st.mdl, wp)
    if ap is None or ap <= 0:
        st.flag(rule, f"auxiliary weight {wp} is not a valid blow-up datum here")
        return None
    if st.mdl.tag != "sm" and ap >= st.a:
        st.flag(rule, f"auxiliary weight {wp} has discrepancy {ap} >= {st.a}")
        return None
    return ap


def _probe(st: CaseState, rule: str, wp: WeightVec) -> bool:
    """Force divisor membership through a capped auxiliary multiplicity."""
    if not st.alive:
        return False
    ap = _aux_discrepancy(st, rule, wp)
    if ap is None:
        return False
    cap = (ap * st.m_high()) // st.a
    cands = _monomials_up_to(wp, cap)
    if st.chi is not None:
        cands = [c for c in cands if st.action.character(c) == st.chi]
    alive = [c for c in cands if _weight_num(st.w, c) >= st.m_low()]
    if not alive:
        st.prune(rule, f"aux {wp} (disc {ap}) caps its multiplicity at {cap}; "
                       "every candidate divisor monomial contradicts m")
        return True
    changed = False
    if st.action.n > 1 and st.chi is None:
        chis = {st.action.character(c) for c in alive}
        if len(chis) == 1:
            st.chi = chis.pop()
            st.record(rule, f"aux {wp} pins the divisor character to {st.chi} (mod {st.action.n})")
            changed = True
    if st.m is not None and len(alive) == 1:
        st.record(rule, f"aux {wp} forces {alive[0]} into the divisor (m <= {_weight_num(st.w, alive[0])})")
    return changed


def _bound(st: CaseState, rule: str, aux_weights: list[WeightVec], joint: bool = True) -> bool:
    """Floor/ceiling window check for the auxiliary multiplicities (point mode)."""
    if not st.alive or st.m is None:
        return False
    constraints = []
    for wp in aux_weights:
        ap = _aux_discrepancy(st, rule, wp)
        if ap is None:
            return False
        mu = domination_ratio(wp, st.w)
        parity = None
        if st.chi is not None and st.action.n == 2:
            parity = (admissible_multiplier(wp, st.action) * st.chi) % 2
        constraints.append(AuxConstraint(ap, mu, parity, label=f"{rule} {wp}"))
    res = feasible_m(st.a, st.m, constraints)
    if not res.feasible:
        st.prune(rule, f"no integer multiplicity fits the window of {res.violated}")
        return True
    if joint and len(constraints) == 2 and not joint_feasible(st.a, st.m, *constraints):
        st.prune(rule, "the two windows cannot be met simultaneously")
        return True
    return False


@dataclass(frozen=True)
class PruneRule:
    """A named, pure pruning rule; applicability is checked inside ``fn``."""

    name: str
    fn: object

    def run(self, st: CaseState) -> bool:
        return bool(self.fn(st))


# --- smooth pipeline -------------------------------------------------------

def _sm_bezout_pair(st: CaseState) -> bool:
    p = st.params
    if p.a < 2:
        return False
    sp = bezout_split(p.a, p.b)
    return _bound(st, "sm-bezout-pair",
                  [WeightVec((1, sp.s, sp.t)), WeightVec((1, sp.s_bar, sp.t_bar))])


def _sm_adjacent_bound(st: CaseState) -> bool:
    p = st.params
    if p.a != 1:
        return False
    return _bound(st, "sm-adjacent-bound", [WeightVec((1, 1, p.b - 1))])


# --- cA pipeline -----------------------------------------------------------

def _ca_interior_probe(st: CaseState) -> bool:
    d = st.params.d
    if d < 4:
        return False
    return _probe(st, "cA-interior-probe", WeightVec((d - 2, 2, 1, 1)))


def _ca_d3_probe(st: CaseState) -> bool:
    if st.params.d != 3:
        return False
    return _probe(st, "cA-d3-probe", WeightVec((1, 2, 1, 1)))


def _ca_ordinary_probe(st: CaseState) -> bool:
    if st.params.d != 2:
        return False
    return _probe(st, "cA-ordinary-probe", WeightVec((1, 1, 1, 1)))


def _ca_split_bound(st: CaseState) -> bool:
    p = st.params
    if min(p.r1, p.r2) < 2 or p.a < 2:
        return False
    sp = ca_split(p.r1, p.r2, p.a)
    w1 = WeightVec((sp.s1_star, p.r2 - sp.s2_star, sp.a1, 1))
    w2 = WeightVec((p.r1 - sp.s1_star, sp.s2_star, sp.a2, 1))
    return _bound(st, "cA-split-bound", [w1, w2])


def _ca_near_family_bound(st: CaseState) -> bool:
    p = st.params
    if p.r1 != 1 or p.a < 2 or p.d * (p.a - 1) < 2:
        return False
    wp = WeightVec((1, p.d * (p.a - 1) - 1, p.a - 1, 1))
    return _bound(st, "cA-near-family-bound", [wp])


# --- cA/n pipeline ---------------------------------------------------------

def _can_inverse_probe(st: CaseState) -> bool:
    p = st.params
    if p.b in (1, p.n - 1):
        return False
    b_star = pow(p.b, -1, p.n)
    wp = WeightVec((b_star, p.d * p.n - b_star, 1, p.n), p.n)
    return _probe(st, "cAn-inverse-probe", wp)


def _can_coarse_probe(st: CaseState) -> bool:
    p = st.params
    if p.b != 1:
        return False
    if not ((p.n >= 3 and p.d >= 2) or (p.n == 2 and p.d >= 3)):
        return False
    wp = WeightVec((p.n + 1, p.d * p.n - p.n - 1, 1, p.n), p.n)
    return _probe(st, "cAn-coarse-probe", wp)


def _can_unit_probe(st: CaseState) -> bool:
    p = st.params
    if p.b != 1:
        return False
    return _probe(st, "cAn-unit-probe", WeightVec((1, p.d * p.n - 1, 1, p.n), p.n))


def _can_index3_probe(st: CaseState) -> bool:
    p = st.params
    if p.b != 1 or p.n < 3 or p.a <= 3:
        return False
    k2 = 3 * p.d * p.n - p.n - 3
    if k2 < 1:
        return False
    wp = WeightVec((p.n + 3, k2, 3, p.n), p.n)
    return _probe(st, "cAn-index3-probe", wp)


def _can_d2_probe(st: CaseState) -> bool:
    p = st.params
    if p.b != 1 or p.n != 2 or p.d != 2:
        return False
    return _probe(st, "cAn-d2-probe", WeightVec((3, 1, 1, 2), 2))


def _can_parity(st: CaseState) -> bool:
    if not st.alive or st.m is None or st.chi is None:
        return False
    c = admissible_multiplier(st.w, st.action)
    if (st.m - c * st.chi) % st.action.n != 0:
        st.prune("cAn-parity",
                 f"m = {st.m} is incompatible with the divisor character {st.chi} (mod {st.action.n})")
        return True
    return False


def _can_delta_bound(st: CaseState) -> bool:
    p = st.params
    if st.m is None:
        return False
    try:
        data = delta_data(p.n, p.b, p.r1, p.r2, p.a)
    except DeltaError as exc:
        st.flag("cAn-delta-bound", f"slope data unavailable: {exc}")
        return False
    branch = data.positive_branch
    if branch is None:
        st.flag("cAn-delta-bound", "no positive slope; bound not applicable")
        return False
    dn = p.d * p.n
    try:
        if branch == 1:
            w1 = WeightVec((p.r1 - data.s1_star, p.r2 - data.delta1 * dn + data.s1_star,
                            p.a - data.delta1, p.n), p.n)
            w2 = WeightVec((data.s1_star, data.delta1 * dn - data.s1_star,
                            data.delta1, p.n), p.n)
        else:
            w1 = WeightVec((p.r1 - data.delta2 * dn + data.s2_star, p.r2 - data.s2_star,
                            p.a - data.delta2, p.n), p.n)
            w2 = WeightVec((data.delta2 * dn - data.s2_star, data.s2_star,
                            data.delta2, p.n), p.n)
    except FamilyError:
        # Degenerate split (e.g. r1 = 1): the lower bound is vacuous below the interval.
        st.record("cAn-delta-bound", "split weight degenerates; bound vacuous here")
        return False
    return _bound(st, "cAn-delta-bound", [w1, w2])


def _can_drop2_bound(st: CaseState) -> bool:
    p = st.params
    if p.n != 2 or p.b != 1 or st.m is None:
        return False
    k2 = p.r2 - 2 * p.d * p.n
    if k2 < 1 or p.a - 2 < 1:
        return False
    wp = WeightVec((p.r1, k2, p.a - 2, 2), 2)
    return _bound(st, "cAn-drop2-bound", [wp])


def _can_r3_bound(st: CaseState) -> bool:
    p = st.params
    if p.n != 2 or p.b != 1 or p.d != 1 or p.r1 != 3:
        return False
    if p.a % 6 == 1 and p.a >= 7:
        t = (p.a - 1) // 6
        wp = WeightVec((1, 4 * t + 1, 2 * t + 1, 2), 2)
    elif p.a % 6 == 5:
        t = (p.a - 5) // 6
        wp = WeightVec((2, 8 * t + 6, 4 * t + 4, 2), 2)
    else:
        return False
    return _bound(st, "cAn-r3-bound", [wp])


def _can_index_cap(st: CaseState) -> bool:
    p = st.params
    if p.n < 4 or p.a <= 3:
        return False
    b_star = pow(p.b, -1, p.n)
    base = (3 * b_star) % p.n
    if base == 0:
        return False
    s1p = base + p.n
    s2p = 3 * p.d * p.n - s1p
    if s2p <= p.n:
        return False
    wp = WeightVec((s1p, s2p, 3, p.n), p.n)
    return _probe(st, "cAn-index-cap", wp)


# --- cD pipelines ----------------------------------------------------------

def _cd1_interior_probe(st: CaseState) -> bool:
    d = st.params.d
    return _probe(st, "cD1-interior-probe", WeightVec(((d + 1) // 2, (d - 1) // 2, 1, 1)))


def _cd1_pair_bound(st: CaseState) -> bool:
    p = st.params
    if p.d != 3 or p.r - 3 < 1 or p.a - 2 < 1:
        return False
    w1 = WeightVec((3, 3, 2, 1))
    w2 = WeightVec((p.r - 2, p.r - 3, p.a - 2, 1))
    return _bound(st, "cD1-pair-bound", [w1, w2])


def _cd2_unit_probe(st: CaseState) -> bool:
    d = st.params.d
    return _probe(st, "cD2-unit-probe", WeightVec((d, d, 1, 1, d)))


def _cdq1_interior_probe(st: CaseState) -> bool:
    d = st.params.d
    return _probe(st, "cDq1-interior-probe", WeightVec((d + 1, d - 1, 1, 2), 2))


def _cdq1_pair_bound(st: CaseState) -> bool:
    p = st.params
    if p.d != 2 or p.r - 4 < 1 or p.a - 2 < 1:
        return False
    w1 = WeightVec((4, 4, 2, 2), 2)
    w2 = WeightVec((p.r - 2, p.r - 4, p.a - 2, 2), 2)
    return _bound(st, "cDq1-pair-bound", [w1, w2])


def _cdq2_even_probe(st: CaseState) -> bool:
    d = st.params.d
    wp = WeightVec((2 * d, 2 * d - 2, 2, 2, 2 * d + 2), 2)
    return _probe(st, "cDq2-even-probe", wp)


PIPELINES: dict[str, list[PruneRule]] = {
    "sm": [
        PruneRule("sm-bezout-pair", _sm_bezout_pair),
        PruneRule("sm-adjacent-bound", _sm_adjacent_bound),
    ],
    "cA": [
        PruneRule("cA-interior-probe", _ca_interior_probe),
        PruneRule("cA-d3-probe", _ca_d3_probe),
        PruneRule("cA-ordinary-probe", _ca_ordinary_probe),
        PruneRule("cA-split-bound", _ca_split_bound),
        PruneRule("cA-near-family-bound", _ca_near_family_bound),
    ],
    "cAn": [
        PruneRule("cAn-inverse-probe", _can_inverse_probe),
        PruneRule("cAn-coarse-probe", _can_coarse_probe),
        PruneRule("cAn-unit-probe", _can_unit_probe),
        PruneRule("cAn-index3-probe", _can_index3_probe),
        PruneRule("cAn-d2-probe", _can_d2_probe),
        PruneRule("cAn-parity", _can_parity),
        PruneRule("cAn-delta-bound", _can_delta_bound),
        PruneRule("cAn-drop2-bound", _can_drop2_bound),
        PruneRule("cAn-r3-bound", _can_r3_bound),
        PruneRule("cAn-index-cap", _can_index_cap),
    ],
    "cD1": [
        PruneRule("cD1-interior-probe", _cd1_interior_probe),
        PruneRule("cD1-pair-bound", _cd1_pair_bound),
    ],
    "cD2": [
        PruneRule("cD2-unit-probe", _cd2_unit_probe),
    ],
    "cD2q1": [
        PruneRule("cDq1-interior-probe", _cdq1_interior_probe),
        PruneRule("cDq1-pair-bound", _cdq1_pair_bound),
    ],
    "cD2q2": [
        PruneRule("cDq2-even-probe", _cdq2_even_probe),
    ],
}


def _canonical_params(p: FamilyParams) -> FamilyParams:
    """Quotient the x <-> y symmetry: swap the two heavy weights canonically."""
    if isinstance(p, CAParams) and p.r1 > p.r2:
        return CAParams(p.r2, p.r1, p.a, p.d)
    if isinstance(p, CAnParams):
        alt = CAnParams(p.n, p.n - p.b, p.r2, p.r1, p.a, p.d)
        return min((p, alt), key=lambda q: (q.b != 1, q.b, q.r1))
    return p


def _fixpoint(st: CaseState, rules: list[PruneRule]):
    while st.alive:
        changed = False
        for rule in rules:
            if not st.alive:
                return
            changed = rule.run(st) or changed
        if not changed:
            return


@dataclass(frozen=True)
class Survivor:
    params: FamilyParams
    m: int
    ct: Fraction
    trace: tuple[dict, ...]
    flags: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"ct": _frac_str(self.ct), "params": self.params.as_dict(), "m": self.m,
                "flags": list(self.flags), "trace": list(self.trace)}


@dataclass
class ClassifyReport:
    family: str
    interval: IntervalSpec
    survivors: list[Survivor]
    pruned_count: int
    evaluated_count: int
    pruned_traces: list[dict] = field(default_factory=list)

    def survivor_values(self) -> list[Fraction]:
        return sorted({s.ct for s in self.survivors}, reverse=True)

    def to_dict(self, include_traces: bool = True) -> dict:
        out = {
            "interval": list(self.interval.as_pair()),
            "family": self.family,
            "survivors": [s.to_dict() if include_traces else
                          {k: v for k, v in s.to_dict().items() if k != "trace"}
                          for s in self.survivors],
            "pruned_count": self.pruned_count,
            "evaluated_count": self.evaluated_count,
        }
        return out


def classify_interval(family: str, interval: IntervalSpec, bounds: FamilyBounds, *,
                      min_discrepancy: int = 5, rule_order: list[int] | None = None,
                      keep_pruned_traces: bool = False) -> ClassifyReport:
    """Classify all (params, m) pairs of ``family`` whose ratio lies in the interval.

    Rules are iterated to a fixpoint per tuple, so permuting ``rule_order``
    changes traces but never the survivor set.  Parameter tuples related by
    the x <-> y symmetry are canonicalized and processed once.
    """
    if family not in FAMILY_TAGS:
        raise ClassifyError(f"unknown family {family!r}")
    rules = list(PIPELINES[family])
    if rule_order is not None:
        if sorted(rule_order) != list(range(len(rules))):
            raise ClassifyError("rule_order must be a permutation of the pipeline indices")
        rules = [rules[i] for i in rule_order]

    survivors: list[Survivor] = []
    pruned = 0
    evaluated = 0
    pruned_traces: list[dict] = []
    seen: set = set()
    for params in enumerate_family(family, bounds, min_discrepancy=min_discrepancy):
        canon = _canonical_params(params)
        if canon in seen:
            continue
        seen.add(canon)
        a = canon.discrepancy
        ms = interval.multiplicities(a)
        if not ms:
            continue
        evaluated += len(ms)
        base = CaseState(canon, interval, canon.weight(), model(canon), a,
                         ms[0], ms[-1])
        _fixpoint(base, rules)
        if not base.alive:
            pruned += len(ms)
            if keep_pruned_traces:
                pruned_traces.append({"params": canon.as_dict(), "m": ms,
                                      "trace": list(base.steps)})
            continue
        for m in ms:
            st = base.point_copy(m)
            _fixpoint(st, rules)
            if st.alive:
                survivors.append(Survivor(canon, m, Fraction(a, m),
                                          tuple(st.steps), tuple(st.flags)))
            else:
                pruned += 1
                if keep_pruned_traces:
                    pruned_traces.append({"params": canon.as_dict(), "m": [m],
                                          "trace": list(st.steps)})
    survivors.sort(key=lambda s: (sorted(s.params.as_dict().items()).__repr__(), s.m))
    return ClassifyReport(family, interval, survivors, pruned, evaluated, pruned_traces)


def half_plus_unit(q: Fraction) -> int | None:
    """If q = 1/2 + 1/t for an integer t >= 3, return t."""
    rest = q - Fraction(1, 2)
    if rest <= 0 or rest.numerator != 1:
        return None
    t = rest.denominator
    return t if t >= 3 else None


@dataclass(frozen=True)
class UnionEntry:
    value: Fraction
    sources: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"value": _frac_str(self.value), "sources": list(self.sources)}


def union_report(interval: IntervalSpec, bounds: FamilyBounds, *,
                 denom_max: int = 60, min_discrepancy: int = 5,
                 family_values: dict[str, list[Fraction]] | None = None) -> list[UnionEntry]:
    """Merge the low-discrepancy value set, family survivors, and known values.

    The low-discrepancy set {q/m : q <= 4} is materialized up to
    ``denom_max``; the series 1/2 + 1/t (realized by double-point
    suspensions x^2 + y^t + z^c) and the known quotient example 4/5 are
    tagged as realized values.  Entries are sorted strictly descending.
    Pass ``family_values`` to reuse already-computed survivor values.
    """
    tags: dict[Fraction, set[str]] = {}

    def add(value: Fraction, tag: str):
        if interval.contains(value):
            tags.setdefault(value, set()).add(tag)

    for q in range(1, 5):
        for den in range(1, denom_max + 1):
            add(Fraction(q, den), "aleph4")
    for fam in FAMILY_TAGS:
        if family_values is not None and fam in family_values:
            values = family_values[fam]
        else:
            report = classify_interval(fam, interval, bounds, min_discrepancy=min_discrepancy)
            values = report.survivor_values()
        for v in values:
            add(v, f"family:{fam}")
    for t in range(3, 2 * denom_max + 1):
        add(Fraction(1, 2) + Fraction(1, t), "brieskorn-series")
    add(Fraction(4, 5), "cA1-example")
    values = sorted(tags, reverse=True)
    return [UnionEntry(v, tuple(sorted(tags[v]))) for v in values]


# --- proposition checkers at desk scale -------------------------------------

@dataclass
class ScanReport:
    name: str
    checked: int
    counterexamples: list
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "counterexamples": [repr(c) for c in self.counterexamples],
                "notes": list(self.notes)}


def check_sm_lower(B: int, *, kinds: tuple[str, ...] = ("m<ab", "m=ab+1")) -> ScanReport:
    """Exhaustively confirm the smooth multiplicity gap over coprime 2 <= a < b <= B.

    For every m < a*b not divisible by a + b, and for m = a*b + 1 under the
    same divisibility hypothesis, the paired Bezout windows must be
    infeasible.  Reports any (a, b, m) where they are not.
    """
    if B < 3:
        raise ClassifyError(f"need B >= 3, got {B}")
    counter = []
    checked = 0
    for a in range(2, B):
        for b in range(a + 1, B + 1):
            if math.gcd(a, b) != 1:
                continue
            sp = bezout_split(a, b)
            w = WeightVec((1, a, b))
            w1 = WeightVec((1, sp.s, sp.t))
            w2 = WeightVec((1, sp.s_bar, sp.t_bar))
            c1 = AuxConstraint(sp.s + sp.t, domination_ratio(w1, w), label="split")
            c2 = AuxConstraint(sp.s_bar + sp.t_bar, domination_ratio(w2, w), label="co-split")
            disc = a + b
            targets = []
            if "m<ab" in kinds:
                targets += [(m, "m<ab") for m in range(1, a * b) if m % disc != 0]
            if "m=ab+1" in kinds and (a * b + 1) % disc != 0:
                targets.append((a * b + 1, "m=ab+1"))
            for m, kind in targets:
                checked += 1
                if feasible_m(disc, m, [c1, c2]).feasible and joint_feasible(disc, m, c1, c2):
                    counter.append((a, b, m, kind))
    return ScanReport("sm-lower", checked, counter)


@dataclass
class AssumptionAReport:
    params_i: FamilyParams
    params_j: FamilyParams
    aux: WeightVec
    multiplicity_ok: bool
    domination_ok: bool
    irreducible_ok: bool
    discrepancy_expected: int
    discrepancy_actual: int | None

    @property
    def passed(self) -> bool:
        return (self.multiplicity_ok and self.domination_ok and self.irreducible_ok
                and self.discrepancy_actual == self.discrepancy_expected)


def check_assumption_A(params_i: FamilyParams, params_j: FamilyParams,
                       f_i: PolySupport, f_j: PolySupport) -> AssumptionAReport:
    """Verify the three chain-comparison conditions for one parameter pair.

    (1) the earlier weight gives the earlier divisor no larger multiplicity
    (from Newton-diagram containment), (2) the auxiliary weight dominates
    the earlier weight componentwise, (3) the auxiliary blow-up over the
    later model is certified irreducible with the earlier discrepancy.
    """
    if params_i.family != params_j.family or isinstance(params_i, SmoothParams):
        raise ClassifyError("need two tuples of the same non-smooth family")
    if isinstance(params_i, CAnParams) and (params_i.n, params_i.b) != (params_j.n, params_j.b):
        raise ClassifyError("cA/n comparison needs matching index and twist")
    action = params_i.action()
    if not (is_semi_invariant(f_i, action) and is_semi_invariant(f_j, action)):
        raise ClassifyError("divisor equations must be semi-invariant")
    if not diagram_contains(gamma_plus(f_i), gamma_plus(f_j)):
        raise ClassifyError("need the earlier Newton diagram to contain the later one")
    aux = auxiliary_weight(params_i, params_j.d)
    w_i = params_i.weight()
    mult_ok = weighted_numerator(w_i, f_i) <= weighted_numerator(w_i, f_j)
    dom_ok = all(ki <= kj for ki, kj in zip(w_i.k, aux.k))
    mdl_j = model(params_j)
    cert = certify_irreducible(mdl_j, aux)
    disc = try_discrepancy(mdl_j, aux)
    return AssumptionAReport(params_i, params_j, aux, mult_ok, dom_ok,
                             bool(cert), params_i.discrepancy, disc)


def deterministic_assumption_pairs(family: str, count: int, bounds: FamilyBounds):
    """A reproducible stream of (params_i, params_j, f_i, f_j) test pairs."""
    params = list(enumerate_family(family, bounds, min_discrepancy=1))
    nvars = 5 if family in ("cD2", "cD2q2") else 4
    produced = 0
    for i, pi in enumerate(params):
        if produced >= count:
            return
        for pj in params[i:]:
            if produced >= count:
                return
            if pj.d < pi.d or pj.discrepancy < pi.discrepancy:
                continue
            if isinstance(pi, CAnParams) and (pi.n, pi.b) != (pj.n, pj.b):
                continue
            y = tuple(1 if k == 1 else 0 for k in range(nvars))
            f_j = PolySupport(nvars, frozenset({Monomial(y)}))
            shape = produced % 3
            if shape == 0:
                f_i = f_j
            elif shape == 1:
                # extra monomial inside the diagram of y
                extra = tuple(e + (2 if k == 2 else 0) for k, e in enumerate(y))
                f_i = PolySupport(nvars, frozenset({Monomial(y), Monomial(extra)}))
                if not is_semi_invariant(f_i, pi.action()):
                    f_i = f_j
            else:
                # a genuinely larger diagram: add a z-power with matching character
                n = pi.index
                chi_y = pi.action().character(Monomial(y))
                c = next(c for c in range(1, 2 * n + 2)
                         if (c * pi.action().b[2]) % n == chi_y % n)
                zc = tuple(c if k == 2 else 0 for k in range(nvars))
                f_i = PolySupport(nvars, frozenset({Monomial(y), Monomial(zc)}))
            try:
                yield pi, pj, f_i, f_j
                produced += 1
            except GeneratorExit:
                return


def check_boundindex(k: int, bounds: FamilyBounds, *, min_discrepancy: int = 5) -> ScanReport:
    """Every cA/n survivor in (1/k, 1/(k-1)) must have index n <= 3k."""
    if k < 2:
        raise ClassifyError(f"need k >= 2, got {k}")
    interval = IntervalSpec.reciprocal_window(k)
    report = classify_interval("cAn", interval, bounds, min_discrepancy=min_discrepancy)
    counter = [s for s in report.survivors if s.params.n > 3 * k]
    scan = ScanReport(f"boundindex k={k}", report.evaluated_count, counter)
    scan.notes.append(f"survivor indices: {sorted({s.params.n for s in report.survivors})}")
    return scan


def check_ca_split(max_a: int, *, d_max: int = 3) -> ScanReport:
    """Exhaustively verify the split identities for cA data with a <= max_a."""
    counter = []
    checked = 0
    for a in range(2, max_a + 1):
        for d in range(1, d_max + 1):
            for r1 in range(1, a * d):
                r2 = a * d - r1
                if math.gcd(r1, a) != 1 or math.gcd(r2, a) != 1:
                    continue
                checked += 1
                sp = ca_split(r1, r2, a)
                ok = (sp.a1 + sp.a2 == a
                      and 1 + sp.a1 * r1 == sp.s1_star * a
                      and 1 + sp.a2 * r2 == sp.s2_star * a
                      and min(sp.a1, sp.a2, sp.s1_star, sp.s2_star) >= 1)
                if not ok:
                    counter.append((r1, r2, a))
    return ScanReport("ca-split", checked, counter)


def check_bezout(max_b: int) -> ScanReport:
    """Exhaustively verify the Bezout split identities for 2 <= a < b <= max_b."""
    counter = []
    checked = 0
    for a in range(2, max_b):
        for b in range(a + 1, max_b + 1):
            if math.gcd(a, b) != 1:
                continue
            checked += 1
            sp = bezout_split(a, b)
            ok = (0 < sp.s < a and 0 < sp.t < b
                  and a * sp.t == b * sp.s + 1
                  and a * sp.t_bar == b * sp.s_bar - 1
                  and sp.s + sp.s_bar == a and sp.t + sp.t_bar == b)
            if not ok:
                counter.append((a, b))
    return ScanReport("bezout", checked, counter)


def check_delta(n_max: int, a_max: int, *, d_max: int = 2) -> ScanReport:
    """Verify the slope identities on every enumerated cA/n tuple.

    Positivity of one slope is asserted on the a > n region, where it is a
    theorem; smaller discrepancies are reported but not counted against.
    """
    counter = []
    notes = []
    checked = 0
    bounds = FamilyBounds(a_max, d_max=d_max, n_max=n_max)
    for p in enumerate_family("cAn", bounds, min_discrepancy=1):
        checked += 1
        data = delta_data(p.n, p.b, p.r1, p.r2, p.a)
        if not (data.delta1 * p.r1 + p.n == p.a * data.s1_star
                and data.delta2 * p.r2 + p.n == p.a * data.s2_star):
            counter.append((p, "identity"))
            continue
        if data.positive_branch is None:
            if p.a > p.n:
                counter.append((p, "no positive slope"))
            else:
                notes.append(f"no positive slope at small discrepancy: {p.as_dict()}")
    return ScanReport("delta", checked, counter, notes)


def check_discrepancy_identity(a_max: int, *, d_max: int = 6, n_max: int = 6) -> ScanReport:
    """discrepancy(model(p), family_weight(p)) == p.a for every enumerated tuple."""
    from .blowup import discrepancy
    counter = []
    checked = 0
    bounds = FamilyBounds(a_max, d_max=d_max, n_max=n_max)
    for fam in FAMILY_TAGS:
        for p in enumerate_family(fam, bounds, min_discrepancy=1):
            checked += 1
            if discrepancy(model(p), p.weight()) != p.discrepancy:
                counter.append(p)
    return ScanReport("discrepancy-id", checked, counter)


def check_assumption_scan(count_per_family: int, bounds: FamilyBounds) -> ScanReport:
    """Run the three-condition check on deterministic pairs for every family."""
    counter = []
    checked = 0
    for fam in ("cA", "cAn", "cD1", "cD2", "cD2q1", "cD2q2"):
        for pi, pj, f_i, f_j in deterministic_assumption_pairs(fam, count_per_family, bounds):
            checked += 1
            rep = check_assumption_A(pi, pj, f_i, f_j)
            if not rep.passed:
                counter.append((fam, pi, pj))
    return ScanReport("assumption-a", checked, counter)
