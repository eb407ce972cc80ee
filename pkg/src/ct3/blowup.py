"""Weighted blow-up arithmetic over local models of threefold singularities.

Provides weighted discrepancy and multiplicity (both exact integers over
the quotient index), initial forms, and conservative certification that
the exceptional divisor of a weighted blow-up is irreducible.

Certificate kinds:

  L1  the weight matches one of the classified family shapes over the
      presentation's singularity and the initial form of the defining
      equation(s) is verified to contain the binomial core that makes the
      exceptional divisor irreducible;
  L2  smooth ambient space with weights (1, a, b), gcd(a, b) = 1;
  L3  index-one hypersurface whose initial form is A*v + B with v a
      variable, A a single monomial free of v, and B nonzero, free of v,
      sharing no common variable with A.

Anything else is refused; refusals only shrink the searched weight set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import (
    Monomial,
    PolySupport,
    VARIABLES,
    is_semi_invariant,
    make_support,
)
from .weights import (
    CAParams,
    CAnParams,
    CD1Params,
    CD2Params,
    CD2q1Params,
    CD2q2Params,
    FamilyParams,
    QuotientAction,
    SmoothParams,
    WeightVec,
    admissible_multiplier,
)

TAGS = ("sm", "index1", "cA", "cAn", "cD1", "cD2", "cD2q1", "cD2q2")


class BlowupError(ValueError):
    """Invalid blow-up datum: bad presentation, inadmissible or degenerate weight."""


@dataclass(frozen=True)
class Certificate:
    kind: str
    detail: str = ""

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Refusal:
    reason: str

    def __bool__(self) -> bool:
        return False


_EQ_COUNT = {"sm": 0, "index1": 1, "cA": 1, "cAn": 1, "cD1": 1,
             "cD2": 2, "cD2q1": 1, "cD2q2": 2}
_VAR_COUNT = {"sm": 3, "index1": 4, "cA": 4, "cAn": 4, "cD1": 4,
              "cD2": 5, "cD2q1": 4, "cD2q2": 5}


@dataclass(frozen=True)
class SingularityPresentation:
    """A tagged local model: defining equation supports plus the quotient action."""

    tag: str
    equations: tuple[PolySupport, ...]
    action: QuotientAction
    params: FamilyParams | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise BlowupError(f"unknown singularity tag {self.tag!r}")
        if len(self.equations) != _EQ_COUNT[self.tag]:
            raise BlowupError(
                f"{self.tag} expects {_EQ_COUNT[self.tag]} equation(s), got {len(self.equations)}")
        nvars = _VAR_COUNT[self.tag]
        if self.action.variable_count != nvars:
            raise BlowupError(f"{self.tag} lives in {nvars} variables")
        for eq in self.equations:
            if eq.variable_count != nvars:
                raise BlowupError("equation has the wrong number of variables")
            if not is_semi_invariant(eq, self.action):
                raise BlowupError(f"equation {eq} is not semi-invariant under the action")
            if any(m.is_constant() for m in eq.support):
                raise BlowupError("equation has a constant term: not a singular model")
        if self.params is not None:
            if self.params.family != self.tag:
                raise BlowupError(f"params are for {self.params.family}, presentation is {self.tag}")
            if self.params.action() != self.action:
                raise BlowupError("presentation action disagrees with the family action")
            self._check_normal_form()

    def _check_normal_form(self):
        d = self.params.d
        need: list[tuple[int, tuple[int, ...]]] = []
        if self.tag == "cA":
            need = [(0, (1, 1, 0, 0)), (0, (0, 0, d, 0))]
        elif self.tag == "cAn":
            need = [(0, (1, 1, 0, 0)), (0, (0, 0, d * self.params.n, 0))]
        elif self.tag == "cD1":
            need = [(0, (0, 2, 0, 1)), (0, (0, 0, d, 0))]
        elif self.tag == "cD2q1":
            need = [(0, (0, 2, 0, 1)), (0, (0, 0, 2 * d, 0))]
        elif self.tag in ("cD2", "cD2q2"):
            need = [(1, (0, 1, 0, 1, 0)), (1, (0, 0, d, 0, 0)), (1, (0, 0, 0, 0, 1))]
        for eq_index, vec in need:
            if Monomial(vec) not in self.equations[eq_index]:
                raise BlowupError(
                    f"{self.tag} normal form requires {Monomial(vec)} in equation {eq_index + 1}")

    @property
    def variable_count(self) -> int:
        return _VAR_COUNT[self.tag]

    @property
    def index(self) -> int:
        return self.action.n


def smooth_presentation() -> SingularityPresentation:
    return SingularityPresentation("sm", (), QuotientAction.trivial(3))


def index1_presentation(phi: PolySupport) -> SingularityPresentation:
    """A generic index-one hypersurface model in four variables."""
    return SingularityPresentation("index1", (phi,), QuotientAction.trivial(4))


def model(params: FamilyParams) -> SingularityPresentation:
    """The minimal normal-form presentation of a family parameter tuple."""
    params.validate()
    d = getattr(params, "d", None)
    if isinstance(params, SmoothParams):
        return smooth_presentation()
    if isinstance(params, CAParams):
        phi = make_support(4, [(1, 1, 0, 0), (0, 0, d, 0)])
        return SingularityPresentation("cA", (phi,), params.action(), params)
    if isinstance(params, CAnParams):
        phi = make_support(4, [(1, 1, 0, 0), (0, 0, d * params.n, 0)])
        return SingularityPresentation("cAn", (phi,), params.action(), params)
    if isinstance(params, CD1Params):
        phi = make_support(4, [(2, 0, 0, 0), (0, 2, 0, 1), (0, 0, d, 0)])
        return SingularityPresentation("cD1", (phi,), params.action(), params)
    if isinstance(params, CD2Params):
        phi1 = make_support(5, [(2, 0, 0, 0, 0), (0, 1, 0, 0, 1)])
        phi2 = make_support(5, [(0, 1, 0, 1, 0), (0, 0, d, 0, 0), (0, 0, 0, 0, 1)])
        return SingularityPresentation("cD2", (phi1, phi2), params.action(), params)
    if isinstance(params, CD2q1Params):
        phi = make_support(4, [(2, 0, 0, 0), (0, 2, 0, 1), (0, 0, 2 * d, 0)])
        return SingularityPresentation("cD2q1", (phi,), params.action(), params)
    if isinstance(params, CD2q2Params):
        phi1 = make_support(5, [(2, 0, 0, 0, 0), (0, 1, 0, 0, 1), (0, 0, 2 * d, 0, 0)])
        phi2 = make_support(5, [(0, 1, 0, 1, 0), (0, 0, d, 0, 0), (0, 0, 0, 0, 1)])
        return SingularityPresentation("cD2q2", (phi1, phi2), params.action(), params)
    raise BlowupError(f"unsupported params {params!r}")


def monomial_weight(w: WeightVec, m: Monomial) -> Fraction:
    """Exact weight sum_i e_i * k_i / n of a monomial."""
    if w.variable_count != m.variable_count:
        raise BlowupError("weight and monomial have different variable counts")
    return Fraction(sum(e * k for e, k in zip(m.exponents, w.k)), w.n)


def poly_weight(w: WeightVec, f: PolySupport) -> Fraction:
    """Minimum monomial weight over the support."""
    return min(monomial_weight(w, m) for m in f.support)


def weighted_numerator(w: WeightVec, f: PolySupport) -> int:
    """n * poly_weight(w, f); always an integer since numerators are integers."""
    if w.variable_count != f.variable_count:
        raise BlowupError("weight and polynomial have different variable counts")
    return min(sum(e * k for e, k in zip(m.exponents, w.k)) for m in f.support)


def initial_form(w: WeightVec, f: PolySupport) -> PolySupport:
    """The monomials of ``f`` attaining the minimal weight."""
    best = weighted_numerator(w, f)
    keep = [m for m in f.support
            if sum(e * k for e, k in zip(m.exponents, w.k)) == best]
    return PolySupport(f.variable_count, frozenset(keep))


def discrepancy(s: SingularityPresentation, w: WeightVec) -> int:
    """Weighted discrepancy a = sum(k_i) - n*sum(w(eq)) - n; must be a positive integer."""
    a = try_discrepancy(s, w)
    if a is None:
        raise BlowupError(f"weight {w} is not admissible for the {s.tag} action")
    if a <= 0:
        raise BlowupError(f"weight {w} has non-positive discrepancy {a}")
    return a


def try_discrepancy(s: SingularityPresentation, w: WeightVec) -> int | None:
    """Discrepancy numerator, or None when the weight is inadmissible; may be <= 0."""
    if w.variable_count != s.variable_count:
        raise BlowupError("weight does not match the presentation's variables")
    if w.n != s.index or admissible_multiplier(w, s.action) is None:
        return None
    return sum(w.k) - sum(weighted_numerator(w, eq) for eq in s.equations) - w.n


def multiplicity(s: SingularityPresentation, w: WeightVec, f: PolySupport) -> int:
    """Weighted multiplicity m = n*w(f) of a semi-invariant divisor equation."""
    if f.variable_count != s.variable_count:
        raise BlowupError("divisor equation does not match the presentation's variables")
    if not is_semi_invariant(f, s.action):
        raise BlowupError(f"divisor equation {f} is not semi-invariant under the action")
    m = weighted_numerator(w, f)
    if m <= 0:
        raise BlowupError("divisor equation is a unit at the origin (constant in support)")
    return m


def _mono(vec) -> Monomial:
    return Monomial(tuple(vec))


def _certify_linear(init: PolySupport) -> Certificate | None:
    """The A*v + B rule: linear in some variable with monomial cofactor coprime to the rest."""
    for v in range(init.variable_count):
        with_v = [m for m in init.monomials() if m.exponents[v] > 0]
        if len(with_v) != 1 or with_v[0].exponents[v] != 1:
            continue
        cofactor = list(with_v[0].exponents)
        cofactor[v] = 0
        rest = [m for m in init.monomials() if m.exponents[v] == 0]
        if not rest:
            continue
        shared = [j for j in range(init.variable_count)
                  if cofactor[j] > 0 and all(m.exponents[j] > 0 for m in rest)]
        if shared:
            continue
        return Certificate("L3", f"initial form is linear in {VARIABLES[v]}")
    return None


def certify_irreducible(s: SingularityPresentation, w: WeightVec) -> Certificate | Refusal:
    """Certify that the exceptional divisor of the weighted blow-up is irreducible.

    Sound but deliberately incomplete: any weight outside the certified
    shapes is refused and simply excluded from searches.
    """
    if w.variable_count != s.variable_count:
        raise BlowupError("weight does not match the presentation's variables")
    if w.n != s.index or admissible_multiplier(w, s.action) is None:
        return Refusal("weight is not admissible for the quotient action")

    if s.tag == "sm":
        little, mid, big = sorted(w.k)
        if little == 1 and gcd(mid, big) == 1:
            return Certificate("L2", f"smooth weights (1, {mid}, {big})")
        return Refusal("smooth weights must be (1, a, b) with gcd(a, b) = 1")

    if s.params is not None and s.tag in ("cA", "cAn", "cD1", "cD2", "cD2q1", "cD2q2"):
        cert = _certify_family(s, w)
        if cert is not None:
            return cert

    if s.index == 1 and len(s.equations) == 1:
        cert = _certify_linear(initial_form(w, s.equations[0]))
        if cert is not None:
            return cert
        return Refusal("initial form fails the linear-cofactor rule")
    return Refusal("no certificate applies (quotient or codimension-two model)")


def _certify_family(s: SingularityPresentation, w: WeightVec) -> Certificate | None:
    """Match ``w`` against the family weight shape and verify the initial form."""
    p = s.params
    d = p.d
    k = w.k
    if s.tag in ("cA", "cAn"):
        n = s.index
        if k[3] != n or k[0] + k[1] != k[2] * d * n:
            return None
        ifm = initial_form(w, s.equations[0]).support
        if ifm == {_mono((1, 1, 0, 0)), _mono((0, 0, d * n, 0))}:
            return Certificate("L1", f"{s.tag} family shape, initial form x*y + z^{d * n}")
        return None
    if s.tag == "cD1":
        if not (k[3] == 1 and k[0] == k[1] + 1 and 2 * k[1] + 1 == k[2] * d):
            return None
        ifm = initial_form(w, s.equations[0]).support
        core = {_mono((0, 2, 0, 1)), _mono((0, 0, d, 0))}
        allowed = core | ({_mono((0, 2, 1, 0))} if k[2] == 1 else set())
        if core <= ifm <= allowed:
            return Certificate("L1", f"cD1 family shape, initial form y^2*u + z^{d}")
        return None
    if s.tag == "cD2":
        if not (k[3] == 1 and k[0] == k[1] + 1 and k[4] == k[1] + 2 and k[1] + 1 == k[2] * d):
            return None
        if1 = initial_form(w, s.equations[0]).support
        if2 = initial_form(w, s.equations[1]).support
        if ({_mono((2, 0, 0, 0, 0)), _mono((0, 1, 0, 0, 1))} <= if1
                and {_mono((0, 1, 0, 1, 0)), _mono((0, 0, d, 0, 0))} <= if2):
            return Certificate("L1", "cD2 family shape, initial forms keep x^2 + y*t and y*u + z^d")
        return None
    if s.tag == "cD2q1":
        if not (k[3] == 2 and k[0] == k[1] + 2 and k[1] + 1 == k[2] * d):
            return None
        ifm = initial_form(w, s.equations[0]).support
        if ifm == {_mono((0, 2, 0, 1)), _mono((0, 0, 2 * d, 0))}:
            return Certificate("L1", f"cD2q1 family shape, initial form y^2*u + z^{2 * d}")
        return None
    if s.tag == "cD2q2":
        if not (k[3] == 2 and k[0] == k[1] + 2 and k[4] == k[1] + 4 and k[1] + 2 == k[2] * d):
            return None
        if1 = initial_form(w, s.equations[0]).support
        if2 = initial_form(w, s.equations[1]).support
        if ({_mono((2, 0, 0, 0, 0)), _mono((0, 1, 0, 0, 1))} <= if1
                and {_mono((0, 1, 0, 1, 0)), _mono((0, 0, d, 0, 0))} <= if2):
            return Certificate("L1", "cD2q2 family shape, initial forms keep x^2 + y*t and y*u + z^d")
        return None
    return None
