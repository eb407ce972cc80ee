"""Quotient actions, blow-up weight vectors, and the classified weight families.

A weight vector 1/n (k_1, ..., k_d) assigns weight k_i/n to the i-th
variable.  For a cyclic quotient 1/n (b_1, ..., b_d) a weight is admissible
when k_i is congruent to c*b_i mod n for a single multiplier c.

Each singularity type carries a one-parameter shape of blow-up weights
whose exceptional divisor is irreducible; those shapes drive both the
certified upper-bound search and the interval classifier.  Family tags:

  sm      smooth point, weights (1, a, b) with gcd(a, b) = 1
  cA      x*y + g(z, u),           weights (r1, r2, a, 1),   r1 + r2 = a*d
  cAn     x*y + g(z, u) quotient,  weights (r1, r2, a, n)/n, r1 + r2 = a*d*n
  cD1     x^2 + y^2*u + ...,       weights (r+1, r, a, 1),   2r + 1 = a*d
  cD2     codimension-2 model,     weights (r+1, r, a, 1, r+2),  r + 1 = a*d
  cD2q1   index-2 quotient,        weights (r+2, r, a, 2)/2,     r + 1 = a*d
  cD2q2   index-2 codim-2 model,   weights (r+2, r, a, 2, r+4)/2, r + 2 = a*d
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .poly import Monomial

FAMILY_TAGS = ("sm", "cA", "cAn", "cD1", "cD2", "cD2q1", "cD2q2")


class FamilyError(ValueError):
    """A parameter tuple violates one of its family's defining constraints."""


class AuxiliaryError(ValueError):
    """An auxiliary weight cannot be constructed for the requested data."""


@dataclass(frozen=True)
class QuotientAction:
    """Cyclic group action 1/n (b_1, ..., b_d) on 3, 4 or 5 coordinates."""

    n: int
    b: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise FamilyError(f"index must be >= 1, got {self.n}")
        if len(self.b) not in (3, 4, 5):
            raise FamilyError(f"action needs 3, 4 or 5 twists, got {len(self.b)}")
        if any(not (0 <= t < self.n) for t in self.b):
            raise FamilyError(f"twists must be reduced mod {self.n}: {self.b}")

    @classmethod
    def trivial(cls, variable_count: int) -> QuotientAction:
        return cls(1, (0,) * variable_count)

    @property
    def variable_count(self) -> int:
        return len(self.b)

    def character(self, m: Monomial) -> int:
        return sum(e * t for e, t in zip(m.exponents, self.b)) % self.n


def cyclic_ca_n_action(n: int, b: int) -> QuotientAction:
    """The cA/n quotient 1/n (b', -b', 1, 0) with b' the inverse of b mod n.

    The third coordinate is normalized to act by the primitive character, so
    the family congruence a = b*r1 (mod n) is exactly admissibility of the
    family weight with multiplier a.
    """
    if n < 2 or gcd(b, n) != 1:
        raise FamilyError(f"need n >= 2 and gcd(b, n) = 1, got n={n}, b={b}")
    b_inv = pow(b, -1, n)
    return QuotientAction(n, (b_inv, (-b_inv) % n, 1 % n, 0))


@dataclass(frozen=True)
class WeightVec:
    """Blow-up weights 1/n (k_1, ..., k_d) with positive integer numerators."""

    k: tuple[int, ...]
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise FamilyError(f"weight index must be >= 1, got {self.n}")
        if len(self.k) not in (3, 4, 5):
            raise FamilyError(f"weights need 3, 4 or 5 entries, got {len(self.k)}")
        if any(not isinstance(v, int) or v < 1 for v in self.k):
            raise FamilyError(f"weight numerators must be positive integers: {self.k}")

    @property
    def variable_count(self) -> int:
        return len(self.k)

    def value(self, i: int) -> Fraction:
        return Fraction(self.k[i], self.n)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.n) for v in self.k)

    def numerator_sum(self) -> int:
        return sum(self.k)

    def __str__(self) -> str:
        body = "(" + ", ".join(str(v) for v in self.k) + ")"
        return body if self.n == 1 else f"{body}/{self.n}"


def admissible_multiplier(w: WeightVec, action: QuotientAction) -> int | None:
    """The multiplier c with k_i = c*b_i (mod n) for all i, or None."""
    if w.variable_count != action.variable_count:
        raise FamilyError("weight and action have different variable counts")
    for c in range(action.n):
        if all((k - c * t) % action.n == 0 for k, t in zip(w.k, action.b)):
            return c
    return None


def is_admissible(w: WeightVec, action: QuotientAction) -> bool:
    return admissible_multiplier(w, action) is not None


def dominates(w1: WeightVec, mu: Fraction, w2: WeightVec) -> bool:
    """True iff w1 >= mu * w2 componentwise (exact rational comparison)."""
    if w1.variable_count != w2.variable_count:
        raise FamilyError("weights have different variable counts")
    if mu <= 0:
        raise FamilyError(f"scale must be positive, got {mu}")
    return all(Fraction(a, w1.n) >= mu * Fraction(b, w2.n) for a, b in zip(w1.k, w2.k))


def domination_ratio(w1: WeightVec, w2: WeightVec) -> Fraction:
    """The largest mu with w1 >= mu * w2, i.e. min over i of (k1_i/n1)/(k2_i/n2)."""
    if w1.variable_count != w2.variable_count:
        raise FamilyError("weights have different variable counts")
    return min(Fraction(a * w2.n, b * w1.n) for a, b in zip(w1.k, w2.k))


def _require(condition: bool, constraint: str):
    if not condition:
        raise FamilyError(f"constraint violated: {constraint}")


@dataclass(frozen=True)
class SmoothParams:
    """Weights (1, a, b) over a smooth point, gcd(a, b) = 1, with a variable assignment."""

    a: int
    b: int
    perm: tuple[int, int, int] = (0, 1, 2)

    family = "sm"

    def validate(self):
        _require(1 <= self.a <= self.b, "1 <= a <= b")
        _require(self.a < self.b or self.a == 1, "a < b unless (a, b) = (1, 1)")
        _require(gcd(self.a, self.b) == 1, "gcd(a, b) = 1")
        _require(sorted(self.perm) == [0, 1, 2], "perm is a permutation of (0, 1, 2)")
        return self

    @property
    def index(self) -> int:
        return 1

    @property
    def discrepancy(self) -> int:
        return self.a + self.b

    def weight(self) -> WeightVec:
        base = (1, self.a, self.b)
        return WeightVec(tuple(base[p] for p in self.perm), 1)

    def action(self) -> QuotientAction:
        return QuotientAction.trivial(3)

    def as_dict(self) -> dict:
        return {"family": "sm", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class CAParams:
    """cA data: weights (r1, r2, a, 1) with r1 + r2 = a*d and r1, r2 coprime to a."""

    r1: int
    r2: int
    a: int
    d: int

    family = "cA"

    def validate(self):
        _require(self.r1 >= 1 and self.r2 >= 1, "r1, r2 >= 1")
        _require(self.a >= 1 and self.d >= 1, "a, d >= 1")
        _require(self.r1 + self.r2 == self.a * self.d, "r1 + r2 = a*d")
        _require(gcd(self.r1, self.a) == 1, "gcd(r1, a) = 1")
        _require(gcd(self.r2, self.a) == 1, "gcd(r2, a) = 1")
        return self

    @property
    def index(self) -> int:
        return 1

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r1, self.r2, self.a, 1), 1)

    def action(self) -> QuotientAction:
        return QuotientAction.trivial(4)

    def as_dict(self) -> dict:
        return {"family": "cA", "r1": self.r1, "r2": self.r2, "a": self.a, "d": self.d}


@dataclass(frozen=True)
class CAnParams:
    """cA/n data: weights (r1, r2, a, n)/n with r1 + r2 = a*d*n and a = b*r1 (mod n).

    The slope coprimality gcd(r_i, s_i) = 1, with s1 = (a - b*r1)/n and
    s2 = (a + b*r2)/n, is part of the classified data; it guarantees the
    Bezout-style split used by the multiplicity lower bound exists.
    """

    n: int
    b: int
    r1: int
    r2: int
    a: int
    d: int

    family = "cAn"

    def validate(self):
        _require(self.n >= 2, "n >= 2")
        _require(1 <= self.b < self.n, "1 <= b < n")
        _require(gcd(self.b, self.n) == 1, "gcd(b, n) = 1")
        _require(self.r1 >= 1 and self.r2 >= 1, "r1, r2 >= 1")
        _require(self.a >= 1 and self.d >= 1, "a, d >= 1")
        _require(self.r1 + self.r2 == self.a * self.d * self.n, "r1 + r2 = a*d*n")
        _require((self.a - self.b * self.r1) % self.n == 0, "a = b*r1 (mod n)")
        _require(gcd(self.r1, abs(self.s1)) == 1, "gcd(r1, s1) = 1 with s1 = (a - b*r1)/n")
        _require(gcd(self.r2, abs(self.s2)) == 1, "gcd(r2, s2) = 1 with s2 = (a + b*r2)/n")
        return self

    @property
    def s1(self) -> int:
        return (self.a - self.b * self.r1) // self.n

    @property
    def s2(self) -> int:
        return (self.a + self.b * self.r2) // self.n

    @property
    def index(self) -> int:
        return self.n

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r1, self.r2, self.a, self.n), self.n)

    def action(self) -> QuotientAction:
        return cyclic_ca_n_action(self.n, self.b)

    def as_dict(self) -> dict:
        return {"family": "cAn", "n": self.n, "b": self.b, "r1": self.r1,
                "r2": self.r2, "a": self.a, "d": self.d}


@dataclass(frozen=True)
class CD1Params:
    """cD hypersurface data: weights (r+1, r, a, 1) with 2r + 1 = a*d, d >= 3, a odd."""

    r: int
    a: int
    d: int

    family = "cD1"

    def validate(self):
        _require(self.r >= 1 and self.a >= 1, "r, a >= 1")
        _require(self.d >= 3, "d >= 3")
        _require(self.a % 2 == 1, "a odd")
        _require(2 * self.r + 1 == self.a * self.d, "2r + 1 = a*d")
        return self

    @property
    def index(self) -> int:
        return 1

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r + 1, self.r, self.a, 1), 1)

    def action(self) -> QuotientAction:
        return QuotientAction.trivial(4)

    def as_dict(self) -> dict:
        return {"family": "cD1", "r": self.r, "a": self.a, "d": self.d}


@dataclass(frozen=True)
class CD2Params:
    """cD codimension-two data: weights (r+1, r, a, 1, r+2) with r + 1 = a*d, d >= 2."""

    r: int
    a: int
    d: int

    family = "cD2"

    def validate(self):
        _require(self.r >= 1 and self.a >= 1, "r, a >= 1")
        _require(self.d >= 2, "d >= 2")
        _require(self.r + 1 == self.a * self.d, "r + 1 = a*d")
        return self

    @property
    def index(self) -> int:
        return 1

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r + 1, self.r, self.a, 1, self.r + 2), 1)

    def action(self) -> QuotientAction:
        return QuotientAction.trivial(5)

    def as_dict(self) -> dict:
        return {"family": "cD2", "r": self.r, "a": self.a, "d": self.d}


@dataclass(frozen=True)
class CD2q1Params:
    """cD/2 hypersurface data: weights (r+2, r, a, 2)/2 with r + 1 = a*d, a and r odd."""

    r: int
    a: int
    d: int

    family = "cD2q1"

    def validate(self):
        _require(self.r >= 1 and self.a >= 1 and self.d >= 1, "r, a, d >= 1")
        _require(self.r + 1 == self.a * self.d, "r + 1 = a*d")
        _require(self.a % 2 == 1, "a odd")
        _require(self.r % 2 == 1, "r odd")
        return self

    @property
    def index(self) -> int:
        return 2

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r + 2, self.r, self.a, 2), 2)

    def action(self) -> QuotientAction:
        return QuotientAction(2, (1, 1, 1, 0))

    def as_dict(self) -> dict:
        return {"family": "cD2q1", "r": self.r, "a": self.a, "d": self.d}


@dataclass(frozen=True)
class CD2q2Params:
    """cD/2 codimension-two data: weights (r+2, r, a, 2, r+4)/2 with r + 2 = a*d."""

    r: int
    a: int
    d: int

    family = "cD2q2"

    def validate(self):
        _require(self.r >= 1 and self.a >= 1 and self.d >= 1, "r, a, d >= 1")
        _require(self.r + 2 == self.a * self.d, "r + 2 = a*d")
        return self

    @property
    def index(self) -> int:
        return 2

    @property
    def discrepancy(self) -> int:
        return self.a

    def weight(self) -> WeightVec:
        return WeightVec((self.r + 2, self.r, self.a, 2, self.r + 4), 2)

    def action(self) -> QuotientAction:
        return QuotientAction(2, (1, 1, 1, 0, 1))

    def as_dict(self) -> dict:
        return {"family": "cD2q2", "r": self.r, "a": self.a, "d": self.d}


FamilyParams = (SmoothParams | CAParams | CAnParams | CD1Params
                | CD2Params | CD2q1Params | CD2q2Params)


def family_weight(p: FamilyParams) -> WeightVec:
    """The defining blow-up weight of a validated parameter tuple."""
    return p.validate().weight()


@dataclass(frozen=True)
class FamilyBounds:
    """Enumeration caps: discrepancy a, exponent d, quotient index n."""

    a_max: int
    d_max: int = 8
    n_max: int = 12

    def __post_init__(self):
        if min(self.a_max, self.d_max, self.n_max) < 1:
            raise FamilyError("bounds must be positive")


def enumerate_family(family: str, bounds: FamilyBounds, *, min_discrepancy: int = 1):
    """Yield every parameter tuple of ``family`` within ``bounds``.

    Order is deterministic and lexicographic in (a, d, r1[, n, b]).  For
    classification runs pass ``min_discrepancy=5`` to restrict to weighted
    discrepancy >= 5; smaller discrepancies are covered by the generic
    low-discrepancy value set.

    The cA enumeration starts at d = 2 and the cD/2 codimension-two
    enumeration uses odd d >= 3: smaller exponents make the model equation
    lose its singular normal form (a linear term appears).
    """
    lo = max(1, min_discrepancy)
    if family == "sm":
        for a in range(1, bounds.a_max):
            for b in range(a + 1, bounds.a_max - a + 1):
                if a + b < lo:
                    continue
                if gcd(a, b) == 1:
                    yield SmoothParams(a, b).validate()
    elif family == "cA":
        for a in range(lo, bounds.a_max + 1):
            for d in range(2, bounds.d_max + 1):
                for r1 in range(1, a * d):
                    if gcd(r1, a) == 1:
                        yield CAParams(r1, a * d - r1, a, d).validate()
    elif family == "cAn":
        for a in range(lo, bounds.a_max + 1):
            for d in range(1, bounds.d_max + 1):
                block = []
                for n in range(2, bounds.n_max + 1):
                    for b in range(1, n):
                        if gcd(b, n) != 1:
                            continue
                        start = (a * pow(b, -1, n)) % n
                        if start == 0:
                            start = n
                        for r1 in range(start, a * d * n, n):
                            p = CAnParams(n, b, r1, a * d * n - r1, a, d)
                            try:
                                p.validate()
                            except FamilyError:
                                continue
                            block.append(p)
                block.sort(key=lambda p: (p.r1, p.n, p.b))
                yield from block
    elif family == "cD1":
        for a in range(lo, bounds.a_max + 1):
            if a % 2 == 0:
                continue
            for d in range(3, bounds.d_max + 1, 2):
                yield CD1Params((a * d - 1) // 2, a, d).validate()
    elif family == "cD2":
        for a in range(lo, bounds.a_max + 1):
            for d in range(2, bounds.d_max + 1):
                yield CD2Params(a * d - 1, a, d).validate()
    elif family == "cD2q1":
        for a in range(lo, bounds.a_max + 1):
            if a % 2 == 0:
                continue
            for d in range(2, bounds.d_max + 1, 2):
                yield CD2q1Params(a * d - 1, a, d).validate()
    elif family == "cD2q2":
        for a in range(lo, bounds.a_max + 1):
            for d in range(3, bounds.d_max + 1, 2):
                if a * d >= 3:
                    yield CD2q2Params(a * d - 2, a, d).validate()
    else:
        raise FamilyError(f"unknown family {family!r}")


def auxiliary_weight(params_i: FamilyParams, d_j: int) -> WeightVec:
    """The comparison weight w^i_j of ``params_i`` re-targeted at exponent d_j >= d_i.

    Each family solves its defining linear identity at the new exponent
    while keeping the discrepancy of ``params_i``; the result dominates the
    original weight componentwise whenever d_j >= d_i.
    """
    params_i.validate()
    if isinstance(params_i, SmoothParams):
        raise AuxiliaryError("the smooth family has no exponent parameter")
    if d_j < params_i.d:
        raise AuxiliaryError(f"need d_j >= d_i, got {d_j} < {params_i.d}")
    a = params_i.a
    if isinstance(params_i, CAParams):
        k2 = a * d_j - params_i.r1
        if k2 < 1:
            raise AuxiliaryError("second weight a*d_j - r1 must be positive")
        w = WeightVec((params_i.r1, k2, a, 1), 1)
    elif isinstance(params_i, CAnParams):
        n = params_i.n
        k2 = a * d_j * n - params_i.r1
        if k2 < 1:
            raise AuxiliaryError("second weight a*d_j*n - r1 must be positive")
        w = WeightVec((params_i.r1, k2, a, n), n)
    elif isinstance(params_i, CD1Params):
        if (a * d_j) % 2 == 0:
            raise AuxiliaryError(f"no integer s with 2s + 1 = {a}*{d_j}")
        s = (a * d_j - 1) // 2
        w = WeightVec((s + 1, s, a, 1), 1)
    elif isinstance(params_i, CD2Params):
        s = a * d_j - 1
        w = WeightVec((s + 1, s, a, 1, s + 2), 1)
    elif isinstance(params_i, CD2q1Params):
        s = a * d_j - 1
        if s % 2 == 0:
            raise AuxiliaryError(f"no odd s with s + 1 = {a}*{d_j}")
        w = WeightVec((s + 2, s, a, 2), 2)
    elif isinstance(params_i, CD2q2Params):
        s = a * d_j - 2
        if s < 1:
            raise AuxiliaryError("s = a*d_j - 2 must be positive")
        w = WeightVec((s + 2, s, a, 2, s + 4), 2)
    else:
        raise AuxiliaryError(f"unsupported family {params_i!r}")
    if not is_admissible(w, params_i.action()):
        raise AuxiliaryError(f"auxiliary weight {w} is not admissible at d_j={d_j}")
    return w
