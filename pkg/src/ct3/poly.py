"""Monomials, polynomial support sets, and extended Newton diagrams.

Polynomials here stand for semi-invariant power series with generic
coefficients: only the support (the set of exponent vectors occurring with
nonzero coefficient) matters for weights, initial forms and Newton
diagrams.  Integer coefficients are cancelled exactly at parse time and
then discarded.

Variables are fixed as (x, y, z) in ambient dimension 3, (x, y, z, u) in
dimension 4, and (x, y, z, u, t) in dimension 5.
"""

from __future__ import annotations

from dataclasses import dataclass

VARIABLES = ("x", "y", "z", "u", "t")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}


class PolyError(ValueError):
    """Invalid polynomial input: bad syntax, bad variable, or empty support."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Monomial:
    """A single exponent vector, e.g. (1, 1, 0, 0) for x*y in four variables."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) not in (3, 4, 5):
            raise PolyError(f"monomial needs 3, 4 or 5 exponents, got {len(self.exponents)}")
        if any(not isinstance(e, int) or e < 0 for e in self.exponents):
            raise PolyError(f"exponents must be non-negative integers: {self.exponents!r}")

    @property
    def variable_count(self) -> int:
        return len(self.exponents)

    def degree(self) -> int:
        return sum(self.exponents)

    def is_constant(self) -> bool:
        return self.degree() == 0

    def divides(self, other: Monomial) -> bool:
        """Componentwise <=, i.e. ``other`` lies in the upward cone of ``self``."""
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __str__(self) -> str:
        if self.is_constant():
            return "1"
        parts = []
        for name, e in zip(VARIABLES, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class PolySupport:
    """Finite, non-empty monomial support of a polynomial with generic coefficients."""

    variable_count: int
    support: frozenset[Monomial]

    def __post_init__(self):
        if self.variable_count not in (3, 4, 5):
            raise PolyError(f"variable count must be 3, 4 or 5, got {self.variable_count}")
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))
        if not self.support:
            raise PolyError("empty support is not a valid equation or divisor")
        for m in self.support:
            if m.variable_count != self.variable_count:
                raise PolyError(f"monomial {m} does not have {self.variable_count} variables")

    def monomials(self) -> list[Monomial]:
        """Support in canonical (lexicographic) order."""
        return sorted(self.support)

    def __contains__(self, m: Monomial) -> bool:
        return m in self.support

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return " + ".join(str(m) for m in self.monomials())


def make_support(variable_count: int, vectors) -> PolySupport:
    """Build a PolySupport from raw exponent tuples."""
    return PolySupport(variable_count, frozenset(Monomial(tuple(v)) for v in vectors))


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := INT | VAR ('^' INT)?
    """

    def __init__(self, text: str, variable_count: int):
        self.text = text
        self.pos = 0
        self.nvars = variable_count

    def error(self, message: str):
        raise PolyError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def factor(self) -> tuple[int, tuple[int, ...]]:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input, expected a factor")
        if ch.isdigit():
            return self.take_int(), (0,) * self.nvars
        if ch.isalpha():
            if ch not in _VAR_INDEX:
                self.error(f"unknown variable {ch!r}")
            idx = _VAR_INDEX[ch]
            if idx >= self.nvars:
                self.error(f"variable {ch!r} is not available with {self.nvars} variables")
            self.pos += 1
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self.take_int()
            exps = [0] * self.nvars
            exps[idx] = power
            return 1, tuple(exps)
        self.error(f"unexpected character {ch!r}")

    def term(self) -> tuple[int, tuple[int, ...]]:
        coeff, exps = self.factor()
        while self.peek() == "*":
            self.pos += 1
            c2, e2 = self.factor()
            coeff *= c2
            exps = tuple(a + b for a, b in zip(exps, e2))
        return coeff, exps

    def parse(self) -> PolySupport:
        coeffs: dict[tuple[int, ...], int] = {}
        sign = 1
        while True:
            coeff, exps = self.term()
            coeffs[exps] = coeffs.get(exps, 0) + sign * coeff
            ch = self.peek()
            if ch is None:
                break
            if ch == "+":
                sign = 1
            elif ch == "-":
                sign = -1
            else:
                self.error(f"expected '+' or '-', found {ch!r}")
            self.pos += 1
        alive = [e for e, c in coeffs.items() if c != 0]
        if not alive:
            raise PolyError("all terms cancel: empty support is not a valid equation or divisor")
        return make_support(self.nvars, alive)


def parse_poly(text: str, variable_count: int) -> PolySupport:
    """Parse ``text`` into a support set, cancelling integer coefficients exactly."""
    return _Parser(text, variable_count).parse()


def format_poly(f: PolySupport) -> str:
    """Canonical printing; ``parse_poly(format_poly(f), n) == f``."""
    return str(f)


@dataclass(frozen=True)
class NewtonDiagram:
    """Upward-closed region spanned by a support set.

    Stored as the antichain of its componentwise-minimal generators; a
    point lies in the diagram iff some generator divides it.
    """

    variable_count: int
    generators: frozenset[Monomial]

    def contains_point(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def generators_sorted(self) -> list[Monomial]:
        return sorted(self.generators)


def gamma_plus(f: PolySupport) -> NewtonDiagram:
    """The extended Newton diagram of ``f``: minimal support points under componentwise <=."""
    minimal = [
        m for m in f.monomials()
        if not any(o != m and o.divides(m) for o in f.support)
    ]
    return NewtonDiagram(f.variable_count, frozenset(minimal))


def diagram_contains(outer: NewtonDiagram, inner: NewtonDiagram) -> bool:
    """True iff the inner diagram is a subset of the outer one."""
    if outer.variable_count != inner.variable_count:
        raise PolyError("diagrams live in different variable counts")
    return all(outer.contains_point(g) for g in inner.generators)


def monomial_character(m: Monomial, action) -> int:
    """Character of a monomial under a cyclic quotient action (sum of twists mod n)."""
    return sum(e * b for e, b in zip(m.exponents, action.b)) % action.n


def poly_character(f: PolySupport, action) -> int | None:
    """Common character of all monomials of ``f``, or None if they disagree."""
    chars = {monomial_character(m, action) for m in f.support}
    if len(chars) == 1:
        return chars.pop()
    return None


def is_semi_invariant(f: PolySupport, action) -> bool:
    """True iff every monomial of ``f`` has the same character under ``action``."""
    return poly_character(f, action) is not None
