from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Optional

from .utils import type_checker, ModeMismatch, NotDivisible


class Coefficients(enum.Enum):

    """Coefficient ring of a computation: the integers, or the two-element field."""

    INTEGERS = "integers"
    MOD2 = "mod2"

    def reduce(self, c: int) -> int:
        return c % 2 if self is Coefficients.MOD2 else c

    @property
    def step(self) -> int:
        """Cohomological degree of the first characteristic class (2 for c_1, 1 for w_1)."""
        return 1 if self is Coefficients.MOD2 else 2


@dataclass(frozen=True)
class Generator:

    """A polynomial generator with its cohomological degree.

    Parameters
    ----------
    name: :class:`str`
        Identifier used for printing and parsing, e.g. ``"h"``, ``"xi"``, ``"e1"``.
    degree: :class:`int`
        Cohomological degree, at least 1. Chern classes c_i have degree 2i.
    space: :class:`str`
        Tag of the space whose cohomology ring owns the generator.
    """

    name: str
    degree: int
    space: str = ""

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.isidentifier():
            raise ValueError(f"Generator name {self.name!r} is not an identifier.")
        if type(self.degree) is not int or self.degree < 1:
            raise ValueError(f"Generator {self.name} must have a positive integer degree, got {self.degree!r}.")

    @property
    def sortKey(self):
        return (self.degree, self.name, self.space)

    def __str__(self):
        return self.name


class Monomial:

    """Product of generator powers, stored sorted by generator so equal monomials hash equally."""

    __slots__ = ("_powers", "_degree", "_hash")

    def __init__(self, powers=()):
        if isinstance(powers, dict):
            powers = powers.items()
        exponents = {}
        for g, e in powers:
            if type(e) is not int or e < 0:
                raise ValueError(f"Exponent of {g} must be a non-negative integer, got {e!r}.")
            exponents[g] = exponents.get(g, 0) + e
        self._powers = tuple(sorted(((g, e) for g, e in exponents.items() if e > 0),
                                    key=lambda ge: ge[0].sortKey))
        self._degree = sum(g.degree * e for g, e in self._powers)
        self._hash = hash(self._powers)

    @classmethod
    def one(cls):
        return cls()

    @property
    def powers(self):
        return self._powers

    @property
    def degree(self):
        return self._degree

    @property
    def sortKey(self):
        return (self._degree, tuple((g.name, g.space, -e) for g, e in self._powers))

    def isOne(self):
        return not self._powers

    def generators(self):
        return {g for g, _ in self._powers}

    def exponent(self, g: Generator) -> int:
        for h, e in self._powers:
            if h == g:
                return e
        return 0

    def restrictedDegree(self, gens) -> int:
        """Degree counted only over the generators in ``gens``."""
        return sum(g.degree * e for g, e in self._powers if g in gens)

    def without(self, g: Generator) -> Monomial:
        return Monomial((h, e) for h, e in self._powers if h != g)

    def divides(self, other: Monomial) -> bool:
        return all(other.exponent(g) >= e for g, e in self._powers)

    def quotient(self, divisor: Monomial) -> Monomial:
        if not divisor.divides(self):
            raise NotDivisible(f"{divisor} does not divide {self}.", monomial=self)
        return Monomial((g, e - divisor.exponent(g)) for g, e in self._powers)

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self._powers + other._powers)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sortKey < other.sortKey

    def __str__(self):
        if not self._powers:
            return "1"
        return "*".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in self._powers)

    def __repr__(self):
        return f"Monomial({self})"


class GradedPolynomial:

    """Sparse polynomial with exact coefficients, graded by cohomological degree.

    Terms are kept in canonical sparse form: every stored coefficient is nonzero, and in
    :attr:`Coefficients.MOD2` mode every stored coefficient is 1. Instances are immutable.

    Parameters
    ----------
    terms: :class:`dict` | iterable of (:class:`Monomial`, :class:`int`)
        Coefficient of each monomial; repeated monomials are summed.
    mode: :class:`Coefficients`
        Integers (Chern mode, all generator degrees even) or Mod2.
    """

    __slots__ = ("_terms", "mode")

    def __init__(self, terms=None, mode: Coefficients = Coefficients.INTEGERS):
        if not isinstance(mode, Coefficients):
            raise TypeError(f"Argument 'mode' = {mode!r} is not a Coefficients member")
        self.mode = mode
        collected = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for monomial, coeff in items:
                if type(coeff) is not int:
                    raise TypeError(f"Coefficient {coeff!r} of {monomial} is not an integer.")
                collected[monomial] = collected.get(monomial, 0) + coeff
        clean = {}
        for monomial, coeff in collected.items():
            coeff = mode.reduce(coeff)
            if coeff == 0:
                continue
            if mode is Coefficients.INTEGERS:
                for g, _ in monomial.powers:
                    if g.degree % 2:
                        raise ValueError(f"Generator {g} has odd degree {g.degree}; "
                                         "odd degrees are only allowed with Mod2 coefficients.")
            clean[monomial] = coeff
        self._terms = clean

    # --- constructors ---------------------------------------------------------------------------

    @classmethod
    def zero(cls, mode: Coefficients = Coefficients.INTEGERS):
        return cls(None, mode)

    @classmethod
    def one(cls, mode: Coefficients = Coefficients.INTEGERS):
        return cls.constant(1, mode)

    @classmethod
    def constant(cls, c: int, mode: Coefficients = Coefficients.INTEGERS):
        return cls({Monomial.one(): c}, mode)

    @classmethod
    def fromGenerator(cls, g: Generator, mode: Coefficients = Coefficients.INTEGERS, exponent: int = 1):
        return cls({Monomial([(g, exponent)]): 1}, mode)

    # --- inspection -----------------------------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def sortedTerms(self):
        return sorted(self._terms.items(), key=lambda mc: mc[0].sortKey)

    def isZero(self):
        return not self._terms

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(monomial, 0)

    def constantTerm(self) -> int:
        return self._terms.get(Monomial.one(), 0)

    def generators(self):
        gens = set()
        for monomial in self._terms:
            gens |= monomial.generators()
        return gens

    def degrees(self):
        return sorted({m.degree for m in self._terms})

    def isHomogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = self.degrees()
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees[0] == degree

    def projectDegrees(self, lo: int, hi: Optional[int] = None) -> GradedPolynomial:
        """Keep exactly the terms with ``lo <= degree <= hi`` (``hi=None`` means no upper bound)."""
        if lo < 0 or (hi is not None and hi < lo):
            raise ValueError(f"Invalid degree window [{lo}, {hi}].")
        return GradedPolynomial({m: c for m, c in self._terms.items()
                                 if m.degree >= lo and (hi is None or m.degree <= hi)}, self.mode)

    def homogeneousPart(self, degree: int) -> GradedPolynomial:
        return self.projectDegrees(degree, degree)

    def splitByGenerator(self, g: Generator):
        """Map each exponent ``j`` of ``g`` to the polynomial ``q_j`` with ``self = sum q_j g^j``."""
        parts = {}
        for monomial, coeff in self._terms.items():
            parts.setdefault(monomial.exponent(g), {})[monomial.without(g)] = coeff
        return {j: GradedPolynomial(t, self.mode) for j, t in sorted(parts.items())}

    # --- arithmetic -----------------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GradedPolynomial):
            if other.mode is not self.mode:
                raise ModeMismatch(f"Cannot combine {self.mode.value} and {other.mode.value} polynomials.")
            return other
        if type(other) is int:
            return GradedPolynomial.constant(other, self.mode)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
        return GradedPolynomial(terms, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial({m: -c for m, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return GradedPolynomial(terms, self.mode)

    __rmul__ = __mul__

    def __pow__(self, n):
        if type(n) is not int or n < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {n!r}.")
        result = GradedPolynomial.one(self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if type(other) is int:
            other = GradedPolynomial.constant(other, self.mode)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.mode is other.mode and self._terms == other._terms

    def __hash__(self):
        return hash((self.mode, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    # --- operations -----------------------------------------------------------------------------

    def geometricInverse(self, hi: int) -> GradedPolynomial:
        """Inverse up to degree ``hi`` as a truncated geometric series.

        The constant term must be a unit: 1 (or -1 with integer coefficients).
        """
        c = self.constantTerm()
        if c not in ((1,) if self.mode is Coefficients.MOD2 else (1, -1)):
            raise ValueError(f"Constant term {c} of {self} is not a unit.")
        # self = c(1 + w) with w of positive degree, so 1/self = c * sum (-w)^k
        minus_w = -(self * c - 1)
        result = GradedPolynomial.zero(self.mode)
        term = GradedPolynomial.one(self.mode)
        while term:
            result = result + term
            term = (term * minus_w).projectDegrees(0, hi)
        return result * c

    def exactDivideByGenerator(self, g: Generator) -> GradedPolynomial:
        """Return ``q`` with ``q * g == self`` in the free polynomial ring."""
        factor = Monomial([(g, 1)])
        terms = {}
        for monomial, coeff in self._terms.items():
            if monomial.exponent(g) < 1:
                raise NotDivisible(f"Term {coeff}*{monomial} is not divisible by {g}.", monomial=monomial)
            terms[monomial.quotient(factor)] = coeff
        return GradedPolynomial(terms, self.mode)

    @type_checker
    def mapGenerators(self, assignment: dict[Generator, GradedPolynomial]) -> GradedPolynomial:
        """Substitution homomorphism; generators missing from ``assignment`` map to themselves."""
        for g, image in assignment.items():
            if not isinstance(image, GradedPolynomial):
                raise TypeError(f"Image {image!r} of {g} is not a GradedPolynomial.")
            self._coerce(image)
            if not image.isHomogeneous(g.degree):
                raise ValueError(f"Image {image} of {g} is not homogeneous of degree {g.degree}.")
        powers = {}

        def _power(g, e):
            if (g, e) not in powers:
                powers[(g, e)] = assignment[g] ** e
            return powers[(g, e)]

        result = GradedPolynomial.zero(self.mode)
        for monomial, coeff in self._terms.items():
            kept = []
            value = GradedPolynomial.constant(coeff, self.mode)
            for g, e in monomial.powers:
                if g in assignment:
                    value = value * _power(g, e)
                else:
                    kept.append((g, e))
            result = result + value * GradedPolynomial({Monomial(kept): 1}, self.mode)
        return result

    # --- printing -------------------------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coeff in self.sortedTerms():
            magnitude = abs(coeff)
            if monomial.isOne():
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = f"{magnitude}*{monomial}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"GradedPolynomial({self}, {self.mode.value})"

