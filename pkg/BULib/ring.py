from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

from .polynomial import Coefficients, Generator, Monomial, GradedPolynomial
from .utils import type_checker, ModeMismatch, ForeignGenerator
from . import MONOMIAL_ENUMERATION_LIMIT

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RewriteRule:

    """Monic rewrite rule ``generator^exponent -> rhs``."""

    generator: Generator
    exponent: int
    rhs: GradedPolynomial

    @property
    def lhs(self) -> Monomial:
        return Monomial([(self.generator, self.exponent)])

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


class RingPresentation:

    """Graded ring presented as a free polynomial ring modulo triangular monic rewrite rules.

    Every class of degree above :attr:`dimension` is zero. Additional ``truncations`` kill monomials whose
    degree, counted over a subset of the generators, exceeds a bound; the projective bundle ring uses one to
    make pulled-back classes vanish above the dimension of the base.

    Parameters
    ----------
    generators: :class:`list` of :class:`~BULib.polynomial.Generator`
        Ring generators.
    dimension: :class:`int`
        Real dimension of the manifold, i.e. the top cohomological degree.
    rules: :class:`list` of :class:`RewriteRule`, optional
        At most one rule per generator, triangular in some order of the generators.
    integrals: :class:`dict`, optional
        Value of the fundamental class on each top-degree normal-form monomial. ``None`` for formal rings,
        on which integration is an error.
    truncations: :class:`list` of (:class:`frozenset`, :class:`int`), optional
        Partial degree cutoffs.
    label: :class:`str`
        Name used in messages and output, e.g. ``"CP^2"``.
    mode: :class:`~BULib.polynomial.Coefficients`
        Coefficient ring.
    """

    @type_checker
    def __init__(self, *,
                 generators : list[Generator],
                 dimension  : int,
                 rules      : Optional[list[RewriteRule]] = None,
                 integrals  : Optional[dict[Monomial, int]] = None,
                 truncations: Optional[list[tuple[frozenset, int]]] = None,
                 label      : str = "",
                 mode       : Coefficients = Coefficients.INTEGERS):

        if dimension < 0:
            raise ValueError(f"Ring dimension must be non-negative, got {dimension}.")
        if mode is Coefficients.INTEGERS and dimension % 2:
            raise ValueError(f"Ring {label!r} has odd dimension {dimension}; only Mod2 rings may.")

        self.generators = list(generators)
        self.dimension = dimension
        self.rules = list(rules) if rules else []
        self.integrals = dict(integrals) if integrals is not None else None
        self.truncations = [(frozenset(gens), bound) for gens, bound in (truncations or [])]
        self.label = label
        self.mode = mode
        self._by_name = {g.name: g for g in self.generators}
        if len(self._by_name) != len(self.generators):
            raise ValueError(f"Ring {label!r} has repeated generator names.")

    @property
    def step(self):
        return self.mode.step

    @property
    def hasIntegrals(self):
        return self.integrals is not None

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise ForeignGenerator(f"Ring {self.label!r} has no generator named {name!r}.") from None

    def genElement(self, name: str) -> RingElement:
        return self.element(GradedPolynomial.fromGenerator(self.gen(name), self.mode))

    def element(self, p: Union[GradedPolynomial, int]) -> RingElement:
        if type(p) is int:
            p = GradedPolynomial.constant(p, self.mode)
        return self.normalForm(p)

    def one(self) -> RingElement:
        return self.element(1)

    def zero(self) -> RingElement:
        return self.element(0)

    # --- reduction ------------------------------------------------------------------------------

    def isTruncated(self, monomial: Monomial) -> bool:
        if monomial.degree > self.dimension:
            return True
        return any(monomial.restrictedDegree(gens) > bound for gens, bound in self.truncations)

    def _reduce(self, p: GradedPolynomial, rules) -> GradedPolynomial:
        pending = {m: c for m, c in p.terms.items() if not self.isTruncated(m)}
        done = {}
        while pending:
            monomial, coeff = pending.popitem()
            coeff = self.mode.reduce(coeff)
            if coeff == 0:
                continue
            rule = next((r for r in rules if monomial.exponent(r.generator) >= r.exponent), None)
            if rule is None:
                done[monomial] = done.get(monomial, 0) + coeff
                continue
            rest = monomial.quotient(rule.lhs)
            for m, c in rule.rhs.terms.items():
                product = rest * m
                if not self.isTruncated(product):
                    pending[product] = pending.get(product, 0) + coeff * c
        return GradedPolynomial(done, self.mode)

    def _checkOwnership(self, p: GradedPolynomial):
        if p.mode is not self.mode:
            raise ModeMismatch(f"Ring {self.label!r} is {self.mode.value}, polynomial is {p.mode.value}.")
        foreign = p.generators() - set(self.generators)
        if foreign:
            names = ", ".join(sorted(str(g) for g in foreign))
            raise ForeignGenerator(f"Generators {names} do not belong to ring {self.label!r}.")

    def normalForm(self, p: GradedPolynomial) -> RingElement:
        """Reduce ``p`` by the rewrite rules and the degree cutoffs to its unique normal form."""
        self._checkOwnership(p)
        return RingElement(self._reduce(p, self.rules), self)

    # --- integration ----------------------------------------------------------------------------

    def integrate(self, x: RingElement) -> int:
        """Evaluate ``x`` on the fundamental class; terms below the top degree contribute nothing."""
        if x.ring is not self:
            raise ValueError(f"Element of {x.ring.label!r} integrated over {self.label!r}.")
        if self.integrals is None:
            raise ValueError(f"Ring {self.label!r} is formal and has no integration table.")
        total = 0
        for monomial, coeff in x.value.homogeneousPart(self.dimension).terms.items():
            if monomial not in self.integrals:
                raise ValueError(f"Monomial {monomial} is missing from the integration table of {self.label!r}.")
            total += coeff * self.integrals[monomial]
        return self.mode.reduce(total)

    # --- enumeration ----------------------------------------------------------------------------

    def _enumerate(self, max_degree, bounded_by_rules, limit):
        exponent_caps = {r.generator: r.exponent - 1 for r in self.rules} if bounded_by_rules else {}
        gens = sorted(self.generators, key=lambda g: g.sortKey)
        found = []

        def _walk(index, powers, degree):
            if len(found) >= limit:
                return
            if index == len(gens):
                monomial = Monomial(powers)
                if not self.isTruncated(monomial):
                    found.append(monomial)
                return
            g = gens[index]
            cap = (max_degree - degree) // g.degree
            cap = min(cap, exponent_caps.get(g, cap))
            for e in range(cap + 1):
                trial = Monomial(powers + [(g, e)])
                if e and self.isTruncated(trial):
                    break
                _walk(index + 1, powers + [(g, e)], degree + e * g.degree)

        _walk(0, [], 0)
        if len(found) >= limit:
            logger.warning("Monomial enumeration for %r stopped at the limit of %d.", self.label, limit)
        return sorted(found, key=lambda m: m.sortKey)

    def normalMonomials(self, degree: Optional[int] = None, limit: int = MONOMIAL_ENUMERATION_LIMIT):
        """Reduced monomials, all degrees up to the dimension or only ``degree``."""
        top = self.dimension if degree is None else degree
        if top < 0 or top > self.dimension:
            return []
        monomials = self._enumerate(top, True, limit)
        if degree is not None:
            monomials = [m for m in monomials if m.degree == degree]
        return monomials

    def __repr__(self):
        return f"RingPresentation({self.label!r}, dim={self.dimension}, {self.mode.value})"


class RingElement:

    """A class in a presented ring, always held in normal form."""

    __slots__ = ("value", "ring")

    def __init__(self, value: GradedPolynomial, ring: RingPresentation):
        self.value = value
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise ValueError(f"Cannot combine elements of {self.ring.label!r} and {other.ring.label!r}.")
            return other
        if type(other) is int:
            return self.ring.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.value + other.value, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(-self.value, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.value - other.value, self.ring)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(other.value - self.value, self.ring)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.ring.normalForm(self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, n):
        if type(n) is not int or n < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {n!r}.")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if type(other) is int:
            other = self.ring.element(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.value == other.value

    def __hash__(self):
        return hash((id(self.ring), self.value))

    def __bool__(self):
        return bool(self.value)

    def isZero(self):
        return self.value.isZero()

    def projectDegrees(self, lo: int, hi: Optional[int] = None) -> RingElement:
        return RingElement(self.value.projectDegrees(lo, hi), self.ring)

    def degreePart(self, degree: int) -> RingElement:
        return self.projectDegrees(degree, degree)

    def integrate(self) -> int:
        return self.ring.integrate(self)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"RingElement({self.value}, {self.ring.label!r})"


@dataclass(frozen=True)
class ValidationReport:

    passed: bool
    reason: str = ""
    counterexample: Optional[Monomial] = None

    def __bool__(self):
        return self.passed


def _fail(reason, counterexample=None):
    return ValidationReport(False, reason, counterexample)


def _triangularOrder(ring):
    """Order of the ruled generators in which each rule only uses earlier generators (or itself)."""
    deps = {r.generator: r.rhs.generators() - {r.generator} for r in ring.rules}
    order, state = [], {}

    def _visit(g):
        if state.get(g) == "done":
            return True
        if state.get(g) == "active":
            return False
        state[g] = "active"
        for h in deps.get(g, ()):
            if not _visit(h):
                return False
        state[g] = "done"
        order.append(g)
        return True

    for g in sorted(deps, key=lambda g: g.sortKey):
        if not _visit(g):
            return None
    return order


def validatePresentation(ring: RingPresentation) -> ValidationReport:
    """Check homogeneity, triangularity, confluence and the integration table of ``ring``.

    Returns a :class:`ValidationReport`; failures are reported, never raised.

    Confluence is tested by reducing every monomial up to the dimension under the given rule order and under
    its reverse. With two rules these are all the orders there are; with three or more, other orders are not
    tried, so a passing report is not a proof of confluence.
    """
    seen = set()
    for rule in ring.rules:
        if rule.generator in seen:
            return _fail(f"more than one rule for generator {rule.generator}", rule.lhs)
        seen.add(rule.generator)
        if rule.generator not in ring.generators:
            return _fail(f"rule for foreign generator {rule.generator}", rule.lhs)
        if rule.exponent < 1:
            return _fail("lhs exponent must be positive", rule.lhs)
        if rule.rhs.mode is not ring.mode:
            return _fail("rhs coefficient mode differs from the ring", rule.lhs)
        if not rule.rhs.isHomogeneous(rule.lhs.degree):
            return _fail("inhomogeneous rhs", rule.lhs)
        if rule.rhs.generators() - set(ring.generators):
            return _fail("foreign generator in rhs", rule.lhs)
        for monomial in rule.rhs.terms:
            if monomial.exponent(rule.generator) >= rule.exponent:
                return _fail("rhs not reduced in its own generator", monomial)

    if _triangularOrder(ring) is None:
        return _fail("rules are not triangular")

    # local confluence on every monomial up to the dimension: forward vs. reversed rule order
    if len(ring.rules) > 1:
        for monomial in ring._enumerate(ring.dimension, False, MONOMIAL_ENUMERATION_LIMIT):
            p = GradedPolynomial({monomial: 1}, ring.mode)
            if ring._reduce(p, ring.rules) != ring._reduce(p, list(reversed(ring.rules))):
                return _fail("rewriting is not confluent", monomial)

    if ring.integrals is not None:
        for monomial in ring.integrals:
            if monomial.degree != ring.dimension:
                return _fail("integration table entry below the top degree", monomial)
            if ring._reduce(GradedPolynomial({monomial: 1}, ring.mode), ring.rules) != \
                    GradedPolynomial({monomial: 1}, ring.mode):
                return _fail("integration table entry is not in normal form", monomial)

    logger.debug("Presentation %r validated.", ring.label)
    return ValidationReport(True)
