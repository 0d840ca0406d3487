from __future__ import annotations

import abc
import logging

from .polynomial import Coefficients, Generator, Monomial, GradedPolynomial
from .ring import RingPresentation, RingElement
from .bundle import buildProjBundle
from .utils import type_checker, timer, WhitneyViolation, DimensionMismatch, TableInconsistency

logger = logging.getLogger(__name__)


class ManifoldModel(abc.ABC):

    """Cohomology of the ambient manifold M together with the embedding i: N -> M.

    A model knows H*(M), the total characteristic class of TM, the ring homomorphism
    i*: H*(M) -> H*(N), the Gysin map i^!: H*(N) -> H*(M) raising degrees by the
    codimension, and, for concrete manifolds, integration over M.
    """

    def __init__(self, *, n_ring, n_chern, codim, dimension, mode):
        if codim < 1:
            raise DimensionMismatch(f"Codimension parameter r must be at least 1, got {codim}.")
        if n_chern.ring is not n_ring:
            raise ValueError(f"c(N) = {n_chern} does not live in {n_ring.label!r}.")
        if n_ring.mode is not mode:
            raise ValueError(f"H*(N) is {n_ring.mode.value} but the model is {mode.value}.")
        if dimension != n_ring.dimension + mode.step * codim:
            raise DimensionMismatch(
                f"dim M = {dimension} but dim N + {'r' if mode is Coefficients.MOD2 else '2r'} = "
                f"{n_ring.dimension} + {mode.step * codim}.")
        self.n_ring = n_ring
        self.n_chern = n_chern
        self.codim = codim
        self.dimension = dimension
        self.mode = mode

    @property
    def step(self):
        return self.mode.step

    @property
    @abc.abstractmethod
    def total_chern(self):
        ...

    @abc.abstractmethod
    def element(self, p):
        """M-class from a polynomial in the generators of H*(M)."""

    @abc.abstractmethod
    def iStar(self, a) -> RingElement:
        ...

    @abc.abstractmethod
    def iShriek(self, beta: RingElement):
        ...

    @abc.abstractmethod
    def homogeneousBasis(self, degree: int) -> list:
        """Classes spanning the degree ``degree`` part of H*(M)."""

    @abc.abstractmethod
    def serialize(self, a):
        ...

    @property
    def hasIntegrals(self):
        return False

    def integrate(self, a) -> int:
        raise ValueError("Integration over M is not available for a formal manifold model.")

    def one(self):
        return self.element(1)

    def zero(self):
        return self.element(0)

    def chernClass(self, k: int):
        return self.total_chern.degreePart(self.step * k)


class PresentedModel(ManifoldModel):

    """Concrete H*(M) given by a presentation, with i* and i^! given as tables.

    The tables are validated on construction: i* must respect the relations of H*(M), i^! must cover
    every normal-form monomial of H*(N), raise degrees by the codimension, satisfy the projection formula
    ``i^!(beta i*(g)) = i^!(beta) g`` on every (monomial, generator) pair and, when both rings integrate,
    ``int_M i^!(beta) = int_N beta``. Any failure raises :class:`~BULib.utils.TableInconsistency`.

    Parameters
    ----------
    ring: :class:`~BULib.ring.RingPresentation`
        H*(M).
    total_chern: :class:`~BULib.ring.RingElement`
        c(M) (or w(M) in Mod2 mode).
    n_ring: :class:`~BULib.ring.RingPresentation`
        H*(N).
    n_chern: :class:`~BULib.ring.RingElement`
        c(N).
    codim: :class:`int`
        r, with dim M = dim N + 2r (dim N + r in Mod2 mode).
    i_star: :class:`dict`
        Image in H*(N) of every generator of H*(M).
    i_shriek: :class:`dict`
        Image in H*(M) of every normal-form monomial of H*(N).
    """

    @type_checker
    def __init__(self, *,
                 ring       : RingPresentation,
                 total_chern: RingElement,
                 n_ring     : RingPresentation,
                 n_chern    : RingElement,
                 codim      : int,
                 i_star     : dict[Generator, GradedPolynomial],
                 i_shriek   : dict[Monomial, GradedPolynomial]):

        super().__init__(n_ring=n_ring, n_chern=n_chern, codim=codim, dimension=ring.dimension, mode=ring.mode)
        if total_chern.ring is not ring:
            raise ValueError(f"c(M) = {total_chern} does not live in {ring.label!r}.")
        self.ring = ring
        self._total_chern = total_chern
        self._i_star = dict(i_star)
        self._i_shriek = {}
        self._validateIStar()
        self._validateIShriek(i_shriek)

    @property
    def total_chern(self):
        return self._total_chern

    @property
    def hasIntegrals(self):
        return self.ring.hasIntegrals

    def element(self, p):
        return self.ring.element(p)

    def _pullPolynomial(self, p: GradedPolynomial) -> RingElement:
        return self.n_ring.normalForm(p.mapGenerators(self._i_star))

    def iStar(self, a: RingElement) -> RingElement:
        return self._pullPolynomial(a.value)

    def iShriek(self, beta: RingElement) -> RingElement:
        if beta.ring is not self.n_ring:
            raise ValueError(f"i^! expects a class on {self.n_ring.label!r}, got one on {beta.ring.label!r}.")
        total = GradedPolynomial.zero(self.mode)
        for monomial, coeff in beta.value.terms.items():
            total = total + coeff * self._i_shriek[monomial]
        return self.ring.normalForm(total)

    def integrate(self, a: RingElement) -> int:
        return self.ring.integrate(a)

    def homogeneousBasis(self, degree: int) -> list:
        return [self.ring.normalForm(GradedPolynomial({m: 1}, self.mode))
                for m in self.ring.normalMonomials(degree)]

    def serialize(self, a: RingElement):
        return str(a)

    def _validateIStar(self):
        missing = set(self.ring.generators) - set(self._i_star)
        if missing:
            raise TableInconsistency(f"i* has no image for {', '.join(sorted(g.name for g in missing))}.")
        for g, image in self._i_star.items():
            if g not in self.ring.generators:
                raise TableInconsistency(f"i* maps {g}, which is not a generator of {self.ring.label!r}.")
            if image.generators() - set(self.n_ring.generators):
                raise TableInconsistency(f"i*({g}) = {image} is not a class on {self.n_ring.label!r}.")
            if not image.isHomogeneous(g.degree):
                raise TableInconsistency(f"i*({g}) = {image} does not have degree {g.degree}.")
        for rule in self.ring.rules:
            lhs = self._pullPolynomial(GradedPolynomial({rule.lhs: 1}, self.mode))
            rhs = self._pullPolynomial(rule.rhs)
            if lhs != rhs:
                raise TableInconsistency(f"i* does not respect the relation {rule}: {lhs} != {rhs}.")

    def _validateIShriek(self, table):
        shift = self.step * self.codim
        normal = self.n_ring.normalMonomials()
        for monomial in table:
            if monomial not in normal:
                raise TableInconsistency(f"i^! is given on {monomial}, which is not a normal-form monomial "
                                         f"of {self.n_ring.label!r}.")
        for monomial in normal:
            if monomial not in table:
                raise TableInconsistency(f"i^! has no value on {monomial}.")
            image = table[monomial]
            if image.generators() - set(self.ring.generators):
                raise TableInconsistency(f"i^!({monomial}) = {image} is not a class on {self.ring.label!r}.")
            if not image.isHomogeneous(monomial.degree + shift):
                raise TableInconsistency(f"i^!({monomial}) = {image} does not have degree {monomial.degree + shift}.")
            self._i_shriek[monomial] = self.ring.normalForm(image).value

        # projection formula on (monomial, generator) pairs
        for monomial in normal:
            beta = self.n_ring.normalForm(GradedPolynomial({monomial: 1}, self.mode))
            for g in self.ring.generators:
                a = self.ring.normalForm(GradedPolynomial.fromGenerator(g, self.mode))
                lhs = self.iShriek(beta * self.iStar(a))
                rhs = self.iShriek(beta) * a
                if lhs != rhs:
                    raise TableInconsistency(f"Projection formula fails: i^!({beta} * i*({g})) = {lhs} "
                                             f"but i^!({beta}) * {g} = {rhs}.")

        if self.ring.hasIntegrals and self.n_ring.hasIntegrals:
            for monomial in self.n_ring.normalMonomials(self.n_ring.dimension):
                beta = self.n_ring.normalForm(GradedPolynomial({monomial: 1}, self.mode))
                if self.integrate(self.iShriek(beta)) != beta.integrate():
                    raise TableInconsistency(f"int_M i^!({monomial}) differs from int_N {monomial}.")


class GysinPair:

    """Class ``u + i^!(v)`` on a formal manifold: ``u`` a polynomial in the formal classes of M, ``v`` in H*(N)."""

    __slots__ = ("u", "v", "model")

    def __init__(self, u: RingElement, v: RingElement, model: FormalGysinModel):
        self.u = u
        self.v = v
        self.model = model

    def _coerce(self, other):
        if isinstance(other, GysinPair):
            if other.model is not self.model:
                raise ValueError("Cannot combine classes of different formal models.")
            return other
        if type(other) is int:
            return self.model.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GysinPair(self.u + other.u, self.v + other.v, self.model)

    __radd__ = __add__

    def __neg__(self):
        return GysinPair(-self.u, -self.v, self.model)

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
        # (u + i^!v)(u' + i^!v') = uu' + i^!(v i*u' + v' i*u + v v' c_r(E)), by the projection and
        # self-intersection formulas
        m = self.model
        v = self.v * m.pullFormal(other.u) + other.v * m.pullFormal(self.u) + self.v * other.v * m.euler_class
        return GysinPair(self.u * other.u, v, m)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.model.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if type(other) is int:
            other = self.model.element(other)
        if not isinstance(other, GysinPair):
            return NotImplemented
        return self.model is other.model and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __bool__(self):
        return not self.isZero()

    def isZero(self):
        return self.u.isZero() and self.v.isZero()

    def degreePart(self, degree: int) -> GysinPair:
        shift = self.model.step * self.model.codim
        v = self.v.degreePart(degree - shift) if degree >= shift else self.model.n_ring.zero()
        return GysinPair(self.u.degreePart(degree), v, self.model)

    def __str__(self):
        if self.v.isZero():
            return str(self.u)
        if self.u.isZero():
            return f"i!({self.v})"
        return f"{self.u} + i!({self.v})"

    def __repr__(self):
        return f"GysinPair({self})"


class FormalGysinModel(ManifoldModel):

    """Generic ambient manifold M, known only through its characteristic classes and the Gysin map.

    H*(M) is modelled as pairs ``u + i^!(v)`` where ``u`` is a polynomial in formal classes
    ``m1, m2, ...`` (c_k(M), or w_k(M) in Mod2 mode) truncated at dim M, and ``v`` lies in H*(N).
    The product follows the projection formula and the self-intersection formula
    ``i*i^!(y) = y c_r(E)``. The restriction ``i* c(M) = c(N) c(E)`` holds by construction.

    Parameters
    ----------
    dimension: :class:`int`
        dim M.
    n_ring: :class:`~BULib.ring.RingPresentation`
        H*(N), typically from :func:`~BULib.functions.models.formalBaseRing`.
    n_chern: :class:`~BULib.ring.RingElement`
        c(N).
    codim: :class:`int`
        r.
    e_classes: :class:`list` of :class:`~BULib.ring.RingElement`
        c_1(E), ..., c_k(E), k <= r; missing classes are zero.
    """

    @type_checker
    def __init__(self, *,
                 dimension: int,
                 n_ring   : RingPresentation,
                 n_chern  : RingElement,
                 codim    : int,
                 e_classes: list[RingElement]):

        super().__init__(n_ring=n_ring, n_chern=n_chern, codim=codim, dimension=dimension, mode=n_ring.mode)
        step = self.step
        if len(e_classes) > codim:
            raise ValueError(f"Got {len(e_classes)} classes for a normal bundle of rank {codim}.")
        self.e_classes = tuple(e_classes) + (n_ring.zero(),) * (codim - len(e_classes))
        self.euler_class = self.e_classes[-1]

        gens = [Generator(f"m{k}", step * k, "M") for k in range(1, dimension // step + 1)]
        self.ring = RingPresentation(generators=gens, dimension=dimension, label="M (formal)", mode=self.mode)

        # i* c_k(M) = sum_{a+b=k} c_a(N) c_b(E)
        c_N = [n_chern.degreePart(step * a) for a in range(n_ring.dimension // step + 1)]
        c_E = (n_ring.one(),) + self.e_classes
        self._i_star = {}
        for g in gens:
            k = g.degree // step
            image = n_ring.zero()
            for a in range(min(k, len(c_N) - 1) + 1):
                if k - a < len(c_E):
                    image = image + c_N[a] * c_E[k - a]
            self._i_star[g] = image.value
        self._total_chern = self.element(1 + sum((GradedPolynomial.fromGenerator(g, self.mode) for g in gens),
                                                 GradedPolynomial.zero(self.mode)))

    @property
    def total_chern(self):
        return self._total_chern

    def element(self, p) -> GysinPair:
        return GysinPair(self.ring.element(p), self.n_ring.zero(), self)

    def pullFormal(self, u: RingElement) -> RingElement:
        return self.n_ring.normalForm(u.value.mapGenerators(self._i_star))

    def iStar(self, a: GysinPair) -> RingElement:
        return self.pullFormal(a.u) + a.v * self.euler_class

    def iShriek(self, beta: RingElement) -> GysinPair:
        if beta.ring is not self.n_ring:
            raise ValueError(f"i^! expects a class on {self.n_ring.label!r}, got one on {beta.ring.label!r}.")
        return GysinPair(self.ring.zero(), beta, self)

    def homogeneousBasis(self, degree: int) -> list:
        basis = [self.element(GradedPolynomial({m: 1}, self.mode)) for m in self.ring.normalMonomials(degree)]
        shift = self.step * self.codim
        if degree >= shift:
            basis += [self.iShriek(self.n_ring.normalForm(GradedPolynomial({m: 1}, self.mode)))
                      for m in self.n_ring.normalMonomials(degree - shift)]
        return basis

    def serialize(self, a: GysinPair):
        return {"class": str(a.u), "gysin": str(a.v)}


class BlowupElement:

    """Class on the blow-up in canonical Gysin-pair form.

    Represents ``f*(m_part) + sum_j i~^!(p*(beta_j) xi^j)`` for ``j = 0, ..., r-2``. The xi^(r-1)
    component is always traded for f*i^!(beta) through i~^!(p*(beta) c_(r-1)(Q)) = f* i^!(beta), so
    the representation is unique.
    """

    __slots__ = ("context", "m_part", "exc_part")

    def __init__(self, context: BlowupContext, m_part, exc_part: tuple):
        self.context = context
        self.m_part = m_part
        self.exc_part = tuple(exc_part)

    def _coerce(self, other):
        if isinstance(other, BlowupElement):
            if other.context is not self.context:
                raise ValueError("Cannot combine classes of different blow-ups.")
            return other
        if type(other) is int:
            return self.context.fPullback(self.context.model.element(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BlowupElement(self.context, self.m_part + other.m_part,
                             [a + b for a, b in zip(self.exc_part, other.exc_part)])

    __radd__ = __add__

    def __neg__(self):
        return BlowupElement(self.context, -self.m_part, [-b for b in self.exc_part])

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
        if type(other) is int:
            return BlowupElement(self.context, self.m_part * other, [b * other for b in self.exc_part])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.context.multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if type(n) is not int or n < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {n!r}.")
        result = self.context.fPullback(self.context.model.one())
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if type(other) is int:
            other = self._coerce(other)
        if not isinstance(other, BlowupElement):
            return NotImplemented
        return self.context is other.context and self.m_part == other.m_part and self.exc_part == other.exc_part

    def __hash__(self):
        return hash((self.m_part, self.exc_part))

    def __bool__(self):
        return not self.isZero()

    def isZero(self):
        return self.m_part == 0 and all(b.isZero() for b in self.exc_part)

    def degreePart(self, degree: int) -> BlowupElement:
        step = self.context.step
        n_zero = self.context.n_ring.zero()
        exc = [b.degreePart(degree - step * (j + 1)) if degree >= step * (j + 1) else n_zero
               for j, b in enumerate(self.exc_part)]
        return BlowupElement(self.context, self.m_part.degreePart(degree), exc)

    def excClass(self) -> RingElement:
        """The class sum_j p*(beta_j) xi^j on P(E)."""
        return self.context.pe.fromExpansion(list(self.exc_part) + [self.context.n_ring.zero()])

    def toDict(self):
        return {"m_part": self.context.model.serialize(self.m_part),
                "exc_parts": [str(b) for b in self.exc_part]}

    def __str__(self):
        pieces = []
        if not self.m_part == 0:
            pieces.append(f"f*({self.m_part})")
        gamma = self.excClass()
        if not gamma.isZero():
            pieces.append(f"i~!({gamma})")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"BlowupElement({self})"


class BlowupContext:

    """The blow-up of M along N: maps f, p, i~ of the blow-up square and the ring of the blow-up.

    The constructor checks the dimension equation and the Whitney relation ``i*c(M) = c(N) c(E)``
    (from 0 -> TN -> i*TM -> E -> 0) and builds H*(P(E)).

    Parameters
    ----------
    model: :class:`ManifoldModel`
        M with its embedding of N.
    e_classes: :class:`list` of :class:`~BULib.ring.RingElement`
        Characteristic classes of the normal bundle E; the rank is the model's codimension.
    label: :class:`str`
        Name used in output.
    """

    @type_checker
    def __init__(self, *,
                 model    : ManifoldModel,
                 e_classes: list[RingElement],
                 label    : str = ""):

        self.model = model
        self.label = label
        self.r = model.codim
        self.pe = buildProjBundle(model.n_ring, self.r, e_classes)
        if isinstance(model, FormalGysinModel) and tuple(self.pe.e_classes) != model.e_classes:
            raise ValueError("The normal bundle classes differ from those of the formal model.")
        self._checkWhitney()
        self._xi = self.pe.xiElement()
        logger.info("Blow-up context %r ready (dim M = %d, r = %d, %s).",
                    label, model.dimension, self.r, self.mode.value)

    @property
    def mode(self):
        return self.model.mode

    @property
    def step(self):
        return self.model.step

    @property
    def n_ring(self):
        return self.model.n_ring

    @property
    def dimension(self):
        return self.model.dimension

    def _checkWhitney(self):
        lhs = self.model.iStar(self.model.total_chern)
        rhs = self.model.n_chern * self.pe.totalChernE()
        for degree in range(0, self.n_ring.dimension + 1):
            if lhs.degreePart(degree) != rhs.degreePart(degree):
                raise WhitneyViolation(
                    f"i*c(M) and c(N)c(E) differ in degree {degree}: "
                    f"{lhs.degreePart(degree)} != {rhs.degreePart(degree)}.", degree=degree)

    # --- representation -------------------------------------------------------------------------

    def canonicalize(self, a, gamma: RingElement) -> BlowupElement:
        """Canonical form of ``f*(a) + i~^!(gamma)`` via ``i~^!(p*(y) c_(r-1)(Q)) = f* i^!(y)``."""
        betas = self.pe.expandInXi(gamma)
        top = betas[self.r - 1]
        if not top.isZero():
            gamma = gamma - self.pe.pullback(top) * self.pe.chernQTop()
            a = a + self.model.iShriek(top)
            betas = self.pe.expandInXi(gamma)
        return BlowupElement(self, a, betas[:self.r - 1])

    def fPullback(self, a) -> BlowupElement:
        return BlowupElement(self, a, [self.n_ring.zero()] * (self.r - 1))

    def iTildeShriek(self, gamma: RingElement) -> BlowupElement:
        if gamma.ring is not self.pe.ring:
            raise ValueError(f"i~^! expects a class on P(E), got one on {gamma.ring.label!r}.")
        return self.canonicalize(self.model.zero(), gamma)

    def iTildePullback(self, x: BlowupElement) -> RingElement:
        """i~*(x) = p* i*(m_part) - xi * sum_j p*(beta_j) xi^j (self-intersection with top class -xi)."""
        self._own(x)
        return self.pe.pullback(self.model.iStar(x.m_part)) - self._xi * x.excClass()

    def multiply(self, x: BlowupElement, y: BlowupElement) -> BlowupElement:
        """Cup product: (a, g)(a', g') = (aa', p*i*(a) g' + p*i*(a') g - xi g g')."""
        self._own(x)
        self._own(y)
        g, g2 = x.excClass(), y.excClass()
        pa = self.pe.pullback(self.model.iStar(x.m_part))
        pa2 = self.pe.pullback(self.model.iStar(y.m_part))
        return self.canonicalize(x.m_part * y.m_part, pa * g2 + pa2 * g - self._xi * g * g2)

    def exceptionalClass(self) -> BlowupElement:
        """i~^!(1), the Poincare dual of the exceptional divisor P(E)."""
        return self.iTildeShriek(self.pe.ring.one())

    def _own(self, x):
        if x.context is not self:
            raise ValueError("Class belongs to a different blow-up.")

    # --- integration ----------------------------------------------------------------------------

    def integratePair(self, a, gamma: RingElement) -> int:
        """int f*(a) + i~^!(gamma) = int_M a + int_N p_*(gamma), for any (not necessarily canonical) pair."""
        if not self.model.hasIntegrals:
            raise ValueError("Integration over the blow-up needs a concrete model of M.")
        return self.mode.reduce(self.model.integrate(a) + self.pe.fiberIntegrate(gamma).integrate())

    def integrateBlowup(self, x: BlowupElement) -> int:
        self._own(x)
        return self.integratePair(x.m_part, x.excClass())

    # --- blow-up formula ------------------------------------------------------------------------

    def blowupDefect(self) -> RingElement:
        """The class D on P(E) with c(M~) - f*c(M) = -i~^!(D).

        The bracket is divided by xi in the free ring H*(N)[xi], before the fundamental relation is
        applied; xi is a zero divisor in H*(P(E)).
        """
        pe = self.pe
        xi = GradedPolynomial.fromGenerator(pe.xi, self.mode)
        c_E = [GradedPolynomial.one(self.mode)] + [e.value for e in pe.e_classes]
        bracket = -sum(c_E, GradedPolynomial.zero(self.mode))
        for i, c in enumerate(c_E):
            bracket = bracket + c * (1 + xi) ** (self.r - i) * (1 - xi)
        quotient = bracket.exactDivideByGenerator(pe.xi)
        return pe.ring.normalForm(quotient * self.model.n_chern.value)

    @timer
    def _blowupFormula(self) -> BlowupElement:
        return self.fPullback(self.model.total_chern) - self.iTildeShriek(self.blowupDefect())

    def chernBlowup(self) -> BlowupElement:
        """Total Chern class of the blow-up."""
        if self.mode is not Coefficients.INTEGERS:
            raise ValueError("chernBlowup needs integer coefficients; use swBlowup in Mod2 mode.")
        return self._blowupFormula()

    def swBlowup(self) -> BlowupElement:
        """Total Stiefel-Whitney class of the blow-up."""
        if self.mode is not Coefficients.MOD2:
            raise ValueError("swBlowup needs Mod2 coefficients; use chernBlowup for Chern classes.")
        return self._blowupFormula()

    def totalClass(self) -> BlowupElement:
        return self.chernBlowup() if self.mode is Coefficients.INTEGERS else self.swBlowup()

    def characteristicClass(self, k: int) -> BlowupElement:
        return self.totalClass().degreePart(self.step * k)

    def __repr__(self):
        return f"BlowupContext({self.label!r}, r={self.r}, {self.mode.value})"


def buildContext(m_model: ManifoldModel, n_ring: RingPresentation, e_classes: list[RingElement],
                 label: str = "") -> BlowupContext:
    """Validate the blow-up data and return its :class:`BlowupContext`."""
    if n_ring is not m_model.n_ring:
        raise ValueError(f"H*(N) = {n_ring.label!r} is not the ring the model of M embeds.")
    return BlowupContext(model=m_model, e_classes=list(e_classes), label=label)


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def chernNumbers(ctx: BlowupContext) -> dict:
    """All characteristic numbers int c_lambda of the blow-up, keyed like ``"c1^2*c2"`` (``w`` in Mod2 mode)."""
    letter = "c" if ctx.mode is Coefficients.INTEGERS else "w"
    n = ctx.dimension // ctx.step
    total = ctx.totalClass()
    classes = {k: total.degreePart(ctx.step * k) for k in range(1, n + 1)}
    numbers = {}
    for partition in _partitions(n):
        product = ctx.fPullback(ctx.model.one())
        for k in partition:
            product = product * classes[k]
        counts = {}
        for k in partition:
            counts[k] = counts.get(k, 0) + 1
        key = "*".join(f"{letter}{k}" if e == 1 else f"{letter}{k}^{e}" for k, e in sorted(counts.items()))
        numbers[key] = ctx.integrateBlowup(product)
    return numbers


def eulerCharacteristic(ctx: BlowupContext) -> int:
    """int of the top class (reduced mod 2 in Mod2 mode)."""
    return ctx.integrateBlowup(ctx.totalClass().degreePart(ctx.dimension))
