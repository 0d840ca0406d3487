from __future__ import annotations

import logging

from .polynomial import Generator, Monomial, GradedPolynomial
from .ring import RewriteRule, RingPresentation, RingElement, validatePresentation
from .utils import type_checker, timer

logger = logging.getLogger(__name__)


class ProjectiveBundleRing:

    """Cohomology ring of the projectivised bundle P(E) over a base N.

    H*(P(E)) is presented as H*(N)[xi] modulo the fundamental relation
    ``xi^r + c_1(E) xi^(r-1) + ... + c_r(E) = 0``, where xi is the first Chern class of the dual
    tautological line bundle. In Mod2 mode xi has degree 1, ``rank`` is the real rank and the
    ``e_classes`` are Stiefel-Whitney classes.

    Parameters
    ----------
    base: :class:`~BULib.ring.RingPresentation`
        Presentation of H*(N).
    rank: :class:`int`
        Rank r of E, at least 1.
    e_classes: :class:`list` of :class:`~BULib.ring.RingElement`
        c_1(E), ..., c_k(E) with k <= r; missing classes are zero.
    xi_name: :class:`str`
        Name of the tautological generator.
    """

    @type_checker
    def __init__(self, *,
                 base     : RingPresentation,
                 rank     : int,
                 e_classes: list[RingElement],
                 xi_name  : str = "xi"):

        if rank < 1:
            raise ValueError(f"Bundle rank must be at least 1, got {rank}.")
        if len(e_classes) > rank:
            raise ValueError(f"Got {len(e_classes)} characteristic classes for a bundle of rank {rank}.")
        step = base.step
        padded = list(e_classes) + [base.zero()] * (rank - len(e_classes))
        for i, e in enumerate(padded, start=1):
            if e.ring is not base:
                raise ValueError(f"Class e_{i} = {e} does not live in {base.label!r}.")
            if not e.value.isHomogeneous(step * i):
                raise ValueError(f"Class e_{i} = {e} is not homogeneous of degree {step * i}.")
        if xi_name in {g.name for g in base.generators}:
            raise ValueError(f"Base ring {base.label!r} already has a generator named {xi_name!r}.")

        self.base = base
        self.rank = rank
        self.mode = base.mode
        self.e_classes = tuple(padded)
        self.xi = Generator(xi_name, step, "P(E)")

        xi = self._xi()
        relation = GradedPolynomial.zero(self.mode)
        for i, e in enumerate(self.e_classes, start=1):
            relation = relation + e.value * xi ** (rank - i)

        integrals = None
        if base.integrals is not None:
            top_xi = Monomial([(self.xi, rank - 1)])
            integrals = {m * top_xi: v for m, v in base.integrals.items()}

        self.ring = RingPresentation(
            generators=base.generators + [self.xi],
            dimension=base.dimension + step * (rank - 1),
            rules=base.rules + [RewriteRule(self.xi, rank, -relation)],
            integrals=integrals,
            truncations=base.truncations + [(frozenset(base.generators), base.dimension)],
            label=f"P(E) over {base.label}",
            mode=self.mode)

        report = validatePresentation(self.ring)
        if not report:
            raise ValueError(f"Invalid projective bundle presentation: {report.reason} ({report.counterexample}).")

    def _xi(self, exponent=1):
        return GradedPolynomial.fromGenerator(self.xi, self.mode, exponent)

    def xiElement(self) -> RingElement:
        return self.ring.element(self._xi())

    def pullback(self, beta: RingElement) -> RingElement:
        """p*: H*(N) -> H*(P(E))."""
        if beta.ring is not self.base:
            raise ValueError(f"Cannot pull back an element of {beta.ring.label!r} along P(E) -> {self.base.label}.")
        return self.ring.normalForm(beta.value)

    def totalChernE(self) -> RingElement:
        return self.base.one() + sum(self.e_classes, self.base.zero())

    def expandInXi(self, gamma: RingElement) -> list[RingElement]:
        """Unique coefficients ``[beta_0, ..., beta_(r-1)]`` with ``gamma = sum p*(beta_j) xi^j``."""
        if gamma.ring is not self.ring:
            raise ValueError(f"Element of {gamma.ring.label!r} is not a class on {self.ring.label!r}.")
        parts = gamma.value.splitByGenerator(self.xi)
        return [self.base.normalForm(parts.get(j, GradedPolynomial.zero(self.mode))) for j in range(self.rank)]

    def fromExpansion(self, betas) -> RingElement:
        """Inverse of :meth:`expandInXi`."""
        total = GradedPolynomial.zero(self.mode)
        for j, beta in enumerate(betas):
            total = total + beta.value * self._xi(j)
        return self.ring.normalForm(total)

    def fiberIntegrate(self, gamma: RingElement) -> RingElement:
        """Pushforward along p: the coefficient of xi^(r-1)."""
        return self.expandInXi(gamma)[self.rank - 1]

    def chernQ(self) -> RingElement:
        """Total class of the quotient bundle Q = p*E / l, from p*c(E) = c(Q)(1 - xi)."""
        inverse = (1 - self._xi()).geometricInverse(self.ring.dimension)
        c_E = self.totalChernE().value
        return self.ring.normalForm(c_E * inverse).projectDegrees(0, self.base.step * (self.rank - 1))

    def chernQTop(self) -> RingElement:
        """c_(r-1)(Q) = xi^(r-1) + c_1(E) xi^(r-2) + ... + c_(r-1)(E)."""
        total = self._xi(self.rank - 1)
        for i in range(1, self.rank):
            total = total + self.e_classes[i - 1].value * self._xi(self.rank - 1 - i)
        return self.ring.normalForm(total)

    def chernVertical(self) -> RingElement:
        """c(V) = sum_i c_i(E) (1 + xi)^(r-i) for the vertical tangent bundle V."""
        one_plus_xi = 1 + self._xi()
        total = one_plus_xi ** self.rank
        for i, e in enumerate(self.e_classes, start=1):
            total = total + e.value * one_plus_xi ** (self.rank - i)
        return self.ring.normalForm(total)

    def chernTotalPE(self, c_N: RingElement) -> RingElement:
        """c(P(E)) = c(V) p*c(N)."""
        return self.chernVertical() * self.pullback(c_N)

    def integrate(self, gamma: RingElement) -> int:
        return self.ring.integrate(gamma)

    def __repr__(self):
        return f"ProjectiveBundleRing(rank={self.rank}, base={self.base.label!r})"


@timer
def buildProjBundle(base: RingPresentation, rank: int, e_classes: list[RingElement],
                    xi_name: str = "xi") -> ProjectiveBundleRing:
    logger.info("Building P(E) over %s with rank %d.", base.label, rank)
    return ProjectiveBundleRing(base=base, rank=rank, e_classes=list(e_classes), xi_name=xi_name)
