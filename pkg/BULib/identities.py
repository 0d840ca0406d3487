from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from astropy.table import Table

from .polynomial import GradedPolynomial
from .functions.special_cases import pointBlowupDefect, firstClassFormula, secondClassFormula
from . import DEFAULT_TRIALS, DEFAULT_SEED, MAX_RANDOM_TERMS, MAX_RANDOM_COEFFICIENT

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckReport:

    """Outcome of one identity check.

    A failed check always carries a counterexample: the inputs, both sides as class strings, and for
    multi-law checks the name of the law that broke.
    """

    check_name: str
    passed: bool
    trials: int
    counterexample: Optional[dict] = field(default=None)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed

    def toDict(self):
        out = {"check": self.check_name, "status": self.status, "trials": self.trials}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class _Failure(Exception):

    def __init__(self, counterexample):
        super().__init__(counterexample)
        self.counterexample = counterexample


def _expectEqual(left, right, **inputs):
    if left != right:
        raise _Failure({"inputs": {k: str(v) for k, v in inputs.items()}, "left": str(left), "right": str(right)})


def _run(name, cases):
    """Evaluate ``cases`` (an iterable of zero-argument callables) until one fails."""
    count = 0
    try:
        for case in cases:
            case()
            count += 1
    except _Failure as failure:
        logger.warning("Check %s failed after %d trials: %s", name, count, failure.counterexample)
        return CheckReport(name, False, count + 1, failure.counterexample)
    logger.info("Check %s passed %d trials.", name, count)
    return CheckReport(name, True, count)


# --- random classes -----------------------------------------------------------------------------

def _rng(name, seed):
    return np.random.default_rng([seed, CHECK_ORDER.index(name)])


def _randomDegree(rng, lo, hi, step):
    lo = -(-max(lo, 0) // step) * step
    if hi < lo:
        return None
    return lo + step * int(rng.integers(0, (hi - lo) // step + 1))


def _combination(rng, basis, zero):
    if not basis:
        return zero
    total = zero
    for _ in range(int(rng.integers(1, MAX_RANDOM_TERMS + 1))):
        coeff = int(rng.integers(1, MAX_RANDOM_COEFFICIENT + 1)) * int(rng.choice([-1, 1]))
        total = total + basis[int(rng.integers(0, len(basis)))] * coeff
    return total


def _ringBasis(ring, degree):
    return [ring.normalForm(GradedPolynomial({m: 1}, ring.mode)) for m in ring.normalMonomials(degree)]


def randomNClass(ctx, rng, degree):
    return _combination(rng, _ringBasis(ctx.n_ring, degree), ctx.n_ring.zero())


def randomPEClass(ctx, rng, degree):
    return _combination(rng, _ringBasis(ctx.pe.ring, degree), ctx.pe.ring.zero())


def randomMClass(ctx, rng, degree):
    return _combination(rng, ctx.model.homogeneousBasis(degree), ctx.model.zero())


def randomBlowupClass(ctx, rng, degree):
    """Homogeneous class ``f*(a) + i~^!(gamma)`` of the given degree with random a and gamma."""
    x = ctx.fPullback(randomMClass(ctx, rng, degree))
    if degree >= ctx.step:
        x = x + ctx.iTildeShriek(randomPEClass(ctx, rng, degree - ctx.step))
    return x


def _blowupDegree(ctx, rng):
    return _randomDegree(rng, 0, ctx.dimension, ctx.step)


def _peDegree(ctx, rng):
    return _randomDegree(rng, 0, ctx.pe.ring.dimension, ctx.step)


def _nDegree(ctx, rng):
    return _randomDegree(rng, 0, ctx.n_ring.dimension, ctx.step)


# --- checks -------------------------------------------------------------------------------------

def checkProjectionFormula(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """x * i~^!(gamma) = i~^!(i~*(x) gamma), product computed by :meth:`multiply`, right side by pull-back."""
    name = "projection_formula"
    rng = _rng(name, seed)
    xi = ctx.pe.xiElement()

    def case(x, gamma):
        def run():
            _expectEqual(x * ctx.iTildeShriek(gamma), ctx.iTildeShriek(ctx.iTildePullback(x) * gamma),
                         x=x, gamma=gamma)
        return run

    def cases():
        yield case(ctx.fPullback(ctx.model.one()), ctx.pe.ring.one())
        yield case(ctx.fPullback(ctx.model.chernClass(1)), xi)
        for _ in range(trials):
            yield case(randomBlowupClass(ctx, rng, _blowupDegree(ctx, rng)), randomPEClass(ctx, rng, _peDegree(ctx, rng)))

    return _run(name, cases())


def checkSelfIntersection(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """i*i^!(y) = y c_r(E) on M, and i~*i~^!(gamma) = -gamma xi on the blow-up."""
    name = "self_intersection"
    rng = _rng(name, seed)
    model, pe = ctx.model, ctx.pe
    euler = pe.e_classes[-1]
    xi = pe.xiElement()

    def case(y, gamma):
        def run():
            _expectEqual(model.iStar(model.iShriek(y)), y * euler, y=y)
            _expectEqual(ctx.iTildePullback(ctx.iTildeShriek(gamma)), -gamma * xi, gamma=gamma)
        return run

    def cases():
        yield case(ctx.n_ring.one(), pe.ring.one())
        for _ in range(trials):
            yield case(randomNClass(ctx, rng, _nDegree(ctx, rng)), randomPEClass(ctx, rng, _peDegree(ctx, rng)))

    return _run(name, cases())


def checkFormuleClef(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """f*i^!(y) and i~^!(p*(y) c_(r-1)(Q)) have the same canonical form."""
    name = "formule_clef"
    rng = _rng(name, seed)
    pe = ctx.pe
    top_q = pe.chernQTop()

    def case(y):
        def run():
            _expectEqual(ctx.fPullback(ctx.model.iShriek(y)), ctx.iTildeShriek(pe.pullback(y) * top_q), y=y)
        return run

    def cases():
        yield case(ctx.n_ring.zero())
        yield case(ctx.n_ring.one())
        for g in ctx.n_ring.generators:
            yield case(ctx.n_ring.genElement(g.name))
        for _ in range(trials):
            yield case(randomNClass(ctx, rng, _nDegree(ctx, rng)))

    return _run(name, cases())


def checkLemmaYXi(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """For y~ = i~^!(y) + f*(a) with i*(a) = 0: i~*(y~) = -y xi and the residual f*(a) restricts to zero."""
    name = "lemma_y_xi"
    rng = _rng(name, seed)
    xi = ctx.pe.xiElement()

    def case(y, a):
        def run():
            y_tilde = ctx.iTildeShriek(y) + ctx.fPullback(a)
            _expectEqual(ctx.iTildePullback(y_tilde), -y * xi, y=y, a=a)
            residual = y_tilde - ctx.iTildeShriek(y)
            _expectEqual(ctx.iTildePullback(residual), ctx.pe.ring.zero(), y=y, a=a)
        return run

    def cases():
        yield case(ctx.pe.ring.one(), ctx.model.zero())
        for _ in range(trials):
            y = randomPEClass(ctx, rng, _peDegree(ctx, rng))
            # classes above dim N restrict to zero on N
            degree = _randomDegree(rng, ctx.n_ring.dimension + 1, ctx.dimension, ctx.step)
            a = randomMClass(ctx, rng, degree) if degree is not None else ctx.model.zero()
            yield case(y, a)

    return _run(name, cases())


def checkSpecialCases(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """Compare the blow-up class with the closed forms whose hypotheses ``ctx`` meets.

    The first-class formula always applies; the binomial formula needs N to be a point and the
    second-class formula a normal bundle of rank 2.
    """
    name = "special_cases"
    total = ctx.totalClass()

    def first():
        _expectEqual(total.degreePart(ctx.step), firstClassFormula(ctx), case="first class")

    def point():
        _expectEqual(total - ctx.fPullback(ctx.model.total_chern), pointBlowupDefect(ctx), case="point blow-up")

    def second():
        _expectEqual(total.degreePart(2 * ctx.step), secondClassFormula(ctx), case="second class")

    cases = [first]
    if ctx.n_ring.dimension == 0:
        cases.append(point)
    if ctx.r == 2:
        cases.append(second)
    return _run(name, cases)


def checkTangentRestriction(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """i~*c(M~) = c(P(E)) (1 - xi), from 0 -> TP(E) -> i~*TM~ -> l -> 0."""
    name = "tangent_restriction"
    pe = ctx.pe

    def run():
        _expectEqual(ctx.iTildePullback(ctx.totalClass()),
                     pe.chernTotalPE(ctx.model.n_chern) * (1 - pe.xiElement()))

    return _run(name, [run])


def checkRingAxioms(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """Commutativity, associativity and distributivity of the product, and i~* multiplicative."""
    name = "ring_axioms"
    rng = _rng(name, seed)

    def case(x, y, z):
        def run():
            _expectEqual(x * y, y * x, law="commutativity", x=x, y=y)
            _expectEqual((x * y) * z, x * (y * z), law="associativity", x=x, y=y, z=z)
            _expectEqual(x * (y + z), x * y + x * z, law="distributivity", x=x, y=y, z=z)
            _expectEqual(ctx.iTildePullback(x * y), ctx.iTildePullback(x) * ctx.iTildePullback(y),
                         law="restriction is multiplicative", x=x, y=y)
        return run

    def cases():
        for _ in range(trials):
            degree_x = _blowupDegree(ctx, rng)
            degree_y = _blowupDegree(ctx, rng)
            x = randomBlowupClass(ctx, rng, degree_x)
            y = randomBlowupClass(ctx, rng, degree_y)
            # y and z share a degree so that y + z stays homogeneous
            z = randomBlowupClass(ctx, rng, degree_y)
            yield case(x, y, z)

    return _run(name, cases())


def checkWhitneyPullback(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """i~*f*c(M) = p*c(N) p*c(E)."""
    name = "whitney_pullback"
    pe = ctx.pe

    def run():
        _expectEqual(ctx.iTildePullback(ctx.fPullback(ctx.model.total_chern)),
                     pe.pullback(ctx.model.n_chern) * pe.pullback(pe.totalChernE()))

    return _run(name, [run])


def checkIntegrationInvariance(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """int f*(a) + i~^!(gamma) is the same before and after canonicalization."""
    name = "integration_invariance"
    if not ctx.model.hasIntegrals:
        raise ValueError("Integration invariance needs a concrete model of M.")
    rng = _rng(name, seed)

    def case(a, gamma):
        def run():
            _expectEqual(ctx.integratePair(a, gamma), ctx.integrateBlowup(ctx.canonicalize(a, gamma)),
                         a=a, gamma=gamma)
        return run

    def cases():
        for _ in range(trials):
            yield case(randomMClass(ctx, rng, ctx.dimension), randomPEClass(ctx, rng, ctx.dimension - ctx.step))

    return _run(name, cases())


def checkExcisionLemma(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """For gamma = p*(beta) c_(r-1)(Q) with beta c_r(E) = 0: gamma xi = 0 and i~^!(gamma) = f*i^!(beta)."""
    name = "excision_lemma"
    rng = _rng(name, seed)
    pe = ctx.pe
    xi = pe.xiElement()
    top_q = pe.chernQTop()
    # beta c_r(E) vanishes for degree reasons
    lo = ctx.n_ring.dimension - ctx.step * ctx.r + 1

    def case(beta):
        def run():
            gamma = pe.pullback(beta) * top_q
            _expectEqual(gamma * xi, pe.ring.zero(), beta=beta)
            _expectEqual(ctx.iTildeShriek(gamma), ctx.fPullback(ctx.model.iShriek(beta)), beta=beta)
        return run

    def cases():
        for _ in range(trials):
            yield case(randomNClass(ctx, rng, _randomDegree(rng, lo, ctx.n_ring.dimension, ctx.step)))

    return _run(name, cases())


CHECK_ORDER = [
    "projection_formula",
    "self_intersection",
    "formule_clef",
    "lemma_y_xi",
    "special_cases",
    "tangent_restriction",
    "ring_axioms",
    "whitney_pullback",
    "integration_invariance",
    "excision_lemma",
]

CHECKS = {
    "projection_formula": checkProjectionFormula,
    "self_intersection": checkSelfIntersection,
    "formule_clef": checkFormuleClef,
    "lemma_y_xi": checkLemmaYXi,
    "special_cases": checkSpecialCases,
    "tangent_restriction": checkTangentRestriction,
    "ring_axioms": checkRingAxioms,
    "whitney_pullback": checkWhitneyPullback,
    "integration_invariance": checkIntegrationInvariance,
    "excision_lemma": checkExcisionLemma,
}


def applicableChecks(ctx):
    names = list(CHECK_ORDER)
    if not (ctx.model.hasIntegrals and ctx.n_ring.hasIntegrals):
        names.remove("integration_invariance")
    return names


def runChecks(ctx, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    """Run every check that applies to ``ctx`` in a fixed order.

    Each check draws its random classes from its own stream seeded by ``(seed, position in CHECK_ORDER)``,
    so a report does not depend on which other checks ran.
    """
    if trials < 0:
        raise ValueError(f"Number of trials must be non-negative, got {trials}.")
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}.")
    logger.info("Running identity checks on %r with %d trials, seed %d.", ctx.label, trials, seed)
    return [CHECKS[name](ctx, trials, seed) for name in applicableChecks(ctx)]


def reportTable(reports) -> Table:
    rows = []
    for report in reports:
        ce = report.counterexample
        detail = "" if ce is None else f"{ce['left']} != {ce['right']}"
        rows.append((report.check_name, report.status, report.trials, detail))
    return Table(rows=rows, names=("check", "status", "trials", "counterexample"),
                 dtype=(str, str, int, str))
