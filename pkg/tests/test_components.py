import pytest
import sys
sys.path.append('.')

import BULib
from BULib.utils import type_checker, timer

from typing import Optional, Union
from collections.abc import Callable

from hypothesis import given
from hypothesis import strategies as st




def test_timer_enable(mocker):
    mock_debug = mocker.patch.object(BULib.utils.debug.logger, "debug")
    @timer
    def func(*args, **kwargs):
        a = 2
        return a**2
    BULib.utils.debug.ENABLE_TIMER = True
    assert func() == 4
    mock_debug.assert_called_once()

def test_timer_disable(mocker):
    mock_debug = mocker.patch.object(BULib.utils.debug.logger, "debug")
    @timer
    def func(*args, **kwargs):
        a = 2
        return a**2
    BULib.utils.debug.ENABLE_TIMER = False
    assert func() == 4
    mock_debug.assert_not_called()
    BULib.utils.debug.ENABLE_TIMER = True

def test_timing_table():
    from BULib.utils import timingTable, resetTimings
    @timer
    def slow():
        return sum(range(1000))
    resetTimings()
    assert len(timingTable()) == 0
    slow()
    slow()
    table = timingTable()
    assert list(table.colnames) == ["function", "calls", "seconds"]
    assert table["calls"][0] == 2
    assert table["function"][0].endswith("slow")





def test_type_checker_union():
    @type_checker
    def typed_func(arg: Union[int, str]):
        return  # pragma: no cover
    with pytest.raises(TypeError):
        typed_func(1.5)
    with pytest.raises(TypeError):
        typed_func(True)
    typed_func(3)
    typed_func("3")

def test_type_checker_optional():
    @type_checker
    def typed_func(arg: Optional[list[int]] = None):
        return  # pragma: no cover
    typed_func()
    typed_func([1, 2])
    with pytest.raises(TypeError):
        typed_func([1, "2"])

def test_type_checker_tuple():
    @type_checker
    def typed_func(arg: tuple[str, Union[int, float]]):
        return  # pragma: no cover
    with pytest.raises(TypeError):
        typed_func(lambda x: None)
    with pytest.raises(TypeError):
        typed_func(("test", 1, "extra arg"))
    typed_func(("test", 1))

def test_type_checker_variadic_tuple():
    @type_checker
    def typed_func(arg: tuple[int, ...]):
        return  # pragma: no cover
    typed_func(())
    typed_func((1, 2, 3))
    with pytest.raises(TypeError):
        typed_func((1, "2"))

def test_type_checker_dict():
    @type_checker
    def typed_func(arg: dict[str, int]):
        return  # pragma: no cover
    typed_func({"a": 1})
    with pytest.raises(TypeError):
        typed_func({"a": "1"})
    with pytest.raises(TypeError):
        typed_func([("a", 1)])

def test_type_checker_func_as_arg():
    @type_checker
    def typed_func(arg: Callable[[int, int], str]):
        return  # pragma: no cover

    with pytest.raises(TypeError):  # incorrect arg type
        def f(a: int, b: float) -> str:
            return  # pragma: no cover
        typed_func(f)

    with pytest.raises(TypeError):  # incorrect return type
        def f(a: int, b: int) -> None:
            return  # pragma: no cover
        typed_func(f)

    with pytest.raises(TypeError):  # too few args
        def f(a: int) -> str:
            return  # pragma: no cover
        typed_func(f)

    with pytest.raises(TypeError):  # not a function
        typed_func(0)

    def f(a: int, b: int) -> str:
        return " "  # pragma: no cover
    typed_func(f)  # correctly typed
    typed_func(lambda a, b: None)  # untyped





from BULib import Coefficients, Generator, Monomial, GradedPolynomial
from BULib.utils import ModeMismatch, NotDivisible, ForeignGenerator

X = Generator("x", 2)
Y = Generator("y", 4)
A = Generator("a", 1)

def poly(terms, mode=Coefficients.INTEGERS):
    return GradedPolynomial([(Monomial(powers), c) for powers, c in terms], mode)

x = GradedPolynomial.fromGenerator(X)
y = GradedPolynomial.fromGenerator(Y)

def test_generator_validation():
    with pytest.raises(ValueError, match="not an identifier"):
        Generator("2x", 2)
    with pytest.raises(ValueError, match="positive integer degree"):
        Generator("x", 0)

def test_monomial_canonical():
    m = Monomial([(Y, 1), (X, 1), (X, 1)])
    assert m == Monomial([(X, 2), (Y, 1)])
    assert hash(m) == hash(Monomial({X: 2, Y: 1}))
    assert m.degree == 8
    assert str(m) == "x^2*y"
    assert str(Monomial.one()) == "1"
    assert m.quotient(Monomial([(X, 1)])) == Monomial([(X, 1), (Y, 1)])
    with pytest.raises(NotDivisible):
        Monomial([(X, 1)]).quotient(Monomial([(Y, 1)]))

def test_polynomial_canonical_form():
    p = poly([([(X, 1)], 3), ([(X, 1)], -3), ([], 1)])
    assert p == 1
    assert poly([([(X, 1)], 0)]).isZero()
    assert str(poly([([], 1), ([(X, 1)], 3), ([(X, 2)], -1)])) == "1 + 3*x - x^2"
    assert str(-x) == "-x"
    assert str(GradedPolynomial.zero()) == "0"

def test_polynomial_mod2():
    a = GradedPolynomial.fromGenerator(A, Coefficients.MOD2)
    assert (1 + a) ** 2 == 1 + a * a
    assert 3 * a == a
    assert (a + a).isZero()
    assert str(1 - a) == "1 + a"

def test_polynomial_odd_degree_needs_mod2():
    with pytest.raises(ValueError, match="odd degrees"):
        GradedPolynomial.fromGenerator(A)

def test_polynomial_mode_mismatch():
    a = GradedPolynomial.fromGenerator(A, Coefficients.MOD2)
    with pytest.raises(ModeMismatch):
        x + a

def test_polynomial_coefficients_must_be_int():
    with pytest.raises(TypeError):
        GradedPolynomial({Monomial(): 1.5})

def test_polynomial_degrees():
    p = 1 + 2 * x + x * x + y
    assert p.degrees() == [0, 2, 4]
    assert not p.isHomogeneous()
    assert p.homogeneousPart(4).isHomogeneous(4)
    assert p.projectDegrees(2, 2) == 2 * x
    assert p.projectDegrees(2) == 2 * x + x * x + y
    assert p.constantTerm() == 1
    assert p.coefficient(Monomial([(X, 1)])) == 2
    assert p.generators() == {X, Y}
    with pytest.raises(ValueError, match="Invalid degree window"):
        p.projectDegrees(4, 2)

def test_polynomial_split_by_generator():
    p = 1 + x * y + 2 * x * x
    parts = p.splitByGenerator(X)
    assert parts == {0: GradedPolynomial.one(), 1: y, 2: 2 * GradedPolynomial.one()}

def test_geometric_inverse():
    assert (1 - x).geometricInverse(4) == 1 + x + x * x
    assert (-1 + x).geometricInverse(4) == -(1 + x + x * x)
    assert ((1 + x + y) * (1 + x + y).geometricInverse(8)).projectDegrees(0, 8) == 1
    with pytest.raises(ValueError, match="not a unit"):
        (2 + x).geometricInverse(4)

def test_exact_divide_by_generator():
    assert (x * x + x * y).exactDivideByGenerator(X) == x + y
    with pytest.raises(NotDivisible) as excinfo:
        (x + 1).exactDivideByGenerator(X)
    assert excinfo.value.monomial == Monomial.one()

def test_map_generators():
    assert ((1 + x) ** 2).mapGenerators({X: 2 * x}) == 1 + 4 * x + 4 * x * x
    assert (x * y).mapGenerators({X: x}) == x * y
    with pytest.raises(ValueError, match="not homogeneous"):
        x.mapGenerators({X: y})
    with pytest.raises(TypeError):
        x.mapGenerators({X: 2})

MONOMIALS = [Monomial(), Monomial([(X, 1)]), Monomial([(Y, 1)]), Monomial([(X, 2)]), Monomial([(X, 1), (Y, 1)])]
polynomials = st.dictionaries(st.sampled_from(MONOMIALS), st.integers(-50, 50), max_size=4).map(GradedPolynomial)

@given(p=polynomials, q=polynomials, s=polynomials)
def test_polynomial_ring_axioms(p, q, s):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert p - p == 0
    assert p * 1 == p





from BULib import RewriteRule, RingPresentation, validatePresentation
from BULib.functions import projectiveSpaceRing, projectiveSpaceClass

CP2 = projectiveSpaceRing(2)
h = GradedPolynomial.fromGenerator(CP2.gen("h"))

def test_ring_normal_form():
    assert CP2.normalForm(h ** 3) == 0
    assert CP2.genElement("h") ** 3 == 0
    assert CP2.normalForm(1 + h ** 4 + h).value == 1 + h
    assert str(CP2.normalMonomials()[-1]) == "h^2"
    assert [str(m) for m in CP2.normalMonomials()] == ["1", "h", "h^2"]
    assert [str(m) for m in CP2.normalMonomials(2)] == ["h"]

def test_ring_integrate():
    assert CP2.normalForm(h * h).integrate() == 1
    assert projectiveSpaceClass(CP2, 2).integrate() == 3
    assert CP2.normalForm(h).integrate() == 0

def test_ring_formal_integrate():
    formal = RingPresentation(generators=[X], dimension=4, label="formal")
    with pytest.raises(ValueError, match="formal"):
        formal.element(x * x).integrate()

def test_ring_foreign_generator():
    with pytest.raises(ForeignGenerator):
        CP2.normalForm(x)
    with pytest.raises(ForeignGenerator):
        CP2.gen("q")

def test_ring_mode_mismatch():
    with pytest.raises(ModeMismatch):
        CP2.normalForm(GradedPolynomial.fromGenerator(A, Coefficients.MOD2))

def test_ring_constructor_checks():
    with pytest.raises(ValueError, match="odd dimension"):
        RingPresentation(generators=[X], dimension=3)
    with pytest.raises(ValueError, match="repeated generator"):
        RingPresentation(generators=[X, Generator("x", 4)], dimension=4)
    with pytest.raises(TypeError):
        RingPresentation(generators=X, dimension=4)

def test_ring_element_arithmetic():
    one = CP2.one()
    hh = CP2.genElement("h")
    assert (one + hh) * (one - hh) == 1 - hh * hh
    assert 2 * hh - hh == hh
    assert (one + hh) ** 3 == projectiveSpaceClass(CP2, 2)
    assert ((one + hh) ** 3).degreePart(4) == 3 * hh * hh
    with pytest.raises(ValueError, match="Cannot combine"):
        hh + projectiveSpaceRing(3).genElement("h")

def test_ring_truncations():
    ring = RingPresentation(generators=[X, Generator("z", 2)], dimension=4,
                            truncations=[(frozenset({X}), 2)], label="cut")
    z = GradedPolynomial.fromGenerator(ring.gen("z"))
    assert ring.normalForm(x * x) == 0
    assert not ring.normalForm(x * z).isZero()
    assert not ring.normalForm(z * z).isZero()
    assert ring.normalForm(x * z * z) == 0

def test_validate_presentation():
    assert validatePresentation(CP2)
    assert validatePresentation(projectiveSpaceRing(3, Coefficients.MOD2))

def test_validate_presentation_failures():
    z_gen = Generator("z", 2)
    z = GradedPolynomial.fromGenerator(z_gen)

    cyclic = RingPresentation(generators=[X, z_gen], dimension=8,
                              rules=[RewriteRule(X, 2, z * z), RewriteRule(z_gen, 2, x * x)])
    report = validatePresentation(cyclic)
    assert not report
    assert report.reason == "rules are not triangular"

    inhomogeneous = RingPresentation(generators=[X], dimension=8, rules=[RewriteRule(X, 2, x)])
    assert validatePresentation(inhomogeneous).reason == "inhomogeneous rhs"

    unreduced = RingPresentation(generators=[X], dimension=8, rules=[RewriteRule(X, 2, x * x)])
    assert validatePresentation(unreduced).reason == "rhs not reduced in its own generator"

    twice = RingPresentation(generators=[X], dimension=8,
                             rules=[RewriteRule(X, 2, GradedPolynomial.zero()), RewriteRule(X, 3, GradedPolynomial.zero())])
    assert validatePresentation(twice).reason.startswith("more than one rule")

    low = RingPresentation(generators=[X], dimension=4, integrals={Monomial([(X, 1)]): 1})
    report = validatePresentation(low)
    assert report.reason == "integration table entry below the top degree"
    assert report.counterexample == Monomial([(X, 1)])

    unreduced_integral = RingPresentation(generators=[X], dimension=4,
                                          rules=[RewriteRule(X, 2, GradedPolynomial.zero())],
                                          integrals={Monomial([(X, 2)]): 1})
    assert validatePresentation(unreduced_integral).reason == "integration table entry is not in normal form"

def _twoRuleRing(reverse=False):
    # x^2 -> xz, z^2 -> 0
    z_gen = Generator("z", 2)
    rules = [RewriteRule(X, 2, x * GradedPolynomial.fromGenerator(z_gen)), RewriteRule(z_gen, 2, GradedPolynomial.zero())]
    return RingPresentation(generators=[X, z_gen], dimension=8, rules=rules[::-1] if reverse else rules, label="two")

def test_two_rule_presentation():
    ring = _twoRuleRing()
    z = GradedPolynomial.fromGenerator(ring.gen("z"))
    assert validatePresentation(ring)
    assert validatePresentation(_twoRuleRing(reverse=True))
    assert ring.normalForm(x * x).value == x * z
    assert ring.normalForm(x ** 3) == 0
    assert ring.normalForm(x * x * z) == 0

@given(coeffs=st.lists(st.integers(-9, 9), min_size=15, max_size=15))
def test_two_rule_normal_form_ignores_rule_order(coeffs):
    forward, backward = _twoRuleRing(), _twoRuleRing(reverse=True)
    z_gen = forward.gen("z")
    powers = [(i, j) for i in range(5) for j in range(5 - i)]
    p = sum((c * poly([([(X, i), (z_gen, j)], 1)]) for c, (i, j) in zip(coeffs, powers)), GradedPolynomial.zero())
    assert forward.normalForm(p).value == backward.normalForm(p).value

@given(p=st.lists(st.integers(-20, 20), min_size=3, max_size=3),
       q=st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_normal_form_is_multiplicative(p, q):
    pp = sum((c * h ** k for k, c in enumerate(p)), GradedPolynomial.zero())
    qq = sum((c * h ** k for k, c in enumerate(q)), GradedPolynomial.zero())
    assert CP2.normalForm(pp * qq) == CP2.normalForm(pp) * CP2.normalForm(qq)





from BULib import buildProjBundle, ProjectiveBundleRing
from BULib.functions import pointRing

@pytest.fixture
def pe_point():
    return buildProjBundle(pointRing(), 2, [])

def _lineBundle():
    # normal bundle of a line in CP^3: c(E) = (1 + hN)^2 = 1 + 2hN on CP^1
    base = projectiveSpaceRing(1, name="hN")
    return buildProjBundle(base, 2, [2 * base.genElement("hN")])

@pytest.fixture
def pe_line():
    return _lineBundle()

def test_bundle_over_point(pe_point):
    xi = pe_point.xiElement()
    assert xi * xi == 0
    assert pe_point.ring.dimension == 2
    assert pe_point.integrate(xi) == 1
    assert pe_point.fiberIntegrate(xi) == 1
    assert pe_point.chernQ() == 1 + xi
    assert pe_point.chernQTop() == xi
    assert pe_point.chernVertical() == 1 + 2 * xi
    assert pe_point.integrate(pe_point.chernTotalPE(pe_point.base.one())) == 2

def test_bundle_fundamental_relation(pe_line):
    xi = pe_line.xiElement()
    hN = pe_line.pullback(pe_line.base.genElement("hN"))
    assert xi * xi == -2 * hN * xi
    assert hN * hN == 0
    assert pe_line.integrate(hN * xi) == 1
    assert pe_line.integrate(xi * xi) == -2
    assert pe_line.chernQTop() == xi + 2 * hN

def test_bundle_expansion(pe_line):
    xi = pe_line.xiElement()
    hN = pe_line.base.genElement("hN")
    gamma = 3 * pe_line.pullback(hN) + xi - 5 * xi * xi
    betas = pe_line.expandInXi(gamma)
    assert betas == [3 * hN, 1 + 10 * hN]
    assert pe_line.fromExpansion(betas) == gamma
    assert pe_line.fiberIntegrate(gamma) == 1 + 10 * hN

def test_bundle_chern_q(pe_line):
    # p*c(E) = c(Q)(1 - xi)
    xi = pe_line.xiElement()
    c_E = pe_line.pullback(pe_line.totalChernE())
    assert pe_line.chernQ() * (1 - xi) == c_E
    assert pe_line.chernQ().degreePart(2) == pe_line.chernQTop()

def test_bundle_rejects_bad_input():
    base = projectiveSpaceRing(1, name="hN")
    with pytest.raises(ValueError, match="at least 1"):
        buildProjBundle(base, 0, [])
    with pytest.raises(ValueError, match="not homogeneous"):
        buildProjBundle(base, 2, [base.one()])
    with pytest.raises(ValueError, match="already has a generator"):
        buildProjBundle(base, 2, [], xi_name="hN")
    with pytest.raises(TypeError):
        ProjectiveBundleRing(base=base, rank="2", e_classes=[])

def test_bundle_rank_one_collapses():
    base = projectiveSpaceRing(1, name="hN")
    pe = buildProjBundle(base, 1, [base.genElement("hN")])
    assert pe.xiElement() == -pe.pullback(base.genElement("hN"))
    assert pe.chernQTop() == 1
    assert pe.chernVertical() == 1

def test_bundle_euler_characteristic(pe_line):
    # P(E) over CP^1 is a Hirzebruch surface
    c_PE = pe_line.chernTotalPE(projectiveSpaceClass(pe_line.base, 1))
    assert pe_line.integrate(c_PE.degreePart(4)) == 4
    assert pe_line.integrate(c_PE) == 4

def _lineClass(pe, coeffs):
    xi = pe.xiElement()
    hN = pe.pullback(pe.base.genElement("hN"))
    basis = [pe.ring.one(), hN, xi, hN * xi, xi * xi]
    return sum((c * b for c, b in zip(coeffs, basis)), pe.ring.zero())

@given(b=st.lists(st.integers(-20, 20), min_size=2, max_size=2),
       g=st.lists(st.integers(-20, 20), min_size=5, max_size=5))
def test_bundle_projection_formula(b, g):
    pe = _lineBundle()
    beta = b[0] * pe.base.one() + b[1] * pe.base.genElement("hN")
    gamma = _lineClass(pe, g)
    assert pe.fiberIntegrate(pe.pullback(beta) * gamma) == beta * pe.fiberIntegrate(gamma)

@given(g=st.lists(st.integers(-20, 20), min_size=5, max_size=5))
def test_bundle_expansion_round_trip(g):
    pe = _lineBundle()
    gamma = _lineClass(pe, g)
    betas = pe.expandInXi(gamma)
    assert len(betas) == 2
    assert pe.fromExpansion(betas) == gamma





from BULib.utils import ScenarioError
from BULib.utils.conversion import parseClass, parseMonomial

def test_parse_class():
    assert parseClass("1 + 3*h - 2*h^2", CP2) == 1 + 3 * h - 2 * h * h
    assert parseClass("(1+h)^3", CP2) == (1 + h) ** 3
    assert parseClass(4, CP2) == 4
    assert parseClass("0", CP2).isZero()

def test_parse_class_round_trip():
    p = 1 + 3 * h - h * h
    assert parseClass(str(p), CP2) == p

def test_parse_class_mod2():
    rp = projectiveSpaceRing(3, Coefficients.MOD2)
    a = GradedPolynomial.fromGenerator(rp.gen("a"), Coefficients.MOD2)
    assert parseClass("3*a + 2", rp) == a

def test_parse_class_errors():
    with pytest.raises(ForeignGenerator, match="q"):
        parseClass("h + q", CP2)
    with pytest.raises(ScenarioError, match="integer coefficients"):
        parseClass("h/2", CP2)
    with pytest.raises(ScenarioError):
        parseClass("3*(h", CP2)
    with pytest.raises(ScenarioError, match="class string"):
        parseClass(1.5, CP2)
    with pytest.raises(ScenarioError, match="not an integer"):
        parseClass("1/3", pointRing())

def test_parse_class_rejects_code():
    with pytest.raises(ScenarioError, match="reserved name"):
        parseClass("__import__('os').system('true')*0", CP2)
    with pytest.raises(ScenarioError, match="reserved name"):
        parseClass("h__class__", CP2)
    with pytest.raises(ScenarioError, match="unexpected character"):
        parseClass("2*h, 3", CP2)
    with pytest.raises(ScenarioError, match="unexpected character"):
        parseClass("h.real", CP2)
    with pytest.raises(ScenarioError, match="calls 'h'"):
        parseClass("h(1)", CP2)
    with pytest.raises(ForeignGenerator, match="exec"):
        parseClass("exec", CP2)
    with pytest.raises(ScenarioError, match="unexpected character"):
        parseClass("h; h", CP2)
    assert parseClass("  2 * (h + 1) ^ 2 ", CP2) == 2 * (1 + h) ** 2

def test_parse_monomial():
    assert parseMonomial("h^2", CP2) == Monomial([(CP2.gen("h"), 2)])
    assert parseMonomial("1", CP2) == Monomial.one()
    with pytest.raises(ScenarioError, match="not a monomial"):
        parseMonomial("2*h", CP2)
