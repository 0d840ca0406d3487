import re
from tokenize import TokenError

from sympy import Poly, Symbol, ZZ
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor
from sympy.polys.polyerrors import BasePolynomialError

from ..polynomial import Monomial, GradedPolynomial
from .exceptions import ScenarioError, ForeignGenerator

# "^" is read as a power, as in "hN^2"
TRANSFORMATIONS = standard_transformations + (convert_xor,)

# the only tokens a class string may contain
TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _checkTokens(text, names, prefix, label):
    pos, previous = 0, None
    end = len(text.rstrip())
    while pos < end:
        match = TOKEN.match(text, pos)
        if match is None:
            raise ScenarioError(f"{prefix}unexpected character {text[pos:].lstrip()[:1]!r} in class {text!r}.")
        number, name, operator = match.groups()
        if name is not None:
            if "__" in name:
                raise ScenarioError(f"{prefix}class {text!r} contains the reserved name {name!r}.")
            if name not in names:
                raise ForeignGenerator(f"{prefix}class {text!r} uses {name}, which {label!r} does not have.")
        if operator == "(" and previous is not None and previous[1] is not None:
            raise ScenarioError(f"{prefix}class {text!r} calls {previous[1]!r}; only products and powers are allowed.")
        previous = (number, name, operator)
        pos = match.end()


def parseClass(text, ring, where: str = "") -> GradedPolynomial:
    """Read an integer polynomial such as ``"1 + 3*h - 2*h^2*xi"`` over the generators of ``ring``.

    Integers are accepted as constant classes. Coefficients are reduced mod 2 for Mod2 rings.
    The result is not reduced by the ring's relations.
    Only integers, generator names of ``ring``, ``+ - * / ^ **``, parentheses and whitespace are accepted;
    anything else raises :class:`~BULib.utils.exceptions.ScenarioError` before sympy sees the text.

    Parameters
    ----------
    text: :class:`str` | :class:`int`
        The class.
    ring: :class:`~BULib.ring.RingPresentation`
        Ring whose generator names may appear.
    where: :class:`str`
        Location of the class in the input, prepended to error messages.
    """
    prefix = f"{where}: " if where else ""
    if type(text) is int:
        return GradedPolynomial.constant(text, ring.mode)
    if not isinstance(text, str):
        raise ScenarioError(f"{prefix}expected a class string, got {text!r}.")

    symbols = {g.name: Symbol(g.name) for g in ring.generators}
    _checkTokens(text, symbols, prefix, ring.label)
    try:
        expr = parse_expr(text, local_dict=dict(symbols), transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, AttributeError, NameError) as exc:
        raise ScenarioError(f"{prefix}cannot parse class {text!r} ({exc.__class__.__name__}).") from None

    unknown = {str(s) for s in expr.free_symbols} - set(symbols)
    if unknown:
        raise ForeignGenerator(f"{prefix}class {text!r} uses {', '.join(sorted(unknown))}, "
                               f"which {ring.label!r} does not have.")

    if not ring.generators:
        if not expr.is_Integer:
            raise ScenarioError(f"{prefix}class {text!r} is not an integer.")
        return GradedPolynomial.constant(int(expr), ring.mode)

    try:
        poly = Poly(expr, *[symbols[g.name] for g in ring.generators], domain=ZZ)
    except BasePolynomialError:
        raise ScenarioError(f"{prefix}class {text!r} is not a polynomial with integer coefficients.") from None

    terms = {Monomial(zip(ring.generators, exponents)): int(coeff) for exponents, coeff in poly.terms()}
    return GradedPolynomial(terms, ring.mode)


def parseMonomial(text, ring, where: str = "") -> Monomial:
    """Read a monomial key such as ``"hN^2"`` or ``"1"``."""
    p = parseClass(text, ring, where)
    if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
        prefix = f"{where}: " if where else ""
        raise ScenarioError(f"{prefix}{text!r} is not a monomial.")
    return next(iter(p.terms))
