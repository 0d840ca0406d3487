from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field

from .polynomial import Coefficients, Generator
from .ring import RewriteRule, RingPresentation, validatePresentation
from .blowup import BlowupContext, PresentedModel, buildContext
from .functions.models import pointRing, projectiveSpaceRing, projectiveSpaceClass, pointInProjectiveSpaceModel, \
    linearSubspaceModel, formalGysinModel
from .utils import ScenarioError, DimensionMismatch
from .utils.conversion import parseClass, parseMonomial
from . import MAX_PRESET_DIMENSION

logger = logging.getLogger(__name__)

PRESET = re.compile(r"^(point|cp|cp-linear|rp|rp-linear)(?::(\d+))?$")

COEFFICIENT_NAMES = {
    "integers": Coefficients.INTEGERS,
    "z": Coefficients.INTEGERS,
    "mod2": Coefficients.MOD2,
    "z2": Coefficients.MOD2,
}


@dataclass
class Scenario:

    """A validated blow-up scenario.

    Parameters
    ----------
    label: :class:`str`
        Name shown in output.
    mode: :class:`str`
        ``"concrete"`` or ``"formal"``.
    coefficients: :class:`~BULib.polynomial.Coefficients`
        Integers (Chern classes) or Mod2 (Stiefel-Whitney classes).
    context: :class:`~BULib.blowup.BlowupContext`
        The blow-up, already checked for the Whitney relation, the dimension equation and table consistency.
    source: :class:`dict`
        The scenario as read.
    """

    label: str
    mode: str
    coefficients: Coefficients
    context: BlowupContext
    source: dict = field(default_factory=dict, repr=False)

    @property
    def isFormal(self):
        return self.mode == "formal"


def parseScenario(text: str, coefficients=None) -> Scenario:
    """Read and validate a JSON scenario; syntax errors carry their line and column.

    ``coefficients`` (``"z"`` or ``"z2"``) overrides the scenario's own ``"coefficients"`` entry.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"Scenario is not valid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return scenarioFromDict(data, coefficients)


def scenarioFromArgs(spaces, rank=None, coefficients=None) -> Scenario:
    """Scenario from command-line words: ``["cp:2", "point"]`` or ``["formal", "dimM=6", "dimN=2"]``."""
    spaces = list(spaces)
    if spaces and spaces[0] == "formal":
        dims = {}
        for word in spaces[1:]:
            key, sep, value = word.partition("=")
            if not sep or key not in ("dimM", "dimN") or not value.isdigit():
                raise ScenarioError(f"Expected dimM=<int> or dimN=<int>, got {word!r}.")
            dims[key[-1]] = int(value)
        if set(dims) != {"M", "N"}:
            raise ScenarioError("Formal mode needs both dimM and dimN.")
        data = {"mode": "formal", "dims": dims, "E": {} if rank is None else {"rank": rank}}
    elif len(spaces) == 2:
        data = {"M": spaces[0], "N": spaces[1], "E": {} if rank is None else {"rank": rank}}
    else:
        raise ScenarioError("Give M and N (e.g. 'cp:2 point'), 'formal dimM=.. dimN=..', or --scenario FILE.")
    return scenarioFromDict(data, coefficients)


def scenarioFromDict(data, coefficients=None) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("A scenario must be a JSON object.")
    name = coefficients if coefficients is not None else data.get("coefficients", "integers")
    if name not in COEFFICIENT_NAMES:
        raise ScenarioError(f"Unknown coefficients {name!r}; use one of {', '.join(COEFFICIENT_NAMES)}.")
    mode = COEFFICIENT_NAMES[name]
    kind = data.get("mode", "concrete")
    if kind not in ("concrete", "formal"):
        raise ScenarioError(f"Unknown scenario mode {kind!r}.")
    e_spec = data.get("E", {})
    if not isinstance(e_spec, dict):
        raise ScenarioError("E must be an object with 'rank' and 'chern'.")

    try:
        if kind == "formal":
            context, label = _formalContext(data, e_spec, mode)
        else:
            context, label = _concreteContext(data, e_spec, mode)
    except ScenarioError:
        raise
    except (ValueError, TypeError) as exc:
        raise ScenarioError(str(exc)) from exc

    label = data.get("label", label)
    logger.info("Scenario %r parsed (%s, %s).", label, kind, mode.value)
    return Scenario(label=label, mode=kind, coefficients=mode, context=context, source=data)


# --- formal -------------------------------------------------------------------------------------

def _formalContext(data, e_spec, mode):
    dims = data.get("dims")
    if not isinstance(dims, dict) or not all(type(dims.get(k)) is int for k in ("M", "N")):
        raise ScenarioError("Formal scenarios need integer 'dims': {\"M\": .., \"N\": ..}.")
    dim_m, dim_n = dims["M"], dims["N"]
    rank = e_spec.get("rank")
    if rank is None:
        if (dim_m - dim_n) % mode.step:
            raise DimensionMismatch(f"dim M - dim N = {dim_m - dim_n} is not a multiple of {mode.step}.")
        rank = (dim_m - dim_n) // mode.step
    if type(rank) is not int:
        raise ScenarioError(f"E.rank must be an integer, got {rank!r}.")

    chern = e_spec.get("chern")
    if chern is None:
        classes = None
    else:
        classes = lambda ring: _parseChernList(chern, ring)
    model, e_classes = formalGysinModel(dim_m, dim_n, rank, mode, classes)
    context = buildContext(model, model.n_ring, e_classes, label=f"formal dimM={dim_m} dimN={dim_n}")
    return context, context.label


def _parseChernList(chern, ring):
    if not isinstance(chern, list):
        raise ScenarioError("E.chern must be a list of classes.")
    return [ring.normalForm(parseClass(c, ring, f"E.chern[{i}]")) for i, c in enumerate(chern)]


# --- concrete -----------------------------------------------------------------------------------

def _preset(ref, where):
    match = PRESET.match(ref) if isinstance(ref, str) else None
    if match is None:
        raise ScenarioError(f"{where}: unknown preset {ref!r}.")
    family, n = match.group(1), match.group(2)
    if family == "point":
        if n is not None:
            raise ScenarioError(f"{where}: the point preset takes no dimension.")
        return family, None
    if n is None:
        raise ScenarioError(f"{where}: preset {family!r} needs a dimension, e.g. {family}:2.")
    n = int(n)
    if not 1 <= n <= MAX_PRESET_DIMENSION and not (family.endswith("linear") and n == 0):
        raise ScenarioError(f"{where}: dimension {n} is outside 1..{MAX_PRESET_DIMENSION}.")
    return family, n


def _checkFamily(family, mode, where):
    if family.startswith("cp") and mode is not Coefficients.INTEGERS:
        raise ScenarioError(f"{where}: complex projective presets need integer coefficients.")
    if family.startswith("rp") and mode is not Coefficients.MOD2:
        raise ScenarioError(f"{where}: real projective presets need z2 coefficients.")


def _concreteContext(data, e_spec, mode):
    m_ref, n_ref = data.get("M"), data.get("N")
    if m_ref is None or n_ref is None:
        raise ScenarioError("Concrete scenarios need both M and N.")

    if isinstance(m_ref, str) and isinstance(n_ref, str) and "embedding" not in data:
        model, e_classes = _presetModel(m_ref, n_ref, mode)
        label = f"{m_ref} / {n_ref}"
    else:
        model, e_classes = _presentedModel(data, m_ref, n_ref, mode)
        label = f"{model.ring.label} / {model.n_ring.label}"

    rank = e_spec.get("rank")
    if rank is not None and rank != model.codim:
        raise DimensionMismatch(f"E.rank = {rank} but dim M - dim N gives r = {model.codim}.")
    if "chern" in e_spec:
        e_classes = _parseChernList(e_spec["chern"], model.n_ring)
    return buildContext(model, model.n_ring, e_classes, label=label), label


def _presetModel(m_ref, n_ref, mode):
    m_family, n = _preset(m_ref, "M")
    n_family, k = _preset(n_ref, "N")
    if m_family not in ("cp", "rp"):
        raise ScenarioError(f"M: preset {m_ref!r} cannot be an ambient manifold; use cp:n or rp:n.")
    _checkFamily(m_family, mode, "M")
    if n_family == "point":
        return pointInProjectiveSpaceModel(n, mode)
    if n_family != f"{m_family}-linear":
        raise ScenarioError(f"N: preset {n_ref!r} does not embed in {m_ref!r}.")
    if k >= n:
        raise ScenarioError(f"N: {n_ref!r} is not a proper subspace of {m_ref!r}.")
    return linearSubspaceModel(n, k, mode)


def _presetRing(ref, mode, where):
    family, n = _preset(ref, where)
    if family == "point":
        ring = pointRing(mode)
        return ring, ring.one()
    _checkFamily(family, mode, where)
    name = None
    if family.endswith("linear"):
        name = "aN" if mode is Coefficients.MOD2 else "hN"
    ring = projectiveSpaceRing(n, mode, name)
    return ring, projectiveSpaceClass(ring, n)


def _table(spec, key, where, what):
    table = spec.get(key, {})
    if not isinstance(table, dict):
        raise ScenarioError(f"{where}.{key} must map {what}, got {type(table).__name__}.")
    return table


def _ringFromDict(spec, mode, where):
    if isinstance(spec, str):
        return _presetRing(spec, mode, where)
    if not isinstance(spec, dict):
        raise ScenarioError(f"{where}: expected a preset name or a presentation object.")
    dim = spec.get("dim")
    if type(dim) is not int:
        raise ScenarioError(f"{where}.dim must be an integer.")
    gens = spec.get("generators", {})
    if not isinstance(gens, dict):
        raise ScenarioError(f"{where}.generators must map names to degrees.")
    generators = []
    for name, degree in gens.items():
        try:
            generators.append(Generator(name, degree, where))
        except ValueError as exc:
            raise ScenarioError(f"{where}.generators: {exc}") from None
    label = spec.get("label", where)
    free = RingPresentation(generators=generators, dimension=dim, label=label, mode=mode)

    rules = []
    for key, rhs in _table(spec, "rules", where, "powers to classes").items():
        lhs = parseMonomial(key, free, f"{where}.rules")
        if len(lhs.powers) != 1:
            raise ScenarioError(f"{where}.rules: left side {key!r} must be a power of one generator.")
        g, e = lhs.powers[0]
        rules.append(RewriteRule(g, e, parseClass(rhs, free, f"{where}.rules[{key!r}]")))

    integrals = None
    if "integrals" in spec:
        integrals = {}
        for key, value in _table(spec, "integrals", where, "monomials to integers").items():
            if type(value) is not int:
                raise ScenarioError(f"{where}.integrals[{key!r}] must be an integer.")
            integrals[parseMonomial(key, free, f"{where}.integrals")] = value

    ring = RingPresentation(generators=generators, dimension=dim, rules=rules, integrals=integrals,
                            label=label, mode=mode)
    report = validatePresentation(ring)
    if not report:
        raise ScenarioError(f"{where}: invalid presentation: {report.reason}"
                            + (f" at {report.counterexample}" if report.counterexample is not None else "") + ".")
    if "total_chern" not in spec:
        raise ScenarioError(f"{where}.total_chern is required.")
    total = ring.normalForm(parseClass(spec["total_chern"], ring, f"{where}.total_chern"))
    return ring, total


def _presentedModel(data, m_ref, n_ref, mode):
    ring, total = _ringFromDict(m_ref, mode, "M")
    n_ring, n_total = _ringFromDict(n_ref, mode, "N")
    embedding = data.get("embedding")
    if not isinstance(embedding, dict):
        raise ScenarioError("An explicit M or N needs an 'embedding' with 'i_star' and 'i_shriek'.")

    i_star = {}
    for name, image in _table(embedding, "i_star", "embedding", "generators to classes").items():
        i_star[ring.gen(name)] = parseClass(image, n_ring, f"embedding.i_star[{name!r}]")
    i_shriek = {}
    for key, image in _table(embedding, "i_shriek", "embedding", "monomials to classes").items():
        i_shriek[parseMonomial(key, n_ring, "embedding.i_shriek")] = \
            parseClass(image, ring, f"embedding.i_shriek[{key!r}]")

    difference = ring.dimension - n_ring.dimension
    if difference <= 0 or difference % mode.step:
        raise DimensionMismatch(f"dim M = {ring.dimension} and dim N = {n_ring.dimension} do not differ by a "
                            f"positive multiple of {mode.step}.")
    model = PresentedModel(ring=ring, total_chern=total, n_ring=n_ring, n_chern=n_total,
                           codim=difference // mode.step, i_star=i_star, i_shriek=i_shriek)
    return model, []
