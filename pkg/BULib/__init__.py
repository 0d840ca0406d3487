import logging

# TODO: move these into a dedicated `settings` module once scenario files can override them

DEFAULT_TRIALS = 100
DEFAULT_SEED = 0

# random classes used by the identity checks
MAX_RANDOM_TERMS = 5
MAX_RANDOM_COEFFICIENT = 9

# largest n accepted by the cp:n and rp:n presets
MAX_PRESET_DIMENSION = 8

# cap on monomials swept by confluence and Gysin-table validation
MONOMIAL_ENUMERATION_LIMIT = 4000

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"

logging.basicConfig(format=LOG_FORMAT)
logger = logging.getLogger("BULib")
logger.setLevel(logging.WARNING)

from .polynomial import Coefficients, Generator, Monomial, GradedPolynomial
from .ring import RewriteRule, RingPresentation, RingElement, validatePresentation
from .bundle import ProjectiveBundleRing, buildProjBundle
from .blowup import ManifoldModel, PresentedModel, FormalGysinModel, GysinPair, BlowupContext, BlowupElement, \
    buildContext, chernNumbers, eulerCharacteristic
from .utils import type_checker, timer
