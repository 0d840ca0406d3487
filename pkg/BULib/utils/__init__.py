from .typing import type_checker
from .debug import timer, timingTable, resetTimings
from .exceptions import ModeMismatch, NotDivisible, ForeignGenerator, ScenarioError, \
    WhitneyViolation, DimensionMismatch, TableInconsistency
