import argparse
import json
import logging
import sys
from pathlib import Path

from astropy.table import Table

from .blowup import chernNumbers, eulerCharacteristic
from .identities import runChecks, reportTable
from .polynomial import Coefficients
from .scenario import parseScenario, scenarioFromArgs
from .utils import ScenarioError, timingTable
from . import DEFAULT_TRIALS, DEFAULT_SEED

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def cmdCompute(scenario, max_degree=None) -> dict:
    """Characteristic classes of the blow-up up to index ``max_degree``; numbers and Euler characteristic when concrete."""
    ctx = scenario.context
    top = ctx.dimension // ctx.step
    if max_degree is None:
        max_degree = top
    if max_degree < 0:
        raise ValueError(f"--max-degree must be non-negative, got {max_degree}.")
    total = ctx.totalClass()
    classes = []
    for k in range(1, min(max_degree, top) + 1):
        entry = {"degree": ctx.step * k}
        entry.update(total.degreePart(ctx.step * k).toDict())
        classes.append(entry)
    result = {"scenario": scenario.label, "classes": classes}
    if not scenario.isFormal:
        result["chern_numbers"] = chernNumbers(ctx)
        result["euler"] = eulerCharacteristic(ctx)
    return result


def cmdVerify(scenario, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED):
    reports = runChecks(scenario.context, trials, seed)
    status = EXIT_OK if all(reports) else EXIT_CHECK_FAILED
    return status, reports


def cmdEuler(scenario) -> int:
    if scenario.isFormal:
        raise ValueError("The Euler characteristic needs a concrete scenario; formal manifolds have no integration.")
    return eulerCharacteristic(scenario.context)


def _letter(scenario):
    return "c" if scenario.coefficients is Coefficients.INTEGERS else "w"


def _header(scenario):
    return f"{scenario.label} ({scenario.coefficients.value})"


def renderCompute(scenario, result) -> str:
    ctx = scenario.context
    total = ctx.totalClass()
    lines = [_header(scenario)]
    for entry in result["classes"]:
        k = entry["degree"] // ctx.step
        lines.append(f"{_letter(scenario)}{k} = {total.degreePart(entry['degree'])}")
    if "chern_numbers" in result:
        numbers = Table(rows=list(result["chern_numbers"].items()), names=("number", "value"), dtype=(str, int))
        lines.append("")
        lines.extend(numbers.pformat(max_lines=-1, max_width=-1))
        lines.append("")
        lines.append(f"euler characteristic = {result['euler']}")
    return "\n".join(lines)


def renderVerify(scenario, reports) -> str:
    return "\n".join([_header(scenario)] + reportTable(reports).pformat(max_lines=-1, max_width=-1))


def _buildParser():
    parser = argparse.ArgumentParser(prog="bulib", description="Characteristic classes of blow-ups.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spaces", nargs="*", help="M and N presets (cp:3 cp-linear:1), or: formal dimM=6 dimN=2")
    common.add_argument("--scenario", type=Path, help="JSON scenario file")
    common.add_argument("--rank", type=int, help="rank r of the normal bundle")
    common.add_argument("--coefficients", choices=("z", "z2"), help="integers (Chern) or mod 2 (Stiefel-Whitney)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--log-level", default="WARNING",
                        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"))

    compute = sub.add_parser("compute", parents=[common], help="print the characteristic classes of the blow-up")
    compute.add_argument("--max-degree", type=int, help="largest class index k to print")

    verify = sub.add_parser("verify", parents=[common], help="run the identity checks")
    verify.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sub.add_parser("euler", parents=[common], help="print the Euler characteristic of the blow-up")
    return parser


def _loadScenario(args):
    if args.scenario is not None:
        if args.spaces:
            raise ScenarioError("Give either --scenario or M and N, not both.")
        try:
            text = args.scenario.read_text()
        except OSError as exc:
            raise ScenarioError(f"Cannot read {args.scenario}: {exc.strerror}.") from None
        scenario = parseScenario(text, args.coefficients)
        if args.rank is not None and args.rank != scenario.context.r:
            raise ScenarioError(f"--rank {args.rank} contradicts the scenario's r = {scenario.context.r}.")
        return scenario
    return scenarioFromArgs(args.spaces, args.rank, args.coefficients)


def main(argv=None) -> int:
    args = _buildParser().parse_args(argv)
    logging.getLogger("BULib").setLevel(args.log_level)

    try:
        scenario = _loadScenario(args)
        logger.info("Running %s on %r.", args.command, scenario.label)
        if args.command == "compute":
            status = EXIT_OK
            result = cmdCompute(scenario, args.max_degree)
            text = renderCompute(scenario, result)
        elif args.command == "verify":
            status, reports = cmdVerify(scenario, args.trials, args.seed)
            result = {"scenario": scenario.label, "checks": [r.toDict() for r in reports]}
            text = renderVerify(scenario, reports)
        else:
            status = EXIT_OK
            result = {"scenario": scenario.label, "euler": cmdEuler(scenario)}
            text = str(result["euler"])
    except (ScenarioError, ValueError, TypeError) as exc:
        print(f"bulib: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    print(json.dumps(result, indent=2) if args.format == "json" else text)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Timings:\n%s", "\n".join(timingTable().pformat(max_lines=-1, max_width=-1)))
    return status
