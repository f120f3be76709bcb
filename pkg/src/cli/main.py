"""
Command-line entry point: ``app.py <verb> [subverb] [options]``.
"""
import argparse
import sys
import time
from typing import List, Optional, TextIO

from src.config import Config
from src.utils import RunLogger, format_error_message, logger
from src.utils.errors import DeskError
from .commands import DISPATCH
from .inputs import InputResolver
from .report import Report, error_report

SUBVERBS = {
    'ce': ('cohomology', 'homology', 'verify'),
    'mc': ('defect', 'tangent', 'lift', 'solve', 'bianchi', 'gauge', 'path', 'battery'),
    'cs': ('value', 'gradient', 'battery'),
    'cartan': ('split', 'battery'),
    'simplicial': ('verify', 'factor', 'roundtrip'),
    'stack': ('check',),
    'holim': ('cech', 'constant'),
    'prefact': ('check',),
    'obs': ('build',),
    'holonomy': ('count', 'classes', 'bundle'),
}

CS_DGLA = 'torus_gca(3)*iso21'


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='emit the machine-readable report')
    common.add_argument('--seed', type=int, help='seed for randomized batteries')
    common.add_argument('--threads', type=int, help='worker threads (overrides MODULI_DESK_THREADS)')
    common.add_argument('--budget', type=int, help='enumeration budget for holonomy')
    common.add_argument('--convention', choices=('standard', 'printed'), help='simplicial coface convention')
    common.add_argument('--battery', type=int, help='number of battery cases')
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='moduli-desk', description=__doc__.strip())
    verbs = parser.add_subparsers(dest='verb', required=True)
    common = _common_options()

    def verb(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = verbs.add_parser(name, parents=[common], help=help_text)
        if name in SUBVERBS:
            sub.add_argument('subverb', nargs='?', choices=SUBVERBS[name], default=SUBVERBS[name][0])
        return sub

    check = verb('check', 'parse and validate an input file')
    check.add_argument('path')
    check.set_defaults(subverb='input')

    ce = verb('ce', 'Chevalley-Eilenberg (co)homology')
    ce.add_argument('--lie', required=True)
    ce.add_argument('--coeffs', default='trivial')
    ce.add_argument('--max-degree', type=int)

    mc = verb('mc', 'Maurer-Cartan defect, tangent space, lifting, gauge and paths')
    mc.add_argument('--dgla', default='torus_gca(2)*sl2')
    mc.add_argument('--artinian', default='dual')
    mc.add_argument('--element')
    mc.add_argument('--x', help='degree-0 gauge parameter')
    mc.add_argument('--order', type=int, default=1)
    mc.add_argument('--path', help='polynomial path file')
    mc.add_argument('--max-degree', type=int, help='polynomial degree bound for paths')

    cs = verb('cs', 'Chern-Simons value and gradient')
    cs.add_argument('--dgla', default=CS_DGLA)
    cs.add_argument('--pairing', default='default')
    cs.add_argument('--element')

    cartan = verb('cartan', 'split a connection into spin connection and frame')
    cartan.add_argument('--dgla', default=CS_DGLA)
    cartan.add_argument('--element')

    simplicial = verb('simplicial', 'simplicial identities and epi-mono factorization')
    simplicial.add_argument('--max-n', type=int, default=5)
    simplicial.add_argument('--map', help='values of an ordinal map, e.g. 0,0,2')
    simplicial.add_argument('--target', type=int)

    stack = verb('stack', 'descent check of a prestack on a site')
    stack.add_argument('--site', required=True)
    stack.add_argument('--prestack', required=True)

    holim = verb('holim', 'homotopy limit of a level-2 cosimplicial groupoid')
    holim.add_argument('--site')
    holim.add_argument('--prestack')
    holim.add_argument('--object')
    holim.add_argument('--cover', help='comma-separated cover members')
    holim.add_argument('--group', help='group for the constant diagram at BG')

    prefact = verb('prefact', 'prefactorization axioms')
    prefact.add_argument('--data')

    obs = verb('obs', 'classical observables of a disjoint-union model')
    obs.add_argument('--model')
    obs.add_argument('--degree', type=int, default=2)

    holonomy = verb('holonomy', 'surface-group representations into a finite group')
    holonomy.add_argument('--group')
    holonomy.add_argument('--genus', type=int, default=1)
    holonomy.add_argument('--rep', help='comma-separated A1,B1,...,Ag,Bg')
    holonomy.add_argument('--list', action='store_true', help='list every representation')
    return parser


class ModuliDeskCLI:
    """Parses one command, runs it, and writes its report to standard output."""

    def __init__(self):
        self.parser = build_parser()
        self.run_logger = RunLogger()

    def run(self, argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
        args = self.parser.parse_args(argv)
        if args.verb == 'simplicial' and args.max_n < 0:
            self.parser.error('--max-n must be nonnegative')
        command = f"{args.verb} {args.subverb}"
        as_json = args.json or Config.OUTPUT_FORMAT() == 'json'
        resolver = InputResolver()
        start = time.perf_counter()
        error_code = None
        try:
            outcome = DISPATCH[(args.verb, args.subverb)](args, resolver)
            report = Report(command, outcome.status, outcome.payload, resolver.digests, tables=outcome.tables)
        except DeskError as e:
            error_code = e.code
            report = error_report(command, e.to_payload(), resolver.digests)
            if not as_json:
                print(format_error_message(e), file=sys.stderr)
        self.run_logger.log_run(command, report.status, time.perf_counter() - start, error_code)
        (out or sys.stdout).write(report.render(as_json))
        logger.debug(f"run stats: {self.run_logger.get_run_stats()}")
        return report.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    return ModuliDeskCLI().run(argv)
