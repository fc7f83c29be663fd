"""
Batch front end.

Every command is a library call followed by serialization. With ``--out``
the results are written into a run directory and each invocation appends
one record to ``manifest.jsonl`` in it; without it they go to stdout.

Exit codes: 0 for success or membership, 1 for a negative answer or a
failed suite, 2 for usage errors.
"""
import argparse
import io
import json
import logging
import os
import sys
import time
from collections import OrderedDict
from fractions import Fraction

import six

import sparsebound
from .base.helpers import cleanup_action
from .base.helpers import parse_rational
from .base.helpers import sha256_file
from .base.helpers import to_run_name
from .exponents import ExponentTriple
from .exponents import REGION_NAMES
from .exponents import region as build_region
from .factory import FamilyList
from .factory import MeasureFamilyFactory
from .interfaces.exceptions import SparseBoundBaseException
from .operators import OPERATOR_KINDS
from .verify import DEFAULT_SEED
from .verify import SUITE_NAMES

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

MANIFEST_NAME = 'manifest.jsonl'
FAMILY_CHOICES = (FamilyList.TRIANGLE, FamilyList.BISPHERE,
                  FamilyList.PRODUCT_SPHERE, FamilyList.CUSTOM)


def rational(text):
    """
    argparse type for ``a/b`` strings.
    """
    try:
        return parse_rational(text)
    except SparseBoundBaseException:
        raise argparse.ArgumentTypeError(
            "%r is not a rational number of the form a/b" % (text,))


class RunManifest(object):
    """
    Append-only JSON-lines record of the runs made into one directory.
    """

    def __init__(self, directory):
        self.directory = directory
        self.path = os.path.join(directory, MANIFEST_NAME)

    def output_path(self, name):
        """
        A fresh path for an output file; existing files are never reused so
        every output belongs to exactly one record.
        """
        stem, ext = os.path.splitext(name)
        candidate = os.path.join(self.directory, name)
        index = 1
        while os.path.exists(candidate):
            candidate = os.path.join(self.directory,
                                     "%s-%d%s" % (stem, index, ext))
            index += 1
        return candidate

    def append(self, command, parameters, seed, inputs, outputs, wall_time):
        record = OrderedDict([
            ('command', command),
            ('parameters', parameters),
            ('seed', seed),
            ('version', sparsebound.get_version()),
            ('inputs', OrderedDict((p, sha256_file(p)) for p in inputs)),
            ('outputs', [os.path.relpath(p, self.directory) for p in outputs]),
            ('wall_time', wall_time),
        ])
        with io.open(self.path, 'a', encoding='utf-8') as handle:
            handle.write(six.text_type(json.dumps(record, sort_keys=False)))
            handle.write(u'\n')
        log.info("Recorded %s run in %s", command, self.path)
        return record


class Run(object):
    """
    Collects the outputs of one command and writes the manifest record.
    """

    def __init__(self, args):
        self.args = args
        self.started = time.time()
        self.inputs = []
        self.outputs = []
        self.manifest = None
        if args.out:
            if not os.path.isdir(args.out):
                os.makedirs(args.out)
            self.manifest = RunManifest(args.out)

    def add_input(self, path):
        if path and path not in self.inputs:
            self.inputs.append(path)

    def emit(self, name, payload=None, writer=None):
        """
        Write a JSON payload, or call ``writer(stream)``, either into the run
        directory or to stdout.
        """
        if self.manifest is None:
            stream = sys.stdout
            if writer is not None:
                writer(stream)
            else:
                stream.write(json.dumps(payload, indent=2) + '\n')
            return None
        path = self.manifest.output_path(name)
        handle = io.open(path, 'w', encoding='utf-8', newline='')
        with cleanup_action(handle.close):
            if writer is not None:
                writer(handle)
            else:
                handle.write(six.text_type(json.dumps(payload, indent=2)))
        self.outputs.append(path)
        return path

    def finish(self, seed=None):
        if self.manifest is None:
            return
        params = OrderedDict(
            (k, _plain(v)) for k, v in sorted(vars(self.args).items())
            if k not in ('handler', 'out'))
        self.manifest.append(self.args.command, params, seed, self.inputs,
                             self.outputs, time.time() - self.started)


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def _toolkit(args, **extra):
    config = {'grid_n': args.grid, 'threads': args.threads,
              'default_seed': args.seed}
    if args.d is not None:
        config['dim'] = args.d
    if getattr(args, 'nodes', None):
        config['n_nodes'] = args.nodes
    if getattr(args, 'jmin', None) is not None:
        config['j_min'] = args.jmin
    if getattr(args, 'jmax', None) is not None:
        config['j_max'] = args.jmax
    if getattr(args, 'measure_source', None):
        config['measure_source'] = args.measure_source
    if args.debug:
        config['sb_debug'] = True
    config.update(extra)
    return MeasureFamilyFactory().create_toolkit(args.measure, config)


def cmd_region(args):
    run = Run(args)
    reg = build_region(args.name, args.d, args.m, intersect=args.intersect)
    stem = to_run_name("region-%s-d%s" % (args.name, args.d))
    if args.format == 'csv':
        run.emit(stem + '.csv', writer=reg.to_csv)
    else:
        run.emit(stem + '.json', reg.to_json())
    status = EXIT_OK
    if args.contains:
        x = ExponentTriple(*args.contains)
        mode = ('relative' if args.relative else
                'interior' if args.interior else 'closed')
        member = reg.contains(x, mode)
        log.info("%s %s %s (%s)", x, 'in' if member else 'not in',
                 args.name, mode)
        sys.stderr.write("%s %s\n" % ('member' if member else 'non-member',
                                      mode))
        status = EXIT_OK if member else EXIT_NEGATIVE
    run.finish()
    return status


def _load_inputs(args, toolkit, run):
    if args.random:
        grid = toolkit.grid
        f = grid.random_function(args.seed)
        g = grid.random_function(args.seed + 1)
        h = grid.random_function(args.seed + 2, kind='uniform')
        return f, g, h
    if not (args.f and args.g and args.h):
        raise argparse.ArgumentTypeError(
            "give --f, --g and --h or --random")
    for path in (args.f, args.g, args.h):
        run.add_input(path)
    return tuple(toolkit.grid.load(p) for p in (args.f, args.g, args.h))


def cmd_sparse(args):
    run = Run(args)
    x = ExponentTriple.from_exponents(args.p, args.q, args.r)
    toolkit = _toolkit(args)
    report = toolkit.exponents.admissibility(x)
    if not report.theorem_hypotheses:
        sys.stderr.write(
            "sparsebound: refusing (1/p, 1/q, 1/r) = (%s): sparse bounds "
            "need r >= p, r >= q and r > 1; failed: %s\n"
            % (", ".join(str(c) for c in x), ", ".join(report.failures())))
        return EXIT_USAGE
    if args.trials > 1:
        result = {}

        def write_ratios(stream):
            result['ratio'] = toolkit.verify.sparse_ratio(x, args.trials,
                                                            stream)
        stats = run.emit('sparse-ratios.csv', writer=write_ratios)
        ratio = result['ratio']
        run.emit('sparse-ratio-report.json', ratio.to_json())
        log.info("Ratio statistics written to %s", stats)
        run.finish(args.seed)
        return EXIT_OK if ratio.passed else EXIT_NEGATIVE
    f, g, h = _load_inputs(args, toolkit, run)
    collection = toolkit.sparse.build(f, g, h, x,
                                      record_stages=args.record_stages)
    sparsity = toolkit.sparse.verify(collection)
    form = toolkit.sparse.form(collection, f, g, h, x)
    pairing = toolkit.operators.evaluate('lacunary', f, g).inner(h)
    summary = OrderedDict([
        ('exponents', x.to_json()),
        ('cubes', len(collection)),
        ('sparsity', sparsity.to_json()),
        ('sparse_form', form),
        ('lacunary_pairing', pairing),
        ('ratio', pairing / form if form else None),
        ('stages', collection.stages),
    ])
    run.emit('sparse-family.json', collection.to_json())
    run.emit('sparse-report.json', summary)
    run.finish(args.seed)
    return EXIT_OK if sparsity.passed else EXIT_NEGATIVE


def cmd_operator(args):
    run = Run(args)
    toolkit = _toolkit(args)
    if args.f and args.g:
        run.add_input(args.f)
        run.add_input(args.g)
        f, g = toolkit.grid.load(args.f), toolkit.grid.load(args.g)
    else:
        f = toolkit.grid.random_function(args.seed, kind=args.kind_inputs)
        g = toolkit.grid.random_function(args.seed + 1, kind=args.kind_inputs)
    scales = args.t or [None]
    for t in scales:
        out = toolkit.operators.evaluate(args.kind, f, g, t)
        stem = to_run_name("%s-t%s" % (args.kind, t if t is not None else
                                       'default'))
        if args.format == 'csv':
            run.emit(stem + '.csv', writer=out.to_csv)
        else:
            run.emit(stem + '.json', out.to_json())
    run.finish(args.seed)
    return EXIT_OK


def cmd_verify(args):
    run = Run(args)
    toolkit = _toolkit(args)
    reports = toolkit.verify.run_suite(args.suite, args.trials, args.seed)
    payload = [r.to_json() for r in reports]
    run.emit(to_run_name('verify-%s' % args.suite) + '.json', payload)
    for r in reports:
        log.info("Suite %s: %s", r.name, 'passed' if r.passed else 'FAILED')
        sys.stderr.write("%s: %s\n" % (r.name,
                                       'passed' if r.passed else 'FAILED'))
    run.finish(args.seed)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NEGATIVE


def _add_common(parser):
    parser.add_argument('--out', help='Run directory; outputs and '
                        'manifest.jsonl are written there')
    parser.add_argument('--seed', type=int, default=DEFAULT_SEED)
    parser.add_argument('--threads', type=int, default=1)
    parser.add_argument('--debug', action='store_true',
                        help='Stream debug logging to stderr')


def _add_toolkit(parser, dim_default=None):
    parser.add_argument('--measure', choices=FAMILY_CHOICES,
                        default=FamilyList.BISPHERE)
    parser.add_argument('--measure-source', dest='measure_source',
                        help='JSON measure for --measure custom')
    parser.add_argument('--d', type=int, default=dim_default)
    parser.add_argument('--nodes', type=int)
    parser.add_argument('--grid', type=int, default=256)
    parser.add_argument('--jmin', type=int)
    parser.add_argument('--jmax', type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='sparsebound',
        description='Sparse bounds for bilinear maximal averages.')
    parser.add_argument('--version', action='version',
                        version=sparsebound.get_version())
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('region', help='Transcribed exponent regions')
    p.add_argument('name', choices=REGION_NAMES)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--m', type=int)
    p.add_argument('--contains', nargs=3, type=rational,
                   metavar=('1/P', '1/Q', '1/R'))
    p.add_argument('--interior', action='store_true')
    p.add_argument('--relative', action='store_true',
                   help='interior within the affine hull of the region')
    p.add_argument('--intersect', action='store_true',
                   help='keep only the part with r >= p, q')
    p.add_argument('--format', choices=('json', 'csv'), default='json')
    _add_common(p)
    p.set_defaults(handler=cmd_region)

    p = sub.add_parser('sparse', help='Sparse family construction')
    _add_toolkit(p)
    p.add_argument('--p', type=rational, required=True)
    p.add_argument('--q', type=rational, required=True)
    p.add_argument('--r', type=rational, required=True)
    p.add_argument('--f')
    p.add_argument('--g')
    p.add_argument('--h')
    p.add_argument('--random', action='store_true')
    p.add_argument('--trials', type=int, default=1)
    p.add_argument('--record-stages', dest='record_stages',
                   action='store_true')
    _add_common(p)
    p.set_defaults(handler=cmd_sparse)

    p = sub.add_parser('operator', help='Evaluate an operator on the grid')
    _add_toolkit(p)
    p.add_argument('--kind', choices=sorted(OPERATOR_KINDS),
                   default='single-scale')
    p.add_argument('--t', type=float, action='append')
    p.add_argument('--f')
    p.add_argument('--g')
    p.add_argument('--inputs', dest='kind_inputs',
                   default='indicator-union-of-cubes')
    p.add_argument('--format', choices=('json', 'csv'), default='json')
    _add_common(p)
    p.set_defaults(handler=cmd_operator)

    p = sub.add_parser('verify', help='Run verification suites')
    p.add_argument('suite', choices=SUITE_NAMES)
    _add_toolkit(p)
    p.add_argument('--trials', type=int)
    _add_common(p)
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.debug:
        sparsebound.set_stream_logger('sparsebound', level=logging.DEBUG)
    try:
        return args.handler(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except (SparseBoundBaseException, NotImplementedError) as e:
        log.debug("Command %s failed", args.command, exc_info=True)
        sys.stderr.write("sparsebound: error: %s\n" % e)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
