from django.core.management.base import CommandError

from core import moments
from core.renderers import MomentTableCSVRenderer
from core.serializers import MomentsCommandSerializer, MomentTableSerializer, SymbolicMomentSerializer

from ._base import VERIFICATION_FAILURE, X1Command


def build_table(kind, alpha, k_max, route, config):
    if kind == moments.ADJUSTED:
        return moments.adjusted_moment_table(alpha, k_max, route, config)
    return moments.canonical_moment_table(alpha, k_max, route, config)


def reference_route(kind, route):
    if route != moments.RECURSION:
        return moments.RECURSION
    return moments.CLOSED_FORM if kind == moments.ADJUSTED else moments.INVERSION


class Command(X1Command):
    help = 'Print adjusted or canonical moments of the X1-Laguerre weight, cross-checked against a second route.'
    command_serializer_class = MomentsCommandSerializer

    def add_arguments(self, parser):
        parser.add_argument('--alpha', type=float, help='Weight parameter alpha > 0 (not needed with --symbolic).')
        parser.add_argument('--kind', choices=moments.KINDS, default=moments.ADJUSTED)
        parser.add_argument('--kmax', type=int, default=10, help='Largest moment index.')
        parser.add_argument('--route', choices=moments.ROUTES,
                            help='Computation route (default: recursion, or inversion for canonical).')
        parser.add_argument('--format', choices=('json', 'csv'), default='json')
        parser.add_argument('--symbolic', action='store_true',
                            help='Print adjusted moments as exact (a)*G + (b)*T expressions in alpha.')
        parser.add_argument('--tol', type=float, help='Allowed relative disagreement between routes.')
        self.add_precision_arguments(parser)

    def run(self, data, config):
        if data['symbolic']:
            self.run_symbolic(data['kmax'])
            return

        kind, route = data['kind'], data['route']
        table = build_table(kind, data['alpha'], data['kmax'], route, config)
        payload = MomentTableSerializer(table, context={'digits': config.digits}).data

        if data['format'] == 'csv':
            rendered = MomentTableCSVRenderer().render(payload, renderer_context={'digits': config.digits})
            self.stdout.write(rendered.decode(), ending='')
        else:
            self.write_json(payload)

        check_route = reference_route(kind, route)
        reference = build_table(kind, data['alpha'], data['kmax'], check_route, config)
        tolerance = data.get('tol', config.route_tol)
        diffs = [
            (k, moments.max_relative_discrepancy([a], [b]))
            for k, (a, b) in enumerate(zip(table.values, reference.values))
        ]
        failing = [(k, diff) for k, diff in diffs if diff > tolerance]
        if failing:
            report = '\n'.join(f'k={k}: relative difference {diff:.3e}' for k, diff in failing)
            raise CommandError(
                f'{route} disagrees with {check_route} beyond {tolerance:g}:\n{report}',
                returncode=VERIFICATION_FAILURE,
            )

    def run_symbolic(self, k_max):
        table = moments.symbolic_adjusted_recursion(k_max)
        rows = [{'k': k, 'moment': moment} for k, moment in enumerate(table)]
        self.write_json({
            'kind': moments.ADJUSTED,
            'moments': SymbolicMomentSerializer(rows, many=True).data,
        })
        # the recursion must reproduce the closed form exactly
        mismatched = [k for k in range(2, k_max + 1) if moments.adjusted_closed_form(k) != table[k]]
        if mismatched:
            raise CommandError(
                f'symbolic recursion and closed form differ at k={", ".join(map(str, mismatched))}',
                returncode=VERIFICATION_FAILURE,
            )
