from django.core.management.base import CommandError

from core import moments
from core.serializers import RouteRowSerializer, TableCommandSerializer, routes_for

from ._base import VERIFICATION_FAILURE, X1Command
from .moments import build_table


class Command(X1Command):
    help = 'Print every moment route side by side with the relative spread per index.'
    command_serializer_class = TableCommandSerializer

    def add_arguments(self, parser):
        parser.add_argument('--alpha', type=float, required=True)
        parser.add_argument('--kind', choices=moments.KINDS, default=moments.ADJUSTED)
        parser.add_argument('--kmax', type=int, default=10)
        parser.add_argument('--format', choices=('text', 'json'), default='text')
        parser.add_argument('--tol', type=float, help='Allowed spread between routes.')
        self.add_precision_arguments(parser)

    def run(self, data, config):
        routes = routes_for(data['kind'])
        tables = {route: build_table(data['kind'], data['alpha'], data['kmax'], route, config) for route in routes}
        rows = []
        for k in range(data['kmax'] + 1):
            values = {route: tables[route][k] for route in routes}
            spread = moments.max_relative_discrepancy([max(values.values())], [min(values.values())])
            rows.append({'k': k, 'values': values, 'spread': spread})

        if data['format'] == 'json':
            self.write_json({
                'alpha': data['alpha'],
                'kind': data['kind'],
                'routes': list(routes),
                'rows': RouteRowSerializer(rows, many=True, context={'digits': config.digits}).data,
            })
        else:
            width = config.digits + 8
            self.stdout.write('k'.rjust(3) + ''.join(route.rjust(width) for route in routes) + 'spread'.rjust(12))
            for row in rows:
                cells = ''.join(f'{row["values"][route]:.{config.digits}g}'.rjust(width) for route in routes)
                self.stdout.write(f'{row["k"]:>3}{cells}{row["spread"]:>12.3e}')

        tolerance = data.get('tol', config.route_tol)
        worst = max(rows, key=lambda row: row['spread'])
        if worst['spread'] > tolerance:
            raise CommandError(
                f'routes spread {worst["spread"]:.3e} at k={worst["k"]} (tolerance {tolerance:g})',
                returncode=VERIFICATION_FAILURE,
            )
