from django.core.management.base import CommandError

from core import polys
from core.serializers import PolyCommandSerializer, X1PolynomialSerializer

from ._base import VERIFICATION_FAILURE, X1Command


def coefficient_discrepancy(first, second):
    scale = max(abs(c) for c in second.coeffs_x)
    return float(max(abs(a - b) for a, b in zip(first.coeffs_x, second.coeffs_x)) / scale)


class Command(X1Command):
    help = 'Construct the X1-Laguerre polynomial L_n from a determinant representation.'
    command_serializer_class = PolyCommandSerializer

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Degree, n >= 1.')
        parser.add_argument('--alpha', required=True, help='Weight parameter; p/q allowed with --exact.')
        parser.add_argument('--path', choices=polys.PATHS + ('both',), default=polys.PATH_TILDE,
                            help='a: monomial system, tilde: shifted system, classical: Laguerre representation.')
        parser.add_argument('--basis', choices=('x', 'shifted'), default='x')
        parser.add_argument('--normalization', choices=polys.NORMALIZATIONS, default=polys.LITERATURE)
        parser.add_argument('--K', help='Normalization constant for --normalization raw.')
        parser.add_argument('--format', choices=('json', 'text'), default='json')
        parser.add_argument('--exact', action='store_true', help='Build with exact rational arithmetic.')
        parser.add_argument('--method', choices=polys.SOLVE_METHODS)
        parser.add_argument('--tol', type=float, help='Allowed discrepancy for --path both.')
        self.add_precision_arguments(parser)

    def build(self, data, config, path):
        return polys.construct(
            data['n'], data['alpha'],
            path=path,
            normalization=data['normalization'],
            K=data['K'],
            exact=data['exact'],
            method=data.get('method'),
            config=config,
        )

    def serialize(self, polynomial, data, config):
        context = {'digits': config.digits, 'basis': data['basis']}
        return X1PolynomialSerializer(polynomial, context=context).data

    def run(self, data, config):
        if data['path'] != 'both':
            polynomial = self.build(data, config, data['path'])
            if data['format'] == 'text':
                self.stdout.write(polynomial.pretty(config.digits))
            else:
                self.write_json(self.serialize(polynomial, data, config))
            return

        first = self.build(data, config, polys.PATH_A)
        second = self.build(data, config, polys.PATH_TILDE)
        discrepancy = coefficient_discrepancy(first, second)
        if data['format'] == 'text':
            self.stdout.write(f'a:     {first.pretty(config.digits)}')
            self.stdout.write(f'tilde: {second.pretty(config.digits)}')
            self.stdout.write(f'max discrepancy: {discrepancy:.3e}')
        else:
            self.write_json({
                'a': self.serialize(first, data, config),
                'tilde': self.serialize(second, data, config),
                'max_discrepancy': discrepancy,
            })
        tolerance = data.get('tol', config.representation_tol)
        if discrepancy > tolerance:
            raise CommandError(
                f'representations differ by {discrepancy:.3e} (tolerance {tolerance:g})',
                returncode=VERIFICATION_FAILURE,
            )
