import logging
import sys

from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from core.conf import get_precision_config
from core.exceptions import ConfigurationError, X1LaguerreError

logger = logging.getLogger(__name__)

# Exit codes: 0 success, 1 usage or domain error, 2 verification failure.
USAGE_ERROR = 1
VERIFICATION_FAILURE = 2


def _usage_error(parser, message):
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(USAGE_ERROR, f'{parser.prog}: error: {message}\n')
    raise CommandError(f'Error: {message}', returncode=USAGE_ERROR)


def split_list(value):
    return [item.strip() for item in value.split(',') if item.strip()]


class X1Command(BaseCommand):
    """Shared plumbing: serializer validation, precision flags, exit codes."""

    command_serializer_class = None
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        self._usage = parser.format_usage()
        return parser

    def add_precision_arguments(self, parser):
        parser.add_argument('--digits', type=int, help='Significant digits in numeric output (default 17).')
        parser.add_argument('--quad-tol', dest='quad_tol', type=float,
                            help='Target relative tolerance of the quadrature oracle.')
        parser.add_argument('--strategy', help='Quadrature strategy: split_tanh_sinh or generalized_gauss_laguerre.')
        parser.add_argument('--config', help='key=value file with precision settings (overrides X1LAG_CONFIG).')

    def validate(self, options):
        data = {key: value for key, value in options.items() if value is not None}
        serializer = self.command_serializer_class(data=data)
        if not serializer.is_valid():
            lines = []
            for field, errors in serializer.errors.items():
                for error in errors if isinstance(errors, list) else [errors]:
                    lines.append(f'{field}: {error}')
            usage = getattr(self, '_usage', '')
            raise CommandError('\n'.join(lines + [usage.strip()]), returncode=USAGE_ERROR)
        return serializer.validated_data

    def precision_config(self, data):
        try:
            return get_precision_config(
                config_path=data.get('config'),
                digits=data.get('digits'),
                target_rel_tol=data.get('quad_tol'),
                quad_strategy=data.get('strategy'),
                workers=data.get('workers'),
            )
        except ConfigurationError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR)

    def write_json(self, data):
        self.stdout.write(JSONRenderer().render(data).decode())

    def handle(self, *args, **options):
        data = self.validate(options)
        config = self.precision_config(data)
        try:
            self.run(data, config)
        except X1LaguerreError as exc:
            logger.debug('command failed', exc_info=True)
            raise CommandError(str(exc), returncode=USAGE_ERROR)

    def run(self, data, config):
        raise NotImplementedError('subclasses of X1Command must provide a run() method')
