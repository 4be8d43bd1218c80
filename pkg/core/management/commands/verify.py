from django.core.management.base import CommandError

from core.serializers import VerificationRecordSerializer, VerifyCommandSerializer
from core.verification import CHECKS, run_checks

from ._base import VERIFICATION_FAILURE, X1Command, split_list


class Command(X1Command):
    help = 'Run invariant checks over degrees 1..nmax and a list of alpha values; prints a JSON report.'
    command_serializer_class = VerifyCommandSerializer

    def add_arguments(self, parser):
        parser.add_argument('--nmax', type=int, default=3)
        parser.add_argument('--alpha', default='1', help='Comma-separated alpha values.')
        parser.add_argument('--checks', default=','.join(CHECKS), help=f'Comma-separated subset of: {", ".join(CHECKS)}.')
        parser.add_argument('--tol', type=float, help='Override the tolerance of every check.')
        parser.add_argument('--workers', type=int, help='Worker threads.')
        self.add_precision_arguments(parser)

    def validate(self, options):
        options = dict(options)
        options['alpha'] = split_list(options.get('alpha') or '')
        options['checks'] = split_list(options.get('checks') or '')
        return super().validate(options)

    def run(self, data, config):
        records = run_checks(
            data['nmax'],
            data['alpha'],
            checks=data['checks'],
            tolerance=data.get('tol'),
            config=config,
        )
        passed = all(record.passed for record in records)
        context = {'digits': config.digits}
        self.write_json({
            'passed': passed,
            'records': VerificationRecordSerializer(records, many=True, context=context).data,
        })
        if not passed:
            failed = [f'{r.check}(n={r.n}, alpha={r.alpha:g})' for r in records if not r.passed]
            raise CommandError(f'{len(failed)} checks failed: {", ".join(failed)}', returncode=VERIFICATION_FAILURE)
