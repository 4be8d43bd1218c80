import io
import json
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core import verification
from core.algebra import SymbolicMoment


class CommandTestCase(SimpleTestCase):
    def call(self, *args, **options):
        out = io.StringIO()
        call_command(*args, stdout=out, stderr=io.StringIO(), **options)
        return out.getvalue()

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as caught:
            self.call(*args, **options)
        self.assertEqual(caught.exception.returncode, code)
        return caught.exception


class MomentsCommandTests(CommandTestCase):
    def test_csv_output(self):
        output = self.call('moments', alpha=1.0, kmax=4, format='csv', digits=12)
        lines = output.strip().splitlines()
        self.assertEqual(lines[0], 'k,value,route')
        self.assertEqual(lines[3], '2,1,closed_form')
        self.assertEqual(lines[4], '3,3,closed_form')
        self.assertEqual(lines[-1], '4,11,recursion')

    def test_json_output(self):
        data = json.loads(self.call('moments', alpha=2.0, kmax=6, route='closed_form'))
        self.assertEqual(data['kind'], 'adjusted')
        self.assertEqual(len(data['values']), 7)
        self.assertEqual(data['route'][2:], ['closed_form'] * 5)

    def test_canonical_kind(self):
        data = json.loads(self.call('moments', alpha=1.0, kmax=5, kind='canonical'))
        self.assertEqual(data['kind'], 'canonical')
        self.assertEqual(data['route'], ['inversion'] * 6)

    def test_non_positive_alpha(self):
        self.assertExitCode(1, 'moments', '--alpha=-1')

    def test_route_not_available_for_kind(self):
        error = self.assertExitCode(1, 'moments', alpha=1.0, kind='canonical', route='closed_form')
        self.assertIn('route', str(error))

    def test_argument_type_error(self):
        self.assertExitCode(1, 'moments', '--alpha=1', '--kmax=many')

    def test_symbolic_output(self):
        data = json.loads(self.call('moments', symbolic=True, kmax=4))
        self.assertEqual(data['kind'], 'adjusted')
        self.assertEqual([row['k'] for row in data['moments']], [0, 1, 2, 3, 4])
        self.assertEqual(data['moments'][0]['expression'], '(1)*G + (-2)*T')
        self.assertEqual(data['moments'][4]['gamma_plus_one_factor'], '4*alpha^2 + 5*alpha + 2')

    def test_symbolic_routes_disagreeing(self):
        with mock.patch('core.moments.adjusted_closed_form', return_value=SymbolicMoment()):
            error = self.assertExitCode(2, 'moments', symbolic=True, kmax=3)
        self.assertIn('k=2, 3', str(error))

    def test_alpha_required_without_symbolic(self):
        error = self.assertExitCode(1, 'moments', kmax=3)
        self.assertIn('alpha', str(error))


class PolyCommandTests(CommandTestCase):
    def test_exact_json(self):
        data = json.loads(self.call('poly', n=2, alpha='1', exact=True))
        self.assertEqual(data['coeffs'], ['-3', '0', '1'])
        self.assertEqual(data['K'], '3')

    def test_sign_against_listing(self):
        data = json.loads(self.call('poly', n=1, alpha='2'))
        self.assertEqual(data['sign_vs_listed'], -1)

    def test_exact_text(self):
        output = self.call('poly', n=3, alpha='1', exact=True, format='text')
        self.assertEqual(output.strip(), '(1/2)*(-x^3 + 4x^2 + 4x - 8)')

    def test_degree_zero(self):
        error = self.assertExitCode(1, 'poly', n=0, alpha='1')
        self.assertIn('no degree-0 member', str(error))

    def test_both_paths(self):
        data = json.loads(self.call('poly', n=2, alpha='1', path='both'))
        self.assertLess(data['max_discrepancy'], 1e-8)
        self.assertEqual(data['a']['path'], 'a')
        self.assertEqual(data['tilde']['path'], 'tilde')

    def test_float_degree_limit_is_a_usage_error(self):
        self.assertExitCode(1, 'poly', n=11, alpha='1')


class VerifyCommandTests(CommandTestCase):
    def test_exact_checks(self):
        data = json.loads(self.call('verify', nmax=2, alpha='0.5,1', checks='eigen,three_term'))
        self.assertTrue(data['passed'])
        self.assertEqual(len(data['records']), 8)
        self.assertTrue(all(record['residual'] == 0.0 for record in data['records']))

    def test_quadrature_backed_checks(self):
        data = json.loads(self.call('verify', nmax=3, alpha='0.5', checks='orthogonality,norm'))
        self.assertTrue(data['passed'])

    def test_unknown_check(self):
        self.assertExitCode(1, 'verify', checks='eigen,bogus')

    def test_failing_check_exits_with_two(self):
        def failing(n, alpha, config, tolerance):
            return verification._record('eigen', n, alpha, 1.0, tolerance)

        out = io.StringIO()
        with mock.patch.dict(verification.CHECKS, {'eigen': (failing, 0.0)}):
            with self.assertRaises(CommandError) as caught:
                call_command('verify', nmax=1, alpha='1', checks='eigen', stdout=out)
        self.assertEqual(caught.exception.returncode, 2)
        self.assertFalse(json.loads(out.getvalue())['passed'])


class TableCommandTests(CommandTestCase):
    def test_text_table(self):
        output = self.call('table', alpha=1.0, kmax=6, tol=1e-7)
        lines = output.strip().splitlines()
        self.assertEqual(len(lines), 8)
        self.assertIn('spread', lines[0])
        self.assertIn('quadrature', lines[0])

    def test_json_table(self):
        data = json.loads(self.call('table', alpha=2.0, kmax=4, kind='canonical', format='json', tol=1e-7))
        self.assertEqual(data['routes'], ['inversion', 'recursion', 'quadrature'])
        self.assertEqual(len(data['rows']), 5)
