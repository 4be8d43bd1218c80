import math
from fractions import Fraction

from rest_framework import serializers

from .algebra import SymbolicMoment
from .conf import QUADRATURE_STRATEGIES
from .moments import ADJUSTED, ADJUSTED_ROUTES, CANONICAL, CANONICAL_ROUTES, INVERSION, KINDS, RECURSION, ROUTES
from .polys import NO_DEGREE_ZERO, NORMALIZATIONS, PATHS, RAW, SOLVE_METHODS, exact_alpha
from .verification import CHECKS


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def round_to_digits(value, digits):
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(f'{value:.{digits}g}')


class RationalField(serializers.Field):
    def to_representation(self, value):
        return format_rational(value)

    def to_internal_value(self, data):
        try:
            return Fraction(str(data).strip())
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError('Invalid rational number.')


class DigitsFloatField(serializers.Field):
    """Float rounded to ``context['digits']`` significant digits; inf/nan become null."""

    def to_representation(self, value):
        return round_to_digits(value, self.context.get('digits', 17))

    def to_internal_value(self, data):
        try:
            return float(data)
        except (TypeError, ValueError):
            raise serializers.ValidationError('A number is required.')


class NumberField(serializers.Field):
    """Exact values as 'p/q', everything else as a rounded float."""

    def to_representation(self, value):
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return format_rational(value)
        return round_to_digits(value, self.context.get('digits', 17))


# --- OUTPUT SERIALIZERS ---

class MomentTableSerializer(serializers.Serializer):
    alpha = DigitsFloatField()
    kind = serializers.CharField()
    values = serializers.ListField(child=DigitsFloatField())
    route = serializers.ListField(child=serializers.CharField())


class SymbolicMomentSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    expression = serializers.SerializerMethodField()
    gamma_plus_one_factor = serializers.SerializerMethodField()

    def get_expression(self, obj):
        return str(obj['moment'])

    def get_gamma_plus_one_factor(self, obj):
        moment = obj['moment']
        if not isinstance(moment, SymbolicMoment) or not moment.is_gamma_plus_one_multiple():
            return None
        return moment.gamma_plus_one_factor().format('alpha')


class X1PolynomialSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    alpha = NumberField()
    basis = serializers.SerializerMethodField()
    coeffs = serializers.SerializerMethodField()
    normalization = serializers.CharField()
    K = NumberField()
    path = serializers.CharField()
    exact = serializers.BooleanField()
    sign_vs_listed = serializers.IntegerField()
    pretty = serializers.SerializerMethodField()

    def get_basis(self, obj):
        return self.context.get('basis', 'x')

    def get_coeffs(self, obj):
        field = NumberField()
        field.bind('coeffs', self)
        return [field.to_representation(c) for c in obj.coefficients(self.get_basis(obj))]

    def get_pretty(self, obj):
        return obj.pretty(self.context.get('digits', 17))


class VerificationRecordSerializer(serializers.Serializer):
    check = serializers.CharField()
    n = serializers.IntegerField()
    alpha = DigitsFloatField()
    residual = DigitsFloatField()
    tolerance = DigitsFloatField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)


class RouteRowSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    values = serializers.DictField(child=DigitsFloatField())
    spread = DigitsFloatField()


# --- COMMAND VALIDATION ---

class PrecisionOptionsSerializer(serializers.Serializer):
    digits = serializers.IntegerField(min_value=1, max_value=17, required=False, allow_null=True)
    quad_tol = serializers.FloatField(min_value=1e-14, max_value=1e-4, required=False, allow_null=True)
    strategy = serializers.ChoiceField(choices=QUADRATURE_STRATEGIES, required=False, allow_null=True)
    config = serializers.CharField(required=False, allow_null=True)
    tol = serializers.FloatField(min_value=0.0, required=False, allow_null=True)


def _validate_positive_alpha(value):
    if not math.isfinite(value) or value <= 0:
        raise serializers.ValidationError('alpha must be positive: the weight is not integrable otherwise.')
    return value


class MomentsCommandSerializer(PrecisionOptionsSerializer):
    alpha = serializers.FloatField(required=False, allow_null=True)
    kind = serializers.ChoiceField(choices=KINDS, default=ADJUSTED)
    kmax = serializers.IntegerField(min_value=0)
    route = serializers.ChoiceField(choices=ROUTES, required=False, allow_null=True)
    format = serializers.ChoiceField(choices=('json', 'csv'), default='json')
    symbolic = serializers.BooleanField(default=False)

    def validate_alpha(self, value):
        return None if value is None else _validate_positive_alpha(value)

    def validate(self, data):
        kind = data.get('kind', ADJUSTED)
        if data.get('symbolic'):
            if kind != ADJUSTED:
                raise serializers.ValidationError({'symbolic': 'exact expressions exist for adjusted moments only.'})
            return data
        if data.get('alpha') is None:
            raise serializers.ValidationError({'alpha': 'alpha is required unless --symbolic is given.'})
        route = data.get('route') or (RECURSION if kind == ADJUSTED else INVERSION)
        allowed = ADJUSTED_ROUTES if kind == ADJUSTED else CANONICAL_ROUTES
        if route not in allowed:
            raise serializers.ValidationError(
                {'route': f'{kind} moments are available by {", ".join(allowed)}.'}
            )
        data['route'] = route
        return data


class PolyCommandSerializer(PrecisionOptionsSerializer):
    n = serializers.IntegerField()
    alpha = serializers.CharField()
    path = serializers.ChoiceField(choices=PATHS + ('both',), default='tilde')
    basis = serializers.ChoiceField(choices=('x', 'shifted'), default='x')
    normalization = serializers.ChoiceField(choices=NORMALIZATIONS, default='literature')
    K = serializers.CharField(required=False, allow_null=True)
    format = serializers.ChoiceField(choices=('json', 'text'), default='json')
    exact = serializers.BooleanField(default=False)
    method = serializers.ChoiceField(choices=SOLVE_METHODS, required=False, allow_null=True)

    def validate_n(self, value):
        if value == 0:
            raise serializers.ValidationError(f'{NO_DEGREE_ZERO}; use n >= 1.')
        if value < 0:
            raise serializers.ValidationError('n must be at least 1.')
        return value

    def validate(self, data):
        try:
            if data.get('exact'):
                data['alpha'] = exact_alpha(data['alpha'])
            else:
                data['alpha'] = _validate_positive_alpha(float(data['alpha']))
        except ValueError as exc:
            raise serializers.ValidationError({'alpha': str(exc)})

        if data.get('normalization') == RAW:
            raw = data.get('K')
            try:
                value = Fraction(raw) if data.get('exact') else float(raw)
            except (TypeError, ValueError, ZeroDivisionError):
                raise serializers.ValidationError({'K': 'raw normalization needs a numeric K.'})
            if value == 0:
                raise serializers.ValidationError({'K': 'K must be nonzero.'})
            data['K'] = value
        else:
            data['K'] = None
        return data


class VerifyCommandSerializer(PrecisionOptionsSerializer):
    nmax = serializers.IntegerField(min_value=1)
    alpha = serializers.ListField(child=serializers.FloatField(), min_length=1)
    checks = serializers.ListField(child=serializers.ChoiceField(choices=tuple(CHECKS)), min_length=1)
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate_alpha(self, value):
        return [_validate_positive_alpha(a) for a in value]


class TableCommandSerializer(PrecisionOptionsSerializer):
    alpha = serializers.FloatField()
    kind = serializers.ChoiceField(choices=KINDS, default=ADJUSTED)
    kmax = serializers.IntegerField(min_value=0)
    format = serializers.ChoiceField(choices=('text', 'json'), default='text')

    def validate_alpha(self, value):
        return _validate_positive_alpha(value)


def routes_for(kind):
    return ADJUSTED_ROUTES if kind == ADJUSTED else CANONICAL_ROUTES if kind == CANONICAL else ()
