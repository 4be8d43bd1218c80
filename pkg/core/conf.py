"""
Precision and strategy configuration.

Values are layered, lowest precedence first:

1. the defaults below,
2. ``settings.X1LAG`` (itself read from the environment through decouple),
3. the key=value file named by the ``X1LAG_CONFIG`` environment variable,
4. explicit overrides, normally command-line flags.
"""
import dataclasses
import functools
import logging
import os
from dataclasses import dataclass

from decouple import Config, RepositoryEnv, UndefinedValueError
from django.core.signals import setting_changed
from django.dispatch import receiver

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = 'X1LAG_CONFIG'

QUADRATURE_STRATEGIES = ('split_tanh_sinh', 'generalized_gauss_laguerre')


@dataclass(frozen=True)
class PrecisionConfig:
    target_rel_tol: float = 1e-10
    quad_strategy: str = 'split_tanh_sinh'
    quad_max_levels: int = 10
    # 0 means "derive the truncation point from the tolerance"
    quad_truncation: float = 0.0
    gauss_nodes: int = 120
    expint_switch: float = 1.0
    extended_precision: bool = False
    extended_dps: int = 30
    digits: int = 17
    workers: int = 4
    max_float_degree: int = 10
    representation_tol: float = 1e-8
    route_tol: float = 1e-9

    def __post_init__(self):
        if not 1e-14 <= self.target_rel_tol <= 1e-4:
            raise ConfigurationError(
                f'target_rel_tol must lie in [1e-14, 1e-4], got {self.target_rel_tol}'
            )
        if self.quad_strategy not in QUADRATURE_STRATEGIES:
            raise ConfigurationError(f'unknown quadrature strategy {self.quad_strategy!r}')
        if self.quad_max_levels < 2 or self.gauss_nodes < 2:
            raise ConfigurationError('quadrature levels and nodes must be at least 2')
        if self.quad_truncation < 0:
            raise ConfigurationError('quad_truncation must be non-negative')
        if self.expint_switch <= 0:
            raise ConfigurationError('expint_switch must be positive')
        if not 1 <= self.digits <= 17:
            raise ConfigurationError('digits must lie in [1, 17]')
        if self.workers < 1:
            raise ConfigurationError('workers must be at least 1')
        if self.extended_dps < 16:
            raise ConfigurationError('extended_dps must be at least 16')

    def replace(self, **changes):
        changes = {key: value for key, value in changes.items() if value is not None}
        return dataclasses.replace(self, **changes)


# settings.X1LAG key -> PrecisionConfig field
_SETTINGS_KEYS = {
    'TARGET_REL_TOL': 'target_rel_tol',
    'QUAD_STRATEGY': 'quad_strategy',
    'QUAD_MAX_LEVELS': 'quad_max_levels',
    'QUAD_TRUNCATION': 'quad_truncation',
    'GAUSS_NODES': 'gauss_nodes',
    'EXPINT_SWITCH': 'expint_switch',
    'EXTENDED_PRECISION': 'extended_precision',
    'EXTENDED_DPS': 'extended_dps',
    'DIGITS': 'digits',
    'WORKERS': 'workers',
    'MAX_FLOAT_DEGREE': 'max_float_degree',
    'REPRESENTATION_TOL': 'representation_tol',
    'ROUTE_TOL': 'route_tol',
}


def _cast_for(field):
    if field.type in (bool, 'bool'):
        return lambda value: str(value).strip().lower() in ('1', 'true', 'yes', 'on')
    if field.type in (int, 'int'):
        return int
    if field.type in (float, 'float'):
        return float
    return str


def _from_settings():
    from django.conf import settings

    if not settings.configured:
        return {}
    section = getattr(settings, 'X1LAG', {})
    return {
        field: section[key]
        for key, field in _SETTINGS_KEYS.items()
        if key in section
    }


def _from_file(path):
    """Read X1LAG_* (or bare field-name) keys from a key=value file."""
    if not os.path.isfile(path):
        raise ConfigurationError(f'{CONFIG_ENV_VAR} points at a missing file: {path}')
    file_config = Config(RepositoryEnv(path))
    fields = {field.name: field for field in dataclasses.fields(PrecisionConfig)}
    values = {}
    for key, name in _SETTINGS_KEYS.items():
        for candidate in (f'X1LAG_{key}', name):
            try:
                raw = file_config(candidate)
            except UndefinedValueError:
                continue
            try:
                values[name] = _cast_for(fields[name])(raw)
            except ValueError as exc:
                raise ConfigurationError(f'bad value for {candidate} in {path}: {raw!r}') from exc
            break
    logger.debug('loaded %d precision settings from %s', len(values), path)
    return values


def get_precision_config(config_path=None, **overrides):
    values = _from_settings()
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        values.update(_from_file(path))
    values.update({key: value for key, value in overrides.items() if value is not None})
    return PrecisionConfig(**values)


@functools.lru_cache(maxsize=1)
def default_precision_config():
    """Process-wide config for library calls made without an explicit one."""
    return get_precision_config()


@receiver(setting_changed)
def reset_default_precision_config(sender, setting, **kwargs):
    if setting == 'X1LAG':
        default_precision_config.cache_clear()
