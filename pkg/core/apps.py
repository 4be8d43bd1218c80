from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = 'core'
    verbose_name = 'X1-Laguerre moments and polynomials'

    def ready(self):
        # connects the setting_changed receiver that resets the cached precision config
        from . import conf  # noqa: F401
