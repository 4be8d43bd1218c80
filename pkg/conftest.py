"""Configure Django before test collection so pytest can run the suite."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'X1Laguerre.settings')
django.setup()
