import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'evinet.settings')
django.setup()
