from django.apps import AppConfig


class EvidencialConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'estimacion.evidencial'
    label = 'evidencial'
    verbose_name = 'Motor evidencial (masas sobre conjuntos de plazas)'
