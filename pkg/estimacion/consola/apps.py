from django.apps import AppConfig


class ConsolaConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'estimacion.consola'
    label = 'consola'
    verbose_name = 'Comandos de estimación'
