from django.apps import AppConfig


class DslRedConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'estimacion.dsl_red'
    label = 'dsl_red'
    verbose_name = 'Formato de texto de redes, masas y receptividades'
