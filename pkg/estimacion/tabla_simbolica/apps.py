from django.apps import AppConfig


class TablaSimbolicaConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'estimacion.tabla_simbolica'
    label = 'tabla_simbolica'
    verbose_name = 'Tabla de transferencia y ecuaciones de masa'
