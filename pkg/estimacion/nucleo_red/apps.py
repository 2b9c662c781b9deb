from django.apps import AppConfig


class NucleoRedConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'estimacion.nucleo_red'
    label = 'nucleo_red'
    verbose_name = 'Núcleo de la red de Petri'
