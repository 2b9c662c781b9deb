"""
Base común de los comandos de estimación: formulario de opciones y errores.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from estimacion.nucleo_red.excepciones import NetError

logger = logging.getLogger('estimacion.consola')


class EstimacionCommand(BaseCommand):
    """Los errores de la biblioteca salen como CommandError con código 1"""

    form_class = None

    def add_net_argument(self, parser):
        parser.add_argument('--net', required=True, help='Archivo .net con la red')

    def cargar_formulario(self, datos: dict):
        form = self.form_class(data=datos)
        if not form.is_valid():
            errores = '; '.join(
                mensaje
                for mensajes in form.errors.values()
                for mensaje in mensajes
            )
            raise CommandError(errores, returncode=1)
        return form.cleaned_data

    def fallar(self, exc: Exception, prefijo: str = '') -> CommandError:
        logger.debug("Comando %s interrumpido", self.__class__.__module__, exc_info=exc)
        return CommandError(f"{prefijo}{exc}", returncode=1)

    def handle(self, *args, **options):
        try:
            return self.ejecutar(**options)
        except (NetError, OSError, UnicodeDecodeError) as exc:
            raise self.fallar(exc) from exc

    def ejecutar(self, **options):
        raise NotImplementedError
