from estimacion.consola.base import EstimacionCommand
from estimacion.consola.forms import NetForm
from estimacion.nucleo_red.operaciones import detect_conflicts


class Command(EstimacionCommand):
    help = 'Lista las plazas con dos o más transiciones de salida'
    form_class = NetForm

    def add_arguments(self, parser):
        self.add_net_argument(parser)

    def ejecutar(self, **options):
        net = self.cargar_formulario({'net': options['net']})['net']
        conflictos = detect_conflicts(net)
        if not conflictos:
            self.stdout.write('sin conflictos')
        for conflicto in conflictos:
            self.stdout.write(conflicto.label(net))
