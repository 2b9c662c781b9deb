from django.core.management.base import CommandError

from estimacion.consola.base import EstimacionCommand
from estimacion.dsl_red.excepciones import DslError
from estimacion.dsl_red.parser import locate_violations, net_from_document, parse_net_document, read_text
from estimacion.nucleo_red.operaciones import detect_conflicts, validate_net


class Command(EstimacionCommand):
    help = 'Valida la estructura de una red y lista sus conflictos'

    def add_arguments(self, parser):
        self.add_net_argument(parser)

    def ejecutar(self, **options):
        ruta = options['net']
        try:
            doc = parse_net_document(read_text(ruta))
        except DslError as exc:
            raise self.fallar(exc, prefijo=f"{ruta}: ") from exc
        net = net_from_document(doc)
        informe = validate_net(net)

        if not informe.ok:
            for linea, violacion in locate_violations(doc, informe):
                columnas = ', '.join(net.transition_names[j] for j in violacion.columns if j < net.m)
                detalle = f" [{columnas}]" if columnas else ''
                self.stdout.write(f"{ruta}:{linea}: {violacion.code}: {violacion.message}{detalle}")
            raise CommandError(
                f"{ruta}: red inválida ({len(informe.violations)} violaciones)", returncode=1
            )

        self.stdout.write(self.style.SUCCESS(f"{ruta}: red {net.name} válida ({net.n} plazas, {net.m} transiciones)"))
        conflictos = detect_conflicts(net)
        if not conflictos:
            self.stdout.write('sin conflictos')
        for conflicto in conflictos:
            self.stdout.write(f"conflicto {conflicto.label(net)}")
