from estimacion.consola.base import EstimacionCommand, logger
from estimacion.consola.forms import TableConfigForm
from estimacion.tabla_simbolica.exportacion import export_table
from estimacion.tabla_simbolica.operaciones import build_transfer_table


class Command(EstimacionCommand):
    help = 'Exporta la tabla de transferencia (X, r) -> Y en CSV o Excel'
    form_class = TableConfigForm

    def add_arguments(self, parser):
        self.add_net_argument(parser)
        parser.add_argument('--output', default='-', help='Archivo .csv o .xlsx, o - para la salida estándar')
        parser.add_argument('--max-places', type=int, dest='max_places', help='Límite de plazas de la tabla')

    def ejecutar(self, **options):
        config = self.cargar_formulario({
            'net': options['net'],
            'output': options['output'],
            'max_places': options.get('max_places'),
        })
        net = config['net']
        tabla = build_transfer_table(net, max_places=config['max_places'])
        logger.info("Tabla de %s: %d filas", net.name, len(tabla))

        if config['output'] == '-':
            export_table(tabla, '-', stream=self.stdout)
            # La cuenta va a stderr para no mezclarse con el CSV
            self.stderr.write(f"{len(tabla)} filas")
            return
        export_table(tabla, config['output'])
        self.stdout.write(self.style.SUCCESS(f"{len(tabla)} filas escritas en {config['output']}"))
