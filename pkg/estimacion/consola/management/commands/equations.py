from estimacion.consola.base import EstimacionCommand
from estimacion.consola.forms import TableConfigForm
from estimacion.tabla_simbolica.formato import render_equations
from estimacion.tabla_simbolica.operaciones import build_transfer_table, emit_equations


class Command(EstimacionCommand):
    help = 'Imprime las ecuaciones booleanas de masa de cada conjunto alcanzable'
    form_class = TableConfigForm

    def add_arguments(self, parser):
        self.add_net_argument(parser)
        parser.add_argument('--minimize', action='store_true', help='Reduce cada coeficiente a suma de productos mínima')
        parser.add_argument('--max-places', type=int, dest='max_places', help='Límite de plazas de la tabla')

    def ejecutar(self, **options):
        config = self.cargar_formulario({
            'net': options['net'],
            'minimize': options['minimize'],
            'max_places': options.get('max_places'),
        })
        net = config['net']
        tabla = build_transfer_table(net, max_places=config['max_places'])
        ecuaciones = emit_equations(tabla, minimize=config['minimize'])
        self.stdout.write(render_equations(ecuaciones, net), ending='')
