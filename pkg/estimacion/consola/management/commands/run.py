import sys
from io import StringIO

from django.core.management.base import CommandError

from estimacion.consola.base import EstimacionCommand, logger
from estimacion.consola.forms import FORMATOS, RunConfigForm
from estimacion.consola.salida import render_record
from estimacion.dsl_red.excepciones import DslError, InvalidEncodingError
from estimacion.dsl_red.parser import iter_receptivities, parse_receptivity_line, read_text
from estimacion.evidencial.excepciones import RunAbortedError
from estimacion.evidencial.operaciones import run, step
from estimacion.nucleo_red.excepciones import NetError


class Command(EstimacionCommand):
    help = (
        'Estima el marcado generalizado a partir de una secuencia de receptividades. '
        'Con --input - (por defecto) lee la entrada estándar y escribe cada registro apenas llega la línea.'
    )
    form_class = RunConfigForm
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        self.add_net_argument(parser)
        parser.add_argument('--initial', default='ignorance', help="'ignorance' o un registro como {P1,P3}:1")
        parser.add_argument('--input', default='-', help='Archivo de receptividades o - para la entrada estándar')
        parser.add_argument('--format', default='sparse', choices=[clave for clave, _ in FORMATOS])

    def ejecutar(self, **options):
        config = self.cargar_formulario({
            'net': options['net'],
            'initial': options['initial'],
            'input': options['input'],
            'format': options['format'],
        })
        net = config['net']
        logger.info("Estimación sobre %s con entrada %s", net.name, config['input'])
        if config['input'] == '-':
            self.en_flujo(net, config, options.get('stdin') or sys.stdin)
        else:
            self.por_lotes(net, config)

    def escribir(self, net, k, r, masa, formato):
        self.stdout.write(render_record(net, k, r, masa, formato))
        self.stdout.flush()

    def escribir_trayectoria(self, net, trayectoria, formato):
        self.escribir(net, 0, None, trayectoria.initial, formato)
        for k, paso in enumerate(trayectoria, start=1):
            self.escribir(net, k, paso.receptivity, paso.mass, formato)

    def en_flujo(self, net, config, entrada):
        """Un registro por línea leída; el siguiente paso espera a la próxima línea"""
        formato = config['format']
        masa = config['initial']
        self.escribir(net, 0, None, masa, formato)
        k = 0
        numero = 0
        lineas = iter(entrada)
        while True:
            try:
                linea = next(lineas)
            except StopIteration:
                break
            except UnicodeDecodeError as exc:
                raise CommandError(
                    f"la entrada no es UTF-8 válido después de la línea {numero}", returncode=1
                ) from exc
            numero += 1
            # El error de sintaxis ya trae la línea
            r = parse_receptivity_line(linea, net.m, numero)
            if r is None:
                continue
            try:
                masa = step(net, masa, r)
            except NetError as exc:
                raise self.fallar(exc, prefijo=f"línea {numero}: ") from exc
            k += 1
            self.escribir(net, k, r, masa, formato)

    def por_lotes(self, net, config):
        """Lee todo el archivo, corre la estimación completa y después escribe.

        Si una línea falla se escriben los registros anteriores, igual que en
        el modo de flujo, y después se informa el error.
        """
        error = None
        try:
            texto = read_text(config['input'])
        except InvalidEncodingError as exc:
            texto, error = exc.valid_text, exc

        entradas = []
        try:
            for numero, r in iter_receptivities(StringIO(texto, newline=None), net.m):
                entradas.append((numero, r))
        except DslError as exc:
            error = exc

        formato = config['format']
        try:
            trayectoria = run(net, config['initial'], [r for _, r in entradas])
        except RunAbortedError as exc:
            self.escribir_trayectoria(net, exc.trajectory, formato)
            numero = entradas[exc.index][0]
            raise self.fallar(exc.cause, prefijo=f"línea {numero}: ") from exc

        self.escribir_trayectoria(net, trayectoria, formato)
        if error is not None:
            raise self.fallar(error, prefijo=f"{config['input']}: ") from error
