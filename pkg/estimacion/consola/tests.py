import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from estimacion.dsl_red.serializador import serialize_net
from estimacion.estrategias_prueba import sequential_net
from estimacion.tabla_simbolica.formato import parse_equations
from estimacion.tabla_simbolica.operaciones import (
    build_transfer_table,
    emit_equations,
    equations_semantically_equal,
)

from .forms import RunConfigForm

EJEMPLOS = Path(__file__).resolve().parent.parent / 'dsl_red' / 'ejemplos'
SECUENCIAL = str(EJEMPLOS / 'secuencial_3.net')
CONFLICTO = str(EJEMPLOS / 'conflicto_3.net')


class ComandoTestCase(SimpleTestCase):

    def setUp(self):
        self.carpeta = tempfile.TemporaryDirectory()
        self.addCleanup(self.carpeta.cleanup)

    def archivo(self, nombre, contenido):
        ruta = Path(self.carpeta.name) / nombre
        ruta.write_text(contenido, encoding='utf-8')
        return str(ruta)

    def archivo_binario(self, nombre, datos):
        ruta = Path(self.carpeta.name) / nombre
        ruta.write_bytes(datos)
        return str(ruta)

    def llamar(self, *args, **kwargs):
        salida = StringIO()
        errores = StringIO()
        call_command(*args, stdout=salida, stderr=errores, **kwargs)
        return salida.getvalue(), errores.getvalue()


class ValidateCommandTests(ComandoTestCase):

    def test_red_secuencial(self):
        salida, _ = self.llamar('validate', '--net', SECUENCIAL)
        self.assertIn('válida', salida)
        self.assertIn('sin conflictos', salida)

    def test_red_con_conflicto(self):
        salida, _ = self.llamar('validate', '--net', CONFLICTO)
        self.assertIn('conflicto P1: t1, t2', salida)

    def test_conservacion_rota(self):
        ruta = self.archivo('rota.net', "net rota\nplaces: P1, P2\ntransitions: t1\narc: P1 -> t1\n")
        salida = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('validate', '--net', ruta, stdout=salida)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn(f"{ruta}:4: conservation: la columna 0 de Post − Pre suma -1 [t1]", salida.getvalue())

    def test_archivo_inexistente(self):
        with self.assertRaises(CommandError):
            self.llamar('validate', '--net', '/no/existe.net')

    def test_red_que_no_es_utf8(self):
        ruta = self.archivo_binario('rota.net', b'net rota\nplaces: P1, \xff\n')
        for comando in ('validate', 'conflicts'):
            with self.subTest(comando=comando):
                with self.assertRaises(CommandError) as ctx:
                    self.llamar(comando, '--net', ruta)
                self.assertEqual(ctx.exception.returncode, 1)
                self.assertIn(ruta, str(ctx.exception))
                self.assertIn('línea 2', str(ctx.exception))
                self.assertIn('UTF-8', str(ctx.exception))


class ConflictsCommandTests(ComandoTestCase):

    def test_conflictos(self):
        salida, _ = self.llamar('conflicts', '--net', CONFLICTO)
        self.assertEqual(salida.splitlines(), ['P1: t1, t2'])

    def test_sin_conflictos(self):
        salida, _ = self.llamar('conflicts', '--net', SECUENCIAL)
        self.assertEqual(salida.splitlines(), ['sin conflictos'])


class RunCommandTests(ComandoTestCase):

    def test_ejemplo_denso(self):
        salida, _ = self.llamar('run', '--net', SECUENCIAL, '--format', 'dense', stdin=StringIO('0 1 0\n'))
        self.assertEqual(
            salida.splitlines(),
            ['k=0 r=- [0,0,0,0,0,0,1]', 'k=1 r=010 [0,0,0,0,1,0,0]'],
        )

    def test_entrada_vacia(self):
        salida, _ = self.llamar('run', '--net', SECUENCIAL, stdin=StringIO(''))
        self.assertEqual(salida.splitlines(), ['k=0 r=- {P1,P2,P3}:1'])

    def test_masa_inicial_explicita(self):
        salida, _ = self.llamar(
            'run', '--net', CONFLICTO, '--initial', '{P1,P2}:1', stdin=StringIO('0 1 0 0\n'),
        )
        self.assertEqual(salida.splitlines()[-1], 'k=1 r=0100 {P2,P3}:1')

    def test_conflicto_detiene_la_corrida(self):
        salida = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command(
                'run', '--net', CONFLICTO, stdout=salida,
                stdin=StringIO('0 1 0 0\n# comentario\n1 1 0 0\n0 0 1 0\n'),
            )
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('línea 3', str(ctx.exception))
        self.assertIn('P1 con t1, t2', str(ctx.exception))
        self.assertEqual(len(salida.getvalue().splitlines()), 2)

    def test_linea_mal_formada(self):
        with self.assertRaisesMessage(CommandError, 'línea 2'):
            self.llamar('run', '--net', SECUENCIAL, stdin=StringIO('0 1 0\n0 2 0\n'))

    def test_flujo_y_lotes_iguales(self):
        texto = (EJEMPLOS / 'receptividades_secuencial.txt').read_text(encoding='utf-8')
        for formato in ('sparse', 'dense', 'log'):
            with self.subTest(formato=formato):
                en_flujo, _ = self.llamar('run', '--net', SECUENCIAL, '--format', formato, stdin=StringIO(texto))
                por_lotes, _ = self.llamar(
                    'run', '--net', SECUENCIAL, '--format', formato,
                    '--input', str(EJEMPLOS / 'receptividades_secuencial.txt'),
                )
                self.assertEqual(en_flujo, por_lotes)
                self.assertEqual(len(por_lotes.splitlines()), 4)

    def correr_en_ambos_modos(self, red, texto):
        """Salida y error de run con la misma entrada por stdin y desde archivo"""
        ruta = self.archivo('entrada.txt', texto)
        resultados = []
        for extra in ({'stdin': StringIO(texto)}, {'input': ruta}):
            salida = StringIO()
            with self.assertRaises(CommandError) as ctx:
                call_command('run', '--net', red, stdout=salida, **extra)
            self.assertEqual(ctx.exception.returncode, 1)
            resultados.append((salida.getvalue().splitlines(), str(ctx.exception)))
        return resultados

    def test_lotes_con_conflicto(self):
        (en_flujo, _), (por_lotes, error) = self.correr_en_ambos_modos(CONFLICTO, '0 1 0 0\n1 1 0 0\n')
        self.assertEqual(por_lotes, ['k=0 r=- {P1,P2,P3}:1', 'k=1 r=0100 {P2,P3}:1'])
        self.assertEqual(en_flujo, por_lotes)
        self.assertIn('línea 2', error)

    def test_lotes_con_linea_mal_formada(self):
        (en_flujo, _), (por_lotes, error) = self.correr_en_ambos_modos(SECUENCIAL, '0 1 0\n1 0 0\n0 2 0\n0 0 1\n')
        self.assertEqual(len(por_lotes), 3)
        self.assertEqual(en_flujo, por_lotes)
        self.assertIn('línea 3', error)

    def test_entrada_que_no_es_utf8(self):
        ruta = self.archivo_binario('entrada.txt', b'0 1 0\n1 \xff 0\n0 0 1\n')
        salida = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('run', '--net', SECUENCIAL, '--input', ruta, stdout=salida)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('línea 2', str(ctx.exception))
        self.assertIn('UTF-8', str(ctx.exception))
        self.assertEqual(len(salida.getvalue().splitlines()), 2)

    def test_registro_log(self):
        salida, _ = self.llamar('run', '--net', SECUENCIAL, '--format', 'log', stdin=StringIO('0 1 0\n'))
        registros = [json.loads(linea) for linea in salida.splitlines()]
        self.assertEqual(registros[0], {'step': 0, 'r': None, 'mass': {'{P1,P2,P3}': 1.0}})
        self.assertEqual(registros[1], {'step': 1, 'r': [0, 1, 0], 'mass': {'{P1,P3}': 1.0}})

    def test_masa_inicial_invalida(self):
        with self.assertRaisesMessage(CommandError, 'masa inicial inválida'):
            self.llamar('run', '--net', SECUENCIAL, '--initial', '{P1}:0.5', stdin=StringIO(''))


class RunConfigFormTests(ComandoTestCase):

    def test_denso_limitado(self):
        ruta = self.archivo('grande.net', serialize_net(sequential_net(11)))
        form = RunConfigForm(data={'net': ruta, 'format': 'dense'})
        self.assertFalse(form.is_valid())
        self.assertIn('format', form.errors)

    def test_valores_por_defecto(self):
        form = RunConfigForm(data={'net': SECUENCIAL})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['format'], 'sparse')
        self.assertEqual(form.cleaned_data['input'], '-')
        self.assertEqual(len(form.cleaned_data['initial']), 1)


class TableCommandTests(ComandoTestCase):

    def test_red_secuencial(self):
        salida, errores = self.llamar('table', '--net', SECUENCIAL)
        self.assertEqual(len(salida.splitlines()), 57)
        self.assertIn('56 filas', errores)

    def test_red_con_conflicto_a_archivo(self):
        ruta = str(Path(self.carpeta.name) / 'tabla.csv')
        salida, _ = self.llamar('table', '--net', CONFLICTO, '--output', ruta)
        self.assertIn('84 filas', salida)
        self.assertEqual(len(Path(ruta).read_text(encoding='utf-8').splitlines()), 85)

    def test_limite_de_plazas(self):
        with self.assertRaises(CommandError) as ctx:
            self.llamar('table', '--net', SECUENCIAL, '--max-places', '2')
        self.assertIn('56 celdas', str(ctx.exception))

    def test_red_de_17_plazas(self):
        ruta = self.archivo('grande.net', serialize_net(sequential_net(17)))
        with self.assertRaises(CommandError):
            self.llamar('table', '--net', ruta)


class EquationsCommandTests(ComandoTestCase):

    def test_minimizadas(self):
        salida, _ = self.llamar('equations', '--net', SECUENCIAL, '--minimize')
        net = sequential_net(3)
        leidas = parse_equations(salida, net)
        emitidas = {eq.target: eq for eq in emit_equations(build_transfer_table(net))}
        self.assertEqual(len(leidas), 7)
        for eq in leidas:
            self.assertTrue(equations_semantically_equal(eq, emitidas[eq.target]))
        self.assertIn('M{1}(k+1) = !r1*M{1} + r3*M{3} + !r1*r3*M{1,3}', salida)

    def test_crudas_omega(self):
        salida, _ = self.llamar('equations', '--net', SECUENCIAL)
        linea = [l for l in salida.splitlines() if l.startswith('M{1,2,3}(k+1)')][0]
        self.assertEqual(linea, 'M{1,2,3}(k+1) = (!r1*!r2*!r3 + r1*r2*r3)*M{1,2,3}')

    def test_ciclo_de_dos_plazas(self):
        ruta = self.archivo('ciclo.net', serialize_net(sequential_net(2)))
        salida, _ = self.llamar('equations', '--net', ruta)
        objetivos = [l.split('(k+1)')[0] for l in salida.splitlines() if not l.startswith('#')]
        self.assertEqual(objetivos, ['M{1}', 'M{2}', 'M{1,2}'])
