from pathlib import Path

from django.test import SimpleTestCase
from hypothesis import given, settings

from estimacion.estrategias_prueba import bits, conflict_net, ps, sequential_net, valid_nets
from estimacion.evidencial.excepciones import MassNormalizationError
from estimacion.evidencial.operaciones import ignorance_mass
from estimacion.evidencial.tipos import MassVector
from estimacion.nucleo_red.tipos import PetriNet

from .excepciones import (
    DenseOutputError,
    DslSyntaxError,
    DuplicateArcError,
    StructuralError,
    UndeclaredIdentifierError,
)
from .parser import (
    net_from_document,
    parse_mass_record,
    parse_net,
    parse_net_document,
    parse_receptivity_line,
    parse_receptivity_stream,
)
from .serializador import serialize_mass, serialize_net, serialize_receptivity

EJEMPLOS = Path(__file__).resolve().parent / 'ejemplos'


def _ejemplo(nombre):
    return (EJEMPLOS / nombre).read_text(encoding='utf-8')


class ParseNetTests(SimpleTestCase):

    def test_red_secuencial(self):
        net = parse_net(_ejemplo('secuencial_3.net'))
        self.assertEqual(net.name, 'secuencial_3')
        self.assertEqual(net.pre, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        self.assertEqual(net.post, ((0, 0, 1), (1, 0, 0), (0, 1, 0)))

    def test_red_con_conflicto(self):
        net = parse_net(_ejemplo('conflicto_3.net'))
        self.assertEqual(net.pre, ((1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
        self.assertEqual(net.post, ((0, 0, 1, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
        self.assertEqual(net, conflict_net())

    def test_plaza_no_declarada(self):
        texto = "net r\nplaces: P1, P2\ntransitions: t1\narc: P9 -> t1\narc: t1 -> P2\n"
        with self.assertRaises(UndeclaredIdentifierError) as ctx:
            parse_net(texto)
        self.assertEqual(ctx.exception.line, 4)
        self.assertIn('P9', str(ctx.exception))

    def test_arco_repetido(self):
        texto = "net r\nplaces: P1, P2\ntransitions: t1\narc: P1 -> t1\narc: P1 -> t1\n"
        with self.assertRaises(DuplicateArcError) as ctx:
            parse_net(texto)
        self.assertEqual(ctx.exception.line, 5)

    def test_arco_entre_dos_plazas(self):
        texto = "net r\nplaces: P1, P2\ntransitions: t1\narc: P1 -> P2\n"
        with self.assertRaises(DslSyntaxError):
            parse_net(texto)

    def test_falta_la_cabecera(self):
        with self.assertRaises(DslSyntaxError) as ctx:
            parse_net("places: P1\n")
        self.assertEqual(ctx.exception.line, 1)

    def test_version_desconocida(self):
        with self.assertRaisesMessage(DslSyntaxError, 'formato no soportado'):
            parse_net("# format: evinet v9\nnet r\n")

    def test_error_estructural_con_linea(self):
        texto = (
            "net r\n"
            "places: P1, P2\n"
            "transitions: t1, t2\n"
            "arc: P1 -> t1\n"
            "arc: t1 -> P2\n"
            "arc: P2 -> t2\n"
        )
        with self.assertRaises(StructuralError) as ctx:
            parse_net(texto)
        self.assertIn('conservation', ctx.exception.report.codes())
        self.assertEqual(ctx.exception.line, 6)

    def test_documento_sin_validar(self):
        texto = "net r\nplaces: P1, P2\ntransitions: t1\narc: P1 -> t1\n"
        doc = parse_net_document(texto)
        self.assertEqual(doc.arcs[0].line, 4)
        net = net_from_document(doc)
        self.assertEqual(net.post, ((0,), (0,)))


class SerializeNetTests(SimpleTestCase):

    def test_forma_canonica(self):
        texto = serialize_net(sequential_net(3))
        lineas = texto.splitlines()
        self.assertEqual(lineas[0], '# format: evinet v1')
        self.assertEqual(lineas[1], 'net secuencial_3')
        self.assertEqual(len(lineas[2:]), 8)
        self.assertEqual(lineas[4:6], ['arc: P1 -> t1', 'arc: t1 -> P2'])

    def test_ida_y_vuelta_de_los_ejemplos(self):
        for nombre in ('secuencial_3.net', 'conflicto_3.net'):
            net = parse_net(_ejemplo(nombre))
            texto = serialize_net(net)
            self.assertEqual(parse_net(texto), net)
            self.assertEqual(serialize_net(parse_net(texto)), texto)

    def test_dos_arcos_desde_p1(self):
        texto = serialize_net(conflict_net())
        self.assertEqual(texto.count('arc: P1 ->'), 2)

    @settings(max_examples=100)
    @given(valid_nets())
    def test_ida_y_vuelta(self, net):
        self.assertEqual(parse_net(serialize_net(net)), net)


class ReceptivityStreamTests(SimpleTestCase):

    def test_linea(self):
        self.assertEqual(parse_receptivity_line('0 1 0', 3), bits('010'))
        self.assertEqual(parse_receptivity_line('0,1,0', 3), bits('010'))
        self.assertEqual(parse_receptivity_line('010', 3), bits('010'))
        self.assertIsNone(parse_receptivity_line('  # comentario', 3))

    def test_flujo(self):
        lineas = _ejemplo('receptividades_secuencial.txt').splitlines()
        self.assertEqual(parse_receptivity_stream(lineas, 3), [bits('010'), bits('100'), bits('001')])
        self.assertEqual(parse_receptivity_stream([], 3), [])

    def test_valor_no_binario(self):
        with self.assertRaises(DslSyntaxError) as ctx:
            parse_receptivity_stream(['0 2 0'], 3)
        self.assertEqual(ctx.exception.line, 1)

    def test_aridad(self):
        with self.assertRaises(DslSyntaxError) as ctx:
            parse_receptivity_stream(['# cabecera', '0 1 0', '1 1'], 3)
        self.assertEqual(ctx.exception.line, 3)

    def test_serializar(self):
        self.assertEqual(serialize_receptivity(bits('010')), '0 1 0')


class MassRecordTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)

    def test_forma_densa(self):
        self.assertEqual(serialize_mass(MassVector({ps(1, 3): 1.0}), self.net, dense=True), '[0,0,0,0,1,0,0]')
        self.assertEqual(serialize_mass(ignorance_mass(self.net), self.net, dense=True), '[0,0,0,0,0,0,1]')

    def test_forma_dispersa(self):
        masa = MassVector({ps(1): 0.5, ps(2): 0.5})
        texto = serialize_mass(masa, self.net)
        self.assertEqual(texto, '{P1}:0.5 {P2}:0.5')
        self.assertEqual(parse_mass_record(texto, self.net), masa)

    def test_lectura(self):
        self.assertEqual(
            parse_mass_record('{P1,P3}:1', self.net),
            MassVector({ps(1, 3): 1.0}),
        )

    def test_plaza_desconocida(self):
        with self.assertRaises(UndeclaredIdentifierError):
            parse_mass_record('{P1,P9}:1', self.net)

    def test_no_normalizada(self):
        with self.assertRaises(MassNormalizationError):
            parse_mass_record('{P1}:0.5', self.net)

    def test_texto_sobrante(self):
        with self.assertRaises(DslSyntaxError):
            parse_mass_record('{P1}:1 basura', self.net)

    def test_densa_limitada(self):
        grande = sequential_net(11)
        with self.assertRaises(DenseOutputError):
            serialize_mass(ignorance_mass(grande), grande, dense=True)
