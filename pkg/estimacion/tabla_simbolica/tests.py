import tempfile
from io import StringIO
from pathlib import Path

import pandas as pd
from django.test import SimpleTestCase, override_settings
from hypothesis import given, strategies as st

from estimacion.estrategias_prueba import (
    admissible_receptivities,
    bits,
    conflict_net,
    masses,
    ps,
    sequential_net,
    valid_nets,
)
from estimacion.evidencial.operaciones import all_place_sets, ignorance_mass, step, transform
from estimacion.evidencial.tipos import MassVector
from estimacion.nucleo_red.excepciones import DimensionMismatchError
from estimacion.nucleo_red.tipos import Receptivity

from .excepciones import (
    EquationSyntaxError,
    RejectedCombinationError,
    SizeCapExceededError,
    TargetMismatchError,
)
from .exportacion import export_table, table_frame
from .formato import parse_equation, parse_equations, render_equation, render_equations
from .minimizacion import minimize_minterms
from .operaciones import (
    apply_equations,
    build_transfer_table,
    emit_equations,
    equations_semantically_equal,
    invert_table,
    table_cell_count,
    table_step,
)

# Sistema de siete ecuaciones de la red secuencial de tres plazas, en forma factorizada
SISTEMA_SECUENCIAL = """
M{1}(k+1) = !r1 M{1}(k) + r3 M{3}(k) + !r1 r3 M{1,3}(k)
M{2}(k+1) = !r2 M{2}(k) + r1 M{1}(k) + !r2 r1 M{1,2}(k)
M{3}(k+1) = !r3 M{3}(k) + r2 M{2}(k) + !r3 r2 M{2,3}(k)
M{1,2}(k+1) = !r1 !r2 M{1,2}(k) + r1 r3 M{1,3}(k) + !r2 r3 (M{2,3}(k) + M{1,2,3}(k))
M{1,3}(k+1) = !r1 !r3 M{1,3}(k) + r2 r3 M{2,3}(k) + !r1 r2 (M{1,2}(k) + M{1,2,3}(k))
M{2,3}(k+1) = !r2 !r3 M{2,3}(k) + r1 r2 M{1,2}(k) + !r3 r1 (M{1,3}(k) + M{1,2,3}(k))
M{1,2,3}(k+1) = (!r1*!r2*!r3 + r1*r2*r3)*M{1,2,3}(k)
"""


def _por_objetivo(ecuaciones):
    return {eq.target: eq for eq in ecuaciones}


class TransferTableTests(SimpleTestCase):

    def test_cantidad_de_celdas(self):
        self.assertEqual(len(build_transfer_table(sequential_net(3))), 56)
        self.assertEqual(table_cell_count(3, 3), 56)

    def test_red_con_conflicto_solo_combinaciones_admisibles(self):
        tabla = build_transfer_table(conflict_net())
        self.assertEqual(len(tabla.admissible), 12)
        self.assertEqual(len(tabla.rejected), 4)
        self.assertEqual(tabla.defined_cells, 84)
        self.assertTrue(tabla.is_rejected(bits('1100')))

    def test_ciclo_de_dos_plazas(self):
        self.assertEqual(len(build_transfer_table(sequential_net(2))), 12)

    def test_celda_de_ejemplo(self):
        tabla = build_transfer_table(sequential_net(3))
        self.assertEqual(tabla[(ps(1, 3), bits('101'))], ps(1, 2))

    def test_celdas_iguales_a_transform(self):
        for net in (sequential_net(3), sequential_net(4), conflict_net()):
            tabla = build_transfer_table(net)
            for (x, r), y in tabla.entries.items():
                self.assertEqual(y, transform(net, x, r))

    def test_limite_explicito(self):
        with self.assertRaises(SizeCapExceededError) as ctx:
            build_transfer_table(sequential_net(4), max_places=3)
        self.assertEqual(ctx.exception.required, 15 * 16)

    @override_settings(EVINET_MAX_PLACES=2)
    def test_limite_desde_settings(self):
        with self.assertRaisesMessage(SizeCapExceededError, '56 celdas'):
            build_transfer_table(sequential_net(3))


class InvertTableTests(SimpleTestCase):

    def setUp(self):
        self.tabla = build_transfer_table(sequential_net(3))

    def test_inversa_de_p1(self):
        esperado = [
            (ps(1), bits('000')), (ps(1), bits('001')), (ps(1), bits('010')), (ps(1), bits('011')),
            (ps(3), bits('001')), (ps(3), bits('011')), (ps(3), bits('101')), (ps(3), bits('111')),
            (ps(1, 3), bits('001')), (ps(1, 3), bits('011')),
        ]
        self.assertEqual(invert_table(self.tabla, ps(1)), esperado)

    def test_inversa_de_omega(self):
        self.assertEqual(
            invert_table(self.tabla, ps(1, 2, 3)),
            [(ps(1, 2, 3), bits('000')), (ps(1, 2, 3), bits('111'))],
        )

    def test_destino_inalcanzable(self):
        tabla = build_transfer_table(conflict_net())
        self.assertEqual(invert_table(tabla, ps(7)), [])

    def test_particion_de_las_celdas(self):
        contadas = sum(len(invert_table(self.tabla, y)) for y in all_place_sets(3))
        self.assertEqual(contadas, len(self.tabla))


class EmitEquationsTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)
        self.tabla = build_transfer_table(self.net)

    def test_p1_minimizada(self):
        eq = _por_objetivo(emit_equations(self.tabla, minimize=True))[ps(1)]
        self.assertEqual(eq.cubes_for(ps(1)), ((False, None, None),))
        self.assertEqual(eq.cubes_for(ps(3)), ((None, None, True),))
        self.assertEqual(eq.cubes_for(ps(1, 3)), ((False, None, True),))
        self.assertEqual(render_equation(eq), "M{1}(k+1) = !r1*M{1} + r3*M{3} + !r1*r3*M{1,3}")

    def test_omega_minimizada(self):
        eq = _por_objetivo(emit_equations(self.tabla, minimize=True))[ps(1, 2, 3)]
        self.assertEqual(set(eq.cubes_for(ps(1, 2, 3))), {(False, False, False), (True, True, True)})
        self.assertEqual(render_equation(eq), "M{1,2,3}(k+1) = (!r1*!r2*!r3 + r1*r2*r3)*M{1,2,3}")

    def test_p1_cruda_con_cuatro_minterms(self):
        eq = _por_objetivo(emit_equations(self.tabla))[ps(1)]
        self.assertEqual(
            set(eq.cubes_for(ps(1))),
            {(False, False, False), (False, True, False), (False, False, True), (False, True, True)},
        )
        self.assertFalse(eq.minimized)

    def test_una_ecuacion_por_destino_alcanzable(self):
        self.assertEqual(len(emit_equations(self.tabla)), 7)

    def test_cruda_y_minimizada_equivalentes(self):
        for net in (self.net, conflict_net(), sequential_net(4)):
            tabla = build_transfer_table(net)
            crudas = _por_objetivo(emit_equations(tabla))
            minimizadas = _por_objetivo(emit_equations(tabla, minimize=True))
            self.assertEqual(set(crudas), set(minimizadas))
            for objetivo, eq in crudas.items():
                self.assertTrue(equations_semantically_equal(eq, minimizadas[objetivo]))

    def test_sistema_factorizado_de_la_red_secuencial(self):
        emitidas = _por_objetivo(emit_equations(self.tabla, minimize=True))
        escritas = parse_equations(SISTEMA_SECUENCIAL, self.net)
        self.assertEqual(len(escritas), 7)
        for eq in escritas:
            with self.subTest(objetivo=eq.target.index_label()):
                self.assertTrue(equations_semantically_equal(eq, emitidas[eq.target]))

    def test_objetivos_distintos(self):
        ecuaciones = _por_objetivo(emit_equations(self.tabla))
        self.assertFalse(equations_semantically_equal(ecuaciones[ps(1)], ecuaciones[ps(2)]))
        with self.assertRaises(TargetMismatchError):
            equations_semantically_equal(ecuaciones[ps(1)], ecuaciones[ps(2)], strict=True)

    def test_ecuacion_distinta(self):
        emitida = _por_objetivo(emit_equations(self.tabla))[ps(1)]
        mal = parse_equation("M{1}(k+1) = !r1*M{1} + r3*M{3}", self.net)
        self.assertFalse(equations_semantically_equal(emitida, mal))

    def test_minimizacion_tautologia(self):
        self.assertEqual(minimize_minterms(Receptivity.every(2), 2), [(None, None)])
        self.assertEqual(minimize_minterms([], 2), [])


class TableStepTests(SimpleTestCase):

    def test_ignorancia_con_r2(self):
        net = sequential_net(3)
        tabla = build_transfer_table(net)
        self.assertEqual(table_step(tabla, ignorance_mass(net), bits('010')), MassVector({ps(1, 3): 1.0}))

    def test_todo_falso_es_identidad(self):
        tabla = build_transfer_table(conflict_net())
        masa = MassVector({ps(1): 0.25, ps(2, 3): 0.75})
        self.assertEqual(table_step(tabla, masa, bits('0000')), masa)

    def test_combinacion_rechazada(self):
        tabla = build_transfer_table(conflict_net())
        with self.assertRaises(RejectedCombinationError):
            table_step(tabla, {ps(1): 1.0}, bits('1100'))

    def test_largo_incorrecto(self):
        tabla = build_transfer_table(sequential_net(3))
        with self.assertRaises(DimensionMismatchError):
            table_step(tabla, {ps(1): 1.0}, bits('10'))

    @given(valid_nets(min_places=4, max_places=4, max_transitions=6), st.data())
    def test_coincide_con_step(self, net, data):
        tabla = build_transfer_table(net)
        masa = data.draw(masses(net.n))
        r = data.draw(admissible_receptivities(net))
        self.assertTrue(table_step(tabla, masa, r).almost_equal(step(net, masa, r)))

    def test_ecuaciones_reproducen_la_tabla(self):
        net = sequential_net(3)
        tabla = build_transfer_table(net)
        for ecuaciones in (emit_equations(tabla), emit_equations(tabla, minimize=True)):
            for x in all_place_sets(3):
                for r in Receptivity.every(3):
                    masa = MassVector.categorical(x)
                    self.assertEqual(apply_equations(ecuaciones, masa, r), table_step(tabla, masa, r))

    def test_ecuaciones_con_combinacion_rechazada(self):
        tabla = build_transfer_table(conflict_net())
        with self.assertRaises(RejectedCombinationError):
            apply_equations(emit_equations(tabla), {ps(1): 1.0}, bits('1100'))


class EquationTextTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)

    def test_cabecera(self):
        texto = render_equations(emit_equations(build_transfer_table(self.net), minimize=True), self.net)
        lineas = texto.splitlines()
        self.assertEqual(lineas[0], "# format: evinet v1")
        self.assertEqual(len([l for l in lineas if not l.startswith('#')]), 7)

    def test_relee_lo_emitido(self):
        for ecuacion in emit_equations(build_transfer_table(self.net)):
            leida = parse_equation(render_equation(ecuacion), self.net)
            self.assertTrue(equations_semantically_equal(ecuacion, leida))

    def test_forma_factorizada(self):
        eq = parse_equation("M{2,3}(k+1) = !r3*r1*(M{1,3} + M{1,2,3})", self.net)
        self.assertEqual(eq.cubes_for(ps(1, 3)), ((True, None, False),))
        self.assertEqual(eq.cubes_for(ps(1, 2, 3)), ((True, None, False),))

    def test_contradiccion_se_descarta(self):
        eq = parse_equation("M{1}(k+1) = r1*!r1*M{1} + r2*M{2}", self.net)
        self.assertEqual(eq.sources, (ps(2),))

    def test_errores(self):
        casos = [
            "M{1}(k+1) = r4*M{1}",
            "M{1}(k+1) = r1*M{4}",
            "M{1}(k+1) = r1",
            "M{1}(k+1) = M{1}*M{2}",
            "M{1}(k+1) = (r1*M{1}",
            "M{1}(k+1) r1*M{1}",
            "M{1}(k+1) = r1 & M{1}",
        ]
        for texto in casos:
            with self.subTest(texto=texto):
                with self.assertRaises(EquationSyntaxError):
                    parse_equation(texto, self.net)


class ExportTests(SimpleTestCase):

    def setUp(self):
        self.tabla = build_transfer_table(sequential_net(3))

    def test_frame(self):
        df = table_frame(self.tabla)
        self.assertEqual(list(df.columns), ['subset', 'receptivity-bits', 'result-subset'])
        self.assertEqual(len(df), 56)
        fila = df[(df['subset'] == '{P1,P3}') & (df['receptivity-bits'] == '101')].iloc[0]
        self.assertEqual(fila['result-subset'], '{P1,P2}')

    def test_csv_a_stream(self):
        salida = StringIO()
        export_table(self.tabla, '-', stream=salida)
        lineas = salida.getvalue().splitlines()
        self.assertEqual(lineas[0], 'subset,receptivity-bits,result-subset')
        self.assertEqual(lineas[1], '{P1},000,{P1}')

    def test_excel(self):
        with tempfile.TemporaryDirectory() as carpeta:
            ruta = Path(carpeta) / 'tabla.xlsx'
            export_table(self.tabla, ruta)
            df = pd.read_excel(ruta, sheet_name='Tabla', dtype=str, engine='openpyxl')
        self.assertEqual(len(df), 56)
        self.assertEqual(df.iloc[0]['receptivity-bits'], '000')
