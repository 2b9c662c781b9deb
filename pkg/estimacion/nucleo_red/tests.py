from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from estimacion.estrategias_prueba import (
    admissible_receptivities,
    bits,
    conflict_net,
    net_from_arcs,
    sequential_net,
    valid_nets,
)

from .excepciones import (
    ConflictViolationError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidNetError,
    PInvariantError,
)
from .operaciones import (
    check_receptivity,
    classic_step,
    detect_conflicts,
    enabled_transitions,
    incidence_matrix,
    marking_probabilities,
    raw_incidence_step,
    require_admissible,
    require_valid,
    validate_net,
)
from .tipos import ClassicMarking, ConflictSet, PetriNet, Receptivity, check_p_invariant


class ValidateNetTests(SimpleTestCase):

    def test_red_secuencial_es_valida(self):
        net = PetriNet(
            place_names=('P1', 'P2', 'P3'),
            transition_names=('t1', 't2', 't3'),
            pre=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            post=[[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        )
        self.assertTrue(validate_net(net).ok)
        self.assertEqual(net, sequential_net(3))

    def test_red_con_conflicto_es_valida(self):
        net = PetriNet(
            place_names=('P1', 'P2', 'P3'),
            transition_names=('t1', 't2', 't3', 't4'),
            pre=[[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            post=[[0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        )
        self.assertTrue(validate_net(net).ok)
        self.assertEqual(net, conflict_net())

    def test_conservacion_rota(self):
        net = PetriNet(('P1', 'P2'), ('t1',), pre=[[1], [0]], post=[[0], [0]])
        informe = validate_net(net)
        self.assertFalse(informe.ok)
        conservacion = [v for v in informe.violations if v.code == 'conservation']
        self.assertEqual(len(conservacion), 1)
        self.assertEqual(conservacion[0].columns, (0,))
        self.assertIn("la columna 0 de Post − Pre suma -1", conservacion[0].message)

    def test_reporta_todas_las_violaciones(self):
        net = PetriNet(('P1', 'P1'), ('t1', 't2'), pre=[[1, 2], [0, 0]], post=[[1, 0], [0, 1]])
        codigos = validate_net(net).codes()
        self.assertIn('duplicate_place', codigos)
        self.assertIn('binary', codigos)
        self.assertIn('self_loop', codigos)

    def test_valores_no_enteros_se_informan(self):
        for valor in (1.9, 0.5):
            with self.subTest(valor=valor):
                pre = [[valor, 0, 0], [0, 1, 0], [0, 0, 1]]
                net = PetriNet(('P1', 'P2', 'P3'), ('t1', 't2', 't3'), pre=pre, post=[[0, 0, 1], [1, 0, 0], [0, 1, 0]])
                self.assertEqual(net.pre[0][0], valor)
                informe = validate_net(net)
                self.assertFalse(informe.ok)
                binarias = [v for v in informe.violations if v.code == 'binary']
                self.assertEqual(len(binarias), 1)
                self.assertEqual(binarias[0].rows, (0,))
                self.assertEqual(binarias[0].columns, (0,))

    def test_flotantes_enteros_se_aceptan(self):
        net = PetriNet(
            ('P1', 'P2', 'P3'), ('t1', 't2', 't3'),
            pre=[[1.0, 0, 0], [0, 1, 0], [0, 0, 1]],
            post=[[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        )
        self.assertTrue(validate_net(net).ok)
        self.assertEqual(net, sequential_net(3))

    def test_forma_incorrecta_corta_la_validacion(self):
        net = PetriNet(('P1', 'P2'), ('t1',), pre=[[1, 0]], post=[[0], [1]])
        informe = validate_net(net)
        self.assertEqual(informe.codes(), {'shape'})

    def test_sincronizacion_rechazada(self):
        net = PetriNet(
            ('P1', 'P2', 'P3'), ('t1',),
            pre=[[1], [1], [0]], post=[[0], [0], [1]],
        )
        self.assertIn('pre_arcs', validate_net(net).codes())

    def test_sin_transiciones(self):
        net = PetriNet(('P1',), (), pre=[[]], post=[[]])
        self.assertIn('transitions', validate_net(net).codes())

    def test_require_valid_lanza(self):
        net = PetriNet(('P1', 'P2'), ('t1',), pre=[[1], [0]], post=[[1], [0]])
        with self.assertRaises(InvalidNetError) as ctx:
            require_valid(net)
        self.assertIn('self_loop', ctx.exception.report.codes())

    @given(valid_nets())
    def test_columnas_de_incidencia_suman_cero(self, net):
        self.assertTrue(validate_net(net).ok)
        self.assertTrue((incidence_matrix(net).sum(axis=0) == 0).all())


class ConflictTests(SimpleTestCase):

    def test_conflicto_en_p1(self):
        self.assertEqual(
            detect_conflicts(conflict_net()),
            [ConflictSet(place=0, transitions=frozenset({0, 1}))],
        )

    def test_red_secuencial_sin_conflictos(self):
        self.assertEqual(detect_conflicts(sequential_net(3)), [])

    def test_tres_transiciones_desde_una_plaza(self):
        net = net_from_arcs(4, [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)])
        conflictos = detect_conflicts(net)
        self.assertEqual(conflictos, [ConflictSet(place=0, transitions=frozenset({0, 1, 2}))])
        self.assertEqual(conflictos[0].label(net), "P1: t1, t2, t3")

    def test_receptividad_en_conflicto(self):
        net = conflict_net()
        violaciones = check_receptivity(net, bits('1100'))
        self.assertEqual(len(violaciones), 1)
        self.assertEqual(violaciones[0].conflict.place, 0)
        self.assertEqual(violaciones[0].active, frozenset({0, 1}))
        with self.assertRaisesMessage(ConflictViolationError, "P1 con t1, t2 verdaderas a la vez"):
            require_admissible(net, bits('1100'))

    def test_receptividad_admisible(self):
        self.assertEqual(check_receptivity(conflict_net(), bits('0100')), ())
        self.assertEqual(check_receptivity(sequential_net(3), bits('111')), ())

    def test_largo_incorrecto(self):
        with self.assertRaises(DimensionMismatchError):
            check_receptivity(sequential_net(3), bits('10'))

    @given(valid_nets(), st.data())
    def test_sin_conflictos_acepta_todo(self, net, data):
        if detect_conflicts(net):
            return
        r = Receptivity(tuple(data.draw(st.lists(st.booleans(), min_size=net.m, max_size=net.m))))
        self.assertEqual(check_receptivity(net, r), ())


class ClassicStepTests(SimpleTestCase):

    def test_avanza_por_t1(self):
        net = sequential_net(3)
        self.assertEqual(classic_step(net, ClassicMarking((1, 0, 0)), bits('100')).marks, (0, 1, 0))

    def test_transicion_no_habilitada_no_dispara(self):
        net = sequential_net(3)
        self.assertEqual(classic_step(net, ClassicMarking((1, 0, 0)), bits('010')).marks, (1, 0, 0))

    def test_red_con_conflicto(self):
        net = conflict_net()
        self.assertEqual(classic_step(net, ClassicMarking((1, 0, 0)), bits('0100')).marks, (0, 0, 1))

    def test_conflicto_propagado(self):
        with self.assertRaises(ConflictViolationError):
            classic_step(conflict_net(), ClassicMarking((1, 0, 0)), bits('1100'))

    def test_marcado_de_otro_largo(self):
        with self.assertRaises(DimensionMismatchError):
            classic_step(sequential_net(3), ClassicMarking((1, 0)), bits('100'))

    def test_ecuacion_sin_restriccion_da_marcas_negativas(self):
        net = sequential_net(3)
        self.assertEqual(raw_incidence_step(net, ClassicMarking((1, 0, 0)), bits('010')), (1, -1, 1))
        self.assertEqual(raw_incidence_step(conflict_net(), ClassicMarking((1, 0, 0)), bits('1100')), (-1, 1, 1))

    def test_invariante_p(self):
        self.assertTrue(check_p_invariant((0, 1, 0)))
        self.assertFalse(check_p_invariant((1, 1, 0)))
        self.assertFalse(check_p_invariant((2, -1, 0)))
        with self.assertRaises(PInvariantError):
            ClassicMarking((0, 0, 0))

    def test_probabilidades(self):
        self.assertEqual(
            marking_probabilities(sequential_net(3), ClassicMarking.at(3, 2)),
            {'P1': 0.0, 'P2': 0.0, 'P3': 1.0},
        )

    @settings(max_examples=300, deadline=None)
    @given(valid_nets(), st.data())
    def test_conserva_una_marca(self, net, data):
        plaza = data.draw(st.integers(min_value=0, max_value=net.n - 1))
        r = data.draw(admissible_receptivities(net))
        nuevo = classic_step(net, ClassicMarking.at(net.n, plaza), r)
        self.assertEqual(sum(nuevo.marks), 1)
        self.assertTrue(all(v in (0, 1) for v in nuevo.marks))

    @given(valid_nets(), st.data())
    def test_todo_falso_es_identidad(self, net, data):
        plaza = data.draw(st.integers(min_value=0, max_value=net.n - 1))
        marcado = ClassicMarking.at(net.n, plaza)
        self.assertEqual(classic_step(net, marcado, Receptivity.all_false(net.m)), marcado)


class EnabledTransitionsTests(SimpleTestCase):

    def test_habilitadas(self):
        self.assertEqual(enabled_transitions(sequential_net(3), 0, bits('100')), {0})
        self.assertEqual(enabled_transitions(conflict_net(), 0, bits('1100')), {0, 1})
        self.assertEqual(enabled_transitions(sequential_net(3), 1, bits('101')), frozenset())

    def test_plaza_fuera_de_rango(self):
        with self.assertRaises(IndexOutOfRangeError):
            enabled_transitions(sequential_net(3), 3, bits('100'))


class ReceptivityTests(SimpleTestCase):

    def test_orden_binario(self):
        todas = [r.to_string() for r in Receptivity.every(3)]
        self.assertEqual(todas, ['000', '001', '010', '011', '100', '101', '110', '111'])
