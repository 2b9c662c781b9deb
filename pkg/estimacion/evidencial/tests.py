from itertools import combinations

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from estimacion.estrategias_prueba import (
    admissible_receptivities,
    bits,
    categorical_masses,
    conflict_free_nets,
    conflict_net,
    masses,
    net_from_arcs,
    place_sets,
    ps,
    sequential_net,
    sequential_nets,
    valid_nets,
)
from estimacion.nucleo_red.excepciones import (
    ConflictViolationError,
    DimensionMismatchError,
    IndexOutOfRangeError,
)
from estimacion.nucleo_red.operaciones import check_receptivity, classic_step, detect_conflicts
from estimacion.nucleo_red.tipos import ClassicMarking, Receptivity

from .excepciones import (
    EmptyPlaceSetError,
    MassNormalizationError,
    PreconditionError,
    RunAbortedError,
)
from .operaciones import (
    all_place_sets,
    dense_vector,
    excluded_places,
    ignorance_mass,
    is_categorical,
    mass_from_marking,
    run,
    sequential_step_check,
    step,
    support_places,
    transform,
)
from .tipos import MassVector, PlaceSet


def _paso_por_fuerza_bruta(net, mass, r):
    """Sucesor de cada plaza leído directamente de las matrices, sin pasar por transform"""
    resultado = {}
    for x, valor in mass.items():
        destino = set()
        for plaza in x:
            salidas = [j for j in range(net.m) if net.pre[plaza][j] == 1 and r[j]]
            if salidas:
                destino.add(next(i for i in range(net.n) if net.post[i][salidas[0]] == 1))
            else:
                destino.add(plaza)
        y = PlaceSet(frozenset(destino))
        resultado[y] = resultado.get(y, 0.0) + valor
    return MassVector(resultado)


class PlaceSetTests(SimpleTestCase):

    def test_vacio_rechazado(self):
        with self.assertRaises(EmptyPlaceSetError):
            PlaceSet(frozenset())

    def test_orden_canonico(self):
        etiquetas = [x.index_label() for x in all_place_sets(3)]
        self.assertEqual(
            etiquetas,
            ['M{1}', 'M{2}', 'M{3}', 'M{1,2}', 'M{1,3}', 'M{2,3}', 'M{1,2,3}'],
        )

    def test_indice_negativo(self):
        with self.assertRaises(IndexOutOfRangeError):
            PlaceSet.of(0, -1)

    def test_etiqueta_con_nombres(self):
        net = net_from_arcs(2, [(0, 1), (1, 0)])
        self.assertEqual(ps(1, 2).label(net), '{P1,P2}')


class MassVectorTests(SimpleTestCase):

    def test_no_normalizada(self):
        with self.assertRaises(MassNormalizationError):
            MassVector({ps(1): 0.5, ps(2): 0.4})

    def test_fuera_de_rango(self):
        with self.assertRaises(MassNormalizationError):
            MassVector({ps(1): 1.5, ps(2): -0.5})

    def test_dentro_de_la_tolerancia(self):
        masa = MassVector({ps(1): 0.5, ps(2): 0.5 + 1e-12})
        self.assertEqual(len(masa), 2)

    def test_descarta_ceros(self):
        masa = MassVector({ps(1): 1.0, ps(2): 0.0})
        self.assertEqual(masa.focal_elements, (ps(1),))
        self.assertEqual(masa[ps(2)], 0.0)


class IgnoranceTests(SimpleTestCase):

    def test_red_secuencial(self):
        self.assertEqual(ignorance_mass(sequential_net(3)), MassVector({ps(1, 2, 3): 1.0}))

    def test_red_con_conflicto(self):
        self.assertEqual(ignorance_mass(conflict_net()), MassVector({ps(1, 2, 3): 1.0}))

    def test_una_plaza(self):
        net = net_from_arcs(1, [])
        self.assertEqual(ignorance_mass(net), MassVector({ps(1): 1.0}))

    def test_vector_denso_inicial(self):
        self.assertEqual(dense_vector(ignorance_mass(sequential_net(3)), 3), [0, 0, 0, 0, 0, 0, 1])

    def test_desde_marcado(self):
        self.assertEqual(mass_from_marking(ClassicMarking.at(3, 1)), MassVector({ps(2): 1.0}))


class TransformTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)

    def test_tabla_de_p1(self):
        esperado = {
            '000': ps(1), '001': ps(1), '010': ps(1), '011': ps(1),
            '100': ps(2), '101': ps(2), '110': ps(2), '111': ps(2),
        }
        for combinacion, y in esperado.items():
            with self.subTest(r=combinacion):
                self.assertEqual(transform(self.net, ps(1), bits(combinacion)), y)

    def test_tabla_de_p1_p3(self):
        esperado = {
            '000': ps(1, 3), '001': ps(1), '010': ps(1, 3), '011': ps(1),
            '100': ps(2, 3), '101': ps(1, 2), '110': ps(2, 3), '111': ps(1, 2),
        }
        for combinacion, y in esperado.items():
            with self.subTest(r=combinacion):
                self.assertEqual(transform(self.net, ps(1, 3), bits(combinacion)), y)

    def test_ignorancia_con_r2(self):
        self.assertEqual(transform(self.net, ps(1, 2, 3), bits('010')), ps(1, 3))

    def test_conflicto_un_solo_disparo(self):
        self.assertEqual(transform(conflict_net(), ps(1, 2), bits('0100')), ps(2, 3))

    def test_conflicto_rechazado(self):
        with self.assertRaises(ConflictViolationError):
            transform(conflict_net(), ps(1), bits('1100'))

    def test_largo_incorrecto(self):
        with self.assertRaises(DimensionMismatchError):
            transform(self.net, ps(1), bits('1000'))

    @given(valid_nets(max_places=6), st.data())
    def test_todo_falso_es_identidad(self, net, data):
        x = data.draw(place_sets(net.n))
        self.assertEqual(transform(net, x, Receptivity.all_false(net.m)), x)

    def test_distributiva_respecto_de_la_union(self):
        redes = [
            sequential_net(2), sequential_net(3), sequential_net(4), conflict_net(),
            net_from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0), (1, 0)]),
        ]
        for net in redes:
            conjuntos = all_place_sets(net.n)
            for r in Receptivity.every(net.m):
                if check_receptivity(net, r):
                    continue
                for x, x2 in combinations(conjuntos, 2):
                    self.assertEqual(
                        transform(net, x | x2, r),
                        transform(net, x, r) | transform(net, x2, r),
                    )


class StepTests(SimpleTestCase):

    def test_ignorancia_con_r2(self):
        net = sequential_net(3)
        resultado = step(net, ignorance_mass(net), bits('010'))
        self.assertEqual(resultado, MassVector({ps(1, 3): 1.0}))
        self.assertEqual(dense_vector(resultado, 3), [0, 0, 0, 0, 1, 0, 0])
        self.assertEqual(excluded_places(net, resultado), (1,))

    def test_masas_fraccionarias(self):
        net = sequential_net(3)
        resultado = step(net, {ps(1): 0.5, ps(3): 0.5}, bits('100'))
        self.assertEqual(resultado, MassVector({ps(2): 0.5, ps(3): 0.5}))

    def test_agrega_masas_con_el_mismo_destino(self):
        net = sequential_net(3)
        resultado = step(net, {ps(1): 0.25, ps(1, 2): 0.75}, bits('100'))
        self.assertEqual(resultado, MassVector({ps(2): 1.0}))

    def test_conflicto_de_ejemplo(self):
        net = conflict_net()
        self.assertEqual(step(net, {ps(1, 2): 1.0}, bits('0100')), MassVector({ps(2, 3): 1.0}))
        with self.assertRaisesMessage(ConflictViolationError, 'P1 con t1, t2'):
            step(net, {ps(1, 2): 1.0}, bits('1100'))

    def test_masa_no_normalizada(self):
        with self.assertRaises(MassNormalizationError):
            step(sequential_net(3), {ps(1): 0.3}, bits('100'))

    @settings(max_examples=1000, deadline=None)
    @given(valid_nets(), st.data())
    def test_conserva_la_masa(self, net, data):
        masa = data.draw(masses(net.n))
        r = data.draw(admissible_receptivities(net))
        resultado = step(net, masa, r)
        self.assertAlmostEqual(resultado.total, 1.0, delta=1e-9)
        self.assertTrue(set(resultado.focal_elements) <= {transform(net, x, r) for x in masa.focal_elements})

    @given(valid_nets(), st.data())
    def test_categorica_sigue_categorica(self, net, data):
        masa = data.draw(categorical_masses(net.n))
        r = data.draw(admissible_receptivities(net))
        self.assertTrue(is_categorical(step(net, masa, r)))

    @given(valid_nets(), st.data())
    def test_todo_falso_es_identidad(self, net, data):
        masa = data.draw(masses(net.n))
        self.assertEqual(step(net, masa, Receptivity.all_false(net.m)), masa)

    @given(valid_nets(max_places=4, max_transitions=6), st.data())
    def test_coincide_con_fuerza_bruta(self, net, data):
        masa = data.draw(masses(net.n))
        r = data.draw(admissible_receptivities(net))
        self.assertTrue(step(net, masa, r).almost_equal(_paso_por_fuerza_bruta(net, masa, r)))

    @settings(max_examples=20)
    @given(st.one_of(sequential_nets(max_places=8), conflict_free_nets()))
    def test_equivalencia_con_la_red_clasica(self, net):
        self.assertEqual(detect_conflicts(net), [])
        for plaza in range(net.n):
            for r in Receptivity.every(net.m):
                clasico = classic_step(net, ClassicMarking.at(net.n, plaza), r)
                evidencial = step(net, mass_from_marking(ClassicMarking.at(net.n, plaza)), r)
                self.assertEqual(evidencial.focal_elements, (PlaceSet.of(clasico.place),))


class RunTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)

    def test_un_paso(self):
        trayectoria = run(self.net, ignorance_mass(self.net), [bits('010')])
        self.assertEqual(trayectoria.final, MassVector({ps(1, 3): 1.0}))
        self.assertEqual(len(trayectoria), 1)

    def test_sin_entradas(self):
        trayectoria = run(self.net, ignorance_mass(self.net), [])
        self.assertEqual(trayectoria.masses, [ignorance_mass(self.net)])

    def test_dos_pasos(self):
        trayectoria = run(self.net, ignorance_mass(self.net), [bits('010'), bits('100')])
        self.assertEqual(trayectoria.final, MassVector({ps(2, 3): 1.0}))
        self.assertEqual(support_places(trayectoria.final), ps(2, 3))

    def test_se_detiene_en_la_primera_falla(self):
        net = conflict_net()
        with self.assertRaises(RunAbortedError) as ctx:
            run(net, ignorance_mass(net), [bits('0100'), bits('1100'), bits('0010')])
        self.assertEqual(ctx.exception.index, 1)
        self.assertIsInstance(ctx.exception.cause, ConflictViolationError)
        parcial = ctx.exception.trajectory
        self.assertEqual(len(parcial), 1)
        self.assertEqual(parcial.final, MassVector({ps(2, 3): 1.0}))
        self.assertIn('entrada 2', str(ctx.exception))


class SequentialStepCheckTests(SimpleTestCase):

    def setUp(self):
        self.net = sequential_net(3)

    def test_ejemplos(self):
        self.assertEqual(sequential_step_check(self.net, {ps(1): 1.0}, bits('100')), MassVector({ps(2): 1.0}))
        self.assertEqual(sequential_step_check(self.net, {ps(1): 1.0}, bits('000')), MassVector({ps(1): 1.0}))
        self.assertEqual(sequential_step_check(self.net, {ps(1, 2): 1.0}, bits('100')), MassVector({ps(2): 1.0}))

    def test_coincide_con_step_en_las_siete_hipotesis(self):
        for x in all_place_sets(3):
            for r in Receptivity.every(3):
                with self.subTest(x=x, r=r.to_string()):
                    self.assertEqual(
                        sequential_step_check(self.net, {x: 1.0}, r),
                        step(self.net, {x: 1.0}, r),
                    )

    @given(sequential_nets(max_places=6), st.data())
    def test_coincide_con_step_en_singletons(self, net, data):
        masa = MassVector({PlaceSet.of(i): 1.0 / net.n for i in range(net.n)})
        r = data.draw(admissible_receptivities(net))
        self.assertTrue(sequential_step_check(net, masa, r).almost_equal(step(net, masa, r)))

    def test_red_que_no_es_ciclo(self):
        with self.assertRaises(PreconditionError):
            sequential_step_check(conflict_net(), {ps(1): 1.0}, bits('0000'))

    def test_conjunto_no_consecutivo(self):
        with self.assertRaises(PreconditionError):
            sequential_step_check(sequential_net(4), {ps(1, 3): 1.0}, bits('0000'))
