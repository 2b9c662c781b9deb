"""
Tabla de transferencia, inversión y ecuaciones booleanas de masa.

El paso 1 de la evolución (transformación de cada X por cada combinación)
se precalcula una sola vez; el paso 2 queda como búsqueda en la tabla o como
evaluación de las ecuaciones emitidas.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from math import fsum
from typing import Iterable, Mapping, Optional

from django.conf import settings

from estimacion.evidencial.operaciones import all_place_sets, transform
from estimacion.evidencial.tipos import MassVector, PlaceSet
from estimacion.nucleo_red.excepciones import DimensionMismatchError, IndexOutOfRangeError
from estimacion.nucleo_red.operaciones import check_receptivity, require_valid
from estimacion.nucleo_red.tipos import PetriNet, Receptivity

from .excepciones import RejectedCombinationError, SizeCapExceededError, TargetMismatchError
from .minimizacion import minimize_minterms, minterm_cube
from .tipos import EquationTerm, MassEquation, TransferTable

logger = logging.getLogger(__name__)


def table_cell_count(n: int, m: int) -> int:
    """(2^n − 1) · 2^m transformaciones"""
    return (2 ** n - 1) * 2 ** m


def build_transfer_table(
    net: PetriNet,
    max_places: Optional[int] = None,
    max_transitions: Optional[int] = None,
) -> TransferTable:
    """Calcula transform(X, r) para todo X no vacío y toda r admisible.

    Los límites por defecto salen de settings.EVINET_MAX_PLACES y
    settings.EVINET_MAX_TRANSITIONS.
    """
    require_valid(net)
    if max_places is None:
        max_places = settings.EVINET_MAX_PLACES
    if max_transitions is None:
        max_transitions = settings.EVINET_MAX_TRANSITIONS
    if net.n > max_places or net.m > max_transitions:
        raise SizeCapExceededError(
            table_cell_count(net.n, net.m), net.n, net.m, max_places, max_transitions
        )

    conjuntos = all_place_sets(net.n)
    entradas = {}
    admisibles = []
    rechazadas = []
    for r in Receptivity.every(net.m):
        if check_receptivity(net, r):
            rechazadas.append(r)
            continue
        admisibles.append(r)
        for x in conjuntos:
            entradas[(x, r)] = transform(net, x, r)

    logger.info(
        "Tabla de %s: %d celdas, %d combinaciones admisibles, %d rechazadas",
        net.name, len(entradas), len(admisibles), len(rechazadas),
    )
    return TransferTable(net=net, entries=entradas, admissible=admisibles, rejected=rechazadas)


def invert_table(table: TransferTable, y: PlaceSet) -> list[tuple[PlaceSet, Receptivity]]:
    """Todas las celdas (X, r) que van a Y, en orden canónico de X y luego binario de r"""
    pares = [clave for clave, destino in table.entries.items() if destino == y]
    return sorted(pares, key=lambda par: (par[0].sort_key, par[1].bits))


def _fuentes_por_objetivo(table: TransferTable) -> dict[PlaceSet, dict[PlaceSet, list[Receptivity]]]:
    agrupado = defaultdict(lambda: defaultdict(list))
    for (x, r), y in table.entries.items():
        agrupado[y][x].append(r)
    return agrupado


def emit_equations(table: TransferTable, minimize: bool = False) -> list[MassEquation]:
    """Una ecuación por cada Y alcanzable, en orden canónico.

    Sin minimizar, el coeficiente de cada fuente es la suma de sus minterms;
    con minimize se reduce a suma de productos de dos niveles.
    """
    m = table.net.m
    agrupado = _fuentes_por_objetivo(table)
    ecuaciones = []
    for objetivo in sorted(agrupado, key=lambda y: y.sort_key):
        fuentes = agrupado[objetivo]
        terminos = []
        for fuente in sorted(fuentes, key=lambda x: x.sort_key):
            combinaciones = sorted(fuentes[fuente], key=lambda r: r.bits)
            if minimize:
                cubos = minimize_minterms(combinaciones, m)
            else:
                cubos = [minterm_cube(r) for r in combinaciones]
            terminos.extend(EquationTerm(cube=cubo, source=fuente) for cubo in cubos)
        ecuaciones.append(MassEquation(target=objetivo, terms=terminos, m=m, minimized=minimize))
    logger.debug("%d ecuaciones emitidas para %s (minimize=%s)", len(ecuaciones), table.net.name, minimize)
    return ecuaciones


def equations_semantically_equal(a: MassEquation, b: MassEquation, strict: bool = False) -> bool:
    """Compara las tablas de verdad de los coeficientes de cada fuente en las 2^m asignaciones.

    Con objetivos distintos devuelve False, o lanza TargetMismatchError si strict.
    """
    if a.m != b.m:
        raise DimensionMismatchError('ecuación', a.m, b.m)
    if a.target != b.target:
        if strict:
            raise TargetMismatchError(
                f"no se pueden comparar {a.target.index_label()} y {b.target.index_label()}"
            )
        return False
    fuentes = set(a.sources) | set(b.sources)
    for r in Receptivity.every(a.m):
        for fuente in fuentes:
            if a.coefficient(fuente, r) != b.coefficient(fuente, r):
                return False
    return True


def table_step(table: TransferTable, mass: MassVector | Mapping, r: Receptivity) -> MassVector:
    """step resuelto por búsqueda en la tabla"""
    if not isinstance(mass, MassVector):
        mass = MassVector(dict(mass))
    if len(r) != table.net.m:
        raise DimensionMismatchError('receptividad', table.net.m, len(r))
    if table.is_rejected(r):
        raise RejectedCombinationError(
            f"la combinación {r} viola un conflicto y no está en la tabla"
        )
    destinos = defaultdict(list)
    for x, valor in mass.items():
        if max(x.members) >= table.net.n:
            raise IndexOutOfRangeError(
                f"el conjunto {x.label()} usa plazas fuera de la red ({table.net.n} plazas)"
            )
        destinos[table[(x, r)]].append(valor)
    return MassVector({y: fsum(valores) for y, valores in destinos.items()})


def apply_equations(equations: Iterable[MassEquation], mass: MassVector | Mapping, r: Receptivity) -> MassVector:
    """Evalúa el sistema como reglas de transferencia: M_Y(k+1) = Σ coef(r)·M_X(k)"""
    if not isinstance(mass, MassVector):
        mass = MassVector(dict(mass))
    equations = list(equations)
    nuevas = {}
    cubiertas = set()
    for eq in equations:
        if eq.m != len(r):
            raise DimensionMismatchError('receptividad', eq.m, len(r))
        for fuente in eq.sources:
            if mass[fuente] and eq.coefficient(fuente, r):
                cubiertas.add(fuente)
        valor = eq.evaluate(mass, r)
        if valor:
            nuevas[eq.target] = valor
    sin_destino = [x for x in mass.focal_elements if x not in cubiertas]
    if sin_destino:
        raise RejectedCombinationError(
            f"ninguna ecuación transfiere {sin_destino[0].index_label()} con {r}"
        )
    return MassVector(nuevas)
