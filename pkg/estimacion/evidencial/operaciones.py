"""
Evolución del marcado generalizado 𝓜 en dos pasos:
transformación de cada hipótesis X por la combinación de receptividades y
transferencia/agregación de las masas hacia los Y resultantes.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from math import fsum
from typing import Iterable, Mapping

from estimacion.nucleo_red.excepciones import (
    ConflictViolationError,
    IndexOutOfRangeError,
    NetError,
)
from estimacion.nucleo_red.operaciones import (
    check_receptivity,
    enabled_transitions,
    require_admissible,
    require_valid,
)
from estimacion.nucleo_red.tipos import ClassicMarking, PetriNet, Receptivity

from .excepciones import PreconditionError, RunAbortedError
from .tipos import MassVector, PlaceSet, Trajectory, TrajectoryStep

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def all_place_sets(n: int) -> tuple[PlaceSet, ...]:
    """Los 2^n − 1 elementos de 2^Ω en orden canónico"""
    return tuple(
        PlaceSet(frozenset(indices))
        for tamano in range(1, n + 1)
        for indices in combinations(range(n), tamano)
    )


def ignorance_mass(net: PetriNet) -> MassVector:
    """Estado inicial desconocido: m(Ω) = 1.

    Solo depende de la cantidad de plazas, así que no exige una red válida
    (una red de una plaza no puede tener transiciones y sigue teniendo Ω = {P1}).
    """
    return MassVector.categorical(PlaceSet(frozenset(range(net.n))))


def mass_from_marking(marking: ClassicMarking) -> MassVector:
    """Marcado clásico como masa categórica sobre un singleton"""
    return MassVector.categorical(PlaceSet.of(marking.place))


def _como_masa(mass) -> MassVector:
    if isinstance(mass, MassVector):
        return mass
    return MassVector(dict(mass))


def _verificar_indices(net: PetriNet, conjunto: PlaceSet) -> None:
    if max(conjunto.members) >= net.n:
        raise IndexOutOfRangeError(
            f"el conjunto {conjunto.label()} usa plazas fuera de la red ({net.n} plazas)"
        )


@lru_cache(maxsize=4096)
def _sucesores(net: PetriNet, r: Receptivity) -> tuple[int, ...]:
    """Plaza a la que va la marca de cada plaza bajo r (o la misma si no dispara nada)"""
    require_valid(net)
    require_admissible(net, r)
    sucesores = []
    for plaza in range(net.n):
        habilitadas = enabled_transitions(net, plaza, r)
        if len(habilitadas) > 1:
            raise ConflictViolationError(check_receptivity(net, r), net)
        if habilitadas:
            (transicion,) = habilitadas
            sucesores.append(net.post_places[transicion])
        else:
            sucesores.append(plaza)
    return tuple(sucesores)


def transform(net: PetriNet, x: PlaceSet, r: Receptivity) -> PlaceSet:
    """Transformación de X por la combinación r: unión de los sucesores de cada plaza de X"""
    _verificar_indices(net, x)
    sucesores = _sucesores(net, r)
    return PlaceSet(frozenset(sucesores[p] for p in x.members))


def step(net: PetriNet, mass: MassVector | Mapping, r: Receptivity) -> MassVector:
    """M'(Y) = Σ { mass(X) : transform(X, r) = Y }"""
    mass = _como_masa(mass)
    require_valid(net)
    destinos = defaultdict(list)
    for x, valor in mass.items():
        y = transform(net, x, r)
        destinos[y].append(valor)
        logger.debug("%s --%s--> %s (%g)", x.label(net), r, y.label(net), valor)
    return MassVector({y: fsum(valores) for y, valores in destinos.items()})


def run(net: PetriNet, initial: MassVector | Mapping, inputs: Iterable[Receptivity]) -> Trajectory:
    """Aplica step una vez por receptividad; la primera entrada que falla detiene la corrida"""
    inicial = _como_masa(initial)
    require_valid(net)
    actual = inicial
    pasos = []
    for indice, r in enumerate(inputs):
        try:
            actual = step(net, actual, r)
        except NetError as exc:
            parcial = Trajectory(initial=inicial, steps=tuple(pasos))
            raise RunAbortedError(indice, exc, parcial) from exc
        pasos.append(TrajectoryStep(receptivity=r, mass=actual))
    logger.debug("Trayectoria de %d pasos sobre %s", len(pasos), net.name)
    return Trajectory(initial=inicial, steps=tuple(pasos))


def support_places(mass: MassVector) -> PlaceSet:
    """Unión de los elementos focales: las plazas todavía posibles"""
    soporte = frozenset()
    for x in mass.focal_elements:
        soporte |= x.members
    return PlaceSet(soporte)


def excluded_places(net: PetriNet, mass: MassVector) -> tuple[int, ...]:
    """Plazas en las que es seguro que no está la marca"""
    soporte = support_places(mass)
    return tuple(i for i in range(net.n) if i not in soporte)


def is_categorical(mass: MassVector) -> bool:
    return all(valor == 1.0 for _, valor in mass.items())


def dense_vector(mass: MassVector, n: int) -> list[float]:
    """Vector 𝓜 completo de 2^n − 1 componentes, en orden canónico"""
    for x in mass.focal_elements:
        if max(x.members) >= n:
            raise IndexOutOfRangeError(f"el conjunto {x.label()} no entra en {n} plazas")
    return [mass[x] for x in all_place_sets(n)]


# ==================== RED SECUENCIAL ====================

def _ciclo(net: PetriNet) -> tuple[int, ...]:
    """Orden de las plazas a lo largo del ciclo; PreconditionError si la red no es un ciclo simple"""
    require_valid(net)
    for plaza in range(net.n):
        if len(net.output_transitions(plaza)) != 1 or len(net.input_transitions(plaza)) != 1:
            raise PreconditionError(
                f"la red no es un ciclo simple: {net.place_names[plaza]} no tiene exactamente "
                "una transición de entrada y una de salida"
            )
    orden = [0]
    while True:
        (salida,) = net.output_transitions(orden[-1])
        siguiente = net.post_places[salida]
        if siguiente == 0:
            break
        orden.append(siguiente)
    if len(orden) != net.n:
        raise PreconditionError("la red no es un ciclo simple: tiene más de un circuito")
    return tuple(orden)


def _es_tramo(conjunto: PlaceSet, orden: tuple[int, ...], posicion: dict[int, int]) -> bool:
    """True si las plazas del conjunto son consecutivas a lo largo del ciclo"""
    n = len(orden)
    for inicio in conjunto.members:
        tramo = {orden[(posicion[inicio] + k) % n] for k in range(len(conjunto))}
        if tramo == conjunto.members:
            return True
    return False


def sequential_step_check(net: PetriNet, mass: MassVector | Mapping, r: Receptivity) -> MassVector:
    """Evolución por la ecuación cerrada de la red secuencial:

        M{i}(k+1) = r̄i * M{i}(k) + r_{i−1} * M{i−1}(k) + r_{i−1} * r̄i * M{i−1,i}(k)

    Cada plaza de una hipótesis se avanza con la ecuación del singleton; un par
    adyacente que colapsa por el término r_{i−1}·r̄i va entero a {P_i}. Sirve de
    oráculo para step en ciclos sin conflictos.
    """
    mass = _como_masa(mass)
    orden = _ciclo(net)
    require_admissible(net, r)
    posicion = {plaza: k for k, plaza in enumerate(orden)}
    n = net.n
    anterior = {plaza: orden[(posicion[plaza] - 1) % n] for plaza in orden}

    def r_salida(plaza):
        (transicion,) = net.output_transitions(plaza)
        return int(r[transicion])

    def r_entrada(plaza):
        return r_salida(anterior[plaza])

    def ecuacion(i, m):
        previo = anterior[i]
        return (
            (1 - r_salida(i)) * m.get(PlaceSet.of(i), 0)
            + r_entrada(i) * m.get(PlaceSet.of(previo), 0)
            + r_entrada(i) * (1 - r_salida(i)) * m.get(PlaceSet.of(previo, i), 0)
        )

    destinos = defaultdict(list)
    for x, valor in mass.items():
        _verificar_indices(net, x)
        if len(x) > 1 and not _es_tramo(x, orden, posicion):
            raise PreconditionError(
                f"{x.label(net)} no es un singleton ni un tramo de plazas consecutivas del ciclo"
            )
        y = None
        if len(x) == 2:
            colapso = [i for i in x if ecuacion(i, {x: 1}) == 1]
            if colapso:
                y = PlaceSet.of(colapso[0])
        if y is None:
            posibles = frozenset(
                i for p in x for i in range(n) if ecuacion(i, {PlaceSet.of(p): 1}) == 1
            )
            y = PlaceSet(posibles)
        destinos[y].append(valor)
    return MassVector({y: fsum(valores) for y, valores in destinos.items()})
