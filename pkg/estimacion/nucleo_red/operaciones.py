"""
Operaciones del núcleo: validación estructural, conflictos y evolución clásica (ecuación 1).
"""
from __future__ import annotations

import logging
from collections import Counter
from functools import lru_cache

import numpy as np

from .excepciones import (
    ConflictViolationError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidNetError,
)
from .tipos import (
    ClassicMarking,
    ConflictSet,
    ConflictViolation,
    PetriNet,
    Receptivity,
    ValidationReport,
    Violation,
    check_p_invariant,
)

logger = logging.getLogger(__name__)

__all__ = [
    'check_p_invariant',
    'check_receptivity',
    'classic_step',
    'detect_conflicts',
    'enabled_transitions',
    'incidence_matrix',
    'marking_probabilities',
    'raw_incidence_step',
    'require_admissible',
    'require_valid',
    'validate_net',
]


def _forma_valida(matriz, n, m) -> bool:
    return len(matriz) == n and all(len(fila) == m for fila in matriz)


def _duplicados(nombres) -> list[str]:
    return sorted(nombre for nombre, veces in Counter(nombres).items() if veces > 1)


@lru_cache(maxsize=512)
def validate_net(net: PetriNet) -> ValidationReport:
    """Verifica las hipótesis de red conservativa de una sola marca.

    Devuelve todas las violaciones encontradas (no lanza excepciones).
    """
    violaciones = []
    n, m = net.n, net.m

    if n < 1:
        violaciones.append(Violation('places', 'la red debe tener al menos una plaza'))
    if m < 1:
        violaciones.append(Violation('transitions', 'la red debe tener al menos una transición'))
    for nombre in _duplicados(net.place_names):
        violaciones.append(Violation(
            'duplicate_place', f"la plaza {nombre} está declarada más de una vez",
            rows=tuple(i for i, p in enumerate(net.place_names) if p == nombre),
        ))
    for nombre in _duplicados(net.transition_names):
        violaciones.append(Violation(
            'duplicate_transition', f"la transición {nombre} está declarada más de una vez",
            columns=tuple(j for j, t in enumerate(net.transition_names) if t == nombre),
        ))

    for etiqueta, matriz in (('Pre', net.pre), ('Post', net.post)):
        if not _forma_valida(matriz, n, m):
            violaciones.append(Violation(
                'shape', f"la matriz {etiqueta} no es de {n}x{m}",
            ))
    if any(v.code == 'shape' for v in violaciones) or n < 1 or m < 1:
        # Sin forma n x m no tiene sentido revisar columnas
        return ValidationReport(tuple(violaciones))

    pre = net.pre_matrix
    post = net.post_matrix

    for etiqueta, matriz in (('Pre', pre), ('Post', post)):
        filas, columnas = np.nonzero((matriz != 0) & (matriz != 1))
        if len(filas):
            violaciones.append(Violation(
                'binary', f"la matriz {etiqueta} tiene valores fuera de {{0,1}}",
                rows=tuple(int(i) for i in filas), columns=tuple(int(j) for j in columnas),
            ))

    sumas = (post - pre).sum(axis=0)
    for j, suma in enumerate(sumas):
        if suma != 0:
            violaciones.append(Violation(
                'conservation', f"la columna {j} de Post − Pre suma {suma:g}",
                columns=(j,),
            ))

    for j in range(m):
        entradas = np.flatnonzero(pre[:, j] == 1)
        salidas = np.flatnonzero(post[:, j] == 1)
        if len(entradas) != 1:
            violaciones.append(Violation(
                'pre_arcs',
                f"la transición {net.transition_names[j]} tiene {len(entradas)} arcos de entrada (se espera 1)",
                rows=tuple(int(i) for i in entradas), columns=(j,),
            ))
        if len(salidas) != 1:
            violaciones.append(Violation(
                'post_arcs',
                f"la transición {net.transition_names[j]} tiene {len(salidas)} arcos de salida (se espera 1)",
                rows=tuple(int(i) for i in salidas), columns=(j,),
            ))
        lazos = np.intersect1d(entradas, salidas)
        if len(lazos):
            violaciones.append(Violation(
                'self_loop',
                f"la transición {net.transition_names[j]} vuelve a su propia plaza de entrada",
                rows=tuple(int(i) for i in lazos), columns=(j,),
            ))

    informe = ValidationReport(tuple(violaciones))
    if not informe.ok:
        logger.debug("Red %s inválida: %s", net.name, sorted(informe.codes()))
    return informe


def require_valid(net: PetriNet) -> None:
    informe = validate_net(net)
    if not informe.ok:
        raise InvalidNetError(informe)


def incidence_matrix(net: PetriNet) -> np.ndarray:
    """Post − Pre"""
    return net.post_matrix - net.pre_matrix


@lru_cache(maxsize=512)
def _conflictos(net: PetriNet) -> tuple[ConflictSet, ...]:
    require_valid(net)
    conflictos = []
    for i in range(net.n):
        salidas = net.output_transitions(i)
        if len(salidas) >= 2:
            conflictos.append(ConflictSet(place=i, transitions=frozenset(salidas)))
    return tuple(conflictos)


def detect_conflicts(net: PetriNet) -> list[ConflictSet]:
    """Un ConflictSet por cada plaza con dos o más transiciones de salida"""
    return list(_conflictos(net))


def _verificar_largo(net: PetriNet, r: Receptivity) -> None:
    if len(r) != net.m:
        raise DimensionMismatchError('receptividad', net.m, len(r))


def check_receptivity(net: PetriNet, r: Receptivity) -> tuple[ConflictViolation, ...]:
    """Restricción global r1·r2 ≤ 1: a lo sumo una transición verdadera por conflicto.

    Devuelve las violaciones; la tupla vacía significa que la receptividad es admisible.
    """
    _verificar_largo(net, r)
    verdaderas = r.true_indices
    violaciones = []
    for conflicto in _conflictos(net):
        activas = conflicto.transitions & verdaderas
        if len(activas) >= 2:
            violaciones.append(ConflictViolation(conflict=conflicto, active=frozenset(activas)))
    return tuple(violaciones)


def require_admissible(net: PetriNet, r: Receptivity) -> None:
    violaciones = check_receptivity(net, r)
    if violaciones:
        raise ConflictViolationError(violaciones, net)


def enabled_transitions(net: PetriNet, place: int, r: Receptivity) -> frozenset[int]:
    """{ t_j : Pre(place, t_j) = 1 y r_j = 1 }"""
    if not 0 <= place < net.n:
        raise IndexOutOfRangeError(f"la plaza {place} no existe (la red tiene {net.n})")
    _verificar_largo(net, r)
    return frozenset(j for j in net.output_transitions(place) if r[j])


def _marcas(net: PetriNet, marking: ClassicMarking) -> np.ndarray:
    if len(marking) != net.n:
        raise DimensionMismatchError('marcado', net.n, len(marking))
    return np.array(marking.marks, dtype=np.int64)


def classic_step(net: PetriNet, marking: ClassicMarking, r: Receptivity) -> ClassicMarking:
    """Ecuación (1) restringida a las transiciones habilitadas.

    Solo disparan las t_j con r_j = 1 cuya plaza de entrada está marcada; una
    plaza marcada sin salida habilitada conserva la marca.
    """
    require_valid(net)
    marcas = _marcas(net, marking)
    require_admissible(net, r)

    habilitadas = np.zeros(net.m, dtype=np.int64)
    habilitadas[sorted(enabled_transitions(net, marking.place, r))] = 1
    nuevas = marcas + incidence_matrix(net) @ habilitadas
    return ClassicMarking(tuple(int(v) for v in nuevas))


def raw_incidence_step(net: PetriNet, marking: ClassicMarking, r: Receptivity) -> tuple[int, ...]:
    """Ecuación (1) sin restricción: M − Pre·R + Post·R sobre todas las receptividades verdaderas.

    Puede dar marcas negativas; sirve para diagnóstico.
    """
    marcas = _marcas(net, marking)
    _verificar_largo(net, r)
    vector = r.as_vector()
    nuevas = marcas - net.pre_matrix @ vector + net.post_matrix @ vector
    return tuple(int(v) for v in nuevas)


def marking_probabilities(net: PetriNet, marking: ClassicMarking) -> dict[str, float]:
    """Lectura probabilística del marcado (ecuación 3): M(P_i) ≡ P(P_i)"""
    marcas = _marcas(net, marking)
    return {nombre: float(v) for nombre, v in zip(net.place_names, marcas)}
