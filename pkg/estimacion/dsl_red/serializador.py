"""
Escritura canónica de redes, receptividades y masas en el formato evinet.
"""
from __future__ import annotations

from evinet.config import FORMATO_CABECERA, MAX_PLAZAS_DENSO
from estimacion.evidencial.operaciones import dense_vector
from estimacion.evidencial.tipos import MassVector
from estimacion.nucleo_red.operaciones import require_valid
from estimacion.nucleo_red.tipos import PetriNet, Receptivity

from .excepciones import DenseOutputError


def serialize_net(net: PetriNet) -> str:
    """Documento canónico: declaraciones en orden y arcos ordenados por
    transición, primero el de entrada y después el de salida"""
    require_valid(net)
    lineas = [
        FORMATO_CABECERA,
        f"net {net.name}",
        "places: " + ', '.join(net.place_names),
        "transitions: " + ', '.join(net.transition_names),
    ]
    for j, transicion in enumerate(net.transition_names):
        lineas.append(f"arc: {net.place_names[net.pre_places[j]]} -> {transicion}")
        lineas.append(f"arc: {transicion} -> {net.place_names[net.post_places[j]]}")
    return '\n'.join(lineas) + '\n'


def serialize_receptivity(r: Receptivity) -> str:
    """[0, 1, 0] -> '0 1 0'"""
    return ' '.join('1' if b else '0' for b in r)


def _numero(valor: float) -> str:
    return f"{valor:.12g}"


def serialize_mass(mass: MassVector, net: PetriNet, dense: bool = False) -> str:
    """Registro de una línea: `{P1}:0.5 {P2}:0.5`, o `[0,0,0,0,1,0,0]` en forma densa"""
    if dense:
        if net.n > MAX_PLAZAS_DENSO:
            raise DenseOutputError(
                f"la forma densa tendría {2 ** net.n - 1} componentes (máximo {MAX_PLAZAS_DENSO} plazas)"
            )
        return '[' + ','.join(_numero(v) for v in dense_vector(mass, net.n)) + ']'
    return ' '.join(f"{x.label(net)}:{_numero(v)}" for x, v in mass.items())
