"""
Registros de trayectoria: una línea autocontenida por instante k.

    sparse  k=1 r=010 {P1,P3}:1
    dense   k=1 r=010 [0,0,0,0,1,0,0]
    log     {"step": 1, "r": [0, 1, 0], "mass": {"{P1,P3}": 1.0}}

En k = 0 va la masa inicial y no hay receptividad (r=- o null).
"""
import json
from typing import Optional

from estimacion.dsl_red.serializador import serialize_mass
from estimacion.evidencial.tipos import MassVector
from estimacion.nucleo_red.tipos import PetriNet, Receptivity


def render_record(
    net: PetriNet,
    k: int,
    r: Optional[Receptivity],
    mass: MassVector,
    formato: str = 'sparse',
) -> str:
    if formato == 'log':
        return json.dumps(
            {
                'step': k,
                'r': None if r is None else [int(b) for b in r],
                'mass': {x.label(net): valor for x, valor in mass.items()},
            },
            ensure_ascii=False,
        )
    bits = '-' if r is None else r.to_string()
    return f"k={k} r={bits} {serialize_mass(mass, net, dense=formato == 'dense')}"
