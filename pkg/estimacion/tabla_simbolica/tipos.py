"""
Tabla de transferencia (X, comb) -> Y y ecuaciones booleanas de masa.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum
from types import MappingProxyType
from typing import Mapping, Optional

from estimacion.evidencial.tipos import MassVector, PlaceSet
from estimacion.nucleo_red.tipos import PetriNet, Receptivity

# Producto de literales: None = la variable no aparece
Cube = tuple[Optional[bool], ...]


def cube_matches(cube: Cube, r: Receptivity) -> bool:
    return all(valor is None or valor == bit for valor, bit in zip(cube, r.bits))


def cube_sort_key(cube: Cube) -> tuple:
    literales = sum(1 for v in cube if v is not None)
    return literales, tuple(2 if v is None else int(v) for v in cube)


@dataclass(frozen=True)
class TransferTable:
    """Mapa total (X, comb) -> Y sobre las combinaciones admisibles.

    Las combinaciones que violan un conflicto quedan registradas en `rejected`
    y no tienen celdas.
    """

    net: PetriNet
    entries: Mapping[tuple[PlaceSet, Receptivity], PlaceSet]
    admissible: tuple[Receptivity, ...]
    rejected: tuple[Receptivity, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'entries', MappingProxyType(dict(self.entries)))
        object.__setattr__(self, 'admissible', tuple(self.admissible))
        object.__setattr__(self, 'rejected', tuple(self.rejected))

    def __getitem__(self, clave: tuple[PlaceSet, Receptivity]) -> PlaceSet:
        return self.entries[clave]

    def __len__(self):
        return len(self.entries)

    @property
    def defined_cells(self) -> int:
        return len(self.entries)

    def is_rejected(self, r: Receptivity) -> bool:
        return r in self.rejected


@dataclass(frozen=True)
class EquationTerm:
    """cube * M_source"""

    cube: Cube
    source: PlaceSet

    def matches(self, r: Receptivity) -> bool:
        return cube_matches(self.cube, r)


@dataclass(frozen=True)
class MassEquation:
    """M_target(k+1) = Σ coef(r) * M_source(k)

    El coeficiente de cada fuente es el OR de los productos de sus términos.
    Sin minimizar, cada producto es un minterm completo.
    """

    target: PlaceSet
    terms: tuple[EquationTerm, ...]
    m: int
    minimized: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(self.terms))

    @property
    def sources(self) -> tuple[PlaceSet, ...]:
        return tuple(sorted({t.source for t in self.terms}, key=lambda x: x.sort_key))

    def cubes_for(self, source: PlaceSet) -> tuple[Cube, ...]:
        return tuple(t.cube for t in self.terms if t.source == source)

    def coefficient(self, source: PlaceSet, r: Receptivity) -> bool:
        return any(t.matches(r) for t in self.terms if t.source == source)

    def evaluate(self, mass: MassVector, r: Receptivity) -> float:
        return fsum(mass[fuente] for fuente in self.sources if self.coefficient(fuente, r))
