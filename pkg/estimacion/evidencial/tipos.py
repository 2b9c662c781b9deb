"""
Tipos del motor evidencial: elementos de 2^Ω, vector de masas y trayectoria.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import fsum, isclose
from types import MappingProxyType
from typing import Iterator, Mapping

from evinet.config import TOLERANCIA_MASA
from estimacion.nucleo_red.excepciones import IndexOutOfRangeError
from estimacion.nucleo_red.tipos import PetriNet, Receptivity

from .excepciones import EmptyPlaceSetError, MassNormalizationError


@dataclass(frozen=True)
class PlaceSet:
    """Elemento no vacío de 2^Ω, guardado como índices de plaza.

    Orden canónico: cardinalidad ascendente y luego lexicográfico, como en
    𝓜 = [M{1}, M{2}, M{3}, M{1,2}, M{1,3}, M{2,3}, M{1,2,3}].
    """

    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        if not members:
            raise EmptyPlaceSetError("un conjunto de plazas no puede ser vacío")
        if min(members) < 0:
            raise IndexOutOfRangeError(f"índices de plaza negativos: {sorted(members)}")
        object.__setattr__(self, 'members', members)

    @classmethod
    def of(cls, *indices: int) -> PlaceSet:
        return cls(frozenset(indices))

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.members), tuple(sorted(self.members))

    def __lt__(self, other: PlaceSet) -> bool:
        return self.sort_key < other.sort_key

    def __or__(self, other: PlaceSet) -> PlaceSet:
        return PlaceSet(self.members | other.members)

    def __contains__(self, place: int) -> bool:
        return place in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def index_label(self) -> str:
        """M{1,3}: índices desde 1"""
        return 'M{' + ','.join(str(i + 1) for i in self) + '}'

    def label(self, net: PetriNet | None = None) -> str:
        """{P1,P3} con los nombres declarados de la red"""
        if net is None:
            return '{' + ','.join(f"P{i + 1}" for i in self) + '}'
        return '{' + ','.join(net.place_names[i] for i in self) + '}'

    def __repr__(self):
        return f"PlaceSet{self.label()}"


@dataclass(frozen=True)
class MassVector:
    """Distribución de masas normalizada sobre elementos de 2^Ω (marcado generalizado 𝓜).

    Solo guarda los elementos focales (masa > 0), en orden canónico.
    """

    masses: Mapping[PlaceSet, float]

    def __post_init__(self):
        limpias = {}
        for conjunto, masa in dict(self.masses).items():
            if not isinstance(conjunto, PlaceSet):
                conjunto = PlaceSet(frozenset(conjunto))
            masa = float(masa)
            if masa < -TOLERANCIA_MASA or masa > 1 + TOLERANCIA_MASA:
                raise MassNormalizationError(
                    f"la masa de {conjunto.label()} es {masa}, fuera de [0,1]"
                )
            masa = min(max(masa, 0.0), 1.0)
            if masa > 0.0:
                limpias[conjunto] = limpias.get(conjunto, 0.0) + masa
        total = fsum(limpias.values())
        if abs(total - 1.0) > TOLERANCIA_MASA:
            raise MassNormalizationError(f"las masas suman {total!r} y deben sumar 1")
        ordenadas = dict(sorted(limpias.items(), key=lambda item: item[0].sort_key))
        object.__setattr__(self, 'masses', MappingProxyType(ordenadas))

    @classmethod
    def categorical(cls, conjunto: PlaceSet) -> MassVector:
        return cls({conjunto: 1.0})

    @property
    def focal_elements(self) -> tuple[PlaceSet, ...]:
        return tuple(self.masses)

    @property
    def total(self) -> float:
        return fsum(self.masses.values())

    def __getitem__(self, conjunto: PlaceSet) -> float:
        return self.masses.get(conjunto, 0.0)

    def items(self):
        return self.masses.items()

    def __len__(self):
        return len(self.masses)

    def __eq__(self, other):
        if not isinstance(other, MassVector):
            return NotImplemented
        return dict(self.masses) == dict(other.masses)

    def almost_equal(self, other: MassVector, tolerance: float = TOLERANCIA_MASA) -> bool:
        conjuntos = set(self.masses) | set(other.masses)
        return all(isclose(self[x], other[x], abs_tol=tolerance) for x in conjuntos)

    def __repr__(self):
        cuerpo = ' '.join(f"{x.label()}:{v:g}" for x, v in self.items())
        return f"MassVector({cuerpo})"


@dataclass(frozen=True)
class TrajectoryStep:
    receptivity: Receptivity
    mass: MassVector


@dataclass(frozen=True)
class Trajectory:
    """Historia de una estimación: masa inicial y un par (R(k), 𝓜(k)) por entrada"""

    initial: MassVector
    steps: tuple[TrajectoryStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))

    @property
    def final(self) -> MassVector:
        return self.steps[-1].mass if self.steps else self.initial

    @property
    def masses(self) -> list[MassVector]:
        return [self.initial] + [paso.mass for paso in self.steps]

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[TrajectoryStep]:
        return iter(self.steps)
