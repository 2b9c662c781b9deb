"""
Tipos del núcleo: la red de Petri, la receptividad, el marcado clásico y los conflictos.

Todos son inmutables (dataclasses congeladas); las matrices se guardan como
tuplas de tuplas para que la red sea hashable, y se exponen como numpy cuando
hace falta aritmética.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

import numpy as np

from .excepciones import PInvariantError


def _entrada(valor) -> int | float:
    """Los valores enteros quedan como int; los demás se conservan para que validate_net los informe"""
    valor = float(valor)
    return int(valor) if valor.is_integer() else valor


def _como_matriz(valores) -> tuple[tuple[int | float, ...], ...]:
    """Convierte listas, tuplas o arrays de numpy en tupla de tuplas"""
    if isinstance(valores, np.ndarray):
        valores = valores.tolist()
    return tuple(tuple(_entrada(v) for v in fila) for fila in valores)


def _como_array(matriz, n: int, m: int) -> np.ndarray:
    enteros = all(isinstance(v, int) for fila in matriz for v in fila)
    array = np.array(matriz, dtype=np.int64 if enteros else np.float64).reshape(n, m)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class PetriNet:
    """Red de Petri <P, T, Pre, Post>. Las matrices son plazas x transiciones.

    La construcción no valida: validate_net acepta cualquier matriz candidata
    y devuelve el informe de violaciones.
    """

    place_names: tuple[str, ...]
    transition_names: tuple[str, ...]
    pre: tuple[tuple[int | float, ...], ...]
    post: tuple[tuple[int | float, ...], ...]
    name: str = field(default='red', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'place_names', tuple(self.place_names))
        object.__setattr__(self, 'transition_names', tuple(self.transition_names))
        object.__setattr__(self, 'pre', _como_matriz(self.pre))
        object.__setattr__(self, 'post', _como_matriz(self.post))

    @property
    def n(self) -> int:
        return len(self.place_names)

    @property
    def m(self) -> int:
        return len(self.transition_names)

    @cached_property
    def pre_matrix(self) -> np.ndarray:
        return _como_array(self.pre, self.n, self.m)

    @cached_property
    def post_matrix(self) -> np.ndarray:
        return _como_array(self.post, self.n, self.m)

    @cached_property
    def pre_places(self) -> tuple[int, ...]:
        """Plaza de entrada de cada transición (solo tiene sentido en redes válidas)"""
        return tuple(int(np.argmax(self.pre_matrix[:, j])) for j in range(self.m))

    @cached_property
    def post_places(self) -> tuple[int, ...]:
        """Plaza de salida de cada transición (solo tiene sentido en redes válidas)"""
        return tuple(int(np.argmax(self.post_matrix[:, j])) for j in range(self.m))

    def output_transitions(self, place: int) -> tuple[int, ...]:
        return tuple(j for j, valor in enumerate(self.pre[place]) if valor == 1)

    def input_transitions(self, place: int) -> tuple[int, ...]:
        return tuple(j for j, valor in enumerate(self.post[place]) if valor == 1)

    def __str__(self):
        return f"{self.name} ({self.n} plazas, {self.m} transiciones)"


@dataclass(frozen=True)
class Receptivity:
    """Vector R(k): el bit j es r_j (False codifica r̄_j)"""

    bits: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, 'bits', tuple(bool(b) for b in self.bits))

    @classmethod
    def from_string(cls, texto: str) -> Receptivity:
        """'010' -> [0, 1, 0]"""
        return cls(tuple(c == '1' for c in texto.strip()))

    @classmethod
    def all_false(cls, m: int) -> Receptivity:
        return cls((False,) * m)

    @classmethod
    def every(cls, m: int) -> Iterator[Receptivity]:
        """Las 2^m combinaciones, en orden binario con r1 como bit más significativo"""
        for bits in product((False, True), repeat=m):
            yield cls(bits)

    def __len__(self):
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, j):
        return self.bits[j]

    @property
    def true_indices(self) -> frozenset[int]:
        return frozenset(j for j, b in enumerate(self.bits) if b)

    def as_vector(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.int64)

    def to_string(self) -> str:
        return ''.join('1' if b else '0' for b in self.bits)

    def __str__(self):
        return self.to_string()


def check_p_invariant(marks: Iterable[int]) -> bool:
    """Ecuación (2): cada marca en {0,1} y la suma es exactamente 1"""
    marks = tuple(marks)
    return all(v in (0, 1) for v in marks) and sum(marks) == 1


@dataclass(frozen=True)
class ClassicMarking:
    """Marcado clásico M(k) de una red con una sola marca"""

    marks: tuple[int, ...]

    def __post_init__(self):
        marks = tuple(int(v) for v in self.marks)
        if not check_p_invariant(marks):
            raise PInvariantError(
                f"el marcado {list(marks)} no cumple M(P1) + ... + M(Pn) = 1 con marcas en {{0,1}}"
            )
        object.__setattr__(self, 'marks', marks)

    @classmethod
    def at(cls, n: int, place: int) -> ClassicMarking:
        return cls(tuple(1 if i == place else 0 for i in range(n)))

    @property
    def place(self) -> int:
        """Índice de la plaza marcada"""
        return self.marks.index(1)

    def __len__(self):
        return len(self.marks)


@dataclass(frozen=True)
class ConflictSet:
    """Plaza con dos o más transiciones de salida"""

    place: int
    transitions: frozenset[int]

    def label(self, net: PetriNet | None = None) -> str:
        orden = sorted(self.transitions)
        if net is None:
            return f"P{self.place + 1}: " + ', '.join(f"t{j + 1}" for j in orden)
        return f"{net.place_names[self.place]}: " + ', '.join(net.transition_names[j] for j in orden)


@dataclass(frozen=True)
class ConflictViolation:
    """Conflicto violado por una receptividad: transiciones verdaderas a la vez"""

    conflict: ConflictSet
    active: frozenset[int]

    def describe(self, net: PetriNet | None = None) -> str:
        if net is None:
            plaza = f"P{self.conflict.place + 1}"
            activas = ', '.join(f"t{j + 1}" for j in sorted(self.active))
        else:
            plaza = net.place_names[self.conflict.place]
            activas = ', '.join(net.transition_names[j] for j in sorted(self.active))
        return f"{plaza} con {activas} verdaderas a la vez"


@dataclass(frozen=True)
class Violation:
    """Una hipótesis estructural violada, con las filas/columnas culpables"""

    code: str
    message: str
    rows: tuple[int, ...] = ()
    columns: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}
