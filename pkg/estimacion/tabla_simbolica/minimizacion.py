"""
Minimización de coeficientes booleanos a suma de productos de dos niveles.

Se usa SOPform de sympy (Quine-McCluskey). No hay condiciones indiferentes:
las combinaciones rechazadas por conflicto nunca son minterms, así que la
forma minimizada coincide con la cruda en las 2^m asignaciones.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from sympy import And, Not, Or, symbols
from sympy.logic import SOPform
from sympy.logic.boolalg import BooleanFalse, BooleanTrue

from estimacion.nucleo_red.tipos import Receptivity

from .tipos import Cube, cube_sort_key


@lru_cache(maxsize=32)
def receptivity_symbols(m: int) -> tuple:
    """r1, ..., rm como símbolos de sympy"""
    return tuple(symbols(f"r1:{m + 1}"))


def minterm_cube(r: Receptivity) -> Cube:
    return tuple(bool(b) for b in r.bits)


def cubes_from_expr(expr, variables) -> list[Cube]:
    """Pasa una expresión de sympy en forma SOP a una lista de cubos"""
    m = len(variables)
    if isinstance(expr, BooleanTrue):
        return [(None,) * m]
    if isinstance(expr, BooleanFalse):
        return []

    posicion = {variable: j for j, variable in enumerate(variables)}
    productos = expr.args if isinstance(expr, Or) else (expr,)
    cubos = []
    for producto in productos:
        literales = producto.args if isinstance(producto, And) else (producto,)
        cubo: list = [None] * m
        for literal in literales:
            if isinstance(literal, Not):
                cubo[posicion[literal.args[0]]] = False
            else:
                cubo[posicion[literal]] = True
        cubos.append(tuple(cubo))
    return sorted(cubos, key=cube_sort_key)


def minimize_minterms(minterms: Iterable[Receptivity], m: int) -> list[Cube]:
    """OR de los minterms reducido a implicantes primos"""
    variables = receptivity_symbols(m)
    filas = sorted({tuple(int(b) for b in r.bits) for r in minterms})
    if not filas:
        return []
    expresion = SOPform(list(variables), [list(fila) for fila in filas])
    return cubes_from_expr(expresion, variables)
