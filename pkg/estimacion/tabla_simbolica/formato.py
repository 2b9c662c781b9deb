"""
Texto de las ecuaciones de masa.

Una ecuación por línea:

    M{1}(k+1) = !r1*M{1} + r3*M{3} + !r1*r3*M{1,3}

Al leer se aceptan también las formas factorizadas, por ejemplo
`!r3*r1*(M{1,3} + M{1,2,3})` o `(!r1*!r2*!r3 + r1*r2*r3)*M{1,2,3}`, y la
multiplicación implícita por yuxtaposición (`r1 r2 M{1,2}`).
"""
from __future__ import annotations

import re
from typing import Iterable, Optional

from evinet.config import FORMATO_CABECERA
from estimacion.evidencial.tipos import PlaceSet
from estimacion.nucleo_red.tipos import PetriNet

from .excepciones import EquationSyntaxError
from .tipos import Cube, EquationTerm, MassEquation, cube_sort_key

_TOKEN = re.compile(
    r"(?P<mset>M\{\s*\d+(?:\s*,\s*\d+)*\s*\})(?P<tiempo>\(\s*k\s*(?:\+\s*1\s*)?\))?"
    r"|(?P<lit>(?P<neg>!?)r(?P<idx>\d+))"
    r"|(?P<const>[01])"
    r"|(?P<op>[()+*=])"
)


def render_cube(cube: Cube) -> str:
    """(False, None, True) -> '!r1*r3'; el cubo vacío se escribe ''"""
    return '*'.join(
        f"{'' if valor else '!'}r{j + 1}" for j, valor in enumerate(cube) if valor is not None
    )


def render_equation(eq: MassEquation) -> str:
    terminos = []
    for fuente in eq.sources:
        cubos = sorted(eq.cubes_for(fuente), key=cube_sort_key)
        etiqueta = fuente.index_label()
        if len(cubos) == 1:
            coeficiente = render_cube(cubos[0])
            terminos.append(f"{coeficiente}*{etiqueta}" if coeficiente else etiqueta)
        else:
            suma = ' + '.join(render_cube(c) or '1' for c in cubos)
            terminos.append(f"({suma})*{etiqueta}")
    cuerpo = ' + '.join(terminos) if terminos else '0'
    return f"{eq.target.index_label()}(k+1) = {cuerpo}"


def render_equations(equations: Iterable[MassEquation], net: Optional[PetriNet] = None) -> str:
    """Sistema completo con la cabecera de formato versionada"""
    lineas = [FORMATO_CABECERA]
    if net is not None:
        lineas.append(f"# net {net.name}: " + ', '.join(
            f"{j + 1}={nombre}" for j, nombre in enumerate(net.place_names)
        ))
    lineas.extend(render_equation(eq) for eq in equations)
    return '\n'.join(lineas) + '\n'


# ==================== LECTURA ====================

def _tokens(texto: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(texto):
        if texto[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(texto, pos)
        if match is None:
            raise EquationSyntaxError(f"carácter inesperado {texto[pos]!r}", pos)
        if match.group('mset'):
            indices = [int(v) for v in re.findall(r"\d+", match.group('mset'))]
            tiempo = re.sub(r"\s", '', match.group('tiempo') or '')
            tokens.append(('mset', (indices, tiempo), pos))
        elif match.group('lit'):
            tokens.append(('lit', (int(match.group('idx')), not match.group('neg')), pos))
        elif match.group('const'):
            tokens.append(('const', match.group('const') == '1', pos))
        else:
            tokens.append((match.group('op'), None, pos))
        pos = match.end()
    tokens.append(('fin', None, len(texto)))
    return tokens


class _Lector:
    """Descenso recursivo sobre suma := producto ('+' producto)*

    Cada subexpresión se expande a una lista de términos (literales, fuente);
    así los productos de sumas quedan distribuidos.
    """

    def __init__(self, texto: str, n: int, m: int):
        self.tokens = _tokens(texto)
        self.i = 0
        self.n = n
        self.m = m

    @property
    def actual(self):
        return self.tokens[self.i]

    def avanzar(self):
        token = self.tokens[self.i]
        self.i += 1
        return token

    def esperar(self, tipo: str):
        token = self.avanzar()
        if token[0] != tipo:
            raise EquationSyntaxError(f"se esperaba {tipo!r}", token[2])
        return token

    def conjunto(self, indices, pos) -> PlaceSet:
        fuera = [i for i in indices if not 1 <= i <= self.n]
        if fuera:
            raise EquationSyntaxError(f"plaza {fuera[0]} fuera de 1..{self.n}", pos)
        return PlaceSet(frozenset(i - 1 for i in indices))

    def ecuacion(self) -> MassEquation:
        tipo, valor, pos = self.esperar('mset')
        indices, tiempo = valor
        if tiempo not in ('', '(k+1)'):
            raise EquationSyntaxError("el objetivo debe ser M{..}(k+1)", pos)
        objetivo = self.conjunto(indices, pos)
        self.esperar('=')
        terminos = self.suma()
        tipo, _, pos = self.actual
        if tipo != 'fin':
            raise EquationSyntaxError(f"sobra {tipo!r} al final", pos)

        resultado = []
        for literales, fuente in terminos:
            if fuente is None:
                raise EquationSyntaxError("hay un término sin M{..}", pos)
            cubo = tuple(literales.get(j) for j in range(self.m))
            resultado.append(EquationTerm(cube=cubo, source=fuente))
        return MassEquation(target=objetivo, terms=tuple(resultado), m=self.m)

    def suma(self) -> list:
        terminos = self.producto()
        while self.actual[0] == '+':
            self.avanzar()
            terminos = terminos + self.producto()
        return terminos

    def producto(self) -> list:
        terminos = self.factor()
        while True:
            tipo = self.actual[0]
            if tipo == '*':
                self.avanzar()
            elif tipo not in ('lit', 'const', 'mset', '('):
                return terminos
            terminos = self._multiplicar(terminos, self.factor())

    def factor(self) -> list:
        tipo, valor, pos = self.avanzar()
        if tipo == 'lit':
            j, positivo = valor
            if not 1 <= j <= self.m:
                raise EquationSyntaxError(f"receptividad r{j} fuera de r1..r{self.m}", pos)
            return [({j - 1: positivo}, None)]
        if tipo == 'const':
            return [({}, None)] if valor else []
        if tipo == 'mset':
            indices, tiempo = valor
            if tiempo not in ('', '(k)'):
                raise EquationSyntaxError("las fuentes se escriben M{..} o M{..}(k)", pos)
            return [({}, self.conjunto(indices, pos))]
        if tipo == '(':
            terminos = self.suma()
            self.esperar(')')
            return terminos
        raise EquationSyntaxError(f"término inesperado {tipo!r}", pos)

    def _multiplicar(self, izquierda: list, derecha: list) -> list:
        resultado = []
        for literales_a, fuente_a in izquierda:
            for literales_b, fuente_b in derecha:
                if fuente_a is not None and fuente_b is not None:
                    raise EquationSyntaxError(
                        "producto de dos masas", self.tokens[self.i - 1][2]
                    )
                combinados = dict(literales_a)
                contradiccion = False
                for j, valor in literales_b.items():
                    if combinados.get(j, valor) != valor:
                        contradiccion = True
                        break
                    combinados[j] = valor
                if not contradiccion:
                    resultado.append((combinados, fuente_a if fuente_a is not None else fuente_b))
        return resultado


def parse_equation(texto: str, net: PetriNet) -> MassEquation:
    """Lee una ecuación en texto (forma emitida o factorizada)"""
    return _Lector(texto.strip(), net.n, net.m).ecuacion()


def parse_equations(texto: str, net: PetriNet) -> list[MassEquation]:
    """Lee un sistema completo; ignora líneas vacías y comentarios '#'"""
    ecuaciones = []
    for numero, linea in enumerate(texto.splitlines(), start=1):
        linea = linea.strip()
        if not linea or linea.startswith('#'):
            continue
        try:
            ecuaciones.append(parse_equation(linea, net))
        except EquationSyntaxError as exc:
            raise EquationSyntaxError(f"línea {numero}: {exc}") from exc
    return ecuaciones
