"""
Lectura del formato de texto evinet.

Documento de red:

    # format: evinet v1
    net secuencial_3
    places: P1, P2, P3
    transitions: t1, t2, t3
    arc: P1 -> t1
    arc: t1 -> P2

Receptividades: una línea por instante con m valores 0/1 separados por
espacios o comas. Masas: `{P1,P3}:1 {P2}:0.5`.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from evinet.config import FORMATO_VERSION
from estimacion.evidencial.tipos import MassVector, PlaceSet
from estimacion.nucleo_red.operaciones import validate_net
from estimacion.nucleo_red.tipos import PetriNet, Receptivity, ValidationReport

from .excepciones import (
    DslSyntaxError,
    DuplicateArcError,
    InvalidEncodingError,
    StructuralError,
    UndeclaredIdentifierError,
)

logger = logging.getLogger(__name__)

IDENTIFICADOR = r"[A-Za-z_][A-Za-z0-9_.]*"
_FORMATO = re.compile(r"#\s*format:\s*(?P<version>.+?)\s*$")
_NET = re.compile(rf"net\s+(?P<nombre>{IDENTIFICADOR})$")
_DECLARACION = re.compile(r"(?P<clave>places|transitions)\s*:\s*(?P<lista>.*)$")
_ARCO = re.compile(rf"arc\s*:\s*(?P<origen>{IDENTIFICADOR})\s*->\s*(?P<destino>{IDENTIFICADOR})\s*$")
_SEPARADOR = re.compile(r"[,\s]+")
_MASA = re.compile(r"\{(?P<conjunto>[^}]*)\}\s*:\s*(?P<valor>\S+)")


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    line: int
    column: int = 1


@dataclass(frozen=True)
class NetDocument:
    """Contenido sintáctico de un documento de red, sin validar la estructura"""

    name: str
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    arcs: tuple[Arc, ...]
    places_line: int = 0
    transitions_line: int = 0


def decode_text(datos: bytes) -> str:
    """Decodifica UTF-8; un byte inválido es InvalidEncodingError con su línea"""
    try:
        return datos.decode('utf-8')
    except UnicodeDecodeError as exc:
        linea = datos.count(b'\n', 0, exc.start) + 1
        corte = datos.rfind(b'\n', 0, exc.start) + 1
        raise InvalidEncodingError(
            f"el byte {datos[exc.start]:#04x} no es UTF-8 válido",
            linea,
            valid_text=datos[:corte].decode('utf-8'),
        ) from exc


def read_text(ruta: str | Path) -> str:
    return decode_text(Path(ruta).read_bytes())


def _sin_comentario(linea: str, numero: int) -> str:
    """Quita el comentario '#'; la cabecera de formato se acepta solo con la versión conocida"""
    formato = _FORMATO.match(linea.strip())
    if formato and formato.group('version') != FORMATO_VERSION:
        raise DslSyntaxError(f"formato no soportado: {formato.group('version')}", numero)
    return linea.split('#', 1)[0].strip()


def _lista(texto: str, numero: int, columna: int) -> list[str]:
    nombres = [nombre for nombre in _SEPARADOR.split(texto.strip()) if nombre]
    for nombre in nombres:
        if not re.fullmatch(IDENTIFICADOR, nombre):
            raise DslSyntaxError(f"identificador inválido {nombre!r}", numero, columna)
    return nombres


def parse_net_document(texto: str) -> NetDocument:
    """Análisis sintáctico: declaraciones, arcos y sus números de línea"""
    nombre = None
    declaradas = {}
    lineas_declaracion = {}
    arcos = []

    for numero, cruda in enumerate(texto.splitlines(), start=1):
        linea = _sin_comentario(cruda, numero)
        if not linea:
            continue
        columna = len(cruda) - len(cruda.lstrip()) + 1

        if nombre is None:
            cabecera = _NET.match(linea)
            if cabecera is None:
                raise DslSyntaxError("el documento debe empezar con 'net <nombre>'", numero, columna)
            nombre = cabecera.group('nombre')
            continue

        declaracion = _DECLARACION.match(linea)
        if declaracion:
            clave = declaracion.group('clave')
            if clave in declaradas:
                raise DslSyntaxError(f"'{clave}' declarado dos veces", numero, columna)
            lista = _lista(declaracion.group('lista'), numero, columna)
            repetidos = sorted({n for n in lista if lista.count(n) > 1})
            if repetidos:
                raise DslSyntaxError(f"{repetidos[0]} aparece dos veces en '{clave}'", numero, columna)
            declaradas[clave] = tuple(lista)
            lineas_declaracion[clave] = numero
            continue

        arco = _ARCO.match(linea)
        if arco:
            arcos.append(Arc(arco.group('origen'), arco.group('destino'), numero, columna))
            continue

        raise DslSyntaxError(f"línea no reconocida: {linea!r}", numero, columna)

    if nombre is None:
        raise DslSyntaxError("documento vacío: falta 'net <nombre>'", 1)
    for clave in ('places', 'transitions'):
        if clave not in declaradas:
            raise DslSyntaxError(f"falta la declaración '{clave}:'", len(texto.splitlines()) or 1)

    plazas = declaradas['places']
    transiciones = declaradas['transitions']
    ambos = set(plazas) & set(transiciones)
    if ambos:
        raise DslSyntaxError(
            f"{sorted(ambos)[0]} está declarado como plaza y como transición",
            lineas_declaracion['transitions'],
        )

    vistos = set()
    for arco in arcos:
        for extremo in (arco.source, arco.target):
            if extremo not in plazas and extremo not in transiciones:
                raise UndeclaredIdentifierError(f"{extremo} no está declarado", arco.line, arco.column)
        if (arco.source in plazas) == (arco.target in plazas):
            raise DslSyntaxError(
                f"el arco {arco.source} -> {arco.target} debe unir una plaza con una transición",
                arco.line, arco.column,
            )
        clave = (arco.source, arco.target)
        if clave in vistos:
            raise DuplicateArcError(f"el arco {arco.source} -> {arco.target} está repetido", arco.line, arco.column)
        vistos.add(clave)

    return NetDocument(
        name=nombre,
        places=plazas,
        transitions=transiciones,
        arcs=tuple(arcos),
        places_line=lineas_declaracion['places'],
        transitions_line=lineas_declaracion['transitions'],
    )


def net_from_document(doc: NetDocument) -> PetriNet:
    """Arma las matrices Pre y Post sin validar la estructura"""
    plaza = {nombre: i for i, nombre in enumerate(doc.places)}
    transicion = {nombre: j for j, nombre in enumerate(doc.transitions)}
    pre = [[0] * len(doc.transitions) for _ in doc.places]
    post = [[0] * len(doc.transitions) for _ in doc.places]
    for arco in doc.arcs:
        if arco.source in plaza:
            pre[plaza[arco.source]][transicion[arco.target]] = 1
        else:
            post[plaza[arco.target]][transicion[arco.source]] = 1
    return PetriNet(
        place_names=doc.places,
        transition_names=doc.transitions,
        pre=pre,
        post=post,
        name=doc.name,
    )


def locate_violations(doc: NetDocument, report: ValidationReport) -> list[tuple[int, object]]:
    """Asocia cada violación a la línea del primer arco de la transición culpable,
    o a la declaración correspondiente si no hay arco"""
    ubicadas = []
    for violacion in report.violations:
        linea = None
        for j in violacion.columns:
            if j >= len(doc.transitions):
                continue
            nombre = doc.transitions[j]
            lineas = [a.line for a in doc.arcs if nombre in (a.source, a.target)]
            linea = min(lineas) if lineas else doc.transitions_line
            break
        if linea is None:
            linea = doc.places_line if violacion.rows or violacion.code == "places" else doc.transitions_line
        ubicadas.append((linea, violacion))
    return ubicadas


def parse_net(texto: str) -> PetriNet:
    """Documento de red -> PetriNet válida; los errores estructurales llevan la línea"""
    doc = parse_net_document(texto)
    net = net_from_document(doc)
    informe = validate_net(net)
    if not informe.ok:
        raise StructuralError(informe, locate_violations(doc, informe))
    logger.debug("Red %s leída: %d plazas, %d transiciones", net.name, net.n, net.m)
    return net


# ==================== RECEPTIVIDADES ====================

def parse_receptivity_line(linea: str, m: int, numero: int = 1) -> Optional[Receptivity]:
    """Una línea del flujo de receptividades; None si está vacía o es comentario"""
    texto = _sin_comentario(linea, numero)
    if not texto:
        return None
    valores = [v for v in _SEPARADOR.split(texto) if v]
    if len(valores) == 1 and m > 1 and len(valores[0]) == m:
        # Forma compacta: 010
        valores = list(valores[0])
    for posicion, valor in enumerate(valores, start=1):
        if valor not in ('0', '1'):
            raise DslSyntaxError(f"valor no binario {valor!r} en la posición {posicion}", numero)
    if len(valores) != m:
        raise DslSyntaxError(f"se esperaban {m} receptividades y hay {len(valores)}", numero)
    return Receptivity(tuple(v == '1' for v in valores))


def iter_receptivities(lineas: Iterable[str], m: int):
    """Genera (número de línea, Receptivity) a medida que llegan las líneas"""
    for numero, linea in enumerate(lineas, start=1):
        r = parse_receptivity_line(linea, m, numero)
        if r is not None:
            yield numero, r


def parse_receptivity_stream(lineas: Iterable[str], m: int) -> list[Receptivity]:
    return [r for _, r in iter_receptivities(lineas, m)]


# ==================== MASAS ====================

def parse_mass_record(texto: str, net: PetriNet, numero: int = 1) -> MassVector:
    """`{P1,P3}:1 {P2}:0.5` con los nombres declarados de la red"""
    indice = {nombre: i for i, nombre in enumerate(net.place_names)}
    masas = {}
    posicion = 0
    texto = texto.strip()
    for match in _MASA.finditer(texto):
        if texto[posicion:match.start()].strip():
            raise DslSyntaxError(f"texto inesperado {texto[posicion:match.start()].strip()!r}", numero, posicion + 1)
        posicion = match.end()

        nombres = [n.strip() for n in match.group('conjunto').split(',') if n.strip()]
        if not nombres:
            raise DslSyntaxError("el conjunto vacío no lleva masa", numero, match.start() + 1)
        faltantes = [n for n in nombres if n not in indice]
        if faltantes:
            raise UndeclaredIdentifierError(f"la plaza {faltantes[0]} no está en la red", numero, match.start() + 1)
        conjunto = PlaceSet(frozenset(indice[n] for n in nombres))
        if conjunto in masas:
            raise DslSyntaxError(f"{conjunto.label(net)} aparece dos veces", numero, match.start() + 1)
        try:
            masas[conjunto] = float(match.group('valor'))
        except ValueError as exc:
            raise DslSyntaxError(f"masa inválida {match.group('valor')!r}", numero, match.start('valor') + 1) from exc

    if texto[posicion:].strip():
        raise DslSyntaxError(f"texto inesperado {texto[posicion:].strip()!r}", numero, posicion + 1)
    if not masas:
        raise DslSyntaxError("el registro de masas está vacío", numero)
    return MassVector(masas)
