"""
Exportación de la tabla de transferencia a CSV o Excel.
"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional, TextIO

import pandas as pd

from .operaciones import invert_table
from .tipos import TransferTable

COLUMNAS = ['subset', 'receptivity-bits', 'result-subset']


def table_frame(table: TransferTable) -> pd.DataFrame:
    """Una fila por celda definida, en orden canónico de X y luego binario de r"""
    net = table.net
    claves = sorted(table.entries, key=lambda par: (par[0].sort_key, par[1].bits))
    filas = [
        (x.label(net), r.to_string(), table[(x, r)].label(net))
        for x, r in claves
    ]
    return pd.DataFrame(filas, columns=COLUMNAS)


def inverse_frame(table: TransferTable) -> pd.DataFrame:
    """Las celdas agrupadas por conjunto destino (la tabla invertida)"""
    net = table.net
    destinos = sorted(set(table.entries.values()), key=lambda y: y.sort_key)
    filas = [
        (x.label(net), r.to_string(), y.label(net))
        for y in destinos
        for x, r in invert_table(table, y)
    ]
    return pd.DataFrame(filas, columns=COLUMNAS)


def export_table(table: TransferTable, path: str | Path, stream: Optional[TextIO] = None) -> None:
    """Escribe la tabla en CSV, o en Excel si el archivo termina en .xlsx.

    path '-' escribe el CSV en `stream` (stdout por defecto).
    """
    df = table_frame(table)
    if str(path) == '-':
        (stream or sys.stdout).write(df.to_csv(index=False))
        return
    path = Path(path)
    if path.suffix.lower() == '.xlsx':
        with pd.ExcelWriter(path, engine='openpyxl') as writer:
            df.to_excel(writer, index=False, sheet_name='Tabla')
            inverse_frame(table).to_excel(writer, index=False, sheet_name='Invertida')
    else:
        df.to_csv(path, index=False)
