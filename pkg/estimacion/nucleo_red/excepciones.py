"""
Excepciones de evinet. Todas derivan de NetError, que a su vez es un ValueError.
"""


class NetError(ValueError):
    """Error base de la estimación sobre redes de Petri"""


class DimensionMismatchError(NetError):
    """Un vector no tiene el largo que exige la red"""

    def __init__(self, que, esperado, recibido):
        self.que = que
        self.esperado = esperado
        self.recibido = recibido
        super().__init__(
            f"{que}: se esperaban {esperado} elementos y llegaron {recibido}"
        )


class IndexOutOfRangeError(NetError, IndexError):
    """Índice de plaza o transición fuera de rango"""


class InvalidNetError(NetError):
    """La red no cumple las hipótesis de red conservativa de una sola marca"""

    def __init__(self, report):
        self.report = report
        detalle = '; '.join(v.message for v in report.violations)
        super().__init__(f"red inválida: {detalle}")


class ConflictViolationError(NetError):
    """La receptividad dispara a la vez dos transiciones en conflicto"""

    def __init__(self, violations, net=None):
        self.violations = tuple(violations)
        detalle = '; '.join(v.describe(net) for v in self.violations)
        super().__init__(f"receptividad en conflicto: {detalle}")


class PInvariantError(NetError):
    """El marcado clásico no suma exactamente 1 o tiene valores fuera de {0,1}"""
