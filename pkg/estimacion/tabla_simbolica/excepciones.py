from estimacion.nucleo_red.excepciones import NetError


class SizeCapExceededError(NetError):
    """La tabla pedida supera el límite configurado de plazas o transiciones"""

    def __init__(self, required, n, m, max_places, max_transitions):
        self.required = required
        super().__init__(
            f"la red tiene {n} plazas y {m} transiciones (límite {max_places} y "
            f"{max_transitions}); la tabla necesitaría {required} celdas"
        )


class RejectedCombinationError(NetError):
    """La combinación de receptividades viola un conflicto y no está en la tabla"""


class TargetMismatchError(NetError):
    """Se compararon ecuaciones de conjuntos objetivo distintos"""


class EquationSyntaxError(NetError):
    """Texto de ecuación mal formado"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (columna {position + 1})"
        super().__init__(message)
