from estimacion.nucleo_red.excepciones import NetError


class EmptyPlaceSetError(NetError):
    """El conjunto vacío no pertenece a 2^Ω"""


class MassNormalizationError(NetError):
    """Las masas no suman 1 (dentro de la tolerancia) o alguna está fuera de [0,1]"""


class PreconditionError(NetError):
    """La entrada no cumple la precondición de la operación"""


class RunAbortedError(NetError):
    """Una receptividad de la secuencia no se pudo aplicar"""

    def __init__(self, index, cause, trajectory=None):
        self.index = index
        self.cause = cause
        # Trayectoria hasta la última entrada aplicada
        self.trajectory = trajectory
        super().__init__(f"la estimación se detuvo en la entrada {index + 1}: {cause}")
