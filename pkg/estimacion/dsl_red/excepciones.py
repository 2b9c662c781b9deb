from estimacion.nucleo_red.excepciones import NetError


class DslError(NetError):
    """Error en un documento de texto, con la línea (y columna) donde ocurrió"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.detail = message
        if line is not None and column is not None:
            message = f"línea {line}, columna {column}: {message}"
        elif line is not None:
            message = f"línea {line}: {message}"
        super().__init__(message)


class DslSyntaxError(DslError):
    pass


class UndeclaredIdentifierError(DslError):
    pass


class DuplicateArcError(DslError):
    pass


class StructuralError(DslError):
    """La red leída no pasa validate_net; cada violación va con su línea"""

    def __init__(self, report, located):
        self.report = report
        self.located = tuple(located)
        detalle = '; '.join(f"línea {linea}: {v.message}" for linea, v in self.located)
        primera = self.located[0][0] if self.located else None
        super().__init__(f"red inválida: {detalle}")
        self.line = primera


class DenseOutputError(NetError):
    """El vector denso tendría demasiadas componentes"""


class InvalidEncodingError(DslSyntaxError):
    """El archivo no es UTF-8 válido; valid_text guarda las líneas completas anteriores al byte inválido"""

    def __init__(self, message, line, valid_text=''):
        self.valid_text = valid_text
        super().__init__(message, line)
