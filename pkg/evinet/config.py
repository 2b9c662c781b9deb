# Configuración fija del formato evinet
FORMATO_CABECERA = "# format: evinet v1"
FORMATO_VERSION = "evinet v1"

# Tolerancia para la suma de masas (no se renormaliza en silencio)
TOLERANCIA_MASA = 1e-9

# Por encima de este número de plazas no se emite el vector denso (2^n - 1 columnas)
MAX_PLAZAS_DENSO = 10
