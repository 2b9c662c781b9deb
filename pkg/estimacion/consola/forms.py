from pathlib import Path

from django import forms

from evinet.config import MAX_PLAZAS_DENSO
from estimacion.dsl_red.parser import parse_mass_record, parse_net, read_text
from estimacion.evidencial.operaciones import ignorance_mass
from estimacion.nucleo_red.excepciones import NetError

FORMATOS = [
    ('sparse', 'Elementos focales con su masa'),
    ('dense', 'Vector completo de 2^n - 1 masas'),
    ('log', 'Un objeto JSON por línea'),
]


def leer_texto(ruta: str) -> str:
    try:
        return read_text(ruta)
    except OSError as exc:
        raise forms.ValidationError(f"no se pudo leer {ruta}: {exc.strerror or exc}") from exc


class NetForm(forms.Form):
    """Carga y valida la red indicada con --net"""

    net = forms.CharField(label='Red')

    def clean_net(self):
        ruta = self.cleaned_data['net']
        try:
            return parse_net(leer_texto(ruta))
        except NetError as exc:
            raise forms.ValidationError(f"{ruta}: {exc}") from exc


class TableConfigForm(NetForm):
    """Opciones de table y equations"""

    max_places = forms.IntegerField(required=False, min_value=1, label='Máximo de plazas')
    minimize = forms.BooleanField(required=False, label='Minimizar')
    output = forms.CharField(required=False, label='Salida')

    def clean_output(self):
        salida = self.cleaned_data.get('output') or '-'
        if salida != '-' and Path(salida).suffix.lower() not in ('.csv', '.xlsx'):
            raise forms.ValidationError('La salida debe ser - o un archivo .csv o .xlsx.')
        return salida


class RunConfigForm(NetForm):
    """Configuración de una corrida (RunConfig): red, masa inicial, entrada y formato"""

    initial = forms.CharField(required=False, label='Masa inicial')
    input = forms.CharField(required=False, label='Entrada')
    format = forms.ChoiceField(choices=FORMATOS, required=False, label='Formato')

    def clean_input(self):
        entrada = self.cleaned_data.get('input') or '-'
        if entrada != '-' and not Path(entrada).is_file():
            raise forms.ValidationError(f"no existe el archivo de entrada {entrada}")
        return entrada

    def clean_format(self):
        return self.cleaned_data.get('format') or 'sparse'

    def clean(self):
        cleaned_data = super().clean()
        net = cleaned_data.get('net')
        if net is None:
            return cleaned_data

        inicial = (cleaned_data.get('initial') or 'ignorance').strip()
        if inicial == 'ignorance':
            cleaned_data['initial'] = ignorance_mass(net)
        else:
            try:
                cleaned_data['initial'] = parse_mass_record(inicial, net)
            except NetError as exc:
                raise forms.ValidationError({'initial': f"masa inicial inválida: {exc}"}) from exc

        if cleaned_data.get('format') == 'dense' and net.n > MAX_PLAZAS_DENSO:
            raise forms.ValidationError({
                'format': f"la forma densa admite hasta {MAX_PLAZAS_DENSO} plazas y la red tiene {net.n}"
            })
        return cleaned_data
