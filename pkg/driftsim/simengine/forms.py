import math

from django import forms
from django.core.exceptions import ValidationError


class VectorField(forms.Field):
    """List of ``size`` finite numbers."""

    def __init__(self, size, **kwargs):
        self.size = size
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (list, tuple)) or len(value) != self.size:
            raise ValidationError(f'ожидается список из {self.size} чисел')
        try:
            numbers = [float(item) for item in value]
        except (TypeError, ValueError):
            raise ValidationError('элементы должны быть числами')
        if not all(math.isfinite(item) for item in numbers):
            raise ValidationError('элементы должны быть конечными')
        return numbers


class PolygonField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (list, tuple)) or len(value) < 3:
            raise ValidationError('многоугольнику нужно не меньше трёх '
                                  'вершин')
        vertex = VectorField(2)
        return [vertex.clean(item) for item in value]


def _positive(value):
    if value is not None and value <= 0:
        raise ValidationError('значение должно быть положительным')


def _non_negative(value):
    if value is not None and value < 0:
        raise ValidationError('значение не может быть отрицательным')


def _power_of_two(value):
    if value is not None and (value < 2 or value & (value - 1)):
        raise ValidationError('размер сетки должен быть степенью двойки')


class SimForm(forms.Form):
    name = forms.CharField(required=False)
    dT_s = forms.FloatField(validators=[_positive])
    dT_c = forms.FloatField(validators=[_positive])
    t_end = forms.FloatField(validators=[_positive])
    seed = forms.IntegerField(min_value=0)
    r_s = forms.FloatField(validators=[_positive])

    def clean(self):
        cleaned = super().clean()
        dT_s, dT_c = cleaned.get('dT_s'), cleaned.get('dT_c')
        if dT_s and dT_c:
            ratio = dT_s / dT_c
            if dT_s < dT_c or abs(ratio - round(ratio)) > 1e-9:
                self.add_error('dT_s', 'период датчиков должен быть кратен '
                                       'периоду управления')
        return cleaned


class TurbulenceForm(forms.Form):
    sigma = forms.FloatField(validators=[_non_negative])
    L = forms.FloatField(validators=[_positive])
    grid_size = forms.IntegerField(validators=[_power_of_two])
    cell = forms.FloatField(validators=[_positive])
    spreading_exponent = forms.FloatField(required=False,
                                          validators=[_positive])


class GustForm(forms.Form):
    amplitude = forms.FloatField(validators=[_non_negative])
    direction = VectorField(2)
    t_start = forms.FloatField()
    duration = forms.FloatField(validators=[_positive])
    origin = VectorField(2, required=False)
    propagation_speed = forms.FloatField(required=False,
                                         validators=[_positive])
    front_width = forms.FloatField(required=False, validators=[_positive])

    def clean_direction(self):
        direction = self.cleaned_data['direction']
        if math.hypot(*direction) == 0:
            raise ValidationError('направление порыва не может быть нулевым')
        return direction


class MaskForm(forms.Form):
    x_min = forms.FloatField()
    y_min = forms.FloatField()
    x_max = forms.FloatField()
    y_max = forms.FloatField()

    def clean(self):
        cleaned = super().clean()
        for low, high in (('x_min', 'x_max'), ('y_min', 'y_max')):
            if (cleaned.get(low) is not None
                    and cleaned.get(high) is not None
                    and cleaned[low] > cleaned[high]):
                self.add_error(high, 'граница меньше начала области')
        return cleaned


class WindForm(forms.Form):
    mean = VectorField(2, required=False)


class GainsForm(forms.Form):
    alpha1 = forms.FloatField(required=False)
    alpha2 = forms.FloatField(required=False)
    k_s = forms.FloatField(required=False)
    beta = forms.FloatField(required=False)
    k_p = forms.FloatField(required=False)
    k_i = forms.FloatField(required=False)
    k_d = forms.FloatField(required=False)


class VehicleForm(forms.Form):
    id = forms.IntegerField(min_value=0)
    m = forms.FloatField(validators=[_positive])
    J = VectorField(3)
    f_max = forms.FloatField(validators=[_positive])
    C_d = forms.FloatField(validators=[_positive])
    A = VectorField(3)
    r_cv = forms.FloatField(validators=[_positive])
    r_ce_min = forms.FloatField(validators=[_non_negative])
    r_ce_max = forms.FloatField(validators=[_non_negative])
    v_w_op = forms.FloatField(validators=[_positive])
    r_min = forms.FloatField(required=False, validators=[_non_negative])
    thrust_derate = forms.FloatField(required=False, validators=[_positive],
                                     max_value=1.0)
    drag_scale = forms.FloatField(required=False, validators=[_positive])
    drift_enabled = forms.NullBooleanField(required=False)
    v_o_max = forms.FloatField(required=False, validators=[_non_negative])
    position = VectorField(3)
    heading = forms.FloatField(required=False)
    goal = VectorField(2)

    def clean(self):
        cleaned = super().clean()
        if (cleaned.get('r_ce_min') is not None
                and cleaned.get('r_ce_max') is not None
                and cleaned['r_ce_min'] > cleaned['r_ce_max']):
            self.add_error('r_ce_max', 'r_ce_max меньше r_ce_min')
        position = cleaned.get('position')
        if position is not None and position[2] <= 0:
            self.add_error('position', 'аппарат должен стартовать в воздухе')
        return cleaned


class ObstacleForm(forms.Form):
    kind = forms.ChoiceField(choices=(('disc', 'диск'),
                                      ('polygon', 'многоугольник')))
    center = VectorField(2, required=False)
    radius = forms.FloatField(required=False, validators=[_positive])
    vertices = PolygonField(required=False)
    velocity = VectorField(2, required=False)

    def clean(self):
        cleaned = super().clean()
        kind = cleaned.get('kind')
        if kind == 'disc':
            for name in ('center', 'radius'):
                if cleaned.get(name) is None and name not in self.errors:
                    self.add_error(name, 'обязательное поле для диска')
        if kind == 'polygon' and cleaned.get('vertices') is None:
            if 'vertices' not in self.errors:
                self.add_error('vertices', 'обязательное поле для '
                                           'многоугольника')
        return cleaned
