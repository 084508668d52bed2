import json
import math

import numpy as np
import pytest

from utils.helper import ensurelist, format_float, to_json, rational_label, point_label


def test_format_float():
    assert format_float(0.1) == '0.10000000000000001'
    assert format_float(1) == '1'
    assert format_float(float('nan')) == 'NaN'
    assert format_float(-math.inf) == '-Infinity'
    x = 2. / 3.
    assert float(format_float(x)) == x


def test_to_json():
    obj = {'b': 1, 'a': [0.5, np.float64(1. / 3.)], 'c': None, 'd': True, 'e': 'x"y', 'f': {}, 'g': []}
    text = to_json(obj)
    assert list(json.loads(text)) == ['b', 'a', 'c', 'd', 'e', 'f', 'g']
    assert json.loads(text)['a'][1] == 1. / 3.
    assert '0.33333333333333331' in text
    assert to_json(np.array([[1., 2.], [3., 4.]])) == '[\n  [1, 2],\n  [3, 4]\n]'
    with pytest.raises(TypeError):
        to_json({'x': object()})


def test_to_json_non_finite_and_control_characters():
    obj = {'nan': float('nan'), 'inf': [1., -math.inf], 's': 'tab\there\x01 \\ "q"', 'key\x02': np.float64(np.inf)}
    parsed = json.loads(to_json(obj))
    assert parsed == {'nan': None, 'inf': [1., None], 's': 'tab\there\x01 \\ "q"', 'key\x02': None}


def test_labels():
    assert rational_label(0.25) == '1/4'
    assert rational_label(1.) == '1'
    assert rational_label(1. / 3.) == '1/3'
    assert point_label([0.5, 0.25]) == '(1/2, 1/4)'


def test_ensurelist():
    assert ensurelist((1, 2)) == [1, 2]
    assert ensurelist(np.arange(2)) == [0, 1]
    assert ensurelist(3) == [3]
