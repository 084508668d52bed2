import json
import math
import fractions

import numpy as np


def ensurelist(obj):
    if isinstance(obj, list):
        return obj
    elif isinstance(obj, tuple):
        return list(obj)
    elif isinstance(obj, np.ndarray):
        return obj.tolist()
    else:
        return [obj]


def format_float(x):
    """
    Formats a float with 17 significant digits, which round-trips every 64-bit float.
    """
    x = float(x)
    if math.isnan(x):
        return 'NaN'
    if math.isinf(x):
        return 'Infinity' if x > 0 else '-Infinity'
    return f'{x:.17g}'


def to_json(obj, indent=2, _level=0):
    """
    Serializes nested dicts/lists/tuples/arrays of numbers and strings to JSON text. Floats are written with
    17 significant digits (json.dumps uses the shortest repr, which is not what golden files are diffed against).
    Dict keys keep their insertion order; NaN and infinities, which JSON cannot represent, are written as null.
    """
    pad = ' ' * (indent * (_level + 1))
    end_pad = ' ' * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f'{pad}{_json_str(str(k))}: {to_json(v, indent, _level + 1)}' for k, v in obj.items()]
        return '{\n' + ',\n'.join(items) + f'\n{end_pad}}}'
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = ensurelist(obj)
        if not items:
            return '[]'
        if all(isinstance(item, (int, float, np.integer, np.floating)) and not isinstance(item, bool) for item in items):
            return '[' + ', '.join(to_json(item, indent, _level + 1) for item in items) + ']'
        return '[\n' + ',\n'.join(f'{pad}{to_json(item, indent, _level + 1)}' for item in items) + f'\n{end_pad}]'
    elif obj is None:
        return 'null'
    elif isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    elif isinstance(obj, (int, np.integer)):
        return str(int(obj))
    elif isinstance(obj, (float, np.floating)):
        return format_float(obj) if math.isfinite(obj) else 'null'
    elif isinstance(obj, str):
        return _json_str(obj)
    else:
        raise TypeError(f'cannot serialize to JSON; got type(obj)={type(obj)}')


def _json_str(s):
    return json.dumps(s, ensure_ascii=False)


def rational_label(x, max_denominator=1000):
    """
    Renders a float as a small rational, e.g. 0.25 -> '1/4', 1.0 -> '1'.
    """
    frac = fractions.Fraction(float(x)).limit_denominator(max_denominator)
    return str(frac)


def point_label(coords, max_denominator=1000):
    return '(' + ', '.join(rational_label(c, max_denominator=max_denominator) for c in coords) + ')'
