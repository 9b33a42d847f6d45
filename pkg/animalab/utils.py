from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

import json
import os
from fractions import Fraction

from . import hardcode


def get_setting(name):
    """
    Returns the value of an ANIMALAB_* setting.

    The environment wins over the Django settings, which win over the
    defaults declared in hardcode.
    """
    default = getattr(hardcode, 'default_' + name[len('ANIMALAB_'):].lower())
    raw = os.environ.get(name)
    if raw is not None:
        if isinstance(default, bool):
            return raw.strip().lower() in ('1', 'true', 'yes', 'on')
        if isinstance(default, int):
            try:
                value = int(raw)
            except ValueError:
                raise ImproperlyConfigured(
                    "%s must be an integer, got %r" % (name, raw)
                )
            if value < 1:
                raise ImproperlyConfigured(
                    "%s must be a positive number. (Integer)" % name
                )
            return value
        return raw
    if settings.configured:
        return getattr(settings, name, default)
    return default


def step_cap():
    return get_setting('ANIMALAB_STEP_CAP')


def fixture_path(name):
    if os.path.isabs(name):
        return name
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), name)


def fraction_str(value):
    value = Fraction(value)
    return '%d/%d' % (value.numerator, value.denominator)


def parse_fraction(text):
    return Fraction(text)


def parse_int_set(text):
    # '0,2,6' -> (0, 2, 6); blanks are ignored
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ImproperlyConfigured(
            "Sets must be comma separated integers, got %r" % text
        )


def parse_params(pairs):
    # ['n=4', 'F=0,2,6'] -> {'n': 4, 'F': (0, 2, 6)}
    params = dict()
    for pair in pairs or []:
        key, sep, value = pair.partition('=')
        if not sep:
            raise ImproperlyConfigured(
                "Parameters must look like key=value, got %r" % pair
            )
        values = parse_int_set(value)
        params[key.strip()] = values[0] if len(values) == 1 and \
            ',' not in value else values
    return params


def jsonable(value):
    # Fractions become "num/den" strings, big ints decimal strings.
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if abs(value) < 2 ** 53 else str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def dumps(value):
    return json.dumps(jsonable(value), sort_keys=True, indent=2)


def load_json(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


def write_text(path, text):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
