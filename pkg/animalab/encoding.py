"""
The bijection between simple directed animals and skip-free paths.

A path x_0, x_1, ... is decoded by dropping a domino from infinity at
column x_k for every k: it lands at 1 + the highest vertex already in a
neighbouring column, or on the floor when both are empty.
"""
from collections import namedtuple

import logging

from . import exceptions, hardcode
from .core import Animal, Vertex, sort_total

logger = logging.getLogger(__name__)


class PathCheck(namedtuple('PathCheck', ['valid', 'index', 'condition'])):
    __slots__ = ()

    def __bool__(self):
        return self.valid


def _first_violation(p, path_class):
    if not len(p):
        return PathCheck(False, 0, 'b')
    p = [int(x) for x in p]
    if path_class in (hardcode.path_class_pyramid, hardcode.path_class_nonneg):
        if p[0] != 0:
            return PathCheck(
                False, 0, 'c' if path_class == hardcode.path_class_pyramid
                else 'd')
    elif p[0] % 2:
        return PathCheck(False, 0, 'b')
    running_min = p[0]
    for k in range(1, len(p)):
        step = p[k] - p[k - 1]
        if step != 1 and step >= 0:
            return PathCheck(False, k, 'a')
        if path_class == hardcode.path_class_pyramid:
            if p[k] < running_min - 1:
                return PathCheck(False, k, 'c')
        elif path_class == hardcode.path_class_nonneg:
            if p[k] < 0:
                return PathCheck(False, k, 'd')
        elif p[k] <= running_min - 2 and p[k] % 2:
            return PathCheck(False, k, 'b')
        running_min = min(running_min, p[k])
    return PathCheck(True, None, None)


def validate(p, path_class=hardcode.path_class_any):
    """
    Checks condition (a) plus (b) for `any`, (c) for `pyramid` and (d)
    for `nonneg_pyramid`. The result is falsy on failure and carries the
    first violating index and condition.
    """
    if path_class not in dict(hardcode.path_class):
        raise exceptions.DomainError('validate', path_class)
    return _first_violation(p, path_class)


def check_path(p, path_class=hardcode.path_class_any):
    result = validate(p, path_class)
    if not result:
        raise exceptions.InvalidPath(result.index, result.condition)
    return p


def path_sources(p):
    sources = [p[0]]
    running_min = p[0]
    for x in p[1:]:
        if x <= running_min - 2:
            sources.append(x)
        running_min = min(running_min, x)
    return sources


def decode_vertices(p):
    # Vertices in construction order. Each column keeps its current top.
    check_path(p)
    top = dict()
    vertices = []
    for x in p:
        x = int(x)
        y = 1 + max(top.get(x - 1, -1), top.get(x + 1, -1))
        top[x] = y
        vertices.append(Vertex(x, y))
    return vertices


def decode(p):
    return Animal(decode_vertices(p), validate=False)


def encode(a):
    return [v.x for v in sort_total(a)]


def drop_domino(a, x):
    heights = [v.y for v in a if v.x in (x - 1, x + 1)]
    v = Vertex(x, 1 + max(heights, default=-1))
    if v in a:
        raise exceptions.DomainError('drop_domino', (x, a))
    return a.with_vertex(v)


class WindowDecoder(object):
    """
    Streaming decoder that only keeps what lands inside the ball B(r).

    Columns with |x| > 2r + 1 are ignored and column heights are capped
    at min(r + 1, 2r + 1 - |x|). Capped heights are exactly
    min(true height, cap), because the cap never drops by more than one
    between neighbouring columns, so every vertex reported inside B(r)
    sits at its true height.
    """

    def __init__(self, radius):
        if radius < 0:
            raise exceptions.DomainError('WindowDecoder', radius)
        self.radius = radius
        self.span = 2 * radius + 1
        self.top = dict()
        self.vertices = []
        self.drops = 0

    def cap(self, x):
        return min(self.radius + 1, self.span - abs(x))

    def drop(self, x):
        self.drops += 1
        if abs(x) > self.span:
            return None
        y = min(1 + max(self.top.get(x - 1, -1), self.top.get(x + 1, -1)),
                self.cap(x))
        self.top[x] = y
        if abs(x) <= self.radius and y <= self.radius:
            v = Vertex(x, y)
            self.vertices.append(v)
            return v
        return None

    def extend(self, xs):
        for x in xs:
            self.drop(int(x))
        return self

    def animal(self):
        return Animal(self.vertices, validate=False)


def _child_steps(x, running_min, path_class):
    # Admissible next values from x under (a), filtered by class.
    yield x + 1
    if path_class == hardcode.count_half:
        low = 0
    else:
        low = running_min - 1
    for v in range(x - 1, low - 1, -1):
        yield v


def enumerate_paths(kind, n, sources=None):
    """
    Yields every encoding path of length n for the animal class `kind`.

    Kinds are the count kinds of hardcode. With `sources` (a sequence of
    even integers) the paths of the animals with exactly that source set
    are produced instead.
    """
    if n < 1:
        return
    if sources is not None:
        sources = sorted(set(sources), reverse=True)
        yield from _source_paths(sources, n)
        return
    if kind == hardcode.count_compact:
        for p in range(n):
            yield from _source_paths([-2 * i for i in range(p + 1)], n)
        return
    if kind not in (hardcode.count_pyramid, hardcode.count_half):
        raise exceptions.DomainError('enumerate_paths', kind)

    path = [0]

    def _walk(running_min):
        if len(path) == n:
            yield tuple(path)
            return
        for v in _child_steps(path[-1], running_min, kind):
            path.append(v)
            yield from _walk(min(running_min, v))
            path.pop()

    yield from _walk(0)


def _source_paths(sources, n):
    if len(sources) > n:
        return
    path = [sources[0]]

    def _walk(running_min, used):
        remaining = n - len(path)
        if remaining < len(sources) - used:
            return
        if remaining == 0:
            yield tuple(path)
            return
        x = path[-1]
        candidates = [x + 1] + list(range(x - 1, running_min - 2, -1))
        if used < len(sources) and sources[used] <= running_min - 2:
            candidates.append(sources[used])
        for v in candidates:
            path.append(v)
            yield from _walk(min(running_min, v),
                             used + (1 if v <= running_min - 2 else 0))
            path.pop()

    yield from _walk(sources[0], 1)


def iter_valid_paths(length, lo, hi, start=None):
    """
    Every path of the class `any` with `length` values, all in [lo, hi].
    Paths start at every even value of the window, or at `start` only.
    """
    if length < 1 or lo > hi:
        return
    if start is not None:
        starts = [start] if lo <= start <= hi and not start % 2 else []
    else:
        starts = [s for s in range(lo, hi + 1) if not s % 2]
    path = []

    def _walk(running_min):
        if len(path) == length:
            yield tuple(path)
            return
        x = path[-1]
        if x + 1 <= hi:
            path.append(x + 1)
            yield from _walk(running_min)
            path.pop()
        for v in range(x - 1, lo - 1, -1):
            # (b): a new source lands on an even column
            if v <= running_min - 2 and v % 2:
                continue
            path.append(v)
            yield from _walk(min(running_min, v))
            path.pop()

    for s in starts:
        path.append(s)
        yield from _walk(s)
        path.pop()
