"""
Lattice geometry, directed animals and their layers.

The lattice is the rotated square lattice Z x N: a vertex (x, y) has
y >= 0 and x + y even. Parents of (x, y) are (x - 1, y - 1) and
(x + 1, y - 1).
"""
from collections import namedtuple
from functools import cmp_to_key, cached_property

import enum
import json
import math

import networkx as nx

from . import exceptions, hardcode


class Vertex(namedtuple('Vertex', ['x', 'y'])):
    __slots__ = ()

    def __new__(cls, x, y):
        x, y = int(x), int(y)
        if y < 0 or (x + y) % 2:
            raise exceptions.InvalidVertex((x, y))
        return super(Vertex, cls).__new__(cls, x, y)

    def parents(self):
        if self.y == 0:
            return ()
        return (Vertex(self.x - 1, self.y - 1), Vertex(self.x + 1, self.y - 1))

    def children(self):
        return (Vertex(self.x - 1, self.y + 1), Vertex(self.x + 1, self.y + 1))

    def mirror(self):
        return Vertex(-self.x, self.y)


class _Empty(enum.Enum):
    EMPTY = 'empty'

    def __bool__(self):
        return False

    def __len__(self):
        return 0

    def __iter__(self):
        return iter(())

    def __repr__(self):
        return 'EMPTY'


# The absorbed state of the layer chains, never an empty AdmissibleSet.
EMPTY = _Empty.EMPTY


class AdmissibleSet(tuple):
    """A non-empty, strictly increasing set of integers of one parity."""
    __slots__ = ()

    def __new__(cls, elems):
        elems = tuple(sorted(set(int(e) for e in elems)))
        if not elems or len({e % 2 for e in elems}) != 1:
            raise exceptions.InvalidAdmissibleSet(elems)
        return super(AdmissibleSet, cls).__new__(cls, elems)

    @property
    def min(self):
        return self[0]

    @property
    def max(self):
        return self[-1]

    @property
    def parity(self):
        return self[0] % 2

    def shift(self, k):
        return AdmissibleSet(e + k for e in self)

    def mirror(self):
        return AdmissibleSet(-e for e in self)

    def __repr__(self):
        return 'AdmissibleSet(%s)' % ', '.join(str(e) for e in self)


def admissible_or_empty(elems):
    elems = tuple(elems)
    return AdmissibleSet(elems) if elems else EMPTY


def eta(A):
    return math.prod(b - a - 1 for a, b in zip(A, A[1:]))


def eta_plus(F):
    F = sorted(F)
    if not F:
        raise exceptions.DomainError('eta_plus', F)
    return math.prod(b - a + 1 for a, b in zip(F, F[1:]))


def augment(A):
    return AdmissibleSet({a - 1 for a in A} | {a + 1 for a in A})


def ball_vertices(r):
    if r < 0:
        raise exceptions.DomainError('ball_vertices', r)
    return tuple(
        Vertex(x, y)
        for y in range(r + 1)
        for x in range(-r, r + 1)
        if (x + y) % 2 == 0
    )


def in_ball(v, r):
    return abs(v[0]) <= r and 0 <= v[1] <= r


def in_cone(v, w):
    # w is in the open upward cone of v: higher, within the light cone
    return w[1] > v[1] and abs(w[0] - v[0]) <= w[1] - v[1]


class Animal(object):
    """
    A finite directed animal, immutable.

    Vertices are kept sorted by (y, x) with a per-height index of sorted
    x coordinates.
    """

    def __init__(self, vertices, validate=True):
        vertex_set = frozenset(Vertex(*v) for v in vertices)
        if validate:
            reason = _animal_violation(vertex_set)
            if reason:
                raise exceptions.InvalidAnimal(reason)
        self.vertex_set = vertex_set
        self.vertices = tuple(sorted(vertex_set, key=lambda v: (v.y, v.x)))
        rows = dict()
        for v in self.vertices:
            rows.setdefault(v.y, []).append(v.x)
        self.rows = {y: tuple(xs) for y, xs in rows.items()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            vertices = [tuple(v) for v in data['vertices']]
        except (KeyError, TypeError):
            raise exceptions.InvalidAnimal(
                'expected {"vertices": [[x, y], ...]}')
        return cls(vertices)

    def to_json(self):
        return {'vertices': [[v.x, v.y] for v in self.vertices]}

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return tuple(v) in self.vertex_set

    def __eq__(self, other):
        if isinstance(other, Animal):
            return self.vertex_set == other.vertex_set
        return NotImplemented

    def __hash__(self):
        return hash(self.vertex_set)

    def __repr__(self):
        return 'Animal(%s)' % ', '.join('(%d,%d)' % v for v in self.vertices)

    @property
    def height(self):
        return self.vertices[-1].y

    @property
    def width(self):
        xs = [v.x for v in self.vertices]
        return max(xs) - min(xs)

    def sources(self):
        # Only floor vertices lack a parent.
        return self.rows.get(0, ())

    def layer(self, n):
        return layer(self, n)

    def layers(self):
        return [AdmissibleSet(self.rows[y]) for y in range(self.height + 1)]

    def mirror(self):
        return Animal((v.mirror() for v in self.vertices), validate=False)

    def restrict(self, r):
        return Animal(
            (v for v in self.vertices if in_ball(v, r)), validate=False)

    def with_vertex(self, v):
        return Animal(self.vertex_set | {Vertex(*v)}, validate=False)

    @cached_property
    def order_graph(self):
        # Reachability for the partial order only needs the next vertex
        # up in the same column and the first one above in each
        # neighbouring column.
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        columns = dict()
        for v in self.vertices:
            columns.setdefault(v.x, []).append(v.y)
        for v in self.vertices:
            for dx in (-1, 0, 1):
                above = [y for y in columns.get(v.x + dx, ()) if y > v.y]
                if above:
                    graph.add_edge(v, Vertex(v.x + dx, above[0]))
        return graph

    def descendants(self, v):
        cache = self.__dict__.setdefault('_descendants', dict())
        if v not in cache:
            cache[v] = frozenset(nx.descendants(self.order_graph, v))
        return cache[v]


def _animal_violation(vertex_set):
    if not vertex_set:
        return 'it is empty'
    for v in vertex_set:
        if v.y > 0 and not any(p in vertex_set for p in v.parents()):
            return 'vertex (%d,%d) has no parent' % v
    return ''


class Classification(namedtuple('Classification', [
        'valid', 'pyramid', 'nonneg', 'nonpos', 'compact_source',
        'reason'])):
    __slots__ = ()

    def __bool__(self):
        return self.valid


def is_directed_animal(s):
    try:
        vertex_set = frozenset(Vertex(*v) for v in s)
    except exceptions.InvalidVertex as error:
        return Classification(False, False, False, False, False,
                              'vertex %s violates parity' % (error.vertex,))
    reason = _animal_violation(vertex_set)
    if reason:
        return Classification(False, False, False, False, False, reason)
    floor = sorted((v.x for v in vertex_set if v.y == 0), reverse=True)
    pyramid = floor == [0]
    xs = [v.x for v in vertex_set]
    compact = floor == list(range(0, -2 * len(floor), -2))
    return Classification(
        True, pyramid, pyramid and min(xs) >= 0, pyramid and max(xs) <= 0,
        compact, '')


def layer(a, n):
    return admissible_or_empty(a.rows.get(n, ()))


def compare_partial(a, b, A):
    a, b = Vertex(*a), Vertex(*b)
    if a == b:
        return hardcode.order_equal
    if b in A.descendants(a):
        return hardcode.order_less
    if a in A.descendants(b):
        return hardcode.order_greater
    return hardcode.order_incomparable


def sort_total(A, mirror=False):
    sign = -1 if mirror else 1

    def _cmp(a, b):
        relation = compare_partial(a, b, A)
        if relation == hardcode.order_less:
            return -1
        if relation == hardcode.order_greater:
            return 1
        if relation == hardcode.order_equal:
            return 0
        # incomparable vertices sit in distinct columns
        return -sign if a.x > b.x else sign

    return sorted(A.vertices, key=cmp_to_key(_cmp))
