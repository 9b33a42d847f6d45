from django.test import SimpleTestCase

from animalab import encoding, exceptions, hardcode
from animalab.core import Animal
from animalab.render import render_svg


class RenderTests(SimpleTestCase):
    def setUp(self):
        self.animal = encoding.decode([0, 1, -1, 0, 1])

    def test_single_vertex(self):
        svg = render_svg(Animal([(0, 0)]))
        self.assertTrue(svg.startswith('<svg'))
        self.assertEqual(svg.count('<polygon'), 1)

    def test_one_shape_per_vertex(self):
        squares = render_svg(self.animal)
        dominoes = render_svg(self.animal, hardcode.render_dominoes)
        self.assertEqual(squares.count('<polygon'), len(self.animal))
        self.assertEqual(dominoes.count('<rect'), len(self.animal))
        self.assertNotIn('<polygon', dominoes)

    def test_deterministic(self):
        self.assertEqual(render_svg(self.animal), render_svg(self.animal))

    def test_color_order(self):
        svg = render_svg(self.animal, color_order=True)
        self.assertEqual(svg.count('rgb(0,0,255)'), 1)
        self.assertEqual(svg.count('rgb(255,0,0)'), 1)
        self.assertNotIn('rgb(0,0,255)', render_svg(self.animal))

    def test_unknown_style(self):
        with self.assertRaises(exceptions.DomainError):
            render_svg(self.animal, 'hexagons')
