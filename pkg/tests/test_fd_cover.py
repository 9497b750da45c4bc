import random
import unittest

from utils import FunctionalDependency
from core import DependencyCover
from tests.generators import random_dag_fds


def fds(*pairs):
    return [FunctionalDependency(a, b) for a, b in pairs]


class TestMinimalCover(unittest.TestCase):

    def test_shortcut_is_removed(self):
        cover = DependencyCover.minimal_cover(fds(('a', 'b'), ('b', 'c'), ('a', 'c')))
        self.assertEqual([fd.pair for fd in cover], [('a', 'b'), ('b', 'c')])

    def test_duplicates_keep_the_lowest_error(self):
        cover = DependencyCover.minimal_cover([FunctionalDependency('a', 'b', 0.1), FunctionalDependency('a', 'b', 0.02)])
        self.assertEqual(cover, [FunctionalDependency('a', 'b', 0.02)])

    def test_equivalent_attributes_keep_both_directions(self):
        cover = DependencyCover.minimal_cover(fds(('code', 'name'), ('name', 'code'),
                                                  ('code', 'continent'), ('name', 'continent')))
        self.assertEqual([fd.pair for fd in cover], [('code', 'name'), ('name', 'code'), ('name', 'continent')])

    def test_empty_input(self):
        self.assertEqual(DependencyCover.minimal_cover([]), [])

    def test_random_acyclic_graphs(self):
        rng = random.Random(42)
        for _ in range(100):
            dependencies = random_dag_fds(rng)
            cover = DependencyCover.minimal_cover(dependencies)
            closure = DependencyCover.transitive_closure(dependencies)
            with self.subTest(dependencies=[fd.pair for fd in dependencies]):
                self.assertEqual(DependencyCover.transitive_closure(cover), closure)
                self.assertEqual(DependencyCover.minimal_cover(cover), cover)
                for fd in cover:
                    rest = [other for other in cover if other != fd]
                    self.assertNotIn(fd.pair, DependencyCover.transitive_closure(rest))


class TestEquivalenceClasses(unittest.TestCase):

    def test_cycles_form_classes(self):
        classes = DependencyCover.equivalence_classes(fds(
            ('code', 'name'), ('name', 'code'), ('name', 'continent'),
            ('x', 'y'), ('y', 'z'), ('z', 'x'),
        ))
        self.assertEqual(classes, [frozenset({'code', 'name'}), frozenset({'x', 'y', 'z'})])

    def test_acyclic_dependencies_have_no_class(self):
        self.assertEqual(DependencyCover.equivalence_classes(fds(('a', 'b'), ('b', 'c'))), [])


class TestTransitiveClosure(unittest.TestCase):

    def test_chain(self):
        closure = DependencyCover.transitive_closure(fds(('a', 'b'), ('b', 'c')))
        self.assertEqual(closure, {('a', 'b'), ('b', 'c'), ('a', 'c')})

    def test_cycle_excludes_reflexive_pairs(self):
        closure = DependencyCover.transitive_closure(fds(('a', 'b'), ('b', 'a')))
        self.assertEqual(closure, {('a', 'b'), ('b', 'a')})
