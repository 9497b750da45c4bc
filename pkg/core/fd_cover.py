import logging
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from utils import FunctionalDependency

logger = logging.getLogger(__name__)


class DependencyCover:
    """Graph operations over unary FDs seen as directed edges lhs -> rhs"""

    @staticmethod
    def _index(fds: Iterable[FunctionalDependency]) -> Dict[str, int]:
        names = sorted({a for fd in fds for a in fd.pair})
        return {name: i for i, name in enumerate(names)}

    @staticmethod
    def _adjacency(edges: Sequence[Tuple[int, int]], size: int) -> csr_matrix:
        if not edges:
            return csr_matrix((size, size), dtype=np.int8)
        rows, cols = zip(*edges)
        return csr_matrix((np.ones(len(edges), dtype=np.int8), (rows, cols)), shape=(size, size))

    @staticmethod
    def _reaches(graph: csr_matrix, source: int, target: int) -> bool:
        order = breadth_first_order(graph, source, directed=True, return_predecessors=False)
        return bool(np.any(order == target))

    @staticmethod
    def minimal_cover(fds: Sequence[FunctionalDependency]) -> List[FunctionalDependency]:
        """
        Drop every dependency implied by a longer path of the remaining ones.
        Edges are visited in (lhs, rhs) order, which makes the result deterministic
        when equivalent attributes offer alternative paths.
        Returns:
            Surviving dependencies sorted by (lhs, rhs); the closure is unchanged
        """
        unique: Dict[Tuple[str, str], FunctionalDependency] = {}
        for fd in sorted(fds):
            unique.setdefault(fd.pair, fd)
        index = DependencyCover._index(unique.values())
        kept = dict(unique)
        for pair in sorted(unique):
            others = [(index[a], index[b]) for a, b in kept if (a, b) != pair]
            graph = DependencyCover._adjacency(others, len(index))
            if DependencyCover._reaches(graph, index[pair[0]], index[pair[1]]):
                del kept[pair]
        logger.debug("Minimal cover keeps %d of %d dependencies", len(kept), len(unique))
        return [kept[pair] for pair in sorted(kept)]

    @staticmethod
    def equivalence_classes(fds: Sequence[FunctionalDependency]) -> List[FrozenSet[str]]:
        """Strongly connected attribute sets of size >= 2, sorted by their sorted members"""
        index = DependencyCover._index(fds)
        if not index:
            return []
        names = sorted(index, key=index.get)
        graph = DependencyCover._adjacency([(index[fd.lhs], index[fd.rhs]) for fd in fds], len(index))
        _, labels = connected_components(graph, directed=True, connection='strong')
        members: Dict[int, Set[str]] = {}
        for name, label in zip(names, labels):
            members.setdefault(int(label), set()).add(name)
        classes = [frozenset(group) for group in members.values() if len(group) >= 2]
        return sorted(classes, key=sorted)

    @staticmethod
    def transitive_closure(fds: Sequence[FunctionalDependency]) -> Set[Tuple[str, str]]:
        """Every (a, b), a != b, with a path from a to b"""
        index = DependencyCover._index(fds)
        names = sorted(index, key=index.get)
        graph = DependencyCover._adjacency([(index[fd.lhs], index[fd.rhs]) for fd in fds], len(index))
        closure = set()
        for name, i in index.items():
            for j in breadth_first_order(graph, i, directed=True, return_predecessors=False):
                if j != i:
                    closure.add((name, names[j]))
        return closure
