import logging
from typing import AbstractSet, Dict, List, Optional, Tuple

from core.fd_cover import DependencyCover
from utils.interfaces import ISchemaBuilder
from utils import (
    ColumnKind, ColumnProfile, DependencyGraph, DependencyNode, Dimension, DuplicateDimensionName,
    Fact, FunctionalDependency, Hierarchy, Level, MeasureSpec, MultidimensionalSchema,
    SchemaConstants
)

logger = logging.getLogger(__name__)


class SchemaBuilder(ISchemaBuilder):
    """Dependency graph, hierarchies, dimensions and the assembled schema"""

    def build_dependency_graph(self, fds: List[FunctionalDependency], measures: AbstractSet[str],
                               profiles: List[ColumnProfile]) -> DependencyGraph:
        """
        Collapse equivalence classes and keep the cover edges between class parameters.
        Args:
            fds: Minimal cover
            measures: Measure attributes, left out of the graph
            profiles: Profiles of every attribute, in column order
        Returns:
            DependencyGraph with one node per class or unrelated attribute
        """
        position = {p.attribute: i for i, p in enumerate(profiles)}
        kinds = {p.attribute: p.kind for p in profiles}
        attributes = [p.attribute for p in profiles if p.attribute not in measures]
        fds = [fd for fd in fds if fd.lhs in position and fd.rhs in position
               and fd.lhs not in measures and fd.rhs not in measures]

        parameter_of = {a: a for a in attributes}
        weak: Dict[str, Tuple[str, ...]] = {}
        for members in DependencyCover.equivalence_classes(fds):
            ordered = sorted(members, key=position.get)
            identifiers = [a for a in ordered if kinds[a] == ColumnKind.IDENTIFIER]
            parameter = (identifiers or ordered)[0]
            weak[parameter] = tuple(a for a in ordered if a != parameter)
            for a in ordered:
                parameter_of[a] = parameter
            logger.debug("Collapsed %s into parameter '%s'", ordered, parameter)

        parameters = [a for a in attributes if parameter_of[a] == a]
        collapsed = {(parameter_of[fd.lhs], parameter_of[fd.rhs]) for fd in fds
                     if parameter_of[fd.lhs] != parameter_of[fd.rhs]}
        edges = DependencyCover.minimal_cover([FunctionalDependency(a, b) for a, b in collapsed])
        nodes = tuple(DependencyNode(p, weak.get(p, ())) for p in parameters)
        return DependencyGraph(nodes, tuple(fd.pair for fd in edges))

    def extract_hierarchies(self, graph: DependencyGraph) -> List[Hierarchy]:
        """All maximal root-to-sink paths, named H1, H2, ... by root then path"""
        paths: List[Tuple[str, ...]] = []

        def walk(path: Tuple[str, ...]) -> None:
            successors = graph.successors(path[-1])
            if not successors:
                paths.append(path)
            for successor in successors:
                walk(path + (successor,))

        for root in graph.roots():
            walk((root,))
        paths.sort()
        hierarchies = [
            Hierarchy(f"{SchemaConstants.HIERARCHY_PREFIX}{i + 1}",
                      tuple(Level(p, graph.node(p).weak_attributes) for p in path))
            for i, path in enumerate(paths)
        ]
        logger.info("Extracted %d hierarchies", len(hierarchies))
        return hierarchies

    def group_dimensions(self, hierarchies: List[Hierarchy],
                         names: Optional[Dict[str, str]] = None) -> List[Dimension]:
        """
        One dimension per root parameter, D1, D2, ... in root name order.
        A level reachable from several roots stays in the first dimension claiming it;
        later hierarchies are cut before it and cut paths that became prefixes are dropped.
        Args:
            hierarchies: Output of extract_hierarchies
            names: User names keyed by default dimension name or by root attribute
        Raises:
            DuplicateDimensionName: If two dimensions end up with the same name
        """
        names = names or {}
        by_root: Dict[str, List[Hierarchy]] = {}
        for hierarchy in hierarchies:
            by_root.setdefault(hierarchy.root, []).append(hierarchy)
        dimensions, used = [], set()
        claimed: Dict[str, str] = {}
        for i, root in enumerate(sorted(by_root)):
            default = f"{SchemaConstants.DIMENSION_PREFIX}{i + 1}"
            name = names.get(default, names.get(root, default))
            if name in used:
                raise DuplicateDimensionName(name)
            used.add(name)
            members = _trim_claimed(by_root[root], claimed, name)
            attributes = frozenset().union(*(h.attributes for h in members))
            for level in (level for h in members for level in h.levels):
                claimed[level.parameter] = name
            dimensions.append(Dimension(name, tuple(attributes), tuple(members)))
        return dimensions

    def assemble_schema(self, fact_name: str, measures: List[MeasureSpec], dimensions: List[Dimension],
                        schema_name: str) -> MultidimensionalSchema:
        """
        Link the measures to the dimensions. Measures are not checked against the roots:
        the fact is aggregated over all of them.
        Raises:
            InvariantViolation: If an attribute is claimed by two dimensions
        """
        return MultidimensionalSchema(schema_name, Fact(fact_name, tuple(measures)), tuple(dimensions))


def _trim_claimed(hierarchies: List[Hierarchy], claimed: Dict[str, str], dimension: str) -> List[Hierarchy]:
    """Cut every hierarchy before its first level owned by an earlier dimension"""
    cut = []
    for hierarchy in hierarchies:
        levels = hierarchy.levels
        for depth, level in enumerate(levels):
            if level.parameter in claimed:
                logger.info("Level '%s' stays in dimension '%s'; %s of '%s' stops before it",
                            level.parameter, claimed[level.parameter], hierarchy.name, dimension)
                levels = levels[:depth]
                break
        cut.append(Hierarchy(hierarchy.name, levels))
    paths = [h.path for h in cut]
    kept = []
    for hierarchy in cut:
        path = hierarchy.path
        longer = any(other != path and other[:len(path)] == path for other in paths)
        if not longer and path not in [h.path for h in kept]:
            kept.append(hierarchy)
    return kept
