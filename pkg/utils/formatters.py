import json
import re
from typing import Dict, FrozenSet, List, Sequence, Tuple

from utils.constants import (
    Aggregation, ExitStatus, MeasureOrigin, ResultWidgetConstants, SchemaConstants,
    StatusColor, StatusFormatter
)
from utils.containers import (
    CanonicalTable, ColumnProfile, FunctionalDependency, HierarchyHint, MeasureSpec,
    MultidimensionalSchema, RawGrid, TableTypology
)


class ReportFormatter:
    """Formats the per-stage report lines shown on standard error and in the window"""

    @staticmethod
    def format_status(status: ExitStatus) -> Tuple[str, str]:
        """
        Format status text and return corresponding color.
        Args:
            status: Exit status of a pipeline run
        Returns:
            Tuple of (formatted_status, color_hex)
        """
        label = StatusFormatter.STATUS_LABELS.get(status, status.name.replace('_', ' ').title())
        return label, StatusColor.get_color(status)

    @staticmethod
    def format_ingest(n_tables: int, index: int, grid: RawGrid) -> str:
        return (f"ingest: {n_tables} table(s) in '{grid.source_name}', "
                f"using table {index} ({grid.n_rows}x{grid.n_cols})")

    @staticmethod
    def typology_json(typology: TableTypology) -> str:
        """One-line JSON object with one key per typology axis"""
        return json.dumps(typology.to_dict())

    @staticmethod
    def format_typology(typology: TableTypology) -> str:
        axes = typology.to_dict()
        return (f"classify: structure={axes['structure']}, "
                f"cell_content={'+'.join(axes['cell_content'])}, "
                f"header={axes['header']}, arrangement={axes['header_arrangement']}")

    @staticmethod
    def format_normalized(table: CanonicalTable, hints: Sequence[HierarchyHint]) -> List[str]:
        steps = ', '.join(step.name for step in table.provenance.steps) or 'none'
        lines = [f"normalize: {len(table.attributes)} attributes, {table.n_rows} rows (steps: {steps})"]
        lines.extend(f"  hint <{', '.join(hint.levels)}>" for hint in hints)
        return lines

    @staticmethod
    def format_profiles(profiles: Sequence[ColumnProfile]) -> List[str]:
        lines = [f"profile: {len(profiles)} attributes"]
        for p in profiles:
            lines.append(f"  {p.attribute}: {p.kind.value} (distinct={p.distinct_count}, "
                         f"missing={p.null_count}, numeric={p.numeric_fraction:.2f})")
        return lines

    @staticmethod
    def format_measures(measures: Sequence[MeasureSpec]) -> List[str]:
        """The auto count leaves the row count out"""
        auto = [m for m in measures if m.origin == MeasureOrigin.AUTO and m.attribute is not None]
        user = [m for m in measures if m.origin == MeasureOrigin.USER]
        lines = [f"measures: {len(auto)} measures detected ({', '.join(m.name for m in auto) or 'none'})"]
        if user:
            lines.append(f"  {len(user)} user measures ({', '.join(m.name for m in user)})")
        for m in measures:
            source = m.formula or m.attribute or '*'
            aggs = ', '.join(agg.value for agg in m.aggregations)
            lines.append(f"  {m.name} = {source} [{aggs}] origin={m.origin.value}")
        return lines

    @staticmethod
    def format_fds(fds: Sequence[FunctionalDependency], cover: Sequence[FunctionalDependency],
                   classes: Sequence[FrozenSet[str]], distinct: Dict[str, int], threshold: float) -> List[str]:
        lines = [f"fds: {len(fds)} dependencies at threshold {threshold:g}, {len(cover)} in minimal cover"]
        lines.extend(f"  {fd}" for fd in cover)
        for members in classes:
            lines.append(f"  equivalent: {{{', '.join(sorted(members))}}}")
        if distinct:
            lines.append("  distinct: " + ', '.join(f"{a}={n}" for a, n in distinct.items()))
        return lines

    @staticmethod
    def format_fd_lines(fds: Sequence[FunctionalDependency]) -> str:
        return '\n'.join(str(fd) for fd in fds)

    @staticmethod
    def format_schema(schema: MultidimensionalSchema) -> List[str]:
        hierarchies = schema.hierarchies
        lines = [f"schema: {len(hierarchies)} hierarchies, {len(schema.dimensions)} dimensions"]
        for dimension in schema.dimensions:
            names = ', '.join(h.name for h in dimension.hierarchies)
            lines.append(f"  ({dimension.name}, {{{', '.join(dimension.attributes)}}}, {{{names}}})")
        for h in hierarchies:
            lines.append(f"  ({h.name}, <{', '.join(h.path)}>)")
        measures = ', '.join(m.name for m in schema.fact.measures)
        lines.append(f"  ({schema.name}, {schema.fact.name}, {{{measures}}})")
        return lines

    @staticmethod
    def format_table_preview(table: CanonicalTable,
                             limit: int = ResultWidgetConstants.PREVIEW_ROWS) -> str:
        """
        Format the first rows of a canonical table as aligned text.
        Args:
            table: Canonical table
            limit: Maximum number of rows shown
        Returns:
            Formatted text table
        """
        rows = [list(row) for row in table.rows[:limit]]
        widths = [max([len(name)] + [len(row[j]) for row in rows]) for j, name in enumerate(table.attributes)]
        header = " | ".join(f"{name:<{w}}" for name, w in zip(table.attributes, widths))
        lines = [header, "-" * len(header)]
        lines.extend(" | ".join(f"{value:<{w}}" for value, w in zip(row, widths)) for row in rows)
        if table.n_rows > limit:
            lines.append(f"... {table.n_rows - limit} more rows")
        return "\n".join(lines)


class SqlFormatter:
    """Generic SQL DDL for a star schema"""

    @staticmethod
    def table_name(prefix: str, name: str) -> str:
        slug = re.sub(r'[^0-9a-z]+', '_', name.lower()).strip('_') or 'table'
        return f"{prefix}_{slug}"

    @staticmethod
    def quote(identifier: str) -> str:
        return '"' + identifier.replace('"', '""') + '"'

    @staticmethod
    def format_ddl(schema: MultidimensionalSchema) -> str:
        """
        One CREATE TABLE per dimension keyed by its root parameter and one for the fact,
        keyed by all roots with a foreign key to each dimension.
        """
        q = SqlFormatter.quote
        statements = []
        for dimension in schema.dimensions:
            columns = [f"    {q(dimension.root)} {SchemaConstants.DDL_ATTRIBUTE_TYPE} NOT NULL"]
            columns += [f"    {q(a)} {SchemaConstants.DDL_ATTRIBUTE_TYPE}"
                        for a in dimension.attributes if a != dimension.root]
            columns.append(f"    PRIMARY KEY ({q(dimension.root)})")
            statements.append(f"CREATE TABLE {SqlFormatter.table_name('dim', dimension.name)} (\n"
                              + ",\n".join(columns) + "\n);")

        roots = [d.root for d in schema.dimensions]
        columns = [f"    {q(root)} {SchemaConstants.DDL_ATTRIBUTE_TYPE} NOT NULL" for root in roots]
        for measure in schema.fact.measures:
            for agg, column in measure.output_columns():
                kind = SchemaConstants.DDL_COUNT_TYPE if agg == Aggregation.COUNT else SchemaConstants.DDL_MEASURE_TYPE
                columns.append(f"    {q(column)} {kind}")
        columns.append(f"    PRIMARY KEY ({', '.join(q(r) for r in roots)})")
        for dimension in schema.dimensions:
            columns.append(f"    FOREIGN KEY ({q(dimension.root)}) REFERENCES "
                           f"{SqlFormatter.table_name('dim', dimension.name)} ({q(dimension.root)})")
        statements.append(f"CREATE TABLE {SqlFormatter.table_name('fact', schema.fact.name)} (\n"
                          + ",\n".join(columns) + "\n);")
        return "\n\n".join(statements) + "\n"
