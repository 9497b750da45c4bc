import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from core.grid_rules import GridRules
from utils.interfaces import ITableNormalizer
from utils import (
    CanonicalTable, CellContent, ClassifyConstants, HeaderArrangement, HeaderKind, HeaderRepairFailed,
    HierarchyHint, InconsistentCompositeArity, InputValidator, NestedTableUnsupported,
    NormalizationFailed, NotACrossTable, Provenance, RawGrid, Structure, TableTypology,
    TabularSchemaError, TransformConstants, TransformStep, ValueParser
)

logger = logging.getLogger(__name__)

Rows = List[List[str]]

_MERGED = (CellContent.MERGED_CATEGORY, CellContent.MERGED_VALUE)
_MULTIVALUED = (CellContent.MULTIVALUED_SIMPLE, CellContent.MULTIVALUED_COMPOSED)


class TableNormalizer(ITableNormalizer):
    """
    Rewrites a classified grid into a canonical horizontal table.
    normalize plans a list of transform steps from the typology and replays it; the
    same list is stored in the table provenance so the result can be rebuilt from
    the source grid alone.
    """

    def __init__(self, delimiters: str = ClassifyConstants.MULTIVALUE_DELIMITERS):
        self.delimiters = InputValidator.validate_delimiters(delimiters)

    def normalize(self, grid: RawGrid, typology: TableTypology) -> Tuple[CanonicalTable, List[HierarchyHint]]:
        """
        Args:
            grid: Grid as read from the source
            typology: Classification of that grid
        Returns:
            The canonical table and the hierarchy hints harvested from stacked headers
        Raises:
            NestedTableUnsupported: If the table holds nested tables
            NormalizationFailed: If a step fails, with the step named
        """
        if CellContent.NESTED in typology.cell_content:
            raise NestedTableUnsupported(f"Table '{grid.source_name}' contains nested tables")
        steps = self._plan(grid, typology)
        logger.debug("Normalization plan for '%s': %s", grid.source_name, [s.name for s in steps])
        return self.replay_transforms(grid, Provenance(grid.source_name, tuple(steps)))

    def replay_transforms(self, grid: RawGrid, provenance: Provenance) -> Tuple[CanonicalTable, List[HierarchyHint]]:
        """Apply a recorded transform log to the source grid"""
        hints: List[HierarchyHint] = []
        for step in provenance.steps:
            try:
                grid, found = self._apply(step, grid)
            except (TabularSchemaError, ValueError, KeyError) as e:
                raise NormalizationFailed(step.name, str(e))
            hints.extend(found)
        try:
            table = self._to_canonical(grid.texts(), provenance)
        except ValueError as e:
            raise NormalizationFailed('canonical_table', str(e))
        kept = [hint for hint in hints if set(hint.levels) <= set(table.attributes)]
        if len(kept) != len(hints):
            logger.warning("Dropped %d hierarchy hint(s) naming unknown attributes", len(hints) - len(kept))
        logger.info("Normalized '%s' to %d attributes x %d rows", provenance.source_name,
                    len(table.attributes), table.n_rows)
        return table, kept

    def _plan(self, grid: RawGrid, typology: TableTypology) -> List[TransformStep]:
        steps = []
        content = typology.cell_content
        header_rows = typology.header_rows
        cross = typology.structure == Structure.CROSS
        single_row_listing = typology.structure == Structure.LISTING and grid.n_rows == 1 and grid.n_cols > 1
        if typology.structure == Structure.VERTICAL or single_row_listing:
            steps.append(TransformStep('transpose'))
        if typology.header != HeaderKind.NONE and (
                typology.header == HeaderKind.HIERARCHICAL
                or typology.header_arrangement != HeaderArrangement.SINGLE):
            steps.append(TransformStep('normalize_headers', {
                'header': typology.header.value,
                'arrangement': typology.header_arrangement.value,
                'header_rows': header_rows,
                'block_width': typology.block_width,
                'cross': cross,
            }))
            if not cross:
                header_rows = 1
        if any(kind in content for kind in _MERGED):
            steps.append(TransformStep('expand_merged', {'header_rows': header_rows}))
        if typology.structure == Structure.SUPER_ROW:
            steps.append(TransformStep('convert_super_rows', {'header_rows': header_rows}))
        if cross:
            steps.append(TransformStep('unpivot_cross', {'header_rows': header_rows, 'names': None}))
            header_rows = 1
        if any(kind in content for kind in _MULTIVALUED):
            steps.append(TransformStep('explode_multivalued',
                                       {'delimiters': self.delimiters, 'header_rows': header_rows}))
        if typology.header == HeaderKind.NONE:
            steps.append(TransformStep('synthesize_header'))
        return steps

    def _apply(self, step: TransformStep, grid: RawGrid) -> Tuple[RawGrid, List[HierarchyHint]]:
        params = step.params
        if step.name == 'transpose':
            return grid.transpose(), []
        if step.name == 'normalize_headers':
            typology = TableTypology(
                Structure.CROSS if params['cross'] else Structure.HORIZONTAL,
                frozenset({CellContent.SIMPLE}),
                HeaderKind(params['header']),
                HeaderArrangement(params['arrangement']),
                params['header_rows'],
                params['block_width'],
            )
            return self.normalize_headers(grid, typology)
        if step.name == 'expand_merged':
            return self.expand_merged(grid, params['header_rows']), []
        if step.name == 'convert_super_rows':
            return self.convert_super_rows(grid, params['header_rows']), []
        if step.name == 'unpivot_cross':
            names = tuple(params['names']) if params.get('names') else None
            attributes, rows = self._unpivot(grid, names, params['header_rows'])
            return _grid_like(grid, [list(attributes)] + rows), []
        if step.name == 'explode_multivalued':
            return self.explode_multivalued(grid, params['delimiters'], params['header_rows']), []
        if step.name == 'synthesize_header':
            return self.synthesize_header(grid), []
        raise ValueError(f"Unknown transform step '{step.name}'")

    def normalize_headers(self, grid: RawGrid, typology: TableTypology) -> Tuple[RawGrid, List[HierarchyHint]]:
        """
        Reform a table as a single-header table.
        Duplicated header rows are deleted, distributed blocks are stacked under one
        header block and hierarchical headers are flattened into joined names.
        Stacked column rails of cross tables are left in place and reported as a hint.
        Raises:
            HeaderRepairFailed: If distributed blocks disagree with the block width
        """
        if typology.header == HeaderKind.NONE:
            return grid, []
        texts = grid.texts()
        depth = typology.header_rows

        if typology.structure == Structure.CROSS:
            if depth < 2:
                return grid, []
            levels, _ = _rail_names(texts, depth)
            return grid, [HierarchyHint(tuple(levels))]

        if typology.header_arrangement == HeaderArrangement.DUPLICATED:
            header = texts[depth - 1]
            body = [row for row in texts[depth:] if row != header]
            logger.debug("Removed %d repeated header row(s)", grid.n_rows - depth - len(body))
            return _grid_like(grid, texts[:depth] + body), []

        if typology.header_arrangement == HeaderArrangement.DISTRIBUTED:
            width = typology.block_width
            if not width or grid.n_cols % width:
                raise HeaderRepairFailed(f"{grid.n_cols} columns cannot be split into blocks of {width}")
            header = texts[0]
            block = header[:width]
            starts = range(0, grid.n_cols, width)
            if any(header[k:k + width] != block for k in starts):
                raise HeaderRepairFailed(f"Header blocks of width {width} differ: {header}")
            rows = [block] + [row[k:k + width] for k in starts for row in texts[1:] if any(row[k:k + width])]
            return _grid_like(grid, rows), []

        if typology.header == HeaderKind.HIERARCHICAL:
            names = [_flatten_label(key) for key in GridRules.column_keys(texts, depth)]
            return _grid_like(grid, [names] + texts[depth:]), []
        return grid, []

    def expand_merged(self, grid: RawGrid, header_rows: int = 0) -> RawGrid:
        """
        Fill down the blanks of label-like columns.
        HTML spans are already replicated by the reader; value columns are never filled.
        """
        columns = GridRules.fill_down_columns(grid.texts(), header_rows)
        if not columns:
            return grid
        texts = grid.texts()
        for j in columns:
            last = ''
            for row in texts[header_rows:]:
                if grid.n_cols >= 2 and GridRules.is_super_row(row):
                    continue
                if row[j]:
                    last = row[j]
                elif last:
                    row[j] = last
        logger.debug("Filled down columns %s", columns)
        return _grid_like(grid, texts)

    def convert_super_rows(self, grid: RawGrid, header_rows: int = 1) -> RawGrid:
        """
        Turn super rows into leading columns super_row_1..k.
        k is the longest run of consecutive super rows; a run of m rows sets the
        deepest m levels. Rows before the first super row get empty levels.
        """
        texts = grid.texts()
        body = texts[header_rows:]
        flags = [GridRules.is_super_row(row) for row in body]
        depth = max((len(list(run)) for flag, run in itertools.groupby(flags) if flag), default=0)
        if depth == 0:
            return grid
        levels = [''] * depth
        rows: Rows = []
        run: List[str] = []
        for row, flag in zip(body, flags):
            if flag:
                run.append(row[0])
                continue
            if run:
                levels[depth - len(run):] = run
                run = []
            rows.append(levels + row)
        names = [f"{TransformConstants.SUPER_ROW_PREFIX}{i + 1}" for i in range(depth)]
        header = [names + texts[r] if r == header_rows - 1 else [''] * depth + texts[r] for r in range(header_rows)]
        return _grid_like(grid, header + rows)

    def unpivot_cross(self, grid: RawGrid, names: Optional[Tuple[str, ...]] = None,
                      header_rows: int = 1) -> CanonicalTable:
        """
        Turn a cross table into (row label, column label(s), value) tuples.
        Args:
            grid: Cross table with its column rail in the first header_rows rows
            names: (row_dim, col_dim..., value); defaults from the corner cell split on '/'
            header_rows: Number of stacked column rails
        Returns:
            CanonicalTable with one row per non-empty interior cell
        Raises:
            NotACrossTable: If the interior is not numeric or the grid is too small
        """
        attributes, rows = self._unpivot(grid, names, header_rows)
        step = TransformStep('unpivot_cross', {'header_rows': header_rows, 'names': list(names) if names else None})
        return CanonicalTable(tuple(GridRules.unique_names(attributes)), tuple(tuple(r) for r in rows),
                              Provenance(grid.source_name, (step,)))

    def _unpivot(self, grid: RawGrid, names: Optional[Tuple[str, ...]], header_rows: int) -> Tuple[List[str], Rows]:
        if grid.n_rows <= header_rows or grid.n_cols < 2:
            raise NotACrossTable(f"A cross table needs a label rail and a body, got {grid.n_rows}x{grid.n_cols}")
        texts = grid.texts()
        for row in texts[header_rows:]:
            for value in row[1:]:
                if value and not ValueParser.is_numeric(value):
                    raise NotACrossTable(f"Interior value '{value}' is not numeric")
        if names is None:
            levels, row_dim = _rail_names(texts, header_rows)
            names = (row_dim, *levels, TransformConstants.DEFAULT_VALUE)
        if len(names) != header_rows + 2:
            raise NotACrossTable(f"Expected {header_rows + 2} names, got {len(names)}")
        keys = GridRules.column_keys(texts, header_rows, start=1)
        rows = [[row[0], *key, value]
                for row in texts[header_rows:]
                for key, value in zip(keys, row[1:]) if value]
        return list(names), rows

    @staticmethod
    def pivot(table: CanonicalTable, row_dim: str, col_dim: str, value: str) -> Dict[Tuple[str, str], str]:
        """Inverse of unpivot_cross: (row label, column label) -> value"""
        r, c, v = table.index_of(row_dim), table.index_of(col_dim), table.index_of(value)
        cells: Dict[Tuple[str, str], str] = {}
        for row in table.rows:
            key = (row[r], row[c])
            if key in cells:
                raise ValueError(f"Pivot cell {key} occurs twice")
            cells[key] = row[v]
        return cells

    def explode_multivalued(self, grid: RawGrid, delimiters: str, header_rows: int = 0) -> RawGrid:
        """
        Columns whose split parts share one type duplicate the row per value;
        columns with mixed part types are replaced by <name>_1..<name>_k appended at the end.
        Raises:
            InconsistentCompositeArity: If composed cells of one column split into differing counts
        """
        InputValidator.validate_delimiters(delimiters)
        texts = grid.texts()
        body = texts[header_rows:]
        parts = [[ValueParser.split_multivalue(text, delimiters) for text in row] for row in body]
        header = texts[header_rows - 1] if header_rows else [''] * grid.n_cols

        simple, composed = [], {}
        for j in range(grid.n_cols):
            split = [row[j] for row in parts if len(row[j]) > 1]
            if not split:
                continue
            if any(len({ValueParser.coarse_type(p) for p in cell}) > 1 for cell in split):
                arities = {len(cell) for cell in split}
                if len(arities) > 1:
                    raise InconsistentCompositeArity(header[j] or f"#{j + 1}", arities)
                composed[j] = arities.pop()
            else:
                simple.append(j)
        if not simple and not composed:
            return grid

        rows: Rows = []
        for row, row_parts in zip(body, parts):
            options = [row_parts[j] or [''] if j in simple else [row[j]] for j in range(grid.n_cols)]
            for combination in itertools.product(*options):
                out = [v for j, v in enumerate(combination) if j not in composed]
                for j, arity in composed.items():
                    pieces = row_parts[j] if len(row_parts[j]) > 1 else [row[j]]
                    out.extend(pieces + [''] * (arity - len(pieces)))
                rows.append(out)

        head_rows = []
        for r in range(header_rows):
            labels = [v for j, v in enumerate(texts[r]) if j not in composed]
            for j, arity in composed.items():
                labels.extend(f"{texts[r][j]}_{i + 1}" if r == header_rows - 1 else texts[r][j]
                              for i in range(arity))
            head_rows.append(labels)
        logger.debug("Exploded columns %s, split columns %s", simple, sorted(composed))
        return _grid_like(grid, head_rows + rows)

    @staticmethod
    def synthesize_header(grid: RawGrid) -> RawGrid:
        names = [f"{TransformConstants.SYNTHETIC_COLUMN_PREFIX}{j + 1}" for j in range(grid.n_cols)]
        return _grid_like(grid, [names] + grid.texts())

    @staticmethod
    def _to_canonical(texts: Rows, provenance: Provenance) -> CanonicalTable:
        attributes = GridRules.unique_names(texts[0])
        rows = tuple(tuple(row) for row in texts[1:] if any(row))
        return CanonicalTable(tuple(attributes), rows, provenance)


def _grid_like(grid: RawGrid, rows: Sequence[Sequence[str]]) -> RawGrid:
    return RawGrid.from_texts(rows, grid.source_name, grid.origin, grid.dialect)


def _flatten_label(key: Sequence[str]) -> str:
    """Join stacked labels with '_', skipping blanks and repeats of the level above"""
    parts: List[str] = []
    for label in key:
        if label and (not parts or parts[-1] != label):
            parts.append(label)
    return GridRules.attribute_name(TransformConstants.NAME_JOINER.join(parts))


def _rail_names(texts: Rows, depth: int) -> Tuple[List[str], str]:
    """
    Names of the column rail levels and of the row dimension of a cross table.
    A single rail takes both from the corner split on '/'; stacked rails take one name
    per level from the stub cells.
    """
    separator = ClassifyConstants.CORNER_SEPARATOR
    row_dim = TransformConstants.DEFAULT_ROW_DIM
    if depth == 1:
        corner = texts[0][0]
        if separator in corner:
            row_part, col_part = (part.strip() for part in corner.split(separator, 1))
            return [col_part or TransformConstants.DEFAULT_COL_DIM], row_part or row_dim
        return [TransformConstants.DEFAULT_COL_DIM], row_dim
    levels = []
    for r in range(depth):
        stub = texts[r][0]
        if r == depth - 1 and separator in stub:
            row_part, stub = (part.strip() for part in stub.split(separator, 1))
            row_dim = GridRules.attribute_name(row_part) or row_dim
        levels.append(GridRules.attribute_name(stub) or f"{TransformConstants.DEFAULT_COL_DIM}_{r + 1}")
    return levels, row_dim
