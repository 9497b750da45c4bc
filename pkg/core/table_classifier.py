import logging
from collections import Counter
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from core.grid_rules import GridRules, TypeRow
from utils.interfaces import ITableClassifier
from utils import (
    AmbiguousStructure, CellContent, ClassifyConstants, HeaderArrangement, HeaderKind,
    InputValidator, Orientation, RawGrid, Structure, TableTypology, ValueParser, ValueType
)

logger = logging.getLogger(__name__)

HeaderShape = Tuple[HeaderKind, int, HeaderArrangement, Optional[int]]
_NO_HEADER: HeaderShape = (HeaderKind.NONE, 0, HeaderArrangement.SINGLE, None)


class TableClassifier(ITableClassifier):
    """
    Places a grid on the structure, cell-content and header axes of the table typology.
    Structure evidence is collected for cross and super-row layouts first; otherwise the
    orientation score decides between horizontal and vertical. Header and cell content
    are analysed on the reading where each row is a tuple.
    """

    def __init__(self, delimiters: str = ClassifyConstants.MULTIVALUE_DELIMITERS):
        self.delimiters = InputValidator.validate_delimiters(delimiters)

    def classify_table(self, grid: RawGrid) -> TableTypology:
        """
        Classify one table.
        Args:
            grid: Tightened grid holding a single table
        Returns:
            TableTypology: structure, cell content, header kind and arrangement
        Raises:
            AmbiguousStructure: If both cross and super-row evidence is present
        """
        texts = grid.texts()
        types = GridRules.type_matrix(texts)

        if grid.n_rows == 1 or grid.n_cols == 1:
            structure = Structure.LISTING
            reading = grid if grid.n_cols == 1 else grid.transpose()
        else:
            cross_score, depth = self._cross_evidence(grid, texts, types)
            super_score = self._super_row_evidence(texts)
            logger.debug("Structure evidence for '%s': cross=%.2f super_row=%.2f",
                         grid.source_name, cross_score, super_score)
            if cross_score > 0 and super_score > 0:
                raise AmbiguousStructure(cross_score, super_score)
            if cross_score > 0:
                header = HeaderKind.HIERARCHICAL if depth > 1 else HeaderKind.SIMPLE
                typology = TableTypology(Structure.CROSS, self._cell_content(grid, depth), header,
                                         HeaderArrangement.SINGLE, depth)
                logger.info("Classified '%s': %s", grid.source_name, typology.to_dict())
                return typology
            if super_score > 0:
                structure, reading = Structure.SUPER_ROW, grid
            elif self.detect_orientation(grid) == Orientation.COLUMNS_ARE_TUPLES:
                structure, reading = Structure.VERTICAL, grid.transpose()
            else:
                structure, reading = Structure.HORIZONTAL, grid

        header, header_rows, arrangement, block_width = self._detect_header(reading)
        typology = TableTypology(structure, self._cell_content(reading, header_rows), header,
                                 arrangement, header_rows, block_width)
        logger.info("Classified '%s': %s", grid.source_name, typology.to_dict())
        return typology

    def detect_orientation(self, grid: RawGrid) -> Orientation:
        """
        Compare type homogeneity along columns (row 0 excluded) and along rows
        (column 0 excluded). Ties favour rows as tuples.
        """
        types = GridRules.type_matrix(grid.texts())
        column_scores = [GridRules.homogeneity([row[j] for row in types[1:]]) for j in range(grid.n_cols)]
        row_scores = [GridRules.homogeneity(row[1:]) for row in types]
        column_mean, row_mean = _mean_score(column_scores), _mean_score(row_scores)
        logger.debug("Orientation scores: columns=%.3f rows=%.3f", column_mean, row_mean)
        if column_mean >= row_mean:
            return Orientation.ROWS_ARE_TUPLES
        return Orientation.COLUMNS_ARE_TUPLES

    def _cross_evidence(self, grid: RawGrid, texts: List[List[str]], types: List[TypeRow]) -> Tuple[float, int]:
        """
        Score a matrix layout: label rail on top, distinct label stub on the left,
        numeric interior, and an empty, '/'-split or year-railed corner or stacked rails.
        Returns:
            (share of filled interior cells, number of rail rows); (0.0, 0) without evidence
        """
        if not _is_rail_row(texts[0], allow_gaps=True):
            return 0.0, 0
        depth = 1
        limit = min(ClassifyConstants.MAX_HEADER_ROWS, grid.n_rows - 1)
        while (depth < limit and GridRules.is_grouped_row(grid.cells[depth - 1], start=1)
               and _is_rail_row(texts[depth], allow_gaps=False)):
            depth += 1
        if depth == 1 and not _is_rail_row(texts[0], allow_gaps=False):
            return 0.0, 0

        keys = GridRules.column_keys(texts, depth, start=1)
        if len(set(keys)) != len(keys):
            return 0.0, 0
        stub = [row[0] for row in texts[depth:]]
        if not stub or len(set(stub)) != len(stub) or not all(ValueParser.is_label(s) for s in stub):
            return 0.0, 0
        interior = [t for row in types[depth:] for t in row[1:]]
        present = [t for t in interior if t != ValueType.EMPTY]
        if not present or not all(t.is_numeric for t in present):
            return 0.0, 0

        corner = texts[depth - 1][0]
        year_rail = all(GridRules.is_year_like(label) for label in texts[0][1:] if label)
        if not (corner == '' or ClassifyConstants.CORNER_SEPARATOR in corner or year_rail or depth > 1):
            return 0.0, 0
        return len(present) / len(interior), depth

    @staticmethod
    def _super_row_evidence(texts: List[List[str]]) -> float:
        """Share of label-only rows, when at least one is followed by a regular row"""
        body = texts[1:]
        flags = [GridRules.is_super_row(row) for row in body]
        if not any(flags):
            return 0.0
        regular = [not flag and sum(1 for t in row if t) >= 2 for row, flag in zip(body, flags)]
        if not any(regular[flags.index(True) + 1:]):
            return 0.0
        return sum(flags) / len(body)

    def _detect_header(self, reading: RawGrid) -> HeaderShape:
        """
        Find the header rows of a tuple-oriented reading.
        Upper levels are accepted while the row above groups columns; the lowest level
        must be complete and distinct (or a repeated distinct block). Candidates are
        confirmed by per-column votes comparing the header with the typed body.
        """
        texts = reading.texts()
        if reading.n_rows < 2 or not GridRules.is_label_row(texts[0], allow_gaps=True):
            return _NO_HEADER
        depth = 1
        limit = min(ClassifyConstants.MAX_HEADER_ROWS, reading.n_rows - 1)
        while (depth < limit and GridRules.is_grouped_row(reading.cells[depth - 1])
               and GridRules.is_label_row(texts[depth], allow_gaps=False)):
            depth += 1
        if depth == 1 and not GridRules.is_label_row(texts[0], allow_gaps=False):
            return _NO_HEADER

        lowest = texts[depth - 1]
        arrangement, block_width = HeaderArrangement.SINGLE, None
        if depth == 1:
            block_width = _block_width(lowest)
            if block_width is not None:
                arrangement = HeaderArrangement.DISTRIBUTED
            elif len(set(lowest)) != len(lowest):
                return _NO_HEADER
        else:
            keys = GridRules.column_keys(texts, depth)
            if len(set(keys)) != len(keys):
                return _NO_HEADER

        body = [row for row in texts[depth:] if row != lowest]
        if depth == 1 and arrangement == HeaderArrangement.SINGLE and len(body) < reading.n_rows - 1:
            arrangement = HeaderArrangement.DUPLICATED
        if _header_votes(lowest, body) <= 0:
            return _NO_HEADER
        kind = HeaderKind.HIERARCHICAL if depth > 1 else HeaderKind.SIMPLE
        return kind, depth, arrangement, block_width

    def _cell_content(self, reading: RawGrid, header_rows: int) -> frozenset:
        kinds: Set[CellContent] = set()
        if any(cell.has_nested_table for row in reading.cells for cell in row):
            kinds.add(CellContent.NESTED)
        for row in reading.cells[header_rows:]:
            for cell in row:
                if cell.is_spanned and not cell.is_empty:
                    kinds.add(CellContent.MERGED_CATEGORY if ValueParser.is_label(cell.text)
                              else CellContent.MERGED_VALUE)
        texts = reading.texts()
        if not reading.has_spans() and GridRules.fill_down_columns(texts, header_rows):
            kinds.add(CellContent.MERGED_CATEGORY)
        for row in texts[header_rows:]:
            for text in row:
                parts = ValueParser.split_multivalue(text, self.delimiters)
                if len(parts) > 1:
                    composed = len({ValueParser.coarse_type(p) for p in parts}) > 1
                    kinds.add(CellContent.MULTIVALUED_COMPOSED if composed else CellContent.MULTIVALUED_SIMPLE)
        return frozenset(kinds or {CellContent.SIMPLE})


def _mean_score(scores: Sequence[float]) -> float:
    values = np.asarray(scores, dtype=float)
    values = values[values >= 0]
    return float(values.mean()) if values.size else 1.0


def _is_rail_row(texts: Sequence[str], allow_gaps: bool) -> bool:
    """Column labels of a cross table: text or year-like, first cell excluded"""
    cells = texts[1:]
    present = [t for t in cells if t]
    if not present or (not allow_gaps and len(present) != len(cells)):
        return False
    return all(ValueParser.is_label(t) or GridRules.is_year_like(t) for t in present)


def _block_width(header: Sequence[str]) -> Optional[int]:
    """Width of a distinct label block repeated at least twice across the header"""
    n = len(header)
    for width in range(1, n // 2 + 1):
        if n % width:
            continue
        block = header[:width]
        if len(set(block)) == width and all(header[i] == block[i % width] for i in range(n)):
            return width
    return None


def _header_votes(header: Sequence[str], body: List[List[str]]) -> int:
    """
    Per column: +1 when the body is typed (number or date) under a text label;
    for text bodies of fixed length, +1 if the label length differs and -1 otherwise;
    -1 when the label reappears in the body.
    """
    votes = 0
    for j, label in enumerate(header):
        values = [row[j] for row in body if row[j]]
        if not values:
            continue
        majority = Counter(ValueParser.infer_type(v) for v in values).most_common(1)[0][0]
        if majority != ValueType.TEXT:
            votes += 1
            continue
        lengths = {len(v) for v in values}
        if len(lengths) == 1:
            votes += -1 if len(label) in lengths else 1
        if label in values:
            votes -= 1
    return votes
