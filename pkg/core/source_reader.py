import codecs
import csv
import io
import logging
import re
from collections import Counter
from typing import Dict, List, Optional, Tuple

import numpy as np
from bs4 import BeautifulSoup

from utils.interfaces import ISourceReader
from utils import (
    Cell, Dialect, EmptySource, IngestConstants, RaggedRows, RawGrid, SourceFormat, UnreadableSource
)
from utils.containers import EMPTY_CELL

logger = logging.getLogger(__name__)

_HTML_TABLE_RE = re.compile(r'<\s*table\b', re.IGNORECASE)
_LATIN1_CONTROL_RE = re.compile('[\x00-\x08\x0b\x0c\x0e-\x1f\x7f-\x9f]')


class SourceReader(ISourceReader):
    """Reads CSV, TSV and HTML sources into rectangular grids"""

    def read_source(self, data: bytes, format_hint: Optional[SourceFormat] = None,
                    source_name: str = '') -> List[RawGrid]:
        """
        Read a byte source into one grid per sheet or HTML table.
        Args:
            data: Raw bytes of the source
            format_hint: csv, tsv or html; inferred from content when absent
            source_name: Name recorded on every grid
        Returns:
            List[RawGrid]: One grid per table found, in source order
        """
        if not data:
            raise EmptySource("Source is empty")
        text, encoding, has_bom = self._decode(data)
        if format_hint == SourceFormat.HTML or (format_hint is None and _HTML_TABLE_RE.search(text)):
            grids = self._read_html(text, source_name)
        else:
            delimiter = '\t' if format_hint == SourceFormat.TSV else self.sniff_delimiter(text)
            dialect = Dialect(field_delimiter=delimiter, encoding=encoding, has_bom=has_bom)
            grids = [self._read_delimited(text, dialect, source_name)]
        grids = [g for g in grids if g.nonempty_mask().any()]
        if not grids:
            raise EmptySource(f"Source '{source_name}' has no non-blank cell")
        logger.info("Read %d grid(s) from '%s'", len(grids), source_name)
        return grids

    def split_tables(self, grid: RawGrid) -> List[RawGrid]:
        """
        Split a grid at runs of fully-empty rows, then fully-empty columns, recursively.
        Args:
            grid: Rectangular grid
        Returns:
            List[RawGrid]: Tightened sub-grids, top-to-bottom then left-to-right
        """
        mask = grid.nonempty_mask()
        if not mask.any():
            return []
        boxes = self._split_box(mask, 0, grid.n_rows, 0, grid.n_cols)
        if boxes == [(0, grid.n_rows, 0, grid.n_cols)]:
            return [grid]
        logger.debug("Split '%s' into %d table(s)", grid.source_name, len(boxes))
        return [grid.sub_grid(*box) for box in boxes]

    @staticmethod
    def sniff_delimiter(text: str) -> str:
        """
        Pick the delimiter with the most consistent per-line field count.
        Ties are broken by the order , ; TAB |
        """
        lines = [line for line in text.splitlines() if line.strip()][:IngestConstants.SNIFF_LINES]
        best, best_score = IngestConstants.DELIMITER_PREFERENCE[0], 0.0
        for delimiter in IngestConstants.DELIMITER_PREFERENCE:
            counts = [len(row) for row in csv.reader(lines, delimiter=delimiter,
                                                     quotechar=IngestConstants.QUOTE_CHARACTER)]
            if not counts:
                continue
            modal, occurrences = Counter(counts).most_common(1)[0]
            score = occurrences / len(counts) if modal >= 2 else 0.0
            if score > best_score:
                best, best_score = delimiter, score
        return best

    @staticmethod
    def _decode(data: bytes) -> Tuple[str, str, bool]:
        has_bom = data.startswith(codecs.BOM_UTF8)
        if has_bom:
            data = data[len(codecs.BOM_UTF8):]
        try:
            text = data.decode('utf-8')
            encoding = 'UTF-8'
        except UnicodeDecodeError:
            text = data.decode('latin-1')
            encoding = 'Latin-1'
            if _LATIN1_CONTROL_RE.search(text):
                raise UnreadableSource("Bytes are neither UTF-8 nor Latin-1 text")
        if '\x00' in text:
            raise UnreadableSource("Source contains NUL bytes")
        return text, encoding, has_bom

    def _read_delimited(self, text: str, dialect: Dialect, source_name: str) -> RawGrid:
        reader = csv.reader(io.StringIO(text, newline=''), delimiter=dialect.field_delimiter,
                            quotechar=dialect.quote_character)
        rows = [[field.strip() for field in row] for row in reader]
        rows = [row if any(row) else [] for row in rows]
        while rows and not rows[-1]:
            rows.pop()
        if not rows:
            raise EmptySource(f"Source '{source_name}' has no non-blank cell")
        self._check_ragged(rows)
        width = max(len(row) for row in rows)
        if any(len(row) != width for row in rows if row):
            logger.warning("Padded ragged rows of '%s' to %d fields", source_name, width)
        return RawGrid.from_texts([row or [''] for row in rows], source_name, dialect=dialect)

    @staticmethod
    def _check_ragged(rows: List[List[str]]) -> None:
        """A lone over-wide row inside a uniform block means an unquoted delimiter"""
        start = 0
        while start < len(rows):
            if not rows[start]:
                start += 1
                continue
            end = start
            while end < len(rows) and rows[end]:
                end += 1
            widths = [len(row) for row in rows[start:end]]
            if len(widths) >= IngestConstants.RAGGED_BLOCK_MIN_ROWS:
                widest = max(widths)
                at_max = [i for i, w in enumerate(widths) if w == widest]
                others = {w for w in widths if w != widest}
                if len(at_max) == 1 and at_max[0] > 0 and len(others) == 1:
                    raise RaggedRows(start + at_max[0], widest, others.pop())
            start = end

    def _read_html(self, text: str, source_name: str) -> List[RawGrid]:
        soup = BeautifulSoup(text, 'html.parser')
        tables = [t for t in soup.find_all('table') if t.find_parent('table') is None]
        grids = []
        for index, table in enumerate(tables):
            grid = self._expand_html_table(table, f"{source_name}#table{index}")
            if grid is not None:
                grids.append(grid)
        return grids

    @staticmethod
    def _expand_html_table(table, name: str) -> Optional[RawGrid]:
        """Lay out td/th cells on a grid, replicating merged cells into every covered position"""
        rows = [tr for tr in table.find_all('tr') if tr.find_parent('table') is table]
        occupied: Dict[Tuple[int, int], Cell] = {}
        for r, tr in enumerate(rows):
            c = 0
            for td in tr.find_all(['td', 'th'], recursive=False):
                while (r, c) in occupied:
                    c += 1
                row_span = _span(td.get('rowspan'))
                col_span = _span(td.get('colspan'))
                cell = Cell(td.get_text(' ', strip=True), row_span, col_span,
                            td.find('table') is not None)
                for dr in range(row_span):
                    for dc in range(col_span):
                        occupied[(r + dr, c + dc)] = cell
                c += col_span
        if not occupied:
            return None
        n_rows = max(r for r, _ in occupied) + 1
        n_cols = max(c for _, c in occupied) + 1
        cells = tuple(
            tuple(occupied.get((r, c), EMPTY_CELL) for c in range(n_cols))
            for r in range(n_rows)
        )
        return RawGrid(cells, name)

    def _split_box(self, mask: np.ndarray, r0: int, r1: int, c0: int, c1: int) -> List[Tuple[int, int, int, int]]:
        sub = mask[r0:r1, c0:c1]
        rows = np.flatnonzero(sub.any(axis=1))
        cols = np.flatnonzero(sub.any(axis=0))
        r0, r1 = r0 + int(rows[0]), r0 + int(rows[-1]) + 1
        c0, c1 = c0 + int(cols[0]), c0 + int(cols[-1]) + 1
        sub = mask[r0:r1, c0:c1]

        row_bands = _runs(sub.any(axis=1))
        if len(row_bands) > 1:
            return [box for a, b in row_bands for box in self._split_box(mask, r0 + a, r0 + b, c0, c1)]
        col_bands = _runs(sub.any(axis=0))
        if len(col_bands) > 1:
            return [box for a, b in col_bands for box in self._split_box(mask, r0, r1, c0 + a, c0 + b)]
        return [(r0, r1, c0, c1)]


def _span(value) -> int:
    try:
        return max(1, int(value))
    except (TypeError, ValueError):
        return 1


def _runs(flags: np.ndarray) -> List[Tuple[int, int]]:
    """Half-open index ranges of consecutive True values"""
    padded = np.concatenate(([False], flags, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(a), int(b)) for a, b in zip(edges[::2], edges[1::2])]
