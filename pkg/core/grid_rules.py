import re
from collections import Counter
from typing import List, Sequence, Tuple

from utils import ProfileConstants, TransformConstants, ValueParser, ValueType
from utils.containers import Cell

TypeRow = List[ValueType]


class GridRules:
    """Cell-level heuristics shared by table classification and normalization"""

    @staticmethod
    def type_matrix(texts: Sequence[Sequence[str]]) -> List[TypeRow]:
        return [[ValueParser.infer_type(text) for text in row] for row in texts]

    @staticmethod
    def homogeneity(types: Sequence[ValueType]) -> float:
        """Share of non-empty cells carrying the majority type, -1.0 when none is present"""
        present = [t for t in types if t != ValueType.EMPTY]
        if not present:
            return -1.0
        return Counter(present).most_common(1)[0][1] / len(present)

    @staticmethod
    def is_year_like(text: str) -> bool:
        if not ValueParser.is_integer_text(text) or len(text.lstrip('+-')) != 4:
            return False
        low, high = ProfileConstants.YEAR_RANGE
        return low <= int(text) <= high

    @staticmethod
    def is_label_row(texts: Sequence[str], allow_gaps: bool, skip_first: bool = False) -> bool:
        """Every present cell is a text label; gaps only when allowed"""
        cells = texts[1:] if skip_first else texts
        present = [t for t in cells if t]
        if not present:
            return False
        if not allow_gaps and len(present) != len(cells):
            return False
        return all(ValueParser.is_label(t) for t in present)

    @staticmethod
    def is_grouped_row(cells: Sequence[Cell], start: int = 0) -> bool:
        """A row whose labels cover several columns: spans, trailing gaps or repeats"""
        row = cells[start:]
        if any(cell.col_span > 1 for cell in row):
            return True
        for left, right in zip(row, row[1:]):
            if not left.is_empty and (right.is_empty or right.text == left.text):
                return True
        return False

    @staticmethod
    def fill_right(texts: Sequence[str], start: int = 0) -> List[str]:
        """Empty cells after a label inherit it (CSV rendering of a merged header)"""
        filled = list(texts)
        last = ''
        for j in range(start, len(filled)):
            if filled[j]:
                last = filled[j]
            else:
                filled[j] = last
        return filled

    @staticmethod
    def column_keys(texts: Sequence[Sequence[str]], depth: int, start: int = 0) -> List[Tuple[str, ...]]:
        """Per column, the stack of header labels of the first `depth` rows"""
        filled = [GridRules.fill_right(texts[r], start) for r in range(depth)]
        width = len(texts[0])
        return [tuple(filled[r][j] for r in range(depth)) for j in range(start, width)]

    @staticmethod
    def is_super_row(texts: Sequence[str]) -> bool:
        """Only the first cell is present and it is a label"""
        return (len(texts) >= 2 and bool(texts[0]) and not any(texts[1:])
                and ValueParser.is_label(texts[0]))

    @staticmethod
    def fill_down_columns(texts: Sequence[Sequence[str]], header_rows: int) -> List[int]:
        """
        Columns whose blanks are the CSV rendering of vertically merged labels.
        A column qualifies when its present body values are all labels, its distinct
        ratio over body rows is at most the fill-down threshold and a blank sits
        directly below a present value. Super-row shaped rows are ignored.
        """
        width = len(texts[0]) if texts else 0
        body = [row for row in texts[header_rows:] if not (width >= 2 and GridRules.is_super_row(row))]
        if not body:
            return []
        columns = []
        for j in range(width):
            values = [row[j] for row in body]
            present = [v for v in values if v]
            if not present or not all(ValueParser.is_label(v) for v in present):
                continue
            if len(set(present)) / len(values) > TransformConstants.FILL_DOWN_DISTINCT_RATIO:
                continue
            if any(above and not below for above, below in zip(values, values[1:])):
                columns.append(j)
        return columns

    @staticmethod
    def attribute_name(label: str) -> str:
        """Lowercase, whitespace runs become '_'"""
        return re.sub(r'\s+', TransformConstants.NAME_JOINER, label.strip().lower())

    @staticmethod
    def unique_names(names: Sequence[str]) -> List[str]:
        """Fill blank names with col_<n> and suffix repeats with _2, _3, ..."""
        result: List[str] = []
        seen = Counter()
        for j, name in enumerate(names):
            base = name or f"{TransformConstants.SYNTHETIC_COLUMN_PREFIX}{j + 1}"
            seen[base] += 1
            candidate = base if seen[base] == 1 else f"{base}_{seen[base]}"
            while candidate in result:
                seen[base] += 1
                candidate = f"{base}_{seen[base]}"
            result.append(candidate)
        return result
