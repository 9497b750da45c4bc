import re
from datetime import date, datetime
from functools import lru_cache
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from utils.constants import ValueType


NUMBER_PATTERN = r'[+-]?(?:\d+(?:[.,]\d*)?|[.,]\d+)(?:[eE][+-]?\d+)?'
_NUMBER_RE = re.compile(NUMBER_PATTERN)
_INTEGER_RE = re.compile(r'[+-]?\d+')
_ISO_DATE_RE = re.compile(r'\d{4}-\d{2}-\d{2}(?:[T ]\d{2}:\d{2}(?::\d{2}(?:\.\d+)?)?)?')
_DMY_DATE_RE = re.compile(r'\d{2}/\d{2}/\d{4}')


class ValueParser:
    """Typing of cell texts shared by classification, transformation and profiling"""

    @staticmethod
    @lru_cache(maxsize=65536)
    def parse_number(text: str) -> Optional[float]:
        """
        Parse a decimal number; ',' is a decimal separator only when no '.' is present.
        Args:
            text: Trimmed cell text
        Returns:
            The number, or None when the text is not numeric
        """
        if not text or not _NUMBER_RE.fullmatch(text):
            return None
        if ',' in text:
            if text.count(',') > 1:
                return None
            text = text.replace(',', '.')
        return float(text)

    @staticmethod
    def is_integer_text(text: str) -> bool:
        return bool(_INTEGER_RE.fullmatch(text))

    @staticmethod
    @lru_cache(maxsize=65536)
    def parse_date(text: str) -> Optional[date]:
        """Parse ISO-8601 (date or date-time) or DD/MM/YYYY"""
        try:
            if _ISO_DATE_RE.fullmatch(text):
                if len(text) == 10:
                    return date.fromisoformat(text)
                return datetime.fromisoformat(text.replace(' ', 'T')).date()
            if _DMY_DATE_RE.fullmatch(text):
                return datetime.strptime(text, '%d/%m/%Y').date()
        except ValueError:
            return None
        return None

    @staticmethod
    @lru_cache(maxsize=131072)
    def infer_type(text: str) -> ValueType:
        if not text:
            return ValueType.EMPTY
        if ValueParser.parse_number(text) is not None:
            return ValueType.INTEGER if ValueParser.is_integer_text(text) else ValueType.FLOAT
        if ValueParser.parse_date(text) is not None:
            return ValueType.DATE
        return ValueType.TEXT

    @staticmethod
    def is_label(text: str) -> bool:
        """Non-empty text that is neither a number nor a date"""
        return ValueParser.infer_type(text) == ValueType.TEXT

    @staticmethod
    def is_numeric(text: str) -> bool:
        return ValueParser.infer_type(text).is_numeric

    @staticmethod
    def split_multivalue(text: str, delimiters: str) -> List[str]:
        """
        Split a cell on any of the delimiter characters.
        Only whole-text labels are candidates: numbers and dates never split.
        Returns:
            The non-empty trimmed parts (a single part when the cell is not multivalued)
        """
        if ValueParser.infer_type(text) != ValueType.TEXT:
            return [text] if text else []
        if not any(d in text for d in delimiters):
            return [text.strip()] if text.strip() else []
        pattern = '[' + re.escape(delimiters) + ']'
        parts = [part.strip() for part in re.split(pattern, text)]
        return [part for part in parts if part]

    @staticmethod
    def coarse_type(text: str) -> ValueType:
        """Number kinds collapsed into one for composite detection"""
        kind = ValueParser.infer_type(text)
        return ValueType.FLOAT if kind.is_numeric else kind

    @staticmethod
    def to_numbers(values: Iterable[str]) -> np.ndarray:
        """
        Vectorised numeric coercion.
        Returns:
            float array, NaN where a value is missing or not a number
        """
        series = pd.Series(list(values), dtype=object).fillna('')
        mask = series.str.fullmatch(NUMBER_PATTERN).fillna(False).astype(bool)
        mask &= series.str.count(',') <= 1
        cleaned = series.where(~series.str.contains(',', regex=False), series.str.replace(',', '.', regex=False))
        numbers = pd.to_numeric(cleaned.where(mask), errors='coerce')
        return numbers.to_numpy(dtype=float)
