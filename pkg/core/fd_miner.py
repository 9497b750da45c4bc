import logging
from collections import Counter, defaultdict
from typing import AbstractSet, Dict, List, Tuple

import numpy as np
import pandas as pd

from utils.interfaces import IFDMiner
from utils import (
    CanonicalTable, FDConstants, FunctionalDependency, InputValidator, StrippedPartition,
    TooFewRows, UnknownAttribute
)

logger = logging.getLogger(__name__)


def _holds(violations: int, n_rows: int, threshold: float) -> bool:
    """g3 error within the threshold, compared on row counts"""
    return violations <= threshold * n_rows + 1e-9


def _mined_attributes(table: CanonicalTable, exclude: AbstractSet[str], threshold: float) -> List[str]:
    InputValidator.validate_threshold(threshold, "FD threshold")
    if table.n_rows < 2:
        raise TooFewRows(table.n_rows)
    unknown = sorted(set(exclude) - set(table.attributes))
    if unknown:
        raise UnknownAttribute(unknown[0])
    return [a for a in table.attributes if a not in exclude]


class PartitionFDMiner(IFDMiner):
    """
    Unary functional dependencies from stripped partitions.
    Each attribute is coded once; the g3 error of lhs -> rhs is the number of rows
    outside the largest rhs subgroup of every lhs group, over all rows. A missing lhs
    value never takes part in a violation, a missing rhs value matches nothing.
    """

    def mine_unary_fds(self, table: CanonicalTable, exclude: AbstractSet[str] = frozenset(),
                       threshold: float = FDConstants.DEFAULT_THRESHOLD) -> List[FunctionalDependency]:
        """
        Args:
            table: Canonical table to mine
            exclude: Attributes that never take part in a dependency (measures)
            threshold: Maximum g3 error of a reported dependency
        Returns:
            List[FunctionalDependency]: Sorted by (lhs, rhs)
        Raises:
            TooFewRows: If the table has fewer than 2 rows
        """
        attributes = _mined_attributes(table, exclude, threshold)
        n_rows = table.n_rows
        codes = {a: self.encode(table, a) for a in attributes}
        partitions = {a: StrippedPartition.from_codes(a, codes[a]) for a in attributes}

        fds = []
        for lhs in attributes:
            for rhs in attributes:
                if lhs == rhs:
                    continue
                violations = self.violations(partitions[lhs], codes[rhs])
                if _holds(violations, n_rows, threshold):
                    fds.append(FunctionalDependency(lhs, rhs, violations / n_rows))
        logger.info("Mined %d unary FD(s) over %d attributes at threshold %g", len(fds), len(attributes), threshold)
        return sorted(fds)

    def g3_error(self, table: CanonicalTable, lhs: str, rhs: str) -> float:
        for attribute in (lhs, rhs):
            if attribute not in table.attributes:
                raise UnknownAttribute(attribute)
        if table.n_rows == 0:
            return 0.0
        partition = StrippedPartition.from_codes(lhs, self.encode(table, lhs))
        return self.violations(partition, self.encode(table, rhs)) / table.n_rows

    @staticmethod
    def encode(table: CanonicalTable, attribute: str) -> np.ndarray:
        """Dense integer code per row, -1 for a missing value"""
        values = pd.Series(table.column(attribute), dtype=object)
        codes, _ = pd.factorize(values, sort=False)
        codes = codes.astype(np.int64)
        codes[(values == '').to_numpy()] = -1
        return codes

    @staticmethod
    def violations(partition: StrippedPartition, rhs_codes: np.ndarray) -> int:
        """Rows to delete so that every lhs group agrees on its rhs value"""
        rows = np.flatnonzero(partition.labels >= 0)
        if rows.size == 0:
            return 0
        groups = partition.labels[rows]
        rhs = rhs_codes[rows]
        # missing rhs values become singletons
        base = int(rhs.max()) + 1
        span = base + rows.size
        rhs = np.where(rhs < 0, base + np.arange(rows.size), rhs)
        keys, counts = np.unique(groups * span + rhs, return_counts=True)
        best = np.zeros(len(partition.groups), dtype=np.int64)
        np.maximum.at(best, keys // span, counts)
        return int(rows.size - best.sum())


class BruteForceFDMiner(IFDMiner):
    """Reference miner grouping rows in dictionaries; meant for small tables"""

    def mine_unary_fds(self, table: CanonicalTable, exclude: AbstractSet[str] = frozenset(),
                       threshold: float = FDConstants.DEFAULT_THRESHOLD) -> List[FunctionalDependency]:
        attributes = _mined_attributes(table, exclude, threshold)
        if len(attributes) > FDConstants.BRUTE_FORCE_MAX_ATTRIBUTES or table.n_rows > FDConstants.BRUTE_FORCE_MAX_ROWS:
            logger.warning("Brute-force mining of %d attributes x %d rows will be slow",
                           len(attributes), table.n_rows)
        fds = []
        for lhs in attributes:
            for rhs in attributes:
                if lhs == rhs:
                    continue
                violations = self._violations(table.column(lhs), table.column(rhs))
                if _holds(violations, table.n_rows, threshold):
                    fds.append(FunctionalDependency(lhs, rhs, violations / table.n_rows))
        return sorted(fds)

    @staticmethod
    def _violations(lhs_values: List[str], rhs_values: List[str]) -> int:
        groups: Dict[str, Counter] = defaultdict(Counter)
        for i, (left, right) in enumerate(zip(lhs_values, rhs_values)):
            if left == '':
                continue
            key: Tuple = (right,) if right != '' else ('', i)
            groups[left][key] += 1
        return sum(sum(c.values()) - max(c.values()) for c in groups.values())
