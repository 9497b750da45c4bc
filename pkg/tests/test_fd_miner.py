import random
import time

import numpy as np
import pytest
from utils import CanonicalTable, FunctionalDependency, StrippedPartition, TooFewRows, UnknownAttribute
from core import BruteForceFDMiner, DependencyCover, PartitionFDMiner
from tests.generators import (
    PRODUCT_ORDER_ATTRIBUTES, PRODUCT_ORDER_FDS, corrupt_country, product_order_rows, product_order_table,
    random_table
)

THRESHOLDS = [0.0, 0.01, 0.05, 0.1, 0.3]


# fixtures
@pytest.fixture
def miner():
    return PartitionFDMiner()


@pytest.fixture
def oracle():
    return BruteForceFDMiner()


def two_columns(lhs, rhs) -> CanonicalTable:
    return CanonicalTable(('l', 'r'), tuple(zip(lhs, rhs)))


class TestG3Error:

    def test_rows_to_delete_over_all_rows(self, miner):
        table = two_columns(['a', 'a', 'a', 'b', 'b'], ['x', 'x', 'y', 'z', 'z'])
        assert miner.g3_error(table, 'l', 'r') == pytest.approx(0.2)
        assert miner.g3_error(table, 'r', 'l') == 0.0

    def test_missing_lhs_never_violates(self, miner):
        table = two_columns(['a', 'a', '', ''], ['x', 'x', 'y', 'z'])
        assert miner.g3_error(table, 'l', 'r') == 0.0

    def test_missing_rhs_matches_nothing(self, miner, oracle):
        table = two_columns(['a', 'a', 'a'], ['', '', 'x'])
        assert miner.g3_error(table, 'l', 'r') == pytest.approx(2 / 3)
        assert oracle._violations(table.column('l'), table.column('r')) == 2

    @pytest.mark.parametrize('rhs, expected', [(['x', '', 'y'], 1 / 3), (['x', 'x', ''], 0.0)])
    def test_missing_rhs_counts_only_inside_larger_groups(self, miner, oracle, rhs, expected):
        table = two_columns(['a', 'a', 'b'], rhs)
        assert miner.g3_error(table, 'l', 'r') == pytest.approx(expected)
        assert oracle._violations(table.column('l'), table.column('r')) == round(expected * 3)

    def test_unknown_attribute(self, miner):
        with pytest.raises(UnknownAttribute):
            miner.g3_error(two_columns(['a', 'b'], ['x', 'y']), 'l', 'price')

    def test_partition_strips_singletons_and_missing_values(self, miner):
        table = two_columns(['a', 'b', 'a', '', '', 'c', 'c'], ['1'] * 7)
        partition = StrippedPartition.from_codes('l', miner.encode(table, 'l'))
        assert partition.groups == ((0, 2), (5, 6))
        assert partition.stripped_size == 4
        assert partition.labels.tolist() == [0, -1, 0, -1, -1, 1, 1]


class TestMineUnaryFDs:

    def test_product_orders_give_the_closure(self, miner):
        fds = miner.mine_unary_fds(product_order_table(), exclude={'quantity'})

        expected = DependencyCover.transitive_closure([FunctionalDependency(a, b) for a, b in PRODUCT_ORDER_FDS])
        assert len(expected) == 11
        assert {fd.pair for fd in fds} == expected
        assert all(fd.error == 0.0 for fd in fds)
        assert fds == sorted(fds)

    def test_corrupted_dependency_needs_a_threshold(self, miner):
        rows = corrupt_country(product_order_rows())
        table = CanonicalTable(PRODUCT_ORDER_ATTRIBUTES, tuple(tuple(r) for r in rows))
        pair = ('cityCustomer', 'countryCustomer')

        assert miner.g3_error(table, *pair) == pytest.approx(0.02)
        found = {t: {fd.pair for fd in miner.mine_unary_fds(table, {'quantity'}, t)} for t in (0.0, 0.01, 0.05)}
        assert pair not in found[0.0]
        assert pair not in found[0.01]
        assert pair in found[0.05]

    def test_corrupted_orders_grow_with_the_threshold(self, miner):
        rows = corrupt_country(product_order_rows())
        table = CanonicalTable(PRODUCT_ORDER_ATTRIBUTES, tuple(tuple(r) for r in rows))
        previous = set()
        for threshold in (0.0, 0.01, 0.05, 0.1):
            current = {fd.pair for fd in miner.mine_unary_fds(table, {'quantity'}, threshold)}
            assert previous <= current
            previous = current
        assert ('cityCustomer', 'countryCustomer') in previous

    def test_results_grow_with_the_threshold(self, miner):
        rng = random.Random(3)
        for _ in range(20):
            table = random_table(rng)
            previous = set()
            for threshold in THRESHOLDS:
                current = {fd.pair for fd in miner.mine_unary_fds(table, threshold=threshold)}
                assert previous <= current
                previous = current

    def test_too_few_rows(self, miner):
        with pytest.raises(TooFewRows):
            miner.mine_unary_fds(two_columns(['a'], ['x']))

    def test_threshold_must_be_below_one(self, miner):
        with pytest.raises(ValueError):
            miner.mine_unary_fds(two_columns(['a', 'b'], ['x', 'y']), threshold=1.0)

    def test_unknown_excluded_attribute(self, miner):
        with pytest.raises(UnknownAttribute):
            miner.mine_unary_fds(two_columns(['a', 'b'], ['x', 'y']), exclude={'price'})


class TestAgainstBruteForce:

    def test_product_order_generator(self, miner, oracle):
        table = product_order_table()
        expected = DependencyCover.transitive_closure([FunctionalDependency(a, b) for a, b in PRODUCT_ORDER_FDS])

        found = oracle.mine_unary_fds(table, exclude={'quantity'})
        assert {fd.pair for fd in found} == expected
        assert found == miner.mine_unary_fds(table, exclude={'quantity'})

    @pytest.mark.parametrize('threshold', [0.0, 0.05])
    def test_random_tables(self, miner, oracle, threshold):
        rng = random.Random(100 + int(threshold * 100))
        for _ in range(100):
            table = random_table(rng)
            assert miner.mine_unary_fds(table, threshold=threshold) == oracle.mine_unary_fds(table, threshold=threshold)


class TestScale:

    def test_hundred_thousand_rows(self, miner):
        rng = np.random.default_rng(5)
        n_rows = 100_000
        columns = [rng.integers(0, 50 + 200 * j, n_rows) for j in range(8)]
        columns.append(columns[0] // 5)
        columns.append(columns[1] % 7)
        rows = tuple(zip(*[[f"v{v}" for v in column] for column in columns]))
        table = CanonicalTable(tuple(f"a{j}" for j in range(10)), rows)

        start = time.perf_counter()
        fds = miner.mine_unary_fds(table)
        elapsed = time.perf_counter() - start

        assert ('a0', 'a8') in {fd.pair for fd in fds}
        assert elapsed < 5.0
