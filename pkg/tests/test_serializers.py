import json

import pytest
from utils import (
    Aggregation, CanonicalTable, HierarchyHint, InvalidOverrideDocument, MeasureOrigin, MeasureSpec,
    OverrideAction, OverrideReader, Provenance, SchemaSerializer, TableSerializer, TransformStep,
    UnreadableSource
)
from core import ColumnProfiler, DependencyCover, PartitionFDMiner, SchemaBuilder
from tests.generators import PRODUCT_ORDER_SCHEMA, product_order_table


# fixtures
@pytest.fixture(scope='module')
def order_schema():
    table = product_order_table()
    profiler, builder = ColumnProfiler(), SchemaBuilder()
    profiles = profiler.profile_table(table)
    measures = profiler.select_measures(profiles)
    cover = DependencyCover.minimal_cover(PartitionFDMiner().mine_unary_fds(table, {'quantity'}))
    graph = builder.build_dependency_graph(cover, {'quantity'}, profiles)
    dimensions = builder.group_dimensions(builder.extract_hierarchies(graph))
    return builder.assemble_schema('F1', measures, dimensions, 'schema')


@pytest.fixture
def unpivoted_table():
    step = TransformStep('unpivot_cross', {'header_rows': 1, 'names': None})
    return CanonicalTable(('row', 'column', 'value'),
                          (('France', '2019', '10'), ('Spain', '2019', ''), ('007', '2020', '3,5')),
                          Provenance('cross.csv', (step,)))


class TestSchemaSerializer:

    def test_product_order_golden(self, order_schema):
        text = SchemaSerializer.to_json(order_schema)

        assert json.loads(text) == PRODUCT_ORDER_SCHEMA
        assert text == json.dumps(PRODUCT_ORDER_SCHEMA, sort_keys=True, indent=2) + "\n"

    def test_round_trip(self, order_schema):
        assert SchemaSerializer.from_json(SchemaSerializer.to_json(order_schema)) == order_schema

    def test_derived_measure_keeps_its_formula(self, order_schema):
        document = SchemaSerializer.to_dict(order_schema)
        document['fact']['measures'].append({'name': 'double', 'source': None, 'formula': 'quantity * 2',
                                             'aggregations': ['sum'], 'origin': 'user'})
        schema = SchemaSerializer.from_dict(document)

        measure = schema.fact.measures[-1]
        assert measure == MeasureSpec('double', (Aggregation.SUM,), formula='quantity * 2',
                                      origin=MeasureOrigin.USER)
        assert SchemaSerializer.to_dict(schema)['fact']['measures'][-1]['formula'] == 'quantity * 2'


class TestTableSerializer:

    def test_csv_and_sidecar(self, unpivoted_table, tmp_path):
        path = tmp_path / 'cross_normalized.csv'
        hints = [HierarchyHint(('row', 'column'))]
        TableSerializer.write_canonical_csv(unpivoted_table, path)
        TableSerializer.write_sidecar(unpivoted_table, hints, TableSerializer.sidecar_path(path))

        assert path.read_text(encoding='utf-8').splitlines()[0] == 'row,column,value'
        assert '"3,5"' in path.read_text(encoding='utf-8')
        table, read_hints = TableSerializer.read_canonical_csv(path)
        assert table == unpivoted_table
        assert read_hints == hints
        assert TableSerializer.is_dumped_table(path)

    def test_bad_sidecar(self, unpivoted_table, tmp_path):
        path = tmp_path / 'table.csv'
        TableSerializer.write_canonical_csv(unpivoted_table, path)
        TableSerializer.sidecar_path(path).write_text('{"transforms": [{"name": "x"}]}', encoding='utf-8')

        assert not TableSerializer.is_dumped_table(path)
        with pytest.raises(UnreadableSource):
            TableSerializer.read_canonical_csv(path)

    def test_csv_without_sidecar(self, unpivoted_table, tmp_path):
        path = tmp_path / 'plain.csv'
        TableSerializer.write_canonical_csv(unpivoted_table, path)
        table, hints = TableSerializer.read_canonical_csv(path)

        assert table.rows == unpivoted_table.rows
        assert table.provenance == Provenance(str(path))
        assert hints == []
        assert not TableSerializer.is_dumped_table(path)

    def test_empty_file_is_unreadable(self, tmp_path):
        path = tmp_path / 'empty.csv'
        path.write_text('', encoding='utf-8')
        with pytest.raises(UnreadableSource):
            TableSerializer.read_canonical_csv(path)


class TestOverrideReader:

    def test_full_document(self, tmp_path):
        path = tmp_path / 'overrides.json'
        path.write_text(json.dumps({
            'measures': [
                {'action': 'remove', 'name': 'row_count'},
                {'name': 'men_rate', 'formula': '1 - women_expression_rate'},
                {'action': 'replace', 'name': 'speech_rate', 'aggregations': ['avg']},
                {'attribute': 'channel_name', 'aggregations': ['count']},
            ],
            'dimension_names': {'D1': 'channel'},
            'schema_name': 'speaking_time',
            'fact_name': 'observations',
        }), encoding='utf-8')
        document = OverrideReader.read(path)

        assert [m.action for m in document.measures] == [
            OverrideAction.REMOVE, OverrideAction.ADD, OverrideAction.REPLACE, OverrideAction.ADD]
        assert document.measures[1].formula == '1 - women_expression_rate'
        assert document.measures[2].aggregations == (Aggregation.AVG,)
        assert document.measures[3].target == 'channel_name'
        assert document.dimension_names == {'D1': 'channel'}
        assert (document.schema_name, document.fact_name) == ('speaking_time', 'observations')

    def test_empty_document(self):
        document = OverrideReader.from_dict({})
        assert document.measures == ()
        assert document.dimension_names == {}

    @pytest.mark.parametrize('document', [
        [],
        {'colour': 'blue'},
        {'measures': {'name': 'x'}},
        {'measures': [{'action': 'rename', 'name': 'x'}]},
        {'measures': [{'name': 'x', 'formula': 'a + b', 'attribute': 'a'}]},
        {'measures': [{'action': 'remove', 'name': 'x', 'formula': 'a'}]},
        {'measures': [{'action': 'replace', 'name': 'x'}]},
        {'measures': [{'name': 'x'}]},
        {'measures': [{'aggregations': ['sum']}]},
        {'measures': [{'attribute': 'a', 'aggregations': ['median']}]},
        {'measures': [{'attribute': 'a', 'unit': 'kg'}]},
        {'measures': [{'attribute': 3}]},
        {'dimension_names': {'D1': ' '}},
        {'dimension_names': {'D1': 7}},
        {'schema_name': ''},
    ])
    def test_invalid_documents(self, document):
        with pytest.raises(InvalidOverrideDocument):
            OverrideReader.from_dict(document)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"measures": [', encoding='utf-8')
        with pytest.raises(InvalidOverrideDocument):
            OverrideReader.read(path)
