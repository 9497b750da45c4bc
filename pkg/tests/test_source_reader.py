import codecs

import pytest
from utils import EmptySource, RaggedRows, RawGrid, SourceFormat, UnreadableSource
from core import SourceReader


# fixtures
@pytest.fixture
def reader():
    return SourceReader()


@pytest.fixture
def two_block_grid():
    return RawGrid.from_texts([
        ['a', 'b', '', 'x'],
        ['1', '2', '', '9'],
        ['', '', '', ''],
        ['c', 'd', '', ''],
        ['3', '4', '', ''],
    ], 'blocks.csv')


class TestDelimitedSources:

    def test_sniffs_semicolon(self, reader: SourceReader):
        assert reader.sniff_delimiter("a;b;c\n1;2;3\n4;5;6\n") == ';'

    def test_sniff_prefers_comma_on_ties(self, reader: SourceReader):
        assert reader.sniff_delimiter("a,b;c\n1,2;3\n") == ','

    def test_reads_csv_grid(self, reader: SourceReader):
        grids = reader.read_source(b"name,age\nann,31\nbob,45\n", None, 'people.csv')

        assert len(grids) == 1
        grid = grids[0]
        assert grid.texts() == [['name', 'age'], ['ann', '31'], ['bob', '45']]
        assert grid.source_name == 'people.csv'
        assert grid.dialect.field_delimiter == ','
        assert grid.dialect.encoding == 'UTF-8'

    def test_tsv_hint(self, reader: SourceReader):
        grid = reader.read_source(b"a\tb,c\n1\t2,3\n", SourceFormat.TSV)[0]
        assert grid.texts() == [['a', 'b,c'], ['1', '2,3']]

    def test_quoted_delimiters_stay_in_cell(self, reader: SourceReader):
        grid = reader.read_source(b'city,tags\nLyon,"red,blue"\nNice,green\n')[0]
        assert grid.row_texts(1) == ['Lyon', 'red,blue']

    def test_bom_is_recorded(self, reader: SourceReader):
        grid = reader.read_source(codecs.BOM_UTF8 + b"a,b\n1,2\n")[0]
        assert grid.dialect.has_bom
        assert grid.row_texts(0) == ['a', 'b']

    def test_latin1_fallback(self, reader: SourceReader):
        data = "name,city\nLéa,Besançon\n".encode('latin-1')
        grid = reader.read_source(data)[0]
        assert grid.dialect.encoding == 'Latin-1'
        assert grid.row_texts(1) == ['Léa', 'Besançon']

    def test_cells_are_trimmed(self, reader: SourceReader):
        grid = reader.read_source(b"a , b\n 1,2 \n")[0]
        assert grid.texts() == [['a', 'b'], ['1', '2']]

    def test_short_rows_are_padded(self, reader: SourceReader):
        grid = reader.read_source(b"a,b,c\n1,2\n3,4,5\n")[0]
        assert grid.n_cols == 3
        assert grid.row_texts(1) == ['1', '2', '']

    def test_lone_wide_row_is_ragged(self, reader: SourceReader):
        with pytest.raises(RaggedRows) as info:
            reader.read_source(b"a,b,c\n1,2,3\n4,5,6,7\n8,9,10\n")
        assert info.value.row == 2
        assert info.value.width == 4
        assert info.value.expected == 3


class TestUnreadableSources:

    def test_empty_bytes(self, reader: SourceReader):
        with pytest.raises(EmptySource):
            reader.read_source(b"")

    def test_blank_cells_only(self, reader: SourceReader):
        with pytest.raises(EmptySource):
            reader.read_source(b" , \n\n ,  \n")

    def test_nul_bytes(self, reader: SourceReader):
        with pytest.raises(UnreadableSource):
            reader.read_source(b"a,b\x00\n1,2\n")

    def test_binary_garbage(self, reader: SourceReader):
        with pytest.raises(UnreadableSource):
            reader.read_source(bytes([0x81, 0x82, 0x83, 0xff, 0x10]))


class TestHtmlSources:

    def test_colspan_is_replicated(self, reader: SourceReader):
        html = (b"<table><tr><th>a</th><th>b</th></tr>"
                b"<tr><td colspan='2'>x</td></tr></table>")
        grid = reader.read_source(html, None, 'page.html')[0]

        assert grid.texts() == [['a', 'b'], ['x', 'x']]
        assert grid.cells[1][0].col_span == 2
        assert grid.source_name == 'page.html#table0'

    def test_rowspan_is_replicated(self, reader: SourceReader):
        html = (b"<table><tr><td rowspan='2'>north</td><td>Lyon</td></tr>"
                b"<tr><td>Lille</td></tr></table>")
        grid = reader.read_source(html)[0]
        assert grid.texts() == [['north', 'Lyon'], ['north', 'Lille']]
        assert grid.has_spans()

    def test_one_grid_per_top_level_table(self, reader: SourceReader):
        html = (b"<html><body><table><tr><td>a</td></tr></table><p>text</p>"
                b"<table><tr><td>b</td><td>c</td></tr></table></body></html>")
        grids = reader.read_source(html, None, 'two.html')
        assert [g.texts() for g in grids] == [[['a']], [['b', 'c']]]
        assert [g.source_name for g in grids] == ['two.html#table0', 'two.html#table1']

    def test_nested_table_is_flagged(self, reader: SourceReader):
        html = (b"<table><tr><td><table><tr><td>in</td></tr></table></td>"
                b"<td>b</td></tr></table>")
        grids = reader.read_source(html)
        assert len(grids) == 1
        assert grids[0].cells[0][0].has_nested_table
        assert not grids[0].cells[0][1].has_nested_table

    def test_html_hint_forces_parser(self, reader: SourceReader):
        grid = reader.read_source(b"<TABLE><tr><td>1</td></tr></TABLE>", SourceFormat.HTML)[0]
        assert grid.texts() == [['1']]


class TestSplitTables:

    def test_single_table_is_returned_as_is(self, reader: SourceReader):
        grid = RawGrid.from_texts([['a', 'b'], ['1', '2']])
        assert reader.split_tables(grid) == [grid]

    def test_split_on_blank_rows_then_columns(self, reader: SourceReader, two_block_grid: RawGrid):
        tables = reader.split_tables(two_block_grid)

        assert [t.texts() for t in tables] == [
            [['a', 'b'], ['1', '2']],
            [['x'], ['9']],
            [['c', 'd'], ['3', '4']],
        ]
        assert [t.origin for t in tables] == [(0, 0), (0, 3), (3, 0)]

    def test_surrounding_blanks_are_trimmed(self, reader: SourceReader):
        grid = RawGrid.from_texts([['', '', ''], ['', 'a', 'b'], ['', '1', '2']])
        tables = reader.split_tables(grid)
        assert len(tables) == 1
        assert tables[0].texts() == [['a', 'b'], ['1', '2']]
        assert tables[0].origin == (1, 1)

    def test_blank_grid_has_no_table(self, reader: SourceReader):
        assert reader.split_tables(RawGrid.from_texts([['', ''], ['', '']])) == []
