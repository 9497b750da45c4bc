from PyQt6.QtWidgets import QGroupBox, QLabel, QPlainTextEdit, QTabWidget, QTreeWidget, QTreeWidgetItem, QVBoxLayout
from PyQt6.QtCore import Qt
from utils import MultidimensionalSchema, PipelineResult, ReportFormatter, ResultWidgetConstants
from utils.ui_helper import UIHelper

IDLE_STYLE = ("font-size: 14pt; font-weight: bold; padding: 10px; "
              "background-color: #3a3a3a; border-radius: 5px;")


class ResultSection(QGroupBox):
    """Status, stage report, canonical table preview and schema tree of one run"""
    def __init__(self) -> None:
        super().__init__("Results")
        self._init_ui()

    def _init_ui(self) -> None:
        layout = QVBoxLayout(self)
        layout.setSpacing(15)

        self.status_label = QLabel("No results yet")
        self.status_label.setStyleSheet(IDLE_STYLE)
        self.status_label.setAlignment(Qt.AlignmentFlag.AlignCenter)
        layout.addWidget(self.status_label)

        layout.addWidget(UIHelper.create_label(
            "Report:", style="font-size: 11pt; font-weight: bold;"
        ))
        self.report_text = self._create_text_view()
        self.report_text.setMaximumHeight(ResultWidgetConstants.REPORT_HEIGHT)
        layout.addWidget(self.report_text)

        self.views = QTabWidget()
        self.views.setMinimumHeight(ResultWidgetConstants.MIN_PREVIEW_HEIGHT)
        self.schema_tree = QTreeWidget()
        self.schema_tree.setHeaderLabels(["Element", "Details"])
        self.views.addTab(self.schema_tree, "Schema")
        self.preview_text = self._create_text_view()
        self.views.addTab(self.preview_text, "Canonical Table")
        layout.addWidget(self.views)

    @staticmethod
    def _create_text_view() -> QPlainTextEdit:
        text = QPlainTextEdit()
        text.setReadOnly(True)
        text.setLineWrapMode(QPlainTextEdit.LineWrapMode.NoWrap)
        return text

    def display_results(self, result: PipelineResult) -> None:
        """
        Show the outcome of one pipeline run.
        Args:
            result: PipelineResult, successful or not
        """
        status_text, status_color = ReportFormatter.format_status(result.status)
        self.status_label.setText(f"Status: {status_text}")
        self.status_label.setStyleSheet(
            f"font-size: 14pt; font-weight: bold; padding: 10px; "
            f"background-color: {status_color}; border-radius: 5px; color: #ffffff;"
        )
        self.report_text.setPlainText("\n".join(result.report))
        if result.table is not None:
            self.preview_text.setPlainText(ReportFormatter.format_table_preview(result.table))
        else:
            self.preview_text.clear()
        self.schema_tree.clear()
        if result.schema is not None:
            self._fill_schema_tree(result.schema)

    def _fill_schema_tree(self, schema: MultidimensionalSchema) -> None:
        root = QTreeWidgetItem([schema.name, "schema"])
        fact = QTreeWidgetItem(root, [schema.fact.name, "fact"])
        for measure in schema.fact.measures:
            aggs = ", ".join(agg.value for agg in measure.aggregations)
            source = measure.formula or measure.attribute or "*"
            QTreeWidgetItem(fact, [measure.name, f"{source} [{aggs}] {measure.origin.value}"])
        for dimension in schema.dimensions:
            dim_item = QTreeWidgetItem(root, [dimension.name, f"dimension on {dimension.root}"])
            for hierarchy in dimension.hierarchies:
                h_item = QTreeWidgetItem(dim_item, [hierarchy.name, " > ".join(hierarchy.path)])
                for level in hierarchy.levels:
                    weak = ", ".join(level.weak_attributes)
                    QTreeWidgetItem(h_item, [level.parameter, f"weak: {weak}" if weak else ""])
        self.schema_tree.addTopLevelItem(root)
        self.schema_tree.expandAll()

    def clear(self) -> None:
        """Clear all results"""
        self.status_label.setText("No results yet")
        self.status_label.setStyleSheet(IDLE_STYLE)
        self.report_text.clear()
        self.preview_text.clear()
        self.schema_tree.clear()
