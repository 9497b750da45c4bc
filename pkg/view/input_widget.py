from typing import Optional, Tuple
from PyQt6.QtWidgets import QFormLayout, QGroupBox, QLineEdit, QVBoxLayout

from utils import ClassifyConstants, InputValidator, InputWidgetConstants, PipelineConfig, SourceFormat
from utils.ui_helper import UIHelper

AUTO_FORMAT = "auto"


class InputSection(QGroupBox):
    """Form collecting the source file and the pipeline settings"""
    def __init__(self) -> None:
        super().__init__("Source and Settings")
        self._init_widgets()
        self._init_ui()

    def _init_widgets(self) -> None:
        """Initialize widgets"""
        self.source_row, self.source_input = UIHelper.create_path_input(
            self, "Open source", "Tables (*.csv *.tsv *.txt *.html *.htm);;All files (*)",
            InputWidgetConstants.PATH_INPUT_MIN_WIDTH
        )
        self.override_row, self.override_input = UIHelper.create_path_input(
            self, "Open override document", "JSON (*.json);;All files (*)",
            InputWidgetConstants.PATH_INPUT_MIN_WIDTH
        )
        self.format_combo = UIHelper.create_combo(
            [AUTO_FORMAT] + [f.value for f in SourceFormat], InputWidgetConstants.SHORT_INPUT_WIDTH
        )
        self.threshold_spin = UIHelper.create_fraction_spinbox(0.0, 0.01, InputWidgetConstants.SPINBOX_WIDTH)
        self.delimiters_input = QLineEdit(ClassifyConstants.MULTIVALUE_DELIMITERS)
        self.delimiters_input.setMaximumWidth(InputWidgetConstants.SHORT_INPUT_WIDTH)
        self.table_spin = UIHelper.create_spinbox(
            0, InputWidgetConstants.MAX_TABLE_INDEX, 0, InputWidgetConstants.SPINBOX_WIDTH
        )

    def _init_ui(self) -> None:
        """Initialize the input section UI"""
        layout = QVBoxLayout(self)
        layout.setSpacing(15)

        form = QFormLayout()
        form.setSpacing(10)
        form.addRow(self._label("Source file:"), self.source_row)
        form.addRow(self._label("Format:"), self.format_combo)
        form.addRow(self._label("FD threshold:"), self.threshold_spin)
        form.addRow(self._label("Delimiters:"), self.delimiters_input)
        form.addRow(self._label("Table index:"), self.table_spin)
        form.addRow(self._label("Overrides:"), self.override_row)
        layout.addLayout(form)

        layout.addWidget(UIHelper.create_label(
            "Edit the override document and run again to correct measures or names.",
            style="color: #aaaaaa; font-style: italic;"
        ))
        layout.addStretch()

    @staticmethod
    def _label(text: str):
        return UIHelper.create_label(text, InputWidgetConstants.LABEL_WIDTH)

    def get_config(self) -> Tuple[Optional[PipelineConfig], bool, str]:
        """
        Extract and validate the form.
        Returns:
            PipelineConfig: Settings for one pipeline run, None on failure
            bool: True if extraction and validation succeeded, otherwise False
            str: Error message if validation failed, empty string otherwise
        """
        fmt = self.format_combo.currentText()
        try:
            config = PipelineConfig(
                input_path=InputValidator.validate_path(self.source_input.text(), "Source file", required=True),
                format_hint=None if fmt == AUTO_FORMAT else SourceFormat(fmt),
                fd_threshold=self.threshold_spin.value(),
                delimiters=self.delimiters_input.text(),
                override_path=InputValidator.validate_path(self.override_input.text(), "Overrides"),
                table_index=self.table_spin.value()
            )
        except ValueError as e:
            return None, False, str(e)
        return config, True, ""

    def clear(self) -> None:
        """Reset every field"""
        self.source_input.clear()
        self.override_input.clear()
        self.format_combo.setCurrentIndex(0)
        self.threshold_spin.setValue(0.0)
        self.delimiters_input.setText(ClassifyConstants.MULTIVALUE_DELIMITERS)
        self.table_spin.setValue(0)
