from typing import Callable
from PyQt6.QtWidgets import (
    QMainWindow, QWidget, QVBoxLayout, QHBoxLayout, QLabel, QPushButton, QTabWidget, QMessageBox
)
from PyQt6.QtGui import QFont

from core.schema_pipeline import SchemaPipeline
from utils import AppConstants, PipelineStage
from utils.stylesheet import StyleSheet
from .input_widget import InputSection
from .result_widget import ResultSection


class SchemaInspectorApp(QMainWindow):
    """Main window: run the pipeline on a file and inspect every stage"""
    def __init__(self, input_section: InputSection, results_section: ResultSection,
                 pipeline_factory: Callable[[str], SchemaPipeline]) -> None:
        """
        Args:
            input_section: Form for the source and settings
            results_section: Report, preview and schema tree
            pipeline_factory: Builds a pipeline for a multivalue delimiter set
        """
        super().__init__()
        self.input_section = input_section
        self.results_section = results_section
        self.pipeline_factory = pipeline_factory

        self._setup_window()
        self.init_ui()
        self._connect_signals()

    def _setup_window(self) -> None:
        self.setWindowTitle(AppConstants.WINDOW_TITLE)
        self.setMinimumSize(AppConstants.WINDOW_SIZE[0], AppConstants.WINDOW_SIZE[1])
        self.setStyleSheet(StyleSheet.DARK_STYLE)

    def init_ui(self) -> None:
        """Initialize the user interface layout and components"""
        central_widget = QWidget()
        self.setCentralWidget(central_widget)

        main_layout = QVBoxLayout(central_widget)
        main_layout.setSpacing(AppConstants.LAYOUT_SPACING)
        m = AppConstants.LAYOUT_MARGINS
        main_layout.setContentsMargins(m, m, m, m)

        title = QLabel(AppConstants.WINDOW_TITLE)
        title_font = QFont()
        title_font.setPointSize(AppConstants.TITLE_FONT_SIZE)
        title_font.setBold(True)
        title.setFont(title_font)
        main_layout.addWidget(title)

        self.tabs = QTabWidget()
        self.tabs.addTab(self.input_section, "Input")
        self.tabs.addTab(self.results_section, "Results")
        main_layout.addWidget(self.tabs)

        buttons_layout = QHBoxLayout()
        self.run_btn = self._create_button("Run")
        buttons_layout.addWidget(self.run_btn)
        self.clear_btn = self._create_button("Clear")
        buttons_layout.addWidget(self.clear_btn)
        buttons_layout.addStretch()
        main_layout.addLayout(buttons_layout)

    @staticmethod
    def _create_button(text: str) -> QPushButton:
        button = QPushButton(text)
        button.setMinimumHeight(AppConstants.BUTTON_HEIGHT)
        font = QFont()
        font.setPointSize(AppConstants.BUTTON_FONT_SIZE)
        font.setBold(True)
        button.setFont(font)
        return button

    def _connect_signals(self) -> None:
        self.clear_btn.clicked.connect(self.on_clear)
        self.run_btn.clicked.connect(self.on_run)

    def on_clear(self) -> None:
        self.input_section.clear()
        self.results_section.clear()

    def on_run(self) -> None:
        """Handle run button click"""
        config, success, error_msg = self.input_section.get_config()
        if not success:
            QMessageBox.warning(self, "Input Error", error_msg)
            return
        pipeline = self.pipeline_factory(config.delimiters)
        result = pipeline.run(config, until=PipelineStage.SCHEMA)
        self.tabs.setCurrentIndex(1)
        self.results_section.display_results(result)
