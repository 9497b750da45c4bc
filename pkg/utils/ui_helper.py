from typing import Iterable, Optional, Tuple
from PyQt6.QtWidgets import (
    QComboBox, QDoubleSpinBox, QFileDialog, QHBoxLayout, QLabel, QLineEdit, QPushButton,
    QSpinBox, QWidget
)


class UIHelper:
    """Helper methods for UI operations"""
    @staticmethod
    def create_label(text: str, max_width: Optional[int] = None,
                     style: Optional[str] = None) -> QLabel:
        """Factory method for labels"""
        label = QLabel(text)
        if max_width:
            label.setMaximumWidth(max_width)
        if style:
            label.setStyleSheet(style)
        return label

    @staticmethod
    def create_spinbox(min_val: int, max_val: int, default: int,
                       max_width: int = 100) -> QSpinBox:
        """Factory method for spinboxes"""
        spinbox = QSpinBox()
        spinbox.setMinimum(min_val)
        spinbox.setMaximum(max_val)
        spinbox.setValue(default)
        spinbox.setMaximumWidth(max_width)
        return spinbox

    @staticmethod
    def create_fraction_spinbox(default: float, step: float, max_width: int = 100) -> QDoubleSpinBox:
        """Spinbox over [0, 1) for thresholds"""
        spinbox = QDoubleSpinBox()
        spinbox.setDecimals(3)
        spinbox.setRange(0.0, 0.999)
        spinbox.setSingleStep(step)
        spinbox.setValue(default)
        spinbox.setMaximumWidth(max_width)
        return spinbox

    @staticmethod
    def create_combo(items: Iterable[str], max_width: int = 120) -> QComboBox:
        combo = QComboBox()
        combo.addItems(list(items))
        combo.setMaximumWidth(max_width)
        return combo

    @staticmethod
    def create_path_input(parent: QWidget, caption: str, file_filter: str,
                          min_width: int = 400) -> Tuple[QHBoxLayout, QLineEdit]:
        """
        Line edit with a browse button that fills it from a file dialog.
        Returns:
            The row layout and its line edit
        """
        line_edit = QLineEdit()
        line_edit.setMinimumWidth(min_width)
        button = QPushButton("Browse...")

        def browse() -> None:
            path, _ = QFileDialog.getOpenFileName(parent, caption, line_edit.text(), file_filter)
            if path:
                line_edit.setText(path)

        button.clicked.connect(browse)
        row = QHBoxLayout()
        row.addWidget(line_edit)
        row.addWidget(button)
        return row, line_edit
