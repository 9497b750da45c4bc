class StyleSheet:
    DARK_STYLE = """
        QMainWindow, QWidget {
            background-color: #1c1f24;
            color: #e8e8e8;
        }

        QGroupBox {
            border: 2px solid #363b44;
            border-radius: 5px;
            margin-top: 10px;
            padding-top: 10px;
        }

        QGroupBox::title {
            subcontrol-origin: margin;
            left: 10px;
            padding: 0 3px 0 3px;
        }

        QLineEdit, QComboBox, QSpinBox, QDoubleSpinBox {
            background-color: #2a2e35;
            border: 1px solid #363b44;
            border-radius: 4px;
            padding: 5px;
            selection-background-color: #2e7d6b;
        }

        QComboBox QAbstractItemView {
            background-color: #2a2e35;
            selection-background-color: #2e7d6b;
            border: 1px solid #363b44;
        }

        QPushButton {
            background-color: #2e7d6b;
            border: none;
            border-radius: 4px;
            padding: 8px 16px;
            font-weight: bold;
        }

        QPushButton:hover {
            background-color: #379683;
        }

        QPushButton:pressed {
            background-color: #24665a;
        }

        QTextEdit, QPlainTextEdit, QTreeWidget {
            background-color: #2a2e35;
            border: 1px solid #363b44;
            border-radius: 4px;
            padding: 5px;
            font-family: monospace;
        }

        QTreeWidget::item:selected {
            background-color: #2e7d6b;
        }

        QHeaderView::section {
            background-color: #363b44;
            padding: 5px;
            border: 1px solid #454b55;
        }

        QTabBar::tab {
            background-color: #2a2e35;
            padding: 6px 14px;
        }

        QTabBar::tab:selected {
            background-color: #363b44;
        }
    """
