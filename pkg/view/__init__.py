from .input_widget import InputSection
from .result_widget import ResultSection
from .app_window import SchemaInspectorApp
