from pathlib import Path
from typing import Any, List, Optional


class InputValidator:
    """Validates user input data"""
    @staticmethod
    def validate_threshold(value: float, var_name: str) -> float:
        """
        Validate an FD error threshold.
        Args:
            value: Threshold to validate
            var_name: Variable name for error messages
        Returns:
            Validated value
        Raises:
            ValueError: If value is outside [0, 1)
        """
        if not 0.0 <= value < 1.0:
            raise ValueError(f"{var_name}: Value must lie in [0, 1) (got {value})")
        return float(value)

    @staticmethod
    def validate_non_negative(value: int, var_name: str) -> int:
        """
        Validate that value is non-negative.
        Raises:
            ValueError: If value is negative
        """
        if value < 0:
            raise ValueError(f"{var_name}: Value must be non-negative (got {value})")
        return value

    @staticmethod
    def validate_delimiters(text: str) -> str:
        """
        Validate the multivalue delimiter set.
        Args:
            text: Delimiter characters, e.g. ",;/|"
        Returns:
            The delimiter string
        Raises:
            ValueError: If the set is empty, repeats a character or holds letters, digits or spaces
        """
        if not text:
            raise ValueError("Delimiters: at least one delimiter is required")
        if len(set(text)) != len(text):
            raise ValueError(f"Delimiters: '{text}' repeats a character")
        bad = [c for c in text if c.isalnum() or c.isspace() or c in '."']
        if bad:
            raise ValueError(f"Delimiters: '{''.join(bad)}' cannot separate values")
        return text

    @staticmethod
    def validate_path(text: str, var_name: str, required: bool = False) -> Optional[Path]:
        """Validate a file path typed by the user; empty text means no path unless required"""
        text = text.strip()
        if not text:
            if required:
                raise ValueError(f"{var_name}: A path is required")
            return None
        path = Path(text)
        if not path.is_file():
            raise ValueError(f"{var_name}: File '{text}' does not exist")
        return path

    @staticmethod
    def require_keys(document: dict, allowed: List[str], var_name: str) -> None:
        """Reject keys outside the allowed set"""
        unknown = sorted(set(document) - set(allowed))
        if unknown:
            raise ValueError(f"{var_name}: Unknown keys {unknown}")

    @staticmethod
    def require_type(value: Any, expected: type, var_name: str) -> Any:
        if not isinstance(value, expected):
            raise ValueError(f"{var_name}: Expected {expected.__name__}, got {type(value).__name__}")
        return value
