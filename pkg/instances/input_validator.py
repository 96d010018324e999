# instances/input_validator.py
"""
Validation of raw instance-file content before any structure is built.
Every check returns (is_valid, error_message) so the loader can report the
first problem with its location.
"""

from fractions import Fraction

from instances import schemas


class InstanceValidator:
    """Validates the pieces of an instance file."""

    # Limits that keep hand-written files in the range the searches can handle
    MAX_LABEL_LENGTH = 64
    MAX_SET_SIZE = 4096
    MAX_MONOID_SIZE = 64

    # Product elements are spelled "(a,b)", so these would make them ambiguous
    RESERVED_LABEL_CHARS = ",()"

    @staticmethod
    def validate_format_version(version) -> tuple[bool, str]:
        """
        Validates the declared format version.

        Args:
            version: The value of "format_version"

        Returns:
            tuple: (is_valid, error_message)
        """
        if version is None:
            return (False, "Missing format_version")
        if version != schemas.FORMAT_VERSION:
            return (False, f"Unsupported format_version {version!r} (expected {schemas.FORMAT_VERSION})")
        return (True, "")

    @staticmethod
    def validate_category(category) -> tuple[bool, str]:
        if category not in schemas.CATEGORIES:
            return (False, f"Unknown category {category!r} (expected one of {', '.join(schemas.CATEGORIES)})")
        return (True, "")

    @staticmethod
    def validate_labels(labels) -> tuple[bool, str]:
        """
        Validates a list of element labels.

        Args:
            labels: The label list from a set definition

        Returns:
            tuple: (is_valid, error_message)
        """
        if not isinstance(labels, list) or not labels:
            return (False, "A set needs a non-empty list of labels")
        if len(labels) > InstanceValidator.MAX_SET_SIZE:
            return (False, f"Set too large (max {InstanceValidator.MAX_SET_SIZE} elements)")
        for label in labels:
            if not isinstance(label, (str, int)) or isinstance(label, bool):
                return (False, f"Label {label!r} must be a string or an integer")
            if not str(label).strip():
                return (False, "Labels cannot be empty")
            if len(str(label)) > InstanceValidator.MAX_LABEL_LENGTH:
                return (False, f"Label too long (max {InstanceValidator.MAX_LABEL_LENGTH} characters)")
            if any(ch in InstanceValidator.RESERVED_LABEL_CHARS for ch in str(label)):
                return (False, f"Label {label!r} cannot contain ',', '(' or ')'")
        if len({str(label) for label in labels}) != len(labels):
            return (False, "Labels must be distinct")
        return (True, "")

    @staticmethod
    def validate_probability(value) -> tuple[bool, str]:
        """
        Validates a kernel entry written as "p/q", a decimal string, or a number.

        Returns:
            tuple: (is_valid, error_message)
        """
        if isinstance(value, bool) or not isinstance(value, (str, int, float)):
            return (False, f"Probability {value!r} must be a number or a \"p/q\" string")
        try:
            parsed = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
        except (ValueError, ZeroDivisionError):
            return (False, f"Cannot read {value!r} as a probability")
        if parsed < 0 or parsed > 1:
            return (False, f"Probability {value!r} outside [0, 1]")
        return (True, "")

    @staticmethod
    def validate_count(value) -> tuple[bool, str]:
        if isinstance(value, bool) or not isinstance(value, int):
            return (False, f"Count {value!r} must be an integer")
        if value < 0:
            return (False, f"Count {value!r} must be a natural number")
        return (True, "")

    @staticmethod
    def validate_table(table, size: int) -> tuple[bool, str]:
        """Checks that an operation table is a size x size list of lists."""
        if size > InstanceValidator.MAX_MONOID_SIZE:
            return (False, f"Table too large (max {InstanceValidator.MAX_MONOID_SIZE} elements)")
        if not isinstance(table, list) or len(table) != size:
            return (False, f"Operation table needs {size} rows")
        for row in table:
            if not isinstance(row, list) or len(row) != size:
                return (False, f"Every operation table row needs {size} entries")
        return (True, "")

    @staticmethod
    def validate_definitions(definitions) -> tuple[bool, str]:
        """Validates a definition selection such as ["D1.a", "D1.e(1,2)"]."""
        for definition in definitions:
            if definition not in schemas.ALL_DEFINITIONS and not schemas.is_pair_definition(definition):
                return (False, f"Unknown definition {definition!r}")
        return (True, "")

    @staticmethod
    def validate_expected(expected) -> tuple[bool, str]:
        if not isinstance(expected, dict):
            return (False, "\"expected\" must map definitions to verdicts")
        allowed = {"holds", "fails", "undecided", "not-applicable"}
        for definition, verdict in expected.items():
            valid, message = InstanceValidator.validate_definitions([definition])
            if not valid:
                return (False, message)
            if verdict not in allowed:
                return (False, f"Expected verdict {verdict!r} for {definition} is not one of {sorted(allowed)}")
        return (True, "")
