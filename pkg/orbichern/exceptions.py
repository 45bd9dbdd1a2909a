"""
Exception classes for orbichern

Every engine failure is raised as an OrbiChernError subclass carrying an
error code and a context dictionary, so the CLI can map failures to exit
codes and JSON reports without string matching.
"""

from typing import Optional, Dict, Any, List


class OrbiChernError(Exception):
    """Base exception for all orbichern errors"""

    def __init__(self, message: str, source_location: Optional[str] = None,
                 error_code: Optional[str] = None, context: Optional[Dict[str, Any]] = None):
        self.message = message
        self.source_location = source_location
        self.error_code = error_code
        self.context = context or {}

        full_message = message
        if source_location:
            full_message += f" at {source_location}"
        if error_code:
            full_message += f" ({error_code})"

        super().__init__(full_message)


class SpecParseError(OrbiChernError):
    """Error while parsing a group spec, cycle notation or JSON input"""

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: Optional[List[str]] = None, text: Optional[str] = None):
        location = f"line {line}, column {column}" if line else None
        context = {"line": line, "column": column, "expected": expected, "text": text}
        super().__init__(message, location, "PARSE_ERROR", context)


class PreconditionError(OrbiChernError):
    """An operation was called outside its domain"""

    def __init__(self, message: str, operation: Optional[str] = None):
        context = {"operation": operation} if operation else {}
        super().__init__(message, None, "PRECONDITION_ERROR", context)


class TruncationMismatchError(PreconditionError):
    """Two truncated objects of different order were combined"""

    def __init__(self, left: int, right: int, operation: Optional[str] = None):
        OrbiChernError.__init__(
            self,
            f"truncation orders differ: {left} != {right}",
            None,
            "TRUNCATION_MISMATCH",
            {"left": left, "right": right, "operation": operation},
        )


class BudgetExceededError(OrbiChernError):
    """An enumeration would exceed its configured budget"""

    def __init__(self, message: str, required: Optional[int] = None,
                 budget: Optional[int] = None, error_code: str = "BUDGET_EXCEEDED"):
        context = {"required": required, "budget": budget}
        super().__init__(message, None, error_code, context)


class GroupCapError(BudgetExceededError):
    """Group closure grew past the element cap"""

    def __init__(self, cap: int):
        super().__init__(
            f"group closure exceeded {cap} elements",
            required=None,
            budget=cap,
            error_code="GROUP_CAP_EXCEEDED",
        )


class UnsupportedGroupError(OrbiChernError):
    """The requested operation is not available for this group family"""

    def __init__(self, message: str, group: Optional[str] = None):
        context = {"group": group} if group else {}
        super().__init__(message, None, "UNSUPPORTED_GROUP", context)


class ConsistencyError(OrbiChernError):
    """Two independent computations of the same quantity disagree"""

    def __init__(self, message: str, expected: Any = None, actual: Any = None):
        context = {"expected": str(expected), "actual": str(actual)}
        super().__init__(message, None, "CONSISTENCY_ERROR", context)


def format_error_with_context(error: OrbiChernError, source_text: str) -> str:
    """Format a parse error with the offending spec text and a caret"""
    if not error.source_location or "line" not in error.context:
        return str(error)

    lines = source_text.split('\n')
    line_num = error.context["line"]
    column = error.context.get("column") or 1

    if line_num <= 0 or line_num > len(lines):
        return str(error)

    context_lines = [
        f">>> {lines[line_num - 1]}",
        "    " + " " * (column - 1) + "^",
    ]
    expected = error.context.get("expected")
    if expected:
        context_lines.append(f"expected one of: {', '.join(sorted(expected))}")

    return f"{error}\n\n" + "\n".join(context_lines)

