"""Exception hierarchy.

Input problems (bad files, bad DSL text, invalid tasks) derive from
`InputError`; size limits raise `CapacityError`.  The CLI maps the two
families to exit codes 2 and 3.
"""


class TaskError(Exception):
    pass


class InputError(TaskError, ValueError):
    pass


class CapacityError(TaskError):
    pass


class DimensionError(InputError):
    pass


class PropernessError(InputError):
    pass


class EmptyOstensiveError(PropernessError):
    pass


class MergeError(InputError):
    pass


class GenerationError(InputError):
    pass


class TaskFileError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StatementError(InputError):
    """Base for DSL failures; `offset` is a byte offset into the UTF-8 text."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class StatementSyntaxError(StatementError):
    pass


class ScopeError(StatementError):
    pass


class ContradictionError(StatementError):
    pass
