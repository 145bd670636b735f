"""Exception hierarchy.

Each class carries the CLI exit code of its category so the command line
front end can map failures without a lookup table.
"""


class ConsiderateError(Exception):
    category = "internal"
    exit_code = 1


class StructuralError(ConsiderateError, ValueError):
    """Malformed instance, state, graph or deviation."""

    category = "structure"
    exit_code = 2


class FormatError(StructuralError):
    """A text file line that does not match its grammar."""

    category = "parse"

    def __init__(self, line_no: int, message: str, expected: str = ""):
        self.line_no = line_no
        self.expected = expected
        text = f"line {line_no}: {message}"
        if expected:
            text += f" (expected `{expected}`)"
        super().__init__(text)


class ContractViolation(ConsiderateError):
    """An operation was called outside its precondition, or a proven invariant failed."""

    category = "contract"
    exit_code = 3

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)


class BudgetExceeded(ConsiderateError):
    """Exhaustive search would exceed its configured budget."""

    category = "budget"
    exit_code = 4

    def __init__(self, what: str, limit: int, count: int):
        self.what = what
        self.limit = limit
        self.count = count
        super().__init__(f"{what} budget exceeded: {count} > {limit}")


class CliqueCapExceeded(BudgetExceeded):
    def __init__(self, limit: int, count: int):
        super().__init__("clique", limit, count)


class SolverBudgetError(ConsiderateError):
    """The solver loop ran out of iterations; the potential bound makes this a bug."""

    category = "internal"
    exit_code = 1
