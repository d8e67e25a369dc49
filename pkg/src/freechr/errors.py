"""Exception hierarchy shared by all freechr modules."""


class ChrError(Exception):
    """Base class for every error raised by freechr."""


class PositionedError(ChrError):
    """An error tied to a location in some source text.

    ``pos`` is a 0-based character offset, ``line``/``col`` are 1-based.
    """

    def __init__(self, message, text=None, pos=None):
        self.message = message
        self.pos = pos
        self.line = self.col = None
        if text is not None and pos is not None:
            self.line = text.count("\n", 0, pos) + 1
            self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(str(self))

    def __str__(self):
        if self.line is not None:
            return f"{self.line}:{self.col}: {self.message}"
        if self.pos is not None:
            return f"at {self.pos}: {self.message}"
        return self.message


class ValueSyntaxError(PositionedError, ValueError):
    pass


class EvaluationError(PositionedError):
    """Guard or body evaluation failed (type mismatch, overflow, division by zero)."""


class ProgramError(ChrError):
    pass


class EmptyHeadError(ProgramError):
    pass


class DuplicateRuleError(ProgramError):
    pass


class EmptyProgramError(ProgramError):
    pass


class StateError(ChrError):
    """A partial state operation was applied outside its domain."""


class EmptyQueryError(StateError):
    pass


class AlreadyActiveError(StateError):
    pass


class MissingIdentifierError(StateError):
    pass


class StepBudgetExceeded(ChrError):
    """The run did not terminate within ``max_steps`` root-level calls."""

    def __init__(self, max_steps, state, trace):
        self.max_steps = max_steps
        self.state = state
        self.trace = trace
        super().__init__(f"step budget of {max_steps} exhausted")


class OracleBudgetExceeded(ChrError):
    pass


class DslError(PositionedError):
    pass


class DslSyntaxError(DslError):
    pass


class UnboundVariableError(DslError):
    pass


class DslEmptyHeadError(DslError, EmptyHeadError):
    pass


class DslDuplicateRuleError(DslError, DuplicateRuleError):
    pass
