"""A small textual rule language compiling to freechr programs."""
from .compiler import compile_rule, compile_rules, eval_expr, shape_predicate
from .parser import parse_program, tokenize
from .syntax import RuleSyntax, format_expr, format_pattern, format_program, format_rule


def load_program(text: str):
    """Parse and compile ``text`` in one go."""
    return compile_rules(parse_program(text), text)


def load_file(path):
    with open(path, encoding="utf-8") as f:
        return load_program(f.read())
