import logging
import operator
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import numpy as np
from pyparsing import (
    Forward, Group, Literal, Optional, ParseBaseException, QuotedString, Regex, Word, ZeroOrMore,
    alphanums, alphas
)

from utils import CanonicalTable, MalformedFormula, UnknownAttributeInFormula, ValueParser

logger = logging.getLogger(__name__)

Instruction = Tuple[str, object]


@dataclass(frozen=True)
class ParsedFormula:
    """A formula compiled to postfix instructions"""
    text: str
    program: Tuple[Instruction, ...]
    references: FrozenSet[str]


class FormulaParser:
    """
    Arithmetic over attributes for derived measures.
        atom   :: ['-'] (number | name | '[' any name ']' | '(' expr ')')
        term   :: atom [('*' | '/') atom]*
        expr   :: term [('+' | '-') term]*
    Evaluation is vectorised over the rows; missing or non-numeric values and
    division by zero give a missing result.
    """
    OPERATIONS = {
        '+': operator.add,
        '-': operator.sub,
        '*': operator.mul,
        '/': operator.truediv,
    }

    def __init__(self):
        self._program: List[Instruction] = []

        number = Regex(r'\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+').set_parse_action(
            lambda t: self._program.append(('num', float(t[0]))))
        name = (Word(alphas + '_', alphanums + '_') | QuotedString('[', end_quote_char=']')).set_parse_action(
            lambda t: self._program.append(('ref', t[0])))
        lpar, rpar = Literal('(').suppress(), Literal(')').suppress()
        addop = Literal('+') | Literal('-')
        multop = Literal('*') | Literal('/')

        expr = Forward()
        atom = (Optional(Literal('-')) + (number | name | Group(lpar - expr - rpar))).set_parse_action(
            self._push_unary_minus)
        term = atom + ZeroOrMore((multop - atom).set_parse_action(self._push_operator))
        expr <<= term + ZeroOrMore((addop - term).set_parse_action(self._push_operator))
        self.bnf = expr

    def _push_operator(self, tokens) -> None:
        self._program.append(('op', tokens[0]))

    def _push_unary_minus(self, tokens) -> None:
        if tokens and tokens[0] == '-':
            self._program.append(('neg', None))

    def parse(self, formula: str) -> ParsedFormula:
        """
        Compile a formula.
        Raises:
            MalformedFormula: With the offset of the first offending character
        """
        self._program = []
        try:
            self.bnf.parse_string(formula, parse_all=True)
        except ParseBaseException as e:
            raise MalformedFormula(formula, e.loc, e.msg)
        program = tuple(self._program)
        references = frozenset(value for kind, value in program if kind == 'ref')
        return ParsedFormula(formula, program, references)

    @staticmethod
    def evaluate(parsed: ParsedFormula, columns: Dict[str, np.ndarray], n_rows: int) -> np.ndarray:
        """
        Args:
            parsed: Compiled formula
            columns: Float array per referenced attribute, NaN for missing values
            n_rows: Row count
        Returns:
            Float array, NaN where the result is missing
        """
        stack: List[np.ndarray] = []
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            for kind, value in parsed.program:
                if kind == 'num':
                    stack.append(np.full(n_rows, value, dtype=float))
                elif kind == 'ref':
                    stack.append(np.asarray(columns[value], dtype=float))
                elif kind == 'neg':
                    stack.append(-stack.pop())
                else:
                    right, left = stack.pop(), stack.pop()
                    stack.append(FormulaParser.OPERATIONS[value](left, right))
        result = stack.pop().copy()
        result[~np.isfinite(result)] = np.nan
        return result

    def evaluate_formula(self, formula: str, table: CanonicalTable) -> np.ndarray:
        """
        Evaluate a formula over every row of a canonical table.
        Raises:
            MalformedFormula: If the formula does not parse
            UnknownAttributeInFormula: If it names an attribute the table lacks
        """
        parsed = self.parse(formula)
        for attribute in sorted(parsed.references):
            if attribute not in table.attributes:
                raise UnknownAttributeInFormula(attribute, formula)
        columns = {a: ValueParser.to_numbers(table.column(a)) for a in parsed.references}
        logger.debug("Evaluating '%s' over %d rows", formula, table.n_rows)
        return self.evaluate(parsed, columns, table.n_rows)
