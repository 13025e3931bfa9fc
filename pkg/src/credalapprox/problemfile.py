"""JSON problem files.

A problem file is one JSON object::

    {
      "states": ["w1", "w2"],
      "decisions": ["d1", "d2"],
      "loss": [["-1", "0"], ["0", "-1"]],
      "credal": [["1/2", "1/2"], ["1", "0"]]
    }

Numbers may be written as fractions or decimals, as strings or bare JSON
numbers. Decimals are converted exactly (``0.3`` is ``3/10``). Output
always uses fraction strings.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .core import CredalSet, DecisionProblem, ProbabilityCharge


class ProblemFileError(ValueError):
    """Malformed problem file; ``line`` and ``column`` locate JSON syntax errors."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _number(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
        raise ProblemFileError(f"{where}: expected a number, got {value!r}")
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"{where}: cannot parse {value!r} as a rational") from exc


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ProblemFileError(f"{where}: expected a list")
    return value


def problem_from_dict(doc: dict) -> DecisionProblem:
    if not isinstance(doc, dict):
        raise ProblemFileError("top level must be an object")
    missing = {"states", "decisions", "loss", "credal"} - set(doc)
    if missing:
        raise ProblemFileError(f"missing field(s): {', '.join(sorted(missing))}")
    states = [str(s) for s in _list(doc["states"], "states")]
    decisions = [str(d) for d in _list(doc["decisions"], "decisions")]
    loss_rows = _list(doc["loss"], "loss")
    if len(loss_rows) != len(decisions):
        raise ProblemFileError(f"loss has {len(loss_rows)} rows for {len(decisions)} decisions")
    loss = []
    for i, row in enumerate(loss_rows):
        row = _list(row, f"loss[{i}]")
        if len(row) != len(states):
            raise ProblemFileError(f"loss[{i}] has {len(row)} entries for {len(states)} states")
        loss.append(tuple(_number(v, f"loss[{i}][{j}]") for j, v in enumerate(row)))
    charges = []
    for i, vec in enumerate(_list(doc["credal"], "credal")):
        vec = _list(vec, f"credal[{i}]")
        if len(vec) != len(states):
            raise ProblemFileError(f"credal[{i}] has {len(vec)} entries for {len(states)} states")
        weights = tuple(_number(v, f"credal[{i}][{j}]") for j, v in enumerate(vec))
        try:
            charges.append(ProbabilityCharge(weights))
        except ValueError as exc:
            raise ProblemFileError(f"credal[{i}]: {exc}") from exc
    try:
        return DecisionProblem(tuple(states), tuple(decisions), tuple(loss), CredalSet(tuple(charges)))
    except ValueError as exc:
        raise ProblemFileError(str(exc)) from exc


def problem_to_dict(problem: DecisionProblem) -> dict:
    return {
        "states": list(problem.states),
        "decisions": list(problem.decisions),
        "loss": [[format_rational(v) for v in row] for row in problem.loss],
        "credal": [[format_rational(w) for w in P] for P in problem.credal],
    }


def loads(text: str) -> DecisionProblem:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(exc.msg, exc.lineno, exc.colno) from exc
    return problem_from_dict(doc)


def dumps(problem: DecisionProblem) -> str:
    return json.dumps(problem_to_dict(problem), indent=2) + "\n"


def load(path) -> DecisionProblem:
    return loads(Path(path).read_text())


def dump(problem: DecisionProblem, path) -> None:
    Path(path).write_text(dumps(problem))


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode()
    return "sha256:" + hashlib.sha256(text).hexdigest()
