"""Restricted arithmetic expressions in one integer variable ``k``.

Only numeric literals, ``k``, the usual arithmetic operators and a few
math functions are accepted, so documents loaded from disk cannot run
arbitrary code.
"""

from __future__ import annotations

import ast
import math
import operator
from fractions import Fraction

from .errors import DomainError

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
    ast.Mod: operator.mod,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {
    "abs": abs,
    "sqrt": math.sqrt,
    "log": math.log,
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
}


def compile_expression(source: str, exact: bool = False):
    """Return ``f(k)`` evaluating ``source``.

    In exact mode numeric literals become Fractions and ``k`` is passed
    as an int, so ``1/k**2`` stays rational.
    """
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse expression {source!r}: {exc.msg}") from exc
    _validate(tree.body, source)

    def evaluate(node, k):
        if isinstance(node, ast.Constant):
            if exact:
                return Fraction(repr(node.value)) if isinstance(node.value, float) else Fraction(node.value)
            return node.value
        if isinstance(node, ast.Name):
            return k
        if isinstance(node, ast.BinOp):
            left, right = evaluate(node.left, k), evaluate(node.right, k)
            if exact and isinstance(node.op, ast.Div):
                return Fraction(left) / Fraction(right)
            return _BINOPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp):
            return _UNARY[type(node.op)](evaluate(node.operand, k))
        func = _FUNCS[node.func.id]
        return func(*(evaluate(a, k) for a in node.args))

    body = tree.body
    return lambda k: evaluate(body, k)


def _validate(node, source):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return
    elif isinstance(node, ast.Name):
        if node.id == "k":
            return
    elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        _validate(node.left, source)
        _validate(node.right, source)
        return
    elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        _validate(node.operand, source)
        return
    elif (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and not node.keywords
    ):
        for arg in node.args:
            _validate(arg, source)
        return
    raise DomainError(f"unsupported construct {ast.dump(node)[:40]} in expression {source!r}")
