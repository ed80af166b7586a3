"""Symbols, extended symbols, semi-norms and class membership."""

from warpkit.symbolkit.expr import CompiledExpression, ExpressionError, VariableSet, parse_expression
from warpkit.symbolkit.extended import (
    ExtendedSymbol,
    LocalIntegrabilityError,
    SupportError,
    extended_seminorm,
    pair_symbolic_distribution,
    pairing_quadrature,
)
from warpkit.symbolkit.family import FamilyMember, SymbolFamily
from warpkit.symbolkit.seminorms import (
    InvalidSamplingError,
    MembershipReport,
    SamplingSpec,
    SeminormEstimate,
    estimate_seminorm,
    verify_membership,
)
from warpkit.symbolkit.symbols import (
    BilinearForm,
    IncompatibleSymbolsError,
    Symbol,
    SymbolEvaluationError,
    UnsupportedOrderError,
    eval_symbol,
    symbol_derivative,
    symbol_product,
)
from warpkit.symbolkit.testfunction import TestFunction, XQuadratureSpec, box_quadrature, graded_panels

__all__ = [
    "BilinearForm",
    "CompiledExpression",
    "ExpressionError",
    "ExtendedSymbol",
    "FamilyMember",
    "IncompatibleSymbolsError",
    "InvalidSamplingError",
    "LocalIntegrabilityError",
    "MembershipReport",
    "SamplingSpec",
    "SeminormEstimate",
    "SupportError",
    "Symbol",
    "SymbolEvaluationError",
    "SymbolFamily",
    "TestFunction",
    "UnsupportedOrderError",
    "VariableSet",
    "XQuadratureSpec",
    "box_quadrature",
    "estimate_seminorm",
    "eval_symbol",
    "extended_seminorm",
    "graded_panels",
    "pair_symbolic_distribution",
    "pairing_quadrature",
    "parse_expression",
    "symbol_derivative",
    "symbol_product",
]
