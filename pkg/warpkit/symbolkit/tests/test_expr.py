"""Tests for the JSON expression grammar."""

import numpy as np
import pytest
import sympy

from warpkit.symbolkit.expr import CompiledExpression, ExpressionError, VariableSet, parse_expression


class TestParseExpression:
    """Test parsing of grammar nodes."""

    def setup_method(self):
        self.variables = VariableSet(k=1, s=1)
        self.theta = self.variables.theta[0]
        self.xi = self.variables.xi[0]
        self.x = self.variables.x[0]

    def test_gauss_over_xi(self):
        """Test gauss node over a single group."""
        expr = parse_expression({"gauss": {"over": "xi"}}, self.variables).expr
        assert sympy.simplify(expr - sympy.exp(-self.xi**2)) == 0

    def test_complex_constant(self):
        """Test [re, im] pairs become complex numbers."""
        expr = parse_expression({"const": [1, 2]}, self.variables).expr
        assert complex(expr) == 1 + 2j

    def test_bilinear_node(self):
        """Test bilinear form between theta and xi."""
        node = {"bilinear": {"left": "theta", "right": "xi", "matrix": [[3]]}}
        expr = parse_expression(node, self.variables).expr
        assert sympy.simplify(expr - 3 * self.theta * self.xi) == 0

    def test_singular_profiles_record_breakpoints(self):
        """Test abspow and heaviside record their x breakpoints."""
        node = {
            "prod": [
                {"abspow": {"index": 0, "center": 0.0, "exponent": -0.5}},
                {"heaviside": {"index": 0, "at": 0.25}},
            ]
        }
        parsed = parse_expression(node, self.variables)
        assert parsed.breakpoints == {0: (0.0, 0.25)}

    def test_unknown_node(self):
        """Test unknown node kinds are rejected."""
        with pytest.raises(ExpressionError, match="Unknown expression node"):
            parse_expression({"tanh": 1}, self.variables)

    def test_multi_key_node(self):
        """Test nodes must have exactly one key."""
        with pytest.raises(ExpressionError, match="exactly one key"):
            parse_expression({"exp": 1, "sin": 1}, self.variables)

    def test_variable_out_of_range(self):
        """Test variable indices are bounds-checked."""
        with pytest.raises(ExpressionError, match="out of range"):
            parse_expression({"var": ["theta", 3]}, self.variables)


class TestCompiledExpression:
    """Test lambdified derivatives."""

    def test_partial_derivative(self):
        """Test d/dxi of theta*xi evaluates to theta."""
        variables = VariableSet(k=1)
        theta, xi = variables.theta[0], variables.xi[0]
        compiled = CompiledExpression(theta * xi, variables)
        values = compiled((0, 1), np.array([2.0, -1.0]), np.array([5.0, 7.0]))
        np.testing.assert_allclose(values, [2.0, -1.0])

    def test_constant_derivative_broadcasts(self):
        """Test derivatives that vanish still broadcast to the input shape."""
        variables = VariableSet(k=1)
        compiled = CompiledExpression(variables.theta[0], variables)
        values = compiled((0, 1), np.zeros((3, 4)), np.zeros((3, 4)))
        assert values.shape == (3, 4)
        assert np.all(values == 0)

    def test_depends_on(self):
        """Test group dependency detection."""
        variables = VariableSet(k=1)
        compiled = CompiledExpression(sympy.exp(-variables.xi[0] ** 2), variables)
        assert compiled.depends_on("xi")
        assert not compiled.depends_on("theta")

    def test_wrong_order_length(self):
        """Test derivative orders must cover every variable."""
        variables = VariableSet(k=1)
        compiled = CompiledExpression(variables.theta[0], variables)
        with pytest.raises(ExpressionError, match="derivative orders"):
            compiled.derivative((1,))
