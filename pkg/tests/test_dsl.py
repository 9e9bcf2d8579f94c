import numpy as np
import pytest
from hypothesis import given, strategies as st

from nhbrackets.dsl import (Add, Adjoint, Atom, Call, Kron, Mul, Scalar, Scale, evaluate,
                            parse_expression, to_source, tokenize)
from nhbrackets.errors import DimMismatch, ExprError, ExprSyntaxError, UnknownSymbol

from oracles import I2, SX, SY, SZ

I4 = np.eye(4)


def kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = np.kron(out, m)
    return out


def dimer(g, v):
    return np.array([[1j * g, v], [v, -1j * g]])


# (expression, hand-built matrix)
CORPUS = [
    ("sigma_x", SX),
    ("sigma_y", SY),
    ("sigma_z", SZ),
    ("id(1)", np.eye(1)),
    ("id(3)", np.eye(3)),
    ("sigma_z + 0.5i*sigma_x", np.array([[1, 0.5j], [0.5j, -1]])),
    ("kron(sigma_z, id(2))", np.diag([1, 1, -1, -1])),
    ("kron(id(2), sigma_z)", np.diag([1, -1, 1, -1])),
    ("sigma_x*sigma_y", 1j * SZ),
    ("sigma_y*sigma_x", -1j * SZ),
    ("sigma_x*sigma_y*sigma_z", 1j * I2),
    ("sigma_x - sigma_x", np.zeros((2, 2))),
    ("-sigma_z", -SZ),
    ("--sigma_z", SZ),
    ("2*sigma_x", 2 * SX),
    ("sigma_x*2", 2 * SX),
    ("2*3*sigma_y", 6 * SY),
    ("0.5*sigma_x*sigma_z", 0.5 * SX @ SZ),
    ("(1+2i)*sigma_z", (1 + 2j) * SZ),
    ("(1-2i)*sigma_z", (1 - 2j) * SZ),
    ("-0.25i*sigma_y", -0.25j * SY),
    ("1e-3*sigma_x", 1e-3 * SX),
    ("2.5e+1*id(2)", 25 * I2),
    (".5*sigma_z", 0.5 * SZ),
    ("adj(sigma_y)", SY),
    ("adj(0.5i*sigma_x)", -0.5j * SX),
    ("adj(sigma_x*sigma_y)", -1j * SZ),
    ("adj(pt_dimer(0.5, 1))", dimer(0.5, 1).conj().T),
    ("pt_dimer(0.5, 1)", dimer(0.5, 1)),
    ("pt_dimer(1, 1)", dimer(1, 1)),
    ("pt_dimer(0, 2)", 2 * SX),
    ("decay(0.2, 2)", -0.1j * I2),
    ("decay(1, 3)", -0.5j * np.eye(3)),
    ("chain(2, 1, 0)", SX),
    ("chain(3, 0.5, 0.1)", np.array([[0.1j, 0.5, 0], [0.5, -0.1j, 0.5], [0, 0.5, 0.1j]])),
    ("chain(4, 1, 0)", np.eye(4, k=1) + np.eye(4, k=-1)),
    ("proj(0, 2)", np.diag([1, 0])),
    ("proj(1, 3)", np.diag([0, 1, 0])),
    ("0.5*(id(2) + sigma_z)", np.diag([1, 0])),
    ("(sigma_x + sigma_z)*(sigma_x - sigma_z)", (SX + SZ) @ (SX - SZ)),
    ("kron(sigma_x, sigma_y)", np.kron(SX, SY)),
    ("kron(sigma_x, sigma_y, sigma_z)", kron(SX, SY, SZ)),
    ("kron(sigma_x, id(2)) + kron(id(2), sigma_x)", np.kron(SX, I2) + np.kron(I2, SX)),
    ("kron(sigma_z, sigma_z)*kron(sigma_x, sigma_x)", np.kron(SZ @ SX, SZ @ SX)),
    ("adj(kron(sigma_y, 1i*sigma_x))", np.kron(SY, 1j * SX).conj().T),
    ("kron(pt_dimer(0.5, 1), id(2))", np.kron(dimer(0.5, 1), I2)),
    ("sigma_z + 0.1i*sigma_x - 0.2*sigma_y", SZ + 0.1j * SX - 0.2 * SY),
    ("sigma_x + sigma_y + sigma_z", SX + SY + SZ),
    ("sigma_x + (sigma_y + sigma_z)", SX + SY + SZ),
    ("sigma_x*(sigma_y*sigma_z)", 1j * I2),
    ("(-1*sigma_x)*sigma_y", -1j * SZ),
    ("-(sigma_x + sigma_y)", -SX - SY),
    ("3*(2*sigma_x)", 6 * SX),
    ("(0.5 + 0.25i)*id(2)", (0.5 + 0.25j) * I2),
    ("pt_dimer(0.5, 1) + decay(0.2, 2)", dimer(0.5, 1) - 0.1j * I2),
    ("sigma_z - 0.1i*id(2)", SZ - 0.1j * I2),
    ("kron(chain(2, 1, 0.5), proj(0, 2))", np.kron(np.array([[0.5j, 1], [1, -0.5j]]), np.diag([1, 0]))),
    ("  sigma_x\t+ sigma_z ", SX + SZ),
    ("1i*sigma_y*sigma_y", 1j * I2),
    ("sigma_x*0.5i*sigma_z", 0.5j * SX @ SZ),
]


@pytest.mark.parametrize("text,expected", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus_evaluate(text, expected):
    got = evaluate(parse_expression(text))
    assert got.shape == np.shape(expected)
    assert np.max(np.abs(got - expected)) <= 1e-15


@pytest.mark.parametrize("text", [c[0] for c in CORPUS])
def test_corpus_round_trip(text):
    ast = parse_expression(text)
    printed = to_source(ast)
    assert parse_expression(printed) == ast
    assert to_source(parse_expression(printed)) == printed


def test_corpus_size():
    assert len(CORPUS) >= 50


def test_ast_shapes():
    assert parse_expression("sigma_z + 0.5i*sigma_x") == Add(
        (Atom("sigma_z"), Scale(0.5j, Atom("sigma_x"))))
    assert parse_expression("kron(sigma_z, id(2))") == Kron((Atom("sigma_z"), Atom("id", 2)))
    assert parse_expression("adj(sigma_x*sigma_y)") == Adjoint(Mul((Atom("sigma_x"), Atom("sigma_y"))))
    assert parse_expression("pt_dimer(0.5, 1)") == Call("pt_dimer", (0.5, 1))
    assert parse_expression("1 - 2i") == Scalar(1 - 2j)


def test_spans():
    ast = parse_expression("sigma_x + 0.5i*sigma_y")
    assert ast.terms[0].span == (0, 7)
    assert ast.terms[1].span == (10, 22)


class TestErrors:
    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol) as info:
            parse_expression("sigma_q")
        assert info.value.column == 1
        with pytest.raises(UnknownSymbol) as info:
            parse_expression("sigma_x + foo(2)")
        assert info.value.column == 11

    def test_bare_i_rejected(self):
        with pytest.raises(UnknownSymbol):
            parse_expression("i*sigma_x")

    def test_dim_mismatch_span(self):
        with pytest.raises(DimMismatch) as info:
            evaluate(parse_expression("sigma_x + id(4)"))
        assert info.value.span == (10, 15)

    @pytest.mark.parametrize("text,col", [
        ("sigma_x +", 10), ("(sigma_x", 9), ("sigma_x sigma_y", 9), ("", 1),
        ("kron(sigma_x)", 1), ("adj(sigma_x, sigma_y)", 1), ("sigma_x $ 2", 9),
        ("2sigma_x", 1), ("pt_dimer(sigma_x, 1)", 10), ("id(2.5)", 4),
    ])
    def test_syntax_errors(self, text, col):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression(text)
        assert info.value.column == col

    def test_expected_tokens_reported(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("(sigma_x")
        assert "')'" in info.value.expected

    def test_scalar_is_not_operator(self):
        with pytest.raises(DimMismatch):
            evaluate(parse_expression("1 + 2i"))
        with pytest.raises(DimMismatch):
            evaluate(parse_expression("sigma_x + 1"))

    def test_model_params_checked(self):
        with pytest.raises(ExprError):
            evaluate(parse_expression("pt_dimer(-1, 1)"))
        with pytest.raises(ExprError):
            evaluate(parse_expression("chain(2.5, 1, 0)"))
        with pytest.raises(ExprError):
            evaluate(parse_expression("decay(0.1)"))


def test_tokenize_complex_literal():
    kinds = [(t.kind, t.text) for t in tokenize("1.5e-2i*sigma_x")]
    assert kinds[0] == ("num", "1.5e-2i")


# random ASTs for the round trip
finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False, allow_subnormal=False)
coeffs = st.builds(complex, finite, finite)
leaves = st.one_of(
    st.sampled_from([Atom("sigma_x"), Atom("sigma_y"), Atom("sigma_z"), Atom("id", 2)]),
    st.builds(lambda g, v: Call("pt_dimer", (complex(g), complex(v))),
              st.floats(0, 5, allow_subnormal=False), finite),
)


def _scale(c, x):
    return Scale(c, x)


trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: Add(tuple(xs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: Mul(tuple(xs))),
        st.builds(_scale, coeffs, kids),
        st.builds(Adjoint, kids),
    ),
    max_leaves=8,
)


@given(trees)
def test_random_round_trip(ast):
    assert parse_expression(to_source(ast)) == ast


@given(trees)
def test_random_evaluate_stable_under_round_trip(ast):
    a = evaluate(ast)
    b = evaluate(parse_expression(to_source(ast)))
    np.testing.assert_array_equal(a, b)
