from itertools import product

import pytest
from hypothesis import given

from epimc import fixtures
from epimc.errors import InputError
from epimc.generate import random_qbf
from epimc.model import PointedModel, model_size
from epimc.qbf import (
    QbfInstance,
    chosen,
    encode,
    eval_qbf,
    false_world,
    gadget_model,
    load_qbf,
    matrix_from_table,
    parse_qbf,
    true_world,
)
from epimc.quantified import check_quantified, enumerate_restrictions
from epimc.semantics import eval_formula
from epimc.syntax import Atom, formula_size, parse_formula

from .strategies import seeds


def encoded(q):
    enc = encode(q)
    return check_quantified(enc.model, enc.formula)


class TestInstances:
    def test_parse(self):
        q = parse_qbf("forall x1 exists x2 : (x1 <-> x2)")
        assert q.variables == ("x1", "x2")
        assert q.quantifiers == ("forall", "exists")

    @pytest.mark.parametrize(
        "text",
        ["forall x1 x1", "forall x1 : (x1 & y)", "forall x1 forall x1 : x1", "some x1 : x1", ": true"],
    )
    def test_malformed(self, text):
        with pytest.raises(InputError):
            parse_qbf(text)

    def test_matrix_must_be_boolean(self):
        with pytest.raises(InputError):
            QbfInstance(("x1",), ("forall",), parse_formula("K a x1"))

    def test_fixture_file(self):
        q = load_qbf(fixtures.path("qbf_forall_exists_iff.txt"))
        assert eval_qbf(q)


class TestOracle:
    @pytest.mark.parametrize(
        "text, value",
        [
            ("exists x1 : x1", True),
            ("forall x1 : x1", False),
            ("forall x1 : (x1 | ~x1)", True),
            ("forall x1 exists x2 : (x1 <-> x2)", True),
            ("exists x1 forall x2 : (x1 <-> x2)", False),
        ],
    )
    def test_small(self, text, value):
        assert eval_qbf(parse_qbf(text)) is value

    def test_table_matrix(self):
        xor = matrix_from_table(["x1", "x2"], [0, 1, 1, 0])
        assert eval_qbf(QbfInstance(("x1", "x2"), ("forall", "exists"), xor))
        assert not eval_qbf(QbfInstance(("x1", "x2"), ("exists", "forall"), xor))


class TestEncoding:
    def test_gadget_shape(self):
        m = gadget_model(2)
        assert m.n == 5
        assert m.relation("b") == {(w, w) for w in m.worlds}
        assert ("w0", true_world(2)) in m.relation("a")
        assert (true_world(1), false_world(1)) not in m.relation("a")
        assert m.atoms_at(true_world(1)) == {"p1"} and m.atoms_at(false_world(1)) == {"q1"}

    def test_single_existential(self):
        enc = encode(parse_qbf("exists x1 : x1"))
        assert enc.model.model.n == 3
        expected = parse_formula("<* a,b> (((~K a ~p1 -> ~~K a ~q1) & (~~K a ~q1 -> ~K a ~p1)) & ~K a ~p1)")
        assert enc.formula == expected

    def test_nothing_chosen_initially(self):
        pm = PointedModel(gadget_model(3), "w0")
        assert eval_formula(pm, chosen(0, 3))
        assert not eval_formula(pm, chosen(1, 3))

    def test_fully_chosen_needs_one_edge_per_variable(self):
        m = gadget_model(2)
        for n in enumerate_restrictions(m, {"a", "b"}):
            cut = {
                i: ((("w0", true_world(i)) in n.relation("a")), (("w0", false_world(i)) in n.relation("a")))
                for i in (1, 2)
            }
            assert eval_formula(PointedModel(n, "w0"), chosen(2, 2)) == all(t != f for t, f in cut.values())

    @pytest.mark.parametrize(
        "text",
        [
            "exists x1 : x1",
            "forall x1 : x1",
            "forall x1 : (x1 | ~x1)",
            "forall x1 exists x2 : (x1 <-> x2)",
            "exists x1 forall x2 : (x1 <-> x2)",
        ],
    )
    def test_examples_agree(self, text):
        q = parse_qbf(text)
        assert encoded(q) == eval_qbf(q)

    def test_exhaustive_two_variables(self):
        for n in (1, 2):
            variables = [f"x{i}" for i in range(1, n + 1)]
            for table in product((0, 1), repeat=2**n):
                matrix = matrix_from_table(variables, table)
                for prefix in product(("forall", "exists"), repeat=n):
                    q = QbfInstance(variables, prefix, matrix)
                    assert encoded(q) == eval_qbf(q), str(q)

    @given(seeds)
    def test_random_three_variables(self, seed):
        q = random_qbf(seed, 3)
        assert encoded(q) == eval_qbf(q)

    def test_sizes_are_polynomial(self):
        for n in range(1, 7):
            q = QbfInstance([f"x{i}" for i in range(1, n + 1)], ["forall"] * n, Atom("x1"))
            enc = encode(q)
            assert model_size(enc.model.model) == (2 * n + 1) + (2 * n + 1) * 2 + 4 * n + 2 * n
            assert formula_size(enc.formula) <= 40 * n * n + 10
