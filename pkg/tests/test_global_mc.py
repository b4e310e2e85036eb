import pytest
from hypothesis import given

from epimc.errors import InputError, UnsupportedFragmentError
from epimc.generate import random_formula, random_model
from epimc.global_mc import global_mc, label_model
from epimc.semantics import truthset
from epimc.syntax import Atom, CommSymbol, PartialComm, parse_formula

from .strategies import model_and_formula


def test_atom_is_valuation(three_world):
    assert global_mc(three_world, Atom("p")) == {"w0", "u0"}


def test_nested_conversation_matches_oracle(three_world):
    f = parse_formula("[a,b ! (p <-> q)] ~K a ~~K a ~~p")
    assert global_mc(three_world, f) == truthset(three_world, f)


def test_two_step_example_on_random_models():
    f = parse_formula("[a ! (p & q)] [b ! q] D{a,b} p")
    for seed in range(30):
        m = random_model(seed, 5, 2, 2, min_worlds=5, min_agents=2)
        assert global_mc(m, f) == truthset(m, f)


def test_edge_labels_record_survivors(three_world):
    f = parse_formula("[a,b ! (p <-> q)] K a p")
    lab = label_model(three_world, f)
    sym = CommSymbol(frozenset({"a", "b"}), parse_formula("(p <-> q)"))
    before = lab.edges_labelled("a")
    after = lab.edges_labelled("a", (sym,))
    assert before - after == {("w0", "u1"), ("u1", "w0")}


def test_edge_labels_are_prefix_closed():
    m = random_model(3, 6, 3, 3)
    f = random_formula(3, 6, "PC", m.agents, ("p", "q", "r"))
    lab = label_model(m, f)
    for (sigma, agent), alive in lab.edge_labels.items():
        if sigma:
            parent = lab.edge_labels[(sigma[:-1], agent)]
            assert not (alive & ~parent).any()


def test_empty_group_keeps_edges(three_world):
    f = PartialComm(frozenset(), Atom("p"), parse_formula("K a p"))
    assert global_mc(three_world, f) == truthset(three_world, f)


@pytest.mark.parametrize("text", ["[! p] q", "[* a] p", "[!*] p"])
def test_other_fragments_rejected(three_world, text):
    with pytest.raises(UnsupportedFragmentError):
        global_mc(three_world, parse_formula(text))


def test_unknown_agent(three_world):
    with pytest.raises(InputError):
        global_mc(three_world, parse_formula("K z p"))


@given(model_and_formula("PC", depth=4))
def test_matches_oracle(mf):
    m, f = mf
    assert global_mc(m, f) == truthset(m, f)


@given(model_and_formula("LD", depth=5))
def test_matches_oracle_without_updates(mf):
    m, f = mf
    assert global_mc(m, f) == truthset(m, f)
