"""End-to-end acceptance checks, one test per criterion, each with a time budget.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import time
from contextlib import contextmanager
from itertools import product

from epimc import fixtures
from epimc.bisim import bisim_classes, characteristic_topic, is_bisimilar
from epimc.generate import default_seed, random_boolean, random_formula, random_model, random_qbf
from epimc.global_mc import global_mc
from epimc.model import KripkeModel, PointedModel, is_transitive
from epimc.qbf import QbfInstance, encode, eval_qbf, matrix_from_table
from epimc.quantified import check_quantified, enumerate_restrictions, truthset_quantified
from epimc.semantics import truthset, valid_on_model
from epimc.syntax import atoms_of, is_update_free, parse_formula
from epimc.translate import translate_pa, translate_pc
from epimc.updates import pa_edge_update, pa_world_update, partial_comm_update

from . import axioms

RESULTS: dict[int, str] = {}
BASE = default_seed()


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS[number] = f"FAIL  criterion {number:2d}: {title} ({time.perf_counter() - start:.2f} s)"
        raise
    elapsed = time.perf_counter() - start
    verdict = "PASS" if elapsed < limit else "FAIL"
    RESULTS[number] = f"{verdict}  criterion {number:2d}: {title} ({elapsed:.2f} s, limit {limit:g} s)"
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


def duplicate(m: KripkeModel) -> KripkeModel:
    """Each world gets a twin with the same atoms; edges go to both copies."""
    twin = {w: w + "'" for w in m.worlds}
    relations = {
        a: [(x, y) for u, v in m.relation(a) for x in (u, twin[u]) for y in (v, twin[v])]
        for a in m.agents
    }
    valuation = {**{w: m.atoms_at(w) for w in m.worlds}, **{twin[w]: m.atoms_at(w) for w in m.worlds}}
    return KripkeModel(list(m.worlds) + list(twin.values()), relations, valuation, agents=m.agents)


def _warm_kernels():
    """Trigger kernel compilation so budgets measure checking, not JIT time."""
    m = fixtures.load("three_world")
    bisim_classes(m)
    global_mc(m, parse_formula("[a ! p] K a p"))


def test_two_world_regression():
    _warm_kernels()
    with criterion(1, "two-world announcement and restrictions", 1.0):
        m = fixtures.load("two_world")
        after = pa_edge_update(m, truthset(m, parse_formula("p")))
        assert m.relation("a") - after.relation("a") == {("w", "u"), ("u", "w")}
        assert after.relation("a") == {("w", "w"), ("u", "u")}
        for s in (set(), {"a"}):
            for n in enumerate_restrictions(m, s):
                assert n.relation("a") == m.relation("a")


def test_three_world_regression():
    with criterion(2, "three-world conversation breaks transitivity", 1.0):
        m = fixtures.load("three_world")
        assert is_transitive(m.relation("a"))
        after = partial_comm_update(m, {"a", "b"}, truthset(m, parse_formula("(p <-> q)")))
        loops = {(w, w) for w in m.worlds}
        assert after.relation("a") == loops | {("w0", "u0"), ("u0", "w0"), ("u0", "u1"), ("u1", "u0")}
        assert m.relation("a") - after.relation("a") == {("w0", "u1"), ("u1", "w0")}
        assert after.relation("b") == m.relation("b")
        assert not is_transitive(after.relation("a"))


def test_gap_fixtures():
    with criterion(3, "quantified verdicts on the two gap model pairs", 5.0):
        comm = parse_formula("<* a,b> (K a p & ~K a K a p)")
        ann = parse_formula("<!*> (K b p & ~K b K b p)")
        assert not check_quantified(fixtures.load_pointed("comm_gap"), comm)
        assert check_quantified(fixtures.load_pointed("comm_gap_prime"), comm)
        assert not check_quantified(fixtures.load_pointed("ann_gap"), ann)
        assert check_quantified(fixtures.load_pointed("ann_gap_prime"), ann)


def test_qbf_reduction():
    with criterion(4, "QBF encoding agrees with brute force", 60.0):
        checked = 0
        for n in (1, 2):
            variables = [f"x{i}" for i in range(1, n + 1)]
            for table in product((0, 1), repeat=2**n):
                matrix = matrix_from_table(variables, table)
                for prefix in product(("forall", "exists"), repeat=n):
                    q = QbfInstance(variables, prefix, matrix)
                    enc = encode(q)
                    assert check_quantified(enc.model, enc.formula) == eval_qbf(q), str(q)
                    checked += 1
        for k in range(50):
            q = random_qbf(BASE + 4000 + k, 3 + k % 2)
            enc = encode(q)
            assert check_quantified(enc.model, enc.formula) == eval_qbf(q), str(q)
            checked += 1
        assert checked == 8 + 64 + 50


def test_labelling_checker_matches_oracle():
    with criterion(5, "labelling checker equals per-world evaluation", 60.0):
        for i in range(200):
            m = random_model(BASE + 5000 + i, 6, 3, 3)
            for j in range(5):
                f = random_formula(BASE + 50000 + 5 * i + j, 4, "PC", m.agents, ("p", "q", "r"))
                assert global_mc(m, f) == truthset(m, f), (i, j, str(f))


def test_translators():
    with criterion(6, "reduction translators preserve truth", 60.0):
        for layer, tr in (("PC", translate_pc), ("PA", translate_pa)):
            for i in range(200):
                m = random_model(BASE + 6000 + i, 6, 3, 3)
                f = random_formula(BASE + 60000 + i, 4, layer, m.agents, ("p", "q", "r"))
                out = tr(f)
                assert is_update_free(out)
                assert truthset(m, out) == truthset(m, f), (layer, i, str(f))


def test_axiom_soundness():
    with criterion(7, "axiom instances valid on random models", 120.0):
        for i in range(100):
            rng = axioms.rng_for(BASE + 7000 + i)
            m = random_model(rng, 5, 3, 3)
            instances = {**axioms.table1(rng, m.agents), **axioms.table2(rng, m.agents)}
            for name, f in instances.items():
                assert valid_on_model(m, f), (name, i, str(f))
            small = random_model(rng, 4, 2, 2)
            a = axioms.axiom_a(rng, small.agents)
            assert truthset_quantified(small, a) == set(small.worlds), (i, str(a))


def _pairs():
    """Fifty pointed pairs known to be collectively bisimilar, with their atom sets."""
    pairs = []
    seed = BASE + 8000
    while len(pairs) < 30:
        m = random_model(seed, 3, 2, 2)
        seed += 1
        d = duplicate(m)
        w = m.worlds[0]
        pairs.append((PointedModel(m, w), PointedModel(d, w + "'"), None))
    while len(pairs) < 46:
        m = random_model(seed, 4, 2, 2)
        seed += 1
        xi = random_boolean(seed, 2, ("p", "q"))
        truth = truthset(m, xi)
        if not truth:
            continue
        w = min(truth)
        pairs.append((PointedModel(pa_edge_update(m, truth), w), PointedModel(pa_world_update(m, truth), w), None))
    comm, comm_p = fixtures.load("comm_gap"), fixtures.load("comm_gap_prime")
    ann, ann_p = fixtures.load("ann_gap"), fixtures.load("ann_gap_prime")
    for m1, w1, m2, w2 in [
        (comm, "w", comm_p, "w1'"),
        (comm, "u", comm_p, "u'"),
        (ann, "w1", ann_p, "w1'"),
        (ann, "u", ann_p, "u2'"),
    ]:
        pairs.append((PointedModel(m1, w1), PointedModel(m2, w2), {"p"}))
    return pairs


def test_bisimulation_invariance():
    with criterion(8, "bisimilar points agree on random formulas", 120.0):
        pairs = _pairs()
        assert len(pairs) == 50
        for k, (left, right, atoms) in enumerate(pairs):
            assert is_bisimilar(left, right, atoms)
            agents = sorted(set(left.model.agents) & set(right.model.agents))
            names = ("p",) if atoms else ("p", "q")
            # partially bisimilar pairs are only invariant for the unquantified layers
            layers = ("LD", "PC") if atoms else ("LD", "PC", "STAR")
            for layer in layers:
                depth = 3 if layer == "STAR" else 4
                for j in range(100):
                    f = random_formula(BASE + 80000 + 1000 * k + j, depth, layer, agents, names,
                                       max_quantifiers=1)
                    if atoms:
                        assert atoms_of(f) <= atoms
                    check = check_quantified if layer == "STAR" else _eval
                    assert check(left, f) == check(right, f), (k, layer, str(f))


def _eval(pm, f):
    return pm.point in truthset(pm.model, f)


def test_world_removal_matches_edge_deletion():
    with criterion(9, "world-removing and edge-deleting announcements are bisimilar", 30.0):
        done, seed = 0, BASE + 9000
        while done < 100:
            m = random_model(seed, 6, 3, 3)
            xi = random_boolean(seed + 1, 3, ("p", "q", "r"))
            seed += 2
            truth = truthset(m, xi)
            if not truth:
                continue
            edge, world = pa_edge_update(m, truth), pa_world_update(m, truth)
            for w in truth:
                assert is_bisimilar(PointedModel(edge, w), PointedModel(world, w))
            done += 1


def test_characteristic_topics():
    with criterion(10, "characteristic topics realise every closed set", 60.0):
        for i in range(50):
            m = random_model(BASE + 10000 + i, 6, 3, 3)
            blocks = list(bisim_classes(m))
            for bits in product((False, True), repeat=len(blocks)):
                a = set().union(*(b for b, keep in zip(blocks, bits) if keep))
                chi = characteristic_topic(m, a)
                assert truthset(m, chi) == a
                via_formula = partial_comm_update(m, m.agents, truthset(m, chi))
                assert via_formula == partial_comm_update(m, m.agents, a)


def chain(n: int) -> KripkeModel:
    ws = [f"w{i:05d}" for i in range(n)]
    relations = {
        "a": [(ws[i], ws[i + 1]) for i in range(n - 1)],
        "b": [(ws[i], ws[i + 2]) for i in range(n - 2)] + [(ws[i], ws[i + 1]) for i in range(0, n - 1, 3)],
    }
    valuation = {w: [x for x, k in (("p", 2), ("q", 3)) if i % k == 0] for i, w in enumerate(ws)}
    return KripkeModel(ws, relations, valuation, closure=("reflexive", "symmetric"))


CHAIN_FORMULA = parse_formula(
    "[a ! K a p] [b ! (p & ~K b q)] [a,b ! D{a,b} q] [a ! <b ! p> K b p] [b ! (q -> K a p)]"
    " D{a,b} (p | K b q)"
)


def _best_time(m, f, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        global_mc(m, f)
        best = min(best, time.perf_counter() - start)
    return best


def test_labelling_scales_polynomially():
    small = chain(40)
    assert global_mc(small, CHAIN_FORMULA) == truthset(small, CHAIN_FORMULA)
    m1, m2 = chain(1000), chain(2000)
    global_mc(chain(10), CHAIN_FORMULA)  # compile kernels outside the timed region
    with criterion(11, "labelling a 1000-world chain, depth-5 nesting", 5.0):
        t1 = _best_time(m1, CHAIN_FORMULA)
        t2 = _best_time(m2, CHAIN_FORMULA)
        ratio = t2 / max(t1, 1e-9)
        assert t1 < 5.0
        assert ratio < 6.0, f"doubling the worlds multiplied time by {ratio:.1f}"
