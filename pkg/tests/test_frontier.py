"""Frontier generation: union law, dedup, soundness, size, containment."""

import random

from logictutor.expr import normalize, parse_text, print_canonical, subtree_count, variables
from logictutor.frontier import ALL_RULES, Containment, Frontier, frontier_contains, frontier_gen
from logictutor.rules import RuleId, apply_rule
from logictutor.truth import equivalent
from helpers import random_expr_bounded, p


# Every one-step rewrite of ¬(p∧¬q)∨q over vocabulary {p, q}, computed by
# enumerating each rule at each site and truth-table-checking every member.
FULL_FRONTIER_EXAMPLE = {
    ("Absorption", "(¬(p∧¬q)∨q)∧(¬(p∧¬q)∨q∨F)"),
    ("Absorption", "(¬(p∧¬q)∨q)∧(¬(p∧¬q)∨q∨T)"),
    ("Absorption", "(¬(p∧¬q)∨q)∧(¬(p∧¬q)∨q∨p)"),
    ("Absorption", "(¬(p∧¬q)∨q)∧(¬(p∧¬q)∨q∨q)"),
    ("Absorption", "¬((p∨p∧F)∧¬q)∨q"),
    ("Absorption", "¬((p∨p∧T)∧¬q)∨q"),
    ("Absorption", "¬((p∨p∧p)∧¬q)∨q"),
    ("Absorption", "¬((p∨p∧q)∧¬q)∨q"),
    ("Absorption", "¬(p∧(p∨F)∧¬q)∨q"),
    ("Absorption", "¬(p∧(p∨T)∧¬q)∨q"),
    ("Absorption", "¬(p∧(p∨p)∧¬q)∨q"),
    ("Absorption", "¬(p∧(p∨q)∧¬q)∨q"),
    ("Absorption", "¬(p∧(¬q∨¬q∧F))∨q"),
    ("Absorption", "¬(p∧(¬q∨¬q∧T))∨q"),
    ("Absorption", "¬(p∧(¬q∨¬q∧p))∨q"),
    ("Absorption", "¬(p∧(¬q∨¬q∧q))∨q"),
    ("Absorption", "¬(p∧¬(q∧(q∨F)))∨q"),
    ("Absorption", "¬(p∧¬(q∧(q∨T)))∨q"),
    ("Absorption", "¬(p∧¬(q∧(q∨p)))∨q"),
    ("Absorption", "¬(p∧¬(q∧(q∨q)))∨q"),
    ("Absorption", "¬(p∧¬(q∨q∧F))∨q"),
    ("Absorption", "¬(p∧¬(q∨q∧T))∨q"),
    ("Absorption", "¬(p∧¬(q∨q∧p))∨q"),
    ("Absorption", "¬(p∧¬(q∨q∧q))∨q"),
    ("Absorption", "¬(p∧¬q)∧(¬(p∧¬q)∨F)∨q"),
    ("Absorption", "¬(p∧¬q)∧(¬(p∧¬q)∨T)∨q"),
    ("Absorption", "¬(p∧¬q)∧(¬(p∧¬q)∨p)∨q"),
    ("Absorption", "¬(p∧¬q)∧(¬(p∧¬q)∨q)∨q"),
    ("Absorption", "¬(p∧¬q)∨q∧(q∨F)"),
    ("Absorption", "¬(p∧¬q)∨q∧(q∨T)"),
    ("Absorption", "¬(p∧¬q)∨q∧(q∨p)"),
    ("Absorption", "¬(p∧¬q)∨q∧(q∨q)"),
    ("Absorption", "¬(p∧¬q)∨q∨(¬(p∧¬q)∨q)∧F"),
    ("Absorption", "¬(p∧¬q)∨q∨(¬(p∧¬q)∨q)∧T"),
    ("Absorption", "¬(p∧¬q)∨q∨(¬(p∧¬q)∨q)∧p"),
    ("Absorption", "¬(p∧¬q)∨q∨(¬(p∧¬q)∨q)∧q"),
    ("Absorption", "¬(p∧¬q)∨q∨q∧F"),
    ("Absorption", "¬(p∧¬q)∨q∨q∧T"),
    ("Absorption", "¬(p∧¬q)∨q∨q∧p"),
    ("Absorption", "¬(p∧¬q)∨q∨q∧q"),
    ("Absorption", "¬(p∧¬q)∨¬(p∧¬q)∧F∨q"),
    ("Absorption", "¬(p∧¬q)∨¬(p∧¬q)∧T∨q"),
    ("Absorption", "¬(p∧¬q)∨¬(p∧¬q)∧p∨q"),
    ("Absorption", "¬(p∧¬q)∨¬(p∧¬q)∧q∨q"),
    ("Absorption", "¬(p∧¬q∧(p∧¬q∨F))∨q"),
    ("Absorption", "¬(p∧¬q∧(p∧¬q∨T))∨q"),
    ("Absorption", "¬(p∧¬q∧(p∧¬q∨p))∨q"),
    ("Absorption", "¬(p∧¬q∧(p∧¬q∨q))∨q"),
    ("Absorption", "¬(p∧¬q∧(¬q∨F))∨q"),
    ("Absorption", "¬(p∧¬q∧(¬q∨T))∨q"),
    ("Absorption", "¬(p∧¬q∧(¬q∨p))∨q"),
    ("Absorption", "¬(p∧¬q∧(¬q∨q))∨q"),
    ("Absorption", "¬(p∧¬q∨p∧¬q∧F)∨q"),
    ("Absorption", "¬(p∧¬q∨p∧¬q∧T)∨q"),
    ("Absorption", "¬(p∧¬q∨p∧¬q∧p)∨q"),
    ("Absorption", "¬(p∧¬q∨p∧¬q∧q)∨q"),
    ("Associativity", "¬(p∧¬q)∨q"),
    ("Commutativity", "q∨¬(p∧¬q)"),
    ("Commutativity", "¬(¬q∧p)∨q"),
    ("DeMorgan", "¬p∨¬¬q∨q"),
    ("DoubleNegation", "¬(p∧¬q)∨¬¬q"),
    ("DoubleNegation", "¬(p∧¬¬¬q)∨q"),
    ("DoubleNegation", "¬(¬¬p∧¬q)∨q"),
    ("DoubleNegation", "¬¬(¬(p∧¬q)∨q)"),
    ("DoubleNegation", "¬¬¬(p∧¬q)∨q"),
    ("Idempotence", "(¬(p∧¬q)∨q)∧(¬(p∧¬q)∨q)"),
    ("Idempotence", "¬((p∨p)∧¬q)∨q"),
    ("Idempotence", "¬(p∧(¬q∨¬q))∨q"),
    ("Idempotence", "¬(p∧p∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬(q∧q))∨q"),
    ("Idempotence", "¬(p∧¬(q∨q))∨q"),
    ("Idempotence", "¬(p∧¬q)∧¬(p∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬q)∨q∧q"),
    ("Idempotence", "¬(p∧¬q)∨q∨q"),
    ("Idempotence", "¬(p∧¬q)∨q∨¬(p∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬q)∨¬(p∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬q∧p∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬q∧¬q)∨q"),
    ("Idempotence", "¬(p∧¬q∨p∧¬q)∨q"),
    ("Identity", "(¬(p∧¬q)∨q)∧T"),
    ("Identity", "¬((p∨F)∧¬q)∨q"),
    ("Identity", "¬(p∧(¬q∨F))∨q"),
    ("Identity", "¬(p∧T∧¬q)∨q"),
    ("Identity", "¬(p∧¬(q∧T))∨q"),
    ("Identity", "¬(p∧¬(q∨F))∨q"),
    ("Identity", "¬(p∧¬q)∧T∨q"),
    ("Identity", "¬(p∧¬q)∨F∨q"),
    ("Identity", "¬(p∧¬q)∨q∧T"),
    ("Identity", "¬(p∧¬q)∨q∨F"),
    ("Identity", "¬(p∧¬q∧T)∨q"),
    ("Identity", "¬(p∧¬q∨F)∨q"),
    ("ImplicationAsDisjunction", "p∧¬q→q"),
}


class TestFrontierGen:
    def test_idempotence_entry(self):
        f = frontier_gen(p("p∨p"), {"p"})
        assert (RuleId.IDEMPOTENCE, p("p")) in {(t.rule, t.result) for t in f.entries}

    def test_domination_reverse_entry(self):
        f = frontier_gen(p("T"), {"p"})
        assert (RuleId.DOMINATION, p("p∨T")) in {(t.rule, t.result) for t in f.entries}

    def test_full_frontier_example_is_exact(self):
        f = frontier_gen(parse_text("¬(p∧¬q)∨q"), {"p", "q"})
        got = {(t.rule.value, print_canonical(t.result)) for t in f.entries}
        assert got == FULL_FRONTIER_EXAMPLE
        for t in f.entries:
            assert equivalent(t.source, t.result)

    def test_single_visit_traversal(self):
        rng = random.Random(5)
        for _ in range(30):
            e = random_expr_bounded(rng, max_tokens=22)
            f = frontier_gen(e, variables(e) | {"p"})
            assert f.nodes_visited == subtree_count(f.source)

    def test_union_law(self):
        rng = random.Random(17)
        for _ in range(25):
            e = random_expr_bounded(rng, max_tokens=16, max_vars=4)
            vocab = variables(e) | {"p"}
            whole = {(t.rule, t.result) for t in frontier_gen(e, vocab).entries}
            union = set()
            for rule in ALL_RULES:
                union |= {(t.rule, t.result) for t in apply_rule(rule, e, vocab)}
            assert whole == union

    def test_soundness_on_random_sample(self):
        rng = random.Random(99)
        for _ in range(60):
            e = random_expr_bounded(rng, max_tokens=20, max_vars=4)
            f = frontier_gen(e, variables(e))
            for t in f.entries:
                assert equivalent(t.source, t.result)

    def test_dedup_by_rule_and_result(self):
        f = frontier_gen(p("p∨p∨p"), {"p"})
        keys = [(t.rule, t.result) for t in f.entries]
        assert len(keys) == len(set(keys))

    def test_size_grows_linearly_with_tokens(self):
        # Empirical slope check with a fixed vocabulary: an affine bound holds
        # pointwise, and mean frontier size grows no faster than mean size.
        rng = random.Random(31)
        points = []
        for _ in range(150):
            e = random_expr_bounded(rng, max_tokens=25, max_vars=3, max_depth=5)
            tokens = len(print_canonical(e))
            f = frontier_gen(e, {"a", "b", "c"})
            points.append((tokens, len(f.entries)))
        assert all(entries <= 12 * tokens + 60 for tokens, entries in points)
        small = [(t, n) for t, n in points if t <= 8]
        large = [(t, n) for t, n in points if t >= 16]
        assert small and large
        mean = lambda xs: sum(xs) / len(xs)
        growth = mean([n for _, n in large]) / mean([n for _, n in small])
        token_growth = mean([t for t, _ in large]) / mean([t for t, _ in small])
        assert growth <= 1.5 * token_growth


class TestVocabPrecondition:
    def test_uncovered_variables_rejected(self):
        import pytest
        from logictutor.rules import apply_rule as apply_rule_fn

        with pytest.raises(ValueError):
            frontier_gen(p("p∧q"), {"p"})
        with pytest.raises(ValueError):
            apply_rule_fn(RuleId.IDENTITY, p("p∧q"), {"p"})


class TestTextFastPath:
    def test_neighbor_texts_equals_tree_frontier(self):
        # the search-side string-splicing generator must agree exactly with
        # the tree-based frontier on (rule, canonical result) pairs
        from logictutor.rules import neighbor_texts

        rng = random.Random(606)
        for _ in range(120):
            e = random_expr_bounded(rng, max_tokens=22, max_vars=4)
            vocab = variables(e) | {"p"}
            fast = set(neighbor_texts(print_canonical(normalize(e)), frozenset(vocab)))
            tree = {
                (t.rule, t.result_text) for t in frontier_gen(e, vocab).entries
            }
            assert fast == tree, print_canonical(e)

    def test_neighbor_texts_deterministic_order(self):
        from logictutor.rules import neighbor_texts

        first = neighbor_texts("¬(p∧¬q)∨q", frozenset({"p", "q"}))
        second = neighbor_texts("¬(p∧¬q)∨q", frozenset({"p", "q"}))
        assert first == second


class TestFrontierContains:
    def test_hit(self):
        f = frontier_gen(p("p∨q∨q"), {"p", "q"})
        assert frontier_contains(f, RuleId.IDEMPOTENCE, p("p∨q")) is Containment.HIT

    def test_rule_mismatch(self):
        f = frontier_gen(p("p∨q∨q"), {"p", "q"})
        assert (
            frontier_contains(f, RuleId.COMMUTATIVITY, p("p∨q"))
            is Containment.RULE_MISMATCH
        )

    def test_miss(self):
        f = frontier_gen(p("p"), {"p", "q"})
        assert frontier_contains(f, RuleId.IDENTITY, p("q∧T")) is Containment.MISS

    def test_candidate_normalized_before_lookup(self):
        f = frontier_gen(p("p∨q"), {"p", "q"})
        from logictutor.expr import Chain, Var
        nested = Chain("or", (Var("p"), Chain("or", (Var("q"), Var("q")))))
        assert frontier_contains(f, RuleId.IDEMPOTENCE, nested) is Containment.HIT
