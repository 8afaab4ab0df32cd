"""
Тесты номинального ядра: перестановки, свежесть и α-равенство замкнутых термов
"""
from hypothesis import given, settings, strategies as st

from app.kernel.nominal import (
    alpha_eq_ground, canonical, fresh_ground, fresh_name, free_names, nameless_form,
    perm_term, swap_term,
)
from app.models.terms import UNIT_TERM, Abs, App, Pair, Perm

A = fresh_name("id", "a")
B = fresh_name("id", "b")
C = fresh_name("id", "c")
D = fresh_name("id", "d")
NAMES = [A, B, C, D]

names = st.sampled_from(NAMES)

ground_terms = st.recursive(
    st.one_of(st.just(UNIT_TERM), names),
    lambda children: st.one_of(
        st.builds(Pair, children, children),
        st.builds(lambda t: App("f", t), children),
        st.builds(Abs, names, children),
    ),
    max_leaves=12,
)

perms = st.lists(st.tuples(names, names), max_size=4).map(lambda swaps: Perm(tuple(swaps)))


class TestPermutations:
    """Действие перестановок на именах и термах"""

    def test_swap_exchanges_names(self):
        p = Perm.swap(A, B)
        assert p.apply(A) == B
        assert p.apply(B) == A
        assert p.apply(C) == C

    def test_composition_applies_inner_first(self):
        p = Perm.swap(A, B).compose(Perm.swap(B, C))
        # (a b)∘(b c): b -> c, c -> b -> a
        assert p.apply(B) == C
        assert p.apply(C) == A
        assert p.apply(A) == B

    @given(perms, ground_terms)
    def test_inverse_undoes_action(self, p, t):
        assert perm_term(p.inverse(), perm_term(p, t)) == t

    @given(perms, perms, ground_terms)
    def test_action_is_compositional(self, p, q, t):
        assert perm_term(p, perm_term(q, t)) == perm_term(p.compose(q), t)

    def test_identity_returns_same_object(self):
        t = Pair(A, App("f", B))
        assert perm_term(Perm(), t) is t


class TestFreshness:
    def test_bound_name_is_fresh(self):
        assert fresh_ground(A, Abs(A, A))
        assert not fresh_ground(A, Abs(B, A))

    def test_free_names_ignore_binders(self):
        t = Pair(Abs(A, Pair(A, B)), App("f", C))
        assert free_names(t) == {B, C}

    @given(names, ground_terms)
    def test_fresh_iff_not_free(self, a, t):
        assert fresh_ground(a, t) == (a not in free_names(t))

    @given(perms, names, ground_terms)
    def test_freshness_is_equivariant(self, p, a, t):
        assert fresh_ground(p.apply(a), perm_term(p, t)) == fresh_ground(a, t)


class TestAlphaEquality:
    def test_renamed_binder(self):
        assert alpha_eq_ground(Abs(A, A), Abs(B, B))
        assert not alpha_eq_ground(Abs(A, B), Abs(B, A))
        assert alpha_eq_ground(Abs(A, Abs(B, A)), Abs(B, Abs(A, B)))

    def test_constructor_mismatch(self):
        assert not alpha_eq_ground(App("f", A), App("g", A))

    @given(ground_terms)
    def test_reflexive(self, t):
        assert alpha_eq_ground(t, t)

    @given(ground_terms, ground_terms)
    @settings(max_examples=200)
    def test_agrees_with_nameless_form(self, t, u):
        assert alpha_eq_ground(t, u) == (nameless_form(t) == nameless_form(u))

    @given(ground_terms)
    def test_canonical_is_alpha_equivalent(self, t):
        assert alpha_eq_ground(t, canonical(t))
        assert free_names(canonical(t)) == free_names(t)

    @given(names, names, ground_terms)
    def test_swapping_fresh_names_is_identity_up_to_alpha(self, a, b, t):
        if fresh_ground(a, t) and fresh_ground(b, t):
            assert alpha_eq_ground(swap_term(a, b, t), t)
