"""Hypothesis strategies for well-scoped kernel trees."""

from __future__ import annotations

from hypothesis import strategies as st

from depcat import syntax as S

NAMES = st.sampled_from(["x", "y", "z", "u"])


def types(scope: int, depth: int = 2):
    if depth == 0:
        return st.just(S.Unit())
    sub = types(scope, depth - 1)
    return st.one_of(
        st.just(S.Unit()),
        st.builds(S.Pi, NAMES, sub, st.deferred(lambda: types(scope + 1, depth - 1))),
        st.builds(S.Sigma, NAMES, sub, st.deferred(lambda: types(scope + 1, depth - 1))),
    )


def terms(scope: int, depth: int = 3):
    leaves = [st.just(S.Star())]
    if scope:
        leaves.append(st.integers(0, scope - 1).map(S.Var))
    leaf = st.one_of(*leaves)
    if depth == 0:
        return leaf
    return st.one_of(
        leaf,
        st.builds(S.Lam, NAMES, st.deferred(lambda: terms(scope + 1, depth - 1))),
        st.builds(S.App, terms(scope, depth - 1), terms(scope, depth - 1)),
        st.builds(S.Pair, terms(scope, depth - 1), terms(scope, depth - 1)),
    )


def exprs(scope: int):
    return st.one_of(types(scope), terms(scope))
