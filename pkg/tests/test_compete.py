import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import best_min_edge_bruteforce, q_bruteforce
from snakeladder.compete import best_triangle, triangles_above, win_matrix_from_q


def test_win_matrix_invariants(paper_win, mini_win):
    for w in (paper_win, mini_win):
        np.testing.assert_array_equal(w.X, -w.X.T)
        assert (np.diag(w.X) == 0).all()
        assert (w.Q >= 0).all() and (w.Q <= 1).all()
        assert (w.draw >= -1e-12).all() and (w.draw <= 1).all()
        np.testing.assert_allclose(w.Q + w.Q.T + w.draw, 1.0, atol=1e-12, rtol=0)
        np.testing.assert_allclose(np.diag(w.draw), 1 - 2 * np.diag(w.Q), atol=1e-15)


def test_paper_values(paper_win):
    assert paper_win.q(69, 79) == pytest.approx(0.4970, abs=5e-4)
    assert paper_win.q(73, 69) == pytest.approx(0.4930, abs=5e-4)
    assert paper_win.x(69, 79) == pytest.approx(0.0077, abs=5e-4)


def test_rank_one_sum_matches_double_sum(paper_profile, paper_win):
    f, g = paper_profile.f, paper_profile.g
    for i, j in [(0, 1), (40, 50), (60, 61), (10, 81), (81, 0)]:
        direct = sum(f[i, s] * (1 - g[j, s]) for s in range(paper_profile.s_max + 1))
        assert abs(paper_win.Q[i, j] - direct) < 1e-12


def test_mini10_q_matches_bruteforce(mini10, mini_win):
    q = q_bruteforce(mini10)
    for (i, j), want in q.items():
        assert abs(mini_win.q(i, j) - want) < 1e-12


def test_best_triangle_paper(paper_win):
    tri = best_triangle(paper_win)
    assert tri.squares == (69, 79, 73)
    assert tri.c >= 0.005
    assert tri.c == min(tri.edge_ij, tri.edge_jk, tri.edge_ki)
    assert tri.edge_ij == pytest.approx(0.0077, abs=5e-4)
    assert tri.edge_jk == pytest.approx(0.0112, abs=5e-4)
    assert tri.edge_ki == pytest.approx(0.0171, abs=5e-4)


def test_best_triangle_matches_triple_loop(mini10, mini_win):
    states = mini_win.states
    x = {(a, b): mini_win.x(a, b) for a in states for b in states}
    best, arg = best_min_edge_bruteforce(states, x)
    tri = best_triangle(mini_win)
    assert tri.c == best
    assert any(set(t) == set(tri.squares) for t in arg)


def test_best_triangle_needs_three():
    w = win_matrix_from_q([0, 1], np.array([[0.4, 0.5], [0.3, 0.4]]))
    with pytest.raises(ValueError):
        best_triangle(w)


def test_transitive_order_has_no_positive_cycle():
    n = 6
    Q = np.where(np.arange(n)[:, None] < np.arange(n)[None, :], 0.6, 0.3)
    np.fill_diagonal(Q, 0.4)
    w = win_matrix_from_q(range(n), Q)
    assert best_triangle(w).c <= 0
    assert triangles_above(w, 1e-12) == []


def test_triangles_above(paper_win, mini_win):
    found = triangles_above(paper_win, 0.005)
    assert (69, 79, 73) in [t.squares for t in found]
    assert all(t.c >= 0.005 and t.i == min(t.squares) for t in found)
    assert found[0].squares == (69, 79, 73)
    assert triangles_above(paper_win, 1.0) == []


def test_triangles_above_mini10_matches_bruteforce(mini10):
    # The brute-force Q is the oracle here, rounded away from float noise:
    # mini10 has exact ties (E[4] = E[5] = E[9]) whose edges are 0 up to 1e-16.
    q = q_bruteforce(mini10)
    states = sorted({i for i, _ in q})
    Q = np.array([[q[i, j] for j in states] for i in states])
    w = win_matrix_from_q(states, Q)
    x = {(a, b): w.x(a, b) for a in states for b in states}
    eps = 1e-12
    want = set()
    for i in states:
        for j in states:
            for k in states:
                if len({i, j, k}) == 3 and i < j and i < k and min(x[i, j], x[j, k], x[k, i]) >= eps:
                    want.add((i, j, k))
    got = {t.squares for t in triangles_above(w, eps)}
    assert got == want


def test_triangles_deduplicated(paper_win):
    sq = [t.squares for t in triangles_above(paper_win, 0.0)]
    assert len(sq) == len(set(frozenset(s) for s in sq))


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(82))))
def test_relabeling_invariance(paper_win, perm):
    order = [paper_win.states[p] for p in perm]
    assert best_triangle(paper_win.reordered(order)) == best_triangle(paper_win)


def test_ties_break_lexicographically():
    # Two disjoint cycles with identical edges.
    n = 6
    Q = np.full((n, n), 0.45)
    for a, b in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]:
        Q[a, b], Q[b, a] = 0.5, 0.4
    w = win_matrix_from_q(range(n), Q)
    assert best_triangle(w).squares == (0, 1, 2)
    assert [t.squares for t in triangles_above(w, 0.05)] == [(0, 1, 2), (3, 4, 5)]
