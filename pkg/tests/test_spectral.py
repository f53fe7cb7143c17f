import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbspectra.errors import DegenerateError, TrivialEigenvalueError, ZeroVectorError
from nbspectra.graphs import sample_regular_graph, sample_regular_hypergraph, sample_rsbm
from nbspectra.operators import (
    adjacency_matrix,
    nonbacktracking_matrix,
    oriented_index,
    reduced_nb_matrix,
)
from nbspectra.spectral import (
    deterministic_deloc_bound,
    full_lifted_spectrum,
    lift_eigenvalue,
    lift_eigenvalue_hyper,
    lift_eigenvector_nb,
    lift_eigenvector_nb_hyper,
    lift_eigenvector_reduced,
    nb_norm_sq_graph,
    nb_norm_sq_hyper,
    spectrum_audit,
    symmetric_eigs,
)

from conftest import ORACLE_CORPUS, named_graph
from oracles import charpoly_roots, multiset_match_distance


# ---------------------------------------------------------------- eigensolver


def test_eigs_k4(k4):
    pairs = symmetric_eigs(adjacency_matrix(k4))
    assert np.allclose([p.lam for p in pairs], [3, -1, -1, -1])


def test_eigs_c3(c3):
    pairs = symmetric_eigs(adjacency_matrix(c3))
    assert np.allclose([p.lam for p in pairs], [2, -1, -1])


def test_eigs_perron_vector_is_constant(sampled_graphs):
    g = sampled_graphs[(20, 4)]
    top = symmetric_eigs(adjacency_matrix(g))[0]
    assert top.lam == pytest.approx(4.0, abs=1e-12)
    v = top.v * np.sign(top.v[0])
    assert np.allclose(v, 1.0 / math.sqrt(g.n), atol=1e-10)


def test_eigs_sorted_descending(sampled_graphs):
    pairs = symmetric_eigs(adjacency_matrix(sampled_graphs[(30, 3)]))
    lams = [p.lam for p in pairs]
    assert lams == sorted(lams, reverse=True)


# ------------------------------------------------------------ eigenvalue lift


def test_lift_perron_pair():
    for d in (2, 3, 5, 12):
        mu, mup = lift_eigenvalue(float(d), d)
        assert mu == pytest.approx(d - 1)
        assert mup == pytest.approx(1.0)


def test_lift_zero_lambda():
    mu, mup = lift_eigenvalue(0.0, 3)
    assert mu == pytest.approx(1j * math.sqrt(2))
    assert mup == pytest.approx(-1j * math.sqrt(2))


def test_lift_double_root():
    d = 5
    lam = 2 * math.sqrt(d - 1)
    mu, mup = lift_eigenvalue(lam, d)
    assert mu == pytest.approx(mup)
    assert mu == pytest.approx(math.sqrt(d - 1))


def test_lift_requires_d_ge_2():
    with pytest.raises(DegenerateError):
        lift_eigenvalue(0.0, 1)


def test_lift_hyper_perron():
    for d, k in ((2, 3), (3, 3), (8, 8)):
        mu, mup = lift_eigenvalue_hyper(float(d * (k - 1)), d, k)
        assert mu == pytest.approx((d - 1) * (k - 1))
        assert mup == pytest.approx(1.0)


def test_lift_hyper_k2_reduces_to_graph():
    for lam in (-2.5, 0.0, 1.7, 4.0):
        assert lift_eigenvalue_hyper(lam, 5, 2) == lift_eigenvalue(lam, 5)


def test_lift_hyper_pure_imaginary_at_shift():
    d, k = 4, 3
    mu, mup = lift_eigenvalue_hyper(float(k - 2), d, k)
    r = math.sqrt((d - 1) * (k - 1))
    assert mu == pytest.approx(1j * r)
    assert mup == pytest.approx(-1j * r)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=2, max_value=60),
    st.floats(min_value=-60.0, max_value=60.0, allow_nan=False),
)
def test_lift_vieta_and_branch(d, lam_frac):
    lam = lam_frac * d / 60.0  # eigenvalues of a d-regular graph live in [-d, d]
    mu, mup = lift_eigenvalue(lam, d)
    assert abs(mu + mup - lam) <= 1e-10 * max(1.0, abs(lam))
    assert abs(mu * mup - (d - 1)) <= 1e-10 * (d - 1)
    assert mu.real >= mup.real - 1e-14
    if lam * lam < 4 * (d - 1):
        assert abs(abs(mu) - math.sqrt(d - 1)) <= 1e-10
        assert mu.imag >= 0


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=2, max_value=20),
    st.integers(min_value=2, max_value=20),
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
)
def test_lift_hyper_vieta(d, k, t):
    lam = t * d * (k - 1)
    mu, mup = lift_eigenvalue_hyper(lam, d, k)
    q = (d - 1) * (k - 1)
    assert abs(mu + mup - (lam - k + 2)) <= 1e-10 * max(1.0, abs(lam) + k)
    assert abs(mu * mup - q) <= 1e-10 * q
    if (lam - k + 2) ** 2 < 4 * q:
        assert abs(abs(mu) - math.sqrt(q)) <= 1e-10


# --------------------------------------------------------- reduced-lift u


def test_reduced_lift_perron_structure(k4):
    n, d = 4, 3
    v1 = np.full(n, 1.0 / math.sqrt(n))
    u = lift_eigenvector_reduced(v1, d - 1.0, d)
    assert np.allclose(u[:n] / u[0], np.ones(n))
    assert np.allclose(u[n:] / u[n], np.ones(n))
    assert np.linalg.norm(u) == pytest.approx(1.0, abs=1e-12)


def test_reduced_lift_norm_factor_on_circle():
    d, n = 4, 10
    rng = np.random.default_rng(0)
    v = rng.normal(size=n)
    v /= np.linalg.norm(v)
    mu = 1j * math.sqrt(d - 1)
    raw = np.concatenate([v.astype(complex), (mu / (d - 1)) * v])
    assert np.linalg.norm(raw) == pytest.approx(math.sqrt(1 + 1 / (d - 1)), abs=1e-12)


def test_reduced_lift_residual_against_dense_operator(small_graph):
    g = small_graph
    Bt = reduced_nb_matrix(g)
    for p in full_lifted_spectrum(g).pairs:
        for mu, u in ((p.mu, p.u()), (p.mu_prime, p.u_prime())):
            assert np.linalg.norm(Bt @ u - mu * u) <= 1e-10


def test_reduced_lift_residual_hyper(hyper923):
    Bt = reduced_nb_matrix(hyper923)
    for p in full_lifted_spectrum(hyper923).pairs:
        assert np.linalg.norm(Bt @ p.u() - p.mu * p.u()) <= 1e-10
        assert np.linalg.norm(Bt @ p.u_prime() - p.mu_prime * p.u_prime()) <= 1e-10


def test_reduced_lift_ratio_never_exceeds_v(sampled_graphs):
    spec = full_lifted_spectrum(sampled_graphs[(20, 4)])
    for p in spec.pairs:
        assert p.ratio_u <= p.ratio_v + 1e-12
        assert p.ratio_u_prime <= p.ratio_v + 1e-12


def test_reduced_lift_rejects_d1():
    with pytest.raises(DegenerateError):
        lift_eigenvector_reduced(np.ones(3), 1.0, 1)


# --------------------------------------------------------------- edge lift w


def test_nb_lift_k4_norm_by_explicit_summation(k4):
    # lambda = -1, d = 3: sum over the 12 oriented edges must equal d^2 - lambda^2 = 8
    pairs = symmetric_eigs(adjacency_matrix(k4))
    p = pairs[1]
    assert p.lam == pytest.approx(-1.0)
    mu, _ = lift_eigenvalue(p.lam, 3)
    idx = oriented_index(k4)
    total = 0.0
    for u_, v_ in idx.items:
        total += abs(mu * p.v[v_] - p.v[u_]) ** 2
    assert total == pytest.approx(8.0, rel=1e-10)
    w = lift_eigenvector_nb(p.v, mu, idx)
    assert np.linalg.norm(w) ** 2 == pytest.approx(8.0, rel=1e-10)


def test_nb_lift_c3_residual_machine_precision(c3):
    pairs = symmetric_eigs(adjacency_matrix(c3))
    p = pairs[1]
    assert p.lam == pytest.approx(-1.0)
    mu, _ = lift_eigenvalue(p.lam, 2)
    idx = oriented_index(c3)
    w = lift_eigenvector_nb(p.v, mu, idx)
    B = nonbacktracking_matrix(c3, idx).toarray()
    assert np.linalg.norm(B @ w - mu * w) <= 1e-12


def test_nb_lift_perron_ratio(sampled_graphs):
    g = sampled_graphs[(30, 3)]
    v1 = np.full(g.n, 1.0 / math.sqrt(g.n))
    idx = oriented_index(g)
    w = lift_eigenvector_nb(v1, float(g.d - 1), idx)
    ratio = np.max(np.abs(w)) / np.linalg.norm(w)
    assert ratio == pytest.approx(1.0 / math.sqrt(g.n * g.d), abs=1e-15)


def test_nb_lift_rejects_trivial_mu():
    idx = oriented_index(named_graph("K4"))
    v = np.ones(4) / 2.0
    with pytest.raises(TrivialEigenvalueError):
        lift_eigenvector_nb(v, 1.0, idx)
    with pytest.raises(TrivialEigenvalueError):
        lift_eigenvector_nb(v, -1.0, idx)


def test_nb_lift_rejects_zero_vector():
    idx = oriented_index(named_graph("K4"))
    with pytest.raises(ZeroVectorError):
        lift_eigenvector_nb(np.zeros(4), 2.0, idx)


def test_nb_lift_hyper_matches_graph_at_k2():
    h = sample_regular_hypergraph(8, 3, 2, 4)
    from nbspectra.graphs import RegularGraph

    g = RegularGraph(n=8, d=3, edges=h.hyperedges)
    pairs = symmetric_eigs(adjacency_matrix(g))
    p = pairs[3]
    mu, _ = lift_eigenvalue(p.lam, 3)
    wg = lift_eigenvector_nb(p.v, mu, oriented_index(g))
    idxh = oriented_index(h)
    wh = lift_eigenvector_nb_hyper(p.v, mu, h, idxh)
    # same index ordering: (v, rank of edge) sorts like oriented (v, other) here
    assert wh.shape == wg.shape
    assert np.linalg.norm(wh) == pytest.approx(np.linalg.norm(wg), rel=1e-12)


def test_nb_lift_hyper_residual(hyper923):
    h = hyper923
    idx = oriented_index(h)
    B = nonbacktracking_matrix(h, idx)
    spec = full_lifted_spectrum(h)
    for p in spec.pairs[1:]:
        w = lift_eigenvector_nb_hyper(p.v, p.mu, h, idx)
        assert np.linalg.norm(B @ w - p.mu * w) / np.linalg.norm(w) <= 1e-10
        exp = nb_norm_sq_hyper(p.lam, p.mu, h.d, h.k)
        assert np.linalg.norm(w) ** 2 == pytest.approx(exp, rel=1e-8)


def test_nb_lift_hyper_rejects_trivials(hyper923):
    idx = oriented_index(hyper923)
    v = np.ones(9) / 3.0
    with pytest.raises(TrivialEigenvalueError):
        lift_eigenvector_nb_hyper(v, 1.0, hyper923, idx)
    with pytest.raises(TrivialEigenvalueError):
        lift_eigenvector_nb_hyper(v, -(hyper923.k - 1.0), hyper923, idx)


# -------------------------------------------------------- deterministic bound


def test_bound_arithmetic_example():
    val = deterministic_deloc_bound(0.0, 1j * math.sqrt(2), 3, None, 1.0)
    assert val == pytest.approx((math.sqrt(2) + 1) / 3, rel=1e-12)


def test_bound_hyper_reduces_to_graph():
    for lam in (0.0, 1.3, -2.0):
        g = deterministic_deloc_bound(lam, 1.5 + 0.5j, 5, None, 0.7)
        h = deterministic_deloc_bound(lam, 1.5 + 0.5j, 5, 2, 0.7)
        assert h == pytest.approx(g, rel=1e-12)


def test_bound_degenerate_cases():
    with pytest.raises(DegenerateError):
        deterministic_deloc_bound(3.0, 2.0, 3, None, 1.0)
    with pytest.raises(DegenerateError):
        deterministic_deloc_bound(-3.0, 2.0, 3, None, 1.0)
    with pytest.raises(DegenerateError):
        deterministic_deloc_bound(6.0, 4.0, 3, 3, 1.0)  # lambda = d(k-1)
    with pytest.raises(DegenerateError):
        deterministic_deloc_bound(-3.0, 4.0, 3, 3, 1.0)  # lambda = -d


def test_bound_dominates_measured_ratio_on_sample():
    g = sample_regular_graph(60, 3, 9)
    idx = oriented_index(g)
    for p in full_lifted_spectrum(g).pairs:
        if (p.lam**2 > 4 * (g.d - 1)) or abs(abs(p.lam) - g.d) < 1e-9:
            continue
        w = lift_eigenvector_nb(p.v, p.mu, idx)
        ratio = np.max(np.abs(w)) / np.linalg.norm(w)
        bound = deterministic_deloc_bound(p.lam, p.mu, g.d, None, float(np.max(np.abs(p.v))))
        assert ratio <= bound + 1e-12


# ------------------------------------------------- full spectrum + oracle


def test_full_spectrum_k4(k4):
    spec = full_lifted_spectrum(k4)
    mus = spec.mus()
    s7 = math.sqrt(7)
    expected = [2, 1] + [complex(-0.5, s7 / 2)] * 3 + [complex(-0.5, -s7 / 2)] * 3
    assert multiset_match_distance(mus, expected) < 1e-10
    for m in mus:
        if abs(m.imag) > 0:
            assert abs(m) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_full_spectrum_c3_matches_reduced_matrix(c3):
    spec = full_lifted_spectrum(c3)
    roots = charpoly_roots(reduced_nb_matrix(c3).astype(int))
    assert multiset_match_distance(spec.mus(), roots) < 1e-8


@pytest.mark.parametrize("name", ORACLE_CORPUS)
def test_small_instance_oracle(name):
    g = named_graph(name)
    spec = full_lifted_spectrum(g)
    roots = charpoly_roots(reduced_nb_matrix(g).astype(int))
    assert multiset_match_distance(spec.mus(), roots) < 1e-8


def test_small_instance_oracle_sampled(sampled_graphs):
    g = sampled_graphs[(8, 3)]
    spec = full_lifted_spectrum(g)
    roots = charpoly_roots(reduced_nb_matrix(g).astype(int))
    assert multiset_match_distance(spec.mus(), roots) < 1e-8


def test_small_instance_oracle_hypergraph(hyper923):
    spec = full_lifted_spectrum(hyper923)
    roots = charpoly_roots(reduced_nb_matrix(hyper923).astype(int))
    assert multiset_match_distance(spec.mus(), roots) < 1e-8


def test_degenerate_flag_set_on_exact_double_root():
    # lambda = 2 = 2*sqrt(d-1) for d = 2: C4 has lambda in {2, 0, 0, -2}
    spec = full_lifted_spectrum(named_graph("C4"))
    flags = {round(p.lam, 9): p.degenerate for p in spec.pairs}
    assert flags[2.0] and flags[-2.0]
    assert not flags[0.0]


def test_vieta_holds_for_all_pairs(sampled_graphs):
    g = sampled_graphs[(50, 4)] if (50, 4) in sampled_graphs else sampled_graphs[(20, 4)]
    spec = full_lifted_spectrum(g)
    for p in spec.pairs:
        assert abs(p.mu + p.mu_prime - p.lam) <= 1e-10 * max(1.0, abs(p.lam))
        assert abs(p.mu * p.mu_prime - (g.d - 1)) <= 1e-10 * (g.d - 1)


# ------------------------------------------------------------------- audit


def test_spectrum_audit_clean_on_samples():
    for g in (sample_regular_graph(120, 3, 1), sample_regular_hypergraph(60, 2, 3, 1)):
        a = spectrum_audit(g)
        assert a.vieta_sum_err <= 1e-10
        assert a.vieta_prod_err <= 1e-10
        assert a.circle_err <= 1e-10
        assert a.resid_u_max <= 1e-9
        assert a.resid_w_max <= 1e-9
        assert a.norm_paper_err <= 1e-8
        assert a.norm_general_err <= 1e-8
        assert a.ratio_mono_violations == 0
        assert a.bound_violations == 0
        assert a.perron_ratio_err is not None and a.perron_ratio_err <= 1e-12


def test_norm_identity_general_vs_conjugate_domain():
    # the RSBM insider eigenvalue lambda = d1-d2 lies outside the bulk circle:
    # its real lift obeys the general norm formula, not d^2 - lambda^2
    g = sample_rsbm(40, 8, 1, 3)
    d = 9
    idx = oriented_index(g.graph)
    spec = full_lifted_spectrum(g)
    insider = min(spec.pairs, key=lambda p: abs(p.lam - 7))
    assert insider.lam == pytest.approx(7.0, abs=1e-9)
    w = lift_eigenvector_nb(insider.v, insider.mu, idx)
    nsq = float(np.linalg.norm(w) ** 2)
    assert nsq == pytest.approx(nb_norm_sq_graph(insider.lam, insider.mu, d), rel=1e-9)
    assert abs(nsq - (d * d - insider.lam**2)) > 1.0  # paper form does not apply here
