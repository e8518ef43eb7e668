import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopf2d.coalgebra import SingularParameterError
from hopf2d.linops import ResourceLimitError, operator_difference
from hopf2d import uqsu2 as uq


def test_spin_half_rep_invariants():
    q = 2.0
    rep = uq.spin_half_rep(q)
    m = {s.name: rep.matrices[s] for s in rep.alphabet}
    assert np.allclose(m["K+"], np.diag([math.sqrt(2), 1 / math.sqrt(2)]))
    assert np.allclose(m["K+"] @ m["K-"], np.eye(2))
    assert np.allclose(m["K+"] @ m["S+"], q * m["S+"] @ m["K+"])
    assert np.allclose(m["K+"] @ m["S-"], m["S-"] @ m["K+"] / q)
    comm = m["S+"] @ m["S-"] - m["S-"] @ m["S+"]
    assert np.allclose(comm, np.diag([1.0, -1.0]))
    assert np.allclose(comm, (m["K+2"] - m["K-2"]) / (q - 1 / q))


def test_spin_half_rep_limits():
    rep1 = uq.spin_half_rep(1.0)
    m = {s.name: rep1.matrices[s] for s in rep1.alphabet}
    assert np.allclose(m["K+"], np.eye(2))
    rep4 = uq.spin_half_rep(4.0)
    m4 = {s.name: rep4.matrices[s] for s in rep4.alphabet}
    assert np.allclose(m4["K+"], np.diag([2.0, 0.5]))
    with pytest.raises(SingularParameterError):
        uq.spin_half_rep(0.0)


def test_boxplus_op_q1_is_plain_sum():
    got = uq.boxplus_op("S+", 1.0, 2, 2)
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    plain = sum(
        np.kron(np.kron(np.eye(2 ** k), sp), np.eye(2 ** (3 - k))) for k in range(4)
    )
    assert np.abs(got.toarray() - plain).max() < 1e-14
    kop = uq.boxplus_op("K+", 1.0, 2, 2)
    assert np.abs(kop.toarray() - np.eye(16)).max() < 1e-14


def test_boxplus_op_size_cap():
    with pytest.raises(ResourceLimitError):
        uq.boxplus_op("S+", 2.0, 4, 4)


@settings(max_examples=12, deadline=None)
@given(st.one_of(
    st.floats(min_value=0.5, max_value=2.0).map(complex),
    st.floats(min_value=0.2, max_value=math.pi - 0.2).map(lambda t: cmath.exp(1j * t)),
), st.sampled_from([(1, 2), (2, 2), (3, 2), (3, 3)]))
def test_boxplus_engine_matches_placement(q, size):
    n, m = size
    for gen in ("S+", "S-", "K+", "Sz"):
        a = uq.boxplus_op(gen, q, n, m, cross_check=False)
        b = uq.direct_boxplus_op(gen, q, n, m)
        assert operator_difference(a, b) < 1e-10


def test_ks_relation_and_commutator():
    for q in (2.0, 1.1, cmath.exp(1j * math.pi / 5)):
        assert uq.check_ks_relation(q, 2, 2).ok
        assert uq.check_commutator(q, 2, 2).ok
    assert uq.check_ks_relation(1.1, 3, 2).ok
    assert uq.check_commutator(1.1, 3, 2).ok


def test_commutator_rejects_singular_q():
    with pytest.raises(SingularParameterError):
        uq.check_commutator(1.0, 2, 2)
    with pytest.raises(SingularParameterError):
        uq.check_commutator(-1.0, 2, 2)


def test_telescoping_residual_flat_in_q():
    # residual stays at machine-epsilon scale even for large q
    res = []
    for q in (1.5, 3.0, 8.0):
        report = uq.check_commutator(q, 2, 2, tol=1e-8)
        res.append(report.max_residual)
    assert max(res) < 1e-10 * 8 ** 2


# ---------------------------------------------------------------------------
# q-singlets


def test_singlet_pair_identities():
    for q in (2.0, 3.0, cmath.exp(1j * math.pi / 5)):
        assert uq.singlet_pair_checks(q).ok


def test_singlet_inversion_ratio_branch_q2():
    # at q = 2 the ratio sqrt(1/q - q)/sqrt(q - 1/q) is the imaginary unit
    q = 2.0
    s = uq.q_singlet(q)
    rep = uq.spin_half_rep(q)
    km = rep.matrices[rep.alphabet["K-"]]
    kp = rep.matrices[rep.alphabet["K+"]]
    lhs = np.kron(km, kp) @ s
    assert np.abs(lhs - 1j * uq.q_singlet(0.5)).max() < 1e-12


def test_singlet_singular_normalization():
    with pytest.raises(SingularParameterError):
        uq.q_singlet(1.0)


def test_kernel_2x2_dimension_and_family():
    rng = np.random.RandomState(3)
    qs = [complex(x) for x in rng.uniform(1.2, 2.5, 5)]
    qs += [cmath.exp(1j * t) for t in rng.uniform(0.3, 2.5, 5)]
    for q in qs:
        k = uq.kernel_2x2(q)
        assert k["dimension"] == 2, q
        assert max(k["family_residuals"].values()) < 1e-10
        assert k["reversed_orientation_residual"] > 1e-2


def test_kernel_q1_su2_decomposition():
    # undeformed: half**4 = 0 (x2) + 1 (x3) + 2; joint kernel of totals is 2
    k = uq.kernel_2x2(1.0 + 1e-8)  # just off the singular normalization
    assert k["dimension"] == 2
    sp = uq.direct_boxplus_op("S+", 1.0, 2, 2).toarray()
    sm = uq.direct_boxplus_op("S-", 1.0, 2, 2).toarray()
    stacked = np.vstack([sp, sm])
    sigma = np.linalg.svd(stacked, compute_uv=False)
    assert int((sigma < 1e-10 * sigma.max()).sum()) + 16 - len(sigma) == 2


def test_vertical_singlet_residual_matches_coefficient():
    for q in (2.0, 3.0, cmath.exp(1j * math.pi / 5)):
        out = uq.vertical_singlet_residual(q)
        for gen in ("S+", "S-"):
            assert out[gen]["pass"], (q, gen, out[gen])
            assert abs(out[gen]["measured_coefficient"] - abs(out["coefficient"])) < 1e-10


def test_vertical_singlet_coefficient_vanishes_towards_q1():
    values = [abs(uq.vertical_singlet_residual(q)["coefficient"])
              for q in (1.5, 1.1, 1.01)]
    assert values[0] > values[1] > values[2]
    assert values[2] < 0.08


# ---------------------------------------------------------------------------
# counit and antipode families


def test_counit_antipode_families():
    for q in (2.0, 1.3, cmath.exp(0.4j)):
        for n in (1, 2, 3):
            assert uq.check_counit_antipode_families(q, n).ok


def test_family_check_size_cap():
    with pytest.raises(ResourceLimitError):
        uq.check_counit_antipode_families(2.0, 7)


def test_engine_matches_placement_all_shapes_up_to_nine_sites():
    q = 1.7
    shapes = [(n, m) for n in range(1, 10) for m in range(1, 10) if n * m <= 9]
    for (n, m) in shapes:
        for gen in ("S+", "K-", "Sz"):
            a = uq.boxplus_op(gen, q, n, m, cross_check=False)
            b = uq.direct_boxplus_op(gen, q, n, m)
            assert operator_difference(a, b) < 1e-10, (gen, n, m)


def test_singlet_identities_below_unit_q():
    # 0 < q < 1 makes the normalization imaginary; identities hold as stated
    assert uq.singlet_pair_checks(0.5).ok
    out = uq.vertical_singlet_residual(0.5)
    assert out["S+"]["pass"] and out["S-"]["pass"]
