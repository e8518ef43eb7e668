"""Numeric deformed-su(2) lattice operators in the spin-1/2 representation.

Basis convention: |0> is spin up (Sz = +1/2) and is the first basis vector;
site 1 is the leftmost Kronecker factor.  The 2 x 2 plaquette labels used
in the singlet and R-matrix sections follow the top-row-first numbering

    1 2
    3 4

mapped onto the internal bottom-row-first linear order by
:data:`DISPLAY_TO_LINEAR_2X2`.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .coalgebra import (
    CheckInstance,
    CheckReport,
    SingularParameterError,
    _Timer,
    boxplus,
    check_antipode,
    check_counit,
)
from .instances import make_uq_symbolic
from .linops import (
    Representation,
    ResourceLimitError,
    SparseOperator,
    evaluate,
    operator_difference,
)
import scipy.sparse as sp

# display plaquette label -> linear site index (bottom row first)
DISPLAY_TO_LINEAR_2X2 = {1: 3, 2: 4, 3: 1, 4: 2}

# dimension cap for lattice operators (2**12 = 4096)
SITE_CAP = 12


def _require_regular(q):
    q = complex(q)
    if q == 0:
        raise SingularParameterError("q must be nonzero")
    return q


def _require_nonsingular(q):
    q = _require_regular(q)
    if abs(q * q - 1.0) <= 1e-12:
        raise SingularParameterError("q**2 = 1 makes 1/(q - 1/q) singular")
    return q


def spin_half_rep(q, alphabet=None) -> Representation:
    """Spin-1/2 matrices for the deformed-su(2) alphabet at a given q."""
    q = _require_regular(q)
    if alphabet is None:
        alphabet = make_uq_symbolic(q).alphabet
    rq = cmath.sqrt(q)
    mats = {
        "1": np.eye(2, dtype=complex),
        "S+": np.array([[0, 1], [0, 0]], dtype=complex),
        "S-": np.array([[0, 0], [1, 0]], dtype=complex),
        "Sz": np.diag([0.5, -0.5]).astype(complex),
        "K+": np.diag([rq, 1 / rq]),
        "K-": np.diag([1 / rq, rq]),
        "K+2": np.diag([q, 1 / q]),
        "K-2": np.diag([1 / q, q]),
    }
    return Representation(alphabet, mats)


def _check_sites(n, m):
    if n * m > SITE_CAP:
        raise ResourceLimitError(f"{n}x{m} lattice exceeds the {SITE_CAP}-site cap")


def direct_boxplus_op(gen: str, q, n: int, m: int) -> SparseOperator:
    """Placement construction: the generator at one site, the matching
    group-like letters before and after it in linear order."""
    q = _require_regular(q)
    _check_sites(n, m)
    rep = spin_half_rep(q)
    by_name = {s.name: rep.matrices[s] for s in rep.alphabet}
    sites = n * m
    dim = 2 ** sites

    def kron_chain(names):
        acc = sp.csr_matrix(by_name[names[0]])
        for nm in names[1:]:
            acc = sp.kron(acc, sp.csr_matrix(by_name[nm]), format="csr")
        return acc

    if gen in ("K+", "K-", "K+2", "K-2", "1"):
        return SparseOperator(kron_chain([gen] * sites))
    if gen in ("S+", "S-"):
        total = sp.csr_matrix((dim, dim), dtype=complex)
        for k in range(sites):
            total = total + kron_chain(["K-"] * k + [gen] + ["K+"] * (sites - k - 1))
        return SparseOperator(total)
    if gen == "Sz":
        total = sp.csr_matrix((dim, dim), dtype=complex)
        for k in range(sites):
            total = total + kron_chain(["1"] * k + ["Sz"] + ["1"] * (sites - k - 1))
        return SparseOperator(total)
    raise ValueError(f"unknown generator {gen!r}")


def boxplus_op(gen: str, q, n: int, m: int, cross_check: bool = True) -> SparseOperator:
    """Lattice operator for a generator, built through the coalgebra engine.

    With ``cross_check`` the result is compared against the independent
    placement construction; a mismatch raises.
    """
    q = _require_regular(q)
    _check_sites(n, m)
    ex = make_uq_symbolic(q)
    rep = spin_half_rep(q, ex.alphabet)
    op = evaluate(boxplus(ex, gen, n, m), rep)
    if cross_check:
        ref = direct_boxplus_op(gen, q, n, m)
        res = operator_difference(op, ref)
        if res > 1e-10:
            raise AssertionError(f"engine vs placement mismatch for {gen}: {res}")
    return op


def check_ks_relation(q, n, m, tol=1e-10) -> CheckReport:
    """K S = q^(+-1) S K lifted to the whole lattice, max-entry residual."""
    q = _require_regular(q)
    instances = []
    with _Timer() as t:
        ops = {g: boxplus_op(g, q, n, m) for g in ("K+", "K-", "S+", "S-")}
        for alpha, kname in ((1, "K+"), (-1, "K-")):
            for sign, sname in ((1, "S+"), (-1, "S-")):
                lhs = ops[kname] @ ops[sname]
                rhs = (q ** (sign * alpha)) * (ops[sname] @ ops[kname])
                res = operator_difference(lhs, rhs)
                instances.append(CheckInstance(f"{kname}*{sname}", res <= tol, res))
    return CheckReport("ks_relation", [(n, m)], instances, t.elapsed)


def check_commutator(q, n, m, tol=1e-10) -> CheckReport:
    """[raise, lower] telescopes to the difference of squared K strings."""
    q = _require_nonsingular(q)
    instances = []
    with _Timer() as t:
        sp_ = boxplus_op("S+", q, n, m)
        sm_ = boxplus_op("S-", q, n, m)
        kp2 = boxplus_op("K+2", q, n, m)
        km2 = boxplus_op("K-2", q, n, m)
        lhs = sp_ @ sm_ - sm_ @ sp_
        rhs = (kp2 - km2) * (1.0 / (q - 1.0 / q))
        res = operator_difference(lhs, rhs)
        instances.append(CheckInstance(f"commutator q={q:g}", res <= tol, res))
    return CheckReport("commutator", [(n, m)], instances, t.elapsed)


# ---------------------------------------------------------------------------
# q-singlets


def singlet_amplitude(q, bi: int, bj: int) -> complex:
    """Coefficient of |bi bj> in the normalized two-site q-singlet."""
    q = _require_regular(q)
    den = cmath.sqrt(q - 1.0 / q)
    if abs(den) < 1e-12:
        raise SingularParameterError("singlet normalization vanishes at q = +-1")
    if (bi, bj) == (0, 1):
        return cmath.sqrt(q) / den
    if (bi, bj) == (1, 0):
        return -1.0 / cmath.sqrt(q) / den
    return 0j


def q_singlet(q, site_pair=(1, 2), total_sites=2) -> np.ndarray:
    """The two-site q-singlet embedded on an ordered site pair.

    Site indices are linear (1-based); any remaining sites are filled with
    the spin-up basis state so products can be assembled by pairs.
    """
    i, j = site_pair
    psi = np.zeros(2 ** total_sites, dtype=complex)
    for b in range(len(psi)):
        bits = [(b >> (total_sites - 1 - s)) & 1 for s in range(total_sites)]
        amp = singlet_amplitude(q, bits[i - 1], bits[j - 1])
        if any(bits[s] for s in range(total_sites) if s not in (i - 1, j - 1)):
            amp = 0j
        psi[b] = amp
    return psi


def singlet_product(q, pairs, total_sites) -> np.ndarray:
    """Product of q-singlets on disjoint ordered pairs of linear sites."""
    covered = [s for pair in pairs for s in pair]
    if len(set(covered)) != len(covered):
        raise ValueError("singlet pairs must be disjoint")
    psi = np.zeros(2 ** total_sites, dtype=complex)
    for b in range(len(psi)):
        bits = [(b >> (total_sites - 1 - s)) & 1 for s in range(total_sites)]
        amp = 1.0 + 0j
        for (i, j) in pairs:
            amp *= singlet_amplitude(q, bits[i - 1], bits[j - 1])
        if any(bits[s - 1] for s in range(1, total_sites + 1) if s not in covered):
            amp = 0j
        psi[b] = amp
    return psi


def delta_op(gen: str, q) -> np.ndarray:
    """Two-site coproduct of a generator, dense 4 x 4."""
    ex = make_uq_symbolic(q)
    rep = spin_half_rep(q, ex.alphabet)
    return evaluate(boxplus(ex, gen, 1, 2), rep).toarray()


def singlet_pair_checks(q, tol=1e-10) -> CheckReport:
    """The two-site singlet identities: K fixes it, raising/lowering kill it,
    and K- x K+ maps it onto the inverse-q singlet with the stated ratio."""
    q = _require_nonsingular(q)
    instances = []
    with _Timer() as t:
        s = q_singlet(q)
        for gen in ("S+", "S-"):
            res = float(np.abs(delta_op(gen, q) @ s).max())
            instances.append(CheckInstance(f"annihilation {gen}", res <= tol, res))
        for gen in ("K+", "K-"):
            res = float(np.abs(delta_op(gen, q) @ s - s).max())
            instances.append(CheckInstance(f"invariance {gen}", res <= tol, res))
        rep = spin_half_rep(q)
        km = rep.matrices[rep.alphabet["K-"]]
        kp = rep.matrices[rep.alphabet["K+"]]
        lhs = np.kron(km, kp) @ s
        ratio = cmath.sqrt(1.0 / q - q) / cmath.sqrt(q - 1.0 / q)
        rhs = ratio * q_singlet(1.0 / q)
        res = float(np.abs(lhs - rhs).max())
        instances.append(CheckInstance("K-xK+ inversion", res <= tol, res))
    return CheckReport("singlet_pair", [(1, 2)], instances, t.elapsed)


def _display_state(specs) -> np.ndarray:
    """Four-site basis pattern from display-label constraints.

    ``specs`` maps the display pair (i, j) to one of '01+10', '11', '00'.
    """
    psi = np.zeros(16, dtype=complex)
    for b in range(16):
        bits_lin = [(b >> (3 - s)) & 1 for s in range(4)]
        bits = {k: bits_lin[DISPLAY_TO_LINEAR_2X2[k] - 1] for k in (1, 2, 3, 4)}
        amp = 1.0
        for (i, j), kind in specs.items():
            pair = (bits[i], bits[j])
            if kind == "01+10":
                amp *= 1.0 if pair in ((0, 1), (1, 0)) else 0.0
            elif kind == "11":
                amp *= 1.0 if pair == (1, 1) else 0.0
            elif kind == "00":
                amp *= 1.0 if pair == (0, 0) else 0.0
        psi[b] = amp
    return psi


def vertical_singlet_residual(q, tol=1e-10) -> dict:
    """Image of two vertical q-singlets under the plaquette operators.

    The vertical singlets sit on display columns (3,1) and (4,2), bottom site
    first; one overall normalization 1/sqrt(q - 1/q) is stripped so the
    component magnitude is exactly (q^(1/2) - q^(-1/2))/sqrt(q - 1/q).
    Returns the measured coefficient, its predicted value and the residual
    against the signed support pattern.
    """
    q = _require_nonsingular(q)
    pairs = [(DISPLAY_TO_LINEAR_2X2[3], DISPLAY_TO_LINEAR_2X2[1]),
             (DISPLAY_TO_LINEAR_2X2[4], DISPLAY_TO_LINEAR_2X2[2])]
    psi = singlet_product(q, pairs, 4) * cmath.sqrt(q - 1.0 / q)
    coef = (cmath.sqrt(q) - 1.0 / cmath.sqrt(q)) / cmath.sqrt(q - 1.0 / q)
    out = {"coefficient": coef}
    patterns = {
        "S-": _display_state({(1, 3): "11", (2, 4): "01+10"})
        - _display_state({(1, 3): "01+10", (2, 4): "11"}),
        "S+": _display_state({(1, 3): "01+10", (2, 4): "00"})
        - _display_state({(1, 3): "00", (2, 4): "01+10"}),
    }
    for gen, pattern in patterns.items():
        w = boxplus_op(gen, q, 2, 2).mat @ psi
        support = np.abs(w[np.abs(pattern) > 0.5])
        measured = float(support.mean()) if support.size else 0.0
        res = float(np.abs(w - coef * pattern).max())
        out[gen] = {
            "residual_vs_pattern": res,
            "measured_coefficient": measured,
            "pass": res <= tol,
        }
    return out


def kernel_2x2(q, svd_tol=1e-10) -> dict:
    """Joint null space of the 2 x 2 plaquette raising/lowering operators.

    Computed by SVD of the stacked 32 x 16 matrix with a relative singular
    value threshold.  Also measures the two-parameter singlet family that
    spans the kernel (horizontal pair and crossed pair, orientations as
    printed) and the reversed-orientation control.
    """
    q = _require_nonsingular(q)
    sp_op = boxplus_op("S+", q, 2, 2).toarray()
    sm_op = boxplus_op("S-", q, 2, 2).toarray()
    stacked = np.vstack([sp_op, sm_op])
    u, sigma, vh = np.linalg.svd(stacked)
    cutoff = svd_tol * (sigma.max() if sigma.size else 1.0)
    dim = int(np.sum(sigma < cutoff)) + (16 - len(sigma))
    basis = vh.conj().T[:, 16 - dim:] if dim else np.zeros((16, 0))

    def lin(pairs_display):
        return [(DISPLAY_TO_LINEAR_2X2[i], DISPLAY_TO_LINEAR_2X2[j]) for i, j in pairs_display]

    horizontal = singlet_product(q, lin([(1, 2), (3, 4)]), 4)
    crossed = singlet_product(q, lin([(3, 2), (4, 1)]), 4)
    reversed_crossed = singlet_product(q, lin([(2, 3), (1, 4)]), 4)
    family = {}
    for label, (alpha, beta) in {"(1,0)": (1, 0), "(0,1)": (0, 1), "(1,1)": (1, 1)}.items():
        state = alpha * horizontal + beta * crossed
        res = max(float(np.abs(sp_op @ state).max()), float(np.abs(sm_op @ state).max()))
        family[label] = res
    reversed_residual = max(
        float(np.abs(sp_op @ reversed_crossed).max()),
        float(np.abs(sm_op @ reversed_crossed).max()),
    )
    return {
        "dimension": dim,
        "basis": basis,
        "singular_values": sigma,
        "family_residuals": family,
        "reversed_orientation_residual": reversed_residual,
    }


def check_counit_antipode_families(q, n, tol=1e-10) -> CheckReport:
    """Counit contraction and numeric antipode law on the listed families.

    Runs over the instance's canonical column and row words of length n:
    K strings, squared K strings, raising/lowering marks at every position
    and the Cartan mark.
    """
    if n > 6:
        raise ResourceLimitError("family check capped at n = 6")
    q = _require_regular(q)
    ex = make_uq_symbolic(q)
    rep = spin_half_rep(q, ex.alphabet)
    instances = []
    with _Timer() as t:
        for direction in ("x", "y"):
            rc = check_counit(ex, direction, n, tol=tol)
            ra = check_antipode(ex, rep, direction, n, tol=tol)
            for inst in rc.instances + ra.instances:
                inst.input = f"{direction}:{inst.input}"
                instances.append(inst)
    return CheckReport("counit_antipode_families", [(n, 1), (1, n)], instances, t.elapsed)
