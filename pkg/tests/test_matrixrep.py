import random
from fractions import Fraction

import pytest

from qonsager import (
    CoidealParams,
    ExactMatrix,
    NcPoly,
    build_relation_lhs,
    check_qdg,
    check_realization,
    coideal_generators,
    eval_ncpoly,
    evaluation_rep,
    normal_form,
    reduced_genfun_coeffs,
    tensor_rep,
)
from qonsager.matrixrep import commutator
from conftest import rand_word

T = Fraction(3, 2)
Q = T * T


def qnum(n, q):
    return (q ** n - q ** -n) / (q - 1 / q)


def gate_realization(sites, **scalars):
    v = tuple(Fraction(i) for i in range(1, sites + 1))
    real = coideal_generators(CoidealParams(t=T, v=v, **scalars))
    # gate invariant: nothing downstream runs unless the defining relations hold
    assert check_realization(real)
    return real


def test_evaluation_rep_structure():
    rep = evaluation_rep(Fraction(1), T)
    assert rep["e1"].n == 2
    k1 = rep["k1h"] * rep["k1h"]
    k0 = rep["k0h"] * rep["k0h"]
    assert k1 * k0 == ExactMatrix.identity(2)
    assert rep["k1h"] == ExactMatrix.diagonal([T, 1 / T])


def test_evaluation_rep_chevalley_relations():
    rep = evaluation_rep(Fraction(2), T)
    for i in ("0", "1"):
        k = rep[f"k{i}h"] * rep[f"k{i}h"]
        expected = (k - k.inverse()) * (1 / (Q - 1 / Q))
        assert commutator(rep[f"e{i}"], rep[f"f{i}"]) == expected
    # mixed e/f pairs commute
    assert commutator(rep["e1"], rep["f0"]).is_zero()
    assert commutator(rep["e0"], rep["f1"]).is_zero()


def test_qserre_trivial_in_dimension_two():
    rep = evaluation_rep(Fraction(1), T)
    e0, e1 = rep["e0"], rep["e1"]
    three = qnum(3, Q)
    lhs = (e0 * e0 * e0 * e1 - three * (e0 * e0 * e1 * e0)
           + three * (e0 * e1 * e0 * e0) - e1 * e0 * e0 * e0)
    assert lhs.is_zero()  # nilpotency kills every term


def test_tensor_rep_one_site_is_the_evaluation_rep():
    assert tensor_rep(T, [Fraction(5)]) == evaluation_rep(Fraction(5), T)


def test_tensor_rep_weights_are_grouplike_diagonals():
    rep = tensor_rep(T, [Fraction(1), Fraction(2)])
    site1 = evaluation_rep(Fraction(1), T)
    site2 = evaluation_rep(Fraction(2), T)
    assert rep["k1h"] == site1["k1h"].kron(site2["k1h"])
    for i in range(4):
        for j in range(4):
            if i != j:
                assert rep["k1h"].rows[i][j] == 0


def test_tensor_rep_defining_relations_two_sites():
    rep = tensor_rep(T, [Fraction(1), Fraction(2)])
    eye = ExactMatrix.identity(4)
    for i in ("0", "1"):
        k = rep[f"k{i}h"] * rep[f"k{i}h"]
        expected = (k - k.inverse()) * (1 / (Q - 1 / Q))
        assert commutator(rep[f"e{i}"], rep[f"f{i}"]) == expected
        # weight action: k e_j k^{-1} = q^{a_ij} e_j with a_ii = 2, a_ij = -2
        for j in ("0", "1"):
            scale = Q ** 2 if i == j else Q ** -2
            assert k * rep[f"e{j}"] * k.inverse() == rep[f"e{j}"] * scale
            assert k * rep[f"f{j}"] * k.inverse() == rep[f"f{j}"] * (1 / scale)
    # mixed e/f commutators vanish
    assert commutator(rep["e0"], rep["f1"]).is_zero()
    assert commutator(rep["e1"], rep["f0"]).is_zero()
    assert (rep["k0h"] * rep["k1h"]) * (rep["k0h"] * rep["k1h"]) == eye


def test_coideal_qserre_specialization():
    # cbar = eps = 0 makes rho vanish; the pair satisfies the plain q-Serre
    # relations, i.e. the gate with rho = 0
    for sites in (1, 2):
        v = tuple(Fraction(i) for i in range(1, sites + 1))
        real = coideal_generators(CoidealParams(t=T, v=v, cbar0=0, cbar1=0))
        assert real.rho0 == 0 and real.rho1 == 0
        assert check_qdg(real.A, real.Astar, Fraction(0), Fraction(0), real.q)


def test_gate_passes_generic_parameters():
    real = gate_realization(1, c0=2, c1=3, cbar0=Fraction(1, 2),
                            cbar1=Fraction(5, 3), eps0=Fraction(1, 4), eps1=2)
    assert real.dim == 2
    assert real.rho0 == 2 * Fraction(1, 2) * (Q + 1 / Q) ** 2


def test_gate_passes_two_sites_with_identification():
    real = gate_realization(2)
    assert real.dim == 4
    assert real.rho0 == (Q + 1 / Q) ** 2


def test_gate_negative_controls():
    real = gate_realization(1)
    assert not check_qdg(real.A, real.Astar, real.rho0 + 1, real.rho1, real.q)
    rows = [list(row) for row in real.A.rows]
    rows[0][0] += 1
    assert not check_qdg(ExactMatrix(rows), real.Astar, real.rho0, real.rho1, real.q)


def test_check_qdg_commuting_case():
    eye = ExactMatrix.identity(3)
    assert check_qdg(eye, eye, Fraction(0), Fraction(0), Q)


def test_eval_ncpoly_unit_and_homomorphism():
    real = gate_realization(2)
    point = (real.q, real.rho0, real.rho1)
    assert eval_ncpoly(NcPoly.one(), real.A, real.Astar, *point) == ExactMatrix.identity(4)
    rng = random.Random(41)
    for _ in range(20):
        x = NcPoly.from_word(rand_word(rng, 5))
        y = NcPoly.from_word(rand_word(rng, 5))
        ex = eval_ncpoly(x, real.A, real.Astar, *point)
        ey = eval_ncpoly(y, real.A, real.Astar, *point)
        assert eval_ncpoly(x * y, real.A, real.Astar, *point) == ex * ey
        assert eval_ncpoly(x + y, real.A, real.Astar, *point) == ex + ey


def test_defining_relation_evaluates_to_zero():
    real = gate_realization(1)
    lhs = build_relation_lhs(reduced_genfun_coeffs(1), family=1)
    assert eval_ncpoly(lhs, real.A, real.Astar, real.q, real.rho0, real.rho1).is_zero()


def test_r2_relation_evaluates_to_zero_on_two_sites():
    real = gate_realization(2)
    lhs = build_relation_lhs(reduced_genfun_coeffs(2), family=1)
    assert eval_ncpoly(lhs, real.A, real.Astar, real.q, real.rho0, real.rho1).is_zero()


def test_relations_r_le_3_both_families_all_sites():
    for sites in (1, 2, 3):
        real = gate_realization(sites)
        for r in (1, 2, 3):
            table = reduced_genfun_coeffs(r)
            for family in (1, 2):
                lhs = build_relation_lhs(table, family=family)
                image = eval_ncpoly(lhs, real.A, real.Astar,
                                    real.q, real.rho0, real.rho1)
                assert image.is_zero(), (sites, r, family)


def test_reduction_soundness_under_evaluation():
    real = gate_realization(2)
    point = (real.q, real.rho0, real.rho1)
    rng = random.Random(42)
    for _ in range(100):
        word = rand_word(rng, 10)
        x = NcPoly.from_word(word)
        direct = eval_ncpoly(x, real.A, real.Astar, *point)
        reduced = eval_ncpoly(normal_form(x), real.A, real.Astar, *point)
        assert direct == reduced, word


def test_params_validation():
    with pytest.raises(ValueError):
        CoidealParams(t=1, v=(1,))
    with pytest.raises(ValueError):
        CoidealParams(t=T, v=())
    with pytest.raises(ValueError):
        CoidealParams(t=T, v=(1, 1))
    with pytest.raises(ValueError):
        CoidealParams(t=T, v=(0,))
    with pytest.raises(ValueError):
        evaluation_rep(Fraction(0), T)


def test_matrix_dimension_mismatch():
    with pytest.raises(ValueError):
        check_qdg(ExactMatrix.identity(2), ExactMatrix.identity(3),
                  Fraction(0), Fraction(0), Q)
