import json

import pytest

from knotdeform.deform import (
    DeformationData,
    character_check,
    character_series,
    deformation_data,
    deformation_matrices,
    hensel_u,
    ramified_check,
    specialization_point,
    specialize,
    verify_deformation,
)
from knotdeform.errors import (
    BadCharacteristic,
    NonUnitU,
    NotInMaximalIdeal,
)
from knotdeform.pseudorep import WordSet, check_axioms_C, check_axioms_P, trace_table
from knotdeform.riley import riley_rep
from knotdeform.rings import HbarTruncRing, PadicTruncRing, PrimeField, Rationals
from knotdeform.series import TruncSeries, eval_bipoly, x_series
from knotdeform.words import SL2Matrix, TwoBridgeKnot

Q = Rationals()
F5 = PrimeField(5)
F7 = PrimeField(7)
TREFOIL = TwoBridgeKnot(3, 1)
FIG8 = TwoBridgeKnot(5, 3)


def test_hensel_trefoil_is_exactly_three_minus_x_squared():
    u = hensel_u(TREFOIL, Q(-1), Q, 6)
    assert [c.value for c in u.coeffs] == [-1, -4, -1, 0, 0, 0]


def test_hensel_unique_coefficients_at_every_precision():
    for n in (1, 2, 3, 5, 9, 16):
        u = hensel_u(TREFOIL, Q(-1), Q, n)
        expected = ([-1, -4, -1] + [0] * n)[:n]
        assert [c.value for c in u.coeffs] == expected


def test_hensel_figure_eight_padic():
    ring = PadicTruncRing(7, 4)
    u = hensel_u(FIG8, F7(3), ring, 8)
    from knotdeform.riley import riley_data

    phi = riley_data(FIG8).Phi
    assert eval_bipoly(phi, {"x": x_series(ring, 8), "u": u}).is_zero()
    assert u.coeffs[0].residue() == F7(3)


def test_hensel_surd_identity():
    # 2u - 5 + x^2 squares to (x^2-1)(x^2-5)
    ring = PadicTruncRing(7, 4)
    u = hensel_u(FIG8, F7(3), ring, 8)
    x2 = TruncSeries.from_list(ring, "z", [4, 4, 1], 8)
    lhs = u * 2 + (x2 - 5)
    assert lhs * lhs == (x2 - 1) * (x2 - 5)


def test_hensel_rejections():
    with pytest.raises(NonUnitU):
        hensel_u(TREFOIL, Q(0), Q, 4)
    with pytest.raises(BadCharacteristic):
        hensel_u(FIG8, PrimeField(3)(1), PadicTruncRing(3, 2), 4)


def test_deformation_matrices_trefoil():
    u = hensel_u(TREFOIL, Q(-1), Q, 12)
    v, a_mat, b_mat = deformation_matrices(u)
    # v = 1/sqrt(x^2 - 3): equivalently v^2 (x^2 - 3) = 1
    x2m3 = TruncSeries.from_list(Q, "z", [1, 4, 1], 12)
    assert v * v * x2m3 == TruncSeries.constant(Q, "z", 1, 12)
    # A at z = 0 is C(1)
    consts = [a_mat.entries[i][j].constant_term() for i in range(2) for j in range(2)]
    assert consts == [Q(1), Q(1), Q(0), Q(1)]
    # B at z = 0 reduces to D(1, -1)
    consts = [b_mat.entries[i][j].constant_term() for i in range(2) for j in range(2)]
    assert consts == [Q(1), Q(0), Q(-1), Q(1)]
    # off-diagonal of B pays one coefficient for the exact division
    assert b_mat.entries[0][1].precision == 11
    assert b_mat.entries[1][0].precision == 12


def test_verify_deformation_trefoil_q16():
    data = deformation_data(TREFOIL, Q(-1), Q, 16)
    assert data.passed
    for check in data.verification:
        if check.name in ("relator", "determinants"):
            assert check.precision >= 15
    tr_a, tr_ab = character_series(data.A, data.B)
    assert tr_a.coeffs == x_series(Q, 16).coeffs
    # tr AB = x^2 - 2 + u on the curve coordinates
    expected = TruncSeries.from_list(Q, "z", [2, 4, 1], 16) + data.u
    assert tr_ab == expected


def test_verify_deformation_fig8_padic():
    ring = PadicTruncRing(7, 4)
    data = deformation_data(FIG8, F7(3), ring, 8)
    assert data.passed
    for check in data.verification:
        if check.name in ("relator", "determinants"):
            assert check.precision >= 7


def test_verify_deformation_detects_corruption():
    data = deformation_data(TREFOIL, Q(-1), Q, 8)
    ((a, b), (c, d)) = data.B.entries
    bump = TruncSeries.from_list(Q, "z", [0, 0, 0, 1], b.precision)
    corrupted = SL2Matrix(((a, b + bump), (c, d)), check=False)
    checks = verify_deformation(TREFOIL, data.A, corrupted, Q(-1))
    relator = next(ch for ch in checks if ch.name == "relator")
    assert not relator.passed
    assert "coefficient 3" in relator.detail


def test_character_on_curve():
    data = deformation_data(TREFOIL, Q(-1), Q, 16)
    check = character_check(TREFOIL, data.A, data.B)
    assert check.passed and check.precision >= 15
    ring = PadicTruncRing(7, 4)
    d8 = deformation_data(FIG8, F7(3), ring, 8)
    check = character_check(FIG8, d8.A, d8.B)
    assert check.passed and check.precision >= 7


def test_ramified_check_trefoil():
    u = hensel_u(TREFOIL, Q(-1), Q, 8)
    checks = ramified_check(u, 12)
    assert all(c.passed for c in checks)
    names = {c.name for c in checks}
    assert {"t_plus_tinv_is_x", "det_U", "U_at_s0_identity",
            "U_C_Uinv_is_A", "U_D_Uinv_is_B"} <= names
    conj = {c.name: c for c in checks}
    assert conj["U_C_Uinv_is_A"].precision >= 10
    # t + 1/t = x = 2 + s^2 in the ramified coordinate
    assert conj["t_plus_tinv_is_x"].precision >= 11


def test_ramified_check_padic():
    ring = PadicTruncRing(7, 3)
    u = hensel_u(FIG8, F7(3), ring, 6)
    checks = ramified_check(u, 10)
    assert all(c.passed for c in checks)


def test_specialize_hbar_example():
    ring = HbarTruncRing(F5, 3)
    data = deformation_data(TREFOIL, F5(-1), ring, 6)
    x0 = specialization_point(ring, 1)
    assert x0 == ring([2, 0, 1])  # (1+h) + (1+h)^-1 = 2 + h^2 mod h^3
    rho = specialize(data.A, data.B, x0, knot=TREFOIL)
    word_set = WordSet.ball(2)
    table = trace_table(rho, word_set)
    assert check_axioms_P(table).passed
    assert check_axioms_C(table).passed
    # reduction mod the maximal ideal recovers the residual character
    rho_bar = riley_rep(TREFOIL, F5(1), F5(-1))
    tbar = trace_table(rho_bar, word_set)
    for w in word_set:
        assert table(w).residue() == tbar(w)


def test_specialize_at_two_gives_residual_constants():
    ring = HbarTruncRing(F5, 3)
    data = deformation_data(TREFOIL, F5(-1), ring, 6)
    rho = specialize(data.A, data.B, ring(2), knot=TREFOIL)
    assert rho.images["a"].entries[0][0] == ring(1)
    assert rho.images["a"].entries[0][1] == ring(1)
    assert rho.images["b"].entries[1][0] == ring(-1)


def test_specialize_rejects_units():
    ring = HbarTruncRing(F5, 3)
    data = deformation_data(TREFOIL, F5(-1), ring, 6)
    with pytest.raises(NotInMaximalIdeal):
        specialize(data.A, data.B, ring(3), knot=TREFOIL)


def test_specialize_needs_enough_precision():
    ring = PadicTruncRing(5, 4)
    data = deformation_data(TREFOIL, F5(-1), ring, 2)
    x0 = ring(2 + 5)  # (x0 - 2)^1 = 5 != 0 mod 5^4 at joint precision 1
    with pytest.raises(NotInMaximalIdeal):
        specialize(data.A, data.B, x0, knot=TREFOIL)


def test_specialize_padic():
    ring = PadicTruncRing(5, 3)
    data = deformation_data(TREFOIL, F5(-1), ring, 6)
    x0 = specialization_point(ring, 2)
    rho = specialize(data.A, data.B, x0, knot=TREFOIL)
    assert rho.images["a"].det() == ring.one()


def test_deformation_json_round_trip():
    data = deformation_data(TREFOIL, Q(-1), Q, 10)
    blob = json.dumps(data.to_json())
    again = DeformationData.from_json(json.loads(blob))
    assert again.passed
    assert again.u == data.u
    assert again.A == data.A and again.B == data.B

    ring = PadicTruncRing(7, 4)
    d8 = deformation_data(FIG8, F7(3), ring, 6)
    again = DeformationData.from_json(json.loads(json.dumps(d8.to_json())))
    assert again.passed


def test_beta_can_be_given_in_the_coefficient_ring():
    ring = PadicTruncRing(7, 3)
    beta_in_ring = ring(3)
    data = deformation_data(FIG8, beta_in_ring, ring, 4)
    assert data.passed
